#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

namespace ensnc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Wall classification of the unit-square cavity.
/// HotWall is x = 0, ColdWall is x = 1, Insulated covers y = 0 and y = 1.
enum class BoundaryTag { HotWall, ColdWall, Insulated };

const char* to_string(BoundaryTag tag);

struct BoundaryEdge {
  std::array<int, 2> vertices{};
  int edge = -1;      // index into Mesh::edges
  int triangle = -1;  // the single adjacent triangle
  BoundaryTag tag = BoundaryTag::Insulated;
};

/// Conforming triangulation of [0,1]^2.
///
/// Triangles are stored counterclockwise. Each triangle also records its
/// three edges in the local order (v0,v1), (v1,v2), (v2,v0), which fixes the
/// placement of the quadratic edge-midpoint nodes.
struct Mesh {
  std::vector<Point> vertices;
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::array<int, 2>> edges;  // sorted vertex pairs
  std::vector<std::array<int, 3>> triangle_edges;
  std::vector<BoundaryEdge> boundary_edges;
  double h = 0.0;         // longest edge length
  int subdivisions = 0;   // squares per side of the structured grid

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int triangle_count() const { return static_cast<int>(triangles.size()); }

  double signed_area(int triangle) const;

  /// Index of a triangle containing p, or nullopt if p is outside [0,1]^2.
  /// Uses the structured layout for O(1) lookup.
  std::optional<int> locate(Point p) const;

  /// Barycentric coordinates of p relative to the given triangle.
  std::array<double, 3> barycentric(int triangle, Point p) const;
};

/// m x m squares, each cut by its lower-left to upper-right diagonal.
/// Throws std::invalid_argument for m < 1.
Mesh build_structured_mesh(int m);

/// Populates boundary_edges from edge adjacency and wall geometry.
/// Throws InconsistentMeshError if a single-sided edge lies on no wall.
Mesh tag_boundary(Mesh mesh);

/// build_structured_mesh followed by tag_boundary, shared for read-only use.
std::shared_ptr<const Mesh> make_cavity_mesh(int m);

/// Legacy-VTK ASCII dump of the triangulation (POINTS + type 5 CELLS).
void write_mesh_vtk(std::ostream& out, const Mesh& mesh);

}  // namespace ensnc
