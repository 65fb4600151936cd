#include "ensnc/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ensnc/errors.hpp"

namespace ensnc {

namespace {

constexpr double kWallTol = 1e-12;

bool on_line(double a, double value) { return std::abs(a - value) <= kWallTol; }

}  // namespace

const char* to_string(BoundaryTag tag) {
  switch (tag) {
    case BoundaryTag::HotWall:
      return "hot";
    case BoundaryTag::ColdWall:
      return "cold";
    case BoundaryTag::Insulated:
      return "insulated";
  }
  return "unknown";
}

double Mesh::signed_area(int triangle) const {
  const auto& t = triangles[triangle];
  const Point& a = vertices[t[0]];
  const Point& b = vertices[t[1]];
  const Point& c = vertices[t[2]];
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

std::array<double, 3> Mesh::barycentric(int triangle, Point p) const {
  const auto& t = triangles[triangle];
  const Point& a = vertices[t[0]];
  const Point& b = vertices[t[1]];
  const Point& c = vertices[t[2]];
  const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
  const double l1 = ((p.x - a.x) * (c.y - a.y) - (c.x - a.x) * (p.y - a.y)) / det;
  const double l2 = ((b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y)) / det;
  return {1.0 - l1 - l2, l1, l2};
}

std::optional<int> Mesh::locate(Point p) const {
  if (p.x < -kWallTol || p.x > 1.0 + kWallTol || p.y < -kWallTol || p.y > 1.0 + kWallTol) {
    return std::nullopt;
  }
  if (subdivisions > 0) {
    const int m = subdivisions;
    const double sx = std::clamp(p.x, 0.0, 1.0) * m;
    const double sy = std::clamp(p.y, 0.0, 1.0) * m;
    const int i = std::min(static_cast<int>(std::floor(sx)), m - 1);
    const int j = std::min(static_cast<int>(std::floor(sy)), m - 1);
    const bool upper = (sy - j) > (sx - i);
    return 2 * (j * m + i) + (upper ? 1 : 0);
  }
  for (int t = 0; t < triangle_count(); ++t) {
    const auto l = barycentric(t, p);
    if (l[0] >= -kWallTol && l[1] >= -kWallTol && l[2] >= -kWallTol) return t;
  }
  return std::nullopt;
}

Mesh build_structured_mesh(int m) {
  if (m < 1) {
    throw std::invalid_argument("build_structured_mesh: subdivisions must be >= 1, got " +
                                std::to_string(m));
  }
  Mesh mesh;
  mesh.subdivisions = m;
  const int n = m + 1;
  mesh.vertices.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      mesh.vertices.push_back({static_cast<double>(i) / m, static_cast<double>(j) / m});
    }
  }
  auto vid = [n](int i, int j) { return j * n + i; };
  mesh.triangles.reserve(2 * static_cast<std::size_t>(m) * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      const int v00 = vid(i, j), v10 = vid(i + 1, j), v01 = vid(i, j + 1), v11 = vid(i + 1, j + 1);
      mesh.triangles.push_back({v00, v10, v11});
      mesh.triangles.push_back({v00, v11, v01});
    }
  }

  std::unordered_map<std::int64_t, int> edge_index;
  edge_index.reserve(3 * mesh.triangles.size());
  mesh.triangle_edges.reserve(mesh.triangles.size());
  const std::int64_t nv = mesh.vertex_count();
  for (const auto& tri : mesh.triangles) {
    std::array<int, 3> local{};
    for (int k = 0; k < 3; ++k) {
      int a = tri[k], b = tri[(k + 1) % 3];
      if (a > b) std::swap(a, b);
      const std::int64_t key = a * nv + b;
      auto [it, inserted] = edge_index.try_emplace(key, mesh.edge_count());
      if (inserted) mesh.edges.push_back({a, b});
      local[k] = it->second;
    }
    mesh.triangle_edges.push_back(local);
  }

  double h = 0.0;
  for (const auto& e : mesh.edges) {
    const Point& a = mesh.vertices[e[0]];
    const Point& b = mesh.vertices[e[1]];
    h = std::max(h, std::hypot(b.x - a.x, b.y - a.y));
  }
  mesh.h = h;
  return mesh;
}

Mesh tag_boundary(Mesh mesh) {
  std::vector<int> adjacency(mesh.edges.size(), 0);
  std::vector<int> owner(mesh.edges.size(), -1);
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    for (int e : mesh.triangle_edges[t]) {
      ++adjacency[e];
      owner[e] = t;
    }
  }
  mesh.boundary_edges.clear();
  for (int e = 0; e < mesh.edge_count(); ++e) {
    if (adjacency[e] > 2) {
      throw InconsistentMeshError("edge " + std::to_string(e) + " shared by more than two triangles");
    }
    if (adjacency[e] != 1) continue;
    const Point& a = mesh.vertices[mesh.edges[e][0]];
    const Point& b = mesh.vertices[mesh.edges[e][1]];
    BoundaryTag tag;
    if (on_line(a.x, 0.0) && on_line(b.x, 0.0)) {
      tag = BoundaryTag::HotWall;
    } else if (on_line(a.x, 1.0) && on_line(b.x, 1.0)) {
      tag = BoundaryTag::ColdWall;
    } else if ((on_line(a.y, 0.0) && on_line(b.y, 0.0)) || (on_line(a.y, 1.0) && on_line(b.y, 1.0))) {
      tag = BoundaryTag::Insulated;
    } else {
      throw InconsistentMeshError("boundary edge " + std::to_string(e) + " lies on no cavity wall");
    }
    mesh.boundary_edges.push_back({mesh.edges[e], e, owner[e], tag});
  }
  return mesh;
}

std::shared_ptr<const Mesh> make_cavity_mesh(int m) {
  return std::make_shared<const Mesh>(tag_boundary(build_structured_mesh(m)));
}

void write_mesh_vtk(std::ostream& out, const Mesh& mesh) {
  out << "# vtk DataFile Version 3.0\n"
      << "cavity mesh\n"
      << "ASCII\n"
      << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.vertex_count() << " double\n";
  out.precision(17);
  for (const auto& p : mesh.vertices) out << p.x << ' ' << p.y << " 0\n";
  out << "CELLS " << mesh.triangle_count() << ' ' << 4 * mesh.triangle_count() << '\n';
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  out << "CELL_TYPES " << mesh.triangle_count() << '\n';
  for (int t = 0; t < mesh.triangle_count(); ++t) out << "5\n";
}

}  // namespace ensnc
