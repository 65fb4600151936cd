#include "ensnc/vtk_writer.hpp"

#include <ostream>
#include <stdexcept>

namespace ensnc {

void write_p2_vtk(std::ostream& out, const FeSpace& space, const std::vector<PointScalarField>& scalars,
                  const std::vector<PointVectorField>& vectors, const std::string& title) {
  if (space.kind() != SpaceKind::ScalarP2) throw std::invalid_argument("write_p2_vtk: needs a scalar P2 space");
  const Mesh& mesh = space.mesh();
  const int nodes = space.node_count();
  for (const auto& f : scalars) {
    if (f.values.size() != nodes) throw std::invalid_argument("write_p2_vtk: field '" + f.name + "' has wrong size");
  }
  for (const auto& f : vectors) {
    if (f.values.size() != 2 * nodes) {
      throw std::invalid_argument("write_p2_vtk: field '" + f.name + "' has wrong size");
    }
  }
  const auto old = out.precision(12);
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << nodes << " double\n";
  for (int i = 0; i < nodes; ++i) {
    const Point p = space.node_point(i);
    out << p.x << ' ' << p.y << " 0\n";
  }
  // Local nodes v0 v1 v2 e01 e12 e20 -> four counterclockwise sub-triangles.
  static constexpr int kSub[4][3] = {{0, 3, 5}, {3, 1, 4}, {5, 4, 2}, {3, 4, 5}};
  const int cells = 4 * mesh.triangle_count();
  out << "CELLS " << cells << ' ' << 4 * cells << '\n';
  for (int t = 0; t < mesh.triangle_count(); ++t) {
    const auto local = space.cell_nodes(t);
    for (const auto& sub : kSub) out << "3 " << local[sub[0]] << ' ' << local[sub[1]] << ' ' << local[sub[2]] << '\n';
  }
  out << "CELL_TYPES " << cells << '\n';
  for (int c = 0; c < cells; ++c) out << "5\n";
  if (!scalars.empty() || !vectors.empty()) out << "POINT_DATA " << nodes << '\n';
  for (const auto& f : scalars) {
    out << "SCALARS " << f.name << " double 1\nLOOKUP_TABLE default\n";
    for (int i = 0; i < nodes; ++i) out << f.values[i] << '\n';
  }
  for (const auto& f : vectors) {
    out << "VECTORS " << f.name << " double\n";
    for (int i = 0; i < nodes; ++i) out << f.values[i] << ' ' << f.values[nodes + i] << " 0\n";
  }
  out.precision(old);
}

Eigen::VectorXd pressure_at_p2_nodes(const Discretization& disc, const Eigen::VectorXd& p) {
  const Mesh& mesh = disc.mesh();
  if (p.size() != mesh.vertex_count()) throw std::invalid_argument("pressure_at_p2_nodes: wrong pressure size");
  Eigen::VectorXd out(mesh.vertex_count() + mesh.edge_count());
  out.head(mesh.vertex_count()) = p;
  for (int e = 0; e < mesh.edge_count(); ++e) {
    out[mesh.vertex_count() + e] = 0.5 * (p[mesh.edges[e][0]] + p[mesh.edges[e][1]]);
  }
  return out;
}

void write_state_vtk(std::ostream& out, const Discretization& disc, const MemberState& state,
                     const std::string& title) {
  FeSpace p2(disc.velocity().mesh_ptr(), SpaceKind::ScalarP2);
  write_p2_vtk(out, p2,
               {{"temperature", state.T_curr}, {"pressure", pressure_at_p2_nodes(disc, state.p_curr)}},
               {{"velocity", state.u_curr}}, title);
}

}  // namespace ensnc
