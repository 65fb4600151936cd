#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "ensnc/fe_space.hpp"

namespace ensnc {
namespace {

constexpr std::array<BoundaryTag, 3> kWalls{BoundaryTag::HotWall, BoundaryTag::ColdWall, BoundaryTag::Insulated};
constexpr std::array<BoundaryTag, 2> kHeated{BoundaryTag::HotWall, BoundaryTag::ColdWall};

TEST(FeSpace, DofCounts) {
  for (int m : {1, 2, 5}) {
    auto mesh = make_cavity_mesh(m);
    const int v = (m + 1) * (m + 1);
    const int e = 3 * m * m + 2 * m;
    EXPECT_EQ(FeSpace(mesh, SpaceKind::ScalarP1).dof_count(), v);
    EXPECT_EQ(FeSpace(mesh, SpaceKind::ScalarP2).dof_count(), v + e);
    EXPECT_EQ(FeSpace(mesh, SpaceKind::VectorP2).dof_count(), 2 * (v + e));
  }
}

TEST(FeSpace, DirichletSets) {
  auto mesh = make_cavity_mesh(4);
  const int boundary_nodes = 4 * 2 * 4;  // 2 nodes per boundary edge (vertex + midpoint)
  const FeSpace vel = FeSpace(mesh, SpaceKind::VectorP2).with_dirichlet(kWalls);
  EXPECT_EQ(static_cast<int>(vel.dirichlet_dofs().size()), 2 * boundary_nodes);
  const FeSpace temp = FeSpace(mesh, SpaceKind::ScalarP2).with_dirichlet(kHeated);
  // Each vertical wall carries 2m+1 nodes including its corners.
  EXPECT_EQ(static_cast<int>(temp.dirichlet_dofs().size()), 2 * (2 * 4 + 1));
  for (const auto& d : temp.dirichlet_dofs()) {
    const Point p = temp.node_point(d.dof);
    if (d.tag == BoundaryTag::HotWall) EXPECT_EQ(p.x, 0.0);
    if (d.tag == BoundaryTag::ColdWall) EXPECT_EQ(p.x, 1.0);
    EXPECT_NE(d.tag, BoundaryTag::Insulated);
  }
}

TEST(FeSpace, InterpolationReproducesQuadratics) {
  auto mesh = make_cavity_mesh(3);
  const FeSpace p2(mesh, SpaceKind::ScalarP2);
  const FeSpace p1(mesh, SpaceKind::ScalarP1);
  const auto quad = [](Point p) { return 1.0 + 2.0 * p.x - p.y + p.x * p.x - 3.0 * p.x * p.y + 0.5 * p.y * p.y; };
  const auto lin = [](Point p) { return 0.3 - p.x + 4.0 * p.y; };
  const FieldVector fq = interpolate(quad, p2);
  const FieldVector fl = interpolate(lin, p1);
  for (Point p : {Point{0.13, 0.77}, Point{0.5, 0.5}, Point{0.91, 0.04}, Point{1.0, 0.0}, Point{0.333, 0.2}}) {
    EXPECT_NEAR(evaluate(p2, fq.coeffs, p), quad(p), 1e-13);
    EXPECT_NEAR(evaluate(p1, fl.coeffs, p), lin(p), 1e-13);
    const auto g = evaluate_gradient(p2, fq.coeffs, p);
    EXPECT_NEAR(g[0], 2.0 + 2.0 * p.x - 3.0 * p.y, 1e-12);
    EXPECT_NEAR(g[1], -1.0 - 3.0 * p.x + p.y, 1e-12);
  }
  EXPECT_THROW(evaluate(p2, fq.coeffs, {1.2, 0.5}), std::out_of_range);
}

TEST(FeSpace, VectorInterpolationLayout) {
  auto mesh = make_cavity_mesh(2);
  const FeSpace v(mesh, SpaceKind::VectorP2);
  const FieldVector f = interpolate([](Point p) { return std::array<double, 2>{p.x, -p.y * p.y}; }, v);
  for (int n = 0; n < v.node_count(); ++n) {
    const Point p = v.node_point(n);
    EXPECT_EQ(f.coeffs[v.dof(0, n)], p.x);
    EXPECT_EQ(f.coeffs[v.dof(1, n)], -p.y * p.y);
  }
  EXPECT_NEAR(evaluate(v, f.coeffs, {0.3, 0.6}, 1), -0.36, 1e-14);
}

TEST(FeSpace, ShapeFunctionsPartitionUnity) {
  for (auto l : {std::array<double, 3>{1, 0, 0}, std::array<double, 3>{0.2, 0.3, 0.5},
                 std::array<double, 3>{0.5, 0.5, 0.0}}) {
    const auto phi = p2_shape(l);
    double s = 0;
    for (double v : phi) s += v;
    EXPECT_NEAR(s, 1.0, 1e-15);
  }
  const auto at_mid = p2_shape({0.5, 0.5, 0.0});
  EXPECT_NEAR(at_mid[3], 1.0, 1e-15);
  for (int k : {0, 1, 2, 4, 5}) EXPECT_NEAR(at_mid[k], 0.0, 1e-15);
}

TEST(FeSpace, CheckFieldRejectsMismatch) {
  auto mesh = make_cavity_mesh(2);
  const FeSpace s(mesh, SpaceKind::ScalarP2);
  FieldVector f{SpaceKind::ScalarP1, Eigen::VectorXd::Zero(s.dof_count())};
  EXPECT_THROW(check_field(s, f, "test"), std::invalid_argument);
  f.kind = SpaceKind::ScalarP2;
  f.coeffs.resize(3);
  EXPECT_THROW(check_field(s, f, "test"), std::invalid_argument);
  EXPECT_NO_THROW(check_field(s, zero_field(s), "test"));
}

}  // namespace
}  // namespace ensnc
