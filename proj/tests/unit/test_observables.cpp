#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "ensnc/errors.hpp"
#include "ensnc/observables.hpp"
#include "support/oracles.hpp"

namespace ensnc {
namespace {

TEST(Nusselt, ConductionProfileIsOneOnBothWalls) {
  for (int m : {1, 3, 8}) {
    const Discretization disc(make_cavity_mesh(m));
    const Eigen::VectorXd t = interpolate([](Point p) { return 1.0 - p.x; }, disc.temperature()).coeffs;
    for (BoundaryTag wall : {BoundaryTag::HotWall, BoundaryTag::ColdWall}) {
      const auto profile = nusselt_local(disc.temperature(), t, wall);
      ASSERT_EQ(static_cast<int>(profile.size()), 3 * m);
      for (const auto& s : profile) EXPECT_NEAR(s.value, 1.0, 1e-12);
      for (std::size_t i = 1; i < profile.size(); ++i) EXPECT_LT(profile[i - 1].y, profile[i].y);
    }
    EXPECT_NEAR(nusselt_avg(disc.temperature(), t), 1.0, 1e-12);
  }
}

TEST(Nusselt, ConstantTemperatureCarriesNoFlux) {
  const Discretization disc(make_cavity_mesh(4));
  const Eigen::VectorXd t = Eigen::VectorXd::Constant(disc.temperature().dof_count(), 0.3);
  for (const auto& s : nusselt_local(disc.temperature(), t, BoundaryTag::HotWall)) EXPECT_NEAR(s.value, 0.0, 1e-13);
  EXPECT_NEAR(nusselt_avg(disc.temperature(), t), 0.0, 1e-13);
  EXPECT_THROW(nusselt_local(disc.temperature(), t, BoundaryTag::Insulated), std::invalid_argument);
}

TEST(Nusselt, QuadraticProfileIntegratesExactly) {
  // T = 1 - x - x y (in P2): -dT/dx at x = 0 is 1 + y, average 3/2.
  const Discretization disc(make_cavity_mesh(4));
  const Eigen::VectorXd t = interpolate([](Point p) { return 1.0 - p.x - p.x * p.y; }, disc.temperature()).coeffs;
  EXPECT_NEAR(nusselt_avg(disc.temperature(), t), 1.5, 1e-12);
  for (const auto& s : nusselt_local(disc.temperature(), t, BoundaryTag::HotWall)) {
    EXPECT_NEAR(s.value, 1.0 + s.y, 1e-12);
  }
}

TEST(Midline, MaximaAndLocations) {
  const Discretization disc(make_cavity_mesh(4));
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(disc.velocity_dofs());
  EXPECT_EQ(midline_max(disc.velocity(), zero, 0, MidLine::VerticalCentre).value, 0.0);
  const Eigen::VectorXd u = interpolate([](Point p) {
    return std::array<double, 2>{p.y * (1.0 - p.y), 2.0 * p.x};
  }, disc.velocity()).coeffs;
  const LineMax a = midline_max(disc.velocity(), u, 0, MidLine::VerticalCentre, 1025);
  EXPECT_NEAR(a.value, 0.25, 1e-14);
  EXPECT_NEAR(a.location.y, 0.5, 1e-14);
  EXPECT_EQ(a.location.x, 0.5);
  const LineMax b = midline_max(disc.velocity(), u, 1, MidLine::HorizontalCentre, 11);
  EXPECT_NEAR(b.value, 2.0, 1e-14);
  EXPECT_EQ(b.location.x, 1.0);
  EXPECT_THROW(midline_max(disc.velocity(), u, 2, MidLine::VerticalCentre), std::invalid_argument);
  EXPECT_THROW(midline_max(disc.velocity(), u, 0, MidLine::VerticalCentre, 1), std::invalid_argument);
}

TEST(ConvergenceRate, Examples) {
  EXPECT_NEAR(convergence_rate(4.0, 1.0, 0.2, 0.1), 2.0, 1e-15);
  EXPECT_NEAR(convergence_rate(8.0, 1.0, 0.2, 0.1), 3.0, 1e-15);
  EXPECT_NEAR(convergence_rate(1.0, 4.0, 0.1, 0.2), 2.0, 1e-15);
  const double r = convergence_rate(0.142, 0.0353, 1.0 / 8, 1.0 / 16);
  EXPECT_NEAR(r, std::log(0.142 / 0.0353) / std::log(2.0), 1e-14);
  EXPECT_THROW(convergence_rate(0.0, 1.0, 0.2, 0.1), UndefinedRateError);
  EXPECT_THROW(convergence_rate(1.0, -1.0, 0.2, 0.1), UndefinedRateError);
  EXPECT_THROW(convergence_rate(1.0, 2.0, 0.1, 0.1), UndefinedRateError);
}

TEST(LevelErrors, ExactDataHasZeroError) {
  const Discretization disc(make_cavity_mesh(3), TemperatureBoundary::AllDirichlet);
  const testing::RigidRotationExact ex;
  const double t = 0.4;
  const auto u = interpolate([&](Point p) { return ex.u(p, t); }, disc.velocity()).coeffs;
  const auto T = interpolate([&](Point p) { return ex.T(p, t); }, disc.temperature()).coeffs;
  const auto p = interpolate([&](Point x) { return ex.p(x, t); }, disc.pressure()).coeffs;
  const LevelErrors e = level_errors(disc, u, T, p, ex, t);
  EXPECT_NEAR(e.u_l2, 0.0, 1e-13);
  EXPECT_NEAR(e.u_grad, 0.0, 1e-12);
  EXPECT_NEAR(e.T_l2, 0.0, 1e-13);
  EXPECT_NEAR(e.T_grad, 0.0, 1e-12);
  EXPECT_NEAR(e.p_l2, 0.0, 1e-13);
  // A constant temperature offset c gives ||e|| = c and no gradient error.
  const LevelErrors shifted = level_errors(disc, u, (T.array() + 0.25).matrix(), p, ex, t);
  EXPECT_NEAR(shifted.T_l2, 0.25, 1e-13);
  EXPECT_NEAR(shifted.T_grad, 0.0, 1e-12);
  EXPECT_THROW(level_errors(disc, u, p, p, ex, t), std::invalid_argument);
}

TEST(ErrorHistory, SpaceTimeNorms) {
  const double dt = 0.125;
  ErrorHistory h(dt);
  for (int n = 0; n <= 8; ++n) {
    LevelErrors e;
    e.t = n * dt;
    e.u_l2 = e.u_grad = e.T_l2 = e.T_grad = e.p_l2 = 0.5;
    h.record(e);
  }
  const ErrorNorms n = h.norms();
  EXPECT_DOUBLE_EQ(h.t_final(), 1.0);
  EXPECT_DOUBLE_EQ(n.u_linf_l2, 0.5);
  EXPECT_DOUBLE_EQ(n.T_linf_l2, 0.5);
  // Levels 0..N: sqrt(dt * (N + 1)) e = sqrt(t* + dt) e.
  EXPECT_NEAR(n.u_l2_grad, std::sqrt(1.0 + dt) * 0.5, 1e-15);
  EXPECT_NEAR(n.T_l2_grad, std::sqrt(1.0 + dt) * 0.5, 1e-15);
  EXPECT_NEAR(n.p_l2_l2, std::sqrt(1.0 + dt) * 0.5, 1e-15);

  ErrorHistory peak(0.1);
  for (double v : {0.1, 0.7, 0.3}) peak.record({0.0, v, 0.0, v / 2, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(peak.norms().u_linf_l2, 0.7);
  EXPECT_DOUBLE_EQ(peak.norms().T_linf_l2, 0.35);
  EXPECT_THROW(ErrorHistory(0.0), std::invalid_argument);
}

TEST(EnsembleAverage, MeanOfMembers) {
  EnsembleState s;
  for (double v : {1.0, 2.0, 6.0}) {
    MemberState m;
    m.u_prev = m.u_curr = Eigen::VectorXd::Constant(2, v);
    m.T_prev = m.T_curr = Eigen::VectorXd::Constant(3, -v);
    m.p_curr = Eigen::VectorXd::Constant(1, 2 * v);
    s.members.push_back(m);
  }
  const MemberState a = ensemble_average(s);
  EXPECT_DOUBLE_EQ(a.u_curr[1], 3.0);
  EXPECT_DOUBLE_EQ(a.T_curr[2], -3.0);
  EXPECT_DOUBLE_EQ(a.p_curr[0], 6.0);
  EXPECT_THROW(ensemble_average(EnsembleState{}), std::invalid_argument);
}

TEST(DiscreteEnergy, SteadyStateValue) {
  const Discretization disc(make_cavity_mesh(2));
  MemberState m;
  m.u_prev = m.u_curr = interpolate([](Point) { return std::array<double, 2>{1.0, 1.0}; }, disc.velocity()).coeffs;
  m.T_prev = m.T_curr = Eigen::VectorXd::Ones(disc.temperature().dof_count());
  // ||u||^2 = 2 twice, plus (1 + 1) / 2.
  EXPECT_NEAR(discrete_energy(disc, m), 5.0, 1e-12);
}

TEST(WallProfile, Csv) {
  std::vector<WallSample> p{{0.25, 1.5}, {0.75, 0.5}};
  std::ostringstream out;
  write_wall_profile_csv(out, p);
  EXPECT_EQ(out.str(), "y,nu_local\n0.25,1.5\n0.75,0.5\n");
}

}  // namespace
}  // namespace ensnc
