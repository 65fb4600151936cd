#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ensnc/mesh.hpp"
#include "ensnc/sparse_matrix.hpp"

namespace ensnc {

using SpaceTimeVector = std::function<std::array<double, 2>(Point, double t, int member)>;
using SpaceTimeScalar = std::function<double(Point, double t, int member)>;

/// Physical parameters and member-dependent data of the Boussinesq system.
/// Empty callbacks mean: zero body force, zero heat source, no-slip walls,
/// and hot wall 1 / cold wall 0 temperature (1 - x on any other Dirichlet node).
struct ProblemParams {
  double prandtl = 0.71;
  double rayleigh = 1.0e4;
  std::array<double, 2> xi{0.0, 1.0};
  int members = 2;
  SpaceTimeVector body_force;
  SpaceTimeScalar heat_source;
  SpaceTimeVector velocity_boundary;
  SpaceTimeScalar temperature_boundary;

  /// Throws std::invalid_argument if Pr <= 0, Ra < 0, |xi| != 1 or J < 1.
  void validate() const;
};

struct MemberState {
  Eigen::VectorXd u_prev;
  Eigen::VectorXd u_curr;
  Eigen::VectorXd T_prev;
  Eigen::VectorXd T_curr;
  Eigen::VectorXd p_curr;
};

/// Two time levels (n-1, n) of every member. Before the startup step only
/// level n = 0 is meaningful (levels == 1).
struct EnsembleState {
  std::vector<MemberState> members;
  double t = 0.0;
  double dt = 0.0;
  long step_index = 0;
  int levels = 1;
  /// Whether p_curr at level 0 is a genuine initial pressure; the startup step
  /// then extrapolates the half-step pressure to t = dt.
  bool pressure_known = false;

  int size() const { return static_cast<int>(members.size()); }
};

struct MeanAndFluctuations {
  Eigen::VectorXd mean;                      // <u>_e = (1/J) sum_j (2 u_j^n - u_j^{n-1})
  std::vector<Eigen::VectorXd> fluctuations; // u'_j = 2 u_j^n - u_j^{n-1} - <u>_e
};

MeanAndFluctuations mean_and_fluctuations(const EnsembleState& state);

/// Timestep restriction on the velocity fluctuations,
///   c_dagger * dt / h * max_j ||grad u'_j||^2 <= 1.
struct CflConfig {
  double c_dagger = 1.0;
  bool enabled = true;
};

struct CflCheck {
  bool ok = true;
  double value = 0.0;  // left-hand side of the inequality
};

/// `stiffness` is the unit-coefficient vector stiffness, so ||grad v||^2 = v^T K v.
/// A disabled controller still reports the attained value but always passes.
CflCheck cfl_ok(double dt, double h, std::span<const Eigen::VectorXd> fluctuations,
                const CsrMatrix& stiffness, const CflConfig& config);

}  // namespace ensnc
