#pragma once

#include <Eigen/Dense>
#include <functional>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "ensnc/discretization.hpp"
#include "ensnc/ensemble.hpp"
#include "ensnc/sparse_matrix.hpp"

namespace ensnc {

/// Overwrite Dirichlet entries of a velocity / temperature coefficient
/// vector (or the leading block of a coupled right-hand side) with the
/// member's boundary data at time t.
void impose_velocity_boundary(Eigen::VectorXd& u, const Discretization& disc, const ProblemParams& params,
                              double t, int member);
void impose_temperature_boundary(Eigen::VectorXd& temperature, const Discretization& disc,
                                 const ProblemParams& params, double t, int member);

/// The two coefficient matrices of one ensemble step. Both depend only on the
/// extrapolated ensemble mean and dt, never on an individual member.
struct StepMatrices {
  CsrMatrix velocity;     // 3/(2dt) M + N(<u>_e) + Pr K, coupled with B
  CsrMatrix temperature;  // 3/(2dt) M + N*(<u>_e) + K
};

StepMatrices assemble_step_matrices(const Eigen::VectorXd& mean_extrapolation, double dt,
                                    const ProblemParams& params, const Discretization& disc);

/// One BDF2 step of every member from levels (n-1, n) to n+1 with the shared
/// matrices; fluctuation convection and buoyancy are explicit. The thermal
/// solve uses velocity levels n and n-1 only. Solver failures are rethrown as
/// StepFailure carrying the step index.
EnsembleState step(const EnsembleState& state, const ProblemParams& params, const Discretization& disc);

/// First step by the trapezoidal rule, member by member, from a single level.
/// Convection and buoyancy are resolved by Picard iteration on the half-step
/// average until the relative update drops below 1e-10 (at most 50 sweeps);
/// throws StartupFailure otherwise.
EnsembleState startup_step(const EnsembleState& initial, const ProblemParams& params,
                           const Discretization& disc);

inline constexpr double kPicardTolerance = 1e-10;
inline constexpr int kPicardMaxIterations = 50;

/// max over members of the relative L2 increments of u and T between the
/// current levels of two states. A zero denominator counts as not converged.
bool steady_state_reached(const EnsembleState& previous, const EnsembleState& current, double tol,
                          const Discretization& disc);

struct StepRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double cfl_value = 0.0;
  int halvings = 0;  // halvings performed before this step
  std::vector<double> u_norms;
  std::vector<double> T_norms;
};

struct AdvanceConfig {
  double t_final = std::numeric_limits<double>::infinity();
  std::optional<double> steady_tol;
  double dt_min = 1e-9;
  long max_steps = 1'000'000;
  CflConfig cfl;
  /// Called after every accepted step with the states before and after it.
  std::function<void(const EnsembleState& before, const EnsembleState& after)> observer;
};

struct AdvanceResult {
  EnsembleState state;
  std::vector<StepRecord> log;
  int halvings = 0;
  bool reached_steady = false;
};

/// Timestep loop: check the fluctuation condition, halve dt (never increase)
/// and recheck until it holds, then step. Stops at t_final or on the steady
/// criterion. Throws TimestepUnderflow below dt_min and TimeoutError after
/// max_steps.
AdvanceResult advance(EnsembleState state, const ProblemParams& params, const Discretization& disc,
                      const AdvanceConfig& config);

/// CSV: step,t,dt,cfl_value,halvings,u_l2_0..,T_l2_0..
void write_step_log_csv(std::ostream& out, std::span<const StepRecord> log);

}  // namespace ensnc
