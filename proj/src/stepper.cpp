#include "ensnc/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "ensnc/assembly.hpp"
#include "ensnc/errors.hpp"
#include "ensnc/sparse_lu.hpp"

namespace ensnc {

namespace {

Eigen::VectorXd velocity_source(const Discretization& disc, const ProblemParams& params, double t,
                                int member) {
  if (!params.body_force) return Eigen::VectorXd::Zero(disc.velocity_dofs());
  return assemble_load(disc.velocity(),
                       VectorFunction([&](Point p) { return params.body_force(p, t, member); }));
}

Eigen::VectorXd heat_source(const Discretization& disc, const ProblemParams& params, double t, int member) {
  if (!params.heat_source) return Eigen::VectorXd::Zero(disc.temperature().dof_count());
  return assemble_load(disc.temperature(),
                       ScalarFunction([&](Point p) { return params.heat_source(p, t, member); }));
}

Factorization factorize_for_step(const CsrMatrix& a, long step, const char* what) {
  try {
    return factorize(a);
  } catch (const SingularMatrixError& e) {
    throw StepFailure(std::string(what) + " at step " + std::to_string(step) + ": " + e.what(), step);
  }
}

double relative_change(const Eigen::VectorXd& next, const Eigen::VectorXd& prev) {
  const double denom = next.norm();
  const double num = (next - prev).norm();
  if (denom == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / denom;
}

void require_members(const EnsembleState& state, const ProblemParams& params, const char* where) {
  if (state.size() != params.members) {
    throw std::invalid_argument(std::string(where) + ": state has " + std::to_string(state.size()) +
                                " members, parameters expect " + std::to_string(params.members));
  }
}

}  // namespace

void impose_velocity_boundary(Eigen::VectorXd& u, const Discretization& disc, const ProblemParams& params,
                              double t, int member) {
  const FeSpace& space = disc.velocity();
  const int n = space.node_count();
  for (const auto& d : space.dirichlet_dofs()) {
    if (!params.velocity_boundary) {
      u[d.dof] = 0.0;
      continue;
    }
    const int component = d.dof / n;
    u[d.dof] = params.velocity_boundary(space.node_point(d.dof % n), t, member)[component];
  }
}

void impose_temperature_boundary(Eigen::VectorXd& temperature, const Discretization& disc,
                                 const ProblemParams& params, double t, int member) {
  const FeSpace& space = disc.temperature();
  for (const auto& d : space.dirichlet_dofs()) {
    const Point p = space.node_point(d.dof);
    if (params.temperature_boundary) {
      temperature[d.dof] = params.temperature_boundary(p, t, member);
    } else if (d.tag == BoundaryTag::HotWall) {
      temperature[d.dof] = 1.0;
    } else if (d.tag == BoundaryTag::ColdWall) {
      temperature[d.dof] = 0.0;
    } else {
      temperature[d.dof] = 1.0 - p.x;
    }
  }
}

StepMatrices assemble_step_matrices(const Eigen::VectorXd& mean_extrapolation, double dt,
                                    const ProblemParams& params, const Discretization& disc) {
  const FieldVector mean{SpaceKind::VectorP2, mean_extrapolation};
  const double a = 3.0 / (2.0 * dt);
  return {disc.velocity_system(mean, a, 1.0, params.prandtl), disc.temperature_system(mean, a, 1.0, 1.0)};
}

EnsembleState step(const EnsembleState& state, const ProblemParams& params, const Discretization& disc) {
  if (state.levels < 2) throw std::invalid_argument("step: state needs two time levels (run startup_step)");
  if (!(state.dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  require_members(state, params, "step");
  const int members = state.size();
  const double dt = state.dt;
  const double t_next = state.t + dt;
  const long step_index = state.step_index + 1;

  const MeanAndFluctuations mf = mean_and_fluctuations(state);
  const StepMatrices matrices = assemble_step_matrices(mf.mean, dt, params, disc);

  // Fluid sub-problem: one factorization, J right-hand sides.
  const Factorization fluid = factorize_for_step(matrices.velocity, step_index, "velocity system");
  std::vector<Eigen::VectorXd> fluid_rhs;
  fluid_rhs.reserve(members);
  for (int j = 0; j < members; ++j) {
    const MemberState& m = state.members[j];
    const FieldVector fluctuation{SpaceKind::VectorP2, mf.fluctuations[j]};
    const FieldVector u_extrap{SpaceKind::VectorP2, 2.0 * m.u_curr - m.u_prev};
    const FieldVector t_extrap{SpaceKind::ScalarP2, 2.0 * m.T_curr - m.T_prev};
    Eigen::VectorXd load = disc.velocity_mass().multiply(4.0 * m.u_curr - m.u_prev) / (2.0 * dt);
    load -= apply_convection(disc.velocity(), fluctuation, disc.velocity(), u_extrap);
    load += assemble_buoyancy(disc.temperature(), t_extrap, disc.velocity(), params.prandtl,
                              params.rayleigh, params.xi);
    load += velocity_source(disc, params, t_next, j);
    impose_velocity_boundary(load, disc, params, t_next, j);
    fluid_rhs.push_back(disc.saddle_rhs(load));
  }
  const auto fluid_solutions = fluid.solve_multi(fluid_rhs);

  // Thermal sub-problem: lagged velocity data only.
  const Factorization thermal = factorize_for_step(matrices.temperature, step_index, "temperature system");
  std::vector<Eigen::VectorXd> thermal_rhs;
  thermal_rhs.reserve(members);
  for (int j = 0; j < members; ++j) {
    const MemberState& m = state.members[j];
    const FieldVector fluctuation{SpaceKind::VectorP2, mf.fluctuations[j]};
    const FieldVector t_extrap{SpaceKind::ScalarP2, 2.0 * m.T_curr - m.T_prev};
    Eigen::VectorXd load = disc.scalar_mass().multiply(4.0 * m.T_curr - m.T_prev) / (2.0 * dt);
    load -= apply_convection(disc.velocity(), fluctuation, disc.temperature(), t_extrap);
    load += heat_source(disc, params, t_next, j);
    impose_temperature_boundary(load, disc, params, t_next, j);
    thermal_rhs.push_back(std::move(load));
  }
  const auto thermal_solutions = thermal.solve_multi(thermal_rhs);

  EnsembleState next;
  next.members.resize(members);
  for (int j = 0; j < members; ++j) {
    const MemberState& m = state.members[j];
    MemberState& out = next.members[j];
    out.u_prev = m.u_curr;
    out.T_prev = m.T_curr;
    out.u_curr = disc.velocity_part(fluid_solutions[j]);
    out.p_curr = disc.pressure_part(fluid_solutions[j]);
    out.T_curr = thermal_solutions[j];
  }
  next.t = t_next;
  next.dt = dt;
  next.step_index = step_index;
  next.levels = 2;
  next.pressure_known = true;
  return next;
}

EnsembleState startup_step(const EnsembleState& initial, const ProblemParams& params,
                           const Discretization& disc) {
  if (initial.members.empty()) throw std::invalid_argument("startup_step: empty ensemble");
  if (!(initial.dt > 0.0)) throw std::invalid_argument("startup_step: dt must be positive");
  require_members(initial, params, "startup_step");
  const double dt = initial.dt;
  const double t0 = initial.t;
  const double t1 = t0 + dt;
  const FeSpace& vs = disc.velocity();
  const FeSpace& ts = disc.temperature();

  EnsembleState next;
  next.members.resize(initial.size());
  for (int j = 0; j < initial.size(); ++j) {
    const MemberState& m0 = initial.members[j];
    const Eigen::VectorXd& u0 = m0.u_curr;
    const Eigen::VectorXd& temp0 = m0.T_curr;
    const Eigen::VectorXd f_half = 0.5 * (velocity_source(disc, params, t0, j) + velocity_source(disc, params, t1, j));
    const Eigen::VectorXd g_half = 0.5 * (heat_source(disc, params, t0, j) + heat_source(disc, params, t1, j));
    const Eigen::VectorXd u_explicit = disc.velocity_mass().multiply(u0) / dt -
                                       0.5 * params.prandtl * disc.velocity_stiffness().multiply(u0) + f_half;
    const Eigen::VectorXd t_explicit =
        disc.scalar_mass().multiply(temp0) / dt - 0.5 * disc.scalar_stiffness().multiply(temp0) + g_half;

    Eigen::VectorXd u1 = u0;
    Eigen::VectorXd temp1 = temp0;
    Eigen::VectorXd p_half = Eigen::VectorXd::Zero(disc.pressure_dofs());
    bool converged = false;
    for (int it = 0; it < kPicardMaxIterations && !converged; ++it) {
      const FieldVector w{SpaceKind::VectorP2, 0.5 * (u0 + u1)};
      const FieldVector t_mid{SpaceKind::ScalarP2, 0.5 * (temp0 + temp1)};
      Eigen::VectorXd load = u_explicit - 0.5 * apply_convection(vs, w, vs, FieldVector{SpaceKind::VectorP2, u0});
      load += assemble_buoyancy(ts, t_mid, vs, params.prandtl, params.rayleigh, params.xi);
      impose_velocity_boundary(load, disc, params, t1, j);
      const Factorization fluid = factorize_for_step(disc.velocity_system(w, 1.0 / dt, 0.5, 0.5 * params.prandtl),
                                                     initial.step_index + 1, "startup velocity system");
      const Eigen::VectorXd x = fluid.solve(disc.saddle_rhs(load));
      const Eigen::VectorXd u_new = disc.velocity_part(x);
      p_half = disc.pressure_part(x);

      const FieldVector w_new{SpaceKind::VectorP2, 0.5 * (u0 + u_new)};
      Eigen::VectorXd t_load =
          t_explicit - 0.5 * apply_convection(vs, w_new, ts, FieldVector{SpaceKind::ScalarP2, temp0});
      impose_temperature_boundary(t_load, disc, params, t1, j);
      const Factorization thermal = factorize_for_step(disc.temperature_system(w_new, 1.0 / dt, 0.5, 0.5),
                                                       initial.step_index + 1, "startup temperature system");
      const Eigen::VectorXd t_new = thermal.solve(t_load);

      const double change = std::max(relative_change(u_new, u1), relative_change(t_new, temp1));
      u1 = u_new;
      temp1 = t_new;
      converged = change < kPicardTolerance;
    }
    if (!converged) {
      throw StartupFailure("startup_step: Picard iteration for member " + std::to_string(j) +
                           " did not converge in " + std::to_string(kPicardMaxIterations) + " iterations");
    }
    MemberState& out = next.members[j];
    out.u_prev = u0;
    out.T_prev = temp0;
    out.u_curr = u1;
    out.T_curr = temp1;
    // The Crank-Nicolson pressure approximates p(t0 + dt/2).
    out.p_curr = initial.pressure_known ? Eigen::VectorXd(2.0 * p_half - m0.p_curr) : p_half;
  }
  next.t = t1;
  next.dt = dt;
  next.step_index = initial.step_index + 1;
  next.levels = 2;
  next.pressure_known = true;
  return next;
}

bool steady_state_reached(const EnsembleState& previous, const EnsembleState& current, double tol,
                          const Discretization& disc) {
  if (previous.size() != current.size()) {
    throw std::invalid_argument("steady_state_reached: ensembles differ in size");
  }
  for (int j = 0; j < current.size(); ++j) {
    const auto& a = previous.members[j];
    const auto& b = current.members[j];
    const double u_den = disc.velocity_l2(b.u_curr);
    const double t_den = disc.temperature_l2(b.T_curr);
    if (u_den == 0.0 || t_den == 0.0) return false;
    const double du = disc.velocity_l2(b.u_curr - a.u_curr) / u_den;
    const double dtemp = disc.temperature_l2(b.T_curr - a.T_curr) / t_den;
    if (std::max(du, dtemp) > tol) return false;
  }
  return true;
}

AdvanceResult advance(EnsembleState state, const ProblemParams& params, const Discretization& disc,
                      const AdvanceConfig& config) {
  if (state.levels < 2) throw std::invalid_argument("advance: run startup_step first");
  AdvanceResult result;
  long steps = 0;
  while (state.t + 0.5 * state.dt < config.t_final) {
    if (steps >= config.max_steps) {
      throw TimeoutError("advance: no termination after " + std::to_string(config.max_steps) + " steps (t = " +
                         std::to_string(state.t) + ")");
    }
    const MeanAndFluctuations mf = mean_and_fluctuations(state);
    int halvings = 0;
    CflCheck check = cfl_ok(state.dt, disc.h(), mf.fluctuations, disc.velocity_stiffness(), config.cfl);
    while (!check.ok) {
      // Levels n and n-1 are reused; only the step size changes.
      state.dt *= 0.5;
      ++halvings;
      if (state.dt < config.dt_min) {
        throw TimestepUnderflow("advance: dt = " + std::to_string(state.dt) + " fell below dt_min = " +
                                std::to_string(config.dt_min) + " at step " +
                                std::to_string(state.step_index + 1) + " (CFL value " +
                                std::to_string(check.value) + ")");
      }
      check = cfl_ok(state.dt, disc.h(), mf.fluctuations, disc.velocity_stiffness(), config.cfl);
    }
    result.halvings += halvings;

    EnsembleState next = step(state, params, disc);
    ++steps;

    StepRecord rec;
    rec.step = next.step_index;
    rec.t = next.t;
    rec.dt = next.dt;
    rec.cfl_value = check.value;
    rec.halvings = halvings;
    for (const auto& m : next.members) {
      rec.u_norms.push_back(disc.velocity_l2(m.u_curr));
      rec.T_norms.push_back(disc.temperature_l2(m.T_curr));
    }
    result.log.push_back(std::move(rec));
    if (config.observer) config.observer(state, next);

    const bool steady = config.steady_tol && steady_state_reached(state, next, *config.steady_tol, disc);
    state = std::move(next);
    if (steady) {
      result.reached_steady = true;
      break;
    }
  }
  result.state = std::move(state);
  return result;
}

void write_step_log_csv(std::ostream& out, std::span<const StepRecord> log) {
  const std::size_t members = log.empty() ? 0 : log.front().u_norms.size();
  out << "step,t,dt,cfl_value,halvings";
  for (std::size_t j = 0; j < members; ++j) out << ",u_l2_" << j;
  for (std::size_t j = 0; j < members; ++j) out << ",T_l2_" << j;
  out << '\n';
  const auto old = out.precision(12);
  for (const auto& r : log) {
    out << r.step << ',' << r.t << ',' << r.dt << ',' << r.cfl_value << ',' << r.halvings;
    for (double v : r.u_norms) out << ',' << v;
    for (double v : r.T_norms) out << ',' << v;
    out << '\n';
  }
  out.precision(old);
}

}  // namespace ensnc
