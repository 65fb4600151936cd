#include "ensnc/bred_vector.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "ensnc/errors.hpp"
#include "ensnc/stepper.hpp"

namespace ensnc {

namespace {

// Scalar P2 nodes are shared by the velocity components and the temperature,
// so a channel is a contiguous block of the velocity or temperature vector.
Eigen::Ref<Eigen::VectorXd> channel_values(MemberState& m, Channel c, int nodes, bool current) {
  Eigen::VectorXd& u = current ? m.u_curr : m.u_prev;
  Eigen::VectorXd& t = current ? m.T_curr : m.T_prev;
  switch (c) {
    case Channel::U1: return u.segment(0, nodes);
    case Channel::U2: return u.segment(nodes, nodes);
    case Channel::T: return t;
  }
  throw std::logic_error("unknown channel");
}

Eigen::VectorXd channel_copy(const MemberState& m, Channel c, int nodes) {
  switch (c) {
    case Channel::U1: return m.u_curr.segment(0, nodes);
    case Channel::U2: return m.u_curr.segment(nodes, nodes);
    case Channel::T: return m.T_curr;
  }
  throw std::logic_error("unknown channel");
}

std::vector<int> free_nodes(const Discretization& disc, Channel c) {
  const FeSpace& space = c == Channel::T ? disc.temperature() : disc.velocity();
  const int nodes = space.node_count();
  const int offset = c == Channel::U2 ? nodes : 0;
  const auto mask = space.dirichlet_mask();
  std::vector<int> out;
  for (int i = 0; i < nodes; ++i) {
    if (!mask[offset + i]) out.push_back(i);
  }
  return out;
}

// The control trajectory sampled after every cycle; shared by all channels.
std::vector<EnsembleState> control_trajectory(const EnsembleState& control_initial, const BredVectorConfig& config,
                                              const Integrator& integrator) {
  std::vector<EnsembleState> out;
  out.reserve(config.k_star);
  EnsembleState s = control_initial;
  for (int k = 0; k < config.k_star; ++k) {
    s = integrator(s, config.delta_t);
    out.push_back(s);
  }
  return out;
}

BredVector breed_along(const EnsembleState& control_initial, const std::vector<EnsembleState>& control,
                       Channel channel, double epsilon, const BredVectorConfig& config,
                       const Integrator& integrator, const Discretization& disc) {
  if (control_initial.size() != 1) throw std::invalid_argument("breed: the control state must have J = 1");
  const int nodes = disc.temperature().node_count();
  const double amplitude = std::abs(epsilon);

  EnsembleState perturbed = control_initial;
  for (int i : free_nodes(disc, channel)) {
    channel_values(perturbed.members[0], channel, nodes, true)[i] += epsilon;
    if (perturbed.levels > 1) channel_values(perturbed.members[0], channel, nodes, false)[i] += epsilon;
  }

  BredVector bv;
  bv.channel = channel;
  bv.epsilon = epsilon;
  for (int k = 0; k < config.k_star; ++k) {
    perturbed = integrator(perturbed, config.delta_t);
    const Eigen::VectorXd diff = channel_copy(perturbed.members[0], channel, nodes) -
                                 channel_copy(control[k].members[0], channel, nodes);
    const double norm = disc.temperature_l2(diff);
    if (!(norm > 0.0)) {
      throw DegenerateBreedingError("breed: perturbed and control trajectories coincide in channel " +
                                    std::string(to_string(channel)) + " after cycle " + std::to_string(k + 1));
    }
    bv.values = (amplitude / norm) * diff;
    bv.cycle_norms.push_back(disc.temperature_l2(bv.values));
    if (k + 1 < config.k_star) {
      perturbed = control[k];
      channel_values(perturbed.members[0], channel, nodes, true) += bv.values;
      channel_values(perturbed.members[0], channel, nodes, false) += bv.values;
    }
  }
  return bv;
}

}  // namespace

const char* to_string(Channel channel) {
  switch (channel) {
    case Channel::U1: return "u1";
    case Channel::U2: return "u2";
    case Channel::T: return "T";
  }
  return "?";
}

void BredVectorConfig::validate(double dt) const {
  for (double e : epsilon) {
    if (!(e > 0.0)) throw std::invalid_argument("BredVectorConfig: amplitudes must be positive");
  }
  if (!epsilon.empty() && epsilon.size() != 3) {
    throw std::invalid_argument("BredVectorConfig: give one amplitude per channel (u1, u2, T)");
  }
  if (!(delta_t >= dt)) throw std::invalid_argument("BredVectorConfig: delta_t must be >= dt");
  if (k_star < 1) throw std::invalid_argument("BredVectorConfig: k_star must be >= 1");
}

std::vector<double> BredVectorConfig::amplitudes() const {
  if (!epsilon.empty()) return epsilon;
  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> dist(0.0, 0.01);
  std::vector<double> out;
  for (int i = 0; i < 3; ++i) {
    double e = 0.0;
    while (e == 0.0) e = dist(rng);  // the interval is open
    out.push_back(e);
  }
  return out;
}

Integrator make_stepper_integrator(ProblemParams params, const Discretization& disc, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("make_stepper_integrator: dt must be positive");
  params.members = 1;
  return [params, &disc, dt](const EnsembleState& state, double duration) {
    EnsembleState s = state;
    s.dt = dt;
    const double t_end = s.t + duration;
    if (s.levels < 2) s = startup_step(s, params, disc);
    while (s.t + 0.5 * dt < t_end) s = step(s, params, disc);
    return s;
  };
}

BredVector breed(const EnsembleState& control_initial, Channel channel, double epsilon,
                 const BredVectorConfig& config, const Integrator& integrator, const Discretization& disc) {
  if (config.k_star < 1) throw std::invalid_argument("breed: k_star must be >= 1");
  const auto control = control_trajectory(control_initial, config, integrator);
  return breed_along(control_initial, control, channel, epsilon, config, integrator, disc);
}

EnsembleState benchmark_initial_conditions(const ProblemParams& params, const Discretization& disc,
                                           const BredVectorConfig& config, double dt,
                                           std::vector<BredVector>* bred_vectors) {
  if (params.members != 2) throw std::invalid_argument("benchmark_initial_conditions: J must be 2");
  config.validate(dt);
  const std::vector<double> eps = config.amplitudes();

  MemberState base;
  base.u_curr = Eigen::VectorXd::Ones(disc.velocity_dofs());
  base.T_curr = Eigen::VectorXd::Ones(disc.temperature().dof_count());
  impose_velocity_boundary(base.u_curr, disc, params, 0.0, 0);
  impose_temperature_boundary(base.T_curr, disc, params, 0.0, 0);
  base.u_prev = base.u_curr;
  base.T_prev = base.T_curr;
  base.p_curr = Eigen::VectorXd::Zero(disc.pressure_dofs());

  EnsembleState control;
  control.members = {base};
  control.dt = dt;
  const Integrator integrator = make_stepper_integrator(params, disc, dt);
  const auto trajectory = control_trajectory(control, config, integrator);

  const int nodes = disc.temperature().node_count();
  EnsembleState out;
  out.dt = dt;
  const Channel channels[3] = {Channel::U1, Channel::U2, Channel::T};
  for (int j = 0; j < 2; ++j) {
    const double sign = j == 0 ? 1.0 : -1.0;
    MemberState m;
    m.u_curr = Eigen::VectorXd::Ones(disc.velocity_dofs());
    m.T_curr = Eigen::VectorXd::Ones(disc.temperature().dof_count());
    for (int c = 0; c < 3; ++c) {
      BredVector bv = breed_along(control, trajectory, channels[c], sign * eps[c], config, integrator, disc);
      channel_values(m, channels[c], nodes, true) += bv.values;
      if (bred_vectors) bred_vectors->push_back(std::move(bv));
    }
    impose_velocity_boundary(m.u_curr, disc, params, 0.0, j);
    impose_temperature_boundary(m.T_curr, disc, params, 0.0, j);
    m.u_prev = m.u_curr;
    m.T_prev = m.T_curr;
    m.p_curr = Eigen::VectorXd::Zero(disc.pressure_dofs());
    out.members.push_back(std::move(m));
  }
  return out;
}

}  // namespace ensnc
