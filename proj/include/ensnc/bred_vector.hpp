#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <vector>

#include "ensnc/discretization.hpp"
#include "ensnc/ensemble.hpp"

namespace ensnc {

/// Scalar channel of the state that a bred vector perturbs.
enum class Channel { U1, U2, T };

const char* to_string(Channel channel);

struct BredVectorConfig {
  /// One amplitude per channel (u1, u2, T). Empty: drawn from rng_seed.
  std::vector<double> epsilon;
  double delta_t = 0.001;  // reinitialization interval
  int k_star = 5;          // breeding cycles
  std::uint64_t rng_seed = 20240101;

  /// Throws std::invalid_argument unless every eps > 0, delta_t >= dt and k_star >= 1.
  void validate(double dt) const;
  /// The configured amplitudes, or three draws from U(0, 0.01) seeded by rng_seed.
  std::vector<double> amplitudes() const;
};

/// Advances a single-member state by `duration` (startup first when the state
/// has one time level).
using Integrator = std::function<EnsembleState(const EnsembleState& state, double duration)>;

/// Integrator built on the ensemble stepper with J = 1 and fixed step dt.
Integrator make_stepper_integrator(ProblemParams params, const Discretization& disc, double dt);

struct BredVector {
  Channel channel = Channel::T;
  double epsilon = 0.0;
  Eigen::VectorXd values;             // scalar P2 coefficients
  std::vector<double> cycle_norms;    // ||bv|| after every cycle
};

/// Breeding cycle: perturb the channel's free dofs of the control initial
/// state by the constant epsilon, advance control and perturbed copies by
/// delta_t, rescale the difference to L2 norm |epsilon|, re-add it to the
/// control and repeat k_star times. The rescaled difference carries the sign
/// of the perturbation, so breeding with -eps mirrors +eps to first order.
/// Throws DegenerateBreedingError if the two trajectories coincide.
BredVector breed(const EnsembleState& control_initial, Channel channel, double epsilon,
                 const BredVectorConfig& config, const Integrator& integrator, const Discretization& disc);

/// Benchmark start: u = 1, T = 1 with the boundary values imposed, bred in
/// all three channels with +eps (member 0) and -eps (member 1):
///   u_(+/-) = (1 + bv(u1; +/-eps1), 1 + bv(u2; +/-eps2)),  T_(+/-) = 1 + bv(T; +/-eps3),
/// then boundary dofs overwritten with the wall data. `params` must have J = 2.
EnsembleState benchmark_initial_conditions(const ProblemParams& params, const Discretization& disc,
                                           const BredVectorConfig& config, double dt,
                                           std::vector<BredVector>* bred_vectors = nullptr);

}  // namespace ensnc
