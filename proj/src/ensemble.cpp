#include "ensnc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ensnc {

void ProblemParams::validate() const {
  if (!(prandtl > 0.0)) throw std::invalid_argument("ProblemParams: Pr must be positive");
  if (!(rayleigh >= 0.0)) throw std::invalid_argument("ProblemParams: Ra must be non-negative");
  if (std::abs(std::hypot(xi[0], xi[1]) - 1.0) > 1e-12) {
    throw std::invalid_argument("ProblemParams: xi must be a unit vector");
  }
  if (members < 1) throw std::invalid_argument("ProblemParams: ensemble size must be >= 1");
}

MeanAndFluctuations mean_and_fluctuations(const EnsembleState& state) {
  if (state.members.empty()) throw std::invalid_argument("mean_and_fluctuations: empty ensemble");
  if (state.levels < 2) throw std::invalid_argument("mean_and_fluctuations: needs two time levels");
  const int j = state.size();
  std::vector<Eigen::VectorXd> extrapolated;
  extrapolated.reserve(j);
  for (const auto& m : state.members) extrapolated.push_back(2.0 * m.u_curr - m.u_prev);
  MeanAndFluctuations out;
  out.mean = Eigen::VectorXd::Zero(extrapolated.front().size());
  for (const auto& e : extrapolated) out.mean += e;
  out.mean /= static_cast<double>(j);
  out.fluctuations.reserve(j);
  for (const auto& e : extrapolated) out.fluctuations.push_back(e - out.mean);
  return out;
}

CflCheck cfl_ok(double dt, double h, std::span<const Eigen::VectorXd> fluctuations,
                const CsrMatrix& stiffness, const CflConfig& config) {
  if (!(h > 0.0)) throw std::invalid_argument("cfl_ok: mesh size must be positive");
  double worst = 0.0;
  for (const auto& f : fluctuations) worst = std::max(worst, f.dot(stiffness.multiply(f)));
  CflCheck out;
  out.value = config.c_dagger * dt / h * worst;
  out.ok = !config.enabled || out.value <= 1.0;
  return out;
}

}  // namespace ensnc
