#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <span>
#include <vector>

#include "ensnc/discretization.hpp"
#include "ensnc/ensemble.hpp"
#include "ensnc/fe_space.hpp"
#include "ensnc/mms.hpp"

namespace ensnc {

struct WallSample {
  double y = 0.0;
  double value = 0.0;
};

/// Local Nusselt number, the heat flux -dT/dx across the hot or cold wall
/// (positive for heat flowing from the hot to the cold wall), from the
/// one-sided P2 gradient of the wall-adjacent element at three Gauss points
/// per wall edge, ordered by y.
std::vector<WallSample> nusselt_local(const FeSpace& temperature, const Eigen::VectorXd& T, BoundaryTag wall);

/// Integral of the local Nusselt number over the hot wall x = 0 (three-point
/// Gauss rule per edge, exact for the linear trace of a P2 gradient).
double nusselt_avg(const FeSpace& temperature, const Eigen::VectorXd& T);

enum class MidLine {
  VerticalCentre,    // x = 0.5
  HorizontalCentre,  // y = 0.5
};

struct LineMax {
  double value = 0.0;
  Point location;
};

/// Maximum of one velocity component sampled at `samples` equispaced points
/// (end points included) along a centre line of the cavity.
LineMax midline_max(const FeSpace& velocity, const Eigen::VectorXd& u, int component, MidLine line,
                    int samples = 1025);

/// Errors of one time level against an exact solution: L2 norms of u, T, p
/// and L2 norms of grad u, grad T (quadrature of degree 6 per cell).
struct LevelErrors {
  double t = 0.0;
  double u_l2 = 0.0;
  double u_grad = 0.0;
  double T_l2 = 0.0;
  double T_grad = 0.0;
  double p_l2 = 0.0;
};

LevelErrors level_errors(const Discretization& disc, const Eigen::VectorXd& u, const Eigen::VectorXd& T,
                         const Eigen::VectorXd& p, const ExactSolution& exact, double t);

/// Space-time norms of an error history with a uniform step dt:
///   |||v|||_{inf,0} = max_n ||v^n||,  |||v|||_{2,0} = (dt sum_{n=0}^{N} ||v^n||^2)^{1/2}.
struct ErrorNorms {
  double u_linf_l2 = 0.0;
  double u_l2_grad = 0.0;
  double T_linf_l2 = 0.0;
  double T_l2_grad = 0.0;
  double p_l2_l2 = 0.0;
};

class ErrorHistory {
 public:
  explicit ErrorHistory(double dt);

  void record(const LevelErrors& e) { levels_.push_back(e); }
  std::span<const LevelErrors> levels() const { return levels_; }
  double dt() const { return dt_; }
  /// Time of the last recorded level (0 if empty).
  double t_final() const { return levels_.empty() ? 0.0 : levels_.back().t; }
  ErrorNorms norms() const;

 private:
  double dt_;
  std::vector<LevelErrors> levels_;
};

/// log2(e1 / e2) / log2(dt1 / dt2). Throws UndefinedRateError for
/// non-positive arguments or dt1 == dt2.
double convergence_rate(double e1, double e2, double dt1, double dt2);

/// Member average of the current level of every field (u, T, p).
MemberState ensemble_average(const EnsembleState& state);

/// ||u^n||^2 + ||2u^n - u^{n-1}||^2 + (||T^n||^2 + ||2T^n - T^{n-1}||^2) / 2, the
/// quantity bounded by the stability estimate for one member.
double discrete_energy(const Discretization& disc, const MemberState& member);

/// CSV with columns y,nu_local.
void write_wall_profile_csv(std::ostream& out, std::span<const WallSample> profile);

}  // namespace ensnc
