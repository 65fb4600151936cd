#pragma once

#include <array>
#include <vector>

#include "ensnc/ensemble.hpp"
#include "ensnc/mesh.hpp"

namespace ensnc {

using Tensor2 = std::array<std::array<double, 2>, 2>;  // g[c][d] = d u_c / d x_d

/// Closed-form velocity, temperature and pressure with the derivatives
/// needed to synthesize forcing: time derivative, gradient and Laplacian.
class ExactSolution {
 public:
  virtual ~ExactSolution() = default;

  virtual std::array<double, 2> u(Point p, double t) const = 0;
  virtual std::array<double, 2> u_t(Point p, double t) const = 0;
  virtual Tensor2 grad_u(Point p, double t) const = 0;
  virtual std::array<double, 2> laplacian_u(Point p, double t) const = 0;

  virtual double T(Point p, double t) const = 0;
  virtual double T_t(Point p, double t) const = 0;
  virtual std::array<double, 2> grad_T(Point p, double t) const = 0;
  virtual double laplacian_T(Point p, double t) const = 0;

  virtual double p(Point p, double t) const = 0;
  virtual std::array<double, 2> grad_p(Point p, double t) const = 0;
};

/// The manufactured solution of the convergence study, with a(t) = 10(1 + t/10):
///
///   u = a(t) (10 X2(x) Y1(y), -10 X1(x) Y2(y))
///   T = u1 + u2 + 1 - x
///   p = a(t) (2x - 1)(2y - 1)
///
/// where X1 = x(x-1)(2x-1) and X2 = x^2 (x-1)^2 (so X2' = 2 X1), and Y1, Y2
/// are the same polynomials in y. The velocity is the curl of the stream
/// function 10 a X2 Y2, hence divergence free, and vanishes on the boundary
/// of the unit square; p has zero mean.
class MmsExact final : public ExactSolution {
 public:
  std::array<double, 2> u(Point p, double t) const override;
  std::array<double, 2> u_t(Point p, double t) const override;
  Tensor2 grad_u(Point p, double t) const override;
  std::array<double, 2> laplacian_u(Point p, double t) const override;

  double T(Point p, double t) const override;
  double T_t(Point p, double t) const override;
  std::array<double, 2> grad_T(Point p, double t) const override;
  double laplacian_T(Point p, double t) const override;

  double p(Point p, double t) const override;
  std::array<double, 2> grad_p(Point p, double t) const override;

  static double amplitude(double t) { return 10.0 * (1.0 + 0.1 * t); }
  static double amplitude_rate(double /*t*/) { return 1.0; }
};

/// Body force and heat source that make the member-scaled solution
/// (1 + eps)(u, T, p) satisfy the strong Boussinesq equations:
///
///   f     = U_t + (U . grad) U - Pr lap U + grad P - Pr Ra xi Theta
///   gamma = Theta_t + U . grad Theta - lap Theta
///
/// with U = (1 + eps) u, Theta = (1 + eps) T, P = (1 + eps) p.
struct MmsForcing {
  std::array<double, 2> f(Point x, double t) const;
  double gamma(Point x, double t) const;

  const ExactSolution* exact = nullptr;
  double prandtl = 1.0;
  double rayleigh = 100.0;
  std::array<double, 2> xi{0.0, 1.0};
  double scale = 1.0;  // 1 + eps
};

MmsForcing mms_forcing(const ExactSolution& exact, double prandtl, double rayleigh, std::array<double, 2> xi,
                       double epsilon);

/// Problem parameters for an ensemble whose member j solves the problem with
/// the exact solution scaled by (1 + epsilons[j]): forcing from mms_forcing,
/// Dirichlet data from the scaled exact traces. `exact` must outlive the
/// returned callbacks.
ProblemParams mms_problem(const ExactSolution& exact, double prandtl, double rayleigh,
                          const std::vector<double>& epsilons);

}  // namespace ensnc
