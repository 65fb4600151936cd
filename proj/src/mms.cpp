#include "ensnc/mms.hpp"

#include <stdexcept>

namespace ensnc {

namespace {

// X1 = x(x-1)(2x-1) = 2x^3 - 3x^2 + x, X2 = x^2 (x-1)^2 = x^4 - 2x^3 + x^2.
struct Poly {
  double x1, x1_d, x1_dd;  // X1, X1', X1''
  double x2, x2_d, x2_dd;  // X2, X2' = 2 X1, X2'' = 2 X1'
};

Poly poly(double s) {
  Poly q{};
  q.x1 = s * (s - 1.0) * (2.0 * s - 1.0);
  q.x1_d = 6.0 * s * s - 6.0 * s + 1.0;
  q.x1_dd = 12.0 * s - 6.0;
  q.x2 = s * s * (s - 1.0) * (s - 1.0);
  q.x2_d = 2.0 * q.x1;
  q.x2_dd = 2.0 * q.x1_d;
  return q;
}

}  // namespace

// With c = 10 a(t):
//   u1 = c X2(x) Y1(y)          u2 = -c X1(x) Y2(y)
//   du1/dx = c X2' Y1           du1/dy = c X2 Y1'
//   du2/dx = -c X1' Y2          du2/dy = -c X1 Y2'
//   lap u1 = c (X2'' Y1 + X2 Y1'')
//   lap u2 = -c (X1'' Y2 + X1 Y2'')
// and the time derivative replaces c by 10 a'(t).
std::array<double, 2> MmsExact::u(Point p, double t) const {
  const Poly px = poly(p.x), py = poly(p.y);
  const double c = 10.0 * amplitude(t);
  return {c * px.x2 * py.x1, -c * px.x1 * py.x2};
}

std::array<double, 2> MmsExact::u_t(Point p, double t) const {
  const Poly px = poly(p.x), py = poly(p.y);
  const double c = 10.0 * amplitude_rate(t);
  return {c * px.x2 * py.x1, -c * px.x1 * py.x2};
}

Tensor2 MmsExact::grad_u(Point p, double t) const {
  const Poly px = poly(p.x), py = poly(p.y);
  const double c = 10.0 * amplitude(t);
  Tensor2 g{};
  g[0][0] = c * px.x2_d * py.x1;
  g[0][1] = c * px.x2 * py.x1_d;
  g[1][0] = -c * px.x1_d * py.x2;
  g[1][1] = -c * px.x1 * py.x2_d;
  return g;
}

std::array<double, 2> MmsExact::laplacian_u(Point p, double t) const {
  const Poly px = poly(p.x), py = poly(p.y);
  const double c = 10.0 * amplitude(t);
  return {c * (px.x2_dd * py.x1 + px.x2 * py.x1_dd), -c * (px.x1_dd * py.x2 + px.x1 * py.x2_dd)};
}

// T = u1 + u2 + 1 - x:  T_t = u1_t + u2_t,  grad T = grad u1 + grad u2 - (1, 0),
// lap T = lap u1 + lap u2.
double MmsExact::T(Point p, double t) const {
  const auto v = u(p, t);
  return v[0] + v[1] + 1.0 - p.x;
}

double MmsExact::T_t(Point p, double t) const {
  const auto v = u_t(p, t);
  return v[0] + v[1];
}

std::array<double, 2> MmsExact::grad_T(Point p, double t) const {
  const Tensor2 g = grad_u(p, t);
  return {g[0][0] + g[1][0] - 1.0, g[0][1] + g[1][1]};
}

double MmsExact::laplacian_T(Point p, double t) const {
  const auto l = laplacian_u(p, t);
  return l[0] + l[1];
}

// p = a(t)(2x - 1)(2y - 1),  grad p = a(t) (2(2y - 1), 2(2x - 1)).
double MmsExact::p(Point p, double t) const {
  return amplitude(t) * (2.0 * p.x - 1.0) * (2.0 * p.y - 1.0);
}

std::array<double, 2> MmsExact::grad_p(Point p, double t) const {
  const double a = amplitude(t);
  return {2.0 * a * (2.0 * p.y - 1.0), 2.0 * a * (2.0 * p.x - 1.0)};
}

std::array<double, 2> MmsForcing::f(Point x, double t) const {
  const double s = scale;
  const auto ut = exact->u_t(x, t);
  const auto v = exact->u(x, t);
  const Tensor2 g = exact->grad_u(x, t);
  const auto lap = exact->laplacian_u(x, t);
  const auto gp = exact->grad_p(x, t);
  const double temp = exact->T(x, t);
  std::array<double, 2> out{};
  for (int c = 0; c < 2; ++c) {
    const double convection = v[0] * g[c][0] + v[1] * g[c][1];
    out[c] = s * ut[c] + s * s * convection - prandtl * s * lap[c] + s * gp[c] -
             prandtl * rayleigh * xi[c] * s * temp;
  }
  return out;
}

double MmsForcing::gamma(Point x, double t) const {
  const double s = scale;
  const auto v = exact->u(x, t);
  const auto gt = exact->grad_T(x, t);
  return s * exact->T_t(x, t) + s * s * (v[0] * gt[0] + v[1] * gt[1]) - s * exact->laplacian_T(x, t);
}

MmsForcing mms_forcing(const ExactSolution& exact, double prandtl, double rayleigh, std::array<double, 2> xi,
                       double epsilon) {
  MmsForcing out;
  out.exact = &exact;
  out.prandtl = prandtl;
  out.rayleigh = rayleigh;
  out.xi = xi;
  out.scale = 1.0 + epsilon;
  return out;
}

ProblemParams mms_problem(const ExactSolution& exact, double prandtl, double rayleigh,
                          const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw std::invalid_argument("mms_problem: need at least one member");
  ProblemParams params;
  params.prandtl = prandtl;
  params.rayleigh = rayleigh;
  params.members = static_cast<int>(epsilons.size());
  std::vector<MmsForcing> forcing;
  for (double eps : epsilons) forcing.push_back(mms_forcing(exact, prandtl, rayleigh, params.xi, eps));
  const ExactSolution* ex = &exact;
  params.body_force = [forcing](Point p, double t, int j) { return forcing.at(j).f(p, t); };
  params.heat_source = [forcing](Point p, double t, int j) { return forcing.at(j).gamma(p, t); };
  params.velocity_boundary = [ex, epsilons](Point p, double t, int j) {
    const double s = 1.0 + epsilons.at(j);
    const auto v = ex->u(p, t);
    return std::array<double, 2>{s * v[0], s * v[1]};
  };
  params.temperature_boundary = [ex, epsilons](Point p, double t, int j) {
    return (1.0 + epsilons.at(j)) * ex->T(p, t);
  };
  params.validate();
  return params;
}

}  // namespace ensnc
