#include "ensnc/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ensnc {

namespace {

void add_orbit3(QuadratureRule& rule, double w, double a) {
  const double b = 1.0 - 2.0 * a;
  rule.points.push_back({b, a, a});
  rule.points.push_back({a, b, a});
  rule.points.push_back({a, a, b});
  for (int k = 0; k < 3; ++k) rule.weights.push_back(0.5 * w);
}

void add_orbit6(QuadratureRule& rule, double w, double a, double b) {
  const double c = 1.0 - a - b;
  rule.points.push_back({a, b, c});
  rule.points.push_back({a, c, b});
  rule.points.push_back({b, a, c});
  rule.points.push_back({b, c, a});
  rule.points.push_back({c, a, b});
  rule.points.push_back({c, b, a});
  for (int k = 0; k < 6; ++k) rule.weights.push_back(0.5 * w);
}

QuadratureRule make_degree1() {
  QuadratureRule r;
  r.degree = 1;
  r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  r.weights.push_back(0.5);
  return r;
}

QuadratureRule make_degree2() {
  QuadratureRule r;
  r.degree = 2;
  add_orbit3(r, 1.0 / 3.0, 1.0 / 6.0);
  return r;
}

// Dunavant's 12-point rule; abscissae refined to full double precision by
// solving the moment equations in extended precision.
QuadratureRule make_degree6() {
  QuadratureRule r;
  r.degree = 6;
  add_orbit3(r, 0.1167862757263793660253, 0.2492867451709104212916);
  add_orbit3(r, 0.05084490637020681692094, 0.06308901449150222834033);
  add_orbit6(r, 0.08285107561837357519355, 0.05314504984481694735325, 0.3103524510337844054166);
  return r;
}

LineRule make_gauss(int n) {
  LineRule r;
  std::vector<double> x, w;
  switch (n) {
    case 1:
      x = {0.0};
      w = {2.0};
      break;
    case 2:
      x = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
      w = {1.0, 1.0};
      break;
    case 3:
      x = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
      w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    case 4: {
      const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      x = {-b, -a, a, b};
      w = {wb, wa, wa, wb};
      break;
    }
    case 5: {
      const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      x = {-b, -a, 0.0, a, b};
      w = {wb, wa, 128.0 / 225.0, wa, wb};
      break;
    }
    default:
      throw std::invalid_argument("gauss_line_rule: unsupported point count " + std::to_string(n));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    r.points.push_back(0.5 * (x[i] + 1.0));
    r.weights.push_back(0.5 * w[i]);
  }
  return r;
}

}  // namespace

const QuadratureRule& triangle_rule(int degree) {
  static const QuadratureRule d1 = make_degree1();
  static const QuadratureRule d2 = make_degree2();
  static const QuadratureRule d6 = make_degree6();
  if (degree <= 1) return d1;
  if (degree == 2) return d2;
  if (degree <= 6) return d6;
  throw std::invalid_argument("triangle_rule: no rule of degree " + std::to_string(degree));
}

const LineRule& gauss_line_rule(int n) {
  static const LineRule rules[5] = {make_gauss(1), make_gauss(2), make_gauss(3), make_gauss(4),
                                    make_gauss(5)};
  if (n < 1 || n > 5) {
    throw std::invalid_argument("gauss_line_rule: unsupported point count " + std::to_string(n));
  }
  return rules[n - 1];
}

}  // namespace ensnc
