#pragma once

#include <array>
#include <vector>

namespace ensnc {

/// Quadrature on the reference triangle {(s,t): s,t >= 0, s+t <= 1}.
/// Points are barycentric (l0, l1, l2) with reference coordinates s = l1, t = l2;
/// weights sum to the reference area 1/2.
struct QuadratureRule {
  int degree = 0;
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

/// Symmetric rule exact for total degree <= `degree`. Degrees 1, 2 and 6 are
/// available; other requests are rounded up to the next available rule.
const QuadratureRule& triangle_rule(int degree);

/// Gauss-Legendre rule on [0, 1].
struct LineRule {
  std::vector<double> points;
  std::vector<double> weights;
};

/// n in {1, 2, 3, 4, 5}; weights sum to 1.
const LineRule& gauss_line_rule(int n);

}  // namespace ensnc
