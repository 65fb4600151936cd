#include <gtest/gtest.h>

#include "ensnc/quadrature.hpp"
#include "support/oracles.hpp"

namespace ensnc {
namespace {

TEST(Quadrature, TriangleRulesIntegrateMonomialsExactly) {
  for (int degree : {1, 2, 6}) {
    const QuadratureRule& rule = triangle_rule(degree);
    double weight_sum = 0.0;
    for (double w : rule.weights) weight_sum += w;
    EXPECT_NEAR(weight_sum, 0.5, 1e-15);
    for (int a = 0; a <= rule.degree; ++a) {
      for (int b = 0; a + b <= rule.degree; ++b) {
        double sum = 0.0;
        for (std::size_t q = 0; q < rule.weights.size(); ++q) {
          const double s = rule.points[q][1], t = rule.points[q][2];
          sum += rule.weights[q] * std::pow(s, a) * std::pow(t, b);
        }
        EXPECT_NEAR(sum, testing::reference_monomial_integral(a, b), 1e-14)
            << "degree " << degree << " monomial x^" << a << " y^" << b;
      }
    }
  }
}

TEST(Quadrature, DegreeSixRuleIsNotExactForDegreeSeven) {
  const QuadratureRule& rule = triangle_rule(6);
  double worst = 0.0;
  for (int a = 0; a <= 7; ++a) {
    const int b = 7 - a;
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      sum += rule.weights[q] * std::pow(rule.points[q][1], a) * std::pow(rule.points[q][2], b);
    }
    worst = std::max(worst, std::abs(sum - testing::reference_monomial_integral(a, b)));
  }
  EXPECT_GT(worst, 1e-8);
}

TEST(Quadrature, IntermediateDegreesRoundUp) {
  EXPECT_GE(triangle_rule(4).degree, 4);
  EXPECT_THROW(triangle_rule(7), std::invalid_argument);
  EXPECT_EQ(triangle_rule(0).degree, 1);
}

TEST(Quadrature, GaussLineRules) {
  for (int n = 1; n <= 5; ++n) {
    const LineRule& rule = gauss_line_rule(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double sum = 0.0;
      for (std::size_t q = 0; q < rule.points.size(); ++q) sum += rule.weights[q] * std::pow(rule.points[q], k);
      EXPECT_NEAR(sum, 1.0 / (k + 1), 1e-15) << n << " points, degree " << k;
    }
  }
  EXPECT_THROW(gauss_line_rule(0), std::invalid_argument);
}

}  // namespace
}  // namespace ensnc
