#pragma once

#include <cstddef>
#include <vector>

namespace llbar {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule; nodes from Newton iteration on P_n. Throws DomainError for n < 1.
[[nodiscard]] GaussLegendreRule gauss_legendre(std::size_t n);

/// Rule of `n` nodes on [a, b], as (node, weight) pairs laid out in two vectors.
[[nodiscard]] GaussLegendreRule gauss_legendre(std::size_t n, double a, double b);

/// Composite rule: [a, b] split into `panels` equal panels with an
/// `order`-point rule on each.
[[nodiscard]] GaussLegendreRule composite_gauss_legendre(std::size_t panels, std::size_t order,
                                                         double a, double b);

/// Integrates f over [a, b] with the given n-point rule.
template <typename F>
double integrate(const GaussLegendreRule& rule, F&& f) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) sum += rule.weights[k] * f(rule.nodes[k]);
  return sum;
}

}  // namespace llbar
