#include "llbar/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "llbar/errors.hpp"

namespace llbar {

GaussLegendreRule gauss_legendre(std::size_t n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 2.0);
  if (n == 1) return rule;

  const double nn = static_cast<double>(n);
  // Returns (P_n(x), P_n'(x)).
  auto legendre = [n, nn](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double kk = static_cast<double>(k);
      const double p2 = ((2.0 * kk - 1.0) * x * p1 - (kk - 1.0) * p0) / kk;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, nn * (x * p1 - p0) / (x * x - 1.0)};
  };

  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (nn + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendreRule gauss_legendre(std::size_t n, double a, double b) {
  GaussLegendreRule rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  for (std::size_t k = 0; k < n; ++k) {
    rule.nodes[k] = mid + half * rule.nodes[k];
    rule.weights[k] *= half;
  }
  return rule;
}

GaussLegendreRule composite_gauss_legendre(std::size_t panels, std::size_t order, double a,
                                           double b) {
  if (panels < 1) throw DomainError("composite rule needs at least one panel");
  const GaussLegendreRule base = gauss_legendre(order);
  GaussLegendreRule rule;
  rule.nodes.reserve(panels * order);
  rule.weights.reserve(panels * order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    for (std::size_t k = 0; k < order; ++k) {
      rule.nodes.push_back(lo + 0.5 * h * (base.nodes[k] + 1.0));
      rule.weights.push_back(0.5 * h * base.weights[k]);
    }
  }
  return rule;
}

}  // namespace llbar
