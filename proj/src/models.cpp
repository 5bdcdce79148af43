#include "llbar/models.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>
#include <string>

#include "llbar/errors.hpp"
#include "llbar/quadrature.hpp"

namespace llbar {

namespace {

constexpr double kPi2 = kPi * kPi;
constexpr double kPi3 = kPi2 * kPi;
constexpr double kPi4 = kPi2 * kPi2;

void check_azimuth(double phi) {
  if (!(phi >= 0.0 && phi < kTwoPi)) {
    throw DomainError("azimuth outside [0, 2pi): " + std::to_string(phi));
  }
}

void check_cos(double c) {
  if (!(c >= -1.0 && c <= 1.0)) {
    throw DomainError("cos(theta) outside [-1, 1]: " + std::to_string(c));
  }
}

// Y_00, Y_1-1, Y_10, Y_11 at (theta, phi) given cos(theta); slot = l*l + m + l.
std::array<Complex, 4> low_harmonics(double c, double phi) {
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  const double y1 = std::sqrt(3.0 / (8.0 * kPi)) * s;
  const Complex e(std::cos(phi), std::sin(phi));
  return {Complex(0.5 / std::sqrt(kPi), 0.0), y1 * std::conj(e),
          Complex(std::sqrt(3.0 / (4.0 * kPi)) * c, 0.0), -y1 * e};
}

constexpr int slot_l(std::size_t s) { return s == 0 ? 0 : 1; }
constexpr int slot_m(std::size_t s) { return s == 0 ? 0 : static_cast<int>(s) - 2; }

// Rule over theta in [0, pi] with abscissae returned as cos(theta). The
// solid-angle measure carries the sin(theta) Jacobian in the weights.
GaussLegendreRule polar_rule(PolarMeasure measure, std::size_t n) {
  GaussLegendreRule rule = gauss_legendre(n, 0.0, kPi);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    if (measure == PolarMeasure::kSolidAngle) rule.weights[k] *= std::sin(rule.nodes[k]);
    rule.nodes[k] = std::cos(rule.nodes[k]);
  }
  return rule;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw DomainError("alpha outside [0, pi]: " + std::to_string(alpha));
  }
}

}  // namespace

AsymmetryParam::AsymmetryParam(double a) : a_(a) {
  if (!(std::abs(a) <= 1.0)) {
    throw DomainError("asymmetry parameter must satisfy |a| <= 1");
  }
}

AlphaPdf::AlphaPdf(double amplitude) : amplitude_(amplitude) {
  if (!(std::abs(amplitude) <= 1.0 / kPi)) {
    throw DomainError("alpha amplitude must satisfy |A| <= 1/pi for a non-negative density");
  }
}

double AlphaPdf::density(double alpha) const {
  check_alpha(alpha);
  return 1.0 / kPi + amplitude_ * std::cos(alpha);
}

double AlphaPdf::cdf(double alpha) const {
  check_alpha(alpha);
  return alpha / kPi + amplitude_ * std::sin(alpha);
}

PolarizationVector::PolarizationVector(const Vec3& p) : p_(p) {
  if (!(norm(p) <= 1.0 + 1e-12)) {
    throw DomainError("polarization magnitude exceeds 1");
  }
}

double fold_alpha_angles(double phi_m, double phi_p) {
  check_azimuth(phi_m);
  check_azimuth(phi_p);
  const double s = phi_m + phi_p;
  if (s <= kPi) return s;
  if (s <= kTwoPi) return kTwoPi - s;
  if (s <= 3.0 * kPi) return s - kTwoPi;
  return 2.0 * kTwoPi - s;
}

double qm_phi_pdf(double phi_m, double phi_p, AsymmetryParam a) {
  check_azimuth(phi_m);
  check_azimuth(phi_p);
  const double av = a.value();
  return 1.0 / (4.0 * kPi2) + 3.0 * av / (20.0 * kPi3) * (std::cos(phi_m) + std::cos(phi_p)) +
         3.0 * av * av / (10.0 * kPi4) * std::cos(phi_m + phi_p);
}

std::string_view to_string(PolarMeasure m) {
  return m == PolarMeasure::kPolarAngle ? "polar" : "solid-angle";
}

PolarMeasure parse_measure(std::string_view s) {
  if (s == "polar") return PolarMeasure::kPolarAngle;
  if (s == "solid-angle") return PolarMeasure::kSolidAngle;
  throw DomainError("unknown measure '" + std::string(s) + "' (expected polar or solid-angle)");
}

QmAngularDensity::QmAngularDensity(int sz, AsymmetryParam a, PolarMeasure measure,
                                   std::size_t n_norm)
    : QmAngularDensity(multipole_from_density(dwave_joint_density(sz)), a, measure, n_norm) {}

QmAngularDensity::QmAngularDensity(const MultipoleSet& multipoles, AsymmetryParam a,
                                   PolarMeasure measure, std::size_t n_norm)
    : t_(multipoles), a_(a.value()), measure_(measure) {
  const std::array<double, 2> c_l{2.0 / kPi, 2.0 * a_ / kPi};
  for (std::size_t s1 = 0; s1 < 4; ++s1) {
    for (std::size_t s2 = 0; s2 < 4; ++s2) {
      w_[s1][s2] = c_l[slot_l(s1)] * c_l[slot_l(s2)] / (4.0 * kPi) *
                   std::conj(t_.at(slot_l(s1), slot_m(s1), slot_l(s2), slot_m(s2)));
    }
  }

  // One-particle integrals of each harmonic over (polar variable, phi).
  const GaussLegendreRule rule = polar_rule(measure_, n_norm);
  std::array<Complex, 4> integral{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    for (std::size_t j = 0; j < n_norm; ++j) {
      const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(n_norm);
      const auto y = low_harmonics(rule.nodes[k], phi);
      for (std::size_t s = 0; s < 4; ++s) {
        integral[s] += rule.weights[k] * (kTwoPi / static_cast<double>(n_norm)) * y[s];
      }
    }
  }
  Complex total = 0.0;
  for (std::size_t s1 = 0; s1 < 4; ++s1)
    for (std::size_t s2 = 0; s2 < 4; ++s2) total += w_[s1][s2] * integral[s1] * integral[s2];
  norm_ = total.real();
  if (!(norm_ > 0.0)) {
    throw DomainError("angular density has non-positive normalization");
  }
}

Complex QmAngularDensity::unnormalized(double cos_th_m, double phi_m, double cos_th_p,
                                       double phi_p) const {
  const auto y1 = low_harmonics(cos_th_m, phi_m);
  const auto y2 = low_harmonics(cos_th_p, phi_p);
  Complex sum = 0.0;
  for (std::size_t s1 = 0; s1 < 4; ++s1) {
    Complex row = 0.0;
    for (std::size_t s2 = 0; s2 < 4; ++s2) row += w_[s1][s2] * y2[s2];
    sum += row * y1[s1];
  }
  return sum;
}

double QmAngularDensity::grid_maximum(
    std::span<const std::pair<double, double>> points) const {
  std::vector<std::array<Complex, 4>> y;
  y.reserve(points.size());
  for (const auto& [c, phi] : points) {
    check_cos(c);
    y.push_back(low_harmonics(c, phi));
  }
  double peak = -std::numeric_limits<double>::infinity();
  for (const auto& y1 : y) {
    std::array<Complex, 4> row{};
    for (std::size_t s2 = 0; s2 < 4; ++s2)
      for (std::size_t s1 = 0; s1 < 4; ++s1) row[s2] += w_[s1][s2] * y1[s1];
    for (const auto& y2 : y) {
      const double f = (row[0] * y2[0] + row[1] * y2[1] + row[2] * y2[2] + row[3] * y2[3]).real();
      peak = std::max(peak, f);
    }
  }
  return peak / norm_;
}

double QmAngularDensity::operator()(double cos_th_m, double phi_m, double cos_th_p,
                                    double phi_p) const {
  check_cos(cos_th_m);
  check_cos(cos_th_p);
  return unnormalized(cos_th_m, phi_m, cos_th_p, phi_p).real() / norm_;
}

double qm_full_pdf(double cos_th_m, double phi_m, double cos_th_p, double phi_p, int sz,
                   AsymmetryParam a, PolarMeasure measure) {
  check_azimuth(phi_m);
  check_azimuth(phi_p);
  return QmAngularDensity(sz, a, measure)(cos_th_m, phi_m, cos_th_p, phi_p);
}

double AzimuthalDensity::operator()(double phi1, double phi2) const {
  Complex sum = 0.0;
  for (int m1 = -1; m1 <= 1; ++m1) {
    for (int m2 = -1; m2 <= 1; ++m2) {
      sum += c_[m1 + 1][m2 + 1] * std::polar(1.0, m1 * phi1 + m2 * phi2);
    }
  }
  return sum.real();
}

double AzimuthalDensity::alpha_amplitude() const {
  // Folding maps c e^{i s} + conj(c) e^{-i s} onto 4pi * 2 Re(c) cos(alpha),
  // and the constant c_00 onto 4pi c_00 (which is 1/pi when normalized).
  return 4.0 * kPi * 2.0 * c_[2][2].real();
}

AzimuthalDensity azimuthal_marginal(const QmAngularDensity& density, std::size_t n_quad) {
  const GaussLegendreRule rule = polar_rule(density.measure(), n_quad);
  std::array<Complex, 4> theta_integral{};
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const auto y = low_harmonics(rule.nodes[k], 0.0);
    for (std::size_t s = 0; s < 4; ++s) theta_integral[s] += rule.weights[k] * y[s];
  }
  std::array<std::array<Complex, 3>, 3> c{};
  for (std::size_t s1 = 0; s1 < 4; ++s1) {
    for (std::size_t s2 = 0; s2 < 4; ++s2) {
      c[slot_m(s1) + 1][slot_m(s2) + 1] +=
          density.weight(s1, s2) * theta_integral[s1] * theta_integral[s2] /
          density.normalization();
    }
  }
  return AzimuthalDensity(c);
}

AzimuthalDensity closed_form_phi_density(AsymmetryParam a) {
  const double av = a.value();
  std::array<std::array<Complex, 3>, 3> c{};
  c[1][1] = 1.0 / (4.0 * kPi2);
  const double single = 3.0 * av / (40.0 * kPi3);
  c[2][1] = c[0][1] = c[1][2] = c[1][0] = single;
  c[2][2] = c[0][0] = 3.0 * av * av / (20.0 * kPi4);
  return AzimuthalDensity(c);
}

double fold_alpha_pdf(const JointPhiPdf& joint_phi_pdf, double alpha, std::size_t n_quad) {
  check_alpha(alpha);
  if (n_quad < 64) {
    throw DomainError("fold_alpha_pdf needs n_quad >= 64");
  }
  constexpr std::size_t kOrder = 16;
  const std::size_t panels = n_quad / kOrder;

  auto branch = [&](double lo, double hi, double s) {
    if (hi <= lo) return 0.0;
    const GaussLegendreRule rule = composite_gauss_legendre(panels, kOrder, lo, hi);
    return integrate(rule, [&](double phi1) { return joint_phi_pdf(phi1, s - phi1); });
  };
  return branch(0.0, alpha, alpha) + branch(0.0, kTwoPi - alpha, kTwoPi - alpha) +
         branch(alpha, kTwoPi, alpha + kTwoPi) + branch(kTwoPi - alpha, kTwoPi, 2.0 * kTwoPi - alpha);
}

double qm_alpha_amplitude(int sz, AsymmetryParam a) {
  const double a2 = a.value() * a.value();
  switch (sz) {
    case -1:
    case 1:
      return 6.0 * a2 / (5.0 * kPi3);
    case 0:
      return 8.0 * a2 / (5.0 * kPi3);
    default:
      throw InvalidQuantumNumbers("J/psi spin projection must be -1, 0 or +1");
  }
}

AlphaPdf qm_alpha_pdf(AsymmetryParam a) {
  return AlphaPdf(4.0 * a.value() * a.value() / (3.0 * kPi3));
}

double hvt_single_pdf(double cos_th, double phi, const PolarizationVector& p, AsymmetryParam a) {
  check_cos(cos_th);
  check_azimuth(phi);
  const double s = std::sqrt((1.0 - cos_th) * (1.0 + cos_th));
  const Vec3 n{s * std::cos(phi), s * std::sin(phi), cos_th};
  return (1.0 + a.value() * dot(p.vec(), n)) / (4.0 * kPi);
}

double hvt_phi_marginal(double phi, const PolarizationVector& p, AsymmetryParam a) {
  const Vec3& v = p.vec();
  return (1.0 + 0.25 * kPi * a.value() * (v.x * std::cos(phi) + v.y * std::sin(phi))) / kTwoPi;
}

double hvt_alpha_density(double alpha, AsymmetryParam a, double pol, std::size_t n_quad,
                         std::size_t n_dir) {
  if (!(pol >= 0.0 && pol <= 1.0)) {
    throw DomainError("polarization magnitude must lie in [0, 1]");
  }
  const GaussLegendreRule cos_rule = gauss_legendre(n_dir, -1.0, 1.0);
  const std::size_t n_phi = 2 * n_dir;
  double sum = 0.0;
  for (std::size_t k = 0; k < cos_rule.nodes.size(); ++k) {
    const double c = cos_rule.nodes[k];
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double psi = kTwoPi * static_cast<double>(j) / static_cast<double>(n_phi);
      const Vec3 dir{s * std::cos(psi), s * std::sin(psi), c};
      const PolarizationVector p_lambda(dir * pol);
      const PolarizationVector p_lambdabar(dir * (-pol));
      const double w = cos_rule.weights[k] * (kTwoPi / static_cast<double>(n_phi)) / (4.0 * kPi);
      sum += w * fold_alpha_pdf(
                     [&](double phi1, double phi2) {
                       return hvt_phi_marginal(phi1, p_lambda, a) *
                              hvt_phi_marginal(phi2, p_lambdabar, a);
                     },
                     alpha, n_quad);
    }
  }
  return sum;
}

AlphaPdf hvt_alpha_pdf() { return AlphaPdf(0.0); }

}  // namespace llbar
