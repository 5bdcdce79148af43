#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <string_view>

#include "llbar/kinematics.hpp"
#include "llbar/spinalg.hpp"

namespace llbar {

/// Decay asymmetry parameter of Lambda -> p pi-, |a| <= 1.
class AsymmetryParam {
 public:
  explicit AsymmetryParam(double a = kLambdaAsymmetry);
  [[nodiscard]] double value() const noexcept { return a_; }

 private:
  double a_;
};

/// W(alpha) = 1/pi + A cos(alpha) on [0, pi]. Normalized for every A;
/// non-negative requires |A| <= 1/pi, which the constructor enforces.
class AlphaPdf {
 public:
  explicit AlphaPdf(double amplitude);

  [[nodiscard]] double amplitude() const noexcept { return amplitude_; }
  [[nodiscard]] double density(double alpha) const;
  /// Antiderivative alpha/pi + A sin(alpha); cdf(0) = 0, cdf(pi) = 1.
  [[nodiscard]] double cdf(double alpha) const;

 private:
  double amplitude_;
};

class PolarizationVector {
 public:
  explicit PolarizationVector(const Vec3& p = {});
  [[nodiscard]] const Vec3& vec() const noexcept { return p_; }

 private:
  Vec3 p_;
};

/// Folds the azimuth sum s = phi_m + phi_p in [0, 4pi) onto alpha in [0, pi]:
/// s, 2pi - s, s - 2pi, 4pi - s on the four quarter ranges. Throws
/// DomainError unless both angles lie in [0, 2pi).
[[nodiscard]] double fold_alpha_angles(double phi_m, double phi_p);

/// Closed-form joint azimuthal density of the pion pair for J/psi spin
/// projection +-1:
///   1/(4pi^2) + 3a/(20pi^3) (cos phi_m + cos phi_p) + 3a^2/(10pi^4) cos(phi_m + phi_p).
[[nodiscard]] double qm_phi_pdf(double phi_m, double phi_p, AsymmetryParam a);

/// Measure with respect to which the four-angle density is normalized.
/// kPolarAngle: d(theta) d(phi) per particle, theta in [0, pi]. This is the
/// convention under which the expansion constants C_0 = 2/pi, C_1 = 2a/pi
/// normalize the multipole expansion exactly and the closed-form alpha
/// amplitudes 6a^2/(5pi^3), 8a^2/(5pi^3), 4a^2/(3pi^3) follow.
/// kSolidAngle: d(cos theta) d(phi), the isotropic measure.
enum class PolarMeasure { kPolarAngle, kSolidAngle };

[[nodiscard]] std::string_view to_string(PolarMeasure m);
/// Accepts "polar" / "solid-angle".
[[nodiscard]] PolarMeasure parse_measure(std::string_view s);

/// Four-angle decay density of the Lambda Lambdabar pair:
///   (1/4pi) sum C_l1 C_l2 conj(t^{l1 l2}_{m1 m2}) Y_l1m1(1) Y_l2m2(2),
/// with C_0 = 2/pi, C_1 = 2a/pi, divided by its integral over the chosen
/// measure. The normalization is computed once at construction by product
/// quadrature (the density is a sum of products of one-particle terms, so
/// the four-dimensional rule factorizes exactly).
class QmAngularDensity {
 public:
  QmAngularDensity(int sz, AsymmetryParam a, PolarMeasure measure = PolarMeasure::kPolarAngle,
                   std::size_t n_norm = 64);
  QmAngularDensity(const MultipoleSet& multipoles, AsymmetryParam a,
                   PolarMeasure measure = PolarMeasure::kPolarAngle, std::size_t n_norm = 64);

  /// Normalized density at the given angles.
  [[nodiscard]] double operator()(double cos_th_m, double phi_m, double cos_th_p,
                                  double phi_p) const;
  /// The raw multipole sum before normalization; its imaginary part is
  /// rounding noise.
  [[nodiscard]] Complex unnormalized(double cos_th_m, double phi_m, double cos_th_p,
                                     double phi_p) const;

  /// Maximum of the normalized density over all pairs of one-particle
  /// grid points (cos theta, phi).
  [[nodiscard]] double grid_maximum(std::span<const std::pair<double, double>> points) const;

  [[nodiscard]] double normalization() const noexcept { return norm_; }
  [[nodiscard]] PolarMeasure measure() const noexcept { return measure_; }
  [[nodiscard]] const MultipoleSet& multipoles() const noexcept { return t_; }
  [[nodiscard]] double asymmetry() const noexcept { return a_; }

  /// Weight of the (slot1, slot2) product term, slot = l*l + m + l.
  [[nodiscard]] Complex weight(std::size_t slot1, std::size_t slot2) const {
    return w_[slot1][slot2];
  }

 private:
  MultipoleSet t_;
  double a_;
  PolarMeasure measure_;
  std::array<std::array<Complex, 4>, 4> w_{};
  double norm_ = 1.0;
};

/// Convenience wrapper; builds the density each call.
[[nodiscard]] double qm_full_pdf(double cos_th_m, double phi_m, double cos_th_p, double phi_p,
                                 int sz, AsymmetryParam a,
                                 PolarMeasure measure = PolarMeasure::kPolarAngle);

/// W(phi1, phi2) = sum over m1, m2 in {-1, 0, 1} of c_{m1 m2} e^{i(m1 phi1 + m2 phi2)}.
class AzimuthalDensity {
 public:
  AzimuthalDensity() = default;
  explicit AzimuthalDensity(const std::array<std::array<Complex, 3>, 3>& c) : c_(c) {}

  [[nodiscard]] double operator()(double phi1, double phi2) const;
  [[nodiscard]] Complex coefficient(int m1, int m2) const { return c_[m1 + 1][m2 + 1]; }

  /// Coefficient of cos(phi1 + phi2) (for real c_{11}).
  [[nodiscard]] double sum_cos_coefficient() const { return 2.0 * c_[2][2].real(); }
  /// Amplitude A of the folded density 1/pi + A cos(alpha). Single-angle
  /// and difference terms drop out of the fold.
  [[nodiscard]] double alpha_amplitude() const;

 private:
  std::array<std::array<Complex, 3>, 3> c_{};
};

/// Marginal of the four-angle density over both polar angles, using an
/// n_quad-point rule for the one-dimensional polar integrals.
[[nodiscard]] AzimuthalDensity azimuthal_marginal(const QmAngularDensity& density,
                                                  std::size_t n_quad = 256);

/// The closed-form density of qm_phi_pdf as an AzimuthalDensity.
[[nodiscard]] AzimuthalDensity closed_form_phi_density(AsymmetryParam a);

using JointPhiPdf = std::function<double(double, double)>;

/// W(alpha) from a joint azimuthal density by the four-branch folding
/// integral, composite Gauss-Legendre with about n_quad nodes per branch.
[[nodiscard]] double fold_alpha_pdf(const JointPhiPdf& joint_phi_pdf, double alpha,
                                    std::size_t n_quad = 256);

/// Closed-form amplitudes: 6a^2/(5pi^3) for sz = +-1, 8a^2/(5pi^3) for sz = 0.
[[nodiscard]] double qm_alpha_amplitude(int sz, AsymmetryParam a);

/// Unpolarized J/psi: A = 4a^2/(3pi^3) = (1/3)(8a^2/5pi^3) + (2/3)(6a^2/5pi^3).
[[nodiscard]] AlphaPdf qm_alpha_pdf(AsymmetryParam a);

/// Single hyperon decay density (1/4pi)(1 + a P.n) over the solid angle.
[[nodiscard]] double hvt_single_pdf(double cos_th, double phi, const PolarizationVector& p,
                                    AsymmetryParam a);

/// hvt_single_pdf integrated over cos(theta):
/// (1/2pi)(1 + (pi a / 4)(P_x cos phi + P_y sin phi)).
[[nodiscard]] double hvt_phi_marginal(double phi, const PolarizationVector& p, AsymmetryParam a);

/// W(alpha) for independent decays with P_Lambdabar = -P_Lambda (own-frame
/// components), |P| = pol, averaged over isotropic directions of P by an
/// n_dir x 2 n_dir product rule.
[[nodiscard]] double hvt_alpha_density(double alpha, AsymmetryParam a, double pol,
                                       std::size_t n_quad = 256, std::size_t n_dir = 16);

/// Uniform: W(alpha) = 1/pi.
[[nodiscard]] AlphaPdf hvt_alpha_pdf();

}  // namespace llbar
