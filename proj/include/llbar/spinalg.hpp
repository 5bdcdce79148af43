#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace llbar {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Matrix4c = Eigen::Matrix4cd;

/// Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M> with the Condon-Shortley
/// phase. Arguments are integers or half-integers; anything else, or |m| > j,
/// throws InvalidQuantumNumbers. Returns 0 when M != m1 + m2 or the triangle
/// rule fails.
[[nodiscard]] double clebsch_gordan(double j1, double m1, double j2, double m2, double J,
                                    double M);

/// Two spin-1/2 density matrix over the basis (uu, ud, du, dd). The first
/// arrow is the Lambda spin along k(Lambda), the second the Lambdabar spin
/// along k(Lambdabar).
class JointDensityMatrix {
 public:
  /// Validates hermiticity and unit trace (1e-14) and positivity (-1e-12).
  explicit JointDensityMatrix(const Matrix4c& rho);

  [[nodiscard]] const Matrix4c& matrix() const noexcept { return rho_; }
  [[nodiscard]] Complex operator()(int row, int col) const { return rho_(row, col); }

  /// Reduced state of the Lambda (particle 0) or Lambdabar (particle 1).
  [[nodiscard]] Matrix2c partial_trace(int keep) const;

 private:
  Matrix4c rho_;
};

/// Spin state of the Lambda Lambdabar pair produced through the D wave from
/// a J/psi with spin projection `sz` on the beam axis. The L = 2 orbital
/// state is traced out and the triplet is rewritten in the two helicity
/// bases (Lambdabar side rotated by pi about i-hat).
[[nodiscard]] JointDensityMatrix dwave_joint_density(int sz);

/// Unpolarized mixture: 1/3 of each projection.
[[nodiscard]] JointDensityMatrix unpolarized_dwave_density();

/// Spin-1/2 tensor operators:
///   T^0_0 = 1, T^1_0 = sigma_z / sqrt(3),
///   T^1_{+1} = -(sigma_x + i sigma_y) / sqrt(6),
///   T^1_{-1} = +(sigma_x - i sigma_y) / sqrt(6).
/// With these, t^1_m = Tr(rho T^1_m) gives P_z/sqrt3, -(P_x + iP_y)/sqrt6, ...
[[nodiscard]] Matrix2c tensor_operator(int l, int m);

/// Joint multipole parameters t^{l1,l2}_{m1,m2} for l in {0, 1}. The
/// (l1, m1) pair belongs to the Lambda.
class MultipoleSet {
 public:
  MultipoleSet() = default;

  [[nodiscard]] Complex at(int l1, int m1, int l2, int m2) const;
  void set(int l1, int m1, int l2, int m2, Complex value);

  /// max |t_{-m1,-m2} - (-1)^{m1+m2} conj(t_{m1,m2})| over all entries.
  [[nodiscard]] double hermiticity_residual() const;

 private:
  [[nodiscard]] static std::size_t index(int l1, int m1, int l2, int m2);
  // Per particle the slot s = l * l + (m + l): (0,0)->0, (1,-1)->1, (1,0)->2, (1,1)->3.
  std::array<Complex, 16> t_{};
};

/// t = Tr(rho T^{l1}_{m1} (x) T^{l2}_{m2}).
[[nodiscard]] MultipoleSet multipole_from_density(const JointDensityMatrix& rho);

/// Orthonormal spherical harmonic with Condon-Shortley phase, 0 <= l <= 2.
[[nodiscard]] Complex ylm(int l, int m, double theta, double phi);

/// Transposes the Lambdabar factor.
[[nodiscard]] Matrix4c partial_transpose(const Matrix4c& rho);

/// Sum of |negative eigenvalues| of the partial transpose.
[[nodiscard]] double negativity(const JointDensityMatrix& rho);

}  // namespace llbar
