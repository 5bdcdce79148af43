#include "llbar/spinalg.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "llbar/errors.hpp"

namespace llbar {

namespace {

// Validated 2 * x for an integer or half-integer x.
long twice(double x) {
  const double t = 2.0 * x;
  const long r = std::lround(t);
  if (std::abs(t - static_cast<double>(r)) > 1e-9) {
    throw InvalidQuantumNumbers("not an integer or half-integer: " + std::to_string(x));
  }
  return r;
}

void check_jm(long tj, long tm) {
  if (tj < 0 || std::labs(tm) > tj || (tj - tm) % 2 != 0) {
    throw InvalidQuantumNumbers("invalid (j, m) = (" + std::to_string(tj / 2.0) + ", " +
                                std::to_string(tm / 2.0) + ")");
  }
}

// n! for n given as twice its value; n is a non-negative integer here.
double fact_half(long twice_n) { return std::tgamma(static_cast<double>(twice_n / 2) + 1.0); }

constexpr double kTol = 1e-14;

Matrix4c kron(const Matrix2c& a, const Matrix2c& b) {
  Matrix4c out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

}  // namespace

double clebsch_gordan(double j1, double m1, double j2, double m2, double J, double M) {
  const long a = twice(j1), am = twice(m1);
  const long b = twice(j2), bm = twice(m2);
  const long c = twice(J), cm = twice(M);
  check_jm(a, am);
  check_jm(b, bm);
  check_jm(c, cm);
  if (am + bm != cm) return 0.0;
  if (c < std::labs(a - b) || c > a + b || (a + b + c) % 2 != 0) return 0.0;

  const double pre =
      std::sqrt((c + 1) * fact_half(c + a - b) * fact_half(c - a + b) * fact_half(a + b - c) /
                fact_half(a + b + c + 2));
  const double norm = std::sqrt(fact_half(c + cm) * fact_half(c - cm) * fact_half(a - am) *
                                fact_half(a + am) * fact_half(b - bm) * fact_half(b + bm));
  double sum = 0.0;
  // Racah sum over integer k (all arguments below are twice-values).
  for (long k = 0;; k += 2) {
    const long d1 = a + b - c - k;
    const long d2 = a - am - k;
    const long d3 = b + bm - k;
    const long d4 = c - b + am + k;
    const long d5 = c - a - bm + k;
    if (d1 < 0 || d2 < 0 || d3 < 0) break;
    if (d4 < 0 || d5 < 0) continue;
    const double sign = (k / 2) % 2 == 0 ? 1.0 : -1.0;
    sum += sign / (fact_half(k) * fact_half(d1) * fact_half(d2) * fact_half(d3) *
                   fact_half(d4) * fact_half(d5));
  }
  return pre * norm * sum;
}

JointDensityMatrix::JointDensityMatrix(const Matrix4c& rho) : rho_(rho) {
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kTol) {
    throw DomainError("density matrix is not Hermitian");
  }
  if (std::abs(rho_.trace() - Complex(1.0, 0.0)) > kTol) {
    throw DomainError("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(rho_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

Matrix2c JointDensityMatrix::partial_trace(int keep) const {
  Matrix2c r = Matrix2c::Zero();
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) {
      for (int s = 0; s < 2; ++s) {
        r(x, y) += keep == 0 ? rho_(2 * x + s, 2 * y + s) : rho_(2 * s + x, 2 * s + y);
      }
    }
  }
  return r;
}

JointDensityMatrix dwave_joint_density(int sz) {
  if (sz < -1 || sz > 1) {
    throw InvalidQuantumNumbers("J/psi spin projection must be -1, 0 or +1");
  }
  // Spin-1/2 index 0 is m = +1/2, index 1 is m = -1/2.
  auto half_m = [](int idx) { return idx == 0 ? 0.5 : -0.5; };

  // Triplet |1, ms> in the common-axis product basis.
  auto triplet = [&](int ms) {
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        v(2 * a + b) = clebsch_gordan(0.5, half_m(a), 0.5, half_m(b), 1.0, ms);
      }
    }
    return v;
  };

  // Couple |2, mL> (x) |1, ms> to |1, sz> and trace over mL.
  Matrix4c common = Matrix4c::Zero();
  for (int ml = -2; ml <= 2; ++ml) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    for (int ms = -1; ms <= 1; ++ms) {
      psi += clebsch_gordan(2.0, ml, 1.0, ms, 1.0, sz) * triplet(ms);
    }
    common += psi * psi.adjoint();
  }

  // Lambdabar axes are the Lambda axes rotated by pi about i-hat:
  // R = exp(-i pi sigma_x / 2) = -i sigma_x.
  Matrix2c rot;
  rot << 0.0, Complex(0.0, -1.0), Complex(0.0, -1.0), 0.0;
  Matrix4c u = kron(Matrix2c::Identity(), rot);
  return JointDensityMatrix(u.adjoint() * common * u);
}

JointDensityMatrix unpolarized_dwave_density() {
  Matrix4c sum = Matrix4c::Zero();
  for (int sz = -1; sz <= 1; ++sz) {
    sum += dwave_joint_density(sz).matrix();
  }
  return JointDensityMatrix(sum / 3.0);
}

Matrix2c tensor_operator(int l, int m) {
  const Complex i(0.0, 1.0);
  Matrix2c sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -i, i, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  if (l == 0 && m == 0) return Matrix2c::Identity();
  if (l == 1) {
    if (m == 0) return sz / std::sqrt(3.0);
    if (m == 1) return -(sx + i * sy) / std::sqrt(6.0);
    if (m == -1) return (sx - i * sy) / std::sqrt(6.0);
  }
  throw InvalidQuantumNumbers("spin-1/2 tensor operators exist for l <= 1, |m| <= l");
}

std::size_t MultipoleSet::index(int l1, int m1, int l2, int m2) {
  auto slot = [](int l, int m) {
    if (l < 0 || l > 1 || m < -l || m > l) {
      throw InvalidQuantumNumbers("multipole index out of range");
    }
    return static_cast<std::size_t>(l * l + m + l);
  };
  return 4 * slot(l1, m1) + slot(l2, m2);
}

Complex MultipoleSet::at(int l1, int m1, int l2, int m2) const {
  return t_[index(l1, m1, l2, m2)];
}

void MultipoleSet::set(int l1, int m1, int l2, int m2, Complex value) {
  t_[index(l1, m1, l2, m2)] = value;
}

double MultipoleSet::hermiticity_residual() const {
  double worst = 0.0;
  for (int l1 = 0; l1 <= 1; ++l1)
    for (int l2 = 0; l2 <= 1; ++l2)
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double sign = (m1 + m2) % 2 == 0 ? 1.0 : -1.0;
          worst = std::max(worst, std::abs(at(l1, -m1, l2, -m2) -
                                           sign * std::conj(at(l1, m1, l2, m2))));
        }
  return worst;
}

MultipoleSet multipole_from_density(const JointDensityMatrix& rho) {
  MultipoleSet out;
  for (int l1 = 0; l1 <= 1; ++l1)
    for (int l2 = 0; l2 <= 1; ++l2)
      for (int m1 = -l1; m1 <= l1; ++m1)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const Matrix4c op =
              kron(tensor_operator(l1, m1), tensor_operator(l2, m2));
          out.set(l1, m1, l2, m2, (rho.matrix() * op).trace());
        }
  return out;
}

Complex ylm(int l, int m, double theta, double phi) {
  if (l < 0 || l > 2 || std::abs(m) > l) {
    throw InvalidQuantumNumbers("ylm supports 0 <= l <= 2, |m| <= l");
  }
  constexpr double pi = std::numbers::pi;
  if (m < 0) {
    const double sign = (-m) % 2 == 0 ? 1.0 : -1.0;
    return sign * std::conj(ylm(l, -m, theta, phi));
  }
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Complex e = std::polar(1.0, m * phi);
  switch (l * 10 + m) {
    case 0:
      return {0.5 / std::sqrt(pi), 0.0};
    case 10:
      return {std::sqrt(3.0 / (4.0 * pi)) * c, 0.0};
    case 11:
      return -std::sqrt(3.0 / (8.0 * pi)) * s * e;
    case 20:
      return {std::sqrt(5.0 / (16.0 * pi)) * (3.0 * c * c - 1.0), 0.0};
    case 21:
      return -std::sqrt(15.0 / (8.0 * pi)) * s * c * e;
    default:
      return std::sqrt(15.0 / (32.0 * pi)) * s * s * e;
  }
}

Matrix4c partial_transpose(const Matrix4c& rho) {
  Matrix4c out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          out(2 * a + b, 2 * ap + bp) = rho(2 * a + bp, 2 * ap + b);
        }
  return out;
}

double negativity(const JointDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(partial_transpose(rho.matrix()),
                                             Eigen::EigenvaluesOnly);
  double sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (es.eigenvalues()(k) < 0.0) sum -= es.eigenvalues()(k);
  }
  return sum;
}

}  // namespace llbar
