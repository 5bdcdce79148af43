#include "llbar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "llbar/errors.hpp"
#include "llbar/event_io.hpp"
#include "llbar/kinematics.hpp"
#include "llbar/quadrature.hpp"
#include "llbar/rng.hpp"

namespace llbar {

namespace {

constexpr double kPi3 = kPi * kPi * kPi;

CheckResult make(std::string name, double dev, double tol, std::string note = {}) {
  return {std::move(name), dev <= tol, dev, tol, std::move(note)};
}

// Second power of a in the closed forms, or the first power when the
// linear-a fault is injected.
double a_power(const VerifyOptions& o) {
  const double a = o.a.value();
  return o.fault == Fault::kLinearA ? a : a * a;
}

double closed_amplitude(int sz, const VerifyOptions& o) {
  return (sz == 0 ? 8.0 : 6.0) * a_power(o) / (5.0 * kPi3);
}

double fold_deviation(const JointPhiPdf& pdf, double amplitude, std::size_t n_quad) {
  double dev = 0.0;
  for (double alpha : alpha_grid()) {
    const double w = fold_alpha_pdf(pdf, alpha, n_quad);
    dev = std::max(dev, std::abs(w - (1.0 / kPi + amplitude * std::cos(alpha))));
  }
  return dev;
}

CheckResult check_clebsch_gordan() {
  double dev = 0.0;
  // Orthogonality for 2 (x) 1 over every J, J' in {1, 2, 3}.
  for (int J = 1; J <= 3; ++J) {
    for (int Jp = 1; Jp <= 3; ++Jp) {
      for (int M = -std::min(J, Jp); M <= std::min(J, Jp); ++M) {
        double sum = 0.0;
        for (int m1 = -2; m1 <= 2; ++m1) {
          const int m2 = M - m1;
          if (std::abs(m2) > 1) continue;
          sum += clebsch_gordan(2, m1, 1, m2, J, M) * clebsch_gordan(2, m1, 1, m2, Jp, M);
        }
        dev = std::max(dev, std::abs(sum - (J == Jp ? 1.0 : 0.0)));
      }
    }
  }
  // The D-wave components of |1, +1>.
  dev = std::max(dev, std::abs(clebsch_gordan(2, 2, 1, -1, 1, 1) - std::sqrt(0.6)));
  dev = std::max(dev, std::abs(clebsch_gordan(2, 1, 1, 0, 1, 1) + std::sqrt(0.3)));
  dev = std::max(dev, std::abs(clebsch_gordan(2, 0, 1, 1, 1, 1) - std::sqrt(0.1)));
  dev = std::max(dev, std::abs(clebsch_gordan(0.5, 0.5, 0.5, -0.5, 1, 0) - std::sqrt(0.5)));
  return make("clebsch_gordan", dev, 1e-14);
}

CheckResult check_density() {
  Matrix4c expected = Matrix4c::Zero();
  expected(0, 0) = 0.15;
  expected(1, 1) = 0.1;
  expected(2, 2) = 0.6;
  expected(3, 3) = 0.15;
  expected(0, 3) = expected(3, 0) = 0.15;
  const double dev = (dwave_joint_density(+1).matrix() - expected).cwiseAbs().maxCoeff();
  return make("density_sz_plus1", dev, 1e-14);
}

CheckResult check_multipoles() {
  const MultipoleSet derived = multipole_from_density(dwave_joint_density(+1));
  const MultipoleSet table = tabulated_multipoles();
  double dev = 0.0;
  double worst_transverse = 0.0;
  int reproduced = 0;
  for (int l1 = 0; l1 <= 1; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      for (int l2 = 0; l2 <= 1; ++l2) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          const double d = std::abs(derived.at(l1, m1, l2, m2) - table.at(l1, m1, l2, m2));
          // One-particle transverse entries: the reduced states are diagonal,
          // so these vanish for any state built from the triplet populations.
          const bool transverse = (l1 == 0 && m2 != 0) || (l2 == 0 && m1 != 0);
          if (transverse) {
            worst_transverse = std::max(worst_transverse, d);
          } else {
            dev = std::max(dev, d);
            ++reproduced;
          }
        }
      }
    }
  }
  const std::string note = std::to_string(reproduced) + " entries compared; 4 one-particle transverse entries differ by " +
         format_real(worst_transverse) + " (reduced density matrices are diagonal)";
  return make("multipole_table", dev, 1e-14, note);
}

CheckResult check_phi_pdf_normalization(const VerifyOptions& o) {
  const GaussLegendreRule rule = composite_gauss_legendre(o.quad_depth / 16, 16, 0.0, kTwoPi);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      sum += rule.weights[i] * rule.weights[j] * qm_phi_pdf(rule.nodes[i], rule.nodes[j], o.a);
    }
  }
  return make("phi_pdf_normalization", std::abs(sum - 1.0), 1e-12);
}

CheckResult check_density_normalization(const VerifyOptions& o) {
  double dev = 0.0;
  for (int sz = -1; sz <= 1; ++sz) {
    const QmAngularDensity density(sz, o.a, PolarMeasure::kPolarAngle, o.quad_depth);
    const AzimuthalDensity marginal = azimuthal_marginal(density, o.quad_depth);
    dev = std::max(dev, std::abs(marginal.coefficient(0, 0).real() * 4.0 * kPi * kPi - 1.0));
    // Independent of the factorized rule: direct 4-D product quadrature.
    if (sz == 1) {
      const GaussLegendreRule th = gauss_legendre(24, 0.0, kPi);
      const std::size_t nphi = 8;
      double sum = 0.0;
      for (std::size_t a = 0; a < th.nodes.size(); ++a) {
        for (std::size_t b = 0; b < th.nodes.size(); ++b) {
          for (std::size_t i = 0; i < nphi; ++i) {
            for (std::size_t j = 0; j < nphi; ++j) {
              const double p1 = kTwoPi * static_cast<double>(i) / nphi;
              const double p2 = kTwoPi * static_cast<double>(j) / nphi;
              sum += th.weights[a] * th.weights[b] * density(std::cos(th.nodes[a]), p1,
                                                              std::cos(th.nodes[b]), p2);
            }
          }
        }
      }
      sum *= (kTwoPi / nphi) * (kTwoPi / nphi);
      dev = std::max(dev, std::abs(sum - 1.0));
    }
  }
  return make("angular_density_normalization", dev, 1e-12);
}

CheckResult check_table_marginal(const VerifyOptions& o) {
  const QmAngularDensity density(tabulated_multipoles(), o.a, PolarMeasure::kPolarAngle,
                                 o.quad_depth);
  const AzimuthalDensity marginal = azimuthal_marginal(density, o.quad_depth);
  AzimuthalDensity closed = closed_form_phi_density(o.a);
  if (o.fault == Fault::kLinearA) {
    auto c = std::array<std::array<Complex, 3>, 3>{};
    for (int m1 = -1; m1 <= 1; ++m1)
      for (int m2 = -1; m2 <= 1; ++m2) c[m1 + 1][m2 + 1] = closed.coefficient(m1, m2);
    c[2][2] = c[0][0] = 3.0 * a_power(o) / (20.0 * kPi3 * kPi);
    closed = AzimuthalDensity(c);
  }
  double dev = 0.0;
  for (int m1 = -1; m1 <= 1; ++m1)
    for (int m2 = -1; m2 <= 1; ++m2)
      dev = std::max(dev, std::abs(marginal.coefficient(m1, m2) - closed.coefficient(m1, m2)));
  return make("table_marginal_vs_closed_phi_pdf", dev, 1e-12);
}

CheckResult check_closed_phi_fold(const VerifyOptions& o) {
  const JointPhiPdf pdf = [&](double p1, double p2) { return qm_phi_pdf(p1, p2, o.a); };
  return make("fold_closed_phi_pdf_sz1", fold_deviation(pdf, closed_amplitude(1, o), o.quad_depth),
              1e-9);
}

CheckResult check_derived_fold(int sz, const VerifyOptions& o) {
  const QmAngularDensity density(sz, o.a, PolarMeasure::kPolarAngle, o.quad_depth);
  const AzimuthalDensity marginal = azimuthal_marginal(density, o.quad_depth);
  const JointPhiPdf pdf = [&](double p1, double p2) { return marginal(p1, p2); };
  const std::string name = "fold_derived_sz" + std::string(sz < 0 ? "m" : "") + std::to_string(std::abs(sz));
  return make(name, fold_deviation(pdf, closed_amplitude(sz, o), o.quad_depth), 1e-9);
}

CheckResult check_mixture(const VerifyOptions& o) {
  std::array<AzimuthalDensity, 3> marginals;
  for (int sz = -1; sz <= 1; ++sz) {
    marginals[sz + 1] = azimuthal_marginal(
        QmAngularDensity(sz, o.a, PolarMeasure::kPolarAngle, o.quad_depth), o.quad_depth);
  }
  const JointPhiPdf pdf = [&](double p1, double p2) {
    return (marginals[0](p1, p2) + marginals[1](p1, p2) + marginals[2](p1, p2)) / 3.0;
  };
  const double closed = 4.0 * a_power(o) / (3.0 * kPi3);
  double dev = fold_deviation(pdf, closed, o.quad_depth);
  dev = std::max(dev, std::abs(qm_alpha_pdf(o.a).amplitude() - closed));
  return make("fold_unpolarized_mixture", dev, 1e-9,
              "A = " + format_real(qm_alpha_pdf(o.a).amplitude()));
}

CheckResult check_hvt_uniform(const VerifyOptions& o) {
  double dev = 0.0;
  for (double pol : {1.0, 0.5}) {
    for (double alpha : alpha_grid(21)) {
      dev = std::max(dev, std::abs(hvt_alpha_density(alpha, o.a, pol, o.quad_depth) - 1.0 / kPi));
    }
  }
  return make("hvt_fold_uniform", dev, 1e-9);
}

CheckResult check_alpha_pdf() {
  double dev = 0.0;
  const GaussLegendreRule rule = gauss_legendre(32, 0.0, kPi);
  for (double amp : {0.0, 4.0 * 0.642 * 0.642 / (3.0 * kPi3), 1.0 / kPi, -1.0 / kPi}) {
    const AlphaPdf pdf(amp);
    dev = std::max(dev, std::abs(integrate(rule, [&](double x) { return pdf.density(x); }) - 1.0));
    dev = std::max(dev, std::abs(pdf.cdf(kPi) - 1.0));
    dev = std::max(dev, std::abs(pdf.cdf(0.0)));
  }
  return make("alpha_pdf_normalization", dev, 1e-13);
}

CheckResult check_lab_kinematics(const VerifyOptions& o) {
  double dev = 0.0;
  RngStream rng(20240601, 0);
  for (int i = 0; i < 1000; ++i) {
    Event e;
    e.cos_theta_lambda = 2.0 * rng.uniform() - 1.0;
    if (std::abs(e.cos_theta_lambda) > 0.999) continue;
    e.phi_lambda = kTwoPi * rng.uniform();
    e.cos_theta_m = 2.0 * rng.uniform() - 1.0;
    e.phi_m = kTwoPi * rng.uniform();
    e.cos_theta_p = 2.0 * rng.uniform() - 1.0;
    e.phi_p = kTwoPi * rng.uniform();
    e.alpha = fold_alpha_angles(e.phi_m, e.phi_p);
    const double s_m = 1.0 - e.cos_theta_m * e.cos_theta_m;
    const double s_p = 1.0 - e.cos_theta_p * e.cos_theta_p;
    if (s_m < 1e-6 || s_p < 1e-6) continue;
    const LabEvent lab = build_lab_event(e, o.masses);
    const Vec3 p_lambda = lab.proton.p + lab.pi_minus.p;
    dev = std::max(dev, std::abs(decay_plane_alpha(p_lambda, lab.pi_minus.p, lab.pi_plus.p) -
                                 e.alpha));
  }
  return make("lab_frame_alpha", dev, 1e-9);
}

}  // namespace

MultipoleSet tabulated_multipoles() {
  const double r3 = std::sqrt(3.0) / 6.0;
  const double r6 = std::sqrt(6.0) / 20.0;
  MultipoleSet t;
  t.set(0, 0, 0, 0, 1.0);
  t.set(1, 0, 0, 0, -r3);
  t.set(1, 1, 0, 0, -r6);
  t.set(1, -1, 0, 0, r6);
  t.set(0, 0, 1, 0, r3);
  t.set(1, 0, 1, 0, -2.0 / 15.0);
  t.set(0, 0, 1, 1, -r6);
  t.set(1, 1, 1, 1, 0.1);
  t.set(0, 0, 1, -1, r6);
  t.set(1, -1, 1, -1, 0.1);
  return t;
}

std::vector<double> alpha_grid(std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = kPi * static_cast<double>(k) / static_cast<double>(n - 1);
  g.back() = kPi;
  return g;
}

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  if (opts.quad_depth < 64 || opts.quad_depth % 16 != 0) {
    throw DomainError("quad-depth must be a multiple of 16 and at least 64");
  }
  std::vector<CheckResult> out;
  out.push_back(check_clebsch_gordan());
  out.push_back(check_density());
  out.push_back(check_multipoles());
  out.push_back(check_phi_pdf_normalization(opts));
  out.push_back(check_density_normalization(opts));
  out.push_back(check_table_marginal(opts));
  out.push_back(check_closed_phi_fold(opts));
  for (int sz : {1, 0, -1}) out.push_back(check_derived_fold(sz, opts));
  out.push_back(check_mixture(opts));
  out.push_back(check_hvt_uniform(opts));
  out.push_back(check_alpha_pdf());
  out.push_back(check_lab_kinematics(opts));
  return out;
}

void print_checks(std::ostream& out, const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.name << " max_dev=" << format_real(c.max_dev)
        << " tol=" << format_real(c.tol);
    if (!c.note.empty()) out << " note=\"" << c.note << '"';
    out << '\n';
  }
}

}  // namespace llbar
