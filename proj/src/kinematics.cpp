#include "llbar/kinematics.hpp"

#include <algorithm>
#include <string>

#include "llbar/errors.hpp"

namespace llbar {

Vec3 unit(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0)) {
    throw ZeroVector("cannot normalize a zero vector");
  }
  return a * (1.0 / n);
}

double wrap_two_pi(double phi) {
  double w = std::fmod(phi, kTwoPi);
  if (w < 0.0) {
    w += kTwoPi;
  }
  // fmod of a tiny negative number plus 2pi can round up to 2pi itself.
  if (w >= kTwoPi) {
    w = 0.0;
  }
  return w;
}

Frame helicity_frame(const Vec3& p_dir, const Vec3& z_ref) {
  const Vec3 j = cross(z_ref, p_dir);
  const double jn = norm(j);
  if (jn <= 1e-12) {
    throw DegenerateFrame("momentum is collinear with the reference axis; azimuth undefined");
  }
  Frame f;
  f.k_hat = p_dir;
  f.j_hat = j * (1.0 / jn);
  f.i_hat = cross(f.j_hat, f.k_hat);
  return f;
}

Frame conjugate_frame(const Frame& f) { return {f.i_hat, -f.j_hat, -f.k_hat}; }

Angles angles_in_frame(const Vec3& p, const Frame& f) {
  const Vec3 u = unit(p);
  const double c = std::clamp(dot(u, f.k_hat), -1.0, 1.0);
  return {c, wrap_two_pi(std::atan2(dot(u, f.j_hat), dot(u, f.i_hat)))};
}

Vec3 direction_from_angles(double cos_theta, double phi, const Frame& f) {
  if (!(std::abs(cos_theta) <= 1.0)) {
    throw DomainError("cos(theta) outside [-1, 1]: " + std::to_string(cos_theta));
  }
  const double s = std::sqrt((1.0 - cos_theta) * (1.0 + cos_theta));
  return f.i_hat * (s * std::cos(phi)) + f.j_hat * (s * std::sin(phi)) + f.k_hat * cos_theta;
}

std::string_view to_string(Model m) { return m == Model::kQm ? "qm" : "hvt"; }

Model parse_model(std::string_view s) {
  if (s == "qm") return Model::kQm;
  if (s == "hvt") return Model::kHvt;
  throw DomainError("unknown model '" + std::string(s) + "' (expected qm or hvt)");
}

double two_body_momentum(double m, double m1, double m2) {
  const double sp = m * m - (m1 + m2) * (m1 + m2);
  const double sm = m * m - (m1 - m2) * (m1 - m2);
  if (sp < 0.0) {
    throw DomainError("decay below threshold");
  }
  return std::sqrt(sp * sm) / (2.0 * m);
}

FourVector boost(const FourVector& v, const Vec3& beta) {
  const double b2 = dot(beta, beta);
  if (b2 == 0.0) {
    return v;
  }
  if (!(b2 < 1.0)) {
    throw DomainError("boost velocity must satisfy |beta| < 1");
  }
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  const double bp = dot(beta, v.p);
  const double coef = (gamma - 1.0) * bp / b2 + gamma * v.e;
  return {gamma * (v.e + bp), v.p + beta * coef};
}

namespace {

// Daughter pair of a Lambda-type decay, built in the parent rest frame and
// boosted by `beta`. `dir` is the meson direction in the rest frame.
std::pair<FourVector, FourVector> decay_pair(const Vec3& dir, double q, const Vec3& beta,
                                             const ParticleMasses& m) {
  const FourVector meson{std::sqrt(q * q + m.pion * m.pion), dir * q};
  const FourVector baryon{std::sqrt(q * q + m.proton * m.proton), dir * (-q)};
  return {boost(baryon, beta), boost(meson, beta)};
}

}  // namespace

LabEvent build_lab_event(const Event& e, const ParticleMasses& masses) {
  const double st =
      std::sqrt((1.0 - e.cos_theta_lambda) * (1.0 + e.cos_theta_lambda));
  const Vec3 lambda_dir{st * std::cos(e.phi_lambda), st * std::sin(e.phi_lambda),
                        e.cos_theta_lambda};
  const Frame f_lambda = helicity_frame(lambda_dir, {0.0, 0.0, 1.0});
  const Frame f_lambdabar = conjugate_frame(f_lambda);

  const double p_star = two_body_momentum(masses.jpsi, masses.lambda, masses.lambda);
  const double e_lambda = 0.5 * masses.jpsi;
  const Vec3 beta = lambda_dir * (p_star / e_lambda);
  const double q = two_body_momentum(masses.lambda, masses.proton, masses.pion);

  const auto [proton, pim] =
      decay_pair(direction_from_angles(e.cos_theta_m, e.phi_m, f_lambda), q, beta, masses);
  const auto [antiproton, pip] = decay_pair(
      direction_from_angles(e.cos_theta_p, e.phi_p, f_lambdabar), q, -beta, masses);
  return {proton, pim, antiproton, pip};
}

double decay_plane_alpha(const Vec3& p_lambda_dir, const Vec3& p_pim, const Vec3& p_pip) {
  const Vec3 n1 = cross(p_lambda_dir, p_pim);
  const Vec3 n2 = cross(p_lambda_dir, p_pip);
  const double l1 = norm(n1);
  const double l2 = norm(n2);
  if (l1 < 1e-12 || l2 < 1e-12) {
    throw DegeneratePlane("pion momentum collinear with the Lambda axis");
  }
  const Vec3 u1 = n1 * (1.0 / l1);
  const Vec3 u2 = n2 * (1.0 / l2);
  return std::atan2(norm(cross(u1, u2)), std::clamp(dot(u1, u2), -1.0, 1.0));
}

}  // namespace llbar
