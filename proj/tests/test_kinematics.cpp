#include <doctest.h>

#include <cmath>

#include "llbar/errors.hpp"
#include "llbar/kinematics.hpp"
#include "llbar/models.hpp"
#include "llbar/rng.hpp"

using namespace llbar;

namespace {

double max_abs(const Vec3& v) { return std::max({std::abs(v.x), std::abs(v.y), std::abs(v.z)}); }

Vec3 random_unit(RngStream& rng) {
  const double c = 2.0 * rng.uniform() - 1.0;
  const double phi = kTwoPi * rng.uniform();
  const double s = std::sqrt(1.0 - c * c);
  return {s * std::cos(phi), s * std::sin(phi), c};
}

void check_orthonormal(const Frame& f) {
  CHECK(std::abs(norm(f.i_hat) - 1.0) < 1e-12);
  CHECK(std::abs(norm(f.j_hat) - 1.0) < 1e-12);
  CHECK(std::abs(norm(f.k_hat) - 1.0) < 1e-12);
  CHECK(std::abs(dot(f.i_hat, f.j_hat)) < 1e-12);
  CHECK(std::abs(dot(f.j_hat, f.k_hat)) < 1e-12);
  CHECK(std::abs(dot(f.i_hat, f.k_hat)) < 1e-12);
  CHECK(max_abs(cross(f.i_hat, f.j_hat) - f.k_hat) < 1e-12);
}

Event random_event(RngStream& rng) {
  Event e;
  e.cos_theta_lambda = 2.0 * rng.uniform() - 1.0;
  e.phi_lambda = kTwoPi * rng.uniform();
  e.cos_theta_m = 2.0 * rng.uniform() - 1.0;
  e.phi_m = kTwoPi * rng.uniform();
  e.cos_theta_p = 2.0 * rng.uniform() - 1.0;
  e.phi_p = kTwoPi * rng.uniform();
  e.alpha = fold_alpha_angles(e.phi_m, e.phi_p);
  return e;
}

}  // namespace

TEST_CASE("helicity frame along x") {
  const Frame f = helicity_frame({1, 0, 0}, {0, 0, 1});
  CHECK(max_abs(f.k_hat - Vec3{1, 0, 0}) < 1e-15);
  CHECK(max_abs(f.j_hat - Vec3{0, 1, 0}) < 1e-15);
  // i = j x k = (0, 1, 0) x (1, 0, 0)
  CHECK(max_abs(f.i_hat - Vec3{0, 0, -1}) < 1e-15);
  CHECK(max_abs(cross(f.i_hat, f.j_hat) - f.k_hat) < 1e-15);
}

TEST_CASE("helicity frame collinear with reference throws") {
  CHECK_THROWS_AS((void)helicity_frame({0, 0, 1}, {0, 0, 1}), DegenerateFrame);
  CHECK_THROWS_AS((void)helicity_frame({0, 0, -1}, {0, 0, 1}), DegenerateFrame);
}

TEST_CASE("random helicity frames are orthonormal and right handed") {
  RngStream rng(11, 0);
  for (int i = 0; i < 10000; ++i) {
    const Vec3 p = random_unit(rng);
    if (1.0 - p.z * p.z < 1e-12) continue;
    const Frame f = helicity_frame(p, {0, 0, 1});
    check_orthonormal(f);
    check_orthonormal(conjugate_frame(f));
  }
}

TEST_CASE("conjugate frame") {
  const Frame f{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}};
  const Frame g = conjugate_frame(f);
  CHECK(g.i_hat == Vec3{0, 0, 1});
  CHECK(g.j_hat == Vec3{0, -1, 0});
  CHECK(g.k_hat == Vec3{-1, 0, 0});
  const Frame h = conjugate_frame(g);
  CHECK(h.i_hat == f.i_hat);
  CHECK(h.j_hat == f.j_hat);
  CHECK(h.k_hat == f.k_hat);
}

TEST_CASE("angles along the frame axes") {
  const Frame f = helicity_frame({1, 0, 0}, {0, 0, 1});
  Angles a = angles_in_frame(f.k_hat, f);
  CHECK(a.cos_theta == doctest::Approx(1.0));
  CHECK(a.phi == doctest::Approx(0.0));
  a = angles_in_frame(f.i_hat * 3.0, f);
  CHECK(a.cos_theta == doctest::Approx(0.0));
  CHECK(a.phi == doctest::Approx(0.0));
  a = angles_in_frame(f.j_hat, f);
  CHECK(a.cos_theta == doctest::Approx(0.0));
  CHECK(a.phi == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS((void)angles_in_frame({0, 0, 0}, f), ZeroVector);
}

TEST_CASE("angles round trip through direction_from_angles") {
  RngStream rng(12, 0);
  for (int i = 0; i < 10000; ++i) {
    const Vec3 p = random_unit(rng);
    if (1.0 - p.z * p.z < 1e-12) continue;
    const Frame f = helicity_frame(p, {0, 0, 1});
    const Vec3 q = random_unit(rng) * (0.5 + rng.uniform());
    const Angles a = angles_in_frame(q, f);
    CHECK(a.phi >= 0.0);
    CHECK(a.phi < kTwoPi);
    CHECK(max_abs(direction_from_angles(a.cos_theta, a.phi, f) - unit(q)) < 1e-12);
  }
  CHECK_THROWS_AS((void)direction_from_angles(1.5, 0.0, Frame{}), DomainError);
}

TEST_CASE("wrap_two_pi") {
  CHECK(wrap_two_pi(-0.5) == doctest::Approx(kTwoPi - 0.5));
  CHECK(wrap_two_pi(kTwoPi) == 0.0);
  CHECK(wrap_two_pi(7.0) == doctest::Approx(7.0 - kTwoPi));
  CHECK(wrap_two_pi(-1e-20) < kTwoPi);
}

TEST_CASE("lab event conserves four momentum and is on shell") {
  RngStream rng(13, 0);
  for (int i = 0; i < 2000; ++i) {
    const Event e = random_event(rng);
    if (1.0 - e.cos_theta_lambda * e.cos_theta_lambda < 1e-12) continue;
    const LabEvent lab = build_lab_event(e);
    const FourVector sum = lab.proton + lab.pi_minus + lab.antiproton + lab.pi_plus;
    CHECK(std::abs(sum.e - kPdgMasses.jpsi) < 1e-9);
    CHECK(max_abs(sum.p) < 1e-9);
    const FourVector lam = lab.proton + lab.pi_minus;
    const FourVector lbar = lab.antiproton + lab.pi_plus;
    CHECK(std::abs(std::sqrt(lam.mass2()) - kPdgMasses.lambda) < 1e-9);
    CHECK(std::abs(std::sqrt(lbar.mass2()) - kPdgMasses.lambda) < 1e-9);
    CHECK(std::abs(std::sqrt(lab.proton.mass2()) - kPdgMasses.proton) < 1e-9);
    CHECK(std::abs(std::sqrt(std::max(0.0, lab.pi_plus.mass2())) - kPdgMasses.pion) < 1e-7);
  }
}

TEST_CASE("boost to the rest frame and back") {
  const FourVector v{5.0, {1.0, -2.0, 0.5}};
  const Vec3 beta{0.3, 0.1, -0.4};
  const FourVector w = boost(boost(v, beta), -beta);
  CHECK(std::abs(w.e - v.e) < 1e-12);
  CHECK(max_abs(w.p - v.p) < 1e-12);
  CHECK_THROWS_AS((void)boost(v, {1.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("two body momentum") {
  const ParticleMasses& m = kPdgMasses;
  const double q = two_body_momentum(m.lambda, m.proton, m.pion);
  CHECK(std::abs(std::hypot(q, m.proton) + std::hypot(q, m.pion) - m.lambda) < 1e-14);
  CHECK(two_body_momentum(2.0, 0.0, 0.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)two_body_momentum(1.0, 0.6, 0.6), DomainError);
}

TEST_CASE("decay plane angle elementary configurations") {
  const Vec3 axis{0, 0, 1};
  CHECK(decay_plane_alpha(axis, {1, 0, 0.3}, {2, 0, -0.7}) == doctest::Approx(0.0));
  CHECK(decay_plane_alpha(axis, {1, 0, 0.3}, {0, 1, 0.2}) == doctest::Approx(kPi / 2));
  CHECK(decay_plane_alpha(axis, {1, 0, 0.3}, {-1, 0, 0.2}) == doctest::Approx(kPi));
  CHECK_THROWS_AS((void)decay_plane_alpha(axis, {0, 0, 2}, {1, 0, 0}), DegeneratePlane);
}

TEST_CASE("decay plane angle of lab events equals the folded azimuth sum") {
  RngStream rng(14, 0);
  int used = 0;
  for (int i = 0; i < 10000; ++i) {
    const Event e = random_event(rng);
    if (1.0 - e.cos_theta_lambda * e.cos_theta_lambda < 1e-12) continue;
    if (1.0 - e.cos_theta_m * e.cos_theta_m < 1e-12 || 1.0 - e.cos_theta_p * e.cos_theta_p < 1e-12)
      continue;
    const LabEvent lab = build_lab_event(e);
    const double alpha =
        decay_plane_alpha(lab.proton.p + lab.pi_minus.p, lab.pi_minus.p, lab.pi_plus.p);
    CHECK(std::abs(alpha - e.alpha) < 1e-9);
    ++used;
  }
  CHECK(used > 9900);
}

TEST_CASE("model names") {
  CHECK(parse_model("qm") == Model::kQm);
  CHECK(parse_model("hvt") == Model::kHvt);
  CHECK(to_string(Model::kHvt) == "hvt");
  CHECK_THROWS_AS((void)parse_model("QM"), DomainError);
}
