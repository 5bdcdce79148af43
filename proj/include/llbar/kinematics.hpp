#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

#include "llbar/constants.hpp"

namespace llbar {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3& operator*=(double s) {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  friend constexpr Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend constexpr Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend constexpr Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr bool operator==(const Vec3&, const Vec3&) = default;
};

[[nodiscard]] constexpr double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

[[nodiscard]] constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

[[nodiscard]] inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

/// Throws ZeroVector for a null input.
[[nodiscard]] Vec3 unit(const Vec3& a);

struct FourVector {
  double e = 0.0;
  Vec3 p;

  [[nodiscard]] constexpr double mass2() const { return e * e - dot(p, p); }
  friend constexpr FourVector operator+(const FourVector& a, const FourVector& b) {
    return {a.e + b.e, a.p + b.p};
  }
};

/// Orthonormal right-handed triad (i x j = k).
struct Frame {
  Vec3 i_hat;
  Vec3 j_hat;
  Vec3 k_hat;
};

struct Angles {
  double cos_theta = 1.0;
  double phi = 0.0;
};

/// Maps an angle onto [0, 2pi).
[[nodiscard]] double wrap_two_pi(double phi);

/// Helicity rest frame of a particle moving along `p_dir` with reference
/// axis `z_ref`: k = p_dir, j = unit(z_ref x k), i = j x k.
/// Throws DegenerateFrame when the two directions are collinear.
[[nodiscard]] Frame helicity_frame(const Vec3& p_dir, const Vec3& z_ref);

/// Frame of the back-to-back partner: i kept, j and k negated.
[[nodiscard]] Frame conjugate_frame(const Frame& f);

/// Polar cosine along k and azimuth from i towards j, phi in [0, 2pi).
[[nodiscard]] Angles angles_in_frame(const Vec3& p, const Frame& f);

[[nodiscard]] Vec3 direction_from_angles(double cos_theta, double phi, const Frame& f);

enum class Model { kQm, kHvt };

[[nodiscard]] std::string_view to_string(Model m);
/// Accepts "qm" / "hvt"; throws DomainError otherwise.
[[nodiscard]] Model parse_model(std::string_view s);

/// One simulated J/psi -> Lambda Lambdabar -> p pi- pbar pi+ decay.
/// (cos_theta_m, phi_m) is the pi- in the Lambda helicity frame,
/// (cos_theta_p, phi_p) the pi+ in the Lambdabar helicity frame.
struct Event {
  std::int64_t event_id = 0;
  Model model = Model::kQm;
  int sz = 0;
  double cos_theta_lambda = 0.0;
  double phi_lambda = 0.0;
  double cos_theta_m = 0.0;
  double phi_m = 0.0;
  double cos_theta_p = 0.0;
  double phi_p = 0.0;
  double alpha = 0.0;
  std::optional<std::uint64_t> seed;  // unknown for events read back from file
  std::uint64_t stream_index = 0;
};

struct LabEvent {
  FourVector proton;
  FourVector pi_minus;
  FourVector antiproton;
  FourVector pi_plus;
};

/// Two-body momentum of the daughters of a parent of mass `m` decaying to
/// masses m1 and m2, in the parent rest frame.
[[nodiscard]] double two_body_momentum(double m, double m1, double m2);

/// Pure boost of `v` by velocity `beta` (|beta| < 1).
[[nodiscard]] FourVector boost(const FourVector& v, const Vec3& beta);

/// Four-momenta of the final state in the J/psi rest frame.
[[nodiscard]] LabEvent build_lab_event(const Event& e, const ParticleMasses& masses = kPdgMasses);

/// Dihedral angle between the planes (p_lambda, p_pim) and (p_lambda, p_pip),
/// in [0, pi]. Throws DegeneratePlane when a normal has norm below 1e-12.
[[nodiscard]] double decay_plane_alpha(const Vec3& p_lambda_dir, const Vec3& p_pim,
                                       const Vec3& p_pip);

}  // namespace llbar
