#pragma once

#include <numbers>

namespace llbar {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Particle masses in GeV (standard particle-data values).
struct ParticleMasses {
  double jpsi = 3.0969;
  double lambda = 1.115683;
  double proton = 0.938272;
  double pion = 0.139570;
};

inline constexpr ParticleMasses kPdgMasses{};

/// Lambda -> p pi- decay asymmetry parameter.
inline constexpr double kLambdaAsymmetry = 0.642;

/// Experimental scale used for the discrimination study.
struct ExperimentScale {
  double n_jpsi = 1.3e9;
  double branching_ratio = 1.6e-3;
  double efficiency = 0.40;
};

inline constexpr ExperimentScale kBesScale{};

}  // namespace llbar
