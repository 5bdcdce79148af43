#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "llbar/kinematics.hpp"
#include "llbar/models.hpp"
#include "llbar/rng.hpp"

namespace llbar {

/// Mixture weights of the J/psi spin projection; +-1 share `transverse`
/// equally.
struct SzWeights {
  double transverse = 2.0 / 3.0;
  double longitudinal = 1.0 / 3.0;
};

struct GenConfig {
  Model model = Model::kQm;
  std::int64_t n_events = 1;
  std::uint64_t seed = 0;
  std::int64_t chunk_size = 65536;
  AsymmetryParam a{};
  double hvt_pol_magnitude = 1.0;
  SzWeights sz_weights{};
  PolarMeasure measure = PolarMeasure::kPolarAngle;
  int workers = 1;

  /// Throws DomainError on n_events < 1, chunk_size < 1, workers < 1,
  /// pol outside [0, 1] or weights not summing to 1.
  void validate() const;
};

struct PionAngles {
  double cos_th_m = 0.0;
  double phi_m = 0.0;
  double cos_th_p = 0.0;
  double phi_p = 0.0;
};

[[nodiscard]] int sample_sz(RngStream& rng, const SzWeights& weights = {});

/// Accept-reject sampler of the four-angle density, one per J/psi spin
/// projection. Envelopes are 1.05 x the maximum over a 32^4 grid, computed
/// once at construction.
class QmAngleSampler {
 public:
  explicit QmAngleSampler(AsymmetryParam a, PolarMeasure measure = PolarMeasure::kPolarAngle);

  /// Throws EnvelopeViolation when a proposal exceeds the envelope. Adds
  /// the number of proposals drawn to `*proposals` when given.
  PionAngles sample(int sz, RngStream& rng, std::uint64_t* proposals = nullptr) const;

  [[nodiscard]] double envelope(int sz) const { return envelope_[sz + 1]; }
  [[nodiscard]] const QmAngularDensity& density(int sz) const { return densities_[sz + 1]; }

 private:
  std::vector<QmAngularDensity> densities_;
  std::array<double, 3> envelope_{};
  PolarMeasure measure_;
};

[[nodiscard]] PionAngles sample_qm_angles(int sz, RngStream& rng, const QmAngleSampler& sampler);

/// Independent decays with a shared random polarization axis:
/// P_Lambda = pol * P_hat (P_hat isotropic) and P_Lambdabar = -P_Lambda,
/// both as components in the particle's own helicity frame.
[[nodiscard]] PionAngles sample_hvt_event(RngStream& rng, AsymmetryParam a, double pol);

/// Inverse CDF of (1 + k x) / 2 on [-1, 1], |k| <= 1.
[[nodiscard]] double sample_linear_cosine(double k, double u);

struct GenStats {
  std::int64_t events = 0;
  std::uint64_t proposals = 0;  // accept-reject proposals (QM only)
  [[nodiscard]] double acceptance() const {
    return proposals == 0 ? 1.0 : static_cast<double>(events) / static_cast<double>(proposals);
  }
};

/// Single event i of a run: a pure function of (config, i).
[[nodiscard]] Event generate_event(const GenConfig& config, std::int64_t event_id,
                                   const QmAngleSampler* sampler, std::uint64_t* proposals);

/// Generates config.n_events events in chunks of config.chunk_size, handing
/// each chunk (ordered by event_id) to `sink`. Within a chunk work is split
/// over config.workers threads; output is independent of both.
GenStats generate(const GenConfig& config,
                  const std::function<void(std::span<const Event>)>& sink);

[[nodiscard]] std::vector<Event> generate(const GenConfig& config);

}  // namespace llbar
