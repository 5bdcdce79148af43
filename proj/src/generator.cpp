#include "llbar/generator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>
#include <thread>

#include "llbar/errors.hpp"

namespace llbar {

void GenConfig::validate() const {
  if (n_events < 1) throw DomainError("number of events must be at least 1");
  if (chunk_size < 1) throw DomainError("chunk size must be at least 1");
  if (workers < 1) throw DomainError("worker count must be at least 1");
  if (!(hvt_pol_magnitude >= 0.0 && hvt_pol_magnitude <= 1.0)) {
    throw DomainError("polarization magnitude must lie in [0, 1]");
  }
  if (!(sz_weights.transverse >= 0.0 && sz_weights.longitudinal >= 0.0) ||
      std::abs(sz_weights.transverse + sz_weights.longitudinal - 1.0) > 1e-12) {
    throw DomainError("spin-projection weights must be non-negative and sum to 1");
  }
}

int sample_sz(RngStream& rng, const SzWeights& weights) {
  const double u = rng.uniform();
  const double half = 0.5 * weights.transverse;
  if (u < half) return -1;
  if (u < half + weights.longitudinal) return 0;
  return 1;
}

QmAngleSampler::QmAngleSampler(AsymmetryParam a, PolarMeasure measure) : measure_(measure) {
  constexpr int kGrid = 32;
  densities_.reserve(3);
  for (int sz = -1; sz <= 1; ++sz) densities_.emplace_back(sz, a, measure);

  // Grid over (polar variable, phi) for one particle; the polar variable
  // runs over its closed range, phi over [0, 2pi).
  std::vector<std::pair<double, double>> points;
  points.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i) {
    const double t = static_cast<double>(i) / (kGrid - 1);
    const double c = measure == PolarMeasure::kPolarAngle ? std::cos(kPi * t) : 2.0 * t - 1.0;
    for (int j = 0; j < kGrid; ++j) {
      points.emplace_back(std::clamp(c, -1.0, 1.0), kTwoPi * j / kGrid);
    }
  }
  for (int k = 0; k < 3; ++k) envelope_[k] = 1.05 * densities_[k].grid_maximum(points);
}

PionAngles QmAngleSampler::sample(int sz, RngStream& rng, std::uint64_t* proposals) const {
  if (sz < -1 || sz > 1) throw InvalidQuantumNumbers("J/psi spin projection must be -1, 0 or +1");
  const QmAngularDensity& d = densities_[sz + 1];
  const double env = envelope_[sz + 1];
  auto polar = [&]() {
    const double u = rng.uniform();
    return measure_ == PolarMeasure::kPolarAngle ? std::cos(kPi * u) : 2.0 * u - 1.0;
  };
  std::uint64_t n = 0;
  for (;;) {
    ++n;
    PionAngles x;
    x.cos_th_m = polar();
    x.phi_m = wrap_two_pi(kTwoPi * rng.uniform());
    x.cos_th_p = polar();
    x.phi_p = wrap_two_pi(kTwoPi * rng.uniform());
    const double f = d(x.cos_th_m, x.phi_m, x.cos_th_p, x.phi_p);
    if (f > env) {
      throw EnvelopeViolation("density " + std::to_string(f) + " exceeds envelope " +
                              std::to_string(env));
    }
    if (rng.uniform() * env < f) {
      if (proposals != nullptr) *proposals += n;
      return x;
    }
  }
}

PionAngles sample_qm_angles(int sz, RngStream& rng, const QmAngleSampler& sampler) {
  return sampler.sample(sz, rng);
}

double sample_linear_cosine(double k, double u) {
  // Root of k x^2 + 2x + (2 - k - 4u) = 0 in [-1, 1], written without the
  // 1/k cancellation.
  const double disc = (1.0 - k) * (1.0 - k) + 4.0 * k * u;
  const double x = (k - 2.0 + 4.0 * u) / (1.0 + std::sqrt(std::max(disc, 0.0)));
  return std::clamp(x, -1.0, 1.0);
}

namespace {

Vec3 isotropic_direction(RngStream& rng) {
  const double c = 2.0 * rng.uniform() - 1.0;
  const double phi = kTwoPi * rng.uniform();
  const double s = std::sqrt((1.0 - c) * (1.0 + c));
  return {s * std::cos(phi), s * std::sin(phi), c};
}

// Direction drawn from (1 + k n.axis)/4pi.
Vec3 sample_about_axis(const Vec3& axis, double k, RngStream& rng) {
  const double x = sample_linear_cosine(k, rng.uniform());
  const double beta = kTwoPi * rng.uniform();
  const Vec3 ref = std::abs(axis.z) < 0.9 ? Vec3{0.0, 0.0, 1.0} : Vec3{1.0, 0.0, 0.0};
  const Vec3 e1 = unit(cross(axis, ref));
  const Vec3 e2 = cross(axis, e1);
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  return axis * x + e1 * (s * std::cos(beta)) + e2 * (s * std::sin(beta));
}

Angles frame_angles(const Vec3& n) {
  return {std::clamp(n.z, -1.0, 1.0), wrap_two_pi(std::atan2(n.y, n.x))};
}

}  // namespace

PionAngles sample_hvt_event(RngStream& rng, AsymmetryParam a, double pol) {
  if (!(pol >= 0.0 && pol <= 1.0)) {
    throw DomainError("polarization magnitude must lie in [0, 1]");
  }
  const Vec3 axis = isotropic_direction(rng);
  const double k = a.value() * pol;
  const Angles m = frame_angles(sample_about_axis(axis, k, rng));
  const Angles p = frame_angles(sample_about_axis(-axis, k, rng));
  return {m.cos_theta, m.phi, p.cos_theta, p.phi};
}

Event generate_event(const GenConfig& config, std::int64_t event_id,
                     const QmAngleSampler* sampler, std::uint64_t* proposals) {
  RngStream rng(config.seed, static_cast<std::uint64_t>(event_id));
  Event e;
  e.event_id = event_id;
  e.model = config.model;
  e.seed = config.seed;
  e.stream_index = static_cast<std::uint64_t>(event_id);
  e.sz = sample_sz(rng, config.sz_weights);

  // The helicity azimuth is undefined on the beam axis; resample there.
  for (;;) {
    e.cos_theta_lambda = 2.0 * rng.uniform() - 1.0;
    e.phi_lambda = wrap_two_pi(kTwoPi * rng.uniform());
    if ((1.0 - e.cos_theta_lambda) * (1.0 + e.cos_theta_lambda) >= 1e-18) break;
  }

  PionAngles x;
  if (config.model == Model::kQm) {
    if (sampler == nullptr) throw DomainError("QM generation needs a sampler");
    x = sampler->sample(e.sz, rng, proposals);
  } else {
    x = sample_hvt_event(rng, config.a, config.hvt_pol_magnitude);
  }
  e.cos_theta_m = x.cos_th_m;
  e.phi_m = x.phi_m;
  e.cos_theta_p = x.cos_th_p;
  e.phi_p = x.phi_p;
  e.alpha = fold_alpha_angles(e.phi_m, e.phi_p);
  return e;
}

GenStats generate(const GenConfig& config,
                  const std::function<void(std::span<const Event>)>& sink) {
  config.validate();
  std::optional<QmAngleSampler> sampler;
  if (config.model == Model::kQm) sampler.emplace(config.a, config.measure);
  const QmAngleSampler* sp = sampler ? &*sampler : nullptr;

  GenStats stats;
  std::vector<Event> chunk;
  const auto workers = static_cast<std::int64_t>(config.workers);
  for (std::int64_t begin = 0; begin < config.n_events; begin += config.chunk_size) {
    const std::int64_t end = std::min(config.n_events, begin + config.chunk_size);
    const std::int64_t n = end - begin;
    chunk.resize(static_cast<std::size_t>(n));
    std::vector<std::uint64_t> proposals(static_cast<std::size_t>(workers), 0);
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));

    auto run = [&](std::int64_t w) {
      const std::int64_t lo = begin + n * w / workers;
      const std::int64_t hi = begin + n * (w + 1) / workers;
      try {
        for (std::int64_t i = lo; i < hi; ++i) {
          chunk[static_cast<std::size_t>(i - begin)] =
              generate_event(config, i, sp, &proposals[static_cast<std::size_t>(w)]);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(static_cast<std::size_t>(workers));
      for (std::int64_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }
    for (const auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
    for (auto p : proposals) stats.proposals += p;
    stats.events += n;
    sink(chunk);
  }
  return stats;
}

std::vector<Event> generate(const GenConfig& config) {
  std::vector<Event> out;
  out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(config.n_events, 0)));
  generate(config, [&](std::span<const Event> chunk) {
    out.insert(out.end(), chunk.begin(), chunk.end());
  });
  return out;
}

}  // namespace llbar
