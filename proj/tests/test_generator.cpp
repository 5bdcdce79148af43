#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "llbar/analysis.hpp"
#include "llbar/errors.hpp"
#include "llbar/event_io.hpp"
#include "llbar/generator.hpp"
#include "llbar/quadrature.hpp"
#include "test_support.hpp"

using namespace llbar;

namespace {

constexpr double kPi3 = kPi * kPi * kPi;
const AsymmetryParam kA{};

std::string event_text(const GenConfig& cfg) {
  std::ostringstream os;
  write_event_header(os);
  generate(cfg, [&](std::span<const Event> chunk) { write_events(os, chunk); });
  return os.str();
}

}  // namespace

TEST_CASE("spin projection frequencies") {
  RngStream rng(5, 0);
  const int n = 3000000;
  std::array<int, 3> counts{};
  for (int i = 0; i < n; ++i) ++counts[sample_sz(rng) + 1];
  const double sigma = std::sqrt(n * (1.0 / 3.0) * (2.0 / 3.0));
  for (int c : counts) CHECK(std::abs(c - n / 3.0) < 5.0 * sigma);

  // Empirical weights folded with the per-projection amplitudes.
  const double mix = (counts[0] + counts[2]) / double(n) * qm_alpha_amplitude(1, kA) +
                     counts[1] / double(n) * qm_alpha_amplitude(0, kA);
  const double spread = (qm_alpha_amplitude(0, kA) - qm_alpha_amplitude(1, kA)) * sigma / n;
  CHECK(std::abs(mix - qm_alpha_pdf(kA).amplitude()) < 5.0 * spread);
}

TEST_CASE("spin projection draws are frozen for seed 42") {
  const std::array<int, 20> frozen{-1, -1, 1, 1, -1, -1, -1, 0, -1, 0,
                                   -1, -1, -1, 1, -1, 1, 0, 0, -1, 1};
  RngStream a(42, 0);
  RngStream b(42, 0);
  for (int i = 0; i < 100; ++i) {
    const int x = sample_sz(a);
    CHECK(x == sample_sz(b));
    if (i < 20) CHECK(x == frozen[static_cast<std::size_t>(i)]);
  }
  RngStream c(42, 0);
  CHECK(c() == 2704548413004861485ULL);
}

TEST_CASE("streams are independent of consumption order") {
  RngStream s1(9, 3);
  for (int i = 0; i < 1000; ++i) (void)s1();
  RngStream s2(9, 4);
  RngStream s3(9, 4);
  CHECK(s2() == s3());
  CHECK(RngStream(9, 3)() != RngStream(9, 4)());
  RngStream u(1, 1);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("linear cosine sampler") {
  CHECK(sample_linear_cosine(0.0, 0.25) == doctest::Approx(-0.5));
  CHECK(sample_linear_cosine(0.5, 0.0) == doctest::Approx(-1.0));
  CHECK(sample_linear_cosine(-0.9, 1.0) == doctest::Approx(1.0));
  // The cdf of (1 + k x)/2 evaluated at the sample returns u.
  for (double k : {-1.0, -0.3, 0.642, 1.0}) {
    for (double u : {0.01, 0.3, 0.77, 0.999}) {
      const double x = sample_linear_cosine(k, u);
      CHECK((x + 1.0) / 2.0 + k * (x * x - 1.0) / 4.0 == doctest::Approx(u).epsilon(1e-12));
    }
  }
  // First moment a * pol / 3.
  RngStream rng(6, 0);
  const double k = kA.value() * 0.8;
  const int n = 1000000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_linear_cosine(k, rng.uniform());
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK(std::abs(mean - k / 3.0) < 5.0 * sd / std::sqrt(double(n)));
}

TEST_CASE("isotropic limit of the QM sampler") {
  const AsymmetryParam zero(0.0);
  for (PolarMeasure m : {PolarMeasure::kSolidAngle, PolarMeasure::kPolarAngle}) {
    const QmAngleSampler sampler(zero, m);
    RngStream rng(7, static_cast<std::uint64_t>(m));
    const int n = 100000;
    std::vector<double> polar_m, polar_p, phi_m, phi_p;
    for (int i = 0; i < n; ++i) {
      const PionAngles x = sample_qm_angles(1, rng, sampler);
      // Uniform variable of the measure: cos(theta) or theta.
      polar_m.push_back(m == PolarMeasure::kSolidAngle ? x.cos_th_m : std::acos(x.cos_th_m));
      polar_p.push_back(m == PolarMeasure::kSolidAngle ? x.cos_th_p : std::acos(x.cos_th_p));
      phi_m.push_back(x.phi_m);
      phi_p.push_back(x.phi_p);
    }
    const auto polar_cdf = m == PolarMeasure::kSolidAngle
                               ? std::function<double(double)>([](double c) { return (c + 1.0) / 2.0; })
                               : std::function<double(double)>([](double t) { return t / kPi; });
    const auto phi_cdf = [](double p) { return p / kTwoPi; };
    CHECK(ks_test(polar_m, polar_cdf).p_value > 0.001);
    CHECK(ks_test(polar_p, polar_cdf).p_value > 0.001);
    CHECK(ks_test(phi_m, phi_cdf).p_value > 0.001);
    CHECK(ks_test(phi_p, phi_cdf).p_value > 0.001);
  }
}

TEST_CASE("envelopes dominate the density") {
  for (PolarMeasure m : {PolarMeasure::kPolarAngle, PolarMeasure::kSolidAngle}) {
    const QmAngleSampler sampler(kA, m);
    RngStream rng(8, 0);
    for (int sz = -1; sz <= 1; ++sz) {
      double peak = 0.0;
      for (int i = 0; i < 200000; ++i) {
        peak = std::max(peak, sampler.density(sz)(2.0 * rng.uniform() - 1.0, kTwoPi * rng.uniform(),
                                                  2.0 * rng.uniform() - 1.0, kTwoPi * rng.uniform()));
      }
      CHECK(peak < sampler.envelope(sz));
      CHECK(peak > sampler.envelope(sz) / 1.3);
    }
  }
}

TEST_CASE("sz = +1 events reproduce the closed amplitude") {
  const QmAngleSampler sampler(kA);
  RngStream rng(10, 0);
  std::vector<double> alphas;
  alphas.reserve(1000000);
  for (int i = 0; i < 1000000; ++i) {
    const PionAngles x = sampler.sample(1, rng);
    alphas.push_back(fold_alpha_angles(x.phi_m, x.phi_p));
  }
  const FitResult fit = fit_amplitude(histogram_alpha(alphas));
  CHECK(std::abs(fit.a_hat - 6.0 * kA.value() * kA.value() / (5.0 * kPi3)) < 3.0 * fit.sigma_a);
}

TEST_CASE("pion azimuths follow the derived azimuthal density") {
  const QmAngleSampler sampler(kA);
  const AzimuthalDensity marg = azimuthal_marginal(sampler.density(1));
  RngStream rng(11, 0);
  constexpr int kBins = 16;
  const int n = 400000;
  std::vector<double> counts(kBins * kBins, 0.0);
  for (int i = 0; i < n; ++i) {
    const PionAngles x = sampler.sample(1, rng);
    const int b1 = std::min(kBins - 1, static_cast<int>(x.phi_m / kTwoPi * kBins));
    const int b2 = std::min(kBins - 1, static_cast<int>(x.phi_p / kTwoPi * kBins));
    counts[static_cast<std::size_t>(b1 * kBins + b2)] += 1.0;
  }
  const GaussLegendreRule r = gauss_legendre(8, 0.0, kTwoPi / kBins);
  double chi2 = 0.0;
  for (int b1 = 0; b1 < kBins; ++b1) {
    for (int b2 = 0; b2 < kBins; ++b2) {
      double p = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i)
        for (std::size_t j = 0; j < r.nodes.size(); ++j)
          p += r.weights[i] * r.weights[j] *
               marg(b1 * kTwoPi / kBins + r.nodes[i], b2 * kTwoPi / kBins + r.nodes[j]);
      const double mu = n * p;
      const double d = counts[static_cast<std::size_t>(b1 * kBins + b2)] - mu;
      chi2 += d * d / mu;
    }
  }
  CHECK(chi2_survival(chi2, kBins * kBins - 1) > 0.001);
}

TEST_CASE("hidden-variable sampler") {
  RngStream rng(12, 0);
  std::vector<double> c, p;
  for (int i = 0; i < 100000; ++i) {
    const PionAngles x = sample_hvt_event(rng, kA, 0.0);
    c.push_back(x.cos_th_m);
    p.push_back(x.phi_p);
  }
  CHECK(ks_test(c, [](double v) { return (v + 1.0) / 2.0; }).p_value > 0.001);
  CHECK(ks_test(p, [](double v) { return v / kTwoPi; }).p_value > 0.001);
  CHECK_THROWS_AS((void)sample_hvt_event(rng, kA, 1.1), DomainError);

  GenConfig cfg;
  cfg.model = Model::kHvt;
  cfg.n_events = 1000000;
  cfg.seed = 3;
  const auto events = generate(cfg);
  const Histogram h = histogram_alpha(events);
  CHECK(gof_chi2(h, hvt_alpha_pdf()).p_value > 0.001);
  for (auto count : h.counts) CHECK(std::abs(count - 25000.0) < 5.0 * std::sqrt(25000.0));
}

TEST_CASE("generator config validation") {
  GenConfig cfg;
  cfg.n_events = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.n_events = 10;
  cfg.chunk_size = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.chunk_size = 10;
  cfg.workers = 0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.workers = 1;
  cfg.sz_weights = {0.5, 0.6};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg.sz_weights = {};
  cfg.hvt_pol_magnitude = -0.1;
  CHECK_THROWS_AS((void)generate(cfg), DomainError);
}

TEST_CASE("generation is deterministic and independent of chunking and workers") {
  GenConfig cfg;
  cfg.model = Model::kQm;
  cfg.n_events = 1000;
  cfg.seed = 7;
  const std::string base = event_text(cfg);
  CHECK(testing::fnv1a(base) == 0xe7e5b1a01c60cdffULL);
  CHECK(event_text(cfg) == base);
  cfg.chunk_size = 37;
  CHECK(event_text(cfg) == base);
  cfg.workers = 4;
  CHECK(event_text(cfg) == base);
  CHECK(std::count(base.begin(), base.end(), '\n') == 1001);

  cfg.model = Model::kHvt;
  cfg.chunk_size = 65536;
  cfg.workers = 1;
  const std::string hvt = event_text(cfg);
  CHECK(testing::fnv1a(hvt) == 0xeb997a986f563e85ULL);
  cfg.workers = 3;
  cfg.chunk_size = 100;
  CHECK(event_text(cfg) == hvt);
}

TEST_CASE("chunk sizes 1000 and 65536 give identical events") {
  GenConfig cfg;
  cfg.n_events = 20000;
  cfg.seed = 99;
  cfg.chunk_size = 1000;
  const std::string a = event_text(cfg);
  cfg.chunk_size = 65536;
  CHECK(event_text(cfg) == a);
}

TEST_CASE("generated events are consistent") {
  GenConfig cfg;
  cfg.n_events = 5000;
  cfg.seed = 1;
  GenStats stats;
  std::vector<Event> events;
  stats = generate(cfg, [&](std::span<const Event> c) { events.insert(events.end(), c.begin(), c.end()); });
  CHECK(stats.events == 5000);
  CHECK(stats.acceptance() > 0.3);
  CHECK(stats.acceptance() < 1.0);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event& e = events[i];
    CHECK(e.event_id == static_cast<std::int64_t>(i));
    CHECK(e.alpha == fold_alpha_angles(e.phi_m, e.phi_p));
    CHECK(std::abs(e.sz) <= 1);
  }
}
