#include "llbar/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <ostream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/random/poisson_distribution.hpp>

#include "llbar/errors.hpp"
#include "llbar/event_io.hpp"

namespace llbar {

std::vector<double> alpha_bin_edges(std::size_t n_bins) {
  if (n_bins < 2) throw DomainError("need at least 2 bins");
  std::vector<double> edges(n_bins + 1);
  for (std::size_t k = 0; k < n_bins; ++k) {
    edges[k] = kPi * static_cast<double>(k) / static_cast<double>(n_bins);
  }
  edges[n_bins] = kPi;
  return edges;
}

std::size_t alpha_bin(double alpha, std::size_t n_bins) {
  if (!(alpha >= 0.0 && alpha <= kPi)) throw DomainError("alpha outside [0, pi]");
  const auto k = static_cast<std::size_t>(alpha / kPi * static_cast<double>(n_bins));
  return std::min(k, n_bins - 1);
}

Histogram histogram_alpha(std::span<const double> alphas, std::size_t n_bins) {
  if (alphas.empty()) throw EmptyInput("no events to histogram");
  Histogram h;
  h.edges = alpha_bin_edges(n_bins);
  h.counts.assign(n_bins, 0);
  for (double a : alphas) ++h.counts[alpha_bin(a, n_bins)];
  h.n_total = static_cast<std::int64_t>(alphas.size());
  return h;
}

Histogram histogram_alpha(std::span<const Event> events, std::size_t n_bins) {
  std::vector<double> alphas;
  alphas.reserve(events.size());
  for (const Event& e : events) alphas.push_back(e.alpha);
  return histogram_alpha(alphas, n_bins);
}

Histogram histogram_from_counts(std::vector<std::int64_t> counts) {
  Histogram h;
  h.edges = alpha_bin_edges(counts.size());
  h.n_total = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  h.counts = std::move(counts);
  return h;
}

std::int64_t expected_signal_events(const ExperimentScale& scale) {
  return std::llround(scale.n_jpsi * scale.branching_ratio * scale.efficiency);
}

std::vector<ExpectedBin> expected_counts(const AlphaPdf& model, std::int64_t n_events,
                                         std::size_t n_bins) {
  if (n_events < 1) throw DomainError("number of events must be at least 1");
  const std::vector<double> edges = alpha_bin_edges(n_bins);
  const double n = static_cast<double>(n_events);
  const double flat = n / static_cast<double>(n_bins);
  std::vector<ExpectedBin> out(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double mu =
        flat + n * model.amplitude() * (std::sin(edges[k + 1]) - std::sin(edges[k]));
    out[k] = {edges[k], edges[k + 1], mu, std::sqrt(mu)};
  }
  return out;
}

BandTable band_table(std::int64_t n_events, std::size_t n_bins, AsymmetryParam a) {
  const auto qm = expected_counts(qm_alpha_pdf(a), n_events, n_bins);
  const auto hvt = expected_counts(hvt_alpha_pdf(), n_events, n_bins);
  BandTable t;
  t.n_events = n_events;
  t.rows.reserve(n_bins);
  for (std::size_t k = 0; k < n_bins; ++k) {
    t.rows.push_back({qm[k].bin_lo, qm[k].bin_hi, qm[k].expected, hvt[k].expected,
                      qm[k].poisson_err, hvt[k].poisson_err});
  }
  return t;
}

double chi2_survival(double chi2, int ndf) {
  if (ndf < 1) throw DomainError("chi-square needs ndf >= 1");
  if (chi2 <= 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * ndf, 0.5 * chi2);
}

FitResult fit_amplitude(std::span<const double> counts) {
  const std::size_t nb = counts.size();
  const std::vector<double> edges = alpha_bin_edges(nb);
  const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
  if (!(n > 0.0)) throw DegenerateFit("all bins are empty");

  const double mu0 = n / static_cast<double>(nb);
  double num = 0.0;
  double curvature = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    const double slope = n * (std::sin(edges[k + 1]) - std::sin(edges[k]));
    num += (counts[k] - mu0) * slope / mu0;
    curvature += slope * slope / mu0;
  }
  FitResult r;
  r.a_hat = std::clamp(num / curvature, -1.0 / kPi, 1.0 / kPi);
  r.sigma_a = 1.0 / std::sqrt(curvature);
  for (std::size_t k = 0; k < nb; ++k) {
    const double slope = n * (std::sin(edges[k + 1]) - std::sin(edges[k]));
    const double d = counts[k] - mu0 - r.a_hat * slope;
    r.chi2 += d * d / mu0;
  }
  r.ndf = static_cast<int>(nb) - 2;
  r.p_value = r.ndf >= 1 ? chi2_survival(r.chi2, r.ndf) : 1.0;
  r.low_statistics = mu0 < 10.0;
  return r;
}

FitResult fit_amplitude(const Histogram& hist) {
  std::vector<double> c(hist.counts.begin(), hist.counts.end());
  return fit_amplitude(c);
}

GofResult gof_chi2(const Histogram& hist, const AlphaPdf& model) {
  if (hist.n_total <= 0) throw EmptyInput("empty histogram");
  const auto mu = expected_counts(model, hist.n_total, hist.n_bins());
  GofResult g;
  for (std::size_t k = 0; k < hist.n_bins(); ++k) {
    const double d = static_cast<double>(hist.counts[k]) - mu[k].expected;
    g.chi2 += d * d / mu[k].expected;
  }
  g.ndf = static_cast<int>(hist.n_bins()) - 1;
  g.p_value = chi2_survival(g.chi2, g.ndf);
  return g;
}

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw EmptyInput("KS test needs samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  const double sn = std::sqrt(n);
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  // Kolmogorov tail 2 sum (-1)^(k-1) exp(-2 k^2 lambda^2).
  double p = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12 * std::abs(p) || std::abs(term) < 1e-300) break;
    sign = -sign;
  }
  return {d, std::clamp(2.0 * p, 0.0, 1.0)};
}

std::vector<std::int64_t> poisson_counts(std::span<const double> means, RngStream& rng) {
  std::vector<std::int64_t> out;
  out.reserve(means.size());
  for (double mu : means) {
    boost::random::poisson_distribution<std::int64_t, double> dist(mu);
    out.push_back(dist(rng));
  }
  return out;
}

namespace {

double pearson(std::span<const std::int64_t> counts, std::span<const double> mu) {
  double chi2 = 0.0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double d = static_cast<double>(counts[k]) - mu[k];
    chi2 += d * d / mu[k];
  }
  return chi2;
}

std::vector<double> means_of(const std::vector<ExpectedBin>& bins) {
  std::vector<double> mu;
  mu.reserve(bins.size());
  for (const auto& b : bins) mu.push_back(b.expected);
  return mu;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

EnsembleSummary separation_significance(std::int64_t n_events, std::size_t n_bins,
                                        std::int64_t n_toys, std::uint64_t seed,
                                        AsymmetryParam a, int workers) {
  if (n_toys < 100) throw DomainError("need at least 100 toys");
  if (workers < 1) throw DomainError("worker count must be at least 1");
  const std::vector<double> mu_qm = means_of(expected_counts(qm_alpha_pdf(a), n_events, n_bins));
  const std::vector<double> mu_hvt = means_of(expected_counts(hvt_alpha_pdf(), n_events, n_bins));

  EnsembleSummary s;
  s.n_toys = n_toys;
  s.qm_toys.resize(static_cast<std::size_t>(n_toys));
  s.hvt_toys.resize(static_cast<std::size_t>(n_toys));

  auto run_toy = [&](std::int64_t t, Model hyp) {
    RngStream rng(seed, static_cast<std::uint64_t>(2 * t + (hyp == Model::kHvt ? 1 : 0)));
    const auto counts = poisson_counts(hyp == Model::kQm ? mu_qm : mu_hvt, rng);
    ToyRecord r;
    r.toy_id = t;
    r.hypothesis = hyp;
    r.chi2_qm = pearson(counts, mu_qm);
    r.chi2_hvt = pearson(counts, mu_hvt);
    r.delta_chi2 = r.chi2_hvt - r.chi2_qm;
    (hyp == Model::kQm ? s.qm_toys : s.hvt_toys)[static_cast<std::size_t>(t)] = r;
  };

  const auto nw = static_cast<std::int64_t>(workers);
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nw));
  auto run = [&](std::int64_t w) {
    try {
      for (std::int64_t t = n_toys * w / nw; t < n_toys * (w + 1) / nw; ++t) {
        run_toy(t, Model::kQm);
        run_toy(t, Model::kHvt);
      }
    } catch (...) {
      errors[static_cast<std::size_t>(w)] = std::current_exception();
    }
  };
  if (nw == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::int64_t w = 0; w < nw; ++w) pool.emplace_back(run, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<double> alt;
  std::vector<double> null;
  for (const auto& r : s.qm_toys) alt.push_back(r.delta_chi2);
  for (const auto& r : s.hvt_toys) null.push_back(r.delta_chi2);
  s.median_delta_chi2_qm = median(alt);
  s.null_mean = std::accumulate(null.begin(), null.end(), 0.0) / static_cast<double>(n_toys);
  double ss = 0.0;
  for (double x : null) ss += (x - s.null_mean) * (x - s.null_mean);
  s.null_sd = std::sqrt(ss / static_cast<double>(n_toys - 1));
  s.median_significance =
      s.null_sd > 0.0 ? std::max(0.0, (s.median_delta_chi2_qm - s.null_mean) / s.null_sd) : 0.0;
  return s;
}

double asimov_significance(std::int64_t n_events, std::size_t n_bins, AsymmetryParam a) {
  const auto qm = expected_counts(qm_alpha_pdf(a), n_events, n_bins);
  const auto hvt = expected_counts(hvt_alpha_pdf(), n_events, n_bins);
  double d = 0.0;
  for (std::size_t k = 0; k < n_bins; ++k) {
    const double diff = qm[k].expected - hvt[k].expected;
    d += diff * diff / hvt[k].expected;
  }
  return std::sqrt(d);
}

void write_histogram(std::ostream& out, const Histogram& hist) {
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t k = 0; k < hist.n_bins(); ++k) {
    out << format_real(hist.edges[k]) << ',' << format_real(hist.edges[k + 1]) << ','
        << hist.counts[k] << '\n';
  }
}

void write_band(std::ostream& out, const BandTable& band) {
  out << "bin_lo,bin_hi,expected_qm,expected_hvt,err_qm,err_hvt\n";
  for (const auto& r : band.rows) {
    out << format_real(r.bin_lo) << ',' << format_real(r.bin_hi) << ','
        << format_real(r.expected_qm) << ',' << format_real(r.expected_hvt) << ','
        << format_real(r.err_qm) << ',' << format_real(r.err_hvt) << '\n';
  }
}

void write_toys(std::ostream& out, const EnsembleSummary& summary) {
  out << "toy_id,hypothesis,chi2_qm,chi2_hvt,delta_chi2\n";
  for (const auto* set : {&summary.qm_toys, &summary.hvt_toys}) {
    for (const auto& r : *set) {
      out << r.toy_id << ',' << to_string(r.hypothesis) << ',' << format_real(r.chi2_qm) << ','
          << format_real(r.chi2_hvt) << ',' << format_real(r.delta_chi2) << '\n';
    }
  }
}

}  // namespace llbar
