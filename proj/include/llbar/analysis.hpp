#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "llbar/constants.hpp"
#include "llbar/kinematics.hpp"
#include "llbar/models.hpp"
#include "llbar/rng.hpp"

namespace llbar {

/// Uniform binning of alpha over [0, pi]; the last bin is closed on the right.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::int64_t> counts;
  std::int64_t n_total = 0;

  [[nodiscard]] std::size_t n_bins() const { return counts.size(); }
};

[[nodiscard]] std::vector<double> alpha_bin_edges(std::size_t n_bins);
[[nodiscard]] std::size_t alpha_bin(double alpha, std::size_t n_bins);

/// Throws EmptyInput for no events, DomainError for n_bins < 2 or alpha
/// outside [0, pi].
[[nodiscard]] Histogram histogram_alpha(std::span<const Event> events, std::size_t n_bins = 40);
[[nodiscard]] Histogram histogram_alpha(std::span<const double> alphas, std::size_t n_bins = 40);
[[nodiscard]] Histogram histogram_from_counts(std::vector<std::int64_t> counts);

/// Expected signal after detector efficiency: n_jpsi * branching * efficiency,
/// rounded to a whole number of events (832000 at the defaults).
[[nodiscard]] std::int64_t expected_signal_events(const ExperimentScale& scale = kBesScale);

struct ExpectedBin {
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  double expected = 0.0;
  double poisson_err = 0.0;
};

/// Per-bin expectation n_events * integral of W over the bin, from the
/// antiderivative alpha/pi + A sin(alpha); the alpha/pi part is exactly
/// n_events / n_bins.
[[nodiscard]] std::vector<ExpectedBin> expected_counts(const AlphaPdf& model,
                                                       std::int64_t n_events,
                                                       std::size_t n_bins = 40);

struct BandRow {
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  double expected_qm = 0.0;
  double expected_hvt = 0.0;
  double err_qm = 0.0;
  double err_hvt = 0.0;
};

struct BandTable {
  std::int64_t n_events = 0;
  std::vector<BandRow> rows;
};

[[nodiscard]] BandTable band_table(std::int64_t n_events = 832000, std::size_t n_bins = 40,
                                   AsymmetryParam a = AsymmetryParam{});

struct FitResult {
  double a_hat = 0.0;
  double sigma_a = 0.0;
  double chi2 = 0.0;
  int ndf = 0;
  double p_value = 1.0;
  /// Some bin expects fewer than 10 entries under the null; the chi-square
  /// approximation is unreliable.
  bool low_statistics = false;
};

/// Weighted least-squares fit of the cos(alpha) amplitude. The model is
/// linear in A and the weights are the flat-model expectations, so the
/// minimum is closed form. A is restricted to [-1/pi, 1/pi]; ndf = n_bins - 2.
/// Throws DegenerateFit when all counts are zero.
[[nodiscard]] FitResult fit_amplitude(const Histogram& hist);
[[nodiscard]] FitResult fit_amplitude(std::span<const double> counts);

struct GofResult {
  double chi2 = 0.0;
  int ndf = 0;
  double p_value = 1.0;
};

/// Pearson chi-square against fixed model expectations; ndf = n_bins - 1.
[[nodiscard]] GofResult gof_chi2(const Histogram& hist, const AlphaPdf& model);

/// Upper tail probability of a chi-square variable.
[[nodiscard]] double chi2_survival(double chi2, int ndf);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test with the asymptotic distribution.
[[nodiscard]] KsResult ks_test(std::vector<double> samples,
                               const std::function<double(double)>& cdf);

/// Independent Poisson counts with the given means.
[[nodiscard]] std::vector<std::int64_t> poisson_counts(std::span<const double> means,
                                                       RngStream& rng);

struct ToyRecord {
  std::int64_t toy_id = 0;
  Model hypothesis = Model::kQm;
  double chi2_qm = 0.0;
  double chi2_hvt = 0.0;
  double delta_chi2 = 0.0;  // chi2_hvt - chi2_qm
};

struct EnsembleSummary {
  std::int64_t n_toys = 0;
  std::vector<ToyRecord> qm_toys;
  std::vector<ToyRecord> hvt_toys;
  double median_delta_chi2_qm = 0.0;
  double null_mean = 0.0;
  double null_sd = 0.0;
  /// (median delta chi2 under QM - null mean) / null sd, floored at 0.
  double median_significance = 0.0;
};

/// Pseudo-experiments of Poisson bin counts under each hypothesis. Toy t
/// under hypothesis h uses stream 2t + h of `seed`; the result does not
/// depend on `workers`. Throws DomainError for n_toys < 100.
[[nodiscard]] EnsembleSummary separation_significance(std::int64_t n_events, std::size_t n_bins,
                                                      std::int64_t n_toys, std::uint64_t seed,
                                                      AsymmetryParam a = AsymmetryParam{},
                                                      int workers = 1);

/// Asymptotic significance sqrt(sum (mu_qm - mu_hvt)^2 / mu_hvt) for
/// Gaussian counts.
[[nodiscard]] double asimov_significance(std::int64_t n_events, std::size_t n_bins,
                                         AsymmetryParam a = AsymmetryParam{});

void write_histogram(std::ostream& out, const Histogram& hist);
void write_band(std::ostream& out, const BandTable& band);
void write_toys(std::ostream& out, const EnsembleSummary& summary);

}  // namespace llbar
