#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "llbar/analysis.hpp"
#include "llbar/config.hpp"
#include "llbar/errors.hpp"
#include "llbar/event_io.hpp"
#include "llbar/generator.hpp"
#include "llbar/verify.hpp"

namespace {

using namespace llbar;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : to_stdout_(path.empty() || path == "-") {
    if (to_stdout_) return;
    file_.open(path, std::ios::binary);
    if (!file_) throw Error("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return to_stdout_ ? std::cout : file_; }
  bool is_stdout() const { return to_stdout_; }
  void close() {
    if (!file_.is_open()) return;
    file_.close();
    if (!file_) throw Error("write failed");
  }

 private:
  bool to_stdout_;
  std::ofstream file_;
};

int cmd_verify(const RunConfig& cfg) {
  VerifyOptions opts;
  opts.a = cfg.gen.a;
  opts.quad_depth = cfg.quad_depth;
  opts.fault = cfg.fault;
  opts.masses = cfg.masses;
  const auto checks = run_verification(opts);
  print_checks(std::cout, checks);
  const bool ok = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  std::cout << "verify=" << (ok ? "pass" : "fail") << '\n';
  return ok ? kOk : kVerifyFailed;
}

int cmd_generate(const RunConfig& cfg) {
  cfg.gen.validate();
  OutputFile out(cfg.out);
  std::ostream& os = out.stream();
  const auto t0 = std::chrono::steady_clock::now();
  write_event_header(os);
  const GenStats stats = generate(cfg.gen, [&](std::span<const Event> chunk) {
    write_events(os, chunk);
  });
  out.close();
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::ostream& report = out.is_stdout() ? std::cerr : std::cout;
  report << "events=" << stats.events << '\n'
         << "acceptance_rate=" << format_real(stats.acceptance()) << '\n'
         << "wall_time_s=" << wall << '\n';
  return kOk;
}

int cmd_analyze(const RunConfig& cfg) {
  if (cfg.input.empty()) throw DomainError("analyze needs --input");
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw Error("cannot open '" + cfg.input + "'");
  const std::vector<Event> events = read_events(in);
  const Histogram hist = histogram_alpha(events, cfg.n_bins);
  const FitResult fit = fit_amplitude(hist);
  const AlphaPdf qm = qm_alpha_pdf(cfg.gen.a);
  const GofResult gof_qm = gof_chi2(hist, qm);
  const GofResult gof_hvt = gof_chi2(hist, hvt_alpha_pdf());
  if (!cfg.out.empty()) {
    OutputFile out(cfg.out);
    write_histogram(out.stream(), hist);
    out.close();
  }
  std::cout << "events=" << hist.n_total << '\n'
            << "bins=" << hist.n_bins() << '\n'
            << "a_hat=" << format_real(fit.a_hat) << '\n'
            << "sigma_a=" << format_real(fit.sigma_a) << '\n'
            << "fit_chi2=" << format_real(fit.chi2) << '\n'
            << "fit_ndf=" << fit.ndf << '\n'
            << "fit_p_value=" << format_real(fit.p_value) << '\n'
            << "low_statistics=" << (fit.low_statistics ? 1 : 0) << '\n'
            << "a_qm=" << format_real(qm.amplitude()) << '\n'
            << "chi2_qm=" << format_real(gof_qm.chi2) << '\n'
            << "p_qm=" << format_real(gof_qm.p_value) << '\n'
            << "chi2_hvt=" << format_real(gof_hvt.chi2) << '\n'
            << "p_hvt=" << format_real(gof_hvt.p_value) << '\n'
            << "ndf=" << gof_qm.ndf << '\n';
  return kOk;
}

int cmd_band(const RunConfig& cfg) {
  if (cfg.gen.n_events < 1) throw DomainError("events must be at least 1");
  const BandTable band = band_table(cfg.gen.n_events, cfg.n_bins, cfg.gen.a);
  OutputFile out(cfg.out);
  write_band(out.stream(), band);
  out.close();
  return kOk;
}

int cmd_significance(const RunConfig& cfg) {
  if (cfg.gen.n_events < 1) throw DomainError("events must be at least 1");
  const EnsembleSummary s = separation_significance(cfg.gen.n_events, cfg.n_bins, cfg.n_toys,
                                                    cfg.gen.seed, cfg.gen.a, cfg.gen.workers);
  if (!cfg.out.empty()) {
    OutputFile out(cfg.out);
    write_toys(out.stream(), s);
    out.close();
  }
  std::cout << "events=" << cfg.gen.n_events << " bins=" << cfg.n_bins << " toys=" << s.n_toys
            << " seed=" << cfg.gen.seed
            << " median_delta_chi2_qm=" << format_real(s.median_delta_chi2_qm)
            << " null_mean=" << format_real(s.null_mean) << " null_sd=" << format_real(s.null_sd)
            << " median_significance=" << format_real(s.median_significance)
            << " asimov_significance="
            << format_real(asimov_significance(cfg.gen.n_events, cfg.n_bins, cfg.gen.a)) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambda Lambdabar spin-correlation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "key=value configuration file");

  // Flag name -> config key; values are applied after the config file.
  const std::vector<std::pair<std::string, std::string>> flags = {
      {"--seed", "seed"},         {"--events", "events"},   {"--bins", "bins"},
      {"--toys", "toys"},         {"--model", "model"},     {"--a", "a"},
      {"--out", "out"},           {"--workers", "workers"}, {"--input", "input"},
      {"--pol", "pol"},           {"--chunk-size", "chunk-size"},
      {"--measure", "measure"},   {"--quad-depth", "quad-depth"},
      {"--fault", "fault"}};
  std::map<std::string, std::optional<std::string>> values;
  for (const auto& [flag, key] : flags) {
    app.add_option_function<std::string>(
        flag, [&values, key = key](const std::string& v) { values[key] = v; },
        "sets " + key);
  }

  auto* verify = app.add_subcommand("verify", "run the derivation checks");
  auto* gen = app.add_subcommand("generate", "write an event file");
  auto* analyze = app.add_subcommand("analyze", "histogram and fit an event file");
  auto* band = app.add_subcommand("band", "expected counts with Poisson errors");
  auto* sig = app.add_subcommand("significance", "toy ensemble separating the two models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error("cannot open config '" + config_path + "'");
      apply_config_text(cfg, in);
    }
    for (const auto& [flag, key] : flags) {
      if (const auto it = values.find(key); it != values.end() && it->second) {
        apply_config_value(cfg, key, *it->second);
      }
    }
    if (verify->parsed()) return cmd_verify(cfg);
    if (gen->parsed()) return cmd_generate(cfg);
    if (analyze->parsed()) return cmd_analyze(cfg);
    if (band->parsed()) return cmd_band(cfg);
    if (sig->parsed()) return cmd_significance(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
