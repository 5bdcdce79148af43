#include "llbar/config.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "llbar/errors.hpp"
#include "llbar/event_io.hpp"

namespace llbar {

std::string_view to_string(Fault f) { return f == Fault::kLinearA ? "linear-a" : "none"; }

Fault parse_fault(std::string_view s) {
  if (s == "none") return Fault::kNone;
  if (s == "linear-a") return Fault::kLinearA;
  throw DomainError("unknown fault '" + std::string(s) + "'");
}

namespace {

template <typename T>
T parse_int(std::string_view key, std::string_view s) {
  T v{};
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    throw DomainError("bad integer for " + std::string(key) + ": '" + std::string(s) + "'");
  }
  return v;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void apply_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "model") {
    cfg.gen.model = parse_model(value);
  } else if (key == "events") {
    cfg.gen.n_events = parse_int<std::int64_t>(key, value);
  } else if (key == "seed") {
    cfg.gen.seed = parse_int<std::uint64_t>(key, value);
  } else if (key == "chunk-size") {
    cfg.gen.chunk_size = parse_int<std::int64_t>(key, value);
  } else if (key == "workers") {
    cfg.gen.workers = parse_int<int>(key, value);
  } else if (key == "a") {
    cfg.gen.a = AsymmetryParam(parse_real(value));
  } else if (key == "pol") {
    cfg.gen.hvt_pol_magnitude = parse_real(value);
  } else if (key == "sz-transverse") {
    cfg.gen.sz_weights.transverse = parse_real(value);
  } else if (key == "sz-longitudinal") {
    cfg.gen.sz_weights.longitudinal = parse_real(value);
  } else if (key == "measure") {
    cfg.gen.measure = parse_measure(value);
  } else if (key == "bins") {
    cfg.n_bins = parse_int<std::size_t>(key, value);
  } else if (key == "toys") {
    cfg.n_toys = parse_int<std::int64_t>(key, value);
  } else if (key == "quad-depth") {
    cfg.quad_depth = parse_int<std::size_t>(key, value);
  } else if (key == "input") {
    cfg.input = std::string(value);
  } else if (key == "out") {
    cfg.out = std::string(value);
  } else if (key == "fault") {
    cfg.fault = parse_fault(value);
  } else if (key == "mass-jpsi") {
    cfg.masses.jpsi = parse_real(value);
  } else if (key == "mass-lambda") {
    cfg.masses.lambda = parse_real(value);
  } else if (key == "mass-proton") {
    cfg.masses.proton = parse_real(value);
  } else if (key == "mass-pion") {
    cfg.masses.pion = parse_real(value);
  } else {
    throw DomainError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& cfg, std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    try {
      apply_config_value(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
}

RunConfig parse_config(std::istream& in) {
  RunConfig cfg;
  apply_config_text(cfg, in);
  return cfg;
}

void write_config(std::ostream& out, const RunConfig& cfg) {
  out << "model=" << to_string(cfg.gen.model) << '\n'
      << "events=" << cfg.gen.n_events << '\n'
      << "seed=" << cfg.gen.seed << '\n'
      << "chunk-size=" << cfg.gen.chunk_size << '\n'
      << "workers=" << cfg.gen.workers << '\n'
      << "a=" << format_real(cfg.gen.a.value()) << '\n'
      << "pol=" << format_real(cfg.gen.hvt_pol_magnitude) << '\n'
      << "sz-transverse=" << format_real(cfg.gen.sz_weights.transverse) << '\n'
      << "sz-longitudinal=" << format_real(cfg.gen.sz_weights.longitudinal) << '\n'
      << "measure=" << to_string(cfg.gen.measure) << '\n'
      << "bins=" << cfg.n_bins << '\n'
      << "toys=" << cfg.n_toys << '\n'
      << "quad-depth=" << cfg.quad_depth << '\n'
      << "input=" << cfg.input << '\n'
      << "out=" << cfg.out << '\n'
      << "fault=" << to_string(cfg.fault) << '\n'
      << "mass-jpsi=" << format_real(cfg.masses.jpsi) << '\n'
      << "mass-lambda=" << format_real(cfg.masses.lambda) << '\n'
      << "mass-proton=" << format_real(cfg.masses.proton) << '\n'
      << "mass-pion=" << format_real(cfg.masses.pion) << '\n';
}

}  // namespace llbar
