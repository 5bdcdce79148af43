#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "llbar/constants.hpp"
#include "llbar/generator.hpp"

namespace llbar {

enum class Fault { kNone, kLinearA };

[[nodiscard]] std::string_view to_string(Fault f);
[[nodiscard]] Fault parse_fault(std::string_view s);

/// Everything a CLI run depends on. Serialized as key=value lines.
struct RunConfig {
  GenConfig gen{Model::kQm, 832000};
  std::size_t n_bins = 40;
  std::int64_t n_toys = 1000;
  std::size_t quad_depth = 256;
  std::string input;
  std::string out;
  Fault fault = Fault::kNone;
  ParticleMasses masses = kPdgMasses;
};

/// Reads key=value lines; blank lines and lines starting with '#' are
/// skipped. Unknown keys and bad values throw ParseError with the line.
void apply_config_text(RunConfig& cfg, std::istream& in);
void apply_config_value(RunConfig& cfg, std::string_view key, std::string_view value);

[[nodiscard]] RunConfig parse_config(std::istream& in);
void write_config(std::ostream& out, const RunConfig& cfg);

}  // namespace llbar
