#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "llbar/kinematics.hpp"

namespace llbar {

inline constexpr std::string_view kEventHeader =
    "event_id,model,sz,cos_theta_lambda,phi_lambda,cos_theta_m,phi_m,cos_theta_p,phi_p,alpha";

/// Always 17 significant digits (printf "%.17g").
[[nodiscard]] std::string format_real(double x);

/// Parses a full decimal real; throws ParseError (line 0) otherwise.
[[nodiscard]] double parse_real(std::string_view s);

void write_event_header(std::ostream& out);
void write_events(std::ostream& out, std::span<const Event> events);

/// Reads a header line and event records. Throws ParseError carrying the
/// 1-based line number of the first malformed line.
[[nodiscard]] std::vector<Event> read_events(std::istream& in);

}  // namespace llbar
