#include "llbar/event_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>

#include "llbar/errors.hpp"
#include "llbar/models.hpp"

namespace llbar {

std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return {buf, res.ptr};
}

double parse_real(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not a real number: '" + std::string(s) + "'", 0);
  }
  return v;
}

namespace {

template <typename Int>
Int parse_int(std::string_view s) {
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw ParseError("not an integer: '" + std::string(s) + "'", 0);
  }
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Event parse_event(std::string_view line) {
  const auto f = split(line, ',');
  if (f.size() != 10) {
    throw ParseError("expected 10 fields, found " + std::to_string(f.size()), 0);
  }
  Event e;
  e.event_id = parse_int<std::int64_t>(f[0]);
  try {
    e.model = parse_model(f[1]);
  } catch (const DomainError& err) {
    throw ParseError(err.what(), 0);
  }
  e.sz = parse_int<int>(f[2]);
  e.cos_theta_lambda = parse_real(f[3]);
  e.phi_lambda = parse_real(f[4]);
  e.cos_theta_m = parse_real(f[5]);
  e.phi_m = parse_real(f[6]);
  e.cos_theta_p = parse_real(f[7]);
  e.phi_p = parse_real(f[8]);
  e.alpha = parse_real(f[9]);
  e.stream_index = static_cast<std::uint64_t>(e.event_id);

  if (e.sz < -1 || e.sz > 1) throw ParseError("sz must be -1, 0 or 1", 0);
  for (double c : {e.cos_theta_lambda, e.cos_theta_m, e.cos_theta_p}) {
    if (!(std::abs(c) <= 1.0)) throw ParseError("cosine outside [-1, 1]", 0);
  }
  for (double p : {e.phi_lambda, e.phi_m, e.phi_p}) {
    if (!(p >= 0.0 && p < kTwoPi)) throw ParseError("azimuth outside [0, 2pi)", 0);
  }
  if (!(e.alpha >= 0.0 && e.alpha <= kPi)) throw ParseError("alpha outside [0, pi]", 0);
  return e;
}

}  // namespace

void write_event_header(std::ostream& out) { out << kEventHeader << '\n'; }

void write_events(std::ostream& out, std::span<const Event> events) {
  std::string line;
  for (const Event& e : events) {
    line.clear();
    line += std::to_string(e.event_id);
    line += ',';
    line += to_string(e.model);
    line += ',';
    line += std::to_string(e.sz);
    for (double x : {e.cos_theta_lambda, e.phi_lambda, e.cos_theta_m, e.phi_m, e.cos_theta_p,
                     e.phi_p, e.alpha}) {
      line += ',';
      line += format_real(x);
    }
    line += '\n';
    out << line;
  }
}

std::vector<Event> read_events(std::istream& in) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::string_view rest = text;
  std::size_t line_no = 0;
  std::vector<Event> events;
  while (!rest.empty()) {
    ++line_no;
    const std::size_t nl = rest.find('\n');
    if (nl == std::string_view::npos) {
      // Every record written by write_events ends in a newline.
      throw ParseError("truncated record (missing end of line)", line_no);
    }
    std::string_view line = rest.substr(0, nl);
    rest.remove_prefix(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line_no == 1) {
      if (line != kEventHeader) throw ParseError("unexpected header", 1);
      continue;
    }
    try {
      events.push_back(parse_event(line));
    } catch (const ParseError& err) {
      throw ParseError(err.what(), line_no);
    }
  }
  if (line_no == 0) throw ParseError("missing header", 1);
  return events;
}

}  // namespace llbar
