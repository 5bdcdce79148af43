#include <doctest.h>

#include <sstream>

#include "llbar/config.hpp"
#include "llbar/errors.hpp"
#include "llbar/event_io.hpp"
#include "llbar/generator.hpp"

using namespace llbar;

namespace {

std::string serialize(const RunConfig& cfg) {
  std::ostringstream os;
  write_config(os, cfg);
  return os.str();
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    (void)read_events(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("real formatting round trips") {
  for (double x : {0.0, 1.0, -2.5, 0.1, 3.141592653589793, 1e-300, 6.02214076e23}) {
    CHECK(parse_real(format_real(x)) == x);
  }
  CHECK(format_real(0.1) == "0.10000000000000001");
  CHECK_THROWS_AS((void)parse_real("1.5x"), ParseError);
  CHECK_THROWS_AS((void)parse_real(""), ParseError);
}

TEST_CASE("event file round trip") {
  GenConfig cfg;
  cfg.n_events = 200;
  cfg.seed = 4;
  const auto events = generate(cfg);
  std::ostringstream os;
  write_event_header(os);
  write_events(os, events);
  std::istringstream in(os.str());
  const auto back = read_events(in);
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].event_id == events[i].event_id);
    CHECK(back[i].sz == events[i].sz);
    CHECK(back[i].model == events[i].model);
    CHECK(back[i].cos_theta_lambda == events[i].cos_theta_lambda);
    CHECK(back[i].phi_p == events[i].phi_p);
    CHECK(back[i].alpha == events[i].alpha);
    CHECK_FALSE(back[i].seed.has_value());
  }
  std::ostringstream again;
  write_event_header(again);
  write_events(again, back);
  CHECK(again.str() == os.str());
}

TEST_CASE("malformed event files report the offending line") {
  const std::string header = std::string(kEventHeader) + "\n";
  const std::string good = "0,qm,1,0.5,1,0.1,2,0.2,3,1.2831853071795862\n";
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("event_id,model\n") == 1);
  CHECK(parse_error_line(header + good + "1,qm,1,0.5\n") == 3);
  CHECK(parse_error_line(header + good + "1,xx,1,0.5,1,0.1,2,0.2,3,1\n") == 3);
  CHECK(parse_error_line(header + good + good + "2,qm,5,0.5,1,0.1,2,0.2,3,1\n") == 4);
  CHECK(parse_error_line(header + "0,qm,1,1.5,1,0.1,2,0.2,3,1\n") == 2);
  CHECK(parse_error_line(header + "0,qm,1,0.5,1,0.1,7,0.2,3,1\n") == 2);
  CHECK(parse_error_line(header + "0,qm,1,0.5,1,0.1,2,0.2,3,4\n") == 2);
  // Truncated final record.
  CHECK(parse_error_line(header + good + "1,qm,1,0.5,1,0.1,2") == 3);
  std::istringstream ok(header + good);
  CHECK(read_events(ok).size() == 1);
}

TEST_CASE("config round trip is a fixpoint") {
  RunConfig cfg;
  cfg.gen.model = Model::kHvt;
  cfg.gen.n_events = 12345;
  cfg.gen.seed = 18446744073709551615ULL;
  cfg.gen.a = AsymmetryParam(0.1 + 0.2);
  cfg.gen.hvt_pol_magnitude = 1.0 / 3.0;
  cfg.gen.measure = PolarMeasure::kSolidAngle;
  cfg.n_bins = 7;
  cfg.quad_depth = 64;
  cfg.out = "/tmp/x y.csv";
  cfg.fault = Fault::kLinearA;
  cfg.masses.pion = 0.13957039;
  const std::string text = serialize(cfg);
  std::istringstream in(text);
  const RunConfig back = parse_config(in);
  CHECK(serialize(back) == text);
  CHECK(back.gen.a.value() == cfg.gen.a.value());
  CHECK(back.gen.seed == cfg.gen.seed);
  CHECK(back.out == cfg.out);
  CHECK(back.masses.pion == cfg.masses.pion);

  std::istringstream def(serialize(RunConfig{}));
  CHECK(serialize(parse_config(def)) == serialize(RunConfig{}));
}

TEST_CASE("config parsing") {
  std::istringstream in("# comment\n\n  events = 50 \nmodel=hvt\n");
  const RunConfig cfg = parse_config(in);
  CHECK(cfg.gen.n_events == 50);
  CHECK(cfg.gen.model == Model::kHvt);
  CHECK(cfg.n_bins == 40);
  CHECK(cfg.gen.a.value() == 0.642);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::istringstream s(text);
    try {
      (void)parse_config(s);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("events=1\nbogus=2\n") == 2);
  CHECK(line_of("events=abc\n") == 1);
  CHECK(line_of("seed\n") == 1);
  CHECK(line_of("a=2\n") == 1);
  CHECK(line_of("measure=flat\n") == 1);
  CHECK(line_of("fault=none\n") == 0);
}
