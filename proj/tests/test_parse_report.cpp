#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "dixlab/parse.hpp"
#include "dixlab/report.hpp"

using namespace dixlab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::size_t error_position(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("weights parse") {
  CHECK(parse_weight("gk:k=2").gk_index == 2);
  CHECK(parse_weight("psi:n=1").descriptor == weight_psi(1).descriptor);
  CHECK(parse_weight("invlog").descriptor == weight_invlog().descriptor);
  CHECK(error_position([] { parse_weight("gk:k=x"); }) == 5);
  CHECK(error_position([] { parse_weight("psi:n=7"); }) == 6);
  CHECK(error_position([] { parse_weight("foo"); }) == 0);
  CHECK(error_position([] { parse_weight("gk"); }) != std::string::npos);
}

TEST_CASE("bounded sequences parse") {
  CHECK(parse_bounded("alternating")(3) == cplx(-1.0));
  CHECK(parse_bounded("const:c=0.5")(10) == cplx(0.5));
  CHECK(parse_bounded("phase:q=4").period.size() == 8);
  CHECK(parse_bounded("indicator:i=2")(2) == cplx(1.0));
  CHECK(error_position([] { parse_bounded("one:x=1"); }) != std::string::npos);
  CHECK(error_position([] { parse_bounded("indicator:i=-1"); }) == 12);
}

TEST_CASE("sequences parse") {
  CHECK(parse_sequence("harmonic")(1) == cplx(0.5));
  CHECK(parse_sequence("zero")(5) == cplx(0.0));
  auto g = parse_sequence("gk:k=1");
  CHECK(g.descriptor == seq_weight_diagonal(weight_gk(1)).descriptor);
  auto o = parse_sequence("oscillating:amp=0.5,scale=loglog");
  CHECK_THAT(o(100).real(), WithinRel(seq_oscillating(0.5)(100).real(), 1e-15));
  auto p = parse_sequence("pietsch:alternating@gk:k=1");
  CHECK(p(1).real() < 0.0);
  CHECK_THAT(p(0).real(), WithinRel(weight_gk(1).g(1.0), 1e-15));
  ParseContext ctx;
  ctx.tensor_terms = 1000;
  auto t = parse_sequence("tensor:harmonic*harmonic", ctx);
  CHECK(t(0) == cplx(1.0));
  CHECK(t(1) == cplx(0.5));
  CHECK(*t.extent == 1000);
  auto s = parse_sequence("string:cantor");
  CHECK_THAT(s(1).real(), WithinRel(1.0 / 9.0, 1e-15));
  auto pw = parse_sequence("power:d=0.5,interval:l=1", ctx);
  CHECK_THAT(pw(0).real(), WithinRel(1.0 / std::numbers::pi, 1e-15));
}

TEST_CASE("parse error positions point into the input") {
  CHECK(error_position([] { parse_sequence("harmonik"); }) == 0);
  CHECK(error_position([] { parse_sequence("oscillating:amp=2"); }) == 16);
  CHECK(error_position([] { parse_sequence("pietsch:one@gk:k=z"); }) == 17);
  CHECK(error_position([] { parse_sequence("tensor:harmonic*bogus"); }) == 16);
  CHECK(error_position([] { parse_sequence("power:d=2,cantor"); }) == 8);
  CHECK(error_position([] { parse_sequence("power:d=0.5,cantor:depth=0"); }) == 25);
  CHECK(error_position([] { parse_sequence("string:tensor:cantor*"); }) != std::string::npos);
  try {
    parse_sequence("harmonik");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::parse_error);
    CHECK(std::string(e.what()).find("position 0") != std::string::npos);
  }
}

TEST_CASE("file sequences parse and report io errors") {
  auto path = std::filesystem::temp_directory_path() / "dixlab_parse.csv";
  std::ofstream(path) << "1\n0.5\n0.25\n";
  auto s = parse_sequence("file:" + path.string());
  CHECK(*s.extent == 3);
  CHECK(s(1) == cplx(0.5));
  auto b = parse_bounded("file:" + path.string());
  CHECK(b(2) == cplx(0.25));
  try {
    parse_sequence("file:/no/such/file.csv");
    FAIL("expected io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io_error);
  }
}

TEST_CASE("strings parse") {
  CHECK(parse_string("cantor").descriptor == "cantor");
  CHECK(parse_string("cantor:depth=5").depth == 5);
  CHECK_THAT(closed_zeta(parse_string("lacunary:b=2"), 1.0).real(), WithinRel(2.0, 1e-15));
  CHECK(parse_string("interval:l=2").length_at(0) == 2.0);
  ParseContext ctx;
  ctx.string_terms = 100;
  auto t = parse_string("tensor:cantor*lacunary", ctx);
  CHECK(*t.length_count == 100);
  CHECK(error_position([] { parse_string("lacunary:b=1"); }) == 11);
}

TEST_CASE("json numbers and envelopes") {
  CHECK(report::num(std::numeric_limits<double>::infinity()).is_null());
  CHECK(report::num(1.5) == 1.5);
  auto z = report::num(cplx(1.0, -2.0));
  CHECK(z["re"] == 1.0);
  CHECK(z["im"] == -2.0);
  auto env = report::envelope("trace", json{{"sequence", "harmonic"}}, json{{"x", 1}});
  CHECK(env["schema"] == kSchemaVersion);
  CHECK(env["tool"] == "dixlab");
  CHECK(env["command"] == "trace");
  // key order is insertion order
  std::vector<std::string> keys;
  for (auto& [k, v] : env.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema", "tool", "version", "command", "config", "result"});
}

TEST_CASE("trace reports serialize deterministically") {
  auto run = [] {
    auto r = build_trace_report(parse_sequence("harmonic"), parse_weight("gk:k=0"), Grid{4, 16}, 1e-2, true);
    return report::envelope("trace", json{{"grid", 16}}, report::trace(r)).dump(2);
  };
  const auto a = run(), b = run();
  CHECK(a == b);
  auto j = json::parse(a);
  CHECK(j["result"]["measurable"] == "converged");
  CHECK(j["result"]["partial_sums"]["re"]["checkpoints"].size() == 13);
}

TEST_CASE("equivalence and weyl reports carry their verdicts") {
  EquivalenceOptions o;
  o.grid = Grid{4, 18};
  o.abel = false;
  auto e = report::equivalence(equivalence_report(bounded_one(), seq_harmonic(), 0, o));
  CHECK(e["consistent"] == true);
  auto w = report::weyl(weyl_fuzz(5, {4}));
  CHECK(w["violations"] == 0);
}
