#pragma once

#include <charconv>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"
#include "sequence.hpp"
#include "spectral_core.hpp"
#include "weight.hpp"

// Spec mini-language.
//   sequences: zero | harmonic | gk:k=<int> | psi:n=<int> | invlog
//              | oscillating:amp=<real>[,scale=loglog] | file:<path>
//              | pietsch:<bounded>[@<weight>] | tensor:<seq>*<seq>
//              | string:<string> | power:d=<real>,<string>
//   bounded:   one | const:c=<real> | alternating | phase:q=<int> | indicator:i=<int> | file:<path>
//   strings:   cantor[:depth=<int>] | lacunary[:b=<real>] | interval[:l=<real>] | tensor:<string>*<string>
//   weights:   gk:k=<int> | psi:n=<int> | invlog

namespace dixlab {

struct ParseContext {
  WeightFamily pietsch_weight = weight_gk(0);  // weight for pietsch:<x> without @
  std::uint64_t tensor_terms = 1u << 22;       // N for tensor:/power: sequences
  std::uint64_t string_terms = 1u << 20;       // N for tensor strings
};

namespace detail {

// a token that remembers where it sits in the original input
struct Span {
  std::string_view text;
  std::size_t offset = 0;

  Span sub(std::size_t pos, std::size_t n = std::string_view::npos) const {
    return {text.substr(pos, n), offset + std::min(pos, text.size())};
  }
  bool starts_with(std::string_view p) const { return text.substr(0, p.size()) == p; }
};

class Parser {
 public:
  explicit Parser(std::string input) : input_(std::move(input)) {}

  [[noreturn]] void fail(std::size_t pos, const std::string& msg) const { throw ParseError(input_, pos, msg); }
  Span all() const { return {input_, 0}; }
  const std::string& input() const { return input_; }

  // "name" or "name:rest"
  std::pair<Span, Span> head(Span s) const {
    const auto c = s.text.find(':');
    if (c == std::string_view::npos) return {s, Span{{}, s.offset + s.text.size()}};
    return {s.sub(0, c), s.sub(c + 1)};
  }

  // key=value pairs separated by commas
  std::map<std::string, Span> params(Span s, std::initializer_list<std::string_view> allowed) const {
    std::map<std::string, Span> out;
    std::size_t i = 0;
    while (i < s.text.size()) {
      std::size_t j = s.text.find(',', i);
      if (j == std::string_view::npos) j = s.text.size();
      Span item = s.sub(i, j - i);
      const auto eq = item.text.find('=');
      if (eq == std::string_view::npos || eq == 0) fail(item.offset, "expected key=value");
      const std::string key(item.text.substr(0, eq));
      bool ok = false;
      for (auto a : allowed) ok |= (a == key);
      if (!ok) fail(item.offset, "unknown parameter '" + key + "'");
      if (out.count(key)) fail(item.offset, "duplicate parameter '" + key + "'");
      out[key] = item.sub(eq + 1);
      i = j + 1;
      if (j + 1 == s.text.size()) fail(s.offset + j, "trailing comma");
    }
    return out;
  }

  double real(Span s) const {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.text.data(), s.text.data() + s.text.size(), v);
    if (ec != std::errc() || s.text.empty()) fail(s.offset, "expected a number");
    if (p != s.text.data() + s.text.size()) fail(s.offset + std::size_t(p - s.text.data()), "unexpected character");
    return v;
  }

  std::int64_t integer(Span s) const {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(s.text.data(), s.text.data() + s.text.size(), v);
    if (ec != std::errc() || s.text.empty()) fail(s.offset, "expected an integer");
    if (p != s.text.data() + s.text.size()) fail(s.offset + std::size_t(p - s.text.data()), "unexpected character");
    return v;
  }

  void no_args(Span name, Span rest) const {
    if (!rest.text.empty()) fail(rest.offset, "'" + std::string(name.text) + "' takes no parameters");
  }

  // split "a*b" at the first '*'
  std::pair<Span, Span> star(Span s) const {
    const auto p = s.text.find('*');
    if (p == std::string_view::npos) fail(s.offset + s.text.size(), "expected '*' between tensor factors");
    if (p == 0) fail(s.offset, "empty tensor factor");
    if (p + 1 == s.text.size()) fail(s.offset + p + 1, "empty tensor factor");
    return {s.sub(0, p), s.sub(p + 1)};
  }

  template <class F>
  auto guarded(Span s, F&& f) const {
    try {
      return f();
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::io_error) throw;
      fail(s.offset, e.what());
    }
  }

  WeightFamily weight(Span s) const {
    auto [name, rest] = head(s);
    if (name.text == "gk") {
      auto p = params(rest, {"k"});
      if (!p.count("k")) fail(rest.offset, "gk needs k=<int>");
      const auto k = integer(p["k"]);
      if (k < 0 || k > 16) fail(p["k"].offset, "k must be in 0..16");
      return weight_gk(int(k));
    }
    if (name.text == "psi") {
      auto p = params(rest, {"n"});
      if (!p.count("n")) fail(rest.offset, "psi needs n=<int>");
      const auto n = integer(p["n"]);
      if (n < 1 || n > 3) fail(p["n"].offset, "n must be in 1..3");
      return weight_psi(int(n));
    }
    if (name.text == "invlog") {
      no_args(name, rest);
      return weight_invlog();
    }
    fail(s.offset, "unknown weight '" + std::string(name.text) + "'");
  }

  BoundedSequence bounded(Span s) const {
    auto [name, rest] = head(s);
    if (name.text == "one") return no_args(name, rest), bounded_one();
    if (name.text == "alternating") return no_args(name, rest), bounded_alternating();
    if (name.text == "const") {
      auto p = params(rest, {"c"});
      if (!p.count("c")) fail(rest.offset, "const needs c=<real>");
      return bounded_const(real(p["c"]));
    }
    if (name.text == "phase") {
      auto p = params(rest, {"q"});
      if (!p.count("q")) fail(rest.offset, "phase needs q=<int>");
      const auto q = integer(p["q"]);
      if (q < 1 || q > 1000000) fail(p["q"].offset, "q must be in 1..1000000");
      return bounded_phase(int(q));
    }
    if (name.text == "indicator") {
      auto p = params(rest, {"i"});
      if (!p.count("i")) fail(rest.offset, "indicator needs i=<int>");
      const auto i = integer(p["i"]);
      if (i < 0) fail(p["i"].offset, "i must be >= 0");
      return bounded_indicator(std::uint64_t(i));
    }
    if (name.text == "file") {
      if (rest.text.empty()) fail(rest.offset, "file needs a path");
      auto seq = seq_from_file(std::string(rest.text));
      std::vector<cplx> vals = materialize(seq, *seq.extent);
      return bounded_values(std::move(vals), "file:" + std::string(rest.text));
    }
    fail(s.offset, "unknown bounded sequence '" + std::string(name.text) + "'");
  }

  FractalString fractal(Span s, const ParseContext& ctx) const {
    auto [name, rest] = head(s);
    if (name.text == "cantor") {
      auto p = params(rest, {"depth"});
      std::uint64_t depth = 60;
      if (p.count("depth")) {
        const auto d = integer(p["depth"]);
        if (d < 1 || d > 1000) fail(p["depth"].offset, "depth must be in 1..1000");
        depth = std::uint64_t(d);
      }
      return cantor_string(depth);
    }
    if (name.text == "lacunary") {
      auto p = params(rest, {"b", "depth"});
      const double b = p.count("b") ? real(p["b"]) : 3.0;
      if (!(b > 1.0)) fail(p["b"].offset, "b must be > 1");
      std::uint64_t depth = 60;
      if (p.count("depth")) depth = std::uint64_t(std::max<std::int64_t>(1, integer(p["depth"])));
      return lacunary_string(b, depth);
    }
    if (name.text == "interval") {
      auto p = params(rest, {"l"});
      const double l = p.count("l") ? real(p["l"]) : 1.0;
      if (!(l > 0.0)) fail(p["l"].offset, "l must be > 0");
      return interval_string(l);
    }
    if (name.text == "tensor") {
      auto [a, b] = star(rest);
      auto A = fractal(a, ctx);
      auto B = fractal(b, ctx);
      return guarded(s, [&] { return string_tensor(A, B, ctx.string_terms); });
    }
    fail(s.offset, "unknown string '" + std::string(name.text) + "'");
  }

  SpectralSequence sequence(Span s, const ParseContext& ctx) const {
    auto [name, rest] = head(s);
    if (name.text == "zero") return no_args(name, rest), seq_zero();
    if (name.text == "harmonic") return no_args(name, rest), seq_harmonic();
    if (name.text == "gk" || name.text == "psi" || name.text == "invlog") return seq_weight_diagonal(weight(s));
    if (name.text == "oscillating") {
      auto p = params(rest, {"amp", "scale"});
      const double amp = p.count("amp") ? real(p["amp"]) : 1.0;
      if (!(amp >= 0.0 && amp <= 1.0)) fail(p["amp"].offset, "amp must be in [0,1]");
      if (p.count("scale") && p["scale"].text != "loglog") fail(p["scale"].offset, "only scale=loglog is supported");
      return seq_oscillating(amp);
    }
    if (name.text == "file") {
      if (rest.text.empty()) fail(rest.offset, "file needs a path");
      return seq_from_file(std::string(rest.text));
    }
    if (name.text == "pietsch") {
      const auto at = rest.text.rfind('@');
      if (at == std::string_view::npos) return pietsch_operator(bounded(rest), ctx.pietsch_weight);
      return pietsch_operator(bounded(rest.sub(0, at)), weight(rest.sub(at + 1)));
    }
    if (name.text == "tensor") {
      auto [a, b] = star(rest);
      auto A = sequence(a, ctx);
      auto B = sequence(b, ctx);
      return guarded(s, [&] { return seq_tensor(A, B, ctx.tensor_terms); });
    }
    if (name.text == "string") {
      auto L = fractal(rest, ctx);
      return string_lengths(L);
    }
    if (name.text == "power") {
      const auto comma = rest.text.find(',');
      if (comma == std::string_view::npos) fail(rest.offset + rest.text.size(), "power needs d=<real>,<string>");
      auto p = params(rest.sub(0, comma), {"d"});
      if (!p.count("d")) fail(rest.offset, "power needs d=<real>");
      const double d = real(p["d"]);
      if (!(d > 0.0 && d <= 1.0)) fail(p["d"].offset, "d must be in (0,1]");
      auto L = fractal(rest.sub(comma + 1), ctx);
      return guarded(s, [&] { return string_power_spectrum(L, d, ctx.tensor_terms); });
    }
    fail(s.offset, "unknown sequence '" + std::string(name.text) + "'");
  }

 private:
  std::string input_;
};

}  // namespace detail

inline WeightFamily parse_weight(const std::string& spec) {
  detail::Parser p(spec);
  return p.weight(p.all());
}

inline BoundedSequence parse_bounded(const std::string& spec) {
  detail::Parser p(spec);
  return p.bounded(p.all());
}

inline FractalString parse_string(const std::string& spec, const ParseContext& ctx = {}) {
  detail::Parser p(spec);
  return p.fractal(p.all(), ctx);
}

inline SpectralSequence parse_sequence(const std::string& spec, const ParseContext& ctx = {}) {
  detail::Parser p(spec);
  return p.sequence(p.all(), ctx);
}

}  // namespace dixlab
