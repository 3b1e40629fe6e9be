#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "dixlab/dixlab.hpp"

using namespace dixlab;

namespace {

// one CSV row: series name, parameter, value (complex split in two columns)
struct Row {
  std::string series;
  double param = 0.0;
  cplx value = 0.0;
};

struct Output {
  json result;
  std::vector<Row> rows;
  std::vector<std::pair<std::string, std::string>> summary;  // table headline
  int status = 0;
};

struct Common {
  std::string format = "json";
  std::string out;
  bool parallel = true;
  double tol = 1e-2;
};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

std::string fmt(cplx z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? " - " : " + ") + fmt(std::abs(z.imag())) + "i";
}

void add_limit_rows(Output& o, const std::string& series, const LimitEstimate& e) {
  for (auto& [x, y] : e.checkpoints) o.rows.push_back({series, x, y});
}

int status_of(Verdict v) { return v == Verdict::diverged_range ? 2 : 0; }

std::string render(const std::string& command, const json& config, const Output& o, const std::string& format) {
  std::ostringstream s;
  if (format == "json") {
    s << report::envelope(command, config, o.result).dump(2) << "\n";
  } else if (format == "csv") {
    s << "series,parameter,value,imag\n";
    s << std::setprecision(17);
    for (auto& r : o.rows) s << r.series << "," << r.param << "," << r.value.real() << "," << r.value.imag() << "\n";
  } else {
    std::size_t w = 0;
    for (auto& [k, v] : o.summary) w = std::max(w, k.size());
    s << "dixlab " << kToolVersion << "  " << command << "\n";
    for (auto& [k, v] : o.summary) s << "  " << std::left << std::setw(int(w)) << k << "  " << v << "\n";
  }
  return s.str();
}

void write_out(const std::string& command, const Common& c, const json& config, const Output& o) {
  const std::string text = render(command, config, o, c.format);
  std::string path = c.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("DIXLAB_OUTPUT_DIR"); dir && *dir) {
      const std::string ext = c.format == "table" ? "txt" : c.format;
      path = (std::filesystem::path(dir) / (command + "." + ext)).string();
    }
  }
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::io_error, "cannot write " + path);
  f << text;
}

json common_config(const Common& c) {
  return json{{"format", c.format}, {"tol", c.tol}, {"parallel", c.parallel}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dixlab: Dixmier traces, zeta residues and fractal-string spectra"};
  app.set_version_flag("--version", std::string("dixlab ") + kToolVersion);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--out", common.out, "output file (default: $DIXLAB_OUTPUT_DIR/<command>.<ext> or stdout)");
    sub->add_option("--tol", common.tol, "relative tolerance for verdicts")->check(CLI::PositiveNumber);
    sub->add_flag("--parallel,!--serial", common.parallel, "parallel summation (results are identical)");
  };

  // trace
  std::string seq = "harmonic", weight = "gk:k=0", vspec = "one";
  int m_min = 4, m_max = 24;
  auto* trace = app.add_subcommand("trace", "normalized partial sums, Dixmier interval and measurability");
  trace->add_option("--seq", seq, "sequence spec")->required();
  trace->add_option("--weight", weight, "weight spec");
  trace->add_option("--m-min", m_min)->check(CLI::Range(1, 40));
  trace->add_option("--m-max", m_max)->check(CLI::Range(2, 40));
  add_common(trace);

  // zeta
  int t_min = 6, t_max = 14;
  std::string zv;
  auto* zeta = app.add_subcommand("zeta", "normalized zeta residue Tr(V T^{1+1/t}) / G(e^t)");
  zeta->add_option("--seq", seq)->required();
  zeta->add_option("--v", zv, "bounded multiplier spec (default: none)");
  zeta->add_option("--weight", weight);
  zeta->add_option("--t-min", t_min)->check(CLI::Range(1, 30));
  zeta->add_option("--t-max", t_max)->check(CLI::Range(1, 30));
  add_common(zeta);

  // abel
  int r_min = 2, r_max = 14;
  auto* abel = app.add_subcommand("abel", "Abel means of dyadic block sums");
  abel->add_option("--seq", seq)->required();
  abel->add_option("--weight", weight);
  abel->add_option("--r-min", r_min)->check(CLI::Range(1, 40));
  abel->add_option("--r-max", r_max)->check(CLI::Range(1, 40));
  add_common(abel);

  // equivalence
  int k = 0;
  auto* equiv = app.add_subcommand("equivalence", "partial-sum, Abel and zeta criteria side by side");
  equiv->add_option("--v", vspec, "bounded multiplier spec");
  equiv->add_option("--seq", seq)->required();
  equiv->add_option("--k", k)->check(CLI::Range(0, 16));
  equiv->add_option("--m-min", m_min)->check(CLI::Range(1, 40));
  equiv->add_option("--m-max", m_max)->check(CLI::Range(2, 40));
  add_common(equiv);

  // tensor
  std::string ta = "harmonic", tb = "harmonic";
  std::uint64_t terms = 1u << 22;
  std::string tweight = "gk:k=1";
  auto* tensor = app.add_subcommand("tensor", "top singular values of A (x) B and their normalized partial sums");
  tensor->add_option("--a", ta, "first factor spec");
  tensor->add_option("--b", tb, "second factor spec");
  tensor->add_option("--n", terms, "number of products")->check(CLI::Range(std::uint64_t{16}, std::uint64_t{1} << 26));
  tensor->add_option("--weight", tweight);
  add_common(tensor);

  // fractal
  std::string sspec = "cantor", op = "zeta";
  double s_re = 2.0, s_im = 0.0, d = std::log(2.0) / std::log(3.0);
  std::uint64_t count = 16;
  auto* fractal = app.add_subcommand("fractal", "fractal-string zeta functions and spectra");
  fractal->add_option("--string", sspec, "string spec")->required();
  fractal->add_option("--op", op, "zeta, direct, spectral, spectral-direct, lengths, power, pole")
      ->check(CLI::IsMember({"zeta", "direct", "spectral", "spectral-direct", "lengths", "power", "pole"}));
  fractal->add_option("--s", s_re, "real part of s");
  fractal->add_option("--s-im", s_im, "imaginary part of s");
  fractal->add_option("--d", d, "exponent for --op power");
  fractal->add_option("--count", count, "number of lengths or spectral values to list");
  add_common(fractal);

  // laplacian
  int dim = 2;
  bool with_dixmier = false;
  int pm_min = 10, pm_max = 20;
  auto* lap = app.add_subcommand("laplacian", "counting-asymptotic Laplacian model: partition function and zeta");
  lap->add_option("--n", dim, "dimension (>= 2)");
  lap->add_option("--m-min", pm_min)->check(CLI::Range(1, 60));
  lap->add_option("--m-max", pm_max)->check(CLI::Range(1, 60));
  lap->add_flag("--dixmier", with_dixmier, "also compute the Dixmier value under G_{n-1}");
  add_common(lap);

  // weyl-fuzz
  std::size_t fuzz = 200;
  std::vector<std::size_t> orders{4, 8, 16, 32};
  std::uint64_t seed = 0x5eed;
  auto* weyl = app.add_subcommand("weyl-fuzz", "Weyl inequality on random upper-triangular matrices");
  weyl->add_option("--count", fuzz, "instances per order");
  weyl->add_option("--orders", orders, "matrix orders (<= 64)")->delimiter(',');
  weyl->add_option("--seed", seed, "base seed");
  add_common(weyl);

  // zoo-check
  double zoo_x = 1048576.0;
  auto* zoo = app.add_subcommand("zoo-check", "weight invariants and Banach-surrogate shift checks over the zoo");
  zoo->add_option("--x", zoo_x, "invariants are checked at t = e^x");
  add_common(zoo);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    json config = common_config(common);
    Output o;
    ParseContext ctx;
    if (command == "trace") {
      if (m_min + 2 > m_max) throw Error(ErrorCode::invalid_argument, "grid needs m_max >= m_min + 2");
      config.update(json{{"seq", seq}, {"weight", weight}, {"m_min", m_min}, {"m_max", m_max}});
      auto w = parse_weight(weight);
      ctx.pietsch_weight = w;
      auto lambda = parse_sequence(seq, ctx);
      auto r = build_trace_report(lambda, w, Grid{m_min, m_max}, common.tol, common.parallel);
      o.result = report::trace(r);
      add_limit_rows(o, "partial_sum_ratio", r.partial_sum_estimate.re);
      if (!r.partial_sum_estimate.is_real()) add_limit_rows(o, "partial_sum_ratio_im", r.partial_sum_estimate.im);
      o.summary = {{"sequence", r.sequence},
                   {"weight", w.descriptor},
                   {"verdict", to_string(r.measurable)},
                   {"value", r.value ? fmt(*r.value) : "-"},
                   {"interval", "[" + fmt(r.interval.inf) + ", " + fmt(r.interval.sup) + "]"}};
      o.status = status_of(r.measurable);
    } else if (command == "zeta") {
      if (t_min + 2 > t_max) throw Error(ErrorCode::invalid_argument, "grid needs t_max >= t_min + 2");
      config.update(json{{"seq", seq}, {"v", zv.empty() ? json(nullptr) : json(zv)}, {"weight", weight},
                         {"t_min", t_min}, {"t_max", t_max}});
      auto w = parse_weight(weight);
      ctx.pietsch_weight = w;
      auto mu = parse_sequence(seq, ctx);
      std::optional<BoundedSequence> v;
      if (!zv.empty()) v = parse_bounded(zv);
      auto r = residue_estimate(mu, v, w, t_grid(t_min, t_max), 1e-6, common.tol, common.parallel);
      o.result = report::residue(r);
      for (auto& z : r.samples) o.rows.push_back({"normalized_zeta", z.t, z.normalized});
      o.summary = {{"sequence", mu.descriptor},
                   {"weight", w.descriptor},
                   {"verdict", to_string(r.estimate.verdict())},
                   {"residue", fmt(r.estimate.value())}};
      o.status = status_of(r.estimate.verdict());
    } else if (command == "abel") {
      if (r_min + 2 > r_max) throw Error(ErrorCode::invalid_argument, "grid needs r_max >= r_min + 2");
      config.update(json{{"seq", seq}, {"weight", weight}, {"r_min", r_min}, {"r_max", r_max}});
      auto w = parse_weight(weight);
      ctx.pietsch_weight = w;
      auto lambda = parse_sequence(seq, ctx);
      auto rs = r_grid(r_min, r_max);
      auto prof = abel_profile(lambda, w, rs, 24, common.parallel);
      auto scan = abel_scan(prof, w, rs, common.tol);
      o.result = report::abel(scan);
      for (auto& s : scan.samples) o.rows.push_back({"abel_mean", s.r, s.value});
      o.summary = {{"sequence", lambda.descriptor},
                   {"weight", w.descriptor},
                   {"verdict", to_string(scan.estimate.verdict())},
                   {"value", fmt(scan.estimate.value())},
                   {"window width", fmt(scan.estimate.re.width())}};
      o.status = status_of(scan.estimate.verdict());
    } else if (command == "equivalence") {
      if (m_min + 2 > m_max) throw Error(ErrorCode::invalid_argument, "grid needs m_max >= m_min + 2");
      config.update(json{{"v", vspec}, {"seq", seq}, {"k", k}, {"m_min", m_min}, {"m_max", m_max}});
      ctx.pietsch_weight = weight_gk(k);
      auto v = parse_bounded(vspec);
      auto mu = parse_sequence(seq, ctx);
      EquivalenceOptions eo;
      eo.grid = Grid{m_min, m_max};
      eo.tol = common.tol;
      eo.parallel = common.parallel;
      auto r = equivalence_report(v, mu, k, eo);
      o.result = report::equivalence(r);
      const std::pair<const char*, const CriterionResult*> crit[] = {
          {"partial_sum", &r.partial_sum}, {"abel", &r.abel}, {"zeta", &r.zeta}};
      for (auto& [name, c] : crit) {
        if (c->estimate) add_limit_rows(o, name, c->estimate->re);
        o.summary.push_back({name, c->error.empty() ? fmt(c->scaled_value) + " (" + to_string(c->verdict) + ")" : c->error});
        if (c->verdict == Verdict::diverged_range) o.status = 2;
      }
      o.summary.push_back({"consistent", r.consistent ? "yes" : "no"});
      o.summary.push_back({"contradiction", r.contradiction ? "yes" : "no"});
    } else if (command == "tensor") {
      config.update(json{{"a", ta}, {"b", tb}, {"n", terms}, {"weight", tweight}});
      auto w = parse_weight(tweight);
      auto A = parse_sequence(ta, ctx);
      auto B = parse_sequence(tb, ctx);
      auto T = seq_tensor(A, B, terms);
      const int mm = int(std::bit_width(terms)) - 1;
      auto est = partial_sum_ratios(T, w, Grid{std::min(4, mm - 2), mm}, common.tol, common.parallel);
      const bool sandwich = tensor_sandwich_check(T, std::min<std::uint64_t>(terms, 1u << 16));
      o.result = json{{"descriptor", T.descriptor},
                      {"terms", terms},
                      {"top", report::num(T(0).real())},
                      {"partial_sums", report::limit(est)},
                      {"sandwich_holds", sandwich}};
      add_limit_rows(o, "partial_sum_ratio", est.re);
      o.summary = {{"tensor", T.descriptor},
                   {"ratio", fmt(est.value())},
                   {"raw last", est.re.checkpoints.empty() ? "-" : fmt(est.re.checkpoints.back().second)},
                   {"verdict", to_string(est.verdict())}};
      o.status = status_of(est.verdict());
    } else if (command == "fractal") {
      config.update(json{{"string", sspec}, {"op", op}, {"s", json{{"re", s_re}, {"im", s_im}}}, {"d", d}, {"count", count}});
      auto L = parse_string(sspec, ctx);
      const cplx s{s_re, s_im};
      json res{{"string", L.descriptor},
               {"abscissa", report::num(L.abscissa)},
               {"total_length", L.total_length ? report::num(*L.total_length) : json(nullptr)}};
      if (op == "zeta" || op == "direct" || op == "spectral" || op == "spectral-direct") {
        StringZeta z;
        if (op == "zeta") z = geometric_zeta(L, s);
        else if (op == "direct") z = geometric_zeta_direct(L, s);
        else if (op == "spectral") z = spectral_zeta(L, s);
        else {
          if (s_im != 0.0) throw Error(ErrorCode::invalid_argument, "spectral-direct needs real s");
          z = spectral_zeta_direct(L, s_re);
        }
        res["zeta"] = report::string_zeta(z);
        o.rows.push_back({op, s_re, z.value});
        o.summary = {{"string", L.descriptor}, {op + "(s)", fmt(z.value)}, {"tail bound", fmt(z.tail_bound)}};
      } else if (op == "pole") {
        const cplx den = closed_denominator(L, s);
        res["denominator"] = report::num(den);
        o.rows.push_back({"denominator", s_re, den});
        o.summary = {{"string", L.descriptor}, {"denominator", fmt(den)}};
      } else if (op == "lengths") {
        auto v = string_prefix(L, count);
        json a = json::array();
        for (std::size_t i = 0; i < v.size(); ++i) {
          a.push_back(report::num(v[i]));
          o.rows.push_back({"length", double(i), v[i]});
        }
        res["lengths"] = a;
        o.summary = {{"string", L.descriptor}, {"lengths", std::to_string(v.size())}};
      } else {
        auto P = string_power_spectrum(L, d, count);
        json a = json::array();
        for (std::uint64_t i = 0; i < count; ++i) {
          a.push_back(report::num(P(i).real()));
          o.rows.push_back({"power", double(i), P(i)});
        }
        res["values"] = a;
        o.summary = {{"spectrum", P.descriptor}, {"top", fmt(P(0).real())}};
      }
      o.result = res;
    } else if (command == "laplacian") {
      config.update(json{{"n", dim}, {"m_min", pm_min}, {"m_max", pm_max}, {"dixmier", with_dixmier}});
      auto model = counting_asymptotic_model(dim);
      auto r = counting_to_partition_check(model, partition_t_grid(pm_min, pm_max), residue_s_grid(), common.tol * 5.0);
      o.result = report::counting(r);
      for (auto& p : r.partition) o.rows.push_back({"partition_ratio", p.t, p.ratio});
      for (auto& z : r.zeta) o.rows.push_back({"zeta_normalized", z.s, z.normalized});
      o.summary = {{"C_n", fmt(r.C)},
                   {"partition limit", fmt(r.partition_limit.value())},
                   {"zeta limit", fmt(r.zeta_limit.value())}};
      if (with_dixmier) {
        auto dx = laplacian_dixmier(model, Grid{}, common.tol, common.parallel);
        o.result["dixmier"] = report::limit(dx);
        o.summary.push_back({"dixmier", fmt(dx.value())});
      }
    } else if (command == "weyl-fuzz") {
      config.update(json{{"count", fuzz}, {"orders", orders}, {"seed", seed}});
      for (auto n : orders)
        if (n < 1 || n > kMaxOrder) throw Error(ErrorCode::invalid_argument, "orders must be in 1..64");
      auto r = weyl_fuzz(fuzz, orders, seed);
      o.result = report::weyl(r);
      o.rows.push_back({"violations", double(r.instances), double(r.violations)});
      o.summary = {{"instances", std::to_string(r.instances)}, {"violations", std::to_string(r.violations)}};
      if (r.violations) o.status = 1;
    } else if (command == "zoo-check") {
      config.update(json{{"x", zoo_x}});
      json ws = json::array();
      std::size_t failed = 0;
      for (auto& w : weight_zoo()) {
        auto inv = check_weight_invariants(w, zoo_x, common.tol);
        ws.push_back(report::invariants(w.descriptor, inv));
        o.rows.push_back({w.descriptor, zoo_x, inv.worst});
        o.summary.push_back({w.descriptor, fmt(inv.worst) + (inv.passed ? "  ok" : "  above tolerance")});
        if (!inv.passed) ++failed;
      }
      json shifts = json::array();
      const std::vector<BoundedSequence> zoo_seq{bounded_one(), bounded_alternating(), bounded_phase(3),
                                                 bounded_const(0.5), bounded_indicator(5)};
      for (int kk = 0; kk <= 2; ++kk) {
        auto w = weight_gk(kk);
        for (auto& x : zoo_seq) {
          const double t = 16384.0;
          const cplx a = banach_mean_integrand(x, w, t).value;
          const cplx b = banach_mean_integrand(bounded_shift(x), w, t).value;
          shifts.push_back(json{{"weight", w.descriptor}, {"x", x.descriptor}, {"diff", report::num(std::abs(a - b))}});
        }
      }
      o.result = json{{"weights", ws}, {"shift", shifts}, {"failed", failed}};
      o.summary.push_back({"failed", std::to_string(failed)});
    }
    write_out(command, common, config, o);
    return o.status;
  } catch (const Error& e) {
    std::cerr << "dixlab " << command << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "dixlab " << command << ": " << e.what() << "\n";
    return 1;
  }
}
