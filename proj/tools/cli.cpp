#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "shilov/domain.hpp"
#include "shilov/errors.hpp"
#include "shilov/geometry.hpp"
#include "shilov/kernel.hpp"
#include "shilov/report.hpp"
#include "shilov/sampling.hpp"
#include "shilov/surface.hpp"

namespace shilov::cli {

namespace {

using nlohmann::json;

std::string fd(double v) { return format_double(v); }

// --- algebra descriptors ---------------------------------------------------

AlgebraPtr parse_desc(const json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw ParseError("algebra descriptor needs a \"kind\" field");
  const std::string kind = j.at("kind").get<std::string>();
  const json params = j.value("params", json::object());
  if (kind == "real") return Algebra::real_line();
  if (kind == "sym") return Algebra::sym(params.at("r").get<int>());
  if (kind == "spin") return Algebra::spin(params.at("n").get<int>());
  if (kind == "sum") {
    std::vector<AlgebraPtr> parts;
    for (const json& p : params.at("parts")) parts.push_back(parse_desc(p));
    return Algebra::direct_sum(std::move(parts));
  }
  throw ParseError("unknown algebra kind \"" + kind + "\"");
}

int parse_int_tail(const std::string& s, std::size_t from) {
  if (from >= s.size()) throw ParseError("missing integer in \"" + s + "\"");
  std::size_t used = 0;
  int v;
  try {
    v = std::stoi(s.substr(from), &used);
  } catch (const std::exception&) {
    throw ParseError("bad integer in \"" + s + "\"");
  }
  if (from + used != s.size())
    throw ParseError("trailing characters in \"" + s + "\"");
  return v;
}

AlgebraPtr parse_shorthand(const std::string& s) {
  if (s == "r") return Algebra::real_line();
  if (s.rfind("r^", 0) == 0) return Algebra::polydisc(parse_int_tail(s, 2));
  if (s.rfind("sym", 0) == 0) return Algebra::sym(parse_int_tail(s, 3));
  if (s.rfind("spin", 0) == 0) return Algebra::spin(parse_int_tail(s, 4));
  if (s.rfind("sum(", 0) == 0 && s.back() == ')') {
    std::vector<AlgebraPtr> parts;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 4; i + 1 < s.size(); ++i) {
      const char c = s[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (c == ',' && depth == 0) {
        parts.push_back(parse_shorthand(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    if (cur.empty()) throw ParseError("empty part in \"" + s + "\"");
    parts.push_back(parse_shorthand(cur));
    return Algebra::direct_sum(std::move(parts));
  }
  throw ParseError("cannot parse algebra \"" + s +
                   "\" (expected r, r^k, sym<r>, spin<n>, sum(...), or JSON)");
}

std::string strip_spaces(const std::string& text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

std::string basis_description(const AlgebraPtr& a) {
  switch (a->kind()) {
    case Kind::RealLine:
      return "the unit scalar";
    case Kind::Sym:
      return "diagonal units E_ii, then (E_ij+E_ji)/sqrt(2) for i<j";
    case Kind::Spin:
      return "sqrt(2) times the unit axis, then sqrt(2) times the vector axes";
    case Kind::DirectSum: {
      std::string out = "concatenated part bases:";
      for (const auto& p : a->parts()) out += " " + p->name();
      return out;
    }
  }
  return "?";
}

}  // namespace

AlgebraPtr parse_algebra(const std::string& text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty algebra descriptor");
  if (s.front() == '{') {
    try {
      return parse_desc(json::parse(s));
    } catch (const json::exception& e) {
      throw ParseError(std::string("bad algebra JSON: ") + e.what());
    }
  }
  return parse_shorthand(s);
}

std::string algebra_desc_json(const AlgebraPtr& a) {
  switch (a->kind()) {
    case Kind::RealLine:
      return R"({"kind":"real","params":{}})";
    case Kind::Sym:
      return R"({"kind":"sym","params":{"r":)" + std::to_string(a->order()) +
             "}}";
    case Kind::Spin:
      return R"({"kind":"spin","params":{"n":)" + std::to_string(a->order()) +
             "}}";
    case Kind::DirectSum: {
      std::string out = R"({"kind":"sum","params":{"parts":[)";
      for (std::size_t i = 0; i < a->parts().size(); ++i) {
        if (i) out += ',';
        out += algebra_desc_json(a->parts()[i]);
      }
      return out + "]}}";
    }
  }
  throw Error("unreachable algebra kind");
}

namespace {

// --- point input -----------------------------------------------------------

Eigen::VectorXd parse_vector(const json& j, int dim, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != dim)
    throw ParseError(std::string(what) + " must be an array of length " +
                     std::to_string(dim));
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v[i] = j[i].get<double>();
  return v;
}

CElem parse_celem(const AlgebraPtr& a, const json& j) {
  if (!j.is_object() || !j.contains("re") || !j.contains("im"))
    throw ParseError("each point needs \"re\" and \"im\" coordinate arrays");
  return CElem{from_coords(a, parse_vector(j["re"], a->dim(), "re")),
               from_coords(a, parse_vector(j["im"], a->dim(), "im"))};
}

std::vector<ShilovPt> parse_points(const AlgebraPtr& a, const std::string& raw,
                                   std::size_t expected) {
  json j;
  try {
    j = json::parse(raw);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad points JSON: ") + e.what());
  }
  if (j.is_object() && j.contains("points")) j = j["points"];
  if (!j.is_array() || j.size() != expected)
    throw ParseError("expected an array of " + std::to_string(expected) +
                     " points");
  std::vector<ShilovPt> out;
  out.reserve(expected);
  for (const json& p : j) out.emplace_back(parse_celem(a, p));
  return out;
}

// --- report plumbing -------------------------------------------------------

struct SuiteRow {
  std::string name;
  int trials = 0;
  int skipped = 0;
  double max_residual = 0.0;
  int exact_mismatches = 0;
  bool pass = false;
};

std::string rows_json(const std::string& command, const AlgebraPtr& alg,
                      std::uint64_t seed, int n, double tol,
                      const std::vector<SuiteRow>& rows, bool pass) {
  std::string out = R"({"schema":1,"command":")" + command +
                    R"(","algebra":)" + algebra_desc_json(alg) +
                    ",\"seed\":" + std::to_string(seed) +
                    ",\"n\":" + std::to_string(n) + ",\"tol\":" + fd(tol) +
                    ",\"results\":[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SuiteRow& r = rows[i];
    if (i) out += ',';
    out += R"({"name":")" + r.name +
           "\",\"trials\":" + std::to_string(r.trials) +
           ",\"skipped\":" + std::to_string(r.skipped) +
           ",\"max_residual\":" + fd(r.max_residual) +
           ",\"exact_mismatches\":" + std::to_string(r.exact_mismatches) +
           ",\"pass\":" + (r.pass ? "true" : "false") + "}";
  }
  out += "],\"pass\":";
  out += pass ? "true" : "false";
  out += "}\n";
  return out;
}

std::string rows_csv(const std::vector<SuiteRow>& rows) {
  std::string out = "name,trials,skipped,max_residual,exact_mismatches,pass\n";
  for (const SuiteRow& r : rows) {
    out += r.name + ',' + std::to_string(r.trials) + ',' +
           std::to_string(r.skipped) + ',' + fd(r.max_residual) + ',' +
           std::to_string(r.exact_mismatches) + ',' +
           (r.pass ? "true" : "false") + '\n';
  }
  return out;
}

// Shared flags for the sampling suites.
struct SuiteConfig {
  std::string algebra;
  std::uint64_t seed = 0;
  int n = 200;
  double tol = 1e-8;
  std::string out;
  std::string format = "json";
};

void add_suite_flags(CLI::App* cmd, SuiteConfig& cfg) {
  cmd->add_option("--algebra", cfg.algebra, "algebra (shorthand or JSON)")
      ->required();
  cmd->add_option("--seed", cfg.seed, "RNG seed")->required();
  cmd->add_option("--n", cfg.n, "number of sampled configurations")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol", cfg.tol, "pass tolerance");
  cmd->add_option("--out", cfg.out, "write the report to this path");
  cmd->add_option("--format", cfg.format, "report file format")
      ->check(CLI::IsMember({"json", "csv"}));
}

int finish_suite(const std::string& command, const SuiteConfig& cfg,
                 const AlgebraPtr& alg, const std::vector<SuiteRow>& rows) {
  bool pass = true;
  bool skip_fatal = false;
  for (const SuiteRow& r : rows) {
    pass = pass && r.pass;
    if (r.trials > 0 && r.skipped > r.trials / 10) skip_fatal = true;
  }
  const std::string body =
      rows_json(command, alg, cfg.seed, cfg.n, cfg.tol, rows, pass);
  if (!cfg.out.empty())
    write_file_atomic(cfg.out, cfg.format == "csv" ? rows_csv(rows) : body);
  std::cout << body;
  if (skip_fatal) {
    std::cerr << "error: more than 10% of configurations were skipped\n";
    return kExitNumerical;
  }
  return pass ? kExitOk : kExitSuiteFail;
}

double rel_gap(double base, double other) {
  return std::abs(base - other) / std::max(1.0, std::abs(base));
}

// --- suite bodies ----------------------------------------------------------

int run_suite_invariance(const SuiteConfig& cfg) {
  const AlgebraPtr alg = parse_algebra(cfg.algebra);
  std::vector<SuiteRow> rows;
  const std::pair<Quantity, const char*> quantities[] = {
      {Quantity::CrossRatio, "cross_ratio"},
      {Quantity::Maslov, "maslov"},
      {Quantity::Transversal, "transversal"}};
  for (const auto& [q, name] : quantities) {
    const InvarianceReport r =
        invariance_suite(alg, q, cfg.n, /*n_configs=*/1, cfg.seed);
    SuiteRow row{name, r.trials, r.skipped, r.max_deviation,
                 r.exact_mismatches, false};
    row.pass = r.exact_mismatches == 0 && r.max_deviation <= cfg.tol;
    rows.push_back(row);
  }
  return finish_suite("suite invariance", cfg, alg, rows);
}

int run_suite_cocycle(const SuiteConfig& cfg) {
  const AlgebraPtr alg = parse_algebra(cfg.algebra);
  SuiteRow flip{"flip", 0, 0, 0.0, 0, false};
  SuiteRow last{"insert_last", 0, 0, 0.0, 0, false};
  SuiteRow first{"insert_first", 0, 0, 0.0, 0, false};
  SuiteRow swp{"swap_pairs", 0, 0, 0.0, 0, false};
  for (int i = 0; i < cfg.n; ++i) {
    Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(i));
    std::vector<ShilovPt> p;
    try {
      p = sample_cyclic_tuple(alg, rng, 5);
    } catch (const BudgetExhausted&) {
      for (SuiteRow* r : {&flip, &last, &first, &swp}) {
        ++r->trials;
        ++r->skipped;
      }
      continue;
    }
    const ShilovPt &a = p[0], &b = p[1], &c = p[2], &d = p[3], &e = p[4];
    const double base = cross_ratio(a, b, c, d);
    flip.max_residual =
        std::max(flip.max_residual, rel_gap(base, cross_ratio(c, d, a, b)));
    last.max_residual = std::max(
        last.max_residual,
        rel_gap(base, cross_ratio(a, b, c, e) * cross_ratio(a, e, c, d)));
    first.max_residual = std::max(
        first.max_residual,
        rel_gap(base, cross_ratio(a, b, e, d) * cross_ratio(e, b, c, d)));
    swp.max_residual =
        std::max(swp.max_residual, rel_gap(base, cross_ratio(b, a, d, c)));
    for (SuiteRow* r : {&flip, &last, &first, &swp}) ++r->trials;
  }
  std::vector<SuiteRow> rows{flip, last, first, swp};
  for (SuiteRow& r : rows) r.pass = r.max_residual <= cfg.tol;
  return finish_suite("suite cocycle", cfg, alg, rows);
}

int run_suite_functorial(const SuiteConfig& cfg) {
  const AlgebraPtr alg = parse_algebra(cfg.algebra);
  const AlgebraPtr line = Algebra::real_line();
  const AlgebraPtr poly = Algebra::polydisc(alg->rank());
  const BalancedHom hs = scalar_hom(alg);
  const BalancedHom hd = diagonal_hom(poly, alg);
  SuiteRow scalar{"scalar_embedding", 0, 0, 0.0, 0, false};
  SuiteRow diag{"diagonal_embedding", 0, 0, 0.0, 0, false};
  for (int i = 0; i < cfg.n; ++i) {
    Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(i));
    try {
      const auto p = sample_cyclic_tuple(line, rng, 4);
      const double src = cross_ratio(p[0], p[1], p[2], p[3]);
      const double img =
          cross_ratio(apply_hom(hs, p[0]), apply_hom(hs, p[1]),
                      apply_hom(hs, p[2]), apply_hom(hs, p[3]));
      scalar.max_residual = std::max(scalar.max_residual, rel_gap(src, img));
      const auto q = sample_cyclic_tuple(poly, rng, 4);
      const double src2 = cross_ratio(q[0], q[1], q[2], q[3]);
      const double img2 =
          cross_ratio(apply_hom(hd, q[0]), apply_hom(hd, q[1]),
                      apply_hom(hd, q[2]), apply_hom(hd, q[3]));
      diag.max_residual = std::max(diag.max_residual, rel_gap(src2, img2));
      ++scalar.trials;
      ++diag.trials;
    } catch (const BudgetExhausted&) {
      ++scalar.trials;
      ++scalar.skipped;
      ++diag.trials;
      ++diag.skipped;
    }
  }
  std::vector<SuiteRow> rows{scalar, diag};
  for (SuiteRow& r : rows) r.pass = r.max_residual <= cfg.tol;
  return finish_suite("suite functorial", cfg, alg, rows);
}

int run_suite_range(const SuiteConfig& cfg) {
  const AlgebraPtr alg = parse_algebra(cfg.algebra);
  SuiteRow row{"range_and_sign", 0, 0, 0.0, 0, false};
  SuiteRow coin{"coincidence_values", 0, 0, 0.0, 0, false};
  const QuadKind kinds[] = {QuadKind::PositiveInner, QuadKind::PositiveOuter,
                            QuadKind::Negative};
  const QuadLabel labels[] = {QuadLabel::PositiveInner,
                              QuadLabel::PositiveOuter, QuadLabel::Negative};
  for (int i = 0; i < cfg.n; ++i) {
    Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(i));
    const int k = i % 3;
    const bool maximal = (i / 3) % 2 == 0;
    ++row.trials;
    ++coin.trials;
    try {
      const auto q = sample_extremal_quadruple(alg, rng, kinds[k], maximal);
      const QuadClass cls = classify_quadruple(q[0], q[1], q[2], q[3]);
      const double B = cross_ratio(q[0], q[1], q[2], q[3]);
      bool ok = cls.label == labels[k];
      switch (labels[k]) {
        case QuadLabel::PositiveInner: ok = ok && B > 0.0 && B < 1.0; break;
        case QuadLabel::PositiveOuter: ok = ok && B > 1.0; break;
        default: ok = ok && B < 0.0; break;
      }
      if (!ok) ++row.exact_mismatches;
      // Coincidence short-circuits on the same sampled points: a=c gives
      // exactly 1, d=a gives exactly 0.
      if (cross_ratio(q[0], q[1], q[0], q[3]) != 1.0) ++coin.exact_mismatches;
      if (cross_ratio(q[0], q[1], q[2], q[0]) != 0.0) ++coin.exact_mismatches;
    } catch (const BudgetExhausted&) {
      ++row.skipped;
      ++coin.skipped;
    }
  }
  row.pass = row.exact_mismatches == 0;
  coin.pass = coin.exact_mismatches == 0;
  return finish_suite("suite range", cfg, alg, {row, coin});
}

// --- point commands --------------------------------------------------------

int run_algebra_info(const std::string& algebra_text) {
  const AlgebraPtr a = parse_algebra(algebra_text);
  std::cout << a->name() << ": rank " << a->rank() << ", dim " << a->dim()
            << "\nbasis: " << basis_description(a) << '\n'
            << R"({"schema":1,"command":"algebra info","algebra":)"
            << algebra_desc_json(a) << ",\"rank\":" << a->rank()
            << ",\"dim\":" << a->dim() << ",\"basis\":\""
            << basis_description(a) << "\"}\n";
  return kExitOk;
}

int run_crossratio(const std::string& algebra_text, const std::string& points,
                   const std::string& out) {
  const AlgebraPtr a = parse_algebra(algebra_text);
  const auto p = parse_points(a, points, 4);
  const double b = cross_ratio(p[0], p[1], p[2], p[3]);

  bool clean = true;
  for (int i = 0; i < 4 && clean; ++i)
    for (int j = i + 1; j < 4 && clean; ++j)
      clean = transversal(p[i].z, p[j].z);

  std::string rec = R"({"schema":1,"command":"crossratio","algebra":)" +
                    algebra_desc_json(a) + ",\"B\":" + fd(b);
  if (clean) {
    const QuadClass cls = classify_quadruple(p[0], p[1], p[2], p[3]);
    const Complex pa = cross_ratio_det(p[0], p[1], p[2], p[3]);
    rec += R"(,"class":")" + std::string(to_string(cls.label)) +
           "\",\"epsilon\":" + std::to_string(cls.epsilon) +
           ",\"maximal_base\":" + (cls.maximal_base ? "true" : "false") +
           ",\"maslov\":{\"abc\":" +
           std::to_string(maslov(p[0], p[1], p[2])) +
           ",\"abd\":" + std::to_string(maslov(p[0], p[1], p[3])) +
           ",\"adc\":" + std::to_string(maslov(p[0], p[3], p[2])) +
           ",\"bdc\":" + std::to_string(maslov(p[1], p[3], p[2])) +
           "},\"paths\":{\"A\":[" + fd(pa.real()) + ',' + fd(pa.imag()) +
           "],\"A_mag\":" + fd(cross_ratio_mag(p[0], p[1], p[2], p[3])) +
           ",\"B\":" + fd(b) + "}";
  } else {
    rec += R"(,"class":"coincidence")";
  }
  rec += "}\n";
  std::cout << "B = " << fd(b) << '\n' << rec;
  if (!out.empty()) write_file_atomic(out, rec);
  return kExitOk;
}

int run_maslov(const std::string& algebra_text, const std::string& points) {
  const AlgebraPtr a = parse_algebra(algebra_text);
  const auto p = parse_points(a, points, 3);
  const int mu = maslov(p[0], p[1], p[2]);
  std::cout << "maslov = " << mu << '\n'
            << R"({"schema":1,"command":"maslov","algebra":)"
            << algebra_desc_json(a) << ",\"maslov\":" << mu << "}\n";
  return kExitOk;
}

int run_transversal(const std::string& algebra_text, const std::string& points,
                    double tol) {
  const AlgebraPtr a = parse_algebra(algebra_text);
  const auto p = parse_points(a, points, 2);
  const bool t = transversal(p[0].z, p[1].z, tol);
  const double margin = transversality_margin(p[0].z, p[1].z);
  std::cout << "transversal = " << (t ? "true" : "false") << '\n'
            << R"({"schema":1,"command":"transversal","algebra":)"
            << algebra_desc_json(a)
            << ",\"transversal\":" << (t ? "true" : "false")
            << ",\"margin\":" << fd(margin) << ",\"tol\":" << fd(tol)
            << "}\n";
  return kExitOk;
}

// --- fuchsian --------------------------------------------------------------

int run_fuchsian(const std::string& target_text, int maxlen,
                 const std::string& out) {
  const AlgebraPtr target = parse_algebra(target_text);
  const SurfaceRep rep = genus2_octagon_rep(target);
  const WelldispReport report = welldisp_experiment(rep, maxlen);

  std::string jsonl = out.empty() ? std::string("fuchsian.jsonl") : out;
  std::string csv = jsonl;
  if (csv.size() > 6 && csv.substr(csv.size() - 6) == ".jsonl")
    csv = csv.substr(0, csv.size() - 6) + ".csv";
  else
    csv += ".csv";
  write_experiment(report, jsonl, csv);

  // A positive fit slope needs at least two word lengths; a maxlen-1 run has
  // a single abscissa and the slope degenerates to zero by construction.
  const bool fit_ok = maxlen < 2 || report.fit_A > 0.0;
  const bool pass = report.min_tau_infty > 0.0 &&
                    report.max_xi_spread <= 1e-9 &&
                    report.max_power_residual <= 1e-9 &&
                    report.max_vtl_residual <= 1e-8 &&
                    report.min_chain_margin >= 0.0 && fit_ok &&
                    report.fit_violations == 0 &&
                    report.min_interval_margin >= 0.0;
  std::cout << R"({"schema":1,"command":"fuchsian run","target":)"
            << algebra_desc_json(target) << ",\"maxlen\":" << maxlen
            << ",\"words\":" << report.words.size()
            << ",\"relator_residual\":" << fd(rep.relator_residual)
            << ",\"fit_A\":" << fd(report.fit_A)
            << ",\"fit_B\":" << fd(report.fit_B)
            << ",\"fit_violations\":" << report.fit_violations
            << ",\"min_tau_infty\":" << fd(report.min_tau_infty)
            << ",\"max_xi_spread\":" << fd(report.max_xi_spread)
            << ",\"max_power_residual\":" << fd(report.max_power_residual)
            << ",\"max_vtl_residual\":" << fd(report.max_vtl_residual)
            << ",\"min_chain_margin\":" << fd(report.min_chain_margin)
            << ",\"jsonl\":\"" << jsonl << "\",\"csv\":\"" << csv
            << "\",\"pass\":" << (pass ? "true" : "false") << "}\n";
  return pass ? kExitOk : kExitSuiteFail;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Jordan-algebra cross ratios on Shilov boundaries"};
  app.require_subcommand(1);
  int result = kExitOk;

  std::string algebra_text, points_text, out_path;
  double tol = 1e-8;

  CLI::App* algebra_cmd = app.add_subcommand("algebra", "model utilities");
  algebra_cmd->require_subcommand(1);
  CLI::App* info = algebra_cmd->add_subcommand("info", "rank, dim, basis");
  info->add_option("--algebra", algebra_text)->required();
  info->callback([&] { result = run_algebra_info(algebra_text); });

  CLI::App* cr = app.add_subcommand("crossratio", "four-point invariant");
  cr->add_option("--algebra", algebra_text)->required();
  cr->add_option("--points", points_text, "JSON array of 4 boundary points")
      ->required();
  cr->add_option("--out", out_path, "write the JSON record here");
  cr->callback(
      [&] { result = run_crossratio(algebra_text, points_text, out_path); });

  CLI::App* mv = app.add_subcommand("maslov", "triple index");
  mv->add_option("--algebra", algebra_text)->required();
  mv->add_option("--points", points_text, "JSON array of 3 boundary points")
      ->required();
  mv->callback([&] { result = run_maslov(algebra_text, points_text); });

  CLI::App* tv = app.add_subcommand("transversal", "pair predicate");
  tv->add_option("--algebra", algebra_text)->required();
  tv->add_option("--points", points_text, "JSON array of 2 boundary points")
      ->required();
  tv->add_option("--tol", tol);
  tv->callback([&] { result = run_transversal(algebra_text, points_text, tol); });

  CLI::App* suite = app.add_subcommand("suite", "randomized invariant suites");
  suite->require_subcommand(1);
  SuiteConfig sc;
  CLI::App* s_inv = suite->add_subcommand("invariance", "conformal invariance");
  add_suite_flags(s_inv, sc);
  s_inv->callback([&] { result = run_suite_invariance(sc); });
  CLI::App* s_coc = suite->add_subcommand("cocycle", "multiplicative cocycles");
  add_suite_flags(s_coc, sc);
  s_coc->callback([&] { result = run_suite_cocycle(sc); });
  CLI::App* s_fun = suite->add_subcommand("functorial", "balanced embeddings");
  add_suite_flags(s_fun, sc);
  s_fun->callback([&] { result = run_suite_functorial(sc); });
  CLI::App* s_rng = suite->add_subcommand("range", "class ranges and signs");
  add_suite_flags(s_rng, sc);
  s_rng->callback([&] { result = run_suite_range(sc); });

  CLI::App* fuchs = app.add_subcommand("fuchsian", "surface-group experiment");
  fuchs->require_subcommand(1);
  CLI::App* frun = fuchs->add_subcommand("run", "translation-length data");
  std::string target_text = "sym3";
  int maxlen = 4;
  frun->add_option("--target", target_text, "embedding target algebra");
  frun->add_option("--maxlen", maxlen, "maximum word length")
      ->check(CLI::Range(1, 8));
  frun->add_option("--out", out_path, "JSONL output path");
  frun->callback([&] { result = run_fuchsian(target_text, maxlen, out_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SingularElement& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const SingularOrbit& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const BudgetExhausted& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return result;
}

}  // namespace shilov::cli
