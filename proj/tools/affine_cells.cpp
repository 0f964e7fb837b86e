#include "ac/param_space.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace ac;
using nlohmann::json;

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, std::vector<std::int64_t>>& c2_regimes() {
  // (t, s, t') = (a, b, c)
  static const std::map<std::string, std::vector<std::int64_t>> r = {
      {"a>c,b>0", {2, 1, 1}},   {"a>c,b=0", {2, 0, 1}},   {"a=c>0,b>0", {1, 1, 1}},
      {"a=c>0,b=0", {1, 0, 1}}, {"a=c=0,b>0", {0, 1, 0}}, {"zero", {0, 0, 0}},
  };
  return r;
}
const std::vector<std::string> regime_order = {"a>c,b>0", "a>c,b=0", "a=c>0,b>0", "a=c>0,b=0", "a=c=0,b>0", "zero"};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::int64_t> parse_ints(const std::string& key, const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ',', ' ');
  std::istringstream is(t);
  std::vector<std::int64_t> out;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ConfigError(key + ": not an integer: '" + tok + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(key + ": empty vector");
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& text) {
  auto v = parse_ints(key, text);
  if (v.size() != 1) throw ConfigError(key + ": expected one integer");
  return v[0];
}

// Flat key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path) {
  static const std::vector<std::string> known = {"group", "type",  "rank",    "weights", "regime", "order", "phi",
                                                 "plus",  "ball",  "suite",   "facet",   "chamber", "N0"};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (kv.count(key)) throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

struct Job {
  std::string label;
  std::optional<CoxeterGroup> G;
  std::vector<std::int64_t> weights;
  bool folded = false;  // negative values replaced by their absolute value
  std::string regime;
  std::string order;    // region name, "phi" or empty
  WeightFunction L;
  std::optional<int> ball;
  std::string suite = "all";
  std::optional<std::vector<std::int64_t>> facet, chamber;
  int N0 = 10;

  int ball_or(int d) const { return ball.value_or(d); }
  const CoxeterGroup& group() const { return *G; }
};

Job build_job(const std::map<std::string, std::string>& kv, std::optional<int> ball_flag) {
  Job job;
  auto get = [&](const std::string& k) -> std::optional<std::string> {
    auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  if (auto g = get("group")) {
    if (get("type") || get("rank")) throw ConfigError("give either group or type/rank");
    job.label = *g;
  } else if (auto t = get("type")) {
    auto r = get("rank");
    if (!r) throw ConfigError("type needs rank");
    job.label = *t + std::to_string(parse_int("rank", *r));
  } else {
    job.label = "C2";
  }
  try {
    job.G.emplace(make_affine(job.label));
  } catch (const std::exception& e) {
    throw ConfigError("group " + job.label + ": " + e.what());
  }
  const auto& S = job.group().sys();
  if (auto n = get("N0")) {
    job.N0 = static_cast<int>(parse_int("N0", *n));
    if (job.N0 < 1) throw ConfigError("N0 must be positive");
  }
  if (auto r = get("regime")) {
    if (get("weights")) throw ConfigError("give either weights or regime");
    auto it = c2_regimes().find(*r);
    if (it == c2_regimes().end()) throw ConfigError("unknown regime '" + *r + "'");
    if (job.label != "C2") throw ConfigError("regimes are defined for C2 only");
    job.regime = *r;
    job.weights = it->second;
  } else if (auto w = get("weights")) {
    job.weights = parse_ints("weights", *w);
  } else {
    job.weights.assign(static_cast<std::size_t>(S.num_classes()), 1);
  }
  if (static_cast<int>(job.weights.size()) != S.num_classes())
    throw ConfigError("weights: " + job.label + " has " + std::to_string(S.num_classes()) + " classes");
  for (auto& x : job.weights)
    if (x < 0) {
      x = -x;
      job.folded = true;
    }

  auto order = get("order");
  auto phi = get("phi");
  if (order && phi) throw ConfigError("give either order or phi");
  if (order) {
    job.order = *order;
    try {
      job.L = WeightFunction::generic(order_for_region(*order, job.weights, job.N0));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("order: ") + e.what());
    }
  } else if (phi) {
    job.order = "phi";
    std::vector<OrderedGroup::Row> rows;
    std::istringstream is(*phi);
    std::string row;
    while (std::getline(is, row, ';')) {
      auto r = parse_ints("phi", row);
      if (static_cast<int>(r.size()) != S.num_classes()) throw ConfigError("phi: row length must equal the class count");
      rows.push_back(r);
    }
    std::vector<bool> plus;
    if (auto p = get("plus")) {
      for (auto x : parse_ints("plus", *p)) plus.push_back(x != 0);
      if (static_cast<int>(plus.size()) != S.num_classes()) throw ConfigError("plus: one flag per class");
    }
    auto g = std::make_shared<OrderedGroup>(S.num_classes(), rows, plus);
    std::string why;
    if (!g->admissible(&why)) throw ConfigError("phi: order not admissible: " + why);
    job.L = WeightFunction::generic(g);
  } else {
    if (get("plus")) throw ConfigError("plus needs phi");
    job.L = WeightFunction::integral(job.weights);
  }

  if (auto b = get("ball")) job.ball = static_cast<int>(parse_int("ball", *b));
  if (ball_flag) job.ball = *ball_flag;
  if (job.ball && (*job.ball < 0 || *job.ball > 40)) throw ConfigError("ball must lie in [0, 40]");
  if (auto s = get("suite")) job.suite = *s;
  static const std::vector<std::string> suites = {"claim3prime", "bounds", "induction", "semicontinuity", "all"};
  if (std::find(suites.begin(), suites.end(), job.suite) == suites.end()) throw ConfigError("unknown suite '" + job.suite + "'");
  for (const char* k : {"facet", "chamber"})
    if (auto v = get(k)) {
      auto w = parse_ints(k, *v);
      if (static_cast<int>(w.size()) != S.num_classes()) throw ConfigError(std::string(k) + ": one value per class");
      for (auto x : w)
        if (x < 0) throw ConfigError(std::string(k) + ": values must be non-negative");
      (std::string(k) == "facet" ? job.facet : job.chamber) = w;
    }
  if (job.facet.has_value() != job.chamber.has_value()) throw ConfigError("facet and chamber go together");
  return job;
}

json words(const Ball& X, const std::vector<int>& idx) {
  json a = json::array();
  for (int i : idx) a.push_back(X.str(i));
  return a;
}

json gen_names(const CoxeterGroup& G, const std::vector<int>& gens) {
  json a = json::array();
  for (int s : gens) a.push_back(G.sys().gen_names[static_cast<std::size_t>(s)]);
  return a;
}

json job_json(const Job& job) {
  json j = {{"group", job.label}, {"weights", job.weights}, {"L", job.L.str()}};
  if (!job.regime.empty()) j["regime"] = job.regime;
  if (!job.order.empty()) j["order"] = job.L.group->str();
  if (job.folded) j["folded_negative_weights"] = true;
  return j;
}

// Sorted by length, then by word.
std::vector<std::string> sorted_words(const CoxeterGroup& G, const std::vector<GroupElement>& xs) {
  std::vector<std::pair<int, std::string>> v;
  for (const auto& x : xs) v.emplace_back(G.length(x), G.str(x));
  std::sort(v.begin(), v.end());
  std::vector<std::string> out;
  for (auto& p : v) out.push_back(p.second);
  return out;
}

struct Output {
  json j;
  std::string svg;
};

Output cmd_lowest(const Job& job) {
  if (job.L.is_zero()) throw ConfigError("L = 0: the lowest two-sided cell is all of W; nothing to compute");
  const auto& G = job.group();
  Geometry geo(G, job.L);
  LowestCell C(geo);
  Ball X(G, job.ball_or(10));
  Output out;
  json& j = out.j;
  j = job_json(job);
  j["command"] = "lowest";
  j["ball_N"] = X.radius();
  j["nu"] = geo.nu().str();
  j["wmax"] = sorted_words(G, geo.wmax());
  j["S_circ"] = gen_names(G, geo.S_circ());
  json qs = json::array();
  for (const auto& q : geo.quarters())
    qs.push_back({{"sigma", q.id}, {"lambda", to_string(q.lambda)}, {"b_sigma", G.str(q.b_sigma)}, {"S_lambda", gen_names(G, q.S_lambda)}});
  j["quarters"] = qs;
  auto in = C.by_geometry(X);
  j["cmin_in_ball"] = std::count(in.begin(), in.end(), true);
  json cells = json::array();
  long covered = 0;
  for (const auto& c : C.sigma_cells(X)) {
    covered += static_cast<long>(c.members.size());
    cells.push_back({{"sigma", c.sigma}, {"b_sigma", G.str(c.b_sigma)}, {"size", c.members.size()}, {"members", words(X, c.members)}});
  }
  j["sigma_cells"] = cells;
  if (covered != j["cmin_in_ball"].get<long>()) throw InvariantFailure("sigma-cells do not partition c_min in the ball");

  if (G.roots().rank == 2) {
    SvgOptions opt;
    std::vector<std::pair<GroupElement, int>> filled;
    json grid = json::array();
    for (const auto& x : alcoves_in_window(G, opt.window)) {
      if (!C.in_cmin(x)) continue;
      int sigma = geo.quarter_of(x);
      if (sigma < 0) throw InvariantFailure("lowest-cell alcove outside every quarter: " + G.str(x));
      filled.emplace_back(x, sigma);
      grid.push_back({{"word", G.str(x)}, {"sigma", sigma}});
    }
    std::sort(grid.begin(), grid.end(), [](const json& a, const json& b) {
      auto wa = a["word"].get<std::string>(), wb = b["word"].get<std::string>();
      return std::make_pair(wa.size(), wa) < std::make_pair(wb.size(), wb);
    });
    j["window"] = {{"half_width", opt.window}, {"members", grid}};
    out.svg = render_svg(G, filled, geo.wmax(), opt);
  }
  return out;
}

json partition_json(const Ball& X, const CellPartition& cp) {
  json classes = json::array();
  for (const auto& K : cp.classes) classes.push_back(words(X, K));
  json below = json::array();
  for (const auto& b : cp.below) below.push_back(b);
  return {{"count", cp.classes.size()}, {"classes", classes}, {"below", below}, {"truncated_edges", cp.truncated_edges}};
}

// Right classes are the inverses of the left classes.
bool duality(const Ball& X, const CellPartition& left, const CellPartition& right) {
  std::vector<std::vector<int>> a, b = right.classes;
  for (const auto& K : left.classes) {
    std::vector<int> inv;
    for (int i : K) inv.push_back(X.inverse(i));
    std::sort(inv.begin(), inv.end());
    a.push_back(inv);
  }
  for (auto& K : b) std::sort(K.begin(), K.end());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

KLTable make_table(const Ball& X, const WeightFunction& L, const std::string& cache_dir) {
  if (cache_dir.empty()) return KLTable(X, L);
  bool loaded = false;
  KLTable T = cached_table(X, L, cache_dir, &loaded);
  std::cerr << (loaded ? "loaded and validated cached table " : "computed table, stored in ") << cache_dir << " [" << table_key(T) << "]\n";
  return T;
}

Output cmd_cells(const Job& job, const std::string& cache_dir) {
  Ball X(job.group(), job.ball_or(8));
  KLTable T = make_table(X, job.L, cache_dir);
  auto left = cell_preorder(T, Flavor::Left);
  auto right = cell_preorder(T, Flavor::Right);
  auto two = cell_preorder(T, Flavor::TwoSided);
  Output out;
  out.j = job_json(job);
  out.j["command"] = "cells";
  out.j["ball_N"] = X.radius();
  out.j["ball_size"] = X.size();
  out.j["left"] = partition_json(X, left);
  out.j["right"] = partition_json(X, right);
  out.j["two_sided"] = partition_json(X, two);
  bool dual = duality(X, left, right);
  out.j["left_right_duality"] = dual;
  if (!dual) throw InvariantFailure("right classes are not the inverses of the left classes");
  return out;
}

json suite_claim3prime() {
  json cases = json::array();
  bool ok = true;
  for (const auto& c : claim3_cases()) {
    CoxeterGroup G(make_affine(c.label));
    Geometry geo(G, weight_with_zeros(G.sys(), c.zero, c.weights));
    auto rep = verify_claim3prime(geo);
    ok = ok && rep.ok;
    cases.push_back({{"group", c.label}, {"zero", c.zero}, {"ok", rep.ok}, {"patterns", rep.patterns},
                     {"frakB", rep.frakB.size()}, {"failures", rep.failures}});
  }
  return {{"ok", ok}, {"cases", cases}};
}

json suite_bounds(const Job& job) {
  int N = job.ball_or(6);
  const auto& G = job.group();
  Ball big(G, 2 * N);
  Hecke H(big, job.L);
  auto f = verify_degree_bounds(H, N);
  Ball X(G, N);
  KLTable T(X, job.L);
  auto inv = check_kl_invariants(T);
  json parabolic = json::array();
  bool ok = f.ok && inv.ok;
  // The parabolic bounds need the S+/S° split of a generic order.
  for (int mask = 1; T.order()->has_partition() && mask < (1 << G.num_gens()) - 1; ++mask) {
    std::vector<int> I;
    for (int i = 0; i < G.num_gens(); ++i)
      if (mask >> i & 1) I.push_back(i);
    auto rep = verify_klasym(T, I);
    ok = ok && rep.ok;
    json r = rep.to_json();
    r["I"] = gen_names(G, I);
    parabolic.push_back(r);
  }
  return {{"ok", ok},
          {"ball_N", N},
          {"structure_constants", f.to_json()},
          {"kl_invariants", {{"ok", inv.ok}, {"checks", inv.checks}, {"failures", inv.failures}}},
          {"parabolic_bounds", parabolic}};
}

json suite_induction(const Job& job) {
  const auto& G = job.group();
  Ball X(G, job.ball_or(10));
  KLTable T(X, job.L);
  Geometry geo(G, plus_part(job.L));
  InductionData D(T, geo);
  auto left = cell_preorder(T, Flavor::Left);
  json pieces = json::array();
  bool ok = true;
  for (int s = 0; s < static_cast<int>(geo.quarters().size()); ++s) {
    auto rep = check_induction_conditions(D, s, left);
    ok = ok && rep.ok();
    pieces.push_back(rep.to_json());
  }
  auto tx = verify_tx_cw(D);
  ok = ok && tx.ok;
  return {{"ok", ok}, {"ball_N", X.radius()}, {"quarters", pieces}, {"tx_cw", tx.to_json()}};
}

std::vector<RationalHyperplane> arrangement_for(const Job& job) {
  if (job.group().sys().is_C()) return arrangement_C(default_m(job.N0));
  Q m(job.N0);
  return arrangement_BFG(m, m);
}

json suite_semicontinuity(const Job& job) {
  const auto& G = job.group();
  int N = job.ball_or(10);
  auto arr = arrangement_for(job);
  if (job.facet) {
    SemicontinuityReport rep;
    try {
      rep = semicontinuity_check(G, *job.facet, *job.chamber, N, &arr);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("semicontinuity: ") + e.what());
    }
    json r = rep.to_json();
    return {{"ok", rep.ok()}, {"checks", json::array({r})}};
  }
  if (job.label != "C2") throw ConfigError("semicontinuity without facet/chamber runs the C2 defaults only");
  std::int64_t big = static_cast<std::int64_t>(job.N0) * job.N0 + 1;
  auto pos = semicontinuity_check(G, {1, 0, 1}, {big, 1, big}, N, &arr);
  auto neg = semicontinuity_check(G, {2, 0, 1}, {4, 2, 3}, N);
  json p = pos.to_json(), n = neg.to_json();
  n["expected_failure"] = true;
  // The control passes when containment fails.
  bool control = !neg.ok();
  n["control_ok"] = control;
  return {{"ok", pos.ok() && control}, {"checks", json::array({p, n})}};
}

Output cmd_verify(const Job& job) {
  Output out;
  out.j = job_json(job);
  out.j["command"] = "verify";
  out.j["suite"] = job.suite;
  bool all = job.suite == "all";
  bool ok = true;
  json results;
  if (all || job.suite == "claim3prime") results["claim3prime"] = suite_claim3prime();
  if (all || job.suite == "bounds") results["bounds"] = suite_bounds(job);
  if (all || job.suite == "induction") results["induction"] = suite_induction(job);
  if (job.suite == "semicontinuity" || (all && (job.facet || job.label == "C2"))) results["semicontinuity"] = suite_semicontinuity(job);
  for (const auto& [k, v] : results.items()) ok = ok && v["ok"].get<bool>();
  out.j["results"] = results;
  out.j["ok"] = ok;
  return out;
}

Output cmd_atlas(const Job& job) {
  const auto& G = job.group();
  auto arr = arrangement_for(job);
  Ball X(G, job.ball_or(8));
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> points;
  if (job.label == "C2") {
    for (const auto& r : regime_order) points.emplace_back(r, c2_regimes().at(r));
  } else if (G.sys().num_classes() == 2) {
    std::int64_t n = job.N0 + 1;
    for (std::vector<std::int64_t> w : {std::vector<std::int64_t>{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {n, 1}, {1, n}})
      points.emplace_back("", w);
  } else {
    throw ConfigError("atlas covers C2 and the two-class groups");
  }
  Output out;
  out.j = {{"command", "atlas"}, {"group", job.label}, {"ball_N", X.radius()}, {"N0", job.N0}};
  json hs = json::array();
  for (const auto& h : arr) hs.push_back(h.normal);
  out.j["hyperplanes"] = hs;
  json entries = json::array();
  for (const auto& [name, w] : points) {
    std::vector<Q> q(w.begin(), w.end());
    json e = {{"weights", w}, {"sign_vector", facet_of(q, arr)}, {"zero_classes", facet_zero_classes(q)}};
    if (!name.empty()) e["regime"] = name;
    auto L = WeightFunction::integral(w);
    Geometry geo(G, L);
    e["nu"] = geo.nu().str();
    e["wmax"] = sorted_words(G, geo.wmax());
    if (!L.is_zero()) {
      LowestCell C(geo);
      auto in = C.by_geometry(X);
      e["quarters"] = geo.quarters().size();
      e["cmin_in_ball"] = std::count(in.begin(), in.end(), true);
      KLTable T(X, L);
      e["left_classes"] = cell_preorder(T, Flavor::Left).classes.size();
      e["two_sided_classes"] = cell_preorder(T, Flavor::TwoSided).classes.size();
    }
    entries.push_back(e);
  }
  out.j["points"] = entries;
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lowest two-sided cells and Kazhdan-Lusztig cells of affine Weyl groups"};
  std::string command, config, cache_dir, svg_path, json_path, suite;
  std::optional<int> ball;
  app.add_option("command", command, "lowest | cells | verify | atlas")
      ->required()
      ->check(CLI::IsMember({"lowest", "cells", "verify", "atlas"}));
  app.add_option("suite", suite, "verify suite: claim3prime | bounds | induction | semicontinuity | all");
  app.add_option("--config", config, "key = value file")->required();
  app.add_option("--ball", ball, "ball radius N");
  app.add_option("--cache-dir", cache_dir, "KL table cache")->envname("AC_CACHE_DIR");
  app.add_option("--svg", svg_path, "SVG output (lowest, rank 2)");
  app.add_option("--json", json_path, "JSON output (default: stdout)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  Output out;
  try {
    auto kv = read_config(config);
    if (!suite.empty()) {
      if (command != "verify") throw ConfigError("a suite is only taken by verify");
      kv["suite"] = suite;
    }
    Job job = build_job(kv, ball);
    if (!svg_path.empty() && command != "lowest") throw ConfigError("--svg is produced by lowest only");
    if (command == "lowest") {
      out = cmd_lowest(job);
      if (!svg_path.empty() && out.svg.empty()) throw ConfigError("--svg needs a rank-2 group");
    } else if (command == "cells") {
      out = cmd_cells(job, cache_dir);
    } else if (command == "verify") {
      out = cmd_verify(job);
    } else {
      out = cmd_atlas(job);
    }
    std::string text = out.j.dump(2) + "\n";
    if (json_path.empty())
      std::cout << text;
    else
      write_file(json_path, text);
    if (!svg_path.empty()) write_file(svg_path, out.svg);
    if (out.j.contains("ok") && !out.j["ok"].get<bool>()) {
      std::cerr << "verification failed\n";
      return 3;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 3;
  } catch (const BallTruncation& e) {
    std::cerr << "ball too small: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
