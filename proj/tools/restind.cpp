// restind command-line front end. Reports go to stdout as JSON (or a plain table);
// exit status 0 on success, 2 when a mathematical check fails, 1 on errors.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "restind/report.hpp"

using namespace restind;

namespace {

constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::size_t order_cap = kDefaultOrderCap;
  std::size_t lattice_budget = kDefaultLatticeBudget;
  std::uint64_t sieve_cap = kDefaultSieveCap;
  std::string cache_dir;
  std::string format = "json";
  bool timing = false;

  Json to_json() const {
    Json j{{"order_cap", order_cap}, {"lattice_budget", lattice_budget}, {"sieve_cap", sieve_cap}, {"format", format}};
    j["cache"] = !cache_dir.empty();
    return j;
  }
};

struct Outcome {
  Json inputs = Json::object();
  Json config = Json::object();
  Json result = Json::object();
  int status = 0;
};

Json versions() {
  return Json{{"restind", kVersion},
              {"gmp", gmp_version},
              {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

std::string scalar_text(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// generic table form: one "path: value" line per scalar, arrays of scalars inline
void flatten(const Json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (scalars) {
      out << path << ": " << j.dump() << "\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << path << ": " << scalar_text(j) << "\n";
  }
}

std::string pad(const std::string& s, std::size_t w) { return std::string(s.size() < w ? w - s.size() : 1, ' ') + s; }

void fibered_table(const Json& fib, std::ostream& out) {
  out << pad("cycle type", 14) << pad("parity", 8) << pad("observed", 10) << pad("predicted", 14) << pad("rel dev", 16) << "\n";
  for (const auto& r : fib["rows"]) {
    std::string ct;
    for (const auto& k : r["cycle_type"]) ct += (ct.empty() ? "" : ",") + k.dump();
    out << pad("[" + ct + "]", 14) << pad(r["parity"].get<std::string>(), 8) << pad(r["observed"].dump(), 10)
        << pad(scalar_text(r["predicted"]), 14) << pad(scalar_text(r["rel_deviation"]), 16) << "\n";
  }
}

void emit(const std::string& command, const Outcome& o, const RunConfig& cfg) {
  Json report{{"schema", kSchemaVersion},
              {"command", command},
              {"inputs", o.inputs},
              {"config", o.config},
              {"result", o.result},
              {"versions", versions()}};
  if (cfg.format == "table") {
    if (command == "chebotarev" && o.result.contains("fibered")) {
      flatten(o.inputs, "inputs", std::cout);
      flatten(o.result["tally"], "tally", std::cout);
      fibered_table(o.result["fibered"], std::cout);
      Json rest = o.result;
      rest.erase("tally");
      rest.erase("fibered");
      flatten(rest, "", std::cout);
    } else {
      flatten(report, "", std::cout);
    }
  } else {
    std::cout << report.dump(2) << "\n";
  }
}

GroupPtr load_group(const std::string& spec, std::size_t degree, const RunConfig& cfg) {
  return resolve_group(spec, degree, cfg.order_cap);
}

Json group_inputs(const std::string& spec, std::size_t degree) {
  Json j{{"group", spec}};
  if (degree) j["degree"] = degree;
  return j;
}

TablePtr table_for(const GroupPtr& G, const RunConfig& cfg) { return cached_character_table(G, cfg.cache_dir); }

// ---------------------------------------------------------------------------

Outcome run_chartab(const std::string& spec, std::size_t degree, const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  auto G = load_group(spec, degree, cfg);
  auto t = table_for(G, cfg);
  o.result = table_json(*t);
  o.result["orthogonality"] = orthogonality_holds(*t);
  if (!o.result["orthogonality"].get<bool>()) o.status = 2;
  return o;
}

Outcome run_check_t(const std::string& spec, std::size_t degree, const std::string& nspec, const TOptions& opt,
                    const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  o.inputs["n"] = nspec;
  o.config = {{"shortcuts", opt.allow_shortcuts}, {"galois_merge", opt.galois_merge}};
  auto G = load_group(spec, degree, cfg);
  auto N = resolve_subgroup(G, nspec, cfg.lattice_budget);
  table_for(G, cfg);
  RestrictionContext ctx(G, cfg.lattice_budget);
  auto d = check_hypothesis_T(ctx, N, opt);
  o.result = {{"group", group_json(*G)}, {"N", normal_json(N)}};
  o.result["decision"] = decision_json(ctx, d);
  if (d.verdict == Verdict::Fails) o.status = 2;
  return o;
}

Outcome run_decompose(const std::string& spec, std::size_t degree, const std::string& nspec, const std::string& rho,
                      const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  o.inputs["n"] = nspec;
  o.inputs["rho"] = rho;
  auto G = load_group(spec, degree, cfg);
  auto N = resolve_subgroup(G, nspec, cfg.lattice_budget);
  auto t = table_for(G, cfg);
  RestrictionContext ctx(G, cfg.lattice_budget);
  std::vector<std::size_t> targets;
  if (rho == "all") {
    targets = faithful_coordinates(*t, N);
  } else {
    std::size_t k = 0;
    if (!detail::parse_count(rho, k)) fail(ErrorCode::ParseError, "--rho takes an irreducible index or 'all'");
    targets.push_back(k);
  }
  Json decs = Json::array();
  for (auto k : targets) decs.push_back(decomposition_json(ctx, decompose_restricted(ctx, N, k)));
  o.result = {{"group", group_json(*G)}, {"N", normal_json(N)}, {"decompositions", decs}};
  return o;
}

Outcome run_brauer(const std::string& spec, std::size_t degree, const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  auto N = load_group(spec, degree, cfg);
  auto r = brauer_decomposition(N);
  o.result = brauer_json(*N, r);
  if (!r.identity_holds) o.status = 2;
  return o;
}

Outcome run_artin(const std::string& spec, std::size_t degree, std::optional<std::size_t> cls, const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  auto G = load_group(spec, degree, cfg);
  auto t = table_for(G, cfg);
  const auto rank = artin_span_rank(t);
  o.result = {{"rank", rank}, {"irreducibles", t->size()}, {"spans_complement", rank + 1 == t->size()}};
  if (cls) {
    o.inputs["class"] = *cls;
    auto w = artin_witness(G, *cls);
    const std::uint64_t m = w.cyclic.group->exponent();
    Json coeffs = Json::array(), induced = Json::array();
    for (const auto& c : w.coefficients) coeffs.push_back(cyclotomic_json(c, std::max<std::uint64_t>(m, 1)));
    for (const auto& v : w.induced.values) induced.push_back(cyclotomic_json(v, G->exponent()));
    o.result["witness"] = {{"cyclic_subgroup", subgroup_json(w.cyclic.sub)},
                           {"conductor", m},
                           {"coefficients", coeffs},
                           {"induced_values", induced}};
  }
  if (rank + 1 != t->size()) o.status = 2;
  return o;
}

Outcome run_minimal_normal(const std::string& spec, std::size_t degree, const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  auto G = load_group(spec, degree, cfg);
  auto m = minimal_normal_subgroups(G);
  Json normals = Json::array(), minimal = Json::array();
  for (const auto& N : normal_subgroups(G)) normals.push_back(normal_json(N));
  for (const auto& N : m.minimal) minimal.push_back(normal_json(N));
  o.result = {{"group", group_json(*G)},
              {"normal_subgroups", normals},
              {"minimal", minimal},
              {"unique_minimal", m.unique_minimal.has_value()}};
  return o;
}

Outcome run_malle(const std::string& spec, std::size_t degree, const std::string& action, std::size_t points,
                  const std::vector<std::string>& images, const std::string& nspec, const RunConfig& cfg) {
  Outcome o;
  o.inputs = group_inputs(spec, degree);
  o.inputs["action"] = action;
  if (action == "explicit") {
    o.inputs["points"] = points;
    o.inputs["images"] = images;
  }
  o.inputs["n"] = nspec;
  auto G = load_group(spec, degree, cfg);
  PermAction a;
  if (action == "natural") a = natural_action(G);
  else if (action == "regular") a = regular_action(G);
  else if (action == "explicit") a = explicit_action(G, points, images);
  else fail(ErrorCode::ParseError, "unknown action '" + action + "'");
  auto N = resolve_subgroup(G, nspec, cfg.lattice_budget);
  o.result = {{"group", group_json(*G)},
              {"N", normal_json(N)},
              {"action", {{"kind", a.kind}, {"degree", a.degree}, {"transitive", a.transitive}, {"faithful", a.faithful}}}};
  o.result["report"] = malle_json(malle_report(a, N));
  return o;
}

Outcome run_chebotarev(const std::string& poly, std::uint64_t x, bool characters, const RunConfig& cfg) {
  Outcome o;
  o.inputs = {{"poly", poly}, {"x", x}};
  auto f = parse_polynomial(poly);
  auto scan = frobenius_scan(f, x, cfg.sieve_cap);
  auto t = tally_at(scan, x);
  o.result = {{"polynomial", f.to_string()},
              {"degree", f.degree()},
              {"discriminant", integer_json(scan.disc)},
              {"discriminant_core", integer_json(scan.core)},
              {"core_complete", scan.core_complete}};
  o.result["tally"] = tally_json(t);
  auto fib = fibered_check(t);
  o.result["fibered"] = fibered_json(fib);
  if (characters && f.degree() <= SymmetricContext::kMaxDegree) {
    SymmetricContext sym(f.degree());
    const auto& table = *sym.table();
    std::vector<std::uint64_t> checkpoints;
    for (std::uint64_t c = 10; c < x; c *= 10) checkpoints.push_back(c);
    checkpoints.push_back(x);
    std::vector<FrobeniusTally> tallies;
    for (auto c : checkpoints) tallies.push_back(tally_at(scan, c));
    Json sums = Json::array();
    for (std::size_t i = 0; i < table.size(); ++i) {
      bool faithful = true;
      for (std::size_t c = 1; c < sym.group()->class_count(); ++c)
        if (table.in_kernel(i, c)) faithful = false;
      Json pts = Json::array();
      for (const auto& tc : tallies) {
        const Rational s = character_partial_sum(sym, tc, table[i]).rational_value();
        pts.push_back({{"x", tc.x},
                       {"sum", to_pq(s)},
                       {"normalized", real_json(tc.prime_count ? std::abs(s.get_d()) / static_cast<double>(tc.prime_count) : 0.0)}});
      }
      sums.push_back({{"irreducible", i}, {"degree", table.degrees()[i]}, {"faithful", faithful}, {"points", pts}});
    }
    o.result["partial_sums"] = sums;
    Json prof = Json::array();
    for (const auto& e : class_function_profile(sym, scan, x))
      prof.push_back({{"irreducible", e.irreducible},
                      {"inner_product", to_pq(e.from_class_sum.rational_value())},
                      {"formulas_agree", e.from_class_sum == e.from_prime_sum}});
    o.result["profile"] = prof;
  }
  if (!fib.parity_even || !fib.parity_odd || !fib.formulas_agree) o.status = 2;
  return o;
}

Outcome run_zfr(RegionParams p, std::optional<double> x, std::optional<double> logx, std::optional<double> t) {
  Outcome o;
  if (!x && !logx) fail(ErrorCode::ParseError, "zfr needs --x or --log-x");
  const double lx = logx ? *logx : std::log(*x);
  o.inputs = {{"logD", real_json(p.logD)}, {"epsilon", real_json(p.epsilon)}, {"order_G", p.order_G}, {"deg_k", p.deg_k}};
  if (x) o.inputs["x"] = real_json(*x);
  else o.inputs["log_x"] = real_json(lx);
  o.config = {{"C_G", real_json(p.C_G)}, {"c_zfr", real_json(p.c_zfr)}, {"envelope_C", real_json(p.envelope_C)}};
  p.validate();
  if (!(lx >= std::log(3.0))) fail(ErrorCode::DomainError, "x must be at least 3");
  o.result["params"] = region_params_json(p);
  o.result["omega_at_3"] = real_json(omega_K(3, p));
  if (t) o.result["omega_at_t"] = {{"t", real_json(*t)}, {"value", real_json(omega_K(*t, p))}};
  const auto eta = eta_K_log(lx, p);
  o.result["eta"] = eta_json(eta);
  const bool agree = std::abs(eta.closed_form - eta.grid) <= 1e-6 * std::abs(eta.grid);
  o.result["eta"]["agree_1e-6"] = agree;
  if (lx < 700) {
    o.result["envelope"] = envelope_json(pnt_envelope(std::exp(lx), p));
  } else {
    Envelope e;
    e.log_threshold = 81.0 * static_cast<double>(p.order_G) / p.epsilon * std::log(p.logD);
    e.above_threshold = lx >= e.log_threshold;
    o.result["envelope"] = {{"log_value", real_json(lx - p.envelope_C * std::sqrt(lx))},
                            {"log_threshold", real_json(e.log_threshold)},
                            {"above_threshold", e.above_threshold}};
  }
  if (!agree) o.status = 2;
  return o;
}

// ---------------------------------------------------------------------------
// Sweeps

struct SweepOptions {
  std::string family;
  std::string task = "check-t";
  TOptions t;
  bool compare = false;
  std::size_t jobs = 1;
};

Json sweep_group(const CatalogEntry& e, bool transitive, const SweepOptions& so, const RunConfig& cfg) {
  Json items = Json::array();
  const std::string label = e.label(transitive);
  GroupPtr G;
  try {
    G = build_group(e, cfg.order_cap);
  } catch (const Error& err) {
    items.push_back({{"group", label}, {"name", e.name}, {"verdict", "ERROR"}, {"error", err.what()}});
    return items;
  }
  if (so.task == "brauer" || so.task == "artin-span") {
    Json item{{"group", label}, {"name", e.name}, {"order", G->order()}};
    try {
      if (so.task == "brauer") {
        if (G->order() < 2) return items;
        item["verdict"] = brauer_decomposition(G).identity_holds ? "HOLDS" : "FAILS";
      } else {
        auto t = table_for(G, cfg);
        item["verdict"] = artin_span_rank(t) + 1 == t->size() ? "HOLDS" : "FAILS";
      }
    } catch (const Error& err) {
      item["verdict"] = "ERROR";
      item["error"] = err.what();
    }
    items.push_back(item);
    return items;
  }
  try {
    table_for(G, cfg);
    RestrictionContext ctx(G, cfg.lattice_budget);
    auto normals = normal_subgroups(G);
    for (std::size_t k = 0; k < normals.size(); ++k) {
      const auto& N = normals[k];
      if (N.is_trivial()) continue;
      Json item{{"group", label}, {"name", e.name}, {"order", G->order()}, {"normal_index", k}, {"N_order", N.order}};
      try {
        auto d = check_hypothesis_T(ctx, N, so.t);
        item["verdict"] = verdict_name(d.verdict);
        if (!d.theorem.empty()) item["theorem"] = d.theorem;
        else item["rank"] = {d.rank, d.target.size()};
        if (so.compare && so.t.allow_shortcuts) {
          TOptions explicit_opt = so.t;
          explicit_opt.allow_shortcuts = false;
          auto x = check_hypothesis_T(ctx, N, explicit_opt);
          const bool holds_a = d.verdict == Verdict::Holds || d.verdict == Verdict::HoldsByTheorem;
          item["explicit_verdict"] = verdict_name(x.verdict);
          item["consistent"] = x.verdict == Verdict::UndecidedPartialLattice || holds_a == (x.verdict == Verdict::Holds);
        }
      } catch (const Error& err) {
        item["verdict"] = "ERROR";
        item["error"] = err.what();
      }
      items.push_back(item);
    }
  } catch (const Error& err) {
    items.push_back({{"group", label}, {"name", e.name}, {"verdict", "ERROR"}, {"error", err.what()}});
  }
  return items;
}

Outcome run_sweep(const SweepOptions& so, const RunConfig& cfg) {
  Outcome o;
  o.inputs = {{"family", so.family}, {"task", so.task}};
  o.config = {{"shortcuts", so.t.allow_shortcuts}, {"galois_merge", so.t.galois_merge}, {"compare_shortcuts", so.compare}};
  const auto colon = so.family.find(':');
  std::size_t bound = 0;
  if (colon == std::string::npos || !detail::parse_count(so.family.substr(colon + 1), bound))
    fail(ErrorCode::ParseError, "--family takes order:<M> or transitive:<d>");
  const std::string kind = so.family.substr(0, colon);
  if (kind != "order" && kind != "transitive") fail(ErrorCode::ParseError, "--family takes order:<M> or transitive:<d>");
  if (so.task != "check-t" && so.task != "brauer" && so.task != "artin-span")
    fail(ErrorCode::ParseError, "--task takes check-t, brauer or artin-span");
  const bool transitive = kind == "transitive";
  const auto entries = transitive ? transitive_groups(bound) : small_groups(bound);

  // per-group results are cached when a cache directory is configured, so an
  // interrupted sweep resumes where it stopped
  const std::string opt_key = so.task + (so.t.allow_shortcuts ? "+s" : "-s") + (so.t.galois_merge ? "+g" : "-g") +
                              (so.compare ? "+c" : "-c") + ":" + std::to_string(cfg.lattice_budget) + ":" +
                              std::to_string(cfg.order_cap);
  auto cache_path = [&](const CatalogEntry& e) {
    return cfg.cache_dir + "/sweep-" + detail::stable_hash(e.label(transitive) + "|" + e.name + "|" + opt_key) + ".json";
  };
  auto run_one = [&](const CatalogEntry& e) {
    if (!cfg.cache_dir.empty()) {
      if (std::ifstream in(cache_path(e)); in) {
        try {
          return Json::parse(in);
        } catch (const std::exception&) {
        }
      }
    }
    Json items = sweep_group(e, transitive, so, cfg);
    if (!cfg.cache_dir.empty()) {
      const auto path = cache_path(e);
      {
        std::ofstream out(path + ".tmp");
        out << items.dump() << "\n";
      }
      std::rename((path + ".tmp").c_str(), path.c_str());
    }
    return items;
  };

  std::vector<Json> per_group(entries.size());
  const std::size_t jobs = std::max<std::size_t>(1, std::min(so.jobs, entries.size()));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < entries.size(); i = next++) per_group[i] = run_one(entries[i]);
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Json items = Json::array(), fails = Json::array();
  std::map<std::string, std::size_t> counts;
  for (const auto& g : per_group)
    for (const auto& item : g) {
      const auto v = item["verdict"].get<std::string>();
      ++counts[v];
      if (v == "FAILS") fails.push_back(item);
      if (item.contains("consistent") && !item["consistent"].get<bool>()) fails.push_back(item);
      items.push_back(item);
    }
  Json summary{{"groups", entries.size()}, {"items", items.size()}};
  for (const auto& [v, c] : counts) summary[v] = c;
  o.result = {{"summary", summary}, {"fails", fails}, {"items", items}};
  if (!fails.empty()) o.status = 2;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restind: restricted inductions, Malle invariants and Chebotarev checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kVersion);
  RunConfig cfg;
  if (const char* env = std::getenv("RESTIND_CACHE_DIR"); env && *env) cfg.cache_dir = env;
  app.add_option("--order-cap", cfg.order_cap, "largest group order enumerated")->check(CLI::PositiveNumber);
  app.add_option("--lattice-budget", cfg.lattice_budget, "closure budget of the subgroup lattice")->check(CLI::PositiveNumber);
  app.add_option("--sieve-cap", cfg.sieve_cap, "largest sieve bound")->check(CLI::PositiveNumber);
  app.add_option("--cache-dir", cfg.cache_dir, "cache directory (env RESTIND_CACHE_DIR)");
  app.add_option("--format", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  app.add_flag("--timing", cfg.timing, "print wall time to stderr");

  std::string group, nspec = "G", rho = "all", action = "natural", poly, family, task = "check-t";
  std::size_t degree = 0, points = 0, jobs = 1;
  std::vector<std::string> images;
  bool no_shortcuts = false, no_merge = false, no_characters = false, compare = false;
  std::optional<std::size_t> cls;
  std::uint64_t x = 0;
  std::optional<double> zx, zlogx, zt;
  RegionParams rp;

  auto add_group = [&](CLI::App* s) {
    s->add_option("--group", group, "named group or generators, e.g. S5 or \"(1,2),(1,2,3,4,5)\"")->required();
    s->add_option("--degree", degree, "permutation degree (default: largest point)");
  };
  auto add_n = [&](CLI::App* s, bool required) {
    auto* opt = s->add_option("--n", nspec, "normal subgroup: G, A, derived, minimal, normal:k, lattice:k or generators");
    if (required) opt->required();
  };

  auto* chartab = app.add_subcommand("chartab", "character table");
  add_group(chartab);
  auto* checkt = app.add_subcommand("check-t", "decide the restricted-induction hypothesis for (G, N)");
  add_group(checkt);
  add_n(checkt, true);
  checkt->add_flag("--no-shortcuts", no_shortcuts, "always build the explicit span");
  checkt->add_flag("--no-galois-merge", no_merge, "process Galois-conjugate characters one by one");
  auto* decompose = app.add_subcommand("decompose", "express irreducibles through restricted inductions");
  add_group(decompose);
  add_n(decompose, true);
  decompose->add_option("--rho", rho, "irreducible index or 'all'");
  auto* brauer = app.add_subcommand("brauer", "Reg - 1 as a positive combination of cyclic inductions");
  add_group(brauer);
  auto* artin = app.add_subcommand("artin-span", "span of inductions from cyclic subgroups");
  add_group(artin);
  artin->add_option("--class", cls, "also report the witness for this class");
  auto* minimal = app.add_subcommand("minimal-normal", "normal and minimal normal subgroups");
  add_group(minimal);
  auto* malle = app.add_subcommand("malle", "a-invariants and m-exponents of a permutation action");
  add_group(malle);
  malle->add_option("--action", action, "natural, regular or explicit")->check(CLI::IsMember({"natural", "regular", "explicit"}));
  malle->add_option("--points", points, "number of points of an explicit action");
  malle->add_option("--images", images, "image of each generator, in generator order")->expected(1, -1);
  add_n(malle, false);
  auto* cheb = app.add_subcommand("chebotarev", "Frobenius cycle types and fibered Chebotarev check");
  cheb->add_option("--poly", poly, "monic integer polynomial, e.g. x^5-x-1")->required();
  cheb->add_option("--x", x, "prime bound")->required();
  cheb->add_option("--report", cfg.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  cheb->add_flag("--no-characters", no_characters, "skip partial sums and the class-function profile");
  auto* zfr = app.add_subcommand("zfr", "zero-free region shape, eta_K and the PNT envelope");
  zfr->add_option("--logD", rp.logD, "log of the discriminant")->required();
  zfr->add_option("--epsilon", rp.epsilon, "epsilon in (0,1)")->required();
  zfr->add_option("--order-G", rp.order_G, "|G|")->required();
  zfr->add_option("--deg-k", rp.deg_k, "[k:Q]");
  zfr->add_option("--cg", rp.C_G, "C_G (at least 6)");
  zfr->add_option("--czfr", rp.c_zfr, "constant of the standard zero-free region");
  zfr->add_option("--envelope-c", rp.envelope_C, "constant of the PNT envelope");
  zfr->add_option("--x", zx, "x");
  zfr->add_option("--log-x", zlogx, "log x, for x beyond double range");
  zfr->add_option("--t", zt, "also evaluate omega_K at t");
  auto* sweep = app.add_subcommand("sweep", "run a task over a family of groups");
  sweep->add_option("--family", family, "order:<M> or transitive:<d>")->required();
  sweep->add_option("--task", task, "check-t, brauer or artin-span");
  sweep->add_flag("--no-shortcuts", no_shortcuts, "always build the explicit span");
  sweep->add_flag("--no-galois-merge", no_merge, "process Galois-conjugate characters one by one");
  sweep->add_flag("--compare-shortcuts", compare, "also run the explicit check where a shortcut applied");
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  try {
    if (!cfg.cache_dir.empty()) std::filesystem::create_directories(cfg.cache_dir);
    TOptions topt;
    topt.allow_shortcuts = !no_shortcuts;
    topt.galois_merge = !no_merge;
    std::string name;
    Outcome o;
    if (*chartab) {
      name = "chartab";
      o = run_chartab(group, degree, cfg);
    } else if (*checkt) {
      name = "check-t";
      o = run_check_t(group, degree, nspec, topt, cfg);
    } else if (*decompose) {
      name = "decompose";
      o = run_decompose(group, degree, nspec, rho, cfg);
    } else if (*brauer) {
      name = "brauer";
      o = run_brauer(group, degree, cfg);
    } else if (*artin) {
      name = "artin-span";
      o = run_artin(group, degree, cls, cfg);
    } else if (*minimal) {
      name = "minimal-normal";
      o = run_minimal_normal(group, degree, cfg);
    } else if (*malle) {
      name = "malle";
      o = run_malle(group, degree, action, points, images, nspec, cfg);
    } else if (*cheb) {
      name = "chebotarev";
      o = run_chebotarev(poly, x, !no_characters, cfg);
    } else if (*zfr) {
      name = "zfr";
      o = run_zfr(rp, zx, zlogx, zt);
    } else if (*sweep) {
      name = "sweep";
      SweepOptions so{family, task, topt, compare, jobs};
      o = run_sweep(so, cfg);
    }
    const Json base = cfg.to_json();
    for (const auto& [k, v] : base.items())
      if (!o.config.contains(k)) o.config[k] = v;
    emit(name, o, cfg);
    status = o.status;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    status = 1;
  }
  if (cfg.timing)
    std::cerr << "time: " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() << " s\n";
  return status;
}
