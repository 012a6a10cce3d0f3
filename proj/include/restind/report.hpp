#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "restind/catalog.hpp"
#include "restind/chebotarev.hpp"
#include "restind/json_io.hpp"
#include "restind/malle.hpp"
#include "restind/restind.hpp"
#include "restind/zero_free_region.hpp"

namespace restind {

// ---------------------------------------------------------------------------
// Input resolution

/// Largest point mentioned in cycle-notation text.
inline std::size_t largest_point(const std::string& gens) {
  std::size_t best = 0, cur = 0;
  bool in_number = false;
  for (char c : gens) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      cur = cur * 10 + static_cast<std::size_t>(c - '0');
      in_number = true;
    } else {
      if (in_number) best = std::max(best, cur);
      cur = 0;
      in_number = false;
    }
  }
  if (in_number) best = std::max(best, cur);
  return best;
}

/// A named group (S5, A5, C6, D4, small:12:3, transitive:6:4) or generators in cycle
/// notation; degree 0 means the largest point used.
inline GroupPtr resolve_group(const std::string& spec, std::size_t degree = 0, std::size_t order_cap = kDefaultOrderCap) {
  std::size_t d = 0;
  std::vector<std::string> gens;
  if (named_group_spec(spec, d, gens)) {
    if (degree && degree != d) fail(ErrorCode::ParseError, "degree does not match the named group " + spec);
    return group_from_generators(d, gens, order_cap);
  }
  if (spec.find('(') == std::string::npos) fail(ErrorCode::ParseError, "unknown group '" + spec + "'");
  const std::size_t n = degree ? degree : largest_point(spec);
  if (n == 0) fail(ErrorCode::ParseError, "cannot infer the degree of '" + spec + "'");
  return group_from_generators(n, spec, order_cap);
}

/// N by keyword (G, A, derived, minimal), by index (normal:k, lattice:k) or by generators.
inline Subgroup resolve_subgroup(const GroupPtr& G, const std::string& spec, std::size_t lattice_budget = kDefaultLatticeBudget) {
  auto index_after = [&](const std::string& prefix) {
    std::size_t k = 0;
    if (!detail::parse_count(spec.substr(prefix.size()), k)) fail(ErrorCode::ParseError, "bad index in '" + spec + "'");
    return k;
  };
  if (spec == "G" || spec == "whole") return whole_group(G);
  if (spec == "A") return even_subgroup(G);
  if (spec == "derived") return derived_subgroup(G, whole_group(G));
  if (spec == "minimal") {
    auto m = minimal_normal_subgroups(G);
    if (!m.unique_minimal) fail(ErrorCode::DomainError, "the group has no unique minimal normal subgroup");
    return *m.unique_minimal;
  }
  if (spec.rfind("normal:", 0) == 0) {
    auto normals = normal_subgroups(G);
    const auto k = index_after("normal:");
    if (k >= normals.size()) fail(ErrorCode::ParseError, "normal subgroup index out of range");
    return normals[k];
  }
  if (spec.rfind("lattice:", 0) == 0) {
    auto lat = subgroups_up_to_conjugacy(G, lattice_budget);
    const auto k = index_after("lattice:");
    if (k >= lat.classes.size()) fail(ErrorCode::ParseError, "lattice index out of range");
    return lat.classes[k];
  }
  if (spec.find('(') == std::string::npos) fail(ErrorCode::ParseError, "unknown subgroup '" + spec + "'");
  return subgroup_from_generators(G, {spec});
}

// ---------------------------------------------------------------------------
// Report pieces

inline Json normal_json(const Subgroup& N) {
  Json j = subgroup_json(N);
  j["index"] = N.index();
  return j;
}

inline Json linear_character_json(RestrictionContext& ctx, std::size_t i, std::size_t j) {
  const auto& v = ctx.view(i);
  const auto& lc = ctx.linear(i);
  Json gens = Json::array(), expo = Json::array();
  for (auto g : v.group->generator_ids()) {
    gens.push_back(v.group->element(g).to_cycle_string());
    expo.push_back(lc.values[j][g]);
  }
  return Json{{"index", j}, {"modulus", lc.modulus}, {"generators", gens}, {"exponents", expo}};
}

inline Json int_vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(integer_json(x));
  return a;
}

inline Json candidate_json(RestrictionContext& ctx, const RestrictedCandidate& c) {
  Json j{{"candidate_id", c.candidate_id},
         {"subgroup", subgroup_json(ctx.subgroup(c.subgroup))},
         {"character", linear_character_json(ctx, c.subgroup, c.character)},
         {"galois_orbit", c.orbit}};
  if (!c.induced_mults.empty()) j["induced_multiplicities"] = int_vector_json(c.induced_mults);
  return j;
}

inline Json decision_json(RestrictionContext& ctx, const TDecision& d) {
  Json j{{"verdict", verdict_name(d.verdict)}};
  if (!d.theorem.empty()) {
    j["theorem"] = d.theorem;
    return j;
  }
  const auto& t = *ctx.table();
  Json target = Json::array();
  for (auto i : d.target) target.push_back({{"irreducible", i}, {"degree", t.degrees()[i]}});
  j["target"] = target;
  j["target_rank"] = d.target.size();
  j["rank"] = d.rank;
  j["lattice_complete"] = d.lattice_complete;
  j["candidates_examined"] = d.candidates_examined;
  j["candidates_total"] = d.candidates_total;
  j["subgroups_used"] = d.subgroups_used;
  Json cert = Json::array();
  for (const auto& c : d.certificate) cert.push_back(candidate_json(ctx, c));
  j["certificate"] = cert;
  j["unspanned"] = d.unspanned;
  return j;
}

inline Json decomposition_json(RestrictionContext& ctx, const Decomposition& d) {
  Json terms = Json::array();
  for (const auto& [c, coef] : d.terms) {
    Json t = candidate_json(ctx, c);
    t["coefficient"] = to_pq(coef);
    terms.push_back(t);
  }
  return Json{{"target", d.target}, {"degree", ctx.table()->degrees()[d.target]}, {"terms", terms}};
}

inline Json brauer_json(const PermGroup& N, const BrauerResult& r) {
  Json w = Json::array();
  for (const auto& x : r.witnesses)
    w.push_back({{"generator", N.element(N.classes()[x.cyclic_class].representative).to_cycle_string()},
                 {"cyclic_order", x.order},
                 {"conjugate_subgroups", x.subgroup_count},
                 {"character_exponent", x.exponent},
                 {"coefficient", to_pq(x.coefficient)}});
  return Json{{"identity_holds", r.identity_holds}, {"terms", w}};
}

inline Json optional_count(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json("none"); }

inline Json malle_json(const MalleReport& r) {
  Json per = Json::array();
  for (const auto& e : r.per_normal)
    per.push_back({{"subgroup", normal_json(e.subgroup)},
                   {"a", optional_count(e.a)},
                   {"admissible", e.admissible},
                   {"regular_max", to_pq(e.reg_max)}});
  Json j{{"a", r.a},
         {"m_pi", to_pq(r.m_pi)},
         {"m_reg", to_pq(r.m_reg)},
         {"m_reg_display", to_pq(r.m_reg_display)},
         {"per_normal", per}};
  if (r.m_of_G) j["m_of_G"] = to_pq(*r.m_of_G);
  if (r.structural) j["structural_exponent"] = to_pq(*r.structural);
  return j;
}

inline Json tally_json(const FrobeniusTally& t) {
  Json per = Json::array();
  for (auto it = t.per_class.rbegin(); it != t.per_class.rend(); ++it)
    per.push_back({{"cycle_type", it->first}, {"count", it->second}});
  return Json{{"x", t.x},
              {"pi_x", t.prime_count},
              {"ramified", t.ramified},
              {"unramified", t.unramified()},
              {"pi_plus", t.plus},
              {"pi_minus", t.minus},
              {"per_class", per}};
}

inline Json fibered_json(const FibredReport& r) {
  Json rows = Json::array();
  for (auto it = r.rows.rbegin(); it != r.rows.rend(); ++it)
    rows.push_back({{"cycle_type", it->type},
                    {"class_size", integer_json(it->class_size)},
                    {"parity", it->even ? "even" : "odd"},
                    {"observed", it->observed},
                    {"coefficient", to_pq(it->coefficient)},
                    {"general_coefficient", to_pq(it->general_coefficient)},
                    {"predicted", real_json(it->predicted.get_d())},
                    {"abs_deviation", real_json(it->abs_deviation)},
                    {"rel_deviation", real_json(it->rel_deviation)}});
  Json j{{"rows", rows},
         {"parity_even_exact", r.parity_even},
         {"parity_odd_exact", r.parity_odd},
         {"coefficient_forms_agree", r.formulas_agree},
         {"general_from_group", r.general_from_group},
         {"galois_confirmed", r.galois_confirmed},
         {"galois_confirmation", "HEURISTIC"},
         {"witnesses", r.witnesses}};
  if (!r.galois_confirmed) j["warning"] = std::string(error_code_name(ErrorCode::GaloisGroupUnconfirmed));
  return j;
}

inline Json region_params_json(const RegionParams& p) {
  return Json{{"logD", real_json(p.logD)},
              {"epsilon", real_json(p.epsilon)},
              {"order_G", p.order_G},
              {"deg_k", p.deg_k},
              {"C_G", real_json(p.C_G)},
              {"c_zfr", real_json(p.c_zfr)},
              {"envelope_C", real_json(p.envelope_C)},
              {"delta", real_json(p.delta())},
              {"eps0", real_json(p.eps0())},
              {"branch_log_t", real_json(p.branch_u())}};
}

inline Json eta_json(const EtaValue& v) {
  return Json{{"grid", real_json(v.grid)},
              {"closed_form", real_json(v.closed_form)},
              {"argmin_log_t", real_json(v.argmin_u)},
              {"branch", v.near_branch ? "near" : "far"},
              {"nodes", v.nodes}};
}

inline Json envelope_json(const Envelope& e) {
  return Json{{"value", real_json(e.value)},
              {"log_threshold", real_json(e.log_threshold)},
              {"above_threshold", e.above_threshold}};
}

}  // namespace restind
