#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "restind/character_table.hpp"
#include "restind/perm_group.hpp"
#include "restind/subgroup.hpp"

namespace restind {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "restind-report/1";

/// Reals carry 12 significant digits; non-finite values become strings.
inline Json real_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::stod(buf);
}

inline Json rational_json(const Rational& r) { return to_pq(r); }

/// Exact integers as JSON numbers when they fit in 64 bits, otherwise as decimal strings.
inline Json integer_json(const Integer& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<long>());
}

/// Power-basis coefficients of v in Q(zeta_m), m a multiple of its conductor.
inline Json cyclotomic_json(const Cyclotomic& v, std::uint64_t m) {
  Json a = Json::array();
  for (const auto& c : v.embed(m).canonical()) a.push_back(to_pq(c));
  return a;
}

inline Cyclotomic cyclotomic_from_json(const Json& j, std::uint64_t m) {
  std::vector<Rational> coeffs;
  for (const auto& c : j) coeffs.push_back(parse_rational(c.get<std::string>()));
  return Cyclotomic::from_canonical(m, coeffs);
}

inline Json group_json(const PermGroup& G) {
  Json gens = Json::array();
  for (const auto& g : G.generators()) gens.push_back(g.to_cycle_string());
  return Json{{"degree", G.degree()}, {"generators", gens}, {"order", G.order()}};
}

inline GroupPtr group_from_json(const Json& j, std::size_t order_cap = kDefaultOrderCap) {
  auto G = group_from_generators(j.at("degree").get<std::size_t>(), j.at("generators").get<std::vector<std::string>>(), order_cap);
  if (j.contains("order") && j["order"].get<std::size_t>() != G->order())
    fail(ErrorCode::ParseError, "serialized order does not match the generated group");
  return G;
}

inline Json subgroup_json(const Subgroup& H) {
  Json gens = Json::array();
  for (auto g : H.generator_ids) gens.push_back(H.parent->element(g).to_cycle_string());
  Json j{{"order", H.order}, {"generators", gens}, {"normal", H.is_normal}, {"cyclic", H.is_cyclic}};
  if (H.conjugacy_rep_id != kNoLatticeId) j["lattice_id"] = H.conjugacy_rep_id;
  return j;
}

inline Json classes_json(const PermGroup& G) {
  Json a = Json::array();
  for (const auto& c : G.classes())
    a.push_back({{"representative", G.element(c.representative).to_cycle_string()},
                 {"size", c.size},
                 {"element_order", c.element_order}});
  return a;
}

/// Table with values in Q(zeta_m), m the exponent of the group.
inline Json table_json(const CharacterTable& t) {
  const std::uint64_t m = t.conductor();
  Json irr = Json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    Json values = Json::array();
    for (const auto& v : t[i].values) values.push_back(cyclotomic_json(v, m));
    irr.push_back({{"degree", t.degrees()[i]}, {"values", values}});
  }
  return Json{{"group", group_json(*t.group())},
              {"conductor", m},
              {"classes", classes_json(*t.group())},
              {"irreducibles", irr}};
}

/// Rebuilds a table on G; rejected unless it matches G's classes and satisfies
/// both orthogonality relations.
inline TablePtr table_from_json(const Json& j, const GroupPtr& G) {
  const std::uint64_t m = j.at("conductor").get<std::uint64_t>();
  if (m != G->exponent()) fail(ErrorCode::ParseError, "table conductor does not match the group");
  const auto& cls = j.at("classes");
  if (cls.size() != G->class_count()) fail(ErrorCode::ParseError, "class count mismatch");
  for (std::size_t c = 0; c < cls.size(); ++c)
    if (cls[c].at("representative").get<std::string>() != G->element(G->classes()[c].representative).to_cycle_string())
      fail(ErrorCode::ParseError, "class order mismatch");
  std::vector<ClassFunction> irr;
  for (const auto& row : j.at("irreducibles")) {
    ClassFunction f{G, {}};
    for (const auto& v : row.at("values")) f.values.push_back(cyclotomic_from_json(v, m));
    if (f.values.size() != G->class_count()) fail(ErrorCode::ParseError, "value count mismatch");
    irr.push_back(std::move(f));
  }
  auto t = std::make_shared<const CharacterTable>(G, std::move(irr));
  if (t->size() != G->class_count() || !orthogonality_holds(*t))
    fail(ErrorCode::ParseError, "stored table fails the orthogonality relations");
  return t;
}

namespace detail {

// FNV-1a, stable across platforms, for cache file names
inline std::string stable_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

/// Character table through an on-disk JSON cache under dir (empty: no disk cache).
/// Loaded tables are revalidated; the result also seeds the in-process cache.
inline TablePtr cached_character_table(const GroupPtr& G, const std::string& dir) {
  if (dir.empty()) return character_table(G);
  const std::string key = detail::table_key(*G);
  const std::string path = dir + "/table-" + detail::stable_hash(key) + ".json";
  if (std::ifstream in(path); in) {
    try {
      Json j = Json::parse(in);
      if (j.at("key").get<std::string>() == key) {
        auto t = table_from_json(j.at("table"), G);
        remember_character_table(t);
        return character_table(G);
      }
    } catch (const std::exception&) {
      // unreadable or stale entry: recompute and overwrite
    }
  }
  auto t = character_table(G);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return t;
    out << Json{{"key", key}, {"table", table_json(*t)}}.dump() << "\n";
  }
  std::rename(tmp.c_str(), path.c_str());
  return t;
}

}  // namespace restind
