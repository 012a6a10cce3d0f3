#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "restind/perm_group.hpp"

#ifndef RESTIND_DATA_DIR
#define RESTIND_DATA_DIR "data"
#endif

namespace restind {

/// One row of the bundled group tables.
struct CatalogEntry {
  std::size_t order = 0;
  std::size_t id = 0;       // small-group id, or transitive id within its degree
  std::size_t degree = 0;
  std::size_t class_count = 0;
  std::size_t subgroup_class_count = 0;
  std::string name;
  std::vector<std::string> generators;

  std::string label(bool transitive) const {
    return (transitive ? "transitive:" + std::to_string(degree) : "small:" + std::to_string(order)) + ":" +
           std::to_string(id);
  }
};

inline std::string data_dir() {
  if (const char* env = std::getenv("RESTIND_DATA_DIR"); env && *env) return env;
  return RESTIND_DATA_DIR;
}

namespace detail {

inline std::vector<std::string> read_rows(const std::string& file) {
  std::ifstream in(data_dir() + "/" + file);
  if (!in) fail(ErrorCode::ParseError, "cannot open data file " + data_dir() + "/" + file);
  std::vector<std::string> rows;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') rows.push_back(line);
  return rows;
}

}  // namespace detail

/// Rows "order id degree classes subgroup-classes name gens..." with order <= max_order.
inline std::vector<CatalogEntry> small_groups(std::size_t max_order) {
  std::vector<CatalogEntry> out;
  for (const auto& row : detail::read_rows("small_groups.txt")) {
    std::istringstream ss(row);
    CatalogEntry e;
    ss >> e.order >> e.id >> e.degree >> e.class_count >> e.subgroup_class_count >> e.name;
    if (!ss) fail(ErrorCode::ParseError, "bad small group row: " + row);
    if (e.order > max_order) continue;
    std::string g;
    while (ss >> g) e.generators.push_back(g);
    out.push_back(std::move(e));
  }
  return out;
}

/// Rows "degree id order classes subgroup-classes name gens..." with degree <= max_degree.
inline std::vector<CatalogEntry> transitive_groups(std::size_t max_degree) {
  std::vector<CatalogEntry> out;
  for (const auto& row : detail::read_rows("transitive_groups.txt")) {
    std::istringstream ss(row);
    CatalogEntry e;
    ss >> e.degree >> e.id >> e.order >> e.class_count >> e.subgroup_class_count >> e.name;
    if (!ss) fail(ErrorCode::ParseError, "bad transitive group row: " + row);
    if (e.degree > max_degree) continue;
    std::string g;
    while (ss >> g) e.generators.push_back(g);
    out.push_back(std::move(e));
  }
  return out;
}

inline GroupPtr build_group(const CatalogEntry& e, std::size_t order_cap = kDefaultOrderCap) {
  return group_from_generators(e.degree, e.generators, order_cap);
}

namespace detail {

inline std::string cycle_1_to(std::size_t n) {
  std::string s = "(";
  for (std::size_t i = 1; i <= n; ++i) s += (i > 1 ? "," : "") + std::to_string(i);
  return s + ")";
}

inline bool parse_count(const std::string& s, std::size_t& out) {
  if (s.empty() || s.size() > 6) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = std::stoul(s);
  return true;
}

}  // namespace detail

/// Generators and degree for a named group: Sn, An, Cn, Dn (dihedral of degree n,
/// order 2n), small:<order>:<id>, transitive:<degree>:<id>.
inline bool named_group_spec(const std::string& name, std::size_t& degree, std::vector<std::string>& gens) {
  gens.clear();
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == ':') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  if (name.rfind("small:", 0) == 0 || name.rfind("transitive:", 0) == 0) {
    auto parts = split(name);
    std::size_t a = 0, b = 0;
    if (parts.size() != 3 || !detail::parse_count(parts[1], a) || !detail::parse_count(parts[2], b)) return false;
    const bool transitive = parts[0] == "transitive";
    for (const auto& e : transitive ? transitive_groups(a) : small_groups(a)) {
      if ((transitive ? e.degree : e.order) == a && e.id == b) {
        degree = e.degree;
        gens = e.generators;
        return true;
      }
    }
    fail(ErrorCode::ParseError, "no bundled group " + name);
  }
  if (name.size() < 2) return false;
  std::size_t n = 0;
  if (!detail::parse_count(name.substr(1), n) || n == 0) return false;
  degree = n;
  switch (name[0]) {
    case 'S':
      if (n >= 2) gens = {detail::cycle_1_to(n), "(1,2)"};
      break;
    case 'A':
      for (std::size_t i = 3; i <= n; ++i) gens.push_back("(1,2," + std::to_string(i) + ")");
      break;
    case 'C':
      if (n >= 2) gens = {detail::cycle_1_to(n)};
      break;
    case 'D': {
      if (n < 3) fail(ErrorCode::ParseError, "dihedral alias needs degree at least 3");
      gens = {detail::cycle_1_to(n)};
      std::string refl;
      for (std::size_t i = 1, j = n; i < j; ++i, --j) refl += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      gens.push_back(refl);
      break;
    }
    default:
      return false;
  }
  if (gens.empty()) gens = {"()"};
  return true;
}

inline GroupPtr named_group(const std::string& name, std::size_t order_cap = kDefaultOrderCap) {
  std::size_t degree = 0;
  std::vector<std::string> gens;
  if (!named_group_spec(name, degree, gens)) fail(ErrorCode::ParseError, "unknown group name '" + name + "'");
  return group_from_generators(degree, gens, order_cap);
}

}  // namespace restind
