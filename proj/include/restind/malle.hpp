#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "restind/perm_group.hpp"
#include "restind/rational.hpp"
#include "restind/subgroup.hpp"

namespace restind {

/// A permutation action of G on n points, reduced to what the invariants need:
/// the orbit count of each conjugacy class and whether the class acts trivially.
struct PermAction {
  GroupPtr group;
  std::string kind;  // natural | regular | explicit
  std::size_t degree = 0;
  bool transitive = false;
  bool faithful = false;
  std::vector<std::size_t> orbits;     // per class of G
  std::vector<bool> acts_trivially;    // per class of G
};

inline PermAction natural_action(const GroupPtr& G) {
  PermAction a{G, "natural", G->degree(), G->is_transitive(), true, {}, {}};
  for (const auto& c : G->classes()) {
    const auto& p = G->element(c.representative);
    a.orbits.push_back(p.orbit_count());
    a.acts_trivially.push_back(c.representative == 0);
  }
  return a;
}

/// G acting on itself by right multiplication; orbits of <g> are its right cosets.
inline PermAction regular_action(const GroupPtr& G) {
  const PermGroup& g = *G;
  PermAction a{G, "regular", g.order(), true, true, {}, {}};
  for (const auto& c : g.classes()) {
    std::vector<bool> seen(g.order(), false);
    std::size_t orbits = 0;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (seen[x]) continue;
      ++orbits;
      for (ElementId y = x; !seen[y]; y = g.mul(y, c.representative)) seen[y] = true;
    }
    a.orbits.push_back(orbits);
    a.acts_trivially.push_back(c.representative == 0);
  }
  return a;
}

/// The homomorphism sending the i-th generator of G to images[i] in S_n. Checked to be
/// well defined by building the graph group {(g, pi(g))} and comparing orders.
inline PermAction explicit_action(const GroupPtr& G, std::size_t n, const std::vector<std::string>& images) {
  const PermGroup& g = *G;
  if (images.size() != g.generators().size())
    fail(ErrorCode::ParseError, "need one image per generator of the group");
  const std::size_t d = g.degree();
  std::vector<Permutation> graph;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& x = g.generators()[i];
    const auto y = parse_cycles(images[i], n);
    std::vector<std::uint32_t> img(d + n);
    for (std::size_t p = 0; p < d; ++p) img[p] = x[p];
    for (std::size_t p = 0; p < n; ++p) img[d + p] = static_cast<std::uint32_t>(d + y[p]);
    graph.push_back(Permutation(std::move(img)));
  }
  GroupPtr Gamma;
  try {
    Gamma = make_group(d + n, graph, g.order());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CapExceeded) throw;
  }
  if (!Gamma || Gamma->order() != g.order()) fail(ErrorCode::DomainError, "generator images do not define a homomorphism");
  std::vector<Permutation> pi_gens;
  for (const auto& p : graph) {
    std::vector<std::uint32_t> img(n);
    for (std::size_t q = 0; q < n; ++q) img[q] = p[d + q] - static_cast<std::uint32_t>(d);
    pi_gens.push_back(Permutation(std::move(img)));
  }
  auto image = make_group(n, pi_gens, g.order());
  PermAction a{G, "explicit", n, image->is_transitive(), image->order() == g.order(), {}, {}};
  a.orbits.assign(g.class_count(), 0);
  a.acts_trivially.assign(g.class_count(), false);
  std::vector<bool> done(g.class_count(), false);
  for (ElementId e = 0; e < Gamma->order(); ++e) {
    const auto& p = Gamma->element(e);
    std::vector<std::uint32_t> left(d), right(n);
    for (std::size_t q = 0; q < d; ++q) left[q] = p[q];
    for (std::size_t q = 0; q < n; ++q) right[q] = p[d + q] - static_cast<std::uint32_t>(d);
    const auto c = g.class_of(g.id_of(Permutation(std::move(left))));
    if (done[c]) continue;
    done[c] = true;
    const Permutation r(std::move(right));
    a.orbits[c] = r.orbit_count();
    a.acts_trivially[c] = r.orbit_count() == n;
  }
  return a;
}

/// min of n - #orbits(pi(g)) over non-identity classes.
inline std::uint64_t a_pi(const PermAction& a) {
  const auto& G = *a.group;
  if (G.order() < 2) fail(ErrorCode::TrivialGroup, "a_pi needs a nontrivial group");
  std::optional<std::uint64_t> best;
  for (std::size_t c = 0; c < G.class_count(); ++c) {
    if (G.classes()[c].representative == 0 || a.acts_trivially[c]) continue;
    const std::uint64_t v = a.degree - a.orbits[c];
    if (!best || v < *best) best = v;
  }
  if (!best) fail(ErrorCode::DomainError, "the action is trivial");
  return *best;
}

/// Same minimum over g in N' with pi(g) != 1; nullopt ("none") if every such g acts trivially.
inline std::optional<std::uint64_t> a_pi_restricted(const PermAction& a, const Subgroup& Np) {
  if (Np.is_trivial()) fail(ErrorCode::TrivialSubgroup, "N' must be nontrivial");
  if (Np.parent != a.group) fail(ErrorCode::GroupMismatch, "N' is not a subgroup of the acting group");
  const auto& G = *a.group;
  std::optional<std::uint64_t> best;
  for (std::size_t c = 0; c < G.class_count(); ++c) {
    const auto rep = G.classes()[c].representative;
    if (rep == 0 || a.acts_trivially[c]) continue;
    // a normal N' is a union of classes; for others test every member
    bool meets = false;
    for (auto e : G.classes()[c].member_ids)
      if (Np.contains(e)) {
        meets = true;
        break;
      }
    if (!meets) continue;
    const std::uint64_t v = a.degree - a.orbits[c];
    if (!best || v < *best) best = v;
  }
  return best;
}

struct NormalEntry {
  Subgroup subgroup;
  std::optional<std::uint64_t> a;  // a_pi(G, N')
  bool admissible = false;        // N not contained in N'
  Rational reg_max;               // max over 1 != g in N' of |<g>| / (|G| (|<g>| - 1))
};

struct MalleReport {
  std::uint64_t a = 0;
  std::vector<NormalEntry> per_normal;  // nontrivial normal N'
  Rational m_pi;
  Rational m_reg;          // max over admissible N' (equals m_pi for the regular action)
  Rational m_reg_display;  // min over admissible N', as the closed form is displayed
  std::optional<Rational> m_of_G;
  std::optional<Rational> structural;  // S_n in its natural action only
};

namespace detail {

inline Rational regular_quotient_max(const PermGroup& G, const Subgroup& Np) {
  Rational best = 0;
  for (const auto& c : G.classes()) {
    if (c.representative == 0 || !Np.contains(c.representative)) continue;
    const std::uint64_t o = c.element_order;
    best = std::max(best, ratio(Integer(static_cast<unsigned long>(o)), Integer(static_cast<unsigned long>(G.order() * (o - 1)))));
  }
  return best;
}

inline void require_normal(const GroupPtr& G, const Subgroup& N) {
  if (N.parent != G) fail(ErrorCode::GroupMismatch, "N is not a subgroup of this group");
  if (N.is_trivial()) fail(ErrorCode::TrivialN, "N is trivial");
  if (!N.is_normal) fail(ErrorCode::NotNormal, "N is not normal");
}

inline std::vector<NormalEntry> normal_entries(const PermAction& a, const Subgroup& N) {
  std::vector<NormalEntry> out;
  for (auto& Np : normal_subgroups(a.group)) {
    if (Np.is_trivial()) continue;
    NormalEntry e;
    e.a = a_pi_restricted(a, Np);
    e.admissible = !N.members.is_subset_of(Np.members);
    e.reg_max = regular_quotient_max(*a.group, Np);
    e.subgroup = std::move(Np);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

/// max of 1 / a_pi(G, N') over nontrivial normal N' not containing N; 0 if there is none.
inline Rational m_pi(const PermAction& a, const Subgroup& N) {
  detail::require_normal(a.group, N);
  Rational best = 0;
  for (const auto& e : detail::normal_entries(a, N))
    if (e.admissible && e.a) best = std::max(best, ratio(1, Integer(static_cast<unsigned long>(*e.a))));
  return best;
}

/// Closed form for the regular action: max over admissible N' of max_g |<g>| / (|G| (|<g>| - 1)).
inline Rational m_reg(const GroupPtr& G, const Subgroup& N) {
  detail::require_normal(G, N);
  Rational best = 0;
  for (const auto& Np : normal_subgroups(G))
    if (!Np.is_trivial() && !N.members.is_subset_of(Np.members))
      best = std::max(best, detail::regular_quotient_max(*G, Np));
  return best;
}

/// The displayed form with min over admissible N'; 0 if there is none.
inline Rational m_reg_display(const GroupPtr& G, const Subgroup& N) {
  detail::require_normal(G, N);
  std::optional<Rational> best;
  for (const auto& Np : normal_subgroups(G))
    if (!Np.is_trivial() && !N.members.is_subset_of(Np.members)) {
      auto v = detail::regular_quotient_max(*G, Np);
      if (!best || v < *best) best = v;
    }
  return best.value_or(Rational(0));
}

/// min over normal 1 != N != G of max_{1 != g in N} |<g>| / (|G| (|<g>| - 1)); 0 for simple G.
inline Rational m_of_G(const GroupPtr& G) {
  if (G->order() < 2) fail(ErrorCode::TrivialGroup, "m(G) needs a nontrivial group");
  std::optional<Rational> best;
  for (const auto& N : normal_subgroups(G)) {
    if (N.is_trivial() || N.order == G->order()) continue;
    auto v = detail::regular_quotient_max(*G, N);
    if (!best || v < *best) best = v;
  }
  return best.value_or(Rational(0));
}

/// (1/8 - 27/(32 n)) / n!
inline Rational structural_exponent(std::uint64_t n) {
  if (n < 2) fail(ErrorCode::DomainError, "structural exponent needs n >= 2");
  Integer fact = 1;
  for (std::uint64_t k = 2; k <= n; ++k) fact *= static_cast<unsigned long>(k);
  return (ratio(1, 8) - ratio(27, Integer(static_cast<unsigned long>(32 * n)))) / Rational(fact);
}

inline bool is_full_symmetric_natural(const PermAction& a) {
  if (a.kind != "natural") return false;
  Integer fact = 1;
  for (std::size_t k = 2; k <= a.degree; ++k) fact *= static_cast<unsigned long>(k);
  return Integer(static_cast<unsigned long>(a.group->order())) == fact;
}

inline MalleReport malle_report(const PermAction& a, const Subgroup& N) {
  detail::require_normal(a.group, N);
  MalleReport r;
  r.a = a_pi(a);
  r.per_normal = detail::normal_entries(a, N);
  r.m_pi = m_pi(a, N);
  r.m_reg = m_reg(a.group, N);
  r.m_reg_display = m_reg_display(a.group, N);
  if (N.order == a.group->order()) {
    r.m_of_G = m_of_G(a.group);
    ensure(*r.m_of_G == r.m_reg_display, "m(G) differs from the displayed m_reg(G, G)");
  }
  if (is_full_symmetric_natural(a)) r.structural = structural_exponent(a.degree);
  ensure(r.m_pi >= 0, "m_pi is negative");
  ensure(Rational(1) >= r.m_pi * Rational(r.a), "1/a_pi < m_pi");
  return r;
}

}  // namespace restind
