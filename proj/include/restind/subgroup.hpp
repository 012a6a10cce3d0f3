#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "restind/perm_group.hpp"

namespace restind {

/// Fixed-size bit set over the element ids of a parent group.
class ElementSet {
public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

  std::size_t universe() const noexcept { return universe_; }
  bool contains(ElementId e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  void insert(ElementId e) { words_[e >> 6] |= std::uint64_t{1} << (e & 63); }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }
  bool is_subset_of(const ElementSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i]) return false;
    return true;
  }
  ElementSet intersect(const ElementSet& other) const {
    ElementSet r(universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & other.words_[i];
    return r;
  }
  std::vector<ElementId> to_vector() const {
    std::vector<ElementId> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      auto w = words_[i];
      while (w) {
        out.push_back(static_cast<ElementId>(i * 64 + static_cast<std::size_t>(__builtin_ctzll(w))));
        w &= w - 1;
      }
    }
    return out;
  }
  std::size_t hash() const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) h = (h ^ w) * 1099511628211ull;
    return h;
  }
  friend bool operator==(const ElementSet&, const ElementSet&) = default;

private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

inline constexpr std::size_t kNoLatticeId = static_cast<std::size_t>(-1);

struct Subgroup {
  GroupPtr parent;
  ElementSet members;
  std::vector<ElementId> element_ids;  // sorted
  std::vector<ElementId> generator_ids;
  std::size_t order = 1;
  bool is_normal = false;
  bool is_cyclic = false;
  std::size_t conjugacy_rep_id = kNoLatticeId;
  std::size_t conjugate_count = 1;  // [G : N_G(H)]

  bool contains(ElementId e) const { return members.contains(e); }
  bool is_trivial() const { return order == 1; }
  std::size_t index() const { return parent->order() / order; }
};

namespace detail {

inline bool normal_in_parent(const PermGroup& G, const ElementSet& set, const std::vector<ElementId>& gens) {
  for (auto g : G.generator_ids())
    for (auto h : gens)
      if (!set.contains(G.conjugate(h, g))) return false;
  return true;
}

inline bool cyclic_set(const PermGroup& G, const std::vector<ElementId>& elems) {
  for (auto e : elems)
    if (G.element_order(e) == elems.size()) return true;
  return false;
}

}  // namespace detail

/// Subgroup generated by `gens`, optionally starting from an already-closed subgroup `base`.
inline Subgroup closure(const GroupPtr& G, const std::vector<ElementId>& gens, const Subgroup* base = nullptr) {
  Subgroup s;
  s.parent = G;
  s.members = ElementSet(G->order());
  std::vector<ElementId> elems;
  std::vector<ElementId> all_gens;
  if (base) {
    elems = base->element_ids;
    for (auto e : elems) s.members.insert(e);
    all_gens = base->generator_ids;
  } else {
    elems.push_back(0);
    s.members.insert(0);
  }
  for (auto g : gens)
    if (g != 0 && std::find(all_gens.begin(), all_gens.end(), g) == all_gens.end()) all_gens.push_back(g);
  std::size_t head = 0;
  // Elements of a closed base are stable under the base generators; only the new ones need them.
  while (head < elems.size()) {
    ElementId e = elems[head++];
    for (auto g : all_gens) {
      ElementId p = G->mul(e, g);
      if (!s.members.contains(p)) {
        s.members.insert(p);
        elems.push_back(p);
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  s.element_ids = std::move(elems);
  s.generator_ids = std::move(all_gens);
  s.order = s.element_ids.size();
  s.is_normal = detail::normal_in_parent(*G, s.members, s.generator_ids);
  s.is_cyclic = detail::cyclic_set(*G, s.element_ids);
  return s;
}

inline Subgroup trivial_subgroup(const GroupPtr& G) { return closure(G, {}); }
inline Subgroup whole_group(const GroupPtr& G) { return closure(G, G->generator_ids()); }

inline Subgroup subgroup_from_generators(const GroupPtr& G, const std::vector<std::string>& gens) {
  std::vector<ElementId> ids;
  for (const auto& s : gens)
    for (const auto& g : split_generators(s)) {
      auto p = parse_cycles(g, G->degree());
      if (!G->contains(p)) fail(ErrorCode::NotSubgroup, g + " is not an element of the group");
      ids.push_back(G->id_of(p));
    }
  return closure(G, ids);
}

/// Subgroup with exactly the given elements (must already be closed).
inline Subgroup subgroup_from_set(const GroupPtr& G, const ElementSet& set) {
  auto elems = set.to_vector();
  // A closed set is generated by its elements; keep a short generating list.
  std::vector<ElementId> gens;
  Subgroup cur = trivial_subgroup(G);
  for (auto e : elems) {
    if (cur.contains(e)) continue;
    gens.push_back(e);
    cur = closure(G, {e}, &cur);
  }
  ensure(cur.members == set, "subgroup_from_set: set is not closed");
  return cur;
}

/// Even permutations of G.
inline Subgroup even_subgroup(const GroupPtr& G) {
  ElementSet set(G->order());
  for (ElementId e = 0; e < G->order(); ++e) {
    std::size_t transpositions = 0;
    for (int len : G->element(e).cycle_type()) transpositions += static_cast<std::size_t>(len - 1);
    if (transpositions % 2 == 0) set.insert(e);
  }
  return subgroup_from_set(G, set);
}

inline ElementSet conjugate_set(const PermGroup& G, const Subgroup& H, ElementId g) {
  ElementSet r(G.order());
  for (auto h : H.element_ids) r.insert(G.conjugate(h, g));
  return r;
}

inline std::vector<ElementId> normalizer_elements(const PermGroup& G, const Subgroup& H) {
  std::vector<ElementId> out;
  for (ElementId g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto h : H.generator_ids)
      if (!H.contains(G.conjugate(h, g))) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return out;
}

inline bool are_conjugate(const PermGroup& G, const Subgroup& A, const Subgroup& B) {
  if (A.order != B.order) return false;
  for (ElementId g = 0; g < G.order(); ++g) {
    bool ok = true;
    for (auto a : A.generator_ids)
      if (!B.contains(G.conjugate(a, g))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

/// Normal closure inside the subgroup H of the elements `seeds` (all in H).
/// One representative <g> per conjugacy class of cyclic subgroups, g a class
/// representative; conjugate_count is filled in. Ordered by subgroup order, then class.
inline std::vector<Subgroup> cyclic_subgroup_classes(const GroupPtr& G) {
  std::vector<Subgroup> out;
  for (const auto& cls : G->classes()) {
    Subgroup C = closure(G, {cls.representative});
    C.generator_ids = {cls.representative};
    bool seen = false;
    for (const auto& D : out)
      if (are_conjugate(*G, C, D)) {
        seen = true;
        break;
      }
    if (seen) continue;
    C.conjugate_count = G->order() / normalizer_elements(*G, C).size();
    out.push_back(std::move(C));
  }
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.order < b.order; });
  return out;
}

inline Subgroup normal_closure_in(const GroupPtr& G, const Subgroup& H, const std::vector<ElementId>& seeds) {
  Subgroup K = closure(G, seeds);
  for (;;) {
    std::vector<ElementId> extra;
    for (auto k : K.generator_ids)
      for (auto h : H.generator_ids) {
        ElementId c = G->conjugate(k, h);
        if (!K.contains(c)) extra.push_back(c);
      }
    if (extra.empty()) return K;
    K = closure(G, extra, &K);
  }
}

inline Subgroup derived_subgroup(const GroupPtr& G, const Subgroup& H) {
  std::vector<ElementId> comms;
  for (auto a : H.generator_ids)
    for (auto b : H.generator_ids) {
      ElementId c = G->mul(G->mul(G->inverse(a), G->inverse(b)), G->mul(a, b));
      if (c != 0) comms.push_back(c);
    }
  return normal_closure_in(G, H, comms);
}

inline bool is_solvable(const GroupPtr& G, const Subgroup& H) {
  Subgroup cur = H;
  while (!cur.is_trivial()) {
    Subgroup next = derived_subgroup(G, cur);
    if (next.order == cur.order) return false;
    cur = std::move(next);
  }
  return true;
}

inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      return n == 1;
    }
  }
  return true;
}

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup lattice up to conjugacy

struct SubgroupLattice {
  GroupPtr group;
  std::vector<Subgroup> classes;  // one representative per conjugacy class, canonical order
  bool complete = true;           // false: budget exhausted, the list is sound but maybe partial
  std::size_t closures = 0;
};

inline constexpr std::size_t kDefaultLatticeBudget = 2'000'000;

/// Conjugacy classes of subgroups by layered extension: every representative H is
/// extended by elements x outside H, one per orbit of N_G(H) on the cosets Hx (up to
/// generators of <x>), and the result is kept if it is not conjugate to a known class.
/// `budget` bounds the number of closures; exhausting it yields complete = false.
inline SubgroupLattice subgroups_up_to_conjugacy(const GroupPtr& G,
                                                 std::size_t budget = kDefaultLatticeBudget) {
  const PermGroup& g = *G;
  SubgroupLattice lat;
  lat.group = G;
  std::vector<Subgroup> reps;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> by_invariant;

  auto invariant = [&](const Subgroup& K) {
    std::vector<std::size_t> key(g.class_count() + 1, 0);
    key[0] = K.order;
    for (auto e : K.element_ids) ++key[1 + g.class_of(e)];
    return key;
  };
  auto try_add = [&](Subgroup K) {
    if (seen.count(K.members)) return;
    auto key = invariant(K);
    auto& bucket = by_invariant[key];
    for (auto idx : bucket)
      if (are_conjugate(g, K, reps[idx])) {
        seen.emplace(K.members, idx);
        return;
      }
    seen.emplace(K.members, reps.size());
    bucket.push_back(reps.size());
    reps.push_back(std::move(K));
  };

  try_add(trivial_subgroup(G));
  for (const auto& c : g.classes())
    if (c.representative != 0) {
      ++lat.closures;
      try_add(closure(G, {c.representative}));
    }

  for (std::size_t idx = 0; idx < reps.size(); ++idx) {
    if (reps[idx].order == g.order()) continue;
    const Subgroup H = reps[idx];
    auto norm = normalizer_elements(g, H);
    std::vector<bool> done(g.order(), false);
    for (auto h : H.element_ids) done[h] = true;
    for (ElementId x = 0; x < g.order(); ++x) {
      if (done[x]) continue;
      if (lat.closures >= budget) {
        lat.complete = false;
        break;
      }
      ++lat.closures;
      try_add(closure(G, {x}, &H));
      // <H, y> is conjugate (or equal) to <H, x> for every y = h * (x^k)^n with n in N_G(H).
      const auto ord = g.element_order(x);
      for (std::uint64_t k = 1; k < ord; ++k) {
        if (std::gcd(k, ord) != 1) continue;
        ElementId xk = g.power(x, k);
        for (auto n : norm) {
          ElementId y = g.conjugate(xk, n);
          if (done[y]) continue;
          for (auto h : H.element_ids) done[g.mul(h, y)] = true;
        }
      }
    }
    if (!lat.complete) break;
  }

  std::sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.element_ids < b.element_ids;
  });
  for (std::size_t i = 0; i < reps.size(); ++i) {
    reps[i].conjugacy_rep_id = i;
    reps[i].conjugate_count = g.order() / normalizer_elements(g, reps[i]).size();
  }
  lat.classes = std::move(reps);
  return lat;
}

// ---------------------------------------------------------------------------
// Normal structure

/// All normal subgroups, computed independently of the lattice as joins of normal
/// closures of conjugacy classes. Sorted by (order, element ids); includes 1 and G.
inline std::vector<Subgroup> normal_subgroups(const GroupPtr& G) {
  const PermGroup& g = *G;
  const Subgroup whole = whole_group(G);
  std::vector<Subgroup> found;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto add = [&](Subgroup K) {
    if (seen.emplace(K.members, found.size()).second) found.push_back(std::move(K));
  };
  add(trivial_subgroup(G));
  for (const auto& c : g.classes())
    if (c.representative != 0) add(normal_closure_in(G, whole, {c.representative}));
  for (std::size_t i = 0; i < found.size(); ++i)
    for (const auto& c : g.classes()) {
      if (found[i].contains(c.representative)) continue;
      const Subgroup base = found[i];
      add(normal_closure_in(G, whole, [&] {
        auto s = base.generator_ids;
        s.push_back(c.representative);
        return s;
      }()));
    }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order != b.order) return a.order < b.order;
    return a.element_ids < b.element_ids;
  });
  for (auto& n : found) ensure(n.is_normal, "normal closure is not normal");
  return found;
}

struct MinimalNormalResult {
  std::vector<Subgroup> minimal;
  std::optional<Subgroup> unique_minimal;
};

inline MinimalNormalResult minimal_normal_subgroups(const GroupPtr& G) {
  auto normals = normal_subgroups(G);
  MinimalNormalResult r;
  for (const auto& n : normals) {
    if (n.is_trivial()) continue;
    bool minimal = true;
    for (const auto& m : normals)
      if (!m.is_trivial() && m.order < n.order && m.members.is_subset_of(n.members)) {
        minimal = false;
        break;
      }
    if (minimal) r.minimal.push_back(n);
  }
  if (r.minimal.size() == 1) r.unique_minimal = r.minimal.front();
  return r;
}

/// Whether [H : H ∩ N] = [G : N] for the point stabilizer H of point 0, where G is
/// transitive of prime degree.
inline bool stabilizer_index_check(const GroupPtr& G, const Subgroup& N) {
  if (!is_prime(G->degree())) fail(ErrorCode::NotPrimeDegree, "degree " + std::to_string(G->degree()) + " is not prime");
  if (!G->is_transitive()) fail(ErrorCode::NotTransitive, "group is not transitive");
  if (!N.is_normal) fail(ErrorCode::NotNormal, "N is not normal");
  std::size_t h = 0, hn = 0;
  for (ElementId e = 0; e < G->order(); ++e)
    if (G->element(e)[0] == 0) {
      ++h;
      if (N.contains(e)) ++hn;
    }
  return h / hn == G->order() / N.order;
}

// ---------------------------------------------------------------------------
// Quotient classes

struct QuotientClassMap {
  std::vector<std::size_t> to_quotient;      // G-class id -> G/N-class id
  std::vector<std::uint64_t> quotient_sizes;  // |[C]_{G/N}|
  std::size_t normal_order = 1;
};

/// Maps each class of G to its image class in G/N. Quotient classes are numbered
/// by the smallest G-class id in their preimage.
inline QuotientClassMap quotient_class_map(const GroupPtr& G, const Subgroup& N) {
  if (!N.is_normal) fail(ErrorCode::NotNormal, "N is not normal");
  const auto r = G->class_count();
  std::vector<std::size_t> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t c = 0; c < r; ++c) {
    ElementId g = G->classes()[c].representative;
    for (auto n : N.element_ids) {
      auto a = find(c), b = find(G->class_of(G->mul(g, n)));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  QuotientClassMap q;
  q.normal_order = N.order;
  q.to_quotient.assign(r, 0);
  std::map<std::size_t, std::size_t> root_to_id;
  std::vector<std::uint64_t> total;
  for (std::size_t c = 0; c < r; ++c) {
    auto root = find(c);
    auto [it, inserted] = root_to_id.emplace(root, root_to_id.size());
    if (inserted) total.push_back(0);
    q.to_quotient[c] = it->second;
    total[it->second] += G->classes()[c].size;
  }
  for (auto t : total) {
    ensure(t % N.order == 0, "quotient fiber size not divisible by |N|");
    q.quotient_sizes.push_back(t / N.order);
  }
  return q;
}

}  // namespace restind
