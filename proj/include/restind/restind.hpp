#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "restind/character_table.hpp"
#include "restind/linalg.hpp"
#include "restind/subgroup.hpp"

namespace restind {

// ---------------------------------------------------------------------------
// Induced multiplicities by Frobenius reciprocity:
// <Ind chi, rho>_G = (1/|H|) sum over G-classes c of A_c conj(rho(c)),
// A_c = sum of chi(h) over h in H ∩ c.

inline IntVector induced_multiplicities(const CharacterTable& t, const SubgroupView& v, const LinearCharacters& lc,
                                        std::size_t j) {
  const PermGroup& G = *v.parent;
  const std::uint64_t E = lc.modulus;
  std::vector<std::vector<__int128>> counts(G.class_count());
  for (ElementId e = 0; e < v.group->order(); ++e) {
    auto& row = counts[G.class_of(v.to_parent[e])];
    if (row.empty()) row.assign(E, 0);
    ++row[lc.values[j][e]];
  }
  std::vector<std::size_t> used;
  std::vector<Cyclotomic> sums;
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (!counts[c].empty()) {
      used.push_back(c);
      sums.push_back(Cyclotomic::from_dense(E, counts[c]));
    }
  IntVector out;
  out.reserve(t.size());
  for (std::size_t r = 0; r < t.size(); ++r) {
    const auto& rho = t[r];
    auto ip = detail::weighted_conj_sum(
        used.size(), [&](std::size_t k) -> const Cyclotomic& { return sums[k]; },
        [&](std::size_t k) -> const Cyclotomic& { return rho.values[used[k]]; }, [](std::size_t) { return 1L; });
    ensure(ip.is_rational(), "induced multiplicity is not rational");
    const Rational m = ip.rational_value() / Rational(v.group->order());
    ensure(is_integer(m) && m >= 0, "induced multiplicity is not a natural number");
    out.push_back(m.get_num());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-group cache of subgroups, their linear characters and induced multiplicities.
// Induced vectors do not depend on N, so one context serves every normal subgroup.
// Not thread-safe; use one context per thread.

class RestrictionContext {
public:
  explicit RestrictionContext(GroupPtr G, std::size_t lattice_budget = kDefaultLatticeBudget)
      : group_(std::move(G)), budget_(lattice_budget) {}

  const GroupPtr& group() const noexcept { return group_; }

  const TablePtr& table() {
    if (!table_) table_ = character_table(group_);
    return table_;
  }

  const SubgroupLattice& lattice() {
    if (!lattice_) {
      lattice_ = subgroups_up_to_conjugacy(group_, budget_);
      slots_.resize(lattice_->classes.size());
    }
    return *lattice_;
  }

  const Subgroup& subgroup(std::size_t i) { return lattice().classes.at(i); }

  /// Lattice ids: cyclic subgroups by increasing order, then the rest by increasing order.
  const std::vector<std::size_t>& candidate_order() {
    if (order_.empty()) {
      const auto& cls = lattice().classes;
      order_.resize(cls.size());
      std::iota(order_.begin(), order_.end(), std::size_t{0});
      std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
        if (cls[a].is_cyclic != cls[b].is_cyclic) return cls[a].is_cyclic;
        return cls[a].order < cls[b].order;
      });
    }
    return order_;
  }

  const SubgroupView& view(std::size_t i) {
    auto& s = slot(i);
    if (!s.view) s.view = make_view(subgroup(i));
    return *s.view;
  }

  const LinearCharacters& linear(std::size_t i) {
    auto& s = slot(i);
    if (!s.linear) {
      s.linear = linear_characters(view(i).group);
      s.induced.resize(s.linear->values.size());
    }
    return *s.linear;
  }

  ClassFunction character(std::size_t i, std::size_t j) { return linear_to_class_function(view(i).group, linear(i), j); }

  /// Multiplicities of Ind_H^G chi_j over Irr(G).
  const IntVector& induced(std::size_t i, std::size_t j) {
    const auto& lc = linear(i);
    auto& cache = slot(i).induced;
    if (!cache.at(j)) cache[j] = induced_multiplicities(*table(), view(i), lc, j);
    return *cache[j];
  }

  /// Smallest index in the Galois orbit of chi_j (chi -> chi^a, a prime to the modulus).
  std::size_t galois_orbit(std::size_t i, std::size_t j) {
    auto& s = slot(i);
    if (s.orbit.empty()) {
      const auto& lc = linear(i);
      const std::uint64_t E = lc.modulus;
      std::map<std::vector<std::uint32_t>, std::size_t> index;
      for (std::size_t k = 0; k < lc.values.size(); ++k) index.emplace(lc.values[k], k);
      s.orbit.assign(lc.values.size(), static_cast<std::size_t>(-1));
      for (std::size_t k = 0; k < lc.values.size(); ++k) {
        if (s.orbit[k] != static_cast<std::size_t>(-1)) continue;
        for (std::uint64_t a = 1; a < std::max<std::uint64_t>(E, 2); ++a) {
          if (std::gcd(a, E) != 1) continue;
          auto w = lc.values[k];
          for (auto& x : w) x = static_cast<std::uint32_t>((x * a) % E);
          s.orbit[index.at(w)] = k;
        }
      }
    }
    return s.orbit.at(j);
  }

private:
  struct Slot {
    std::optional<SubgroupView> view;
    std::optional<LinearCharacters> linear;
    std::vector<std::optional<IntVector>> induced;
    std::vector<std::size_t> orbit;
  };

  Slot& slot(std::size_t i) {
    lattice();
    return slots_.at(i);
  }

  GroupPtr group_;
  std::size_t budget_;
  TablePtr table_;
  std::optional<SubgroupLattice> lattice_;
  std::vector<Slot> slots_;
  std::vector<std::size_t> order_;
};

// ---------------------------------------------------------------------------
// Candidates

struct RestrictedCandidate {
  std::size_t candidate_id = 0;
  std::size_t subgroup = 0;   // lattice id of H
  std::size_t character = 0;  // index into the linear characters of H
  std::size_t orbit = 0;      // smallest character index in its Galois orbit
  IntVector induced_mults;    // over Irr(G); may be empty if not yet needed
};

inline void check_normal_nontrivial(const GroupPtr& G, const Subgroup& N) {
  if (N.parent != G) fail(ErrorCode::GroupMismatch, "N is not a subgroup of this group");
  if (N.is_trivial()) fail(ErrorCode::TrivialN, "N is trivial");
  if (!N.is_normal) fail(ErrorCode::NotNormal, "N is not normal");
}

/// Irreducible indices rho with N not contained in ker rho.
inline std::vector<std::size_t> faithful_coordinates(const CharacterTable& t, const Subgroup& N) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (!t.kernel_contains(i, N)) out.push_back(i);
  return out;
}

namespace detail {

/// Eligible (H, chi) pairs with H ∩ N not in ker chi, in candidate order, vectors not filled.
inline std::vector<RestrictedCandidate> eligible_pairs(RestrictionContext& ctx, const Subgroup& N, bool cyclic_only) {
  std::vector<RestrictedCandidate> out;
  for (auto i : ctx.candidate_order()) {
    const auto& H = ctx.subgroup(i);
    if (cyclic_only && !H.is_cyclic) continue;
    const auto& v = ctx.view(i);
    std::vector<ElementId> meet;  // H ids of H ∩ N
    for (ElementId e = 0; e < v.group->order(); ++e)
      if (N.contains(v.to_parent[e])) meet.push_back(e);
    if (meet.size() == 1) continue;
    const auto& lc = ctx.linear(i);
    for (std::size_t j = 0; j < lc.values.size(); ++j) {
      bool nontrivial = false;
      for (auto e : meet)
        if (lc.values[j][e] != 0) {
          nontrivial = true;
          break;
        }
      if (!nontrivial) continue;
      RestrictedCandidate c;
      c.candidate_id = out.size();
      c.subgroup = i;
      c.character = j;
      c.orbit = ctx.galois_orbit(i, j);
      out.push_back(std::move(c));
    }
  }
  return out;
}

inline void fill_vector(RestrictionContext& ctx, const Subgroup& N, RestrictedCandidate& c) {
  if (!c.induced_mults.empty()) return;
  c.induced_mults = ctx.induced(c.subgroup, c.character);
  const auto& t = *ctx.table();
  for (std::size_t r = 0; r < t.size(); ++r)
    if (t.kernel_contains(r, N)) ensure(c.induced_mults[r] == 0, "candidate induction meets R(G/N)");
}

inline IntVector project(const IntVector& v, const std::vector<std::size_t>& coords) {
  IntVector out;
  out.reserve(coords.size());
  for (auto c : coords) out.push_back(v[c]);
  return out;
}

}  // namespace detail

/// Every (H, chi) with H a lattice representative, chi one-dimensional on H and
/// H ∩ N not in ker chi, with its induced multiplicity vector.
inline std::vector<RestrictedCandidate> restricted_candidates(RestrictionContext& ctx, const Subgroup& N,
                                                              bool cyclic_only = false) {
  check_normal_nontrivial(ctx.group(), N);
  auto out = detail::eligible_pairs(ctx, N, cyclic_only);
  for (auto& c : out) detail::fill_vector(ctx, N, c);
  return out;
}

// ---------------------------------------------------------------------------
// Hypothesis T

enum class Verdict { Holds, HoldsByTheorem, UndecidedPartialLattice, Fails };

inline std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::HoldsByTheorem: return "HOLDS_BY_THEOREM";
    case Verdict::UndecidedPartialLattice: return "UNDECIDED_PARTIAL_LATTICE";
    case Verdict::Fails: return "FAILS";
  }
  return "?";
}

struct TOptions {
  bool allow_shortcuts = true;
  bool galois_merge = true;
  bool cyclic_only = false;
};

struct TDecision {
  Verdict verdict = Verdict::Fails;
  std::string theorem;                      // "solvable-N" or "prime-power-index"
  std::vector<std::size_t> target;         // irreducibles with N not in the kernel
  std::size_t rank = 0;
  std::vector<RestrictedCandidate> certificate;
  std::vector<std::size_t> unspanned;       // target irreducibles outside the span
  std::vector<std::size_t> subgroups_used;  // lattice ids appearing in the certificate
  std::size_t candidates_examined = 0;
  std::size_t candidates_total = 0;
  bool lattice_complete = true;
};

inline TDecision check_hypothesis_T(RestrictionContext& ctx, const Subgroup& N, const TOptions& opt = {}) {
  const GroupPtr& G = ctx.group();
  check_normal_nontrivial(G, N);
  TDecision d;
  if (opt.allow_shortcuts) {
    if (is_solvable(G, N)) d.theorem = "solvable-N";
    else if (is_prime_power(G->order() / N.order)) d.theorem = "prime-power-index";
    if (!d.theorem.empty()) {
      d.verdict = Verdict::HoldsByTheorem;
      return d;
    }
  }
  const auto& t = *ctx.table();
  d.target = faithful_coordinates(t, N);
  d.lattice_complete = ctx.lattice().complete;
  auto cands = detail::eligible_pairs(ctx, N, opt.cyclic_only);
  d.candidates_total = cands.size();

  IncrementalRank rank(d.target.size());
  std::vector<bool> taken(cands.size(), false);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> orbit_members;
  for (std::size_t k = 0; k < cands.size(); ++k) orbit_members[{cands[k].subgroup, cands[k].orbit}].push_back(k);
  std::vector<bool> processed(cands.size(), false);
  for (std::size_t k = 0; k < cands.size() && !rank.full(); ++k) {
    if (processed[k]) continue;
    // with merging, a whole Galois orbit is processed and reported together
    std::vector<std::size_t> group{k};
    if (opt.galois_merge) group = orbit_members[{cands[k].subgroup, cands[k].orbit}];
    bool gained = false;
    for (auto m : group) {
      processed[m] = true;
      detail::fill_vector(ctx, N, cands[m]);
      ++d.candidates_examined;
      if (!rank.full() && rank.add(detail::project(cands[m].induced_mults, d.target))) {
        gained = true;
        if (!opt.galois_merge) taken[m] = true;
      }
    }
    if (gained && opt.galois_merge)
      for (auto m : group) taken[m] = true;
  }
  d.rank = rank.rank();
  for (std::size_t k = 0; k < cands.size(); ++k)
    if (taken[k]) d.certificate.push_back(cands[k]);
  for (const auto& c : d.certificate) d.subgroups_used.push_back(c.subgroup);
  std::sort(d.subgroups_used.begin(), d.subgroups_used.end());
  d.subgroups_used.erase(std::unique(d.subgroups_used.begin(), d.subgroups_used.end()), d.subgroups_used.end());

  std::vector<IntVector> rows;
  for (const auto& c : d.certificate) rows.push_back(detail::project(c.induced_mults, d.target));
  ensure(bareiss_rank(rows) == d.rank, "certificate rank does not re-verify");

  if (rank.full()) {
    d.verdict = Verdict::Holds;
    return d;
  }
  for (std::size_t r = 0; r < d.target.size(); ++r) {
    IntVector e(d.target.size(), 0);
    e[r] = 1;
    if (!solve_in_span(rows, e)) d.unspanned.push_back(d.target[r]);
  }
  d.verdict = d.lattice_complete ? Verdict::Fails : Verdict::UndecidedPartialLattice;
  return d;
}

/// Rank of the cyclic-subgroup candidates against the target rank.
inline std::pair<std::size_t, std::size_t> cyclic_only_rank(RestrictionContext& ctx, const Subgroup& N) {
  TOptions opt;
  opt.allow_shortcuts = false;
  opt.galois_merge = false;
  opt.cyclic_only = true;
  auto d = check_hypothesis_T(ctx, N, opt);
  return {d.rank, d.target.size()};
}

// ---------------------------------------------------------------------------
// Certificates

struct Decomposition {
  std::size_t target = 0;
  std::vector<std::pair<RestrictedCandidate, Rational>> terms;
};

/// rho = sum of c * Ind(chi) over the given candidates, solved exactly and re-substituted.
inline Decomposition decompose_restricted(RestrictionContext& ctx, const Subgroup& N, std::size_t rho,
                                          std::vector<RestrictedCandidate> columns) {
  check_normal_nontrivial(ctx.group(), N);
  const auto& t = *ctx.table();
  if (rho >= t.size()) fail(ErrorCode::DomainError, "irreducible index out of range");
  if (t.kernel_contains(rho, N)) fail(ErrorCode::KernelContainsN, "N lies in the kernel of the target irreducible");
  std::vector<IntVector> cols;
  for (auto& c : columns) {
    detail::fill_vector(ctx, N, c);
    cols.push_back(c.induced_mults);
  }
  IntVector e(t.size(), 0);
  e[rho] = 1;
  auto x = solve_in_span(cols, e);
  if (!x) fail(ErrorCode::NotSpanned, "target irreducible is not in the span of the candidates");
  Decomposition out;
  out.target = rho;
  IntVector check(t.size(), 0);
  RatVector sum(t.size(), 0);
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if ((*x)[k] == 0) continue;
    for (std::size_t r = 0; r < t.size(); ++r) sum[r] += (*x)[k] * Rational(columns[k].induced_mults[r]);
    out.terms.emplace_back(columns[k], (*x)[k]);
  }
  for (std::size_t r = 0; r < t.size(); ++r) ensure(sum[r] == Rational(e[r]), "decomposition does not re-substitute");
  return out;
}

/// Uses the spanning certificate of the explicit (shortcut-free, unmerged) check.
inline Decomposition decompose_restricted(RestrictionContext& ctx, const Subgroup& N, std::size_t rho) {
  check_normal_nontrivial(ctx.group(), N);
  if (rho < ctx.table()->size() && ctx.table()->kernel_contains(rho, N))
    fail(ErrorCode::KernelContainsN, "N lies in the kernel of the target irreducible");
  TOptions opt;
  opt.allow_shortcuts = false;
  opt.galois_merge = false;
  auto d = check_hypothesis_T(ctx, N, opt);
  return decompose_restricted(ctx, N, rho, d.certificate);
}

// ---------------------------------------------------------------------------
// Brauer and Artin

struct BrauerWitness {
  std::size_t cyclic_class = 0;   // class of the generator g in N
  std::size_t subgroup_count = 1; // number of conjugates of <g>
  std::uint64_t order = 1;        // |<g>|
  std::uint64_t exponent = 0;     // chi(g^i) = zeta_order^(exponent * i)
  Rational coefficient;
};

struct BrauerResult {
  std::vector<BrauerWitness> witnesses;
  bool identity_holds = false;
};

/// Reg_N - 1_N = sum over cyclic subgroups C of N and nontrivial chi of C of c_chi Ind chi,
/// c_chi = (1/|N|) sum over generators h of C of (1 - conj chi(h)). Each cyclic subgroup
/// counts once; conjugate subgroups are folded into subgroup_count.
inline BrauerResult brauer_decomposition(const GroupPtr& N) {
  if (N->order() < 2) fail(ErrorCode::TrivialGroup, "Brauer decomposition needs |N| >= 2");
  BrauerResult out;
  ClassFunction rhs = regular_character(N) - constant_function(N, 1);
  ClassFunction lhs = constant_function(N, 0);
  for (const auto& C : cyclic_subgroup_classes(N)) {
    if (C.is_trivial()) continue;
    const ElementId g = C.generator_ids.front();
    const std::uint64_t o = C.order;
    auto view = make_view(C);
    // H ids of g^i
    std::vector<ElementId> pow(o);
    ElementId x = 0;
    for (std::uint64_t i = 0; i < o; ++i) {
      pow[i] = x;
      x = N->mul(x, g);
    }
    std::vector<ElementId> local(N->order(), 0);
    for (ElementId e = 0; e < view.group->order(); ++e) local[view.to_parent[e]] = e;
    for (std::uint64_t a = 1; a < o; ++a) {
      Cyclotomic s(o);
      for (std::uint64_t i = 1; i < o; ++i)
        if (std::gcd(i, o) == 1) s += Cyclotomic(o, 1) - Cyclotomic::root(o, -static_cast<std::int64_t>((a * i) % o));
      s = s / Rational(N->order());
      ensure(s.is_rational(), "Brauer coefficient is not rational");
      BrauerWitness w;
      w.cyclic_class = N->class_of(g);
      w.subgroup_count = C.conjugate_count;
      w.order = o;
      w.exponent = a;
      w.coefficient = s.rational_value();
      ensure(w.coefficient > 0, "Brauer coefficient is not positive");
      ClassFunction chi{view.group, {}};
      std::vector<std::uint64_t> expo(view.group->order());
      for (std::uint64_t i = 0; i < o; ++i) expo[local[pow[i]]] = (a * i) % o;
      for (const auto& cls : view.group->classes())
        chi.values.push_back(Cyclotomic::root(o, static_cast<std::int64_t>(expo[cls.representative])));
      ClassFunction ind = induce(view, chi);
      ind *= w.coefficient * Rational(w.subgroup_count);
      lhs += ind;
      out.witnesses.push_back(std::move(w));
    }
  }
  out.identity_holds = lhs == rhs;
  return out;
}

struct ArtinWitness {
  SubgroupView cyclic;                 // <g>
  ClassFunction f;                     // on <g>: 1 at g, -1 at the identity
  std::vector<ClassFunction> characters;  // nontrivial characters of <g>
  std::vector<Cyclotomic> coefficients;   // f = sum coefficients[k] * characters[k]
  ClassFunction induced;               // Ind f on G
};

inline ArtinWitness artin_witness(const GroupPtr& G, std::size_t cls) {
  if (cls >= G->class_count()) fail(ErrorCode::DomainError, "class index out of range");
  const ElementId g = G->classes()[cls].representative;
  if (g == 0) fail(ErrorCode::IdentityElement, "g is the identity");
  ArtinWitness w{make_view(closure(G, {g})), {}, {}, {}, {}};
  const auto& H = w.cyclic.group;
  const ElementId local_g = H->id_of(G->element(g));
  w.f = constant_function(H, 0);
  w.f.values[H->class_of(0)] = Cyclotomic(1, -1);
  w.f.values[H->class_of(local_g)] = Cyclotomic(1, 1);
  ClassFunction rebuilt = constant_function(H, 0);
  for (auto& chi : one_dim_characters(w.cyclic)) {
    bool trivial = true;
    for (const auto& v : chi.values)
      if (!v.equals(1)) trivial = false;
    auto a = inner_product_value(w.f, chi);
    if (trivial) {
      ensure(a.is_zero(), "f_g does not have mean zero");
      continue;
    }
    ClassFunction term = chi;
    for (auto& v : term.values) v = v * a;
    rebuilt += term;
    w.characters.push_back(std::move(chi));
    w.coefficients.push_back(std::move(a));
  }
  ensure(rebuilt == w.f, "Artin expansion does not re-substitute");
  w.induced = induce(w.cyclic, w.f);
  return w;
}

/// Rank of the inductions of nontrivial characters of cyclic subgroups, restricted to
/// the nontrivial irreducibles; equals #Irr - 1 when they span the complement of 1_G.
inline std::size_t artin_span_rank(const TablePtr& t) {
  const auto& G = t->group();
  std::vector<std::size_t> coords;
  for (std::size_t i = 1; i < t->size(); ++i) coords.push_back(i);
  IncrementalRank rank(coords.size());
  for (const auto& C : cyclic_subgroup_classes(G)) {
    if (C.is_trivial()) continue;
    auto v = make_view(C);
    auto lc = linear_characters(v.group);
    for (std::size_t j = 0; j < lc.values.size() && !rank.full(); ++j) {
      if (std::all_of(lc.values[j].begin(), lc.values[j].end(), [](auto x) { return x == 0; })) continue;
      auto m = induced_multiplicities(*t, v, lc, j);
      ensure(m[0] == 0, "nontrivial cyclic induction meets the trivial character");
      rank.add(detail::project(m, coords));
    }
  }
  return rank.rank();
}

// ---------------------------------------------------------------------------
// R(G/N) and its complement

inline std::pair<VirtualCharacter, VirtualCharacter> orthogonal_projection(const VirtualCharacter& f,
                                                                           const Subgroup& N) {
  if (N.parent != f.table->group()) fail(ErrorCode::GroupMismatch, "N is not a subgroup of this group");
  if (!N.is_normal) fail(ErrorCode::NotNormal, "N is not normal");
  VirtualCharacter inside{f.table, RatVector(f.mults.size(), 0)}, outside{f.table, RatVector(f.mults.size(), 0)};
  for (std::size_t i = 0; i < f.mults.size(); ++i)
    (f.table->kernel_contains(i, N) ? inside : outside).mults[i] = f.mults[i];
  return {inside, outside};
}

/// Reg_G - Ind_N^G 1_N.
inline VirtualCharacter psi_character(const TablePtr& t, const Subgroup& N) {
  check_normal_nontrivial(t->group(), N);
  auto view = make_view(N);
  ClassFunction f = regular_character(t->group()) - induce(view, constant_function(view.group, 1));
  auto v = decompose(t, f);
  const auto G = t->group()->order();
  ensure(v.dimension() == Rational(G - G / N.order), "psi has the wrong dimension");
  return v;
}

}  // namespace restind
