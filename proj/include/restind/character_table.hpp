#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "restind/cyclotomic.hpp"
#include "restind/linalg.hpp"
#include "restind/modarith.hpp"
#include "restind/perm_group.hpp"
#include "restind/subgroup.hpp"

namespace restind {

/// Values of a class function, one per conjugacy class of `group` (canonical class order).
struct ClassFunction {
  GroupPtr group;
  std::vector<Cyclotomic> values;

  const Cyclotomic& operator[](std::size_t c) const { return values[c]; }
  const Cyclotomic& degree() const { return values.at(0); }

  ClassFunction& operator+=(const ClassFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  ClassFunction& operator-=(const ClassFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  ClassFunction& operator*=(const Rational& r) {
    for (auto& v : values) v *= r;
    return *this;
  }
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(const Rational& r, ClassFunction a) { return a *= r; }

  bool is_zero() const {
    for (const auto& v : values)
      if (!v.is_zero()) return false;
    return true;
  }
  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    if (a.group != b.group || a.values.size() != b.values.size()) return false;
    for (std::size_t i = 0; i < a.values.size(); ++i)
      if (!(a.values[i] == b.values[i])) return false;
    return true;
  }

  void check_same(const ClassFunction& o) const {
    if (group != o.group) fail(ErrorCode::GroupMismatch, "class functions live on different groups");
  }
};

inline ClassFunction constant_function(const GroupPtr& G, const Rational& r) {
  return ClassFunction{G, std::vector<Cyclotomic>(G->class_count(), Cyclotomic(1, r))};
}

/// 1 on the identity, 0 elsewhere, scaled by |G|: the regular character.
inline ClassFunction regular_character(const GroupPtr& G) {
  ClassFunction f = constant_function(G, 0);
  f.values[0] = Cyclotomic(1, Rational(G->order()));
  return f;
}

namespace detail {

/// sum_i w_i a_i conj(b_i), accumulated densely in the group ring.
template <class GetA, class GetB, class GetW>
Cyclotomic weighted_conj_sum(std::size_t n, GetA get_a, GetB get_b, GetW get_w) {
  std::uint64_t M = 1;
  for (std::size_t c = 0; c < n; ++c) M = std::lcm(M, std::lcm(get_a(c).conductor(), get_b(c).conductor()));
  constexpr std::int64_t kLimit = std::int64_t{1} << 24;
  std::vector<__int128> acc(M, 0);
  bool small = true;
  for (std::size_t c = 0; c < n && small; ++c) {
    const Cyclotomic& a = get_a(c);
    const Cyclotomic& b = get_b(c);
    const auto s1 = M / a.conductor(), s2 = M / b.conductor();
    const auto w = static_cast<__int128>(get_w(c));
    for (const auto& [i, x] : a.terms()) {
      std::int64_t xv = 0;
      if (!small_integer(x, xv) || xv > kLimit || xv < -kLimit) {
        small = false;
        break;
      }
      for (const auto& [j, y] : b.terms()) {
        std::int64_t yv = 0;
        if (!small_integer(y, yv) || yv > kLimit || yv < -kLimit) {
          small = false;
          break;
        }
        acc[(i * s1 + M - (j * s2) % M) % M] += w * xv * yv;
      }
      if (!small) break;
    }
  }
  if (small) return Cyclotomic::from_dense(M, acc);
  std::map<std::uint64_t, Rational> terms;
  for (std::size_t c = 0; c < n; ++c) {
    const Cyclotomic& a = get_a(c);
    const Cyclotomic& b = get_b(c);
    const auto s1 = M / a.conductor(), s2 = M / b.conductor();
    const Rational w(get_w(c));
    for (const auto& [i, x] : a.terms())
      for (const auto& [j, y] : b.terms()) terms[(i * s1 + M - (j * s2) % M) % M] += w * x * y;
  }
  return Cyclotomic::from_terms(M, terms);
}

}  // namespace detail

/// <f1, f2>_G = (1/|G|) sum_g f1(g) conj(f2(g)); must be rational.
inline Cyclotomic inner_product_value(const ClassFunction& f1, const ClassFunction& f2) {
  f1.check_same(f2);
  const auto& G = *f1.group;
  return detail::weighted_conj_sum(
             G.class_count(), [&](std::size_t c) -> const Cyclotomic& { return f1.values[c]; },
             [&](std::size_t c) -> const Cyclotomic& { return f2.values[c]; },
             [&](std::size_t c) { return static_cast<long>(G.classes()[c].size); }) /
         Rational(G.order());
}

inline Rational inner_product(const ClassFunction& f1, const ClassFunction& f2) {
  auto v = inner_product_value(f1, f2);
  if (!v.is_rational()) fail(ErrorCode::Internal, "inner product is not rational");
  return v.rational_value();
}

// ---------------------------------------------------------------------------
// Subgroups as groups in their own right

struct SubgroupView {
  GroupPtr parent;
  Subgroup sub;
  GroupPtr group;                        // H with its own element ids and classes
  std::vector<ElementId> to_parent;      // H id -> G id
  std::vector<std::size_t> parent_class; // H class -> G class
};

inline SubgroupView make_view(const Subgroup& H) {
  SubgroupView v;
  v.parent = H.parent;
  v.sub = H;
  std::vector<Permutation> gens;
  for (auto g : H.generator_ids) gens.push_back(H.parent->element(g));
  v.group = make_group(H.parent->degree(), std::move(gens), H.parent->order());
  ensure(v.group->order() == H.order, "subgroup view order mismatch");
  v.to_parent.resize(v.group->order());
  for (ElementId e = 0; e < v.group->order(); ++e) v.to_parent[e] = H.parent->id_of(v.group->element(e));
  for (const auto& c : v.group->classes())
    v.parent_class.push_back(H.parent->class_of(v.to_parent[c.representative]));
  return v;
}

/// Ind_H^G psi(g) = (|G| / (|H| |C|)) sum over h in C ∩ H of psi(h).
inline ClassFunction induce(const SubgroupView& H, const ClassFunction& psi) {
  if (psi.group != H.group) fail(ErrorCode::NotSubgroup, "class function is not defined on this subgroup");
  const auto& G = *H.parent;
  std::vector<Cyclotomic> sums(G.class_count(), Cyclotomic(1));
  for (std::size_t hc = 0; hc < H.group->class_count(); ++hc)
    sums[H.parent_class[hc]] += Rational(H.group->classes()[hc].size) * psi.values[hc];
  ClassFunction out{H.parent, {}};
  for (std::size_t c = 0; c < G.class_count(); ++c)
    out.values.push_back(sums[c] * ratio(Integer(static_cast<unsigned long>(G.order())), Integer(static_cast<unsigned long>(H.group->order() * G.classes()[c].size))));
  for (auto& v : out.values)
    if (v.terms().empty()) v = Cyclotomic(1);
  return out;
}

inline ClassFunction restrict_to(const ClassFunction& chi, const SubgroupView& H) {
  if (chi.group != H.parent) fail(ErrorCode::NotSubgroup, "subgroup does not belong to the character's group");
  ClassFunction out{H.group, {}};
  for (std::size_t hc = 0; hc < H.group->class_count(); ++hc) out.values.push_back(chi.values[H.parent_class[hc]]);
  return out;
}

// ---------------------------------------------------------------------------
// Linear characters

/// Linear characters of a group as exponent tables: character i sends element e to
/// zeta_E^{values[i][e]} with E = exponent of the group.
struct LinearCharacters {
  std::uint64_t modulus = 1;
  std::vector<std::vector<std::uint32_t>> values;
};

/// Built on H / [H,H] by extending characters one cyclic step at a time.
inline LinearCharacters linear_characters(const GroupPtr& H) {
  const PermGroup& h = *H;
  LinearCharacters out;
  out.modulus = h.exponent();
  const std::uint64_t E = out.modulus;
  const Subgroup whole = whole_group(H);
  const Subgroup derived = derived_subgroup(H, whole);
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> coset(h.order(), kNone);
  std::vector<ElementId> reps;
  for (ElementId e = 0; e < h.order(); ++e) {
    if (coset[e] != kNone) continue;
    for (auto d : derived.element_ids) coset[h.mul(e, d)] = reps.size();
    reps.push_back(e);
  }
  const std::size_t q = reps.size();
  auto qmul = [&](std::size_t a, std::size_t b) { return coset[h.mul(reps[a], reps[b])]; };

  std::vector<bool> in_k(q, false);
  in_k[0] = true;
  std::vector<std::size_t> k_elems{0};
  std::vector<std::vector<std::uint64_t>> chars{std::vector<std::uint64_t>(q, 0)};
  for (std::size_t s = 1; s < q; ++s) {
    if (in_k[s]) continue;
    std::uint64_t t = 1;
    std::size_t st = s;
    while (!in_k[st]) {
      st = qmul(st, s);
      ++t;
    }
    std::vector<std::vector<std::uint64_t>> next;
    std::vector<std::size_t> new_elems;
    // elements k * s^i, 0 <= i < t
    std::vector<std::pair<std::size_t, std::pair<std::size_t, std::uint64_t>>> layout;
    std::size_t si = 0;
    for (std::uint64_t i = 0; i < t; ++i) {
      for (auto k : k_elems) {
        std::size_t x = qmul(k, si);
        layout.push_back({x, {k, i}});
      }
      si = qmul(si, s);
    }
    for (const auto& lam : chars) {
      const std::uint64_t b = lam[st];
      for (std::uint64_t j = 0; j < t; ++j) {
        const std::uint64_t num = b + E * j;
        ensure(num % t == 0, "linear character extension is not integral");
        const std::uint64_t a = (num / t) % E;
        std::vector<std::uint64_t> nl(q, 0);
        for (const auto& [x, ki] : layout) nl[x] = (lam[ki.first] + ki.second * a) % E;
        next.push_back(std::move(nl));
      }
    }
    for (const auto& [x, ki] : layout)
      if (!in_k[x]) {
        in_k[x] = true;
        new_elems.push_back(x);
      }
    for (auto x : new_elems) k_elems.push_back(x);
    chars = std::move(next);
  }
  ensure(chars.size() == q, "linear character count differs from [H:H']");
  for (const auto& lam : chars) {
    std::vector<std::uint32_t> v(h.order());
    for (ElementId e = 0; e < h.order(); ++e) v[e] = static_cast<std::uint32_t>(lam[coset[e]]);
    out.values.push_back(std::move(v));
  }
  return out;
}

inline ClassFunction linear_to_class_function(const GroupPtr& H, const LinearCharacters& lc, std::size_t i) {
  ClassFunction f{H, {}};
  for (const auto& c : H->classes())
    f.values.push_back(Cyclotomic::root(lc.modulus, lc.values[i][c.representative]));
  return f;
}

inline std::vector<ClassFunction> one_dim_characters(const SubgroupView& H) {
  auto lc = linear_characters(H.group);
  std::vector<ClassFunction> out;
  for (std::size_t i = 0; i < lc.values.size(); ++i) out.push_back(linear_to_class_function(H.group, lc, i));
  return out;
}

// ---------------------------------------------------------------------------
// Character table

class CharacterTable {
public:
  CharacterTable(GroupPtr G, std::vector<ClassFunction> irr) : group_(std::move(G)), irr_(std::move(irr)) {
    for (const auto& chi : irr_) {
      ensure(chi.group == group_, "irreducible on a different group");
      const Rational d = chi.degree().rational_value();
      ensure(is_integer(d) && d > 0, "irreducible degree is not a positive integer");
      degrees_.push_back(d.get_num().get_ui());
      std::vector<bool> ker(group_->class_count());
      for (std::size_t c = 0; c < ker.size(); ++c) ker[c] = (chi.values[c] - chi.values[0]).is_zero();
      kernel_classes_.push_back(std::move(ker));
    }
  }

  const GroupPtr& group() const noexcept { return group_; }
  std::uint64_t conductor() const noexcept { return group_->exponent(); }
  std::size_t size() const noexcept { return irr_.size(); }
  const ClassFunction& operator[](std::size_t i) const { return irr_[i]; }
  const std::vector<ClassFunction>& irreducibles() const noexcept { return irr_; }
  const std::vector<std::uint64_t>& degrees() const noexcept { return degrees_; }
  /// Whether class c lies in the kernel of irreducible i.
  bool in_kernel(std::size_t i, std::size_t c) const { return kernel_classes_[i][c]; }
  std::size_t power_class(std::size_t c, std::uint64_t j) const { return group_->power_class(c, j); }

  /// Whether the normal subgroup N lies in ker(irreducible i).
  bool kernel_contains(std::size_t i, const Subgroup& N) const {
    for (auto e : N.element_ids)
      if (!kernel_classes_[i][group_->class_of(e)]) return false;
    return true;
  }

private:
  GroupPtr group_;
  std::vector<ClassFunction> irr_;
  std::vector<std::uint64_t> degrees_;
  std::vector<std::vector<bool>> kernel_classes_;
};

using TablePtr = std::shared_ptr<const CharacterTable>;

namespace detail {

using modp::u64;
using ModMatrix = std::vector<std::vector<u64>>;

inline std::vector<u64> charpoly_mod(ModMatrix a, u64 p) {
  const std::size_t n = a.size();
  // similarity reduction to upper Hessenberg form
  for (std::size_t j = 0; j + 2 <= n; ++j) {
    std::size_t piv = j + 1;
    while (piv < n && a[piv][j] == 0) ++piv;
    if (piv == n) continue;
    if (piv != j + 1) {
      std::swap(a[piv], a[j + 1]);
      for (std::size_t r = 0; r < n; ++r) std::swap(a[r][piv], a[r][j + 1]);
    }
    const u64 inv = modp::inv(a[j + 1][j], p);
    for (std::size_t k = j + 2; k < n; ++k) {
      if (a[k][j] == 0) continue;
      const u64 u = modp::mul(a[k][j], inv, p);
      for (std::size_t c = 0; c < n; ++c) a[k][c] = modp::sub(a[k][c], modp::mul(u, a[j + 1][c], p), p);
      for (std::size_t r = 0; r < n; ++r) a[r][j + 1] = modp::add(a[r][j + 1], modp::mul(u, a[r][k], p), p);
    }
  }
  // p_m(x) = (x - h_mm) p_{m-1} - sum_{i=1}^{m-1} h_{m-i,m} prod_{j=m-i+1}^{m} h_{j,j-1} p_{m-i-1}
  std::vector<std::vector<u64>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<u64> cur(m + 1, 0);
    const auto& prev = polys[m - 1];
    for (std::size_t k = 0; k < prev.size(); ++k) {
      cur[k + 1] = modp::add(cur[k + 1], prev[k], p);
      cur[k] = modp::sub(cur[k], modp::mul(a[m - 1][m - 1], prev[k], p), p);
    }
    u64 prod = 1;
    for (std::size_t i = 1; i < m; ++i) {
      prod = modp::mul(prod, a[m - i][m - i - 1], p);
      const u64 coef = modp::mul(a[m - i - 1][m - 1], prod, p);
      if (coef == 0) continue;
      const auto& pp = polys[m - i - 1];
      for (std::size_t k = 0; k < pp.size(); ++k) cur[k] = modp::sub(cur[k], modp::mul(coef, pp[k], p), p);
    }
    polys[m] = std::move(cur);
  }
  return polys[n];
}

inline std::vector<u64> distinct_roots_mod(const std::vector<u64>& poly, u64 p) {
  std::vector<u64> roots;
  for (u64 x = 0; x < p; ++x) {
    u64 v = 0;
    for (std::size_t k = poly.size(); k-- > 0;) v = modp::add(modp::mul(v, x, p), poly[k], p);
    if (v == 0) roots.push_back(x);
  }
  return roots;
}

/// Row-reduces the rows of `rows` in place (reduced echelon form), returning pivot columns.
inline std::vector<std::size_t> rref_mod(ModMatrix& rows, u64 p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    const u64 inv = modp::inv(rows[r][c], p);
    for (auto& x : rows[r]) x = modp::mul(x, inv, p);
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][c] == 0) continue;
      const u64 f = rows[o][c];
      for (std::size_t k = 0; k < cols; ++k) rows[o][k] = modp::sub(rows[o][k], modp::mul(f, rows[r][k], p), p);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Basis of the null space of a (rows x cols) matrix mod p.
inline ModMatrix nullspace_mod(ModMatrix a, std::size_t cols, u64 p) {
  auto pivots = rref_mod(a, p);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  ModMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<u64> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = modp::sub(0, a[r][f], p);
    basis.push_back(std::move(v));
  }
  return basis;
}

struct DixonPrime {
  u64 p = 0;
  u64 zeta = 0;  // primitive exponent-th root of unity mod p
};

inline DixonPrime dixon_prime(std::uint64_t order, std::uint64_t exponent) {
  DixonPrime d;
  for (u64 p = exponent + 1;; p += exponent)
    if (p > 2 * order && modp::is_prime(p)) {
      d.p = p;
      break;
    }
  d.zeta = modp::pow(modp::primitive_root(d.p), (d.p - 1) / exponent, d.p);
  return d;
}

/// Common eigenvectors of the class multiplication matrices over F_p, each scaled
/// so the identity-class coordinate is 1.
inline ModMatrix dixon_eigenvectors(const PermGroup& G, u64 p) {
  const std::size_t r = G.class_count();
  const std::size_t n = G.order();
  // target[x][l] = class of x^-1 z_l
  std::vector<std::uint32_t> target(n * r);
  for (ElementId x = 0; x < n; ++x)
    for (std::size_t l = 0; l < r; ++l)
      target[x * r + l] = static_cast<std::uint32_t>(G.class_of(G.mul(G.inverse(x), G.classes()[l].representative)));

  auto build = [&](const std::vector<u64>& coeff) {
    ModMatrix m(r, std::vector<u64>(r, 0));
    for (ElementId x = 0; x < n; ++x) {
      const u64 c = coeff[G.class_of(x)];
      if (c == 0) continue;
      for (std::size_t l = 0; l < r; ++l) {
        auto& cell = m[target[x * r + l]][l];
        cell = modp::add(cell, c, p);
      }
    }
    return m;
  };

  std::mt19937_64 rng(0x5eed1234ULL);
  ModMatrix done;
  std::vector<ModMatrix> pending;
  {
    ModMatrix full(r, std::vector<u64>(r, 0));
    for (std::size_t i = 0; i < r; ++i) full[i][i] = 1;
    pending.push_back(std::move(full));
  }
  // Cache of individual class matrices, built lazily for the fallback pass.
  std::map<std::size_t, ModMatrix> single;

  while (!pending.empty()) {
    ModMatrix basis = std::move(pending.back());
    pending.pop_back();
    if (basis.size() == 1) {
      auto v = basis[0];
      ensure(v[0] != 0, "character eigenvector vanishes at the identity");
      const u64 inv = modp::inv(v[0], p);
      for (auto& x : v) x = modp::mul(x, inv, p);
      done.push_back(std::move(v));
      continue;
    }
    auto pivots = rref_mod(basis, p);
    const std::size_t k = basis.size();
    bool split = false;
    // random combinations first, then each class matrix on its own
    for (std::size_t attempt = 0; attempt < 8 + r && !split; ++attempt) {
      ModMatrix m;
      if (attempt < 8) {
        std::vector<u64> coeff(r);
        for (auto& c : coeff) c = rng() % p;
        m = build(coeff);
      } else {
        const std::size_t cls = attempt - 8;
        auto it = single.find(cls);
        if (it == single.end()) {
          std::vector<u64> coeff(r, 0);
          coeff[cls] = 1;
          it = single.emplace(cls, build(coeff)).first;
        }
        m = it->second;
      }
      // X[:,a] = coordinates of M b_a on the pivot rows
      ModMatrix x(k, std::vector<u64>(k, 0));
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t row = 0; row < k; ++row) {
          const std::size_t j = pivots[row];
          u64 s = 0;
          for (std::size_t l = 0; l < r; ++l)
            if (basis[a][l]) s = modp::add(s, modp::mul(m[j][l], basis[a][l], p), p);
          x[row][a] = s;
        }
      }
      auto roots = distinct_roots_mod(charpoly_mod(x, p), p);
      if (roots.size() <= 1) continue;
      std::size_t total = 0;
      std::vector<ModMatrix> parts;
      for (auto lam : roots) {
        ModMatrix shifted = x;
        for (std::size_t i = 0; i < k; ++i) shifted[i][i] = modp::sub(shifted[i][i], lam, p);
        auto ys = nullspace_mod(shifted, k, p);
        ModMatrix sub;
        for (const auto& y : ys) {
          std::vector<u64> v(r, 0);
          for (std::size_t a = 0; a < k; ++a)
            if (y[a])
              for (std::size_t l = 0; l < r; ++l) v[l] = modp::add(v[l], modp::mul(y[a], basis[a][l], p), p);
          sub.push_back(std::move(v));
        }
        total += sub.size();
        parts.push_back(std::move(sub));
      }
      ensure(total == k, "class matrix is not diagonalizable on the subspace");
      for (auto& part : parts) pending.push_back(std::move(part));
      split = true;
    }
    ensure(split, "Dixon splitting did not separate the irreducibles");
  }
  ensure(done.size() == r, "Dixon produced the wrong number of characters");
  return done;
}

/// Group-ring (eigenvalue) form of a character with values known mod p.
inline ClassFunction lift_character(const GroupPtr& Gp, const std::vector<u64>& chi_mod, std::uint64_t degree,
                                    const DixonPrime& dp) {
  const PermGroup& G = *Gp;
  const std::uint64_t m = G.exponent();
  const u64 p = dp.p;
  ClassFunction f{Gp, {}};
  for (std::size_t l = 0; l < G.class_count(); ++l) {
    const std::uint64_t o = G.classes()[l].element_order;
    const u64 zo = modp::pow(dp.zeta, m / o, p);
    const u64 zo_inv = modp::inv(zo, p);
    const u64 o_inv = modp::inv(o % p, p);
    std::map<std::uint64_t, Rational> terms;
    std::uint64_t total = 0;
    for (std::uint64_t k = 0; k < o; ++k) {
      u64 s = 0;
      const u64 step = modp::pow(zo_inv, k, p);
      u64 w = 1;
      for (std::uint64_t i = 0; i < o; ++i) {
        s = modp::add(s, modp::mul(chi_mod[G.power_class(l, i)], w, p), p);
        w = modp::mul(w, step, p);
      }
      const u64 mu = modp::mul(s, o_inv, p);
      ensure(mu <= degree, "eigenvalue multiplicity out of range");
      if (mu) terms[k * (m / o)] = Rational(mu);
      total += mu;
    }
    ensure(total == degree, "eigenvalue multiplicities do not sum to the degree");
    f.values.push_back(Cyclotomic::from_terms(m, terms));
  }
  return f;
}

inline std::vector<ClassFunction> dixon_characters(const GroupPtr& Gp) {
  const PermGroup& G = *Gp;
  const std::size_t r = G.class_count();
  const auto dp = dixon_prime(G.order(), G.exponent());
  const u64 p = dp.p;
  auto eig = dixon_eigenvectors(G, p);
  std::vector<ClassFunction> out;
  for (const auto& w : eig) {
    u64 s = 0;
    for (std::size_t l = 0; l < r; ++l) {
      const auto& cls = G.classes()[l];
      s = modp::add(s, modp::mul(modp::mul(w[l], w[G.inverse_class(l)], p), modp::inv(cls.size % p, p), p), p);
    }
    const u64 dsq = modp::mul(G.order() % p, modp::inv(s, p), p);
    std::uint64_t d = 0;
    for (std::uint64_t c = 1; c * c <= G.order(); ++c)
      if (c * c == dsq && G.order() % c == 0) d = c;
    ensure(d != 0, "could not recover a character degree");
    std::vector<u64> chi(r);
    for (std::size_t l = 0; l < r; ++l)
      chi[l] = modp::mul(modp::mul(w[l], d % p, p), modp::inv(G.classes()[l].size % p, p), p);
    out.push_back(lift_character(Gp, chi, d, dp));
  }
  return out;
}

inline std::vector<ClassFunction> abelian_characters(const GroupPtr& Gp) {
  auto lc = linear_characters(Gp);
  std::vector<ClassFunction> out;
  for (std::size_t i = 0; i < lc.values.size(); ++i) out.push_back(linear_to_class_function(Gp, lc, i));
  return out;
}

/// Canonical ordering: degree, trivial first, then descending lexicographic values.
inline void sort_irreducibles(std::vector<ClassFunction>& irr) {
  struct Keyed {
    std::uint64_t degree;
    bool trivial;
    std::vector<std::vector<Rational>> canon;
    ClassFunction f;
  };
  std::vector<Keyed> keyed;
  for (auto& f : irr) {
    Keyed k;
    k.degree = f.degree().rational_value().get_num().get_ui();
    k.trivial = true;
    for (const auto& v : f.values) {
      k.canon.push_back(v.canonical());
      if (!(v == Cyclotomic(1, 1))) k.trivial = false;
    }
    k.f = std::move(f);
    keyed.push_back(std::move(k));
  }
  std::sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.trivial != b.trivial) return a.trivial;
    return a.canon > b.canon;
  });
  irr.clear();
  for (auto& k : keyed) irr.push_back(std::move(k.f));
}

}  // namespace detail

/// Rewrites each value into eigenvalue (group-ring) form, sum mu_k zeta^k with
/// mu_k the multiplicity of zeta^k as an eigenvalue. Fails if f is not a character.
inline ClassFunction eigenvalue_form(const ClassFunction& f) {
  const PermGroup& G = *f.group;
  const std::uint64_t m = G.exponent();
  ClassFunction out{f.group, {}};
  for (std::size_t c = 0; c < G.class_count(); ++c) {
    const std::uint64_t o = G.classes()[c].element_order;
    std::map<std::uint64_t, Rational> terms;
    for (std::uint64_t k = 0; k < o; ++k) {
      Cyclotomic s(m);
      for (std::uint64_t i = 0; i < o; ++i)
        s += f.values[G.power_class(c, i)] * Cyclotomic::root(m, -static_cast<std::int64_t>((i * k % o) * (m / o)));
      s /= Rational(o);
      if (!s.is_rational()) fail(ErrorCode::NotACharacter, "eigenvalue multiplicity is not rational");
      Rational mu = s.rational_value();
      if (!is_integer(mu) || mu < 0) fail(ErrorCode::NotACharacter, "eigenvalue multiplicity is not a natural number");
      if (mu != 0) terms[k * (m / o)] = mu;
    }
    out.values.push_back(Cyclotomic::from_terms(m, terms));
  }
  return out;
}

inline bool orthogonality_holds(const CharacterTable& t) {
  const auto& G = *t.group();
  std::uint64_t sumsq = 0;
  for (auto d : t.degrees()) sumsq += d * d;
  if (sumsq != G.order() || t.size() != G.class_count()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i; j < t.size(); ++j) {
      auto v = inner_product_value(t[i], t[j]);
      if (!v.equals(i == j ? 1 : 0)) return false;
    }
  // column orthogonality
  for (std::size_t a = 0; a < G.class_count(); ++a)
    for (std::size_t b = a; b < G.class_count(); ++b) {
      auto s = detail::weighted_conj_sum(
          t.size(), [&](std::size_t i) -> const Cyclotomic& { return t[i][a]; },
          [&](std::size_t i) -> const Cyclotomic& { return t[i][b]; }, [](std::size_t) { return 1L; });
      if (!s.equals(a == b ? Rational(G.centralizer_order(a)) : Rational(0))) return false;
    }
  return true;
}

inline TablePtr compute_character_table(const GroupPtr& G) {
  auto irr = G->is_abelian() ? detail::abelian_characters(G) : detail::dixon_characters(G);
  detail::sort_irreducibles(irr);
  return std::make_shared<const CharacterTable>(G, std::move(irr));
}

namespace detail {

struct TableCache {
  std::mutex mu;
  std::unordered_map<std::string, TablePtr> tables;
};

inline TableCache& table_cache() {
  static TableCache cache;
  return cache;
}

inline std::string table_key(const PermGroup& G) { return std::to_string(G.degree()) + ":" + G.generator_string(); }

}  // namespace detail

/// Process-wide cache keyed by the group's serialization; a hit built on another
/// PermGroup instance with the same generators is rebound to the caller's group.
inline TablePtr character_table(const GroupPtr& G) {
  auto& cache = detail::table_cache();
  const std::string key = detail::table_key(*G);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.tables.find(key);
    if (it != cache.tables.end()) {
      if (it->second->group() == G) return it->second;
      std::vector<ClassFunction> irr = it->second->irreducibles();
      for (auto& f : irr) f.group = G;
      return std::make_shared<const CharacterTable>(G, std::move(irr));
    }
  }
  auto t = compute_character_table(G);
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.tables.emplace(key, t);
  return t;
}

/// Seeds the process-wide cache with a table obtained elsewhere (e.g. loaded from disk).
inline void remember_character_table(const TablePtr& t) {
  auto& cache = detail::table_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  cache.tables.emplace(detail::table_key(*t->group()), t);
}

// ---------------------------------------------------------------------------
// Virtual characters

struct VirtualCharacter {
  TablePtr table;
  RatVector mults;

  ClassFunction to_class_function() const {
    ClassFunction f = constant_function(table->group(), 0);
    for (std::size_t i = 0; i < mults.size(); ++i)
      if (mults[i] != 0)
        for (std::size_t c = 0; c < f.values.size(); ++c) f.values[c] += mults[i] * (*table)[i][c];
    return f;
  }
  Rational dimension() const {
    Rational d = 0;
    for (std::size_t i = 0; i < mults.size(); ++i) d += mults[i] * Rational(table->degrees()[i]);
    return d;
  }
  bool is_genuine() const {
    for (const auto& m : mults)
      if (!is_integer(m) || m < 0) return false;
    return true;
  }
};

inline VirtualCharacter decompose(const TablePtr& t, const ClassFunction& f) {
  if (f.group != t->group()) fail(ErrorCode::GroupMismatch, "class function and table differ in group");
  VirtualCharacter v{t, {}};
  for (std::size_t i = 0; i < t->size(); ++i) {
    auto ip = inner_product_value(f, (*t)[i]);
    if (!ip.is_rational()) fail(ErrorCode::NotACharacter, "class function is not a rational virtual character");
    v.mults.push_back(ip.rational_value());
  }
  return v;
}

inline Subgroup kernel_of_character(const TablePtr& t, const ClassFunction& chi) {
  auto v = decompose(t, chi);
  if (!v.is_genuine()) fail(ErrorCode::NotACharacter, "not a genuine character");
  const auto& G = t->group();
  ElementSet set(G->order());
  for (std::size_t c = 0; c < G->class_count(); ++c)
    if ((chi.values[c] - chi.values[0]).is_zero())
      for (auto e : G->classes()[c].member_ids) set.insert(e);
  return subgroup_from_set(G, set);
}

/// det(1 - rho(g) T) from power sums chi(g^j) by Newton's identities; entry k is the
/// coefficient of T^k.
inline std::vector<Cyclotomic> char_poly_of_element(const ClassFunction& chi, std::size_t cls) {
  if (!(inner_product_value(chi, chi) == Cyclotomic(1, 1))) fail(ErrorCode::NotIrreducible, "character is not irreducible");
  const auto& G = *chi.group;
  const Rational dr = chi.degree().rational_value();
  if (!is_integer(dr) || dr <= 0) fail(ErrorCode::NotIrreducible, "degree is not a positive integer");
  const std::uint64_t d = dr.get_num().get_ui();
  std::vector<Cyclotomic> power_sums(d + 1, Cyclotomic(1));
  for (std::uint64_t j = 1; j <= d; ++j) power_sums[j] = chi.values[G.power_class(cls, j)];
  std::vector<Cyclotomic> e(d + 1, Cyclotomic(1));
  e[0] = Cyclotomic(1, 1);
  for (std::uint64_t k = 1; k <= d; ++k) {
    Cyclotomic s(1);
    for (std::uint64_t i = 1; i <= k; ++i) {
      Cyclotomic term = e[k - i] * power_sums[i];
      if (i % 2 == 1) s += term;
      else s -= term;
    }
    e[k] = s / Rational(k);
  }
  for (std::uint64_t k = 1; k <= d; k += 2) e[k] = -e[k];
  return e;
}

namespace detail {

using i128 = __int128;

inline i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Internal, "int128 overflow in polynomial product");
  return r;
}
inline i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Internal, "int128 overflow in polynomial product");
  return r;
}

inline Integer to_integer(i128 v) { return from_i128(v); }

}  // namespace detail

/// Checks prod_rho det(1 - rho(g) T)^{deg rho} = (1 - T^{ord g})^{|G|/ord g} for the
/// class `cls`, multiplying in Z[x]/(x^m - 1)[T] and comparing after reduction mod Phi_m.
inline bool regular_polynomial_identity(const CharacterTable& t, std::size_t cls) {
  using detail::i128;
  const auto& G = *t.group();
  const std::uint64_t m = G.exponent();
  const std::uint64_t n = G.order();
  std::vector<std::vector<i128>> acc(1, std::vector<i128>(m, 0));
  acc[0][0] = 1;
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto cp = char_poly_of_element(t[i], cls);
    std::vector<std::vector<std::pair<std::uint64_t, i128>>> f;
    for (const auto& c : cp) {
      std::vector<std::pair<std::uint64_t, i128>> sparse;
      const auto emb = c.embed(m);
      for (const auto& [k, v] : emb.terms()) {
        if (!is_integer(v)) return false;  // group-ring form of an eigenvalue product is integral
        sparse.emplace_back(k, static_cast<i128>(v.get_num().get_si()));
      }
      f.push_back(std::move(sparse));
    }
    for (std::uint64_t rep = 0; rep < t.degrees()[i]; ++rep) {
      std::vector<std::vector<i128>> next(acc.size() + f.size() - 1, std::vector<i128>(m, 0));
      for (std::size_t a = 0; a < acc.size(); ++a)
        for (std::uint64_t x = 0; x < m; ++x) {
          if (acc[a][x] == 0) continue;
          for (std::size_t b = 0; b < f.size(); ++b)
            for (const auto& [y, v] : f[b]) {
              auto& cell = next[a + b][(x + y) % m];
              cell = detail::checked_add(cell, detail::checked_mul(acc[a][x], v));
            }
        }
      acc = std::move(next);
    }
  }
  const std::uint64_t o = G.classes()[cls].element_order;
  if (acc.size() != n + 1) return false;
  const auto field = CyclotomicField::get(m);
  for (std::size_t deg = 0; deg <= n; ++deg) {
    std::vector<Integer> canon(field->degree(), 0);
    for (std::uint64_t x = 0; x < m; ++x)
      if (acc[deg][x] != 0) {
        const Integer v = detail::to_integer(acc[deg][x]);
        const auto& red = field->reduction(x);
        for (std::size_t k = 0; k < canon.size(); ++k)
          if (red[k] != 0) canon[k] += v * red[k];
      }
    Integer expect = 0;
    if (deg % o == 0) {
      const std::uint64_t j = deg / o;
      mpz_bin_uiui(expect.get_mpz_t(), n / o, j);
      if (j % 2 == 1) expect = -expect;
    }
    if (canon[0] != expect) return false;
    for (std::size_t k = 1; k < canon.size(); ++k)
      if (canon[k] != 0) return false;
  }
  return true;
}

}  // namespace restind
