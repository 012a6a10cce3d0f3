#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "restind/catalog.hpp"
#include "restind/character_table.hpp"
#include "restind/polynomial.hpp"
#include "restind/sieve.hpp"
#include "restind/subgroup.hpp"

namespace restind {

using CycleType = std::vector<int>;

/// Partitions of n, each non-increasing, in lexicographically decreasing order.
inline std::vector<CycleType> partitions(int n) {
  std::vector<CycleType> out;
  CycleType cur;
  auto rec = [&](auto&& self, int left, int maxpart) -> void {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(left, maxpart); k >= 1; --k) {
      cur.push_back(k);
      self(self, left - k, k);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

inline Integer factorial(std::uint64_t n) {
  Integer f = 1;
  for (std::uint64_t k = 2; k <= n; ++k) f *= static_cast<unsigned long>(k);
  return f;
}

/// n! / z_lambda, the size of the S_n class with this cycle type.
inline Integer symmetric_class_size(const CycleType& type) {
  std::uint64_t n = 0;
  std::map<int, std::uint64_t> mult;
  for (int k : type) {
    n += static_cast<std::uint64_t>(k);
    ++mult[k];
  }
  Integer z = 1;
  for (auto [k, m] : mult) {
    Integer km;
    mpz_ui_pow_ui(km.get_mpz_t(), static_cast<unsigned long>(k), m);
    z *= km * factorial(m);
  }
  return factorial(n) / z;
}

inline bool is_even_type(const CycleType& type) {
  std::size_t s = 0;
  for (int k : type) s += static_cast<std::size_t>(k - 1);
  return s % 2 == 0;
}

inline std::string cycle_type_string(const CycleType& type) {
  std::string s = "[";
  for (std::size_t i = 0; i < type.size(); ++i) s += (i ? "," : "") + std::to_string(type[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------

/// Frobenius data for every prime up to x, in increasing order.
struct FrobeniusScan {
  struct Record {
    std::uint64_t p;
    int type;  // index into types, -1 when p divides disc(f)
    int kronecker;
  };
  std::string polynomial;
  std::size_t degree = 0;
  Integer disc;
  Integer core;  // squarefree core of disc, sign kept
  bool core_complete = true;
  std::uint64_t x = 0;
  std::vector<CycleType> types;  // partitions of the degree
  std::vector<Record> records;
};

inline FrobeniusScan frobenius_scan(const MonicIntPolynomial& f, std::uint64_t x, std::uint64_t cap = kDefaultSieveCap) {
  if (f.degree() < 2) fail(ErrorCode::DomainError, "polynomial degree must be at least 2");
  FrobeniusScan s;
  s.polynomial = f.to_string();
  s.degree = f.degree();
  s.disc = discriminant(f);
  if (s.disc == 0) fail(ErrorCode::DomainError, "polynomial is not squarefree");
  s.core = squarefree_core(s.disc, s.core_complete);
  s.x = x;
  s.types = partitions(static_cast<int>(s.degree));
  std::map<CycleType, int> index;
  for (std::size_t i = 0; i < s.types.size(); ++i) index[s.types[i]] = static_cast<int>(i);
  for_each_prime(
      x,
      [&](std::uint64_t p) {
        auto type = factor_cycle_type(f, s.disc, p);
        if (type.empty()) {
          s.records.push_back({p, -1, 0});
          return;
        }
        const int k = mpz_kronecker_ui(s.core.get_mpz_t(), static_cast<unsigned long>(p));
        s.records.push_back({p, index.at(type), k});
      },
      cap);
  return s;
}

struct FrobeniusTally {
  std::string polynomial;
  std::size_t degree = 0;
  Integer disc;
  Integer core;
  std::uint64_t x = 0;
  std::uint64_t prime_count = 0;  // pi(x)
  std::map<CycleType, std::uint64_t> per_class;  // every partition of the degree, zeros included
  std::vector<std::uint64_t> ramified;
  std::uint64_t plus = 0, minus = 0;  // unramified p with Kronecker(core, p) = +1 / -1

  std::uint64_t unramified() const { return prime_count - ramified.size(); }
};

/// The tally for primes p <= x taken from a scan reaching at least x.
inline FrobeniusTally tally_at(const FrobeniusScan& s, std::uint64_t x) {
  if (x > s.x) fail(ErrorCode::DomainError, "tally bound beyond the scanned range");
  FrobeniusTally t{s.polynomial, s.degree, s.disc, s.core, x, 0, {}, {}, 0, 0};
  std::vector<std::uint64_t> counts(s.types.size(), 0);
  for (const auto& r : s.records) {
    if (r.p > x) break;
    ++t.prime_count;
    if (r.type < 0) {
      t.ramified.push_back(r.p);
      continue;
    }
    ++counts[static_cast<std::size_t>(r.type)];
    (r.kronecker > 0 ? t.plus : t.minus) += 1;
  }
  for (std::size_t i = 0; i < s.types.size(); ++i) t.per_class[s.types[i]] = counts[i];
  std::uint64_t total = t.ramified.size();
  for (const auto& [type, c] : t.per_class) total += c;
  ensure(total == t.prime_count, "tally does not account for every prime");
  ensure(t.plus + t.minus == t.unramified(), "quadratic Frobenius missing for an unramified prime");
  return t;
}

inline FrobeniusTally chebotarev_tally(const MonicIntPolynomial& f, std::uint64_t x, std::uint64_t cap = kDefaultSieveCap) {
  return tally_at(frobenius_scan(f, x, cap), x);
}

// ---------------------------------------------------------------------------

/// S_n with its character table and the cycle type of each class. Built lazily
/// by the checks that need group data; n is limited by the element-table cap.
class SymmetricContext {
public:
  static constexpr std::size_t kMaxDegree = 7;

  explicit SymmetricContext(std::size_t n) : n_(n) {
    if (n < 2 || n > kMaxDegree)
      fail(ErrorCode::CapExceeded, "symmetric group data supports degrees 2.." + std::to_string(kMaxDegree));
    group_ = named_group("S" + std::to_string(n));
    for (std::size_t c = 0; c < group_->class_count(); ++c)
      class_of_type_[group_->element(group_->classes()[c].representative).cycle_type()] = c;
  }

  std::size_t degree() const noexcept { return n_; }
  const GroupPtr& group() const noexcept { return group_; }
  std::size_t class_of(const CycleType& t) const { return class_of_type_.at(t); }
  const TablePtr& table() const {
    if (!table_) table_ = character_table(group_);
    return table_;
  }

private:
  std::size_t n_;
  GroupPtr group_;
  std::map<CycleType, std::size_t> class_of_type_;
  mutable TablePtr table_;
};

struct FibredRow {
  CycleType type;
  Integer class_size;
  bool even = false;
  std::uint64_t observed = 0;
  Rational coefficient;          // 2|C|/n!
  Rational general_coefficient;  // |C| / (|N| |[C]_{G/N}|) with G = S_n, N = A_n
  Rational predicted;            // coefficient * pi_sgn(C)
  double abs_deviation = 0;
  double rel_deviation = 0;
};

struct FibredReport {
  FrobeniusTally tally;
  std::vector<FibredRow> rows;
  bool galois_confirmed = false;
  bool heuristic = true;  // confirmation rests on observed cycle types only
  std::vector<std::string> witnesses;
  bool general_from_group = false;  // general coefficients taken from S_n, A_n and S_n/A_n
  bool parity_even = false, parity_odd = false, formulas_agree = false;
};

/// Observed cycle types forcing S_n: an n-cycle (irreducible, transitive), a type with a
/// single 2-cycle and otherwise odd cycles (a power is a transposition), and for
/// composite n an (n-1)-cycle (primitive).
inline bool symmetric_galois_witnessed(const FrobeniusTally& t, std::vector<std::string>& witnesses) {
  const int n = static_cast<int>(t.degree);
  bool full = false, transposition = false, primitive = true;
  bool prime = n >= 2;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) prime = false;
  if (!prime && n > 2) primitive = false;
  for (const auto& [type, count] : t.per_class) {
    if (count == 0) continue;
    if (type.size() == 1) {
      full = true;
      witnesses.push_back(cycle_type_string(type));
    }
    const auto twos = std::count(type.begin(), type.end(), 2);
    const bool others_odd = std::all_of(type.begin(), type.end(), [](int k) { return k == 2 || k % 2 == 1; });
    if (twos == 1 && others_odd && !transposition) {
      transposition = true;
      if (type.size() != 1) witnesses.push_back(cycle_type_string(type));
    }
    if (!primitive && type.front() == n - 1) {
      primitive = true;
      witnesses.push_back(cycle_type_string(type));
    }
  }
  return full && transposition && primitive;
}

inline FibredReport fibered_check(const FrobeniusTally& t) {
  FibredReport r;
  r.tally = t;
  const std::size_t n = t.degree;
  const Integer nfact = factorial(n);
  r.galois_confirmed = symmetric_galois_witnessed(t, r.witnesses);

  std::optional<SymmetricContext> sym;
  std::optional<QuotientClassMap> q;
  std::optional<Subgroup> An;
  if (n <= SymmetricContext::kMaxDegree) {
    sym.emplace(n);
    An = even_subgroup(sym->group());
    q = quotient_class_map(sym->group(), *An);
    r.general_from_group = true;
  }

  std::uint64_t even_sum = 0, odd_sum = 0;
  r.formulas_agree = true;
  for (const auto& [type, observed] : t.per_class) {
    FibredRow row;
    row.type = type;
    row.class_size = symmetric_class_size(type);
    row.even = is_even_type(type);
    row.observed = observed;
    row.coefficient = ratio(2 * row.class_size, nfact);
    if (sym) {
      const auto c = sym->class_of(type);
      const auto& cls = sym->group()->classes()[c];
      row.general_coefficient = ratio(Integer(static_cast<unsigned long>(cls.size)),
                                      Integer(static_cast<unsigned long>(An->order)) *
                                          static_cast<unsigned long>(q->quotient_sizes[q->to_quotient[c]]));
    } else {
      row.general_coefficient = ratio(row.class_size, (nfact / 2) * 1);
    }
    if (row.general_coefficient != row.coefficient) r.formulas_agree = false;
    const std::uint64_t pi_sgn = row.even ? t.plus : t.minus;
    row.predicted = row.coefficient * Rational(Integer(static_cast<unsigned long>(pi_sgn)));
    const double pred = row.predicted.get_d();
    row.abs_deviation = static_cast<double>(observed) - pred;
    row.rel_deviation = pred > 0 ? row.abs_deviation / pred : 0.0;
    (row.even ? even_sum : odd_sum) += observed;
    r.rows.push_back(std::move(row));
  }
  r.parity_even = even_sum == t.plus;
  r.parity_odd = odd_sum == t.minus;
  ensure(r.parity_even && r.parity_odd, "Frobenius parity disagrees with the quadratic character");
  ensure(r.formulas_agree, "fibered coefficients disagree");
  return r;
}

/// Sum over unramified p <= x of chi(Frob_p), with chi a class function on S_n.
inline Cyclotomic character_partial_sum(const SymmetricContext& sym, const FrobeniusTally& t, const ClassFunction& chi) {
  if (chi.group != sym.group()) fail(ErrorCode::GroupMismatch, "character is not on this symmetric group");
  if (t.degree != sym.degree()) fail(ErrorCode::GroupMismatch, "polynomial degree differs from the group degree");
  Cyclotomic s;
  for (const auto& [type, count] : t.per_class)
    if (count) s += chi[sym.class_of(type)] * Rational(Integer(static_cast<unsigned long>(count)));
  return s;
}

struct ProfileEntry {
  std::size_t irreducible = 0;
  Cyclotomic from_class_sum;   // <Pi_K(x), chi> with Pi_K = sum_C pi_C / |C| 1_C
  Cyclotomic from_prime_sum;   // (1/|G|) sum_p conj chi(Frob_p)
};

/// <Pi_K(x), chi_rho> for every irreducible of S_n by both formulas, asserted equal.
inline std::vector<ProfileEntry> class_function_profile(const SymmetricContext& sym, const FrobeniusScan& s, std::uint64_t x) {
  if (s.degree != sym.degree()) fail(ErrorCode::GroupMismatch, "polynomial degree differs from the group degree");
  const auto t = tally_at(s, x);
  const auto& G = sym.group();
  ClassFunction pi = constant_function(G, 0);
  for (const auto& [type, count] : t.per_class) {
    const auto c = sym.class_of(type);
    pi.values[c] = Cyclotomic(1, ratio(Integer(static_cast<unsigned long>(count)),
                                       Integer(static_cast<unsigned long>(G->classes()[c].size))));
  }
  const auto& table = *sym.table();
  std::vector<ProfileEntry> out;
  std::vector<Integer> hits(G->class_count(), 0);
  for (const auto& r : s.records) {
    if (r.p > x) break;
    if (r.type >= 0) hits[sym.class_of(s.types[static_cast<std::size_t>(r.type)])] += 1;
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& chi = table[i];
    Cyclotomic per_prime;
    for (std::size_t c = 0; c < hits.size(); ++c)
      if (hits[c] != 0) per_prime += chi[c].conj() * Rational(hits[c]);
    per_prime *= ratio(1, Integer(static_cast<unsigned long>(G->order())));
    ProfileEntry e{i, inner_product_value(pi, chi), std::move(per_prime)};
    ensure(e.from_class_sum == e.from_prime_sum, "profile formulas disagree");
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace restind
