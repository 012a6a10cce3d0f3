#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "restind/error.hpp"
#include "restind/rational.hpp"

namespace restind {

using IntPoly = std::vector<Integer>;  // coefficient i of x^i

/// Data for Q(zeta_m): the cyclotomic polynomial and the reduction of every x^k mod Phi_m.
class CyclotomicField {
public:
  static std::shared_ptr<const CyclotomicField> get(std::uint64_t m) {
    static std::mutex mu;
    static std::map<std::uint64_t, std::shared_ptr<const CyclotomicField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    auto f = std::shared_ptr<const CyclotomicField>(new CyclotomicField(m));
    cache.emplace(m, f);
    return f;
  }

  std::uint64_t conductor() const noexcept { return m_; }
  std::size_t degree() const noexcept { return phi_; }
  const IntPoly& minimal_polynomial() const noexcept { return cyclo_; }
  /// Coefficients of x^k mod Phi_m, length phi(m).
  const std::vector<Integer>& reduction(std::uint64_t k) const { return reductions_[k % m_]; }
  /// Same as reduction(), as machine integers.
  const std::vector<std::int64_t>& small_reduction(std::uint64_t k) const { return small_reductions_[k % m_]; }

  static IntPoly cyclotomic_polynomial(std::uint64_t m) {
    if (m == 0) fail(ErrorCode::DomainError, "conductor must be positive");
    IntPoly num(m + 1, 0);  // x^m - 1
    num[0] = -1;
    num[m] = 1;
    for (std::uint64_t d = 1; d < m; ++d)
      if (m % d == 0) num = exact_divide(num, cyclotomic_polynomial(d));
    return num;
  }

private:
  explicit CyclotomicField(std::uint64_t m) : m_(m) {
    if (m == 0) fail(ErrorCode::DomainError, "conductor must be positive");
    cyclo_ = cyclotomic_polynomial(m);
    phi_ = cyclo_.size() - 1;
    reductions_.reserve(m);
    std::vector<Integer> cur(phi_, 0);
    if (phi_ == 0) fail(ErrorCode::Internal, "degenerate cyclotomic polynomial");
    cur[0] = 1;
    for (std::uint64_t k = 0; k < m; ++k) {
      reductions_.push_back(cur);
      std::vector<std::int64_t> small;
      for (const auto& x : cur) {
        if (!x.fits_slong_p() || x > (1L << 20) || x < -(1L << 20))
          fail(ErrorCode::Internal, "cyclotomic reduction coefficient too large");
        small.push_back(x.get_si());
      }
      small_reductions_.push_back(std::move(small));
      // multiply by x, reduce with the monic Phi_m
      Integer top = cur[phi_ - 1];
      for (std::size_t i = phi_ - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (std::size_t i = 0; i < phi_; ++i) cur[i] -= top * cyclo_[i];
    }
  }

  static IntPoly exact_divide(IntPoly num, const IntPoly& den) {
    const std::size_t dn = den.size() - 1;
    IntPoly q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
      Integer c = num[i];  // den is monic
      q[i - dn] = c;
      if (c != 0)
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
  }

  std::uint64_t m_;
  std::size_t phi_ = 1;
  IntPoly cyclo_;
  std::vector<std::vector<Integer>> reductions_;
  std::vector<std::vector<std::int64_t>> small_reductions_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

/// An element of Q(zeta_m). Stored as a group-ring element sum a_k zeta^k with
/// 0 <= k < m (not unique); canonical() reduces to the power basis of Phi_m.
class Cyclotomic {
public:
  Cyclotomic() : Cyclotomic(1) {}
  explicit Cyclotomic(std::uint64_t m) : field_(CyclotomicField::get(m)) {}
  explicit Cyclotomic(FieldPtr f) : field_(std::move(f)) {}
  Cyclotomic(std::uint64_t m, const Rational& r) : field_(CyclotomicField::get(m)) {
    if (r != 0) terms_.emplace_back(0, r);
  }

  /// c * zeta_m^k
  static Cyclotomic root(std::uint64_t m, std::int64_t k, const Rational& c = 1) {
    Cyclotomic z(m);
    const auto mm = static_cast<std::int64_t>(m);
    if (c != 0) z.terms_.emplace_back(static_cast<std::uint64_t>(((k % mm) + mm) % mm), c);
    return z;
  }

  /// sum c_k zeta_m^k from exponent -> coefficient pairs (exponents taken mod m).
  static Cyclotomic from_terms(std::uint64_t m, const std::map<std::uint64_t, Rational>& terms) {
    Cyclotomic z(m);
    std::map<std::uint64_t, Rational> acc;
    for (const auto& [k, c] : terms) acc[k % m] += c;
    z.assign(acc);
    return z;
  }

  /// Dense group-ring integer coefficients acc[k] on zeta_m^k, reduced to the power basis.
  static Cyclotomic from_dense(std::uint64_t m, const std::vector<__int128>& acc) {
    Cyclotomic z(m);
    const auto& f = *z.field_;
    std::vector<__int128> out(f.degree(), 0);
    for (std::uint64_t k = 0; k < acc.size(); ++k) {
      if (acc[k] == 0) continue;
      const auto& red = f.small_reduction(k);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += acc[k] * red[i];
    }
    for (std::size_t i = 0; i < out.size(); ++i)
      if (out[i] != 0) z.terms_.emplace_back(i, Rational(from_i128(out[i])));
    return z;
  }

  /// Element with the given coefficients on the power basis 1, zeta, ..., zeta^{phi-1}.
  static Cyclotomic from_canonical(std::uint64_t m, const std::vector<Rational>& coeffs) {
    Cyclotomic z(m);
    if (coeffs.size() != z.field_->degree()) fail(ErrorCode::ParseError, "coefficient count does not match phi(m)");
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) z.terms_.emplace_back(i, coeffs[i]);
    return z;
  }

  std::uint64_t conductor() const noexcept { return field_->conductor(); }
  const FieldPtr& field() const noexcept { return field_; }
  const std::vector<std::pair<std::uint64_t, Rational>>& terms() const noexcept { return terms_; }

  std::vector<Rational> canonical() const {
    if (terms_.size() <= field_->conductor()) {
      // common denominator, then machine-integer reduction
      Integer den = 1;
      for (const auto& t : terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.second.get_den_mpz_t());
      std::vector<__int128> acc(field_->degree(), 0);
      bool small = den.fits_slong_p() && den < (1L << 40);
      for (std::size_t t = 0; t < terms_.size() && small; ++t) {
        const auto& [k, c] = terms_[t];
        std::int64_t v = 0;
        if (!(den == 1 ? small_integer(c, v) : small_integer(Rational(c * den), v))) {
          small = false;
          break;
        }
        const auto& red = field_->small_reduction(k);
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += static_cast<__int128>(v) * red[i];
      }
      if (small) {
        std::vector<Rational> out;
        out.reserve(acc.size());
        for (auto x : acc) out.push_back(den == 1 ? Rational(from_i128(x)) : ratio(from_i128(x), den));
        return out;
      }
    }
    std::vector<Rational> out(field_->degree(), 0);
    for (const auto& [k, c] : terms_) {
      const auto& red = field_->reduction(k);
      for (std::size_t i = 0; i < out.size(); ++i)
        if (red[i] != 0) out[i] += c * red[i];
    }
    return out;
  }

  bool is_zero() const {
    if (terms_.empty()) return true;
    for (const auto& c : canonical())
      if (c != 0) return false;
    return true;
  }

  bool is_rational() const {
    auto c = canonical();
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }

  bool equals(const Rational& r) const {
    auto c = canonical();
    if (c[0] != r) return false;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) return false;
    return true;
  }

  Rational rational_value() const {
    auto c = canonical();
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i] != 0) fail(ErrorCode::Internal, "cyclotomic value is not rational");
    return c[0];
  }

  /// Same value in Q(zeta_M) for a multiple M of the conductor.
  Cyclotomic embed(std::uint64_t M) const {
    if (M % conductor() != 0) fail(ErrorCode::Internal, "embedding into a non-multiple conductor");
    Cyclotomic r(M);
    const auto s = M / conductor();
    for (const auto& [k, c] : terms_) r.terms_.emplace_back(k * s, c);
    return r;
  }

  /// Image under zeta -> zeta^a (gcd(a, m) = 1 for a field automorphism).
  Cyclotomic galois(std::int64_t a) const {
    Cyclotomic r(field_);
    const auto m = static_cast<std::int64_t>(conductor());
    const auto aa = static_cast<std::uint64_t>(((a % m) + m) % m);
    std::map<std::uint64_t, Rational> acc;
    for (const auto& [k, c] : terms_) acc[(k * aa) % conductor()] += c;
    r.assign(acc);
    return r;
  }

  Cyclotomic conj() const { return galois(-1); }

  Cyclotomic& operator+=(const Cyclotomic& o) { return combine(o, 1); }
  Cyclotomic& operator-=(const Cyclotomic& o) { return combine(o, -1); }
  Cyclotomic& operator*=(const Rational& r) {
    if (r == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& t : terms_) t.second *= r;
    return *this;
  }
  Cyclotomic& operator/=(const Rational& r) {
    if (r == 0) fail(ErrorCode::DomainError, "division by zero");
    for (auto& t : terms_) t.second /= r;
    return *this;
  }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator-(Cyclotomic a) { return a *= Rational(-1); }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& r) { return a /= r; }

  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor()) {
      const std::uint64_t M = std::lcm(a.conductor(), b.conductor());
      return a.embed(M) * b.embed(M);
    }
    const std::uint64_t m = a.conductor();
    std::vector<std::pair<std::uint64_t, Rational>> prods;
    prods.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_) prods.emplace_back((i + j) % m, x * y);
    std::sort(prods.begin(), prods.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    Cyclotomic r(a.field_);
    for (auto& [k, v] : prods) {
      if (!r.terms_.empty() && r.terms_.back().first == k) {
        r.terms_.back().second += v;
      } else {
        r.terms_.emplace_back(k, std::move(v));
      }
    }
    std::erase_if(r.terms_, [](const auto& t) { return t.second == 0; });
    return r;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() == b.conductor()) return (a - b).is_zero();
    const std::uint64_t M = std::lcm(a.conductor(), b.conductor());
    return a.embed(M) == b.embed(M);
  }

  /// Lexicographic order on canonical coefficients (equal conductors only).
  static int compare(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.conductor() != b.conductor()) fail(ErrorCode::Internal, "cyclotomic conductor mismatch");
    auto x = a.canonical(), y = b.canonical();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < y[i]) return -1;
      if (y[i] < x[i]) return 1;
    }
    return 0;
  }

  std::complex<double> to_complex() const {
    std::complex<double> s = 0;
    for (const auto& [k, c] : terms_) {
      double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(conductor());
      s += c.get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
  }

  /// Human-readable form on the power basis, e.g. "-1-z3^2" where z3 = exp(2 pi i/3).
  std::string to_string() const {
    auto c = canonical();
    std::string out;
    const std::string z = "z" + std::to_string(conductor());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      Rational v = c[i];
      bool neg = v < 0;
      if (neg) v = -v;
      if (!out.empty() || neg) out += neg ? "-" : "+";
      std::string mag = v.get_den() == 1 ? v.get_num().get_str() : v.get_str();
      if (i == 0) {
        out += mag;
      } else {
        if (v != 1) out += mag + "*";
        out += z;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

private:
  void assign(const std::map<std::uint64_t, Rational>& acc) {
    terms_.clear();
    for (const auto& [k, c] : acc)
      if (c != 0) terms_.emplace_back(k, c);
  }

  Cyclotomic& combine(const Cyclotomic& o, int sign) {
    if (conductor() != o.conductor()) {
      const std::uint64_t M = std::lcm(conductor(), o.conductor());
      *this = embed(M);
      return combine(o.embed(M), sign);
    }
    std::vector<std::pair<std::uint64_t, Rational>> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
        merged.push_back(terms_[i++]);
      } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
        merged.emplace_back(o.terms_[j].first, sign > 0 ? o.terms_[j].second : Rational(-o.terms_[j].second));
        ++j;
      } else {
        Rational c = sign > 0 ? Rational(terms_[i].second + o.terms_[j].second) : Rational(terms_[i].second - o.terms_[j].second);
        if (c != 0) merged.emplace_back(terms_[i].first, c);
        ++i;
        ++j;
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  FieldPtr field_;
  std::vector<std::pair<std::uint64_t, Rational>> terms_;  // sorted by exponent, nonzero
};

}  // namespace restind
