#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "restind/error.hpp"
#include "restind/linalg.hpp"
#include "restind/rational.hpp"

namespace restind {

/// Monic polynomial with integer coefficients; coeffs[i] multiplies x^i.
class MonicIntPolynomial {
public:
  explicit MonicIntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) {
    while (c_.size() > 1 && c_.back() == 0) c_.pop_back();
    if (c_.size() < 2) fail(ErrorCode::DomainError, "polynomial must have degree at least 1");
    if (c_.back() != 1) fail(ErrorCode::DomainError, "polynomial must be monic");
  }

  std::size_t degree() const noexcept { return c_.size() - 1; }
  const std::vector<Integer>& coeffs() const noexcept { return c_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Integer& a = c_[k];
      if (a == 0) continue;
      const bool neg = a < 0;
      const Integer mag = neg ? Integer(-a) : a;
      if (out.empty()) out += neg ? "-" : "";
      else out += neg ? "-" : "+";
      if (mag != 1 || k == 0) out += mag.get_str();
      if (k > 0) out += k == 1 ? "x" : "x^" + std::to_string(k);
    }
    return out;
  }

private:
  std::vector<Integer> c_;
};

/// Parses ASCII syntax such as "x^5-x-1", "x^2 + 3*x - 4", "2x^3" (must end up monic).
inline MonicIntPolynomial parse_polynomial(std::string_view text) {
  const std::string s(text);
  std::vector<Integer> coeffs;
  std::size_t i = 0;
  auto bad = [&](const std::string& why) { fail(ErrorCode::ParseError, "polynomial '" + s + "': " + why); };
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  auto number = [&] {
    std::string d;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) d += s[i++];
    return d;
  };
  skip();
  if (i == s.size()) bad("empty polynomial");
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      bad("expected + or -");
    }
    first = false;
    const std::string digits = number();
    Integer coef = digits.empty() ? Integer(1) : Integer(digits);
    std::size_t power = 0;
    skip();
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) bad("'*' without a coefficient");
      ++i;
      skip();
      if (i >= s.size() || s[i] != 'x') bad("expected x after '*'");
    }
    if (i < s.size() && s[i] == 'x') {
      ++i;
      power = 1;
      skip();
      if (i < s.size() && s[i] == '^') {
        ++i;
        skip();
        const std::string e = number();
        if (e.empty() || e.size() > 4) bad("bad exponent");
        power = std::stoul(e);
      }
    } else if (digits.empty()) {
      bad("expected a term");
    }
    skip();
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * coef;
  }
  return MonicIntPolynomial(std::move(coeffs));
}

inline std::vector<Integer> derivative(const std::vector<Integer>& f) {
  std::vector<Integer> d;
  for (std::size_t k = 1; k < f.size(); ++k) d.push_back(f[k] * static_cast<unsigned long>(k));
  return d;
}

/// Resultant of f and g by the Sylvester determinant.
inline Integer resultant(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
  std::vector<IntVector> S(N, IntVector(N, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) S[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) S[n + r][r + k] = g[n - k];
  return bareiss_determinant(S);
}

/// disc(f) = (-1)^(n(n-1)/2) Res(f, f') for monic f.
inline Integer discriminant(const MonicIntPolynomial& f) {
  const std::size_t n = f.degree();
  if (n < 2) fail(ErrorCode::DomainError, "discriminant needs degree at least 2");
  Integer r = resultant(f.coeffs(), derivative(f.coeffs()));
  return (n * (n - 1) / 2) % 2 ? Integer(-r) : r;
}

/// Squarefree part of d with its sign. Trial division up to `bound`; `complete` is false
/// when an unfactored cofactor above bound^2 remains (it is then kept as is).
inline Integer squarefree_core(const Integer& d, bool& complete, std::uint64_t bound = 1'000'000) {
  if (d == 0) fail(ErrorCode::DomainError, "zero discriminant");
  Integer rest = abs(d), core = 1;
  for (std::uint64_t p = 2; p <= bound; p += (p == 2 ? 1 : 2)) {
    if (Integer(static_cast<unsigned long>(p)) * static_cast<unsigned long>(p) > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e % 2) core *= static_cast<unsigned long>(p);
  }
  complete = true;
  if (rest > 1) {
    if (mpz_perfect_square_p(rest.get_mpz_t())) {
      rest = 1;
    } else {
      const Integer b = static_cast<unsigned long>(bound);
      if (rest > b * b && mpz_probab_prime_p(rest.get_mpz_t(), 30) == 0) complete = false;
      core *= rest;
    }
  }
  return d < 0 ? Integer(-core) : core;
}

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^32; coefficient i multiplies x^i, no trailing zeros.

namespace fp {

using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr) {
    const auto q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(p) : t);
}

inline Poly reduce(const std::vector<Integer>& f, std::uint64_t p) {
  Poly out;
  for (const auto& c : f) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
    out.push_back(r.get_ui());
  }
  trim(out);
  return out;
}

/// a mod m, m monic or with invertible lead.
inline Poly mod(Poly a, const Poly& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t li = inv(m.back(), p);
  while (a.size() > dm) {
    const std::uint64_t q = a.back() * li % p;
    const std::size_t s = a.size() - 1 - dm;
    for (std::size_t k = 0; k <= dm; ++k) a[s + k] = (a[s + k] + p - q * m[k] % p) % p;
    trim(a);
  }
  return a;
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod(std::move(r), m, p);
}

inline Poly powmod(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p) {
  Poly r{1};
  base = mod(std::move(base), m, p);
  while (e) {
    if (e & 1) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = mod(std::move(a), b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const auto li = inv(a.back(), p);
    for (auto& c : a) c = c * li % p;
  }
  return a;
}

/// Exact quotient a / b.
inline Poly divide(Poly a, const Poly& b, std::uint64_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {};
  Poly q(a.size() - db, 0);
  const std::uint64_t li = inv(b.back(), p);
  while (a.size() > db && !a.empty()) {
    const std::uint64_t c = a.back() * li % p;
    const std::size_t s = a.size() - 1 - db;
    q[s] = c;
    for (std::size_t k = 0; k <= db; ++k) a[s + k] = (a[s + k] + p - c * b[k] % p) % p;
    trim(a);
  }
  return q;
}

}  // namespace fp

/// Degrees of the irreducible factors of f mod p, non-increasing, by distinct-degree
/// factorization. f mod p must be squarefree.
inline std::vector<int> factor_degrees_mod(const MonicIntPolynomial& f, std::uint64_t p) {
  using fp::Poly;
  Poly g = fp::reduce(f.coeffs(), p);
  std::vector<int> degrees;
  const Poly x{0, 1};
  Poly h = fp::mod(x, g, p);
  for (std::size_t d = 1; 2 * d <= g.size() - 1; ++d) {
    h = fp::powmod(h, p, g, p);
    Poly diff = h;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    fp::trim(diff);
    Poly c = fp::gcd(g, diff, p);
    if (c.size() > 1) {
      for (std::size_t k = 0; k < (c.size() - 1) / d; ++k) degrees.push_back(static_cast<int>(d));
      g = fp::divide(g, c, p);
      h = fp::mod(h, g, p);
    }
  }
  if (g.size() > 1) degrees.push_back(static_cast<int>(g.size() - 1));
  std::sort(degrees.rbegin(), degrees.rend());
  return degrees;
}

/// Cycle type of Frob_p, or an empty vector when p divides disc(f).
inline std::vector<int> factor_cycle_type(const MonicIntPolynomial& f, const Integer& disc, std::uint64_t p) {
  if (mpz_divisible_ui_p(disc.get_mpz_t(), p)) return {};
  return factor_degrees_mod(f, p);
}

inline std::vector<int> factor_cycle_type(const MonicIntPolynomial& f, std::uint64_t p) {
  return factor_cycle_type(f, discriminant(f), p);
}

}  // namespace restind
