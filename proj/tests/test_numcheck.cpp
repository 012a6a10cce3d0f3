#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "restind/chebotarev.hpp"
#include "restind/zero_free_region.hpp"

using namespace restind;

namespace {

bool is_prime_naive(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

// roots of f in F_p by evaluation
std::size_t roots_mod(const MonicIntPolynomial& f, std::uint64_t p) {
  std::vector<std::uint64_t> c;
  for (const auto& a : f.coeffs()) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), p);
    c.push_back(r.get_ui());
  }
  std::size_t n = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t k = c.size(); k-- > 0;) v = (v * x + c[k]) % p;
    if (v == 0) ++n;
  }
  return n;
}

// Legendre symbol by Euler's criterion, (d/2) from d mod 8
int legendre(const Integer& d, std::uint64_t p) {
  Integer r;
  if (p == 2) {
    mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), 8);
    const auto m = r.get_ui();
    if (m % 2 == 0) return 0;
    return m == 1 || m == 7 ? 1 : -1;
  }
  mpz_fdiv_r_ui(r.get_mpz_t(), d.get_mpz_t(), p);
  if (r == 0) return 0;
  return powmod(r.get_ui(), (p - 1) / 2, p) == 1 ? 1 : -1;
}

MonicIntPolynomial trinomial(unsigned n, long a, long b) {
  std::vector<Integer> c(n + 1, 0);
  c[n] = 1;
  c[1] = a;
  c[0] = b;
  return MonicIntPolynomial(c);
}

}  // namespace

TEST(Polynomial, Parse) {
  auto f = parse_polynomial("x^5-x-1");
  EXPECT_EQ(f.degree(), 5u);
  EXPECT_EQ(f.coeffs(), (std::vector<Integer>{-1, -1, 0, 0, 0, 1}));
  EXPECT_EQ(f.to_string(), "x^5-x-1");
  EXPECT_EQ(parse_polynomial(" x^2 + 3*x - 4 ").coeffs(), (std::vector<Integer>{-4, 3, 1}));
  EXPECT_EQ(parse_polynomial("x^3+2x^2+x^2").coeffs(), (std::vector<Integer>{0, 0, 3, 1}));
  EXPECT_EQ(parse_polynomial("-1+x^2").to_string(), "x^2-1");
  for (const char* bad : {"", "2x^2+1", "x^2+", "x^^2", "y+1", "x^2 1", "*x"})
    EXPECT_THROW(parse_polynomial(bad), Error) << bad;
}

TEST(Polynomial, DiscriminantExamples) {
  EXPECT_EQ(discriminant(parse_polynomial("x^2+1")), -4);
  EXPECT_EQ(discriminant(parse_polynomial("x^5-x-1")), 2869);
  EXPECT_EQ(discriminant(parse_polynomial("x^3-2")), -108);
  EXPECT_THROW(discriminant(parse_polynomial("x+1")), Error);
}

TEST(Polynomial, DiscriminantMatchesTrinomialFormulas) {
  for (long a = -6; a <= 6; ++a)
    for (long b = -6; b <= 6; ++b) {
      const Integer A = a, B = b;
      EXPECT_EQ(discriminant(trinomial(2, a, b)), A * A - 4 * B);
      EXPECT_EQ(discriminant(trinomial(3, a, b)), -4 * A * A * A - 27 * B * B);
      EXPECT_EQ(discriminant(trinomial(5, a, b)), 256 * A * A * A * A * A + 3125 * B * B * B * B);
    }
}

TEST(Polynomial, SquarefreeCore) {
  bool complete = false;
  EXPECT_EQ(squarefree_core(-108, complete), -3);
  EXPECT_TRUE(complete);
  EXPECT_EQ(squarefree_core(-4, complete), -1);
  EXPECT_EQ(squarefree_core(2869, complete), 2869);
  EXPECT_EQ(squarefree_core(Integer(72) * 1000003 * 1000003, complete), 2);
  EXPECT_TRUE(complete);
}

TEST(Factor, Examples) {
  auto g = parse_polynomial("x^2+1");
  EXPECT_EQ(factor_cycle_type(g, 5), (CycleType{1, 1}));
  EXPECT_EQ(factor_cycle_type(g, 3), (CycleType{2}));
  EXPECT_TRUE(factor_cycle_type(g, 2).empty());
  EXPECT_TRUE(factor_cycle_type(parse_polynomial("x^5-x-1"), 19).empty());
  EXPECT_TRUE(factor_cycle_type(parse_polynomial("x^5-x-1"), 151).empty());
}

TEST(Factor, FixedPointsAreRootsModP) {
  for (const char* s : {"x^5-x-1", "x^3-2", "x^4+1", "x^6+x+1", "x^7-x-1", "x^4-x^2+1"}) {
    auto f = parse_polynomial(s);
    const auto d = discriminant(f);
    for (std::uint64_t p = 2; p < 1500; ++p) {
      if (!is_prime_naive(p)) continue;
      auto t = factor_cycle_type(f, d, p);
      if (d % static_cast<unsigned long>(p) == 0) {
        EXPECT_TRUE(t.empty());
        continue;
      }
      int sum = 0;
      for (int k : t) sum += k;
      EXPECT_EQ(static_cast<std::size_t>(sum), f.degree());
      EXPECT_EQ(static_cast<std::size_t>(std::count(t.begin(), t.end(), 1)), roots_mod(f, p)) << s << " p=" << p;
    }
  }
}

TEST(Factor, PureCubic) {
  // x^3 - 2 mod p > 3: one root when p = 2 mod 3; else three roots or none by cubic residuosity
  auto f = parse_polynomial("x^3-2");
  for (std::uint64_t p = 5; p < 3000; ++p) {
    if (!is_prime_naive(p)) continue;
    CycleType expect;
    if (p % 3 == 2) expect = {2, 1};
    else expect = powmod(2, (p - 1) / 3, p) == 1 ? CycleType{1, 1, 1} : CycleType{3};
    EXPECT_EQ(factor_cycle_type(f, p), expect) << p;
  }
}

TEST(Sieve, MatchesTrialDivision) {
  auto ps = primes_up_to(100000);
  std::vector<std::uint64_t> naive;
  for (std::uint64_t n = 0; n <= 100000; ++n)
    if (is_prime_naive(n)) naive.push_back(n);
  EXPECT_EQ(ps, naive);
  EXPECT_TRUE(primes_up_to(1).empty());
  EXPECT_EQ(primes_up_to(2), (std::vector<std::uint64_t>{2}));
}

TEST(Sieve, CountsAcrossSegments) {
  std::size_t n = 0;
  for_each_prime(1'000'000, [&](std::uint64_t) { ++n; });
  EXPECT_EQ(n, 78498u);
  n = 0;
  std::uint64_t last = 0;
  for_each_prime(3'000'000, [&](std::uint64_t p) {
    ++n;
    EXPECT_GT(p, last);
    last = p;
  });
  EXPECT_EQ(n, 216816u);
  EXPECT_THROW(for_each_prime(10'000'001, [](std::uint64_t) {}), Error);
  try {
    primes_up_to(200, 100);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SieveCapExceeded);
  }
}

TEST(Tally, GaussianPrimes) {
  auto t = chebotarev_tally(parse_polynomial("x^2+1"), 100);
  EXPECT_EQ(t.prime_count, 25u);
  EXPECT_EQ(t.per_class.at({1, 1}), 11u);
  EXPECT_EQ(t.per_class.at({2}), 13u);
  EXPECT_EQ(t.ramified, (std::vector<std::uint64_t>{2}));

  auto big = chebotarev_tally(parse_polynomial("x^2+1"), 100000);
  std::uint64_t one = 0, three = 0;
  for (std::uint64_t p = 3; p <= 100000; ++p)
    if (is_prime_naive(p)) ++(p % 4 == 1 ? one : three);
  EXPECT_EQ(big.per_class.at({1, 1}), one);
  EXPECT_EQ(big.per_class.at({2}), three);
  EXPECT_EQ(big.plus, one);
  EXPECT_EQ(big.minus, three);
}

TEST(Tally, TinyBound) {
  for (const char* s : {"x^5-x-1", "x^2+1", "x^3-2"}) {
    auto t = chebotarev_tally(parse_polynomial(s), 2);
    EXPECT_EQ(t.prime_count, 1u);
    std::uint64_t total = t.ramified.size();
    for (const auto& [k, c] : t.per_class) total += c;
    EXPECT_EQ(total, 1u);
  }
  EXPECT_EQ(chebotarev_tally(parse_polynomial("x^5-x-1"), 1).prime_count, 0u);
  EXPECT_THROW(chebotarev_tally(parse_polynomial("x^2-2*x+1"), 10), Error);
}

TEST(Tally, ConservationAndQuadraticCharacter) {
  for (const char* s : {"x^5-x-1", "x^3-2", "x^4+1", "x^6+x+1", "x^4-x^2+1", "x^3-3*x+1"}) {
    auto f = parse_polynomial(s);
    auto scan = frobenius_scan(f, 20000);
    for (const auto& r : scan.records) {
      if (r.type < 0) continue;
      EXPECT_EQ(r.kronecker, legendre(scan.disc, r.p)) << s << " p=" << r.p;
      // sign of Frobenius is the quadratic character (Stickelberger)
      EXPECT_EQ(is_even_type(scan.types[static_cast<std::size_t>(r.type)]), r.kronecker == 1) << s << " p=" << r.p;
    }
    for (std::uint64_t x : {2u, 100u, 5000u, 20000u}) {
      auto t = tally_at(scan, x);
      std::uint64_t total = t.ramified.size(), even = 0, odd = 0;
      for (const auto& [type, c] : t.per_class) {
        total += c;
        (is_even_type(type) ? even : odd) += c;
      }
      std::uint64_t pi = 0;
      for (std::uint64_t p = 2; p <= x; ++p) pi += is_prime_naive(p);
      EXPECT_EQ(t.prime_count, pi);
      EXPECT_EQ(total, pi);
      EXPECT_EQ(even, t.plus) << s;
      EXPECT_EQ(odd, t.minus) << s;
    }
  }
}

TEST(Fibered, QuadraticIsTautology) {
  auto r = fibered_check(chebotarev_tally(parse_polynomial("x^2+1"), 10000));
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.predicted, Rational(Integer(static_cast<unsigned long>(row.observed))));
    EXPECT_EQ(row.abs_deviation, 0.0);
  }
  EXPECT_TRUE(r.galois_confirmed);
}

TEST(Fibered, CoefficientsAndParity) {
  for (const char* s : {"x^5-x-1", "x^3-2", "x^4+1", "x^6+x+1", "x^7-x-1"}) {
    auto r = fibered_check(chebotarev_tally(parse_polynomial(s), 20000));
    EXPECT_TRUE(r.general_from_group);
    EXPECT_TRUE(r.formulas_agree);
    EXPECT_TRUE(r.parity_even);
    EXPECT_TRUE(r.parity_odd);
    Rational even_total = 0;
    for (const auto& row : r.rows) {
      EXPECT_EQ(row.general_coefficient, row.coefficient);
      if (row.even) even_total += row.coefficient;
    }
    // even classes fill A_n: their coefficients sum to 1
    EXPECT_EQ(even_total, 1) << s;
  }
}

TEST(Fibered, GaloisWitnesses) {
  EXPECT_TRUE(fibered_check(chebotarev_tally(parse_polynomial("x^5-x-1"), 5000)).galois_confirmed);
  EXPECT_TRUE(fibered_check(chebotarev_tally(parse_polynomial("x^3-2"), 5000)).galois_confirmed);
  EXPECT_TRUE(fibered_check(chebotarev_tally(parse_polynomial("x^6+x+1"), 20000)).galois_confirmed);
  // Galois group V4 and C3: no transposition pattern ever occurs
  EXPECT_FALSE(fibered_check(chebotarev_tally(parse_polynomial("x^4+1"), 5000)).galois_confirmed);
  EXPECT_FALSE(fibered_check(chebotarev_tally(parse_polynomial("x^3-3*x+1"), 5000)).galois_confirmed);
  auto r = fibered_check(chebotarev_tally(parse_polynomial("x^5-x-1"), 100000));
  ASSERT_EQ(r.rows.size(), 7u);
  for (const auto& row : r.rows) EXPECT_LT(std::abs(row.rel_deviation), 0.2) << cycle_type_string(row.type);
}

TEST(PartialSum, TrivialAndSign) {
  SymmetricContext sym(5);
  auto t = chebotarev_tally(parse_polynomial("x^5-x-1"), 50000);
  const auto& table = *sym.table();
  std::size_t sign = table.size();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table.degrees()[i] == 1 && i != 0) sign = i;
  ASSERT_LT(sign, table.size());
  EXPECT_TRUE(character_partial_sum(sym, t, table[0]).equals(Rational(Integer(static_cast<unsigned long>(t.unramified())))));
  const Integer diff = Integer(static_cast<unsigned long>(t.plus)) - static_cast<unsigned long>(t.minus);
  EXPECT_TRUE(character_partial_sum(sym, t, table[sign]).equals(Rational(diff)));
  EXPECT_THROW(character_partial_sum(SymmetricContext(4), t, table[0]), Error);
}

TEST(Profile, TwoFormulasAgree) {
  SymmetricContext sym(5);
  auto scan = frobenius_scan(parse_polynomial("x^5-x-1"), 30000);
  auto prof = class_function_profile(sym, scan, 30000);
  ASSERT_EQ(prof.size(), 7u);
  auto t = tally_at(scan, 30000);
  EXPECT_TRUE(prof[0].from_class_sum.equals(ratio(Integer(static_cast<unsigned long>(t.unramified())), 120)));
  for (const auto& e : prof) EXPECT_TRUE(e.from_class_sum == e.from_prime_sum);

  SymmetricContext s2(2);
  auto zero = class_function_profile(s2, frobenius_scan(parse_polynomial("x^2+1"), 2), 2);
  for (const auto& e : zero) EXPECT_TRUE(e.from_class_sum.is_zero());
}

TEST(Region, OmegaBranches) {
  RegionParams p{100, 0.5, 120, 1};
  const double delta = 0.5 / 2400;
  EXPECT_DOUBLE_EQ(p.delta(), delta);
  EXPECT_NEAR(omega_K(3, p), 2 * delta * 100 / (100 + std::log(3.0)), 1e-15);
  EXPECT_THROW(omega_K(2.9, p), Error);
  // branch cut at log t = D^(eps/(6 C_G)) = e^(100/72)
  const double U = std::exp(100.0 / 72);
  EXPECT_NEAR(p.branch_u(), U, 1e-12);
  EXPECT_NEAR(omega_K(std::exp(2 * U), p), 0.1 / (100 + 120 * 2 * U), 1e-15);
  double prev = omega_K(std::exp(1.01 * U), p);
  for (double u = 1.1 * U; u < 1e6; u *= 1.7) {
    const double w = omega_K(std::exp(std::min(u, 700.0)), p);
    EXPECT_LE(w, prev);
    prev = w;
  }
  EXPECT_THROW(omega_K(10, RegionParams{100, 1.5, 120, 1}), Error);
  EXPECT_THROW(omega_K(10, RegionParams{-1, 0.5, 120, 1}), Error);
  RegionParams low_cg = p;
  low_cg.C_G = 5;
  EXPECT_THROW(omega_K(10, low_cg), Error);
}

TEST(Region, EtaClosedFormMatchesGridSweep) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> unit(0, 1);
  const double eps[] = {0.05, 0.1, 0.25, 0.5, 0.75, 0.9};
  const std::uint64_t orders[] = {6, 24, 120};
  for (int i = 0; i < 100; ++i) {
    RegionParams p;
    p.logD = std::pow(10.0, 1 + 3 * unit(rng));
    p.epsilon = eps[i % 6];
    p.order_G = orders[(i / 6) % 3];
    const double logx = std::pow(10.0, 0.1 + 9 * unit(rng));
    const auto v = eta_K_log(logx, p);
    EXPECT_NEAR(v.closed_form, v.grid, 1e-6 * std::abs(v.grid)) << i;
    EXPECT_GE(v.closed_form, v.grid - 1e-6 * std::abs(v.grid));
    EXPECT_GE(v.nodes, 10000u);
  }
}

TEST(Region, EtaGridAgainstLinearScan) {
  for (auto [logD, e, G, logx] : {std::tuple{10.0, 0.05, 6ULL, 1e6}, std::tuple{50.0, 0.9, 6ULL, 1e3},
                                  std::tuple{2000.0, 0.5, 24ULL, 1e8}, std::tuple{10.0, 0.9, 120ULL, 1e9}}) {
    RegionParams p{logD, e, G, 1};
    const auto v = eta_K_log(logx, p);
    double best = 1e300;
    const double lo = std::log(3.0), hi = v.grid + 1;
    for (int k = 0; k <= 1'000'000; ++k) {
      const double u = lo + (hi - lo) * k / 1e6;
      best = std::min(best, zfr::omega_at(u, p) * logx + u);
    }
    EXPECT_LE(v.grid, best + 1e-9 * best);
    EXPECT_GE(v.grid, best - 1e-3 * best);
  }
}

TEST(Region, EtaAsymptotics) {
  RegionParams p{100, 0.5, 24, 1};
  double prev = 0;
  for (double logx = 10; logx < 1e12; logx *= 10) {
    const auto v = eta_K_log(logx, p);
    EXPECT_GT(v.grid, prev);
    prev = v.grid;
    EXPECT_LE(v.grid, 0.5 / 240 * logx + std::log(3.0));
  }
  EXPECT_THROW(eta_K(2, p), Error);
  const auto tiny = eta_K_log(50, RegionParams{1e-12, 0.5, 24, 1});
  EXPECT_TRUE(std::isfinite(tiny.grid));
  EXPECT_TRUE(std::isfinite(tiny.closed_form));
}

TEST(Region, Envelope) {
  RegionParams p{std::exp(5.0), 0.5, 120, 1};
  const auto e = pnt_envelope(3, p);
  EXPECT_NEAR(e.value, 3 * std::exp(-0.1 * std::sqrt(std::log(3.0))), 1e-14);
  EXPECT_NEAR(e.log_threshold, 81.0 * 120 / 0.5 * 5, 1e-8);
  EXPECT_FALSE(e.above_threshold);
  EXPECT_THROW(pnt_envelope(2, p), Error);
  // envelope / (x / log x) decreases once sqrt(log x) > 20
  double prev = 1e300;
  for (double lx = 500; lx < 700; lx += 20) {
    const double ratio = pnt_envelope(std::exp(lx), p).value / (std::exp(lx) / lx);
    EXPECT_LT(ratio, prev);
    prev = ratio;
  }
}

TEST(PartialSum, StandardCharacterCountsRoots) {
  // the degree-4 constituent of the permutation character is #fixed points - 1
  SymmetricContext sym(5);
  const auto& table = *sym.table();
  const auto transposition = sym.class_of({2, 1, 1, 1});
  std::size_t standard = table.size();
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table.degrees()[i] == 4 && table[i][transposition].equals(2)) standard = i;
  ASSERT_LT(standard, table.size());
  auto f = parse_polynomial("x^5-x-1");
  auto scan = frobenius_scan(f, 10000);
  for (std::uint64_t x : {100u, 1000u, 10000u}) {
    long expect = 0;
    for (const auto& r : scan.records)
      if (r.p <= x && r.type >= 0) expect += static_cast<long>(roots_mod(f, r.p)) - 1;
    EXPECT_TRUE(character_partial_sum(sym, tally_at(scan, x), table[standard]).equals(Rational(expect))) << x;
  }
}
