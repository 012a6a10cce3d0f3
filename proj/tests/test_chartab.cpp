#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "restind/catalog.hpp"
#include "restind/character_table.hpp"

using namespace restind;

namespace {

std::vector<std::uint64_t> sorted_degrees(const CharacterTable& t) {
  auto d = t.degrees();
  std::sort(d.begin(), d.end());
  return d;
}

// Permutation character: number of fixed points.
ClassFunction fixed_point_character(const GroupPtr& g) {
  ClassFunction f{g, {}};
  for (const auto& c : g->classes()) {
    const auto& p = g->element(c.representative);
    std::int64_t fixed = 0;
    for (std::size_t i = 0; i < p.degree(); ++i) fixed += p[i] == i;
    f.values.push_back(Cyclotomic(1, Rational(fixed)));
  }
  return f;
}

Subgroup cyclic_subgroup(const GroupPtr& g, const std::string& gen) {
  return subgroup_from_generators(g, {gen});
}

// (1 - zeta^k T) products straight from the eigenvalue multiset of chi(g).
std::vector<Cyclotomic> eigen_product(const Cyclotomic& value, std::uint64_t m) {
  std::vector<Cyclotomic> poly{Cyclotomic(m, 1)};
  const auto embedded = value.embed(m);
  for (const auto& [k, mu] : embedded.terms()) {
    for (int rep = 0; rep < mu.get_num().get_si(); ++rep) {
      std::vector<Cyclotomic> next(poly.size() + 1, Cyclotomic(m));
      for (std::size_t i = 0; i < poly.size(); ++i) {
        next[i] += poly[i];
        next[i + 1] -= poly[i] * Cyclotomic::root(m, static_cast<std::int64_t>(k));
      }
      poly = std::move(next);
    }
  }
  return poly;
}

}  // namespace

TEST(CharacterTable, Degrees) {
  EXPECT_EQ(sorted_degrees(*character_table(named_group("S5"))), (std::vector<std::uint64_t>{1, 1, 4, 4, 5, 5, 6}));
  EXPECT_EQ(sorted_degrees(*character_table(named_group("C2"))), (std::vector<std::uint64_t>{1, 1}));
  EXPECT_EQ(sorted_degrees(*character_table(named_group("S4"))), (std::vector<std::uint64_t>{1, 1, 2, 3, 3}));
  EXPECT_EQ(sorted_degrees(*character_table(named_group("C1"))), (std::vector<std::uint64_t>{1}));
}

TEST(CharacterTable, TrivialFirstAndCanonicalOrder) {
  auto t = character_table(named_group("S5"));
  for (std::size_t c = 0; c < t->group()->class_count(); ++c) EXPECT_EQ((*t)[0][c], Cyclotomic(1, 1));
  for (std::size_t i = 1; i < t->size(); ++i) EXPECT_LE(t->degrees()[i - 1], t->degrees()[i]);
}

TEST(CharacterTable, OrthogonalityUpTo100) {
  for (const auto& e : small_groups(100)) {
    auto g = build_group(e);
    auto t = character_table(g);
    ASSERT_EQ(t->size(), e.class_count) << e.name;
    EXPECT_TRUE(orthogonality_holds(*t)) << e.name;
    for (auto d : t->degrees()) EXPECT_EQ(g->order() % d, 0u);
  }
}

TEST(CharacterTable, TransitiveGroupsThroughDegree7) {
  for (const auto& e : transitive_groups(7)) {
    auto t = character_table(build_group(e));
    EXPECT_EQ(t->size(), e.class_count) << e.name;
    std::uint64_t s = 0;
    for (auto d : t->degrees()) s += d * d;
    EXPECT_EQ(s, e.order) << e.name;
  }
}

TEST(CharacterTable, ContainsStandardRepresentation) {
  // fixed points - 1 is irreducible for doubly transitive S_n and A_n
  for (const char* name : {"S4", "S5", "A5", "S6", "A6"}) {
    auto g = named_group(name);
    auto t = character_table(g);
    auto f = fixed_point_character(g) - constant_function(g, 1);
    auto v = decompose(t, f);
    Rational total = 0;
    for (const auto& m : v.mults) total += m;
    EXPECT_EQ(total, 1) << name;
  }
}

TEST(InnerProduct, Basics) {
  auto g = named_group("S5");
  auto t = character_table(g);
  EXPECT_EQ(inner_product((*t)[0], (*t)[0]), 1);
  EXPECT_EQ(inner_product((*t)[6], (*t)[6]), 1);
  EXPECT_EQ(t->degrees()[6], 6u);
  auto reg = regular_character(g);
  for (std::size_t i = 0; i < t->size(); ++i) EXPECT_EQ(inner_product(reg, (*t)[i]), Rational(t->degrees()[i]));
  auto other = character_table(named_group("S4"));
  EXPECT_THROW(inner_product((*t)[0], (*other)[0]), Error);
}

TEST(Induction, RegularFromTrivialSubgroup) {
  for (const char* name : {"S3", "D4", "A4", "S5"}) {
    auto g = named_group(name);
    auto one = make_view(trivial_subgroup(g));
    auto ind = induce(one, constant_function(one.group, 1));
    EXPECT_EQ(ind, regular_character(g)) << name;
  }
}

TEST(Induction, DegreeAndReciprocityRandomSamples) {
  std::mt19937_64 rng(20261015);
  auto groups = small_groups(100);
  int samples = 0;
  while (samples < 200) {
    const auto& e = groups[rng() % groups.size()];
    auto g = build_group(e);
    auto lat = subgroups_up_to_conjugacy(g);
    const auto& h = lat.classes[rng() % lat.classes.size()];
    auto view = make_view(h);
    auto ht = character_table(view.group);
    auto gt = character_table(g);
    const auto& chi = (*ht)[rng() % ht->size()];
    const auto& rho = (*gt)[rng() % gt->size()];
    auto ind = induce(view, chi);
    EXPECT_EQ(ind.degree(), chi.degree() * Rational(g->order() / h.order));
    EXPECT_EQ(inner_product(ind, rho), inner_product(chi, restrict_to(rho, view))) << e.name;
    auto mults = decompose(gt, ind);
    EXPECT_TRUE(mults.is_genuine());
    ++samples;
  }
}

TEST(Restriction, Examples) {
  auto g = named_group("S5");
  auto t = character_table(g);
  auto a5 = make_view(even_subgroup(g));
  auto sgn = (*t)[1];
  EXPECT_EQ(restrict_to(sgn, a5), constant_function(a5.group, 1));
  auto c6 = make_view(cyclic_subgroup(g, "(1,2,3)(4,5)"));
  EXPECT_EQ(restrict_to((*t)[6], c6).degree(), Cyclotomic(1, 6));
  auto whole = make_view(whole_group(g));
  // the view renumbers elements, so compare through induction back up
  EXPECT_EQ(induce(whole, restrict_to((*t)[3], whole)), (*t)[3]);
}

TEST(LinearCharacters, CountsAndMultiplicativity) {
  auto s5 = named_group("S5");
  auto c6 = make_view(cyclic_subgroup(s5, "(1,2,3)(4,5)"));
  EXPECT_EQ(one_dim_characters(c6).size(), 6u);
  auto d4 = make_view(subgroup_from_generators(s5, {"(1,2,3,4)", "(1,3)"}));
  EXPECT_EQ(d4.sub.order, 8u);
  EXPECT_EQ(one_dim_characters(d4).size(), 4u);
  auto a5 = make_view(even_subgroup(s5));
  EXPECT_EQ(one_dim_characters(a5).size(), 1u);

  for (const auto& e : small_groups(32)) {
    auto g = build_group(e);
    auto lc = linear_characters(g);
    auto derived = derived_subgroup(g, whole_group(g));
    EXPECT_EQ(lc.values.size(), g->order() / derived.order) << e.name;
    for (const auto& v : lc.values)
      for (ElementId a = 0; a < g->order(); ++a)
        for (ElementId b = 0; b < g->order(); ++b)
          ASSERT_EQ(v[g->mul(a, b)], (v[a] + v[b]) % lc.modulus) << e.name;
    // they agree with the degree-one rows of the table
    auto t = character_table(g);
    std::size_t ones = std::count(t->degrees().begin(), t->degrees().end(), 1u);
    EXPECT_EQ(ones, lc.values.size()) << e.name;
  }
}

TEST(Kernel, Examples) {
  auto g = named_group("S5");
  auto t = character_table(g);
  EXPECT_EQ(kernel_of_character(t, (*t)[1]).order, 60u);
  EXPECT_EQ(kernel_of_character(t, (*t)[0]).order, 120u);
  auto c6 = make_view(cyclic_subgroup(g, "(1,2,3)(4,5)"));
  auto ct = character_table(c6.group);
  std::size_t faithful = 0;
  for (const auto& chi : one_dim_characters(c6))
    if (kernel_of_character(ct, chi).order == 1) ++faithful;
  EXPECT_EQ(faithful, 2u);  // the two primitive characters
  auto bad = (*t)[2] - (*t)[3];
  try {
    kernel_of_character(t, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotACharacter);
  }
}

TEST(CharPoly, Examples) {
  auto g = named_group("S5");
  auto t = character_table(g);
  const std::size_t transposition = 1;  // smallest non-identity class: order 2, size 10
  ASSERT_EQ(g->classes()[transposition].size, 10u);
  auto triv = char_poly_of_element((*t)[0], transposition);
  ASSERT_EQ(triv.size(), 2u);
  EXPECT_EQ(triv[1], Cyclotomic(1, -1));
  auto sgn = char_poly_of_element((*t)[1], transposition);
  EXPECT_EQ(sgn[1], Cyclotomic(1, 1));
  auto r4 = char_poly_of_element((*t)[2], 0);
  const int binom[] = {1, -4, 6, -4, 1};
  for (int k = 0; k <= 4; ++k) EXPECT_EQ(r4[k], Cyclotomic(1, binom[k]));
  EXPECT_THROW(char_poly_of_element((*t)[2] + (*t)[3], 0), Error);
}

TEST(CharPoly, NewtonAgreesWithEigenvalues) {
  for (const char* name : {"S5", "A5", "D5", "small:21:1", "small:24:3", "small:48:28"}) {
    auto g = named_group(name);
    auto t = character_table(g);
    for (std::size_t i = 0; i < t->size(); ++i)
      for (std::size_t c = 0; c < g->class_count(); ++c) {
        auto newton = char_poly_of_element((*t)[i], c);
        auto eig = eigen_product((*t)[i][c], g->exponent());
        ASSERT_EQ(newton.size(), eig.size()) << name << " " << i << " " << c;
        for (std::size_t k = 0; k < eig.size(); ++k) EXPECT_EQ(newton[k], eig[k]) << name;
      }
  }
}

TEST(CharPoly, RegularIdentitySmall) {
  for (const auto& e : small_groups(24)) {
    auto t = character_table(build_group(e));
    for (std::size_t c = 0; c < t->group()->class_count(); ++c) EXPECT_TRUE(regular_polynomial_identity(*t, c)) << e.name;
  }
}

TEST(EigenvalueForm, RoundTripsCanonicalValues) {
  auto g = named_group("small:21:1");
  auto t = character_table(g);
  for (const auto& chi : t->irreducibles()) {
    ClassFunction canon{g, {}};
    for (const auto& v : chi.values) canon.values.push_back(Cyclotomic::from_canonical(v.conductor(), v.canonical()));
    auto back = eigenvalue_form(canon);
    EXPECT_EQ(back, chi);
    for (std::size_t c = 0; c < g->class_count(); ++c)
      EXPECT_EQ(back.values[c].terms(), chi.values[c].terms());
  }
}

TEST(Cyclotomic, Arithmetic) {
  auto z3 = Cyclotomic::root(3, 1);
  auto sum = Cyclotomic(3, 1) + z3 + z3 * z3;
  EXPECT_TRUE(sum.is_zero());
  EXPECT_EQ(z3.conj(), z3 * z3);
  EXPECT_EQ(z3.conj().conj(), z3);
  EXPECT_TRUE((z3 + z3.conj()).is_rational());
  EXPECT_EQ((z3 + z3.conj()).rational_value(), -1);
  EXPECT_EQ(Cyclotomic::root(4, 1) * Cyclotomic::root(4, 1), Cyclotomic(4, -1));
  EXPECT_EQ(Cyclotomic::root(3, 1), Cyclotomic::root(6, 2));
  EXPECT_EQ(CyclotomicField::cyclotomic_polynomial(12),
            (IntPoly{1, 0, -1, 0, 1}));
  EXPECT_EQ(Cyclotomic::root(5, 2).to_string(), "z5^2");
}
