#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "restind/catalog.hpp"
#include "restind/malle.hpp"

using namespace restind;

namespace {

std::size_t cycles_of(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  std::size_t c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    ++c;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = true;
  }
  return c;
}

// min of n - #cycles over all non-identity permutations of n points, optionally even only
std::size_t brute_a_symmetric(int n, bool even_only) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::size_t best = static_cast<std::size_t>(n);
  while (std::next_permutation(p.begin(), p.end())) {
    const auto c = cycles_of(p);
    if (even_only && (n - c) % 2) continue;
    best = std::min(best, static_cast<std::size_t>(n) - c);
  }
  return best;
}

// normal subgroups as unions of classes containing 1 that are closed under multiplication
std::vector<std::vector<ElementId>> brute_normals(const PermGroup& G) {
  const std::size_t r = G.class_count();
  std::vector<std::vector<ElementId>> out;
  for (std::uint64_t mask = 0; mask < (1ULL << (r - 1)); ++mask) {
    std::vector<bool> in(G.order(), false);
    std::vector<ElementId> elems;
    for (std::size_t c = 0; c < r; ++c)
      if (c == 0 || (mask >> (c - 1)) & 1)
        for (auto e : G.classes()[c].member_ids) {
          in[e] = true;
          elems.push_back(e);
        }
    bool closed = true;
    for (auto a : elems) {
      for (auto b : elems)
        if (!in[G.mul(a, b)]) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.push_back(elems);
  }
  return out;
}

Rational quotient_max(const PermGroup& G, const std::vector<ElementId>& N) {
  Rational best = 0;
  for (auto e : N) {
    const std::uint64_t o = G.element(e).order();
    if (o == 1) continue;
    best = std::max(best, Rational(Rational(o) / Rational(G.order() * (o - 1))));
  }
  return best;
}

// m(G) by enumeration of normal subgroups as class unions
Rational brute_m_of_G(const PermGroup& G) {
  std::optional<Rational> best;
  for (const auto& N : brute_normals(G)) {
    if (N.size() == 1 || N.size() == G.order()) continue;
    auto v = quotient_max(G, N);
    if (!best || v < *best) best = v;
  }
  return best.value_or(Rational(0));
}

Subgroup normal_by_generators(const GroupPtr& G, std::vector<std::string> gens) {
  auto N = subgroup_from_generators(G, gens);
  EXPECT_TRUE(N.is_normal);
  return N;
}

}  // namespace

TEST(APi, NaturalSymmetricGroups) {
  for (int n = 2; n <= 8; ++n) {
    auto G = named_group("S" + std::to_string(n), 50000);
    EXPECT_EQ(a_pi(natural_action(G)), 1u);
    EXPECT_EQ(a_pi(natural_action(G)), brute_a_symmetric(n, false));
  }
}

TEST(APi, CyclicAndAlternating) {
  for (int p : {2, 3, 5, 7, 11}) EXPECT_EQ(a_pi(natural_action(named_group("C" + std::to_string(p)))), p - 1u);
  EXPECT_EQ(a_pi(natural_action(named_group("A5"))), 2u);
  EXPECT_EQ(a_pi(natural_action(named_group("A5"))), brute_a_symmetric(5, true));
  EXPECT_THROW(a_pi(natural_action(named_group("C1"))), Error);
}

TEST(APi, Restricted) {
  auto S4 = named_group("S4");
  auto V4 = normal_by_generators(S4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  EXPECT_EQ(a_pi_restricted(natural_action(S4), V4), 2u);
  for (int n : {5, 6}) {
    auto G = named_group("S" + std::to_string(n));
    EXPECT_EQ(a_pi_restricted(natural_action(G), even_subgroup(G)), brute_a_symmetric(n, true));
    EXPECT_EQ(a_pi_restricted(natural_action(G), even_subgroup(G)), 2u);
  }
  EXPECT_THROW(a_pi_restricted(natural_action(S4), trivial_subgroup(S4)), Error);
}

TEST(APi, RegularOrbitCounts) {
  for (const auto& e : small_groups(60)) {
    auto G = build_group(e);
    auto a = regular_action(G);
    for (std::size_t c = 0; c < G->class_count(); ++c) {
      const auto o = G->classes()[c].element_order;
      EXPECT_EQ(a.degree - a.orbits[c], G->order() - G->order() / o);
    }
    if (G->order() < 2) continue;
    const auto base = a_pi(a);
    for (const auto& N : normal_subgroups(G))
      if (!N.is_trivial()) EXPECT_LE(base, *a_pi_restricted(a, N));
  }
}

TEST(MPi, RegularClosedFormMatchesOrbitCountsUpTo60) {
  for (const auto& e : small_groups(60)) {
    auto G = build_group(e);
    auto reg = regular_action(G);
    auto mins = minimal_normal_subgroups(G);
    for (const auto& N : normal_subgroups(G)) {
      if (N.is_trivial()) continue;
      const auto mp = m_pi(reg, N);
      EXPECT_EQ(m_reg(G, N), mp) << e.name;
      // zero exactly when N is the unique minimal normal subgroup
      const bool unique_minimal = mins.unique_minimal && mins.unique_minimal->members == N.members;
      EXPECT_EQ(mp == 0, unique_minimal) << e.name;
    }
  }
}

TEST(MPi, SymmetricOverAlternating) {
  for (int n : {5, 6}) {
    auto G = named_group("S" + std::to_string(n));
    auto An = even_subgroup(G);
    EXPECT_EQ(m_reg(G, An), 0);
    EXPECT_EQ(m_pi(regular_action(G), An), 0);
    EXPECT_EQ(m_pi(natural_action(G), An), 0);
  }
  auto A5 = named_group("A5");
  EXPECT_EQ(m_pi(natural_action(A5), whole_group(A5)), 0);
}

TEST(MOfG, Examples) {
  EXPECT_EQ(m_of_G(named_group("S3")), Rational(1, 4));
  EXPECT_EQ(m_of_G(named_group("A4")), Rational(1, 6));
  EXPECT_EQ(m_of_G(named_group("S4")), Rational(1, 12));
  EXPECT_EQ(m_of_G(named_group("A5")), 0);
  for (const char* name : {"S3", "A4", "S4", "A5", "D5", "small:12:1", "small:24:3"}) {
    auto G = named_group(name);
    EXPECT_EQ(m_of_G(G), brute_m_of_G(*G)) << name;
    EXPECT_EQ(m_of_G(G), m_reg_display(G, whole_group(G))) << name;
  }
}

TEST(MOfG, MatchesEnumerationUpTo40) {
  for (const auto& e : small_groups(40)) {
    auto G = build_group(e);
    if (G->order() < 2 || G->class_count() > 16) continue;
    EXPECT_EQ(m_of_G(G), brute_m_of_G(*G)) << e.name;
  }
}

TEST(MReg, MaxAndDisplayedMinDifferOnC6) {
  auto G = named_group("C6");
  auto whole = whole_group(G);
  EXPECT_EQ(m_reg(G, whole), Rational(1, 3));
  EXPECT_EQ(m_reg_display(G, whole), Rational(1, 4));
  EXPECT_EQ(m_pi(regular_action(G), whole), Rational(1, 3));
}

TEST(Structural, Values) {
  EXPECT_EQ(structural_exponent(7), Rational(1, 1128960));
  EXPECT_LT(structural_exponent(2), 0);
  EXPECT_THROW(structural_exponent(1), Error);
  // positive from n = 7 on: 1/8 > 27/(32n) iff n > 27/4
  EXPECT_LE(structural_exponent(6), 0);
  EXPECT_GT(structural_exponent(8), 0);
}

TEST(Action, Explicit) {
  auto S3 = named_group("S3");
  std::vector<std::string> images;
  for (const auto& g : S3->generators()) images.push_back(g.to_cycle_string());
  auto a = explicit_action(S3, 3, images);
  auto nat = natural_action(S3);
  EXPECT_TRUE(a.transitive);
  EXPECT_TRUE(a.faithful);
  EXPECT_EQ(a.orbits, nat.orbits);

  // S4 -> S3 through its action on the three pairings of {1,2,3,4}
  auto S4 = named_group("S4");
  ASSERT_EQ(S4->generators().size(), 2u);
  // (1,2,3,4) permutes {12|34, 13|24, 14|23} as (1,3); (1,2) fixes 12|34 and swaps the others
  auto q = explicit_action(S4, 3, {"(1,3)", "(2,3)"});
  EXPECT_TRUE(q.transitive);
  EXPECT_FALSE(q.faithful);
  auto V4 = normal_by_generators(S4, {"(1,2)(3,4)", "(1,3)(2,4)"});
  EXPECT_FALSE(a_pi_restricted(q, V4).has_value());
  EXPECT_EQ(a_pi(q), 1u);

  EXPECT_THROW(explicit_action(S4, 3, {"(1,2,3)", "(1,2)"}), Error);
}

TEST(Report, Invariants) {
  for (const char* name : {"S3", "S4", "S5", "A4", "D4", "C6"}) {
    auto G = named_group(name);
    auto nat = natural_action(G);
    for (const auto& N : normal_subgroups(G)) {
      if (N.is_trivial()) continue;
      auto r = malle_report(nat, N);
      EXPECT_GE(r.m_pi, 0);
      EXPECT_GE(Rational(1), r.m_pi * Rational(r.a));
      EXPECT_EQ(r.m_of_G.has_value(), N.order == G->order());
    }
  }
  auto S5 = named_group("S5");
  auto r = malle_report(natural_action(S5), whole_group(S5));
  ASSERT_TRUE(r.structural.has_value());
  EXPECT_EQ(*r.structural, structural_exponent(5));
  EXPECT_FALSE(malle_report(regular_action(S5), whole_group(S5)).structural.has_value());
}
