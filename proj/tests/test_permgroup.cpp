#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <unordered_set>

#include "restind/catalog.hpp"
#include "restind/subgroup.hpp"

using namespace restind;

namespace {

std::multiset<std::size_t> class_sizes(const PermGroup& g) {
  std::multiset<std::size_t> s;
  for (const auto& c : g.classes()) s.insert(c.size);
  return s;
}

// Every subgroup as a sorted element list, by testing every subset containing 1.
std::vector<std::vector<ElementId>> subsets_closed(const PermGroup& g) {
  const std::size_t n = g.order();
  std::vector<std::vector<ElementId>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (n - 1)); ++mask) {
    std::vector<ElementId> s{0};
    for (std::size_t i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1) s.push_back(static_cast<ElementId>(i));
    if (n % s.size() != 0) continue;
    std::vector<bool> in(n, false);
    for (auto e : s) in[e] = true;
    bool closed = true;
    for (auto a : s) {
      for (auto b : s)
        if (!in[g.mul(a, b)]) {
          closed = false;
          break;
        }
      if (!closed) break;
    }
    if (closed) out.push_back(s);
  }
  return out;
}

// All subgroups by repeated one-element extension until nothing new appears.
std::vector<std::vector<ElementId>> all_subgroups_fixed_point(const GroupPtr& G) {
  std::set<std::vector<ElementId>> found;
  std::vector<Subgroup> queue{trivial_subgroup(G)};
  found.insert(queue[0].element_ids);
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (ElementId x = 0; x < G->order(); ++x) {
      if (queue[i].contains(x)) continue;
      auto k = closure(G, {x}, &queue[i]);
      if (found.insert(k.element_ids).second) queue.push_back(k);
    }
  return {found.begin(), found.end()};
}

std::size_t conjugacy_class_count(const PermGroup& g, const std::vector<std::vector<ElementId>>& subs) {
  std::set<std::vector<ElementId>> seen;
  std::size_t classes = 0;
  for (const auto& s : subs) {
    if (seen.count(s)) continue;
    ++classes;
    for (ElementId x = 0; x < g.order(); ++x) {
      std::vector<ElementId> c;
      for (auto e : s) c.push_back(g.conjugate(e, x));
      std::sort(c.begin(), c.end());
      seen.insert(c);
    }
  }
  return classes;
}

}  // namespace

TEST(Permutation, ParsesAndComposesLeftToRight) {
  auto a = parse_cycles("(1,2)", 3);
  auto b = parse_cycles("(2,3)", 3);
  // (1,2) first, then (2,3): 1 -> 2 -> 3
  EXPECT_EQ((a * b)[0], 2u);
  EXPECT_EQ(parse_cycles("(1,2)(2,3)", 3), a * b);
  EXPECT_EQ(parse_cycles(" ( 1 , 2 , 3 ) ", 3).to_cycle_string(), "(1,2,3)");
  EXPECT_EQ(Permutation(4).to_cycle_string(), "()");
  EXPECT_EQ(parse_cycles("(1,2,3)(4,5)", 5).order(), 6u);
  EXPECT_EQ(parse_cycles("(1,2,3)(4,5)", 6).cycle_type(), (std::vector<int>{3, 2, 1}));
}

TEST(Permutation, RejectsMalformedInput) {
  EXPECT_THROW(parse_cycles("(1,2", 3), Error);
  EXPECT_THROW(parse_cycles("(1,4)", 3), Error);
  EXPECT_THROW(parse_cycles("(1,1)", 3), Error);
  EXPECT_THROW(parse_cycles("(0,1)", 3), Error);
  EXPECT_THROW(parse_cycles("1,2", 3), Error);
  EXPECT_THROW(parse_cycles("(1,,2)", 3), Error);
  try {
    parse_cycles("(1,x)", 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(Permutation, SplitsGeneratorLists) {
  EXPECT_EQ(split_generators("(1,2),(3,4)"), (std::vector<std::string>{"(1,2)", "(3,4)"}));
  EXPECT_EQ(split_generators("(1,3)(2,4)"), (std::vector<std::string>{"(1,3)(2,4)"}));
  EXPECT_EQ(split_generators("(1,2) (1,2,3,4,5)"), (std::vector<std::string>{"(1,2)", "(1,2,3,4,5)"}));
}

TEST(PermGroup, OrdersFromGenerators) {
  EXPECT_EQ(group_from_generators(5, std::vector<std::string>{"(1,2)", "(1,2,3,4,5)"})->order(), 120u);
  EXPECT_EQ(group_from_generators(3, "(1,2,3)")->order(), 3u);
  EXPECT_EQ(group_from_generators(4, std::vector<std::string>{"(1,2),(3,4)", "(1,3)(2,4)"})->order(), 8u);
}

TEST(PermGroup, CapExceeded) {
  try {
    group_from_generators(7, "(1,2),(1,2,3,4,5,6,7)", 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
  }
}

TEST(PermGroup, ConjugacyClasses) {
  auto s5 = named_group("S5");
  EXPECT_EQ(class_sizes(*s5), (std::multiset<std::size_t>{1, 10, 15, 20, 20, 30, 24}));
  auto c3 = named_group("C3");
  EXPECT_EQ(class_sizes(*c3), (std::multiset<std::size_t>{1, 1, 1}));
  auto s3 = named_group("S3");
  EXPECT_EQ(class_sizes(*s3), (std::multiset<std::size_t>{1, 3, 2}));
  // deterministic order: identity, then by element order and size
  EXPECT_EQ(s5->classes()[0].size, 1u);
  for (std::size_t i = 1; i < s5->class_count(); ++i)
    EXPECT_LE(s5->classes()[i - 1].element_order, s5->classes()[i].element_order);
}

TEST(PermGroup, ClassInvariantsOverCatalog) {
  for (const auto& e : small_groups(60)) {
    auto g = build_group(e);
    ASSERT_EQ(g->order(), e.order) << e.name;
    EXPECT_EQ(g->class_count(), e.class_count) << e.name;
    std::size_t total = 0;
    for (const auto& c : g->classes()) {
      total += c.size;
      EXPECT_EQ(g->order() % c.size, 0u);
      // size * |centralizer| = |G|, centralizer counted directly
      std::size_t cent = 0;
      for (ElementId x = 0; x < g->order(); ++x)
        if (g->mul(x, c.representative) == g->mul(c.representative, x)) ++cent;
      EXPECT_EQ(cent * c.size, g->order());
    }
    EXPECT_EQ(total, g->order());
  }
}

TEST(PermGroup, PowerMaps) {
  auto s5 = named_group("S5");
  for (std::size_t c = 0; c < s5->class_count(); ++c) {
    auto rep = s5->classes()[c].representative;
    for (std::uint64_t j = 0; j < s5->exponent(); ++j) EXPECT_EQ(s5->power_class(c, j), s5->class_of(s5->power(rep, j)));
  }
}

TEST(Lattice, SmallExamples) {
  EXPECT_EQ(subgroups_up_to_conjugacy(named_group("S3")).classes.size(), 4u);
  EXPECT_EQ(subgroups_up_to_conjugacy(named_group("C4")).classes.size(), 3u);
  auto s4 = subgroups_up_to_conjugacy(named_group("S4"));
  EXPECT_TRUE(s4.complete);
  EXPECT_EQ(s4.classes.size(), 11u);
  EXPECT_EQ(s4.classes.front().order, 1u);
  EXPECT_EQ(s4.classes.back().order, 24u);
}

TEST(Lattice, MatchesSubsetBruteForceUpTo16) {
  for (const auto& e : small_groups(16)) {
    auto g = build_group(e);
    auto lat = subgroups_up_to_conjugacy(g);
    auto subs = subsets_closed(*g);
    EXPECT_EQ(lat.classes.size(), conjugacy_class_count(*g, subs)) << e.name;
  }
}

TEST(Lattice, MatchesFixedPointOracleUpTo48) {
  for (const auto& e : small_groups(48)) {
    auto g = build_group(e);
    auto lat = subgroups_up_to_conjugacy(g);
    ASSERT_TRUE(lat.complete);
    auto subs = all_subgroups_fixed_point(g);
    EXPECT_EQ(lat.classes.size(), conjugacy_class_count(*g, subs)) << e.name;
    EXPECT_EQ(lat.classes.size(), e.subgroup_class_count) << e.name;
    std::size_t total = 0;
    for (const auto& h : lat.classes) {
      EXPECT_EQ(g->order() % h.order, 0u);
      total += h.conjugate_count;
      // normality flag against conjugation by every element
      bool normal = true;
      for (ElementId x = 0; x < g->order() && normal; ++x)
        for (auto y : h.element_ids)
          if (!h.contains(g->conjugate(y, x))) {
            normal = false;
            break;
          }
      EXPECT_EQ(h.is_normal, normal);
    }
    EXPECT_EQ(total, subs.size()) << e.name;
  }
}

TEST(Lattice, TransitiveGroupsMatchCatalogCounts) {
  for (const auto& e : transitive_groups(6)) {
    if (e.order > 120) continue;
    auto lat = subgroups_up_to_conjugacy(build_group(e));
    EXPECT_EQ(lat.classes.size(), e.subgroup_class_count) << e.name;
  }
}

TEST(Lattice, BudgetGivesPartial) {
  auto lat = subgroups_up_to_conjugacy(named_group("S4"), 1);
  EXPECT_FALSE(lat.complete);
  EXPECT_LT(lat.classes.size(), 11u);
}

TEST(Normal, MinimalNormalSubgroups) {
  auto s4 = minimal_normal_subgroups(named_group("S4"));
  ASSERT_TRUE(s4.unique_minimal.has_value());
  EXPECT_EQ(s4.unique_minimal->order, 4u);
  auto s5 = minimal_normal_subgroups(named_group("S5"));
  ASSERT_TRUE(s5.unique_minimal.has_value());
  EXPECT_EQ(s5.unique_minimal->order, 60u);
  auto c6 = minimal_normal_subgroups(named_group("C6"));
  EXPECT_FALSE(c6.unique_minimal.has_value());
  ASSERT_EQ(c6.minimal.size(), 2u);
  EXPECT_EQ(c6.minimal[0].order, 2u);
  EXPECT_EQ(c6.minimal[1].order, 3u);
}

TEST(Normal, NormalSubgroupsAgreeWithLattice) {
  for (const auto& e : small_groups(32)) {
    auto g = build_group(e);
    auto normals = normal_subgroups(g);
    auto lat = subgroups_up_to_conjugacy(g);
    std::size_t normal_classes = 0;
    for (const auto& h : lat.classes) normal_classes += h.is_normal;
    EXPECT_EQ(normals.size(), normal_classes) << e.name;
  }
}

TEST(Normal, StabilizerIndexPrimeDegree) {
  auto s5 = named_group("S5");
  EXPECT_TRUE(stabilizer_index_check(s5, even_subgroup(s5)));
  auto d5 = named_group("D5");
  EXPECT_EQ(d5->order(), 10u);
  EXPECT_TRUE(stabilizer_index_check(d5, *minimal_normal_subgroups(d5).unique_minimal));
  auto c7 = named_group("C7");
  EXPECT_TRUE(stabilizer_index_check(c7, whole_group(c7)));
  try {
    stabilizer_index_check(named_group("S4"), even_subgroup(named_group("S4")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPrimeDegree);
  }
}

TEST(Normal, PrimeDegreeTransitiveGroupsHaveUniqueMinimalNormal) {
  for (const auto& e : transitive_groups(7)) {
    if (e.degree != 5 && e.degree != 7) continue;
    if (e.order > 2520) continue;
    auto g = build_group(e);
    auto mn = minimal_normal_subgroups(g);
    ASSERT_TRUE(mn.unique_minimal.has_value()) << e.name;
    EXPECT_TRUE(stabilizer_index_check(g, *mn.unique_minimal)) << e.name;
  }
}

TEST(Quotient, ClassMaps) {
  auto s5 = named_group("S5");
  auto q = quotient_class_map(s5, even_subgroup(s5));
  EXPECT_EQ(q.quotient_sizes.size(), 2u);
  for (std::size_t c = 0; c < s5->class_count(); ++c) {
    std::size_t t = 0;
    for (int len : s5->element(s5->classes()[c].representative).cycle_type()) t += static_cast<std::size_t>(len - 1);
    EXPECT_EQ(q.to_quotient[c] == q.to_quotient[0], t % 2 == 0);
  }
  auto all = quotient_class_map(s5, whole_group(s5));
  EXPECT_EQ(all.quotient_sizes, (std::vector<std::uint64_t>{1}));

  auto s4 = named_group("S4");
  auto mn = minimal_normal_subgroups(s4);
  auto v4 = quotient_class_map(s4, *mn.unique_minimal);
  EXPECT_EQ(v4.quotient_sizes.size(), 3u);
  std::multiset<std::uint64_t> sizes(v4.quotient_sizes.begin(), v4.quotient_sizes.end());
  EXPECT_EQ(sizes, (std::multiset<std::uint64_t>{1, 3, 2}));
  // fibre sizes are |N| times the quotient class size
  std::vector<std::uint64_t> fibre(3, 0);
  for (std::size_t c = 0; c < s4->class_count(); ++c) fibre[v4.to_quotient[c]] += s4->classes()[c].size;
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(fibre[k], 4 * v4.quotient_sizes[k]);
}

TEST(Subgroups, DerivedAndSolvable) {
  auto s4 = named_group("S4");
  EXPECT_EQ(derived_subgroup(s4, whole_group(s4)).order, 12u);
  EXPECT_TRUE(is_solvable(s4, whole_group(s4)));
  auto a5 = named_group("A5");
  EXPECT_EQ(derived_subgroup(a5, whole_group(a5)).order, 60u);
  EXPECT_FALSE(is_solvable(a5, whole_group(a5)));
}

TEST(Catalog, Aliases) {
  EXPECT_EQ(named_group("S6")->order(), 720u);
  EXPECT_EQ(named_group("A6")->order(), 360u);
  EXPECT_EQ(named_group("C1")->order(), 1u);
  EXPECT_EQ(named_group("D4")->order(), 8u);
  EXPECT_EQ(named_group("small:8:3")->order(), 8u);
  EXPECT_EQ(named_group("transitive:5:5")->order(), 120u);
  EXPECT_THROW(named_group("Q8"), Error);
}
