#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "restind/error.hpp"
#include "restind/permutation.hpp"

namespace restind {

using ElementId = std::uint32_t;

inline constexpr std::size_t kDefaultOrderCap = 10'000;
// Groups up to this order get a full Cayley table.
inline constexpr std::size_t kCayleyTableLimit = 2'048;

struct ConjugacyClass {
  std::size_t class_id = 0;
  ElementId representative = 0;  // smallest element id in the class
  std::size_t size = 0;
  std::uint64_t element_order = 1;
  std::vector<ElementId> member_ids;  // sorted
};

/// A finite permutation group with its elements enumerated by breadth-first
/// closure from the generators. Everything is computed in the constructor; the
/// object is immutable afterwards and safe to share between threads.
///
/// Element 0 is always the identity. Conjugacy classes are sorted by
/// (order of representative, class size, smallest member id).
class PermGroup {
public:
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            std::size_t order_cap = kDefaultOrderCap)
      : degree_(degree) {
    if (degree == 0) fail(ErrorCode::ParseError, "degree must be positive");
    for (auto& g : generators) {
      if (g.degree() != degree) fail(ErrorCode::ParseError, "generator degree mismatch");
      if (!g.is_identity()) generators_.push_back(std::move(g));
    }
    enumerate(order_cap);
    build_inverses_and_orders();
    build_classes();
    build_power_maps();
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  const std::vector<ElementId>& generator_ids() const noexcept { return generator_ids_; }
  const Permutation& element(ElementId id) const { return elements_.at(id); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }

  ElementId id_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) fail(ErrorCode::NotSubgroup, "permutation " + p.to_cycle_string() + " not in group");
    return it->second;
  }
  bool contains(const Permutation& p) const { return index_.count(p) != 0; }

  ElementId mul(ElementId a, ElementId b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return index_.at(elements_[a] * elements_[b]);
  }
  ElementId inverse(ElementId a) const { return inverses_[a]; }
  /// g^-1 x g
  ElementId conjugate(ElementId x, ElementId g) const { return mul(mul(inverses_[g], x), g); }
  ElementId power(ElementId a, std::uint64_t k) const {
    ElementId r = 0, base = a;
    while (k) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }
  std::uint64_t element_order(ElementId a) const { return orders_[a]; }
  std::uint64_t exponent() const noexcept { return exponent_; }

  const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
  std::size_t class_count() const noexcept { return classes_.size(); }
  std::size_t class_of(ElementId a) const { return class_of_[a]; }
  /// Class of rep(c)^j for 0 <= j < exponent.
  std::size_t power_class(std::size_t c, std::uint64_t j) const {
    return power_map_[c][static_cast<std::size_t>(j % exponent_)];
  }
  std::size_t inverse_class(std::size_t c) const { return power_class(c, exponent_ - 1); }
  std::uint64_t centralizer_order(std::size_t c) const { return order() / classes_[c].size; }

  bool is_abelian() const {
    for (auto a : generator_ids_)
      for (auto b : generator_ids_)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  bool is_transitive() const {
    std::vector<bool> seen(degree_, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      auto p = stack.back();
      stack.pop_back();
      for (const auto& g : generators_) {
        auto q = g[p];
        if (!seen[q]) {
          seen[q] = true;
          ++count;
          stack.push_back(q);
        }
      }
    }
    return count == degree_;
  }

  /// Text form "(..),(..)" of the generators used as the canonical serialization key.
  std::string generator_string() const {
    std::string s;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (i) s += ',';
      s += generators_[i].to_cycle_string();
    }
    return s.empty() ? "()" : s;
  }

private:
  void enumerate(std::size_t cap) {
    Permutation id(degree_);
    elements_.push_back(id);
    index_.emplace(id, 0);
    for (std::size_t head = 0; head < elements_.size(); ++head) {
      for (const auto& g : generators_) {
        Permutation next = elements_[head] * g;
        if (index_.find(next) == index_.end()) {
          if (elements_.size() >= cap)
            fail(ErrorCode::CapExceeded, "group order exceeds cap " + std::to_string(cap));
          index_.emplace(next, static_cast<ElementId>(elements_.size()));
          elements_.push_back(std::move(next));
        }
      }
    }
    for (const auto& g : generators_) generator_ids_.push_back(index_.at(g));
    if (order() <= kCayleyTableLimit) {
      table_.resize(order() * order());
      for (std::size_t a = 0; a < order(); ++a)
        for (std::size_t b = 0; b < order(); ++b)
          table_[a * order() + b] = index_.at(elements_[a] * elements_[b]);
    }
  }

  void build_inverses_and_orders() {
    inverses_.resize(order());
    orders_.resize(order());
    exponent_ = 1;
    for (std::size_t a = 0; a < order(); ++a) {
      inverses_[a] = index_.at(elements_[a].inverse());
      orders_[a] = elements_[a].order();
      exponent_ = std::lcm(exponent_, orders_[a]);
    }
  }

  void build_classes() {
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::vector<std::size_t> raw_class(order(), kNone);
    std::vector<std::vector<ElementId>> raw;
    for (ElementId a = 0; a < order(); ++a) {
      if (raw_class[a] != kNone) continue;
      std::vector<ElementId> members{a};
      raw_class[a] = raw.size();
      for (std::size_t head = 0; head < members.size(); ++head)
        for (auto g : generator_ids_) {
          ElementId c = conjugate(members[head], g);
          if (raw_class[c] == kNone) {
            raw_class[c] = raw.size();
            members.push_back(c);
          }
        }
      std::sort(members.begin(), members.end());
      raw.push_back(std::move(members));
    }
    std::vector<std::size_t> perm(raw.size());
    std::iota(perm.begin(), perm.end(), 0);
    auto key = [&](std::size_t i) { return std::tuple(orders_[raw[i][0]], raw[i].size(), raw[i][0]); };
    std::sort(perm.begin(), perm.end(), [&](auto x, auto y) { return key(x) < key(y); });
    class_of_.assign(order(), 0);
    for (std::size_t c = 0; c < perm.size(); ++c) {
      ConjugacyClass cc;
      cc.class_id = c;
      cc.member_ids = std::move(raw[perm[c]]);
      cc.representative = cc.member_ids.front();
      cc.size = cc.member_ids.size();
      cc.element_order = orders_[cc.representative];
      for (auto m : cc.member_ids) class_of_[m] = c;
      classes_.push_back(std::move(cc));
    }
  }

  void build_power_maps() {
    power_map_.assign(classes_.size(), std::vector<std::size_t>(exponent_));
    for (std::size_t c = 0; c < classes_.size(); ++c) {
      ElementId g = classes_[c].representative;
      ElementId x = 0;
      for (std::uint64_t j = 0; j < exponent_; ++j) {
        power_map_[c][j] = class_of_[x];
        x = mul(x, g);
      }
    }
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<ElementId> generator_ids_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementId, PermutationHash> index_;
  std::vector<ElementId> table_;
  std::vector<ElementId> inverses_;
  std::vector<std::uint64_t> orders_;
  std::uint64_t exponent_ = 1;
  std::vector<ConjugacyClass> classes_;
  std::vector<std::size_t> class_of_;
  std::vector<std::vector<std::size_t>> power_map_;
};

using GroupPtr = std::shared_ptr<const PermGroup>;

inline GroupPtr make_group(std::size_t degree, std::vector<Permutation> gens,
                           std::size_t order_cap = kDefaultOrderCap) {
  return std::make_shared<const PermGroup>(degree, std::move(gens), order_cap);
}

/// Builds a group from cycle-notation generator strings, e.g. {"(1,2)", "(1,2,3,4,5)"}.
/// Each string may itself hold several generators separated by commas.
inline GroupPtr group_from_generators(std::size_t degree, const std::vector<std::string>& gens,
                                      std::size_t order_cap = kDefaultOrderCap) {
  std::vector<Permutation> perms;
  for (const auto& s : gens)
    for (const auto& g : split_generators(s)) perms.push_back(parse_cycles(g, degree));
  return make_group(degree, std::move(perms), order_cap);
}

inline GroupPtr group_from_generators(std::size_t degree, const std::string& gens,
                                      std::size_t order_cap = kDefaultOrderCap) {
  return group_from_generators(degree, std::vector<std::string>{gens}, order_cap);
}

}  // namespace restind
