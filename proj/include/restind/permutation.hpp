#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "restind/error.hpp"

namespace restind {

/// A bijection of {0,...,n-1}. Products act left to right: (a * b)(i) = b(a(i)),
/// matching the usual cycle-notation convention where "(1,2)(2,3)" applies (1,2) first.
class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), 0u);
  }

  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (auto v : images_) {
      if (v >= images_.size() || seen[v]) fail(ErrorCode::ParseError, "images do not form a bijection");
      seen[v] = true;
    }
  }

  std::size_t degree() const noexcept { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    ensure(a.degree() == b.degree(), "permutation degree mismatch");
    Permutation r;
    r.images_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) r.images_[i] = b.images_[a.images_[i]];
    return r;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) r.images_[images_[i]] = static_cast<std::uint32_t>(i);
    return r;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

  /// Cycle lengths in non-increasing order, fixed points included.
  std::vector<int> cycle_type() const {
    std::vector<int> lengths;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      lengths.push_back(len);
    }
    std::sort(lengths.rbegin(), lengths.rend());
    return lengths;
  }

  std::size_t orbit_count() const { return cycle_type().size(); }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (int len : cycle_type()) o = std::lcm(o, static_cast<std::uint64_t>(len));
    return o;
  }

  /// 1-based disjoint-cycle notation, "()" for the identity.
  std::string to_cycle_string() const {
    std::string out;
    std::vector<bool> seen(degree(), false);
    for (std::size_t i = 0; i < degree(); ++i) {
      if (seen[i] || images_[i] == i) continue;
      out += '(';
      bool first = true;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        if (!first) out += ',';
        out += std::to_string(j + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

private:
  std::vector<std::uint32_t> images_;
};

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p.images()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

namespace detail {

inline void skip_space(std::string_view s, std::size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

}  // namespace detail

/// Parses one permutation written as a product of cycles, e.g. "(1,2)(3,4,5)".
/// Cycles are applied left to right, so non-disjoint products are allowed.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  Permutation result(degree);
  std::size_t i = 0;
  detail::skip_space(text, i);
  if (i == text.size()) fail(ErrorCode::ParseError, "empty permutation");
  while (i < text.size()) {
    if (text[i] != '(') fail(ErrorCode::ParseError, "expected '(' in '" + std::string(text) + "'");
    ++i;
    std::vector<std::uint32_t> cycle;
    detail::skip_space(text, i);
    while (i < text.size() && text[i] != ')') {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail(ErrorCode::ParseError, "expected a point in '" + std::string(text) + "'");
      std::uint64_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(text[i] - '0');
        if (v > 1'000'000) fail(ErrorCode::ParseError, "point out of range");
        ++i;
      }
      if (v == 0 || v > degree)
        fail(ErrorCode::ParseError, "point " + std::to_string(v) + " outside 1.." + std::to_string(degree));
      cycle.push_back(static_cast<std::uint32_t>(v - 1));
      detail::skip_space(text, i);
      if (i < text.size() && text[i] == ',') {
        ++i;
        detail::skip_space(text, i);
        if (i < text.size() && text[i] == ')') fail(ErrorCode::ParseError, "trailing comma in cycle");
      } else if (i < text.size() && text[i] != ')') {
        fail(ErrorCode::ParseError, "expected ',' or ')' in '" + std::string(text) + "'");
      }
    }
    if (i == text.size()) fail(ErrorCode::ParseError, "unterminated cycle in '" + std::string(text) + "'");
    ++i;  // ')'
    std::vector<std::uint32_t> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorCode::ParseError, "repeated point inside a cycle");
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t k = 0; k < cycle.size(); ++k) img[cycle[k]] = cycle[(k + 1) % cycle.size()];
    result = result * Permutation(std::move(img));
    detail::skip_space(text, i);
  }
  return result;
}

/// Splits a generator list such as "(1,2),(1,2,3,4,5)" or "(1,2) (3,4)(5,6)" into
/// generator strings. Commas or whitespace between cycles separate generators;
/// juxtaposed cycles ")(" belong to the same generator.
inline std::vector<std::string> split_generators(std::string_view text) {
  std::vector<std::string> gens;
  std::string current;
  int depth = 0;
  bool separator_pending = false;
  for (char c : text) {
    if (c == '(') {
      if (depth != 0) fail(ErrorCode::ParseError, "nested parentheses");
      if (separator_pending && !current.empty()) {
        gens.push_back(current);
        current.clear();
      }
      separator_pending = false;
      depth = 1;
      current += c;
    } else if (c == ')') {
      if (depth != 1) fail(ErrorCode::ParseError, "unbalanced ')'");
      depth = 0;
      current += c;
    } else if (depth == 0) {
      if (c == ',' || c == ';' || std::isspace(static_cast<unsigned char>(c))) {
        separator_pending = true;
      } else {
        fail(ErrorCode::ParseError, std::string("unexpected character '") + c + "' between cycles");
      }
    } else {
      current += c;
    }
  }
  if (depth != 0) fail(ErrorCode::ParseError, "unterminated cycle");
  if (!current.empty()) gens.push_back(current);
  return gens;
}

}  // namespace restind
