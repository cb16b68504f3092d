#pragma once

// Foundational value types: colors, nodes of the m-adic tree, the incidence
// function between nodes, and gap functions m x m -> n u {inf}.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "gapbasis/error.hpp"

namespace gapbasis {

/// A color of a gap function: a finite index in {0,...,n-1} or the symbol inf.
/// inf compares greater than every finite color.
class Color {
 public:
  constexpr Color() = default;
  constexpr explicit Color(int value) : value_(value) {}

  static constexpr Color inf() { return Color(kInfValue); }

  constexpr bool is_inf() const { return value_ == kInfValue; }
  constexpr bool is_finite() const { return value_ != kInfValue; }
  constexpr int value() const { return value_; }

  constexpr auto operator<=>(const Color&) const = default;

 private:
  static constexpr int kInfValue = std::numeric_limits<int>::max();
  int value_ = 0;
};

inline constexpr Color kInf = Color::inf();

std::ostream& operator<<(std::ostream& os, Color c);
std::string to_string(Color c);

/// An ordered pair of directions, as returned by inc and by reduction maps.
struct DirectionPair {
  int first = 0;
  int second = 0;

  constexpr DirectionPair swapped() const { return {second, first}; }
  constexpr bool is_diagonal() const { return first == second; }
  constexpr auto operator<=>(const DirectionPair&) const = default;
};

std::ostream& operator<<(std::ostream& os, DirectionPair p);

/// A finite sequence of directions, i.e. a node of m^{<omega}.
class TreeNode {
 public:
  TreeNode() = default;
  TreeNode(std::initializer_list<int> letters) : letters_(letters) {}
  explicit TreeNode(std::vector<int> letters) : letters_(std::move(letters)) {}

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  std::span<const int> letters() const { return letters_; }

  /// Largest letter plus one, or 0 for the root.
  int alphabet_bound() const;

  bool is_prefix_of(const TreeNode& other) const;
  /// True when this node is a proper prefix of `other`.
  bool is_strict_prefix_of(const TreeNode& other) const {
    return size() < other.size() && is_prefix_of(other);
  }

  TreeNode appended(int letter) const;
  TreeNode concatenated(const TreeNode& tail) const;
  TreeNode prefix(std::size_t length) const;
  void push_back(int letter) { letters_.push_back(letter); }
  void append(const TreeNode& tail);

  auto operator<=>(const TreeNode&) const = default;
  bool operator==(const TreeNode&) const = default;

 private:
  std::vector<int> letters_;
};

std::ostream& operator<<(std::ostream& os, const TreeNode& node);

/// Orders nodes by length first, then lexicographically.
struct ShortlexLess {
  bool operator()(const TreeNode& a, const TreeNode& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

/// Longest common prefix.
TreeNode meet(const TreeNode& s, const TreeNode& t);

/// First divergent directions of two distinct nodes. When one node extends
/// the other by direction u the result is (u,u) in either argument order.
/// Throws EqualNodes when s == t.
DirectionPair inc(const TreeNode& s, const TreeNode& t);

/// A total color table f : m x m -> n u {inf}. Row index is the first argument.
class GapFunction {
 public:
  /// `cells` is row-major of size m*m; every finite cell must be < n.
  GapFunction(int m, int n, std::vector<Color> cells);

  static GapFunction from_rows(int n, const std::vector<std::vector<Color>>& rows);

  int m() const { return m_; }
  int n() const { return n_; }

  Color at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * m_ + j]; }
  Color at(DirectionPair p) const { return at(p.first, p.second); }
  std::span<const Color> cells() const { return cells_; }

  bool operator==(const GapFunction&) const = default;

 private:
  int m_;
  int n_;
  std::vector<Color> cells_;
};

std::ostream& operator<<(std::ostream& os, const GapFunction& f);

struct GapValidity {
  bool total = false;
  bool n_gap = false;
  std::vector<int> missing_colors;
};

GapValidity validate_gap_function(const GapFunction& f);

inline bool is_n_gap(const GapFunction& f) { return validate_gap_function(f).n_gap; }

/// Throws NotAnNGap unless every color < n occurs in f.
void require_n_gap(const GapFunction& f, std::string_view what);

/// A permutation of {0,...,n-1}, stored as images: pi[c] is the image of c.
using ColorPermutation = std::vector<int>;

/// Throws BadPermutation unless `pi` is a bijection of {0,...,n-1}.
void require_permutation(const ColorPermutation& pi, int n);
ColorPermutation identity_permutation(int n);
ColorPermutation inverse(const ColorPermutation& pi);
/// (outer o inner)(c) = outer[inner[c]].
ColorPermutation compose(const ColorPermutation& outer, const ColorPermutation& inner);
/// All n! permutations in lexicographic order.
std::vector<ColorPermutation> all_permutations(int n);

/// Image of a color; inf is fixed.
inline Color permute_color(const ColorPermutation& pi, Color c) {
  return c.is_inf() ? c : Color(pi[static_cast<std::size_t>(c.value())]);
}

GapFunction apply_color_permutation(const ColorPermutation& pi, const GapFunction& f);

}  // namespace gapbasis
