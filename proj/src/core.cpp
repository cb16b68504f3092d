#include "gapbasis/core.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace gapbasis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EqualNodes: return "EqualNodes";
    case ErrorCode::BadPermutation: return "BadPermutation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotAnNGap: return "NotAnNGap";
    case ErrorCode::PsiDomain: return "PsiDomain";
    case ErrorCode::InvalidType: return "InvalidType";
    case ErrorCode::InvalidReduction: return "InvalidReduction";
    case ErrorCode::InvalidGapFunction: return "InvalidGapFunction";
    case ErrorCode::Condition1Violated: return "Condition1Violated";
    case ErrorCode::TraceMismatch: return "TraceMismatch";
    case ErrorCode::TooSmallN: return "TooSmallN";
    case ErrorCode::BadDirection: return "BadDirection";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::BadAlphabet: return "BadAlphabet";
    case ErrorCode::CorruptCache: return "CorruptCache";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::ostream& operator<<(std::ostream& os, Color c) {
  if (c.is_inf()) return os << "inf";
  return os << c.value();
}

std::string to_string(Color c) {
  return c.is_inf() ? std::string("inf") : std::to_string(c.value());
}

std::ostream& operator<<(std::ostream& os, DirectionPair p) {
  return os << '(' << p.first << ',' << p.second << ')';
}

int TreeNode::alphabet_bound() const {
  int bound = 0;
  for (int letter : letters_) bound = std::max(bound, letter + 1);
  return bound;
}

bool TreeNode::is_prefix_of(const TreeNode& other) const {
  if (size() > other.size()) return false;
  return std::equal(letters_.begin(), letters_.end(), other.letters_.begin());
}

TreeNode TreeNode::appended(int letter) const {
  TreeNode out = *this;
  out.letters_.push_back(letter);
  return out;
}

TreeNode TreeNode::concatenated(const TreeNode& tail) const {
  TreeNode out = *this;
  out.append(tail);
  return out;
}

TreeNode TreeNode::prefix(std::size_t length) const {
  length = std::min(length, size());
  return TreeNode(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(length)));
}

void TreeNode::append(const TreeNode& tail) {
  letters_.insert(letters_.end(), tail.letters_.begin(), tail.letters_.end());
}

std::ostream& operator<<(std::ostream& os, const TreeNode& node) {
  os << '(';
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) os << ',';
    os << node[i];
  }
  return os << ')';
}

TreeNode meet(const TreeNode& s, const TreeNode& t) {
  std::size_t len = 0;
  const std::size_t bound = std::min(s.size(), t.size());
  while (len < bound && s[len] == t[len]) ++len;
  return s.prefix(len);
}

DirectionPair inc(const TreeNode& s, const TreeNode& t) {
  std::size_t len = 0;
  const std::size_t bound = std::min(s.size(), t.size());
  while (len < bound && s[len] == t[len]) ++len;
  if (len == s.size() && len == t.size()) {
    std::ostringstream msg;
    msg << "inc is undefined on equal nodes " << s;
    throw GapError(ErrorCode::EqualNodes, msg.str());
  }
  if (len == s.size()) return {t[len], t[len]};
  if (len == t.size()) return {s[len], s[len]};
  return {s[len], t[len]};
}

GapFunction::GapFunction(int m, int n, std::vector<Color> cells) : m_(m), n_(n), cells_(std::move(cells)) {
  if (m < 1 || n < 1) {
    throw GapError(ErrorCode::InvalidGapFunction, "m and n must be at least 1");
  }
  if (cells_.size() != static_cast<std::size_t>(m) * static_cast<std::size_t>(m)) {
    throw GapError(ErrorCode::InvalidGapFunction, "table is not m x m");
  }
  for (Color c : cells_) {
    if (c.is_finite() && (c.value() < 0 || c.value() >= n)) {
      throw GapError(ErrorCode::InvalidGapFunction, "color " + to_string(c) + " out of range for n=" + std::to_string(n));
    }
  }
}

GapFunction GapFunction::from_rows(int n, const std::vector<std::vector<Color>>& rows) {
  const int m = static_cast<int>(rows.size());
  std::vector<Color> cells;
  cells.reserve(rows.size() * rows.size());
  for (const auto& row : rows) {
    if (row.size() != rows.size()) {
      throw GapError(ErrorCode::InvalidGapFunction, "row length differs from row count");
    }
    cells.insert(cells.end(), row.begin(), row.end());
  }
  return GapFunction(m, n, std::move(cells));
}

std::ostream& operator<<(std::ostream& os, const GapFunction& f) {
  os << '[';
  for (int i = 0; i < f.m(); ++i) {
    if (i) os << ',';
    os << '[';
    for (int j = 0; j < f.m(); ++j) {
      if (j) os << ',';
      os << f.at(i, j);
    }
    os << ']';
  }
  return os << ']';
}

GapValidity validate_gap_function(const GapFunction& f) {
  GapValidity report;
  report.total = f.cells().size() == static_cast<std::size_t>(f.m()) * f.m();
  std::vector<bool> seen(static_cast<std::size_t>(f.n()), false);
  for (Color c : f.cells()) {
    if (c.is_finite()) seen[static_cast<std::size_t>(c.value())] = true;
  }
  for (int c = 0; c < f.n(); ++c) {
    if (!seen[static_cast<std::size_t>(c)]) report.missing_colors.push_back(c);
  }
  report.n_gap = report.total && report.missing_colors.empty();
  return report;
}

void require_n_gap(const GapFunction& f, std::string_view what) {
  const auto report = validate_gap_function(f);
  if (!report.n_gap) {
    std::ostringstream msg;
    msg << what << " misses color";
    for (int c : report.missing_colors) msg << ' ' << c;
    throw GapError(ErrorCode::NotAnNGap, msg.str());
  }
}

void require_permutation(const ColorPermutation& pi, int n) {
  if (pi.size() != static_cast<std::size_t>(n)) {
    throw GapError(ErrorCode::BadPermutation, "permutation has wrong length");
  }
  std::vector<bool> hit(pi.size(), false);
  for (int image : pi) {
    if (image < 0 || image >= n || hit[static_cast<std::size_t>(image)]) {
      throw GapError(ErrorCode::BadPermutation, "not a bijection of n");
    }
    hit[static_cast<std::size_t>(image)] = true;
  }
}

ColorPermutation identity_permutation(int n) {
  ColorPermutation pi(static_cast<std::size_t>(n));
  std::iota(pi.begin(), pi.end(), 0);
  return pi;
}

ColorPermutation inverse(const ColorPermutation& pi) {
  ColorPermutation inv(pi.size());
  for (std::size_t c = 0; c < pi.size(); ++c) inv[static_cast<std::size_t>(pi[c])] = static_cast<int>(c);
  return inv;
}

ColorPermutation compose(const ColorPermutation& outer, const ColorPermutation& inner) {
  ColorPermutation out(inner.size());
  for (std::size_t c = 0; c < inner.size(); ++c) out[c] = outer[static_cast<std::size_t>(inner[c])];
  return out;
}

std::vector<ColorPermutation> all_permutations(int n) {
  std::vector<ColorPermutation> out;
  ColorPermutation pi = identity_permutation(n);
  do {
    out.push_back(pi);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

GapFunction apply_color_permutation(const ColorPermutation& pi, const GapFunction& f) {
  require_permutation(pi, f.n());
  std::vector<Color> cells;
  cells.reserve(f.cells().size());
  for (Color c : f.cells()) cells.push_back(permute_color(pi, c));
  return GapFunction(f.m(), f.n(), std::move(cells));
}

}  // namespace gapbasis
