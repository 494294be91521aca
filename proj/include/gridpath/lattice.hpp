#pragma once

// Monotone grid paths as words over {D, R}, their statistics, swaps, and an
// exhaustive enumerator with prefix partitioning for parallel sweeps.
//
// Conventions used throughout:
//   * A path on the m x n grid starts at the upper-left node (0,0) and ends
//     at the lower-right node (m,n); D moves down, R moves right.
//   * Word positions are 1-based in the math; steps() exposes the raw
//     0-based string.
//   * Gap g (0 <= g <= m+n) sits between letters g and g+1; gap 0 precedes
//     the word and gap m+n follows it. A true corner is a gap g with letter
//     g = R and letter g+1 = D.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gridpath/qpoly.hpp"

namespace gridpath {

inline constexpr int kDefaultEnumLimit = 24;

namespace detail {
struct PathAccess;
}

class PathWord {
 public:
  PathWord(int m, int n, std::string steps)
      : m_(m), n_(n), steps_(std::move(steps)) {
    if (m < 0 || n < 0) {
      throw std::invalid_argument("PathWord: negative grid dimension");
    }
    int d = 0, r = 0;
    for (char c : steps_) {
      if (c == 'D') {
        ++d;
      } else if (c == 'R') {
        ++r;
      } else {
        throw std::invalid_argument(
            "PathWord: steps must use only 'D' and 'R', got '" +
            std::string(1, c) + "'");
      }
    }
    if (d != m || r != n) {
      throw std::invalid_argument("PathWord: step counts do not match grid (" +
                                  std::to_string(d) + " D's, " +
                                  std::to_string(r) + " R's for " +
                                  std::to_string(m) + "x" + std::to_string(n) +
                                  ")");
    }
  }

  /// Build from a bare word, inferring the grid dimensions.
  static PathWord parse(std::string_view text) {
    int d = 0, r = 0;
    for (char c : text) {
      if (c == 'D') {
        ++d;
      } else if (c == 'R') {
        ++r;
      } else {
        throw std::invalid_argument(
            "PathWord: steps must use only 'D' and 'R', got '" +
            std::string(1, c) + "'");
      }
    }
    return PathWord(d, r, std::string(text));
  }

  int m() const { return m_; }
  int n() const { return n_; }
  int length() const { return m_ + n_; }
  const std::string& steps() const { return steps_; }

  bool operator==(const PathWord& rhs) const = default;

 private:
  friend struct detail::PathAccess;
  struct unchecked_t {};
  PathWord(unchecked_t, int m, int n, std::string steps)
      : m_(m), n_(n), steps_(std::move(steps)) {}

  int m_ = 0;
  int n_ = 0;
  std::string steps_;
};

namespace detail {
struct PathAccess {
  static PathWord make(int m, int n, std::string steps) {
    return PathWord(PathWord::unchecked_t{}, m, n, std::move(steps));
  }
  static std::string& steps(PathWord& w) { return w.steps_; }
};
}  // namespace detail

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

/// Sum of the 1-based positions holding a D.
inline int dees(const PathWord& w) {
  int sum = 0;
  const std::string& s = w.steps();
  for (int i = 0; i < static_cast<int>(s.size()); ++i) {
    if (s[i] == 'D') sum += i + 1;
  }
  return sum;
}

/// Unit squares of the grid below the path: each R contributes the number of
/// D's that occur after it.
inline int area(const PathWord& w) {
  int seen_d = 0, a = 0;
  for (char c : w.steps()) {
    if (c == 'D') {
      ++seen_d;
    } else {
      a += w.m() - seen_d;
    }
  }
  return a;
}

/// Number of adjacent RD pairs.
inline int corners(const PathWord& w) {
  int count = 0;
  const std::string& s = w.steps();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == 'R' && s[i + 1] == 'D') ++count;
  }
  return count;
}

/// Sum of the gap indices of all corners.
inline int cindex(const PathWord& w) {
  int sum = 0;
  const std::string& s = w.steps();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] == 'R' && s[i + 1] == 'D') sum += static_cast<int>(i) + 1;
  }
  return sum;
}

/// Side of the largest square anchored at the grid's bottom-left corner that
/// fits entirely under the path. The k x k anchored square fits iff each of
/// the first k R's is preceded by at most m-k D's.
inline int square_side(const PathWord& w) {
  int best = 0, before_d = 0, r_index = 0, prefix_max = 0;
  for (char c : w.steps()) {
    if (c == 'D') {
      ++before_d;
    } else {
      ++r_index;
      prefix_max = std::max(prefix_max, before_d);
      if (prefix_max <= w.m() - r_index) best = r_index;
    }
  }
  return best;
}

/// Exchange the two letters around gap g (they must differ).
inline PathWord swap_at(const PathWord& w, int gap) {
  int len = w.length();
  if (gap < 1 || gap > len - 1) {
    throw std::invalid_argument("swap_at: gap " + std::to_string(gap) +
                                " out of range [1, " + std::to_string(len - 1) +
                                "]");
  }
  std::string s = w.steps();
  if (s[gap - 1] == s[gap]) {
    throw std::invalid_argument("swap_at: letters around gap " +
                                std::to_string(gap) + " are equal");
  }
  std::swap(s[gap - 1], s[gap]);
  return PathWord(w.m(), w.n(), std::move(s));
}

struct DescentResult {
  int steps = 0;
  PathWord terminal;
};

/// Repeatedly apply the leftmost DEES-decreasing swap (RD -> DR) until none
/// exists. The step count equals area(w); the terminal word is D...DR...R.
inline DescentResult descend_to_minimum(const PathWord& w) {
  std::string s = w.steps();
  int count = 0;
  while (true) {
    std::size_t i = 0;
    for (; i + 1 < s.size(); ++i) {
      if (s[i] == 'R' && s[i + 1] == 'D') break;
    }
    if (i + 1 >= s.size()) break;
    std::swap(s[i], s[i + 1]);
    ++count;
  }
  return DescentResult{count, PathWord(w.m(), w.n(), std::move(s))};
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

/// Exact number of paths, C(m+n, m).
inline Coeff path_count(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("path_count: negative size");
  Coeff num = 1;
  for (int i = 1; i <= m; ++i) {
    num = num * (n + i) / i;
  }
  return num;
}

inline void check_enumeration_size(int m, int n, int limit) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("enumerate: negative grid dimension");
  }
  if (m + n > limit) {
    throw std::invalid_argument(
        "enumerate: m+n = " + std::to_string(m + n) +
        " exceeds the enumeration limit " + std::to_string(limit) +
        " (C(" + std::to_string(m + n) + "," + std::to_string(m) + ") = " +
        path_count(m, n).str() + " words); raise the limit explicitly to run");
  }
}

/// Visit every completion of `prefix` in lexicographic order (D < R).
/// The visited PathWord reference is reused between calls.
template <class Fn>
void for_each_path_with_prefix(int m, int n, std::string_view prefix, Fn&& fn,
                               int limit = kDefaultEnumLimit) {
  check_enumeration_size(m, n, limit);
  int d = 0, r = 0;
  for (char c : prefix) {
    if (c == 'D') {
      ++d;
    } else if (c == 'R') {
      ++r;
    } else {
      throw std::invalid_argument("enumerate: bad prefix letter");
    }
  }
  if (d > m || r > n) {
    throw std::invalid_argument("enumerate: prefix does not fit the grid");
  }
  std::string buf(prefix);
  buf.append(static_cast<std::size_t>(m - d), 'D');
  buf.append(static_cast<std::size_t>(n - r), 'R');
  PathWord cursor = detail::PathAccess::make(m, n, std::move(buf));
  std::string& s = detail::PathAccess::steps(cursor);
  auto first = s.begin() + static_cast<std::ptrdiff_t>(prefix.size());
  do {
    fn(static_cast<const PathWord&>(cursor));
  } while (std::next_permutation(first, s.end()));
}

/// Visit every path of the m x n grid in lexicographic order (D < R), so
/// D...DR...R comes first and R...RD...D last.
template <class Fn>
void for_each_path(int m, int n, Fn&& fn, int limit = kDefaultEnumLimit) {
  for_each_path_with_prefix(m, n, std::string_view{}, std::forward<Fn>(fn),
                            limit);
}

inline std::vector<PathWord> enumerate_paths(int m, int n,
                                             int limit = kDefaultEnumLimit) {
  std::vector<PathWord> out;
  for_each_path(m, n, [&](const PathWord& w) { out.push_back(w); }, limit);
  return out;
}

/// Valid word prefixes that partition the enumeration into at least
/// `min_shards` pieces (unless the grid is too small), in lexicographic
/// order. Every path extends exactly one returned prefix.
inline std::vector<std::string> shard_prefixes(int m, int n, int min_shards) {
  std::vector<std::string> prefixes{std::string()};
  int depth = 0;
  while (static_cast<int>(prefixes.size()) < min_shards && depth < m + n) {
    std::vector<std::string> grown;
    grown.reserve(prefixes.size() * 2);
    for (const std::string& p : prefixes) {
      int d = static_cast<int>(std::count(p.begin(), p.end(), 'D'));
      int r = static_cast<int>(p.size()) - d;
      if (d < m) grown.push_back(p + 'D');
      if (r < n) grown.push_back(p + 'R');
    }
    prefixes = std::move(grown);
    ++depth;
  }
  return prefixes;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

/// Draw the path on its grid with +-| characters; path edges use '=' and '#'.
inline std::string render_ascii(const PathWord& w) {
  int m = w.m(), n = w.n();
  // Mark the edges the path uses.
  std::vector<std::vector<bool>> hpath(m + 1, std::vector<bool>(std::max(n, 1)));
  std::vector<std::vector<bool>> vpath(std::max(m, 1), std::vector<bool>(n + 1));
  int row = 0, col = 0;
  for (char c : w.steps()) {
    if (c == 'R') {
      hpath[row][col] = true;
      ++col;
    } else {
      vpath[row][col] = true;
      ++row;
    }
  }
  std::string out;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) {
      out += '+';
      if (j < n) out += hpath[i][j] ? "==" : "--";
    }
    out += '\n';
    if (i < m) {
      for (int j = 0; j <= n; ++j) {
        out += vpath[i][j] ? '#' : '|';
        if (j < n) out += "  ";
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace gridpath
