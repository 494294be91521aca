#pragma once

// Scramblers: ornament pairs (H, V) on the grid, the marked-gap computation
// that unifies true and virtual corners, the scrambled CORNERS / CINDEX
// statistics, and brute-force generating functions over all paths.
//
// A horizontal ornament h in H (0 <= h <= m-1) marks the gap immediately
// before the (h+1)-th D of a word; a vertical ornament v in V (1 <= v <= n)
// marks the gap immediately after the v-th R. True corner gaps are always
// marked. A gap marked several ways still counts once.

#include <atomic>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gridpath/lattice.hpp"
#include "gridpath/qpoly.hpp"

namespace gridpath {

class Scrambler {
 public:
  Scrambler() = default;

  Scrambler(std::vector<int> horizontal, std::vector<int> vertical)
      : h_(std::move(horizontal)), v_(std::move(vertical)) {
    normalize(h_, "H");
    normalize(v_, "V");
  }

  /// Parse the textual form "H=0,1;V=1,3" (empty sets written "H=;V=").
  static Scrambler parse(std::string_view text) {
    auto semi = text.find(';');
    if (semi == std::string_view::npos) {
      throw std::invalid_argument(
          "scrambler: expected \"H=...;V=...\", missing ';' in \"" +
          std::string(text) + "\"");
    }
    return Scrambler(parse_side(text.substr(0, semi), "H"),
                     parse_side(text.substr(semi + 1), "V"));
  }

  std::string str() const {
    std::string out = "H=";
    out += join(h_);
    out += ";V=";
    out += join(v_);
    return out;
  }

  const std::vector<int>& horizontal() const { return h_; }
  const std::vector<int>& vertical() const { return v_; }

  int d() const { return static_cast<int>(h_.size()); }
  int r() const { return static_cast<int>(v_.size()); }

  /// Ornament sum s.
  int ornament_sum() const {
    int s = 0;
    for (int h : h_) s += h;
    for (int v : v_) s += v;
    return s;
  }

  /// The difference Q = d - r.
  int difference() const { return d() - r(); }

  bool empty() const { return h_.empty() && v_.empty(); }

  bool contains_h(int h) const {
    return std::binary_search(h_.begin(), h_.end(), h);
  }
  bool contains_v(int v) const {
    return std::binary_search(v_.begin(), v_.end(), v);
  }

  void validate_for(int m, int n) const {
    for (int h : h_) {
      if (h < 0 || h > m - 1) {
        throw std::invalid_argument("scrambler: horizontal ornament " +
                                    std::to_string(h) + " outside [0, " +
                                    std::to_string(m - 1) + "] for an " +
                                    std::to_string(m) + "x" +
                                    std::to_string(n) + " grid");
      }
    }
    for (int v : v_) {
      if (v < 1 || v > n) {
        throw std::invalid_argument("scrambler: vertical ornament " +
                                    std::to_string(v) + " outside [1, " +
                                    std::to_string(n) + "] for an " +
                                    std::to_string(m) + "x" +
                                    std::to_string(n) + " grid");
      }
    }
  }

  /// Copy with horizontal ornament `h` moved down to h-1.
  Scrambler with_h_shifted_down(int h) const {
    Scrambler out = *this;
    replace(out.h_, h, h - 1, "H");
    return out;
  }

  /// Copy with vertical ornament `v` moved down to v-1.
  Scrambler with_v_shifted_down(int v) const {
    Scrambler out = *this;
    replace(out.v_, v, v - 1, "V");
    return out;
  }

  /// Copy with the ornament pair (0 in H, 1 in V) removed.
  Scrambler without_pair() const {
    Scrambler out = *this;
    erase(out.h_, 0, "H");
    erase(out.v_, 1, "V");
    return out;
  }

  bool operator==(const Scrambler& rhs) const = default;

 private:
  static void normalize(std::vector<int>& side, const char* name) {
    std::sort(side.begin(), side.end());
    if (std::adjacent_find(side.begin(), side.end()) != side.end()) {
      throw std::invalid_argument(std::string("scrambler: duplicate ornament in ") +
                                  name);
    }
  }

  static std::vector<int> parse_side(std::string_view part, std::string_view tag) {
    std::string expect = std::string(tag) + "=";
    if (part.substr(0, expect.size()) != expect) {
      throw std::invalid_argument("scrambler: expected \"" + expect +
                                  "...\" in \"" + std::string(part) + "\"");
    }
    std::vector<int> out;
    std::string_view rest = part.substr(expect.size());
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view item =
          comma == std::string_view::npos ? rest : rest.substr(0, comma);
      if (item.empty()) {
        throw std::invalid_argument("scrambler: empty entry in " +
                                    std::string(tag) + " list");
      }
      int value = 0;
      bool digits = false;
      for (char c : item) {
        if (c < '0' || c > '9') {
          throw std::invalid_argument("scrambler: bad integer \"" +
                                      std::string(item) + "\" in " +
                                      std::string(tag) + " list");
        }
        value = value * 10 + (c - '0');
        digits = true;
      }
      if (!digits) {
        throw std::invalid_argument("scrambler: bad entry in " +
                                    std::string(tag) + " list");
      }
      out.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
      if (rest.empty()) {
        throw std::invalid_argument("scrambler: trailing comma in " +
                                    std::string(tag) + " list");
      }
    }
    return out;
  }

  static std::string join(const std::vector<int>& side) {
    std::string out;
    for (std::size_t i = 0; i < side.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(side[i]);
    }
    return out;
  }

  static void replace(std::vector<int>& side, int from, int to, const char* name) {
    auto it = std::find(side.begin(), side.end(), from);
    if (it == side.end()) {
      throw std::invalid_argument(std::string("scrambler: ornament ") +
                                  std::to_string(from) + " not present in " +
                                  name);
    }
    *it = to;
    normalize(side, name);
  }

  static void erase(std::vector<int>& side, int value, const char* name) {
    auto it = std::find(side.begin(), side.end(), value);
    if (it == side.end()) {
      throw std::invalid_argument(std::string("scrambler: ornament ") +
                                  std::to_string(value) + " not present in " +
                                  name);
    }
    side.erase(it);
  }

  std::vector<int> h_;
  std::vector<int> v_;
};

// ---------------------------------------------------------------------------
// Marked gaps and scrambled statistics
// ---------------------------------------------------------------------------

struct ScrambledStats {
  int cindex = 0;
  int corners = 0;
};

namespace detail {

/// Reusable marked-gap evaluator for one (m, n, scrambler) combination.
class GapMarker {
 public:
  GapMarker(int m, int n, const Scrambler& o)
      : hmask_(static_cast<std::size_t>(m), false),
        vmask_(static_cast<std::size_t>(n) + 1, false),
        flags_(static_cast<std::size_t>(m + n) + 1, false) {
    o.validate_for(m, n);
    for (int h : o.horizontal()) hmask_[static_cast<std::size_t>(h)] = true;
    for (int v : o.vertical()) vmask_[static_cast<std::size_t>(v)] = true;
  }

  ScrambledStats stats(std::string_view steps) {
    std::fill(flags_.begin(), flags_.end(), false);
    int len = static_cast<int>(steps.size());
    int d_seen = 0, r_seen = 0;
    for (int i = 0; i < len; ++i) {
      if (steps[i] == 'D') {
        // Gap before the (d_seen+1)-th D is gap i.
        if (hmask_[static_cast<std::size_t>(d_seen)]) flags_[i] = true;
        ++d_seen;
        if (i > 0 && steps[i - 1] == 'R') flags_[i] = true;  // true corner
      } else {
        ++r_seen;
        // Gap after the r_seen-th R is gap i+1.
        if (vmask_[static_cast<std::size_t>(r_seen)]) flags_[i + 1] = true;
      }
    }
    ScrambledStats out;
    for (int g = 0; g <= len; ++g) {
      if (flags_[g]) {
        ++out.corners;
        out.cindex += g;
      }
    }
    return out;
  }

  std::vector<int> marked(std::string_view steps) {
    stats(steps);
    std::vector<int> out;
    for (int g = 0; g < static_cast<int>(flags_.size()); ++g) {
      if (flags_[g]) out.push_back(g);
    }
    return out;
  }

 private:
  std::vector<bool> hmask_, vmask_, flags_;
};

}  // namespace detail

/// Sorted gap indices marked on `w` by true corners and the scrambler's
/// virtual corners.
inline std::vector<int> marked_gaps(const PathWord& w, const Scrambler& o) {
  detail::GapMarker marker(w.m(), w.n(), o);
  return marker.marked(w.steps());
}

inline ScrambledStats scrambled_stats(const PathWord& w, const Scrambler& o) {
  detail::GapMarker marker(w.m(), w.n(), o);
  return marker.stats(w.steps());
}

inline int scrambled_corners(const PathWord& w, const Scrambler& o) {
  return scrambled_stats(w, o).corners;
}

inline int scrambled_cindex(const PathWord& w, const Scrambler& o) {
  return scrambled_stats(w, o).cindex;
}

// ---------------------------------------------------------------------------
// Brute-force generating functions
// ---------------------------------------------------------------------------

struct GfOptions {
  int jobs = 1;
  int limit = kDefaultEnumLimit;
};

namespace detail {

/// Run `shard(prefix, accumulator)` over a prefix partition on `jobs`
/// threads and return the merged results. Merging is plain polynomial
/// addition, so the result is independent of the partition and job count.
template <class Poly, class ShardFn>
Poly parallel_over_shards(int m, int n, const GfOptions& opts, ShardFn shard) {
  check_enumeration_size(m, n, opts.limit);
  if (opts.jobs <= 1) {
    Poly total;
    shard(std::string_view{}, total);
    return total;
  }
  std::vector<std::string> prefixes = shard_prefixes(m, n, opts.jobs * 4);
  std::vector<Poly> partial(prefixes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < prefixes.size();
         i = next.fetch_add(1)) {
      shard(std::string_view(prefixes[i]), partial[i]);
    }
  };
  std::vector<std::thread> pool;
  int threads = std::min<int>(opts.jobs, static_cast<int>(prefixes.size()));
  pool.reserve(static_cast<std::size_t>(threads));
  for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  Poly total;
  for (const Poly& p : partial) total += p;
  return total;
}

}  // namespace detail

/// Generating function of the scrambled bi-statistic: sum over all paths of
/// q^{scrambled cindex} t^{scrambled corners}.
inline BiPoly gf_scrambled(int m, int n, const Scrambler& o,
                           const GfOptions& opts = {}) {
  o.validate_for(m, n);
  return detail::parallel_over_shards<BiPoly>(
      m, n, opts, [&](std::string_view prefix, BiPoly& acc) {
        detail::GapMarker marker(m, n, o);
        for_each_path_with_prefix(
            m, n, prefix,
            [&](const PathWord& w) {
              ScrambledStats st = marker.stats(w.steps());
              acc.add_term(st.cindex, st.corners, 1);
            },
            opts.limit);
      });
}

enum class Statistic { area, dees, corners, cindex };

inline const char* statistic_name(Statistic s) {
  switch (s) {
    case Statistic::area: return "area";
    case Statistic::dees: return "dees";
    case Statistic::corners: return "corners";
    case Statistic::cindex: return "cindex";
  }
  return "?";
}

/// Single-statistic generating function. A non-empty scrambler turns
/// `corners` and `cindex` into their scrambled versions; `area` and `dees`
/// never depend on ornaments.
inline UniPoly gf_statistic(int m, int n, Statistic stat,
                            const Scrambler& o = {},
                            const GfOptions& opts = {}) {
  o.validate_for(m, n);
  return detail::parallel_over_shards<UniPoly>(
      m, n, opts, [&](std::string_view prefix, UniPoly& acc) {
        detail::GapMarker marker(m, n, o);
        for_each_path_with_prefix(
            m, n, prefix,
            [&](const PathWord& w) {
              int value = 0;
              switch (stat) {
                case Statistic::area: value = area(w); break;
                case Statistic::dees: value = dees(w); break;
                case Statistic::corners:
                  value = marker.stats(w.steps()).corners;
                  break;
                case Statistic::cindex:
                  value = marker.stats(w.steps()).cindex;
                  break;
              }
              acc.add_term(value, 1);
            },
            opts.limit);
      });
}

}  // namespace gridpath
