#pragma once

// Executable versions of the constructive bijections between differently
// ornated path families: pair cancellation (removes the ornament pair 0/1
// and lowers both scrambled statistics by one), the two ornament-shift maps
// (move one ornament down a line, lowering scrambled cindex by one), the
// composed unscrambling chain, and the two-stage reconstruction of the
// reduced-scrambler family.
//
// Every map works class by class. A class consists of the words that differ
// only in the position of one "floating" letter inside a maximal run of the
// other letter; the map lines the class up in two orders (the floating
// letter drifting right-to-left over ornated neighbours, then the leftmost
// word, then drifting left-to-right over plain neighbours, with the
// run-final word placed last on the source side and first on the target
// side) and pairs words of equal rank.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gridpath/lattice.hpp"
#include "gridpath/scramble.hpp"

namespace gridpath {

struct BijectionTrace {
  std::string lemma;  // "pair-cancel" | "shift-V" | "shift-H"
  std::string source_word;
  std::string target_word;
  Scrambler source_scrambler;
  Scrambler target_scrambler;
  // Class segments of the source word; reassembling
  //   u + a + floating + b + v            (pair-cancel, with u == "")
  //   u + a + floating + b + v            (shift-V: u ends with the fixed R)
  //   u + a + 'D' + b + 'D' + v           (shift-H: two fixed D's, see below)
  // reproduces the source word. For shift-H the floating letter is the
  // first of the two D's and a, b are runs of R.
  std::string u, a, b, v;
  char floating = 'R';
  int type = 0;  // 1..4 case tag; 0 for a singleton class
  int source_index = 0;
  int target_index = 0;
  int class_size = 1;
  int dcindex = 0;
  int dcorners = 0;
};

namespace detail {

// A class of words prefix + D^i R D^(sea-i) + suffix for i = 0..sea.
struct SeaClass {
  std::string prefix;
  std::string suffix;
  int sea = 0;
  int slot = 0;      // i of the decomposed word
  int d_offset = 0;  // D's inside prefix (word-level index of sea D's)
};

inline std::string class_word(const SeaClass& c, int slot) {
  std::string out = c.prefix;
  out.append(static_cast<std::size_t>(slot), 'D');
  out += 'R';
  out.append(static_cast<std::size_t>(c.sea - slot), 'D');
  out += c.suffix;
  return out;
}

/// Case tag of the word with the floating R at `slot`: 3 when leftmost in
/// the sea, 4 when rightmost, otherwise 1/2 by whether the D it faces is
/// ornated. The faced D is the (d_offset + slot + 1)-th D of the word.
inline int slot_type(const SeaClass& c, const Scrambler& o, int slot) {
  if (slot == 0) return 3;
  if (slot == c.sea) return 4;
  return o.contains_h(c.d_offset + slot) ? 1 : 2;
}

/// The class order. The source side of every map (ornament still on the
/// floating letter) places the run-final word last; the target side places
/// it first.
inline std::vector<int> class_order(const SeaClass& c, const Scrambler& o,
                                    bool ornament_on_floating) {
  std::vector<int> t1, t2;
  for (int i = 1; i < c.sea; ++i) {
    (slot_type(c, o, i) == 1 ? t1 : t2).push_back(i);
  }
  std::reverse(t1.begin(), t1.end());
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(c.sea) + 1);
  if (!ornament_on_floating) order.push_back(c.sea);
  order.insert(order.end(), t1.begin(), t1.end());
  order.push_back(0);
  order.insert(order.end(), t2.begin(), t2.end());
  if (ornament_on_floating) order.push_back(c.sea);
  return order;
}

inline int index_of(const std::vector<int>& order, int slot) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order[i] == slot) return static_cast<int>(i);
  }
  throw std::logic_error("class order: slot not found");
}

/// Decomposition around the first R of the word (pair cancellation).
inline SeaClass decompose_first_r(const PathWord& w) {
  const std::string& s = w.steps();
  SeaClass c;
  std::size_t first_r = s.find('R');
  if (first_r == std::string::npos) {
    throw std::logic_error("decompose: word has no R");
  }
  std::size_t after = first_r + 1;
  while (after < s.size() && s[after] == 'D') ++after;
  c.slot = static_cast<int>(first_r);
  c.sea = c.slot + static_cast<int>(after - first_r - 1);
  c.suffix = s.substr(after);
  c.d_offset = 0;
  return c;
}

/// Decomposition around the (vj-1)-th and vj-th R's (vertical shift).
inline SeaClass decompose_around_rs(const PathWord& w, int vj) {
  const std::string& s = w.steps();
  SeaClass c;
  int seen_r = 0;
  std::size_t p1 = 0, p2 = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'R') {
      ++seen_r;
      if (seen_r == vj - 1) p1 = i;
      if (seen_r == vj) {
        p2 = i;
        break;
      }
    }
  }
  if (seen_r < vj) throw std::logic_error("decompose: missing R");
  std::size_t after = p2 + 1;
  while (after < s.size() && s[after] == 'D') ++after;
  c.prefix = s.substr(0, p1 + 1);
  c.slot = static_cast<int>(p2 - p1 - 1);
  c.sea = c.slot + static_cast<int>(after - p2 - 1);
  c.suffix = s.substr(after);
  c.d_offset = static_cast<int>(p1 + 1) - (vj - 1);
  return c;
}

inline void fill_deltas(BijectionTrace& trace, const PathWord& src,
                        const Scrambler& src_o, const PathWord& dst,
                        const Scrambler& dst_o) {
  ScrambledStats a = scrambled_stats(src, src_o);
  ScrambledStats b = scrambled_stats(dst, dst_o);
  trace.dcindex = b.cindex - a.cindex;
  trace.dcorners = b.corners - a.corners;
}

/// Shared engine: map `w` through the class of `c`. `forward` follows the
/// source order into the target order; the inverse direction swaps them.
inline std::string map_through_class(const SeaClass& c, const Scrambler& o,
                                     bool forward, int* out_slot,
                                     int* out_index) {
  std::vector<int> src = class_order(c, o, true);
  std::vector<int> dst = class_order(c, o, false);
  if (!forward) std::swap(src, dst);
  int pos = index_of(src, c.slot);
  int slot = dst[static_cast<std::size_t>(pos)];
  if (out_slot) *out_slot = slot;
  if (out_index) *out_index = pos;
  return class_word(c, slot);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Pair cancellation
// ---------------------------------------------------------------------------

/// Requires 0 in H and 1 in V. Maps the word to its partner under the
/// scrambler with that pair removed; both scrambled statistics drop by 1.
inline std::pair<PathWord, Scrambler> lemma2_map(const PathWord& w,
                                                 const Scrambler& o,
                                                 BijectionTrace* trace = nullptr) {
  o.validate_for(w.m(), w.n());
  if (!o.contains_h(0) || !o.contains_v(1)) {
    throw std::invalid_argument(
        "pair-cancel: scrambler must contain horizontal 0 and vertical 1");
  }
  if (w.m() < 1) {
    throw std::invalid_argument("pair-cancel: need at least one D");
  }
  Scrambler target = o.without_pair();
  detail::SeaClass c = detail::decompose_first_r(w);

  PathWord result = w;
  int index = 0, type = 0;
  if (c.sea > 0) {
    int slot = 0;
    std::string mapped = detail::map_through_class(c, o, true, &slot, &index);
    type = detail::slot_type(c, o, c.slot);
    result = PathWord(w.m(), w.n(), std::move(mapped));
  }
  if (trace) {
    trace->lemma = "pair-cancel";
    trace->source_word = w.steps();
    trace->target_word = result.steps();
    trace->source_scrambler = o;
    trace->target_scrambler = target;
    trace->u.clear();
    trace->a.assign(static_cast<std::size_t>(c.slot), 'D');
    trace->b.assign(static_cast<std::size_t>(c.sea - c.slot), 'D');
    trace->v = c.suffix;
    trace->floating = 'R';
    trace->type = type;
    trace->source_index = trace->target_index = index;
    trace->class_size = c.sea + 1;
    detail::fill_deltas(*trace, w, o, result, target);
  }
  return {std::move(result), std::move(target)};
}

// ---------------------------------------------------------------------------
// Vertical ornament shift
// ---------------------------------------------------------------------------

namespace detail {

inline void require_v_shiftable(const Scrambler& o, int vj) {
  if (!o.contains_v(vj)) {
    throw std::invalid_argument("shift-V: vertical ornament " +
                                std::to_string(vj) + " not present");
  }
  if (vj < 2) {
    throw std::invalid_argument("shift-V: ornament must be at least 2");
  }
  if (o.contains_v(vj - 1)) {
    throw std::invalid_argument("shift-V: slot " + std::to_string(vj - 1) +
                                " is already occupied");
  }
}

}  // namespace detail

/// Moves vertical ornament vj down to vj-1. Scrambled corners are
/// preserved; scrambled cindex drops by 1.
inline std::pair<PathWord, Scrambler> lemma2v_map(const PathWord& w,
                                                  const Scrambler& o, int vj,
                                                  BijectionTrace* trace = nullptr) {
  o.validate_for(w.m(), w.n());
  detail::require_v_shiftable(o, vj);
  Scrambler target = o.with_v_shifted_down(vj);
  detail::SeaClass c = detail::decompose_around_rs(w, vj);

  PathWord result = w;
  int index = 0, type = 0;
  if (c.sea > 0) {
    int slot = 0;
    std::string mapped = detail::map_through_class(c, o, true, &slot, &index);
    type = detail::slot_type(c, o, c.slot);
    result = PathWord(w.m(), w.n(), std::move(mapped));
  }
  if (trace) {
    trace->lemma = "shift-V";
    trace->source_word = w.steps();
    trace->target_word = result.steps();
    trace->source_scrambler = o;
    trace->target_scrambler = target;
    trace->u = c.prefix;
    trace->a.assign(static_cast<std::size_t>(c.slot), 'D');
    trace->b.assign(static_cast<std::size_t>(c.sea - c.slot), 'D');
    trace->v = c.suffix;
    trace->floating = 'R';
    trace->type = type;
    trace->source_index = trace->target_index = index;
    trace->class_size = c.sea + 1;
    detail::fill_deltas(*trace, w, o, result, target);
  }
  return {std::move(result), std::move(target)};
}

// ---------------------------------------------------------------------------
// Horizontal ornament shift
// ---------------------------------------------------------------------------

/// Transpose of the grid: reverse the word and exchange D with R. Gap g maps
/// to gap m+n-g, so true corners are preserved; vertical ornament v becomes
/// horizontal n-v and horizontal h becomes vertical m-h.
inline PathWord mirror(const PathWord& w) {
  std::string s(w.steps().rbegin(), w.steps().rend());
  for (char& c : s) c = (c == 'D') ? 'R' : 'D';
  return PathWord(w.n(), w.m(), std::move(s));
}

inline Scrambler mirror(const Scrambler& o, int m, int n) {
  std::vector<int> h, v;
  for (int x : o.vertical()) h.push_back(n - x);
  for (int x : o.horizontal()) v.push_back(m - x);
  return Scrambler(std::move(h), std::move(v));
}

/// Moves horizontal ornament hj down to hj-1 (corners preserved, scrambled
/// cindex drops by 1). This is the vertical shift acting on D's: conjugate
/// by the mirror and run the vertical-shift pairing backwards.
inline std::pair<PathWord, Scrambler> lemma2h_map(const PathWord& w,
                                                  const Scrambler& o, int hj,
                                                  BijectionTrace* trace = nullptr) {
  int m = w.m(), n = w.n();
  o.validate_for(m, n);
  if (!o.contains_h(hj)) {
    throw std::invalid_argument("shift-H: horizontal ornament " +
                                std::to_string(hj) + " not present");
  }
  if (hj < 1) {
    throw std::invalid_argument("shift-H: ornament must be at least 1");
  }
  if (o.contains_h(hj - 1)) {
    throw std::invalid_argument("shift-H: slot " + std::to_string(hj - 1) +
                                " is already occupied");
  }
  Scrambler target = o.with_h_shifted_down(hj);

  PathWord mirrored = mirror(w);
  Scrambler mirrored_source = mirror(target, m, n);  // contains m-hj+1
  int t = m - hj + 1;
  detail::require_v_shiftable(mirrored_source, t);
  detail::SeaClass c = detail::decompose_around_rs(mirrored, t);

  PathWord result = w;
  int index = 0, engine_type = 0;
  if (c.sea > 0) {
    int slot = 0;
    std::string mapped =
        detail::map_through_class(c, mirrored_source, false, &slot, &index);
    engine_type = detail::slot_type(c, mirrored_source, c.slot);
    result = mirror(PathWord(n, m, std::move(mapped)));
  }
  if (trace) {
    auto mirror_segment = [](std::string_view seg) {
      std::string out(seg.rbegin(), seg.rend());
      for (char& ch : out) ch = (ch == 'D') ? 'R' : 'D';
      return out;
    };
    trace->lemma = "shift-H";
    trace->source_word = w.steps();
    trace->target_word = result.steps();
    trace->source_scrambler = o;
    trace->target_scrambler = target;
    // Segments in original coordinates: w = u + a + D + b + D + v with the
    // first D floating through the R-run a+b.
    trace->u = mirror_segment(c.suffix);
    trace->a.assign(static_cast<std::size_t>(c.sea - c.slot), 'R');
    trace->b.assign(static_cast<std::size_t>(c.slot), 'R');
    std::string_view pre = c.prefix;
    if (!pre.empty()) pre.remove_suffix(1);  // drop the fixed R
    trace->v = mirror_segment(pre);
    trace->floating = 'D';
    if (engine_type == 3) {
      trace->type = 4;
    } else if (engine_type == 4) {
      trace->type = 3;
    } else {
      trace->type = engine_type;
    }
    trace->source_index = trace->target_index = index;
    trace->class_size = c.sea + 1;
    detail::fill_deltas(*trace, w, o, result, target);
  }
  return {std::move(result), std::move(target)};
}

// ---------------------------------------------------------------------------
// Unscrambling chain
// ---------------------------------------------------------------------------

enum class ChainStepKind { cancel, shift_h, shift_v };

struct ChainStep {
  ChainStepKind kind = ChainStepKind::cancel;
  int ornament = 0;  // the ornament being shifted down (unused for cancel)
};

/// The reduced scrambler with the same difference d-r: the surviving
/// ornament type packed to its lowest positions.
inline Scrambler reduced_form(const Scrambler& o) {
  int d = o.d(), r = o.r();
  std::vector<int> h, v;
  for (int k = 0; k < d - r; ++k) h.push_back(k);
  for (int k = 1; k <= r - d; ++k) v.push_back(k);
  return Scrambler(std::move(h), std::move(v));
}

/// Deterministic plan reducing `o` to reduced_form(o): repeatedly walk the
/// smallest horizontal ornament down to 0 and the smallest vertical one down
/// to 1, cancel the pair, and finally pack the surviving type downward.
/// Every step lowers the ornament sum by 1, so the plan length is
/// s - s_reduced and it contains min(d, r) cancellations.
inline std::vector<ChainStep> unscramble_chain(const Scrambler& o) {
  std::vector<ChainStep> plan;
  std::vector<int> h = o.horizontal(), v = o.vertical();
  std::size_t hi = 0, vi = 0;
  while (hi < h.size() && vi < v.size()) {
    for (int x = h[hi]; x > 0; --x) plan.push_back({ChainStepKind::shift_h, x});
    for (int x = v[vi]; x > 1; --x) plan.push_back({ChainStepKind::shift_v, x});
    plan.push_back({ChainStepKind::cancel, 0});
    ++hi;
    ++vi;
  }
  for (std::size_t k = 0; hi + k < h.size(); ++k) {
    for (int x = h[hi + k]; x > static_cast<int>(k); --x) {
      plan.push_back({ChainStepKind::shift_h, x});
    }
  }
  for (std::size_t k = 0; vi + k < v.size(); ++k) {
    for (int x = v[vi + k]; x > static_cast<int>(k) + 1; --x) {
      plan.push_back({ChainStepKind::shift_v, x});
    }
  }
  return plan;
}

struct ChainResult {
  PathWord word;
  Scrambler scrambler;
  int dcindex = 0;
  int dcorners = 0;
  std::vector<BijectionTrace> steps;  // filled only when requested
};

inline ChainResult apply_chain(const PathWord& w, const Scrambler& o,
                               bool with_traces = false) {
  o.validate_for(w.m(), w.n());
  ScrambledStats before = scrambled_stats(w, o);
  PathWord word = w;
  Scrambler scr = o;
  ChainResult out{word, scr, 0, 0, {}};
  for (const ChainStep& step : unscramble_chain(o)) {
    BijectionTrace trace;
    BijectionTrace* tp = with_traces ? &trace : nullptr;
    std::pair<PathWord, Scrambler> next = [&] {
      switch (step.kind) {
        case ChainStepKind::cancel: return lemma2_map(word, scr, tp);
        case ChainStepKind::shift_h:
          return lemma2h_map(word, scr, step.ornament, tp);
        case ChainStepKind::shift_v:
          return lemma2v_map(word, scr, step.ornament, tp);
      }
      throw std::logic_error("chain: bad step");
    }();
    word = std::move(next.first);
    scr = std::move(next.second);
    if (with_traces) out.steps.push_back(std::move(trace));
  }
  ScrambledStats after = scrambled_stats(word, scr);
  out.word = std::move(word);
  out.scrambler = std::move(scr);
  out.dcindex = after.cindex - before.cindex;
  out.dcorners = after.corners - before.corners;
  return out;
}

// ---------------------------------------------------------------------------
// Two-stage reconstruction of the reduced family
// ---------------------------------------------------------------------------

/// All words whose scrambled corner count under (H = {}, V = {1..r}) equals
/// c, generated by the two independent stages: choose which of the n-r
/// unornated R's are followed by a new true corner (ell = c - r of them),
/// then distribute the remaining m - ell D's over the r ornated R's, the
/// ell corner strings, and the start of the word. Emits
/// C(n-r, ell) * C(m+r, c) distinct words.
inline std::vector<PathWord> prop3_construct(int m, int n, int r, int c) {
  if (m < 0 || n < 0) {
    throw std::invalid_argument("reconstruct: negative grid size");
  }
  if (r < 0 || r > n) {
    throw std::invalid_argument("reconstruct: need 0 <= r <= n");
  }
  if (c < r) {
    throw std::invalid_argument("reconstruct: need c >= r");
  }
  int ell = c - r;
  std::vector<PathWord> out;
  if (ell > n - r || ell > m) return out;

  int boxes = r + ell + 1;
  int spare = m - ell;

  // Lexicographic (e_0, ..., e_{boxes-1}) with sum == spare.
  std::vector<int> extras(static_cast<std::size_t>(boxes), 0);
  std::vector<int> chosen(static_cast<std::size_t>(ell));
  for (int i = 0; i < ell; ++i) chosen[static_cast<std::size_t>(i)] = i + 1;

  auto emit = [&]() {
    std::string word;
    word.append(static_cast<std::size_t>(extras[0]), 'D');
    for (int i = 1; i <= r; ++i) {
      word += 'R';
      word.append(static_cast<std::size_t>(extras[static_cast<std::size_t>(i)]),
                  'D');
    }
    std::size_t si = 0;
    for (int j = 1; j <= n - r; ++j) {
      word += 'R';
      if (si < chosen.size() && chosen[si] == j) {
        word.append(
            1 + static_cast<std::size_t>(
                    extras[static_cast<std::size_t>(r) + 1 + si]),
            'D');
        ++si;
      }
    }
    out.push_back(PathWord(m, n, std::move(word)));
  };

  auto for_each_composition = [&](auto&& self, int box, int remaining) -> void {
    if (box == boxes - 1) {
      extras[static_cast<std::size_t>(box)] = remaining;
      emit();
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      extras[static_cast<std::size_t>(box)] = v;
      self(self, box + 1, remaining - v);
    }
  };

  while (true) {
    for_each_composition(for_each_composition, 0, spare);
    // next ell-subset of {1..n-r} in lexicographic order
    int i = ell - 1;
    while (i >= 0 && chosen[static_cast<std::size_t>(i)] == n - r - (ell - 1 - i)) {
      --i;
    }
    if (i < 0) break;
    ++chosen[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < ell; ++j) {
      chosen[static_cast<std::size_t>(j)] = chosen[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

}  // namespace gridpath
