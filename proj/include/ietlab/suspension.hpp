#pragma once

// Suspension-surface combinatorics: the permutation sigma0 of {0..n}, its
// cycles (the singular points), and the strip decomposition of the square
// over [0, 1) built from the orbit of 0.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "iet.hpp"
#include "matrix.hpp"

namespace ietlab {

struct Singularity {
  std::vector<int> cycle;  // the sigma0 cycle, starting at its least element
  int adjusted_length = 0;  // cycle length after omitting 0 and n
  int multiplicity = 0;     // adjusted_length - 1
  int prongs = 0;           // 2 * multiplicity + 2

  bool marked_point() const { return multiplicity == 0; }
};

struct SingularityProfile {
  std::vector<int> sigma0;  // sigma0[j] for j = 0..n
  std::vector<std::vector<int>> cycles;
  int N = 0;
  std::vector<Singularity> singularities;
  std::vector<std::vector<int>> dropped_cycles;  // empty after omitting 0 and n
  bool zero_and_n_share_cycle = false;
  std::optional<int> genus;  // set when the multiplicities sum to 2g - 2
  bool closed_transversal = false;
  std::vector<int> fake_saddles;  // j with sigma(j+1) = sigma(j) + 1
};

// sigma0, its cycle decomposition and N.
inline SingularityProfile sigma0(const Permutation& sigma) {
  if (!irreducible(sigma)) throw Error(ErrorCode::reducible, sigma.to_string());
  int n = sigma.size();
  SingularityProfile p;
  p.sigma0.assign(n + 1, 0);
  for (int j = 0; j <= n; ++j) {
    if (j == 0) p.sigma0[j] = sigma.inverse(1) - 1;
    else if (j == sigma.inverse(n)) p.sigma0[j] = n;
    else p.sigma0[j] = sigma.inverse(sigma(j) + 1) - 1;
  }
  std::vector<bool> seen(n + 1, false);
  for (int s = 0; s <= n; ++s) {
    if (seen[s]) continue;
    std::vector<int> c;
    for (int j = s; !seen[j]; j = p.sigma0[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    p.cycles.push_back(std::move(c));
  }
  p.N = static_cast<int>(p.cycles.size());
  return p;
}

inline SingularityProfile singularity_profile(const Permutation& sigma) {
  SingularityProfile p = sigma0(sigma);
  int n = sigma.size();
  int total = 0;
  for (const auto& c : p.cycles) {
    bool has0 = std::find(c.begin(), c.end(), 0) != c.end();
    bool hasn = std::find(c.begin(), c.end(), n) != c.end();
    if (has0 && hasn) p.zero_and_n_share_cycle = true;
    int len = static_cast<int>(c.size()) - has0 - hasn;
    if (len == 0) {
      p.dropped_cycles.push_back(c);
      continue;
    }
    Singularity s{c, len, len - 1, 2 * len};
    total += s.multiplicity;
    p.singularities.push_back(std::move(s));
  }
  if (total % 2 == 0) p.genus = total / 2 + 1;
  p.closed_transversal = sigma(n) == sigma(1) - 1;
  for (int j = 1; j < n; ++j)
    if (sigma(j + 1) == sigma(j) + 1) p.fake_saddles.push_back(j);
  return p;
}

// ---------------------------------------------------------------------------
// Strips.
//
// At orbit depth K let S = {T^k(0) : 1 <= k <= K} and S' = {T^k(0) : 2 <= k <= K+1}.
// Markers: x(1,i-1) = min S in I(i), x(0,i) = max S in I(i); x' likewise with
// S' and I'(i). Top boxes are [x(0,j), x(1,j)], bottom boxes [x'(0,j), x'(1,j)],
// for j = 1..n-1. The domain is W = (x(1,0), x(0,n)). Each boundary line is a
// run T^s(0), T^(s+1)(0), ... that stops at the first point lying in a closed
// top box; lines start at s = 1 and at every bottom-box corner exponent.
// Cutting W at all line points gives segments; T carries each segment that is
// not under a top box onto another segment, and the resulting chains, from a
// segment over a bottom box to one under a top box, are the strips.

struct Marker {
  int delta;  // 0 or 1
  int i;
  long k;  // x(delta, i) = T^k(0)
  QuadReal x;
};

// T^exponent(0) approached from the right ('+') or the left ('-').
struct BoundaryTag {
  long exponent;
  char side;
};

struct StripLine {
  long start;
  long end;         // first exponent landing in a closed top box
  int landing_box;  // 1..n-1, or 0 / n for a domain edge
  bool interior;    // landed strictly inside the box
};

struct StripSegment {
  QuadReal left, right;
  long left_exp = 0, right_exp = 0;
  int top_box = 0;     // box above the segment, 0 if none
  int bottom_box = 0;  // box below the segment, 0 if none
  int interval = 0;    // I(i) holding the segment when top_box == 0
  int next = -1;       // index of T(segment) when top_box == 0
};

struct Strip {
  std::vector<int> segments;  // chain from the bottom box to the top box
  std::vector<int> visit_word;  // I-index of each segment carried by T
  int start_box = 0;
  int end_box = 0;
  QuadReal width;
  BoundaryTag left, right;
};

struct StripLevel {
  int level = 1;
  long raw_K = 0;
  long K = 0;
  std::vector<Marker> markers;        // Omega order: (1,0), (0,1), (1,1), ..., (0,n)
  std::vector<Marker> markers_prime;  // same order
  std::vector<StripLine> lines;
  std::vector<StripSegment> segments;  // left to right
  std::vector<Strip> strips;
  IntMatrix incidence_to_previous;  // row = strip here, column = strip of the previous level

  const Marker& marker(int delta, int i, bool prime = false) const {
    const auto& ms = prime ? markers_prime : markers;
    for (const auto& m : ms)
      if (m.delta == delta && m.i == i) return m;
    throw Error(ErrorCode::invalid_argument, "no marker (" + std::to_string(delta) + "," + std::to_string(i) + ")");
  }
  int n() const { return static_cast<int>(strips.size()); }
  const QuadReal& left_edge() const { return markers.front().x; }
  const QuadReal& right_edge() const { return markers.back().x; }
};

inline constexpr long default_max_exponent = 100'000;

namespace detail {

class ZeroOrbit {
 public:
  ZeroOrbit(const Iet& t, long max_exponent) : t_(t), max_(max_exponent), pts_{QuadReal()} {}
  const QuadReal& operator[](long k) {
    if (k > max_) throw Error(ErrorCode::depth_exceeded, "orbit of 0 beyond exponent " + std::to_string(max_));
    while (static_cast<long>(pts_.size()) <= k) pts_.push_back(t_.apply(pts_.back()));
    return pts_[static_cast<std::size_t>(k)];
  }
  long used() const { return static_cast<long>(pts_.size()) - 1; }

 private:
  const Iet& t_;
  long max_;
  std::vector<QuadReal> pts_;
};

inline std::vector<Marker> omega_markers(ZeroOrbit& orb, const Iet& t, long from, long to, bool prime) {
  int n = t.size();
  std::vector<long> lo(n + 1, -1), hi(n + 1, -1);
  for (long k = from; k <= to; ++k) {
    const QuadReal& p = orb[k];
    int i = prime ? t.locate_image(p) : t.locate(p);
    if (lo[i] < 0 || p < orb[lo[i]]) lo[i] = k;
    if (hi[i] < 0 || p > orb[hi[i]]) hi[i] = k;
  }
  std::vector<Marker> ms;
  for (int i = 1; i <= n; ++i)
    if (lo[i] < 0) return {};
  ms.push_back({1, 0, lo[1], orb[lo[1]]});
  for (int i = 1; i < n; ++i) {
    ms.push_back({0, i, hi[i], orb[hi[i]]});
    ms.push_back({1, i, lo[i + 1], orb[lo[i + 1]]});
  }
  ms.push_back({0, n, hi[n], orb[hi[n]]});
  return ms;
}

// Builds one level at depth K; returns nullopt when the edges of W differ
// between S and S' (the strips would run into the side columns).
inline std::optional<StripLevel> build_level(ZeroOrbit& orb, const Iet& t, long K) {
  int n = t.size();
  StripLevel L;
  L.K = K;
  L.markers = omega_markers(orb, t, 1, K, false);
  L.markers_prime = omega_markers(orb, t, 2, K + 1, true);
  if (L.markers.empty() || L.markers_prime.empty()) return std::nullopt;
  if (L.markers.front().x != L.markers_prime.front().x || L.markers.back().x != L.markers_prime.back().x)
    return std::nullopt;
  auto shape = [](const std::string& what) { return Error(ErrorCode::shape_violation, what); };
  auto top = [&](int j) { return std::pair{L.marker(0, j).x, L.marker(1, j).x}; };
  auto bottom = [&](int j) { return std::pair{L.marker(0, j, true).x, L.marker(1, j, true).x}; };
  const QuadReal lo = L.left_edge(), hi = L.right_edge();

  std::vector<long> starts{1};
  for (int i = 1; i < n; ++i)
    for (int d = 0; d < 2; ++d) starts.push_back(L.marker(d, i, true).k);
  std::map<QuadReal, long> cut;  // value -> exponent
  for (long s : starts) {
    StripLine line{s, s, 0, false};
    for (long m = s;; ++m) {
      const QuadReal& p = orb[m];
      if (p < lo || p > hi) throw shape("line from T^" + std::to_string(s) + "(0) leaves the domain");
      if (cut.count(p) && cut[p] != m) throw shape("orbit of 0 repeats");
      cut[p] = m;
      int box = p == lo ? 0 : (p == hi ? n : -1);
      for (int j = 1; j < n && box < 0; ++j) {
        auto [a, b] = top(j);
        if (a <= p && p <= b) {
          box = j;
          line.interior = a < p && p < b;
        }
      }
      if (box >= 0) {
        line.end = m;
        line.landing_box = box;
        break;
      }
    }
    L.lines.push_back(line);
  }
  cut[lo] = L.markers.front().k;
  cut[hi] = L.markers.back().k;

  std::map<QuadReal, int> by_left;
  for (auto it = cut.begin(); std::next(it) != cut.end(); ++it) {
    if (it->first < lo || it->first >= hi) continue;
    auto nx = std::next(it);
    StripSegment s;
    s.left = it->first;
    s.right = nx->first;
    s.left_exp = it->second;
    s.right_exp = nx->second;
    for (int j = 1; j < n; ++j) {
      auto [a, b] = top(j);
      if (a <= s.left && s.right <= b) s.top_box = j;
      auto [c, d] = bottom(j);
      if (c <= s.left && s.right <= d) s.bottom_box = j;
    }
    by_left[s.left] = static_cast<int>(L.segments.size());
    L.segments.push_back(std::move(s));
  }
  std::vector<int> preimages(L.segments.size(), 0);
  for (auto& s : L.segments) {
    if (s.top_box) continue;
    s.interval = t.locate(s.left);
    if (s.right > t.beta(s.interval)) throw shape("segment crosses a separation point outside the boxes");
    QuadReal l = s.left + t.tau(s.interval);
    auto it = by_left.find(l);
    if (it == by_left.end() || L.segments[it->second].right != s.right + t.tau(s.interval))
      throw shape("image of a segment is not a segment");
    s.next = it->second;
    ++preimages[it->second];
  }
  for (std::size_t i = 0; i < L.segments.size(); ++i) {
    int expected = L.segments[i].bottom_box ? 0 : 1;
    if (preimages[i] != expected) throw shape("segment has " + std::to_string(preimages[i]) + " preimages");
  }
  std::vector<bool> used(L.segments.size(), false);
  for (std::size_t i = 0; i < L.segments.size(); ++i) {
    if (!L.segments[i].bottom_box) continue;
    Strip st;
    int c = static_cast<int>(i);
    while (true) {
      if (used[c]) throw shape("strip chains overlap");
      used[c] = true;
      st.segments.push_back(c);
      const auto& s = L.segments[c];
      if (s.top_box) break;
      st.visit_word.push_back(s.interval);
      c = s.next;
    }
    const auto& first = L.segments[st.segments.front()];
    st.start_box = first.bottom_box;
    st.end_box = L.segments[st.segments.back()].top_box;
    st.width = first.right - first.left;
    st.left = {first.left_exp, '+'};
    st.right = {first.right_exp, '-'};
    L.strips.push_back(std::move(st));
  }
  if (std::find(used.begin(), used.end(), false) != used.end()) throw shape("segment outside every strip");
  if (L.n() != n) throw shape(std::to_string(L.n()) + " strips instead of " + std::to_string(n));
  return L;
}

// Exceptional cases: T^K(0) in an interval moved to the far right
// (sigma = n) or far left (sigma = 1) of the image.
inline long exception_adjusted(ZeroOrbit& orb, const Iet& t, long K) {
  int s = t.sigma()(t.locate(orb[K]));
  return (s == t.size() || s == 1) ? K + 1 : K;
}

// Tries K, K+1, ... until a level with matching edges exists.
inline StripLevel settle_level(ZeroOrbit& orb, const Iet& t, long raw_K, long K) {
  for (;; ++K) {
    if (auto L = build_level(orb, t, K)) {
      L->raw_K = raw_K;
      return *std::move(L);
    }
  }
}

// Bipartite matching of rows to columns through positive entries (Kuhn).
inline std::vector<int> diagonal_matching(const IntMatrix& m) {
  int n = m.rows();
  std::vector<int> row_of(n, -1);
  std::function<bool(int, std::vector<bool>&)> augment = [&](int r, std::vector<bool>& seen) {
    for (int c = 0; c < n; ++c) {
      if (m(r, c) == 0 || seen[c]) continue;
      seen[c] = true;
      if (row_of[c] < 0 || augment(row_of[c], seen)) {
        row_of[c] = r;
        return true;
      }
    }
    return false;
  };
  for (int r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    if (!augment(r, seen)) return {};
  }
  return row_of;
}

// Row b, column a: segments of new strip b inside the first segment of old
// strip a. New strips are reordered so the diagonal is positive.
inline void attach_incidence(const StripLevel& old, StripLevel& cur) {
  int n = old.n();
  std::map<QuadReal, int> old_by_left;
  for (std::size_t i = 0; i < old.segments.size(); ++i) old_by_left[old.segments[i].left] = static_cast<int>(i);
  std::vector<int> strip_of_first(old.segments.size(), -1);
  for (int a = 0; a < n; ++a) strip_of_first[old.strips[a].segments.front()] = a;
  IntMatrix M(n, n);
  for (int b = 0; b < n; ++b)
    for (int si : cur.strips[b].segments) {
      const auto& s = cur.segments[si];
      if (s.left < old.left_edge() || s.right > old.right_edge()) continue;
      auto it = old_by_left.upper_bound(s.left);
      if (it == old_by_left.begin()) throw Error(ErrorCode::shape_violation, "segment left of the old domain");
      const auto& o = old.segments[std::prev(it)->second];
      if (s.right > o.right) throw Error(ErrorCode::shape_violation, "level boundaries do not refine");
      int a = strip_of_first[std::prev(it)->second];
      if (a >= 0) M(b, a) += 1;
    }
  std::vector<int> row_of = diagonal_matching(M);
  if (!row_of.empty()) {
    std::vector<Strip> strips;
    IntMatrix P(n, n);
    for (int a = 0; a < n; ++a) {
      strips.push_back(cur.strips[row_of[a]]);
      for (int c = 0; c < n; ++c) P(a, c) = M(row_of[a], c);
    }
    cur.strips = std::move(strips);
    M = P;
  }
  cur.incidence_to_previous = M;
}

}  // namespace detail

// Levels 1..levels of the strip decomposition. Level 1 takes the least K with
// two orbit points in every I(i); level j+1 follows the line from the bottom
// corner with the largest exponent (ties: smallest i, then delta = 0) to its
// landing exponent l and uses K = l. Both apply the exceptional-case rule
// once, then raise K further only if the domain edges still disagree.
inline std::vector<StripLevel> strip_decomposition(const Iet& t, int levels, long max_exponent = default_max_exponent,
                                                   long idoc_depth = 64) {
  if (levels < 1) throw Error(ErrorCode::invalid_argument, "levels must be >= 1");
  auto not_idoc = [&](long depth) {
    auto r = idoc_check(t, depth);
    if (!r.verified()) throw Error(ErrorCode::not_verified_idoc, r.describe());
  };
  not_idoc(idoc_depth);
  int n = t.size();
  detail::ZeroOrbit orb(t, max_exponent);
  long raw = 0;
  for (std::vector<int> count(n + 1, 0);;) {
    ++raw;
    ++count[t.locate(orb[raw])];
    if (std::all_of(count.begin() + 1, count.end(), [](int c) { return c >= 2; })) break;
  }
  std::vector<StripLevel> out;
  out.push_back(detail::settle_level(orb, t, raw, detail::exception_adjusted(orb, t, raw)));
  for (int j = 2; j <= levels; ++j) {
    const StripLevel& prev = out.back();
    const Marker* best = nullptr;
    for (int i = 1; i < n; ++i)
      for (int d = 0; d < 2; ++d) {
        const Marker& m = prev.marker(d, i, true);
        if (!best || m.k > best->k) best = &m;
      }
    long l = 0;
    for (const auto& line : prev.lines)
      if (line.start == best->k) l = line.end;
    StripLevel cur = detail::settle_level(orb, t, l, detail::exception_adjusted(orb, t, l));
    cur.level = j;
    detail::attach_incidence(prev, cur);
    out.push_back(std::move(cur));
  }
  not_idoc(std::max(idoc_depth, orb.used() + 1));
  return out;
}

// Incidence matrices between consecutive levels, each checked to be the
// identity plus exactly one off-diagonal 1.
inline std::vector<IntMatrix> strip_dimension_group_feed(const std::vector<StripLevel>& levels) {
  std::vector<IntMatrix> out;
  for (std::size_t j = 1; j < levels.size(); ++j) {
    const IntMatrix& M = levels[j].incidence_to_previous;
    int n = M.rows();
    int off = 0;
    bool ok = n == M.cols() && n > 0;
    for (int r = 0; r < n && ok; ++r)
      for (int c = 0; c < n && ok; ++c) {
        if (r == c) ok = M(r, c) == 1;
        else if (M(r, c) == 1) ++off;
        else ok = M(r, c) == 0;
      }
    if (!ok || off != 1)
      throw Error(ErrorCode::shape_violation, "level " + std::to_string(j) + " -> " + std::to_string(j + 1) +
                                                  " incidence " + M.to_string());
    out.push_back(M);
  }
  return out;
}

}  // namespace ietlab
