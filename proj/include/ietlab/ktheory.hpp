#pragma once

// Kakutani-Rokhlin towers, Bratteli diagrams and the ordered dimension
// groups obtained from induction chains and from strip levels.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "induction.hpp"
#include "matrix.hpp"
#include "measures.hpp"
#include "suspension.hpp"

namespace ietlab {

struct Floor {
  QuadReal left, right;
  int tower = 0;  // 1-based
};

struct Tower {
  QuadReal base_left, base_right;
  long height = 0;
  std::vector<Floor> floors;  // Y(l, j) = T^j(base) for j = 1..height
};

struct TowerPartition {
  AdmissibleInterval Y;
  std::vector<Tower> towers;
  std::vector<long> algebra_dims;
};

// Towers over Y: one per induced interval, floors T^j(base), j = 1..J_l, so
// the top floors tile Y. Throws ConsistencyViolation if the floors do not
// partition the domain.
inline TowerPartition towers(const Iet& t, const AdmissibleInterval& Y, long max_steps = default_max_steps,
                             bool check_admissible = true) {
  InductionStep s = induce(t, Y, max_steps, check_admissible);
  int n = t.size();
  TowerPartition p;
  p.Y = Y;
  std::vector<Floor> all, tops;
  QuadReal kac;
  for (int l = 0; l < n; ++l) {
    Tower tw;
    tw.base_left = s.cuts[l].value;
    tw.base_right = l + 1 < n ? s.cuts[l + 1].value : Y.right.value;
    tw.height = s.return_times[l];
    QuadReal len = tw.base_right - tw.base_left;
    QuadReal x = tw.base_left;
    for (long j = 1; j <= tw.height; ++j) {
      x = t.apply(x);
      tw.floors.push_back({x, x + len, l + 1});
    }
    all.insert(all.end(), tw.floors.begin(), tw.floors.end());
    tops.push_back(tw.floors.back());
    kac += QuadReal(tw.height) * len;
    p.algebra_dims.push_back(tw.height);
    p.towers.push_back(std::move(tw));
  }
  auto tiles = [](std::vector<Floor> fs, const QuadReal& a, const QuadReal& b) {
    std::sort(fs.begin(), fs.end(), [](const Floor& x, const Floor& y) { return x.left < y.left; });
    QuadReal pos = a;
    for (const auto& f : fs) {
      if (f.left != pos) return false;
      pos = f.right;
    }
    return pos == b;
  };
  auto fail = [](const std::string& what) { throw Error(ErrorCode::consistency_violation, what); };
  if (!tiles(all, QuadReal(), t.length())) fail("floors do not partition the domain");
  if (!tiles(tops, Y.left.value, Y.right.value)) fail("top floors do not tile Y");
  if (kac != t.length()) fail("Kac identity");
  return p;
}

// Finds (base, power) with T^power(beta(base)) = x, |power| <= bound.
inline std::optional<OrbitPoint> resolve_orbit_point(const Iet& t, const QuadReal& x, long bound) {
  if (x.sign() == Sign::zero) return OrbitPoint{0, 0, x};
  if (x == t.length()) return OrbitPoint{t.size(), 0, x};
  for (int j = 1; j < t.size(); ++j) {
    QuadReal f = t.beta(j), b = t.beta(j);
    for (long p = 0; p <= bound; ++p) {
      if (p) {
        f = t.apply(f);
        b = t.apply(b, Direction::inverse);
      }
      if (f == x) return OrbitPoint{j, p, x};
      if (b == x) return OrbitPoint{j, -p, x};
    }
  }
  return std::nullopt;
}

// Stage k of a shrink chain as an interval of the chain's first IET.
inline AdmissibleInterval stage_interval(const std::vector<InductionStep>& chain, std::size_t k, long bound) {
  const Iet& t = chain.front().parent;
  QuadReal a = stage_origin(chain, k);
  QuadReal b = a + stage_map(chain, k).length();
  auto l = resolve_orbit_point(t, a, bound), r = resolve_orbit_point(t, b, bound);
  if (!l || !r) throw Error(ErrorCode::consistency_violation, "stage endpoint not on a separation orbit");
  return {*l, *r};
}

// Product A_0 ... A_(k-1) of the first k step matrices.
inline IntMatrix chain_product(const std::vector<InductionStep>& chain, std::size_t k) {
  IntMatrix p = IntMatrix::identity(chain.front().parent.size());
  for (std::size_t i = 0; i < k; ++i) p = p * chain[i].A;
  return p;
}

struct BratteliDiagram {
  int rank = 0;
  std::vector<IntMatrix> edges;  // edges[k](l, m): multiplicity from L<k>_V<l+1> to L<k+1>_V<m+1>

  int levels() const { return edges.empty() ? 0 : static_cast<int>(edges.size()) + 1; }
};

// Edge matrices are the chain's step matrices. Each entry is recounted from
// the original map: the orbit of a stage-(k+1) tower base, followed until it
// returns, passes A(l, m) times through stage-k base l.
inline BratteliDiagram bratteli(const std::vector<InductionStep>& chain, long max_steps = default_max_steps) {
  BratteliDiagram d;
  if (chain.empty()) return d;
  const Iet& t = chain.front().parent;
  int n = t.size();
  d.rank = n;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const InductionStep& s = chain[k];
    QuadReal o = s.origin;
    QuadReal ja = o + s.J.left.value, jb = o + s.J.right.value;
    IntMatrix count(n, n);
    for (int m = 0; m < n; ++m) {
      QuadReal x = ja + s.induced.beta(m);
      long r = 0;
      do {
        if (++r > max_steps) throw Error(ErrorCode::return_time_exceeded, "bratteli recount");
        QuadReal rel = x - o;
        if (s.parent.contains(rel)) count(s.parent.locate(rel) - 1, m) += 1;
        x = t.apply(x);
      } while (!(ja <= x && x < jb));
    }
    if (count != s.A)
      throw Error(ErrorCode::consistency_violation,
                  "step " + std::to_string(k) + ": recount " + count.to_string() + " vs A " + s.A.to_string());
    d.edges.push_back(s.A);
  }
  return d;
}

inline std::string export_bratteli(const BratteliDiagram& d) {
  std::string s = "digraph bratteli {\n";
  auto node = [](std::size_t k, int i) { return "L" + std::to_string(k) + "_V" + std::to_string(i); };
  if (!d.edges.empty()) {
    for (std::size_t k = 0; k <= d.edges.size(); ++k)
      for (int i = 1; i <= d.rank; ++i) s += "  " + node(k, i) + ";\n";
    for (std::size_t k = 0; k < d.edges.size(); ++k)
      for (int l = 0; l < d.rank; ++l)
        for (int m = 0; m < d.rank; ++m)
          if (d.edges[k](l, m) > 0)
            s += "  " + node(k, l + 1) + " -> " + node(k + 1, m + 1) + " [label=\"" + d.edges[k](l, m).get_str() +
                 "\"];\n";
  }
  return s + "}\n";
}

// ---------------------------------------------------------------------------
// Dimension groups.

enum class GroupSource { induction_chain, strip_chain };

// Direct limit Z^n -> Z^n -> ... . Induction matrices satisfy
// alpha_k = A alpha_(k+1), so a class vector v at level k (pairing with
// alpha_k) becomes A^T v at level k+1. Strip incidences map old strip a to
// the new strips b with M(b, a) > 0, so they act as v -> M v.
struct DimensionGroup {
  int n = 0;
  std::vector<IntMatrix> matrices;  // matrices[k] connects level k to level k+1
  GroupSource source = GroupSource::induction_chain;

  int depth() const { return static_cast<int>(matrices.size()); }

  std::vector<Integer> step(const std::vector<Integer>& v, int k) const {
    const IntMatrix& m = matrices[static_cast<std::size_t>(k)];
    return source == GroupSource::induction_chain ? m.transpose().apply(v) : m.apply(v);
  }
  std::vector<Integer> push(std::vector<Integer> v, int from, int to) const {
    for (int k = from; k < to; ++k) v = step(v, k);
    return v;
  }
};

inline DimensionGroup dimension_group(const std::vector<InductionStep>& chain) {
  if (chain.empty()) throw Error(ErrorCode::invalid_argument, "empty chain");
  DimensionGroup g;
  g.n = chain.front().parent.size();
  for (const auto& s : chain) g.matrices.push_back(s.A);
  g.source = GroupSource::induction_chain;
  return g;
}

inline DimensionGroup dimension_group(const std::vector<StripLevel>& levels) {
  if (levels.empty()) throw Error(ErrorCode::invalid_argument, "no strip levels");
  DimensionGroup g;
  g.n = levels.front().n();
  g.matrices = strip_dimension_group_feed(levels);
  g.source = GroupSource::strip_chain;
  return g;
}

struct GroupElement {
  int level = 0;
  std::vector<Integer> vector;
};

enum class Positivity { zero, positive, nonpositive_witness, unknown };

inline const char* to_string(Positivity p) {
  switch (p) {
    case Positivity::zero: return "zero";
    case Positivity::positive: return "positive";
    case Positivity::nonpositive_witness: return "nonpositive_witness";
    case Positivity::unknown: return "unknown";
  }
  return "?";
}

struct PositivityResult {
  Positivity verdict = Positivity::unknown;
  int witness_level = -1;
  std::vector<Integer> image;  // the deciding image, or the last one tried
};

// Pushes x forward up to `horizon` levels. Positive once an image is
// entrywise > 0; a nonpositive witness once an image is <= 0 with a negative
// entry. Both are final because the connecting matrices are nonnegative.
inline PositivityResult positivity(const DimensionGroup& g, const GroupElement& x, int horizon) {
  if (horizon < 0 || x.level < 0 || x.level + horizon > g.depth())
    throw Error(ErrorCode::horizon_exceeds_depth, "level " + std::to_string(x.level) + " + horizon " +
                                                      std::to_string(horizon) + " > depth " + std::to_string(g.depth()));
  PositivityResult r;
  r.image = x.vector;
  if (std::all_of(r.image.begin(), r.image.end(), [](const Integer& v) { return v == 0; })) {
    r.verdict = Positivity::zero;
    r.witness_level = x.level;
    return r;
  }
  for (int s = 0; s <= horizon; ++s) {
    if (s) r.image = g.step(r.image, x.level + s - 1);
    bool pos = std::all_of(r.image.begin(), r.image.end(), [](const Integer& v) { return v > 0; });
    bool nonpos = std::all_of(r.image.begin(), r.image.end(), [](const Integer& v) { return v <= 0; });
    if (pos || nonpos) {
      r.verdict = pos ? Positivity::positive : Positivity::nonpositive_witness;
      r.witness_level = x.level + s;
      return r;
    }
  }
  return r;
}

enum class DualVerdict { consistent_positive, consistent_negative, boundary };

inline const char* to_string(DualVerdict v) {
  switch (v) {
    case DualVerdict::consistent_positive: return "consistent_positive";
    case DualVerdict::consistent_negative: return "consistent_negative";
    case DualVerdict::boundary: return "boundary";
  }
  return "?";
}

// Pairs x with one ray per cluster. The ray of product column j pairs with a
// level-0 vector v as (P^T v)_j / colsum_j, so x is pushed to the cone depth
// by transposes and each coordinate divided by its column sum.
inline DualVerdict dual_cone_test(const GroupElement& x, const ConeApprox& cone, const Rational& epsilon) {
  if (x.level > cone.depth()) throw Error(ErrorCode::horizon_exceeds_depth, "element deeper than the cone");
  std::vector<Integer> v = x.vector;
  for (int k = x.level; k < cone.depth(); ++k) v = cone.matrices[static_cast<std::size_t>(k)].transpose().apply(v);
  bool all_pos = true, all_neg = true;
  for (const auto& cl : cone.clusters) {
    int j = cl.front();
    Rational value(v[static_cast<std::size_t>(j)], cone.product.column_sum(j));
    value.canonicalize();
    all_pos = all_pos && value > epsilon;
    all_neg = all_neg && value < -epsilon;
  }
  if (all_pos) return DualVerdict::consistent_positive;
  if (all_neg) return DualVerdict::consistent_negative;
  return DualVerdict::boundary;
}

struct LSigma {
  IntMatrix matrix;
  Integer det;
  bool invertible = false;  // det != 0 (over Q)
};

inline LSigma l_sigma(const Permutation& sigma) {
  int n = sigma.size();
  LSigma r;
  r.matrix = IntMatrix(n, n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i > j && sigma(i) < sigma(j)) r.matrix(i - 1, j - 1) = 1;
      if (i < j && sigma(i) > sigma(j)) r.matrix(i - 1, j - 1) = -1;
    }
  r.det = r.matrix.determinant();
  r.invertible = r.det != 0;
  return r;
}

// ---------------------------------------------------------------------------
// Strips against induction.

// The Kakutani-Rokhlin partition of stage k: floors T^m(base_l) for
// m = 0..h_l - 1, over the stage-k bases, sorted by position.
inline std::vector<Floor> stage_floors(const std::vector<InductionStep>& chain, std::size_t k,
                                       long max_steps = default_max_steps) {
  const Iet& t = chain.front().parent;
  const Iet& m = stage_map(chain, k);
  QuadReal a = stage_origin(chain, k), b = a + m.length();
  std::vector<Floor> out;
  for (int l = 1; l <= m.size(); ++l) {
    QuadReal x = a + m.beta(l - 1);
    QuadReal len = m.alpha(l);
    long h = 0;
    do {
      if (++h > max_steps) throw Error(ErrorCode::return_time_exceeded, "stage floors");
      out.push_back({x, x + len, l});
      x = t.apply(x);
    } while (!(a <= x && x < b));
  }
  std::sort(out.begin(), out.end(), [](const Floor& x, const Floor& y) { return x.left < y.left; });
  return out;
}

// Count of floors of each tower inside [left, right), or nullopt when the
// interval is not a union of floors.
inline std::optional<std::vector<Integer>> interval_class(const std::vector<Floor>& floors, int n,
                                                          const QuadReal& left, const QuadReal& right) {
  std::vector<Integer> c(static_cast<std::size_t>(n));
  for (const auto& f : floors) {
    if (f.right <= left || f.left >= right) continue;
    if (f.left < left || f.right > right) return std::nullopt;
    c[static_cast<std::size_t>(f.tower - 1)] += 1;
  }
  return c;
}

struct StripAlignment {
  int level = 0;  // induction stage of the columns
  IntMatrix phi;  // column a: class of strip a in the induction group
};

// Expresses each strip of `level` (through its first segment) as a class of
// the induction group, at the first stage where every first segment is a
// union of floors. Stages beyond the chain are not searched.
inline std::optional<StripAlignment> align_strips(const std::vector<InductionStep>& chain, const StripLevel& level) {
  int n = level.n();
  for (std::size_t k = 0; k <= chain.size(); ++k) {
    auto floors = stage_floors(chain, k);
    StripAlignment al;
    al.level = static_cast<int>(k);
    al.phi = IntMatrix(n, n);
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) {
      const auto& seg = level.segments[static_cast<std::size_t>(level.strips[a].segments.front())];
      auto c = interval_class(floors, n, seg.left, seg.right);
      if (!c) {
        ok = false;
        break;
      }
      for (int i = 0; i < n; ++i) al.phi(i, a) = (*c)[static_cast<std::size_t>(i)];
    }
    if (ok) return al;
  }
  return std::nullopt;
}

}  // namespace ietlab
