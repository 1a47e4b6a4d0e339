#pragma once

// First-return maps on admissible intervals and shrinking chains of them.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "error.hpp"
#include "iet.hpp"
#include "matrix.hpp"

namespace ietlab {

inline constexpr long default_max_steps = 1'000'000;

struct AdmissibleInterval {
  OrbitPoint left;
  OrbitPoint right;

  QuadReal length() const { return right.value - left.value; }
  bool contains(const QuadReal& x) const { return left.value <= x && x < right.value; }
};

struct AdmissibilityViolation {
  int endpoint;  // 0 = left, 1 = right
  long m;
  QuadReal witness;  // T^m of the generating separation point, inside J
};

struct AdmissibilityResult {
  bool admissible = true;
  std::optional<AdmissibilityViolation> violation;
};

namespace detail {

// Rewrites T^p(0) as T^(p+1)(beta(i0-1)) where T(beta(i0-1)) = 0.
inline OrbitPoint rebase_zero(const Iet& t, OrbitPoint p) {
  if (p.base != 0 || p.power == 0) return p;
  int i0 = t.sigma().inverse(1) - 1;
  if (i0 == 0) throw Error(ErrorCode::reducible, "sigma(1) = 1");
  return {i0, p.power + 1, p.value};
}

}  // namespace detail

// Checks the no-intermediate-visit conditions for each endpoint: exponent
// e >= 0 forbids T^m beta in J for 0 < m < e, exponent e < 0 forbids it for
// e < m <= 0. The points 0 and beta(n) with exponent 0 always qualify.
inline AdmissibilityResult is_admissible(const Iet& t, const OrbitPoint& a, const OrbitPoint& b) {
  if (!t.contains(a.value) || b.value.sign() != Sign::positive || b.value > t.length())
    throw Error(ErrorCode::out_of_domain, "interval endpoints outside the domain");
  if (!(a.value < b.value)) throw Error(ErrorCode::invalid_argument, "empty interval");
  AdmissibleInterval j{a, b};
  AdmissibilityResult r;
  const OrbitPoint* ends[2] = {&a, &b};
  for (int e = 0; e < 2; ++e) {
    OrbitPoint p = *ends[e];
    if (orbit_point(t, p.base, p.power).value != p.value)
      throw Error(ErrorCode::invalid_argument, "orbit point value does not match its base and power");
    if (p.power == 0 && (p.base == 0 || p.base == t.size())) continue;
    p = detail::rebase_zero(t, p);
    long lo = p.power >= 0 ? 1 : p.power + 1;
    long hi = p.power >= 0 ? p.power - 1 : 0;
    QuadReal x = t.iterate(t.beta(p.base), lo);
    for (long m = lo; m <= hi; ++m) {
      if (m > lo) x = t.apply(x);
      if (j.contains(x)) {
        r.admissible = false;
        r.violation = AdmissibilityViolation{e, m, x};
        return r;
      }
    }
  }
  return r;
}

inline AdmissibleInterval whole_interval(const Iet& t) {
  return {orbit_point(t, 0, 0), orbit_point(t, t.size(), 0)};
}

// [beta(i-1), beta(i)).
inline AdmissibleInterval subinterval(const Iet& t, int i) {
  return {orbit_point(t, i - 1, 0), orbit_point(t, i, 0)};
}

struct InductionStep {
  Iet parent;
  AdmissibleInterval J;
  Iet induced;  // the first-return map on J, translated to [0, |J|)
  IntMatrix A;  // A(i,j) = visits of block j to parent interval i before returning
  std::vector<long> return_times;
  std::vector<OrbitPoint> cuts;  // left ends of the induced intervals, as parent orbit points
  QuadReal origin;               // position of the parent's 0 in the chain's first IET
};

// Throws InductionFailure unless alpha = A alpha', det A = +-1, the column
// sums of A are the return times and Kac's identity holds.
inline void verify_step(const InductionStep& s) {
  int n = s.parent.size();
  auto fail = [](const std::string& what) { throw Error(ErrorCode::induction_failure, what); };
  if (s.A.rows() != n || s.A.cols() != n || s.induced.size() != n) fail("shape");
  if (!s.A.nonnegative()) fail("negative entry in A");
  if (s.A.apply(s.induced.lengths()) != s.parent.lengths()) fail("alpha != A alpha'");
  Integer det = s.A.determinant();
  if (det != 1 && det != -1) fail("det A = " + det.get_str());
  QuadReal kac;
  for (int j = 0; j < n; ++j) {
    if (s.A.column_sum(j) != s.return_times[j]) fail("column sum differs from return time");
    kac += QuadReal(s.return_times[j]) * s.induced.alpha(j + 1);
  }
  if (kac != s.parent.length()) fail("Kac identity");
}

namespace detail {

// Left-limit inverse: the point y' with T(y' - 0) = y - 0, for y in (0, |alpha|].
// At an endpoint of some I'(v) the orbit continues from the separation point
// beta(sigma^-1(v)), so the orbit-point base changes.
inline OrbitPoint inverse_left(const Iet& t, const OrbitPoint& y) {
  int lo = 1, hi = t.size();
  while (lo < hi) {  // smallest v with y <= beta'(v)
    int mid = (lo + hi) / 2;
    if (y.value <= t.beta_prime(mid)) hi = mid;
    else lo = mid + 1;
  }
  int i = t.sigma().inverse(lo);
  if (y.value == t.beta_prime(lo)) return {i, 0, t.beta(i)};
  return {y.base, y.power - 1, y.value - t.tau(i)};
}

}  // namespace detail

// First-return map of T on the admissible interval J. With
// check_admissible = false any interval whose endpoints lie on separation
// orbits is accepted, provided the return map still has exactly n blocks
// (nested stages of a shrink chain are admissible for their parent map but
// need not be for T itself).
inline InductionStep induce(const Iet& t, const AdmissibleInterval& J, long max_steps = default_max_steps,
                            bool check_admissible = true) {
  auto adm = check_admissible ? is_admissible(t, J.left, J.right) : AdmissibilityResult{};
  if (!adm.admissible)
    throw Error(ErrorCode::not_admissible, std::string(adm.violation->endpoint ? "right" : "left") +
                                               " endpoint visits J at m = " + std::to_string(adm.violation->m));
  const QuadReal& a = J.left.value;
  const QuadReal& b = J.right.value;
  int n = t.size();
  auto exceeded = [&]() { return Error(ErrorCode::return_time_exceeded, "max_steps = " + std::to_string(max_steps)); };

  // Points of J where the first-return map is discontinuous.
  std::map<QuadReal, OrbitPoint> cuts;
  for (int j = 1; j < n; ++j) {
    OrbitPoint p{j, 0, t.beta(j)};
    while (!J.contains(p.value)) {
      if (-p.power >= max_steps) throw exceeded();
      p = {p.base, p.power - 1, t.apply(p.value, Direction::inverse)};
    }
    if (p.value != a) cuts.emplace(p.value, p);
  }
  {
    OrbitPoint p = J.left;
    long steps = 0;
    do {
      if (++steps > max_steps) throw exceeded();
      p = {p.base, p.power - 1, t.apply(p.value, Direction::inverse)};
    } while (!J.contains(p.value));
    if (p.value != a) cuts.emplace(p.value, p);
  }
  {
    OrbitPoint p = J.right;
    long steps = 0;
    while (true) {
      if (++steps > max_steps) throw exceeded();
      p = detail::inverse_left(t, p);
      if (a < p.value && p.value <= b) break;
    }
    if (p.value == b) throw Error(ErrorCode::induction_failure, "right endpoint has a periodic orbit");
    cuts.emplace(p.value, p);
  }
  if (static_cast<int>(cuts.size()) != n - 1)
    throw Error(ErrorCode::induction_failure,
                std::to_string(cuts.size() + 1) + " return blocks instead of " + std::to_string(n));

  InductionStep s;
  s.parent = t;
  s.J = J;
  s.A = IntMatrix(n, n);
  s.cuts.push_back(J.left);
  for (auto& [x, p] : cuts) s.cuts.push_back(p);
  std::vector<QuadReal> lens(n), images(n);
  s.return_times.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    QuadReal left = s.cuts[j].value;
    QuadReal right = j + 1 < n ? s.cuts[j + 1].value : b;
    lens[j] = right - left;
    QuadReal x = left;
    long r = 0;
    do {
      if (++r > max_steps) throw exceeded();
      int i = t.locate(x);
      if (x + lens[j] > t.beta(i)) throw Error(ErrorCode::induction_failure, "return block split by a separation point");
      s.A(i - 1, j) += 1;
      x = x + t.tau(i);
    } while (!J.contains(x));
    if (x + lens[j] > b) throw Error(ErrorCode::induction_failure, "return block leaves J");
    s.return_times[j] = r;
    images[j] = x - a;
  }
  // sigma' ranks the returned blocks by position; they must tile J.
  std::vector<int> order(n);
  for (int j = 0; j < n; ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return images[x] < images[y]; });
  std::vector<int> sigma_images(n);
  QuadReal pos;
  for (int r = 0; r < n; ++r) {
    if (images[order[r]] != pos) throw Error(ErrorCode::induction_failure, "returned blocks do not tile J");
    pos += lens[order[r]];
    sigma_images[order[r]] = r + 1;
  }
  s.induced = Iet(Permutation(sigma_images), lens);
  verify_step(s);
  return s;
}

enum class Side { left, right };

// J_1 is the whole interval (identity step); J_(k+1) is the interval of the
// k-th induced map that contains y0. Without `side`, y0 landing exactly on a
// separation point throws DegenerateError. With side = right the interval
// starting at y0 is taken, with side = left the one ending at y0.
inline std::vector<InductionStep> shrink_sequence(const Iet& t, const QuadReal& y0, int depth,
                                                  long max_steps = default_max_steps,
                                                  std::optional<Side> side = std::nullopt) {
  if (depth < 1) throw Error(ErrorCode::invalid_argument, "depth must be >= 1");
  if (side == Side::left ? (y0.sign() != Sign::positive || y0 > t.length()) : !t.contains(y0))
    throw Error(ErrorCode::out_of_domain, "y0 = " + y0.to_string());
  std::vector<InductionStep> chain;
  chain.push_back(induce(t, whole_interval(t), max_steps));
  QuadReal origin;
  for (int k = 1; k < depth; ++k) {
    const Iet& cur = chain.back().induced;
    QuadReal rel = y0 - origin;
    int i = side == Side::left ? cur.locate_left(rel) : cur.locate(rel);
    if (!side) {
      for (int j = 1; j < cur.size(); ++j)
        if (rel == cur.beta(j)) throw DegenerateError(k);
    }
    InductionStep s = induce(cur, subinterval(cur, i), max_steps);
    s.origin = origin;
    origin += cur.beta(i - 1);
    chain.push_back(std::move(s));
  }
  return chain;
}

// Absolute position of the left end of stage k's interval (k = 0 is the
// whole interval) in the chain's first IET.
inline QuadReal stage_origin(const std::vector<InductionStep>& chain, std::size_t k) {
  if (k == 0) return QuadReal();
  const auto& s = chain[k - 1];
  return s.origin + s.J.left.value;
}

// The IET acting on stage k (k = 0 is the original map).
inline const Iet& stage_map(const std::vector<InductionStep>& chain, std::size_t k) {
  return k == 0 ? chain.front().parent : chain[k - 1].induced;
}

struct Periodicity {
  std::size_t start;   // first step index of the repeating block
  std::size_t period;  // number of steps per block
};

// Detects an eventually periodic shrink chain. The state of stage k is
// (sigma, alpha/|alpha|, (y0 - origin)/|alpha|); it determines every later
// step, so a repeated state proves periodicity. Returns the earliest start
// and the shortest period seen within the chain.
inline std::optional<Periodicity> detect_period(const std::vector<InductionStep>& chain, const QuadReal& y0) {
  std::map<std::tuple<Permutation, std::vector<QuadReal>, QuadReal>, std::size_t> seen;
  for (std::size_t k = 1; k <= chain.size(); ++k) {
    const Iet& m = stage_map(chain, k);
    QuadReal inv = m.length().inverse();
    std::vector<QuadReal> v;
    for (const auto& x : m.lengths()) v.push_back(x * inv);
    auto [it, fresh] = seen.emplace(std::tuple{m.sigma(), std::move(v), (y0 - stage_origin(chain, k)) * inv}, k);
    if (!fresh) return Periodicity{it->second, k - it->second};
  }
  return std::nullopt;
}

}  // namespace ietlab
