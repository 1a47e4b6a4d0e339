#pragma once

// Interval exchange transformations T(sigma, alpha) on [0, |alpha|).
//
// Indices follow the usual 1-based conventions: I(i) = [beta(i-1), beta(i))
// for i = 1..n is translated by tau(i) onto I'(sigma(i)).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "permutation.hpp"
#include "quadreal.hpp"

namespace ietlab {

enum class Direction { forward, inverse };

class Iet {
 public:
  Iet() = default;
  Iet(Permutation sigma, std::vector<QuadReal> alpha) : sigma_(std::move(sigma)), alpha_(std::move(alpha)) {
    int n = sigma_.size();
    if (n < 2) throw Error(ErrorCode::invalid_argument, "an IET needs n >= 2");
    if (static_cast<int>(alpha_.size()) != n)
      throw Error(ErrorCode::invalid_argument, "alpha has " + std::to_string(alpha_.size()) +
                                                   " entries, sigma has " + std::to_string(n));
    QuadReal probe;
    for (const auto& a : alpha_) {
      if (a.sign() != Sign::positive) throw Error(ErrorCode::non_positive_length, a.to_string());
      probe = probe + a;  // throws MixedRadicand
    }
    beta_.assign(n + 1, QuadReal());
    beta_prime_.assign(n + 1, QuadReal());
    for (int i = 1; i <= n; ++i) beta_[i] = beta_[i - 1] + alpha_[i - 1];
    for (int v = 1; v <= n; ++v) beta_prime_[v] = beta_prime_[v - 1] + alpha_[sigma_.inverse(v) - 1];
    tau_.resize(n);
    for (int i = 1; i <= n; ++i) tau_[i - 1] = beta_prime_[sigma_(i) - 1] - beta_[i - 1];
  }

  int size() const { return sigma_.size(); }
  const Permutation& sigma() const { return sigma_; }
  const std::vector<QuadReal>& lengths() const { return alpha_; }
  const QuadReal& alpha(int i) const { return alpha_[i - 1]; }
  const QuadReal& beta(int i) const { return beta_[i]; }
  const QuadReal& beta_prime(int i) const { return beta_prime_[i]; }
  const QuadReal& tau(int i) const { return tau_[i - 1]; }
  const QuadReal& length() const { return beta_.back(); }

  bool contains(const QuadReal& x) const { return x.sign() != Sign::negative && x < length(); }

  // Index i with x in I(i).
  int locate(const QuadReal& x) const {
    require_domain(x);
    return static_cast<int>(std::upper_bound(beta_.begin() + 1, beta_.end(), x) - beta_.begin());
  }
  // Index i with beta(i-1) < x <= beta(i), for x in (0, |alpha|].
  int locate_left(const QuadReal& x) const {
    if (x.sign() != Sign::positive || x > length())
      throw Error(ErrorCode::out_of_domain, x.to_string() + " not in (0, " + length().to_string() + "]");
    return static_cast<int>(std::lower_bound(beta_.begin() + 1, beta_.end(), x) - beta_.begin());
  }
  // Index v with x in I'(v) = [beta'(v-1), beta'(v)).
  int locate_image(const QuadReal& x) const {
    require_domain(x);
    return static_cast<int>(std::upper_bound(beta_prime_.begin() + 1, beta_prime_.end(), x) - beta_prime_.begin());
  }

  QuadReal apply(const QuadReal& x, Direction dir = Direction::forward) const {
    if (dir == Direction::forward) return x + tau(locate(x));
    return x - tau(sigma_.inverse(locate_image(x)));
  }

  // T^k(x) for any integer k.
  QuadReal iterate(QuadReal x, long k) const {
    Direction dir = k < 0 ? Direction::inverse : Direction::forward;
    for (long s = 0; s < (k < 0 ? -k : k); ++s) x = apply(x, dir);
    return x;
  }

  // T^k(x) for k = from..to.
  std::vector<QuadReal> orbit(const QuadReal& x, long from, long to) const {
    if (from > to) throw Error(ErrorCode::invalid_argument, "orbit needs from <= to");
    std::vector<QuadReal> out;
    out.reserve(static_cast<std::size_t>(to - from + 1));
    out.push_back(iterate(x, from));
    for (long k = from + 1; k <= to; ++k) out.push_back(apply(out.back()));
    return out;
  }

 private:
  void require_domain(const QuadReal& x) const {
    if (!contains(x))
      throw Error(ErrorCode::out_of_domain, x.to_string() + " not in [0, " + length().to_string() + ")");
  }

  Permutation sigma_;
  std::vector<QuadReal> alpha_;
  std::vector<QuadReal> beta_;
  std::vector<QuadReal> beta_prime_;
  std::vector<QuadReal> tau_;
};

// A point T^power(beta(base)); base 0 denotes the point 0 itself.
struct OrbitPoint {
  int base = 0;
  long power = 0;
  QuadReal value;
};

inline OrbitPoint orbit_point(const Iet& t, int base, long power) {
  if (base < 0 || base > t.size()) throw Error(ErrorCode::invalid_argument, "orbit base out of range");
  if (base == t.size()) {
    if (power != 0) throw Error(ErrorCode::out_of_domain, "beta(n) lies outside the domain");
    return {base, 0, t.length()};
  }
  return {base, power, t.iterate(t.beta(base), power)};
}

struct IdocWitness {
  int i;
  long k;
  int j;
  long l;
  QuadReal value;  // T^k beta(i) = T^l beta(j)
};

struct IdocResult {
  enum class Status { verified_to_depth, failed };
  Status status = Status::verified_to_depth;
  long depth = 0;
  bool reducible = false;
  std::optional<IdocWitness> witness;

  bool verified() const { return status == Status::verified_to_depth; }
  std::string describe() const {
    if (verified()) return "verified_to_depth(" + std::to_string(depth) + ")";
    if (reducible) return "failed: sigma reducible";
    const auto& w = *witness;
    return "failed: T^" + std::to_string(w.k) + " beta(" + std::to_string(w.i) + ") = T^" + std::to_string(w.l) +
           " beta(" + std::to_string(w.j) + ") = " + w.value.to_string();
  }
};

// Depth-bounded check of the infinite distinct orbit condition: sigma is
// irreducible and the points T^k beta(i), 1 <= i < n, 0 <= k <= depth, are
// pairwise distinct.
inline IdocResult idoc_check(const Iet& t, long depth) {
  if (depth < 1) throw Error(ErrorCode::invalid_argument, "idoc depth must be >= 1");
  IdocResult r;
  r.depth = depth;
  if (!irreducible(t.sigma())) {
    r.status = IdocResult::Status::failed;
    r.reducible = true;
    return r;
  }
  std::map<QuadReal, std::pair<int, long>> seen;
  std::vector<QuadReal> cur;
  for (int i = 1; i < t.size(); ++i) cur.push_back(t.beta(i));
  // Breadth-first in k so the reported witness has the smallest exponent.
  for (long k = 0; k <= depth; ++k) {
    for (int i = 1; i < t.size(); ++i) {
      auto& x = cur[i - 1];
      if (k > 0) x = t.apply(x);
      auto [it, fresh] = seen.emplace(x, std::make_pair(i, k));
      if (!fresh) {
        r.status = IdocResult::Status::failed;
        r.witness = IdocWitness{i, k, it->second.first, it->second.second, x};
        return r;
      }
    }
  }
  return r;
}

}  // namespace ietlab
