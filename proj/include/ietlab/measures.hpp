#pragma once

// Invariant-measure cones, empirical measures and the positive-block
// certificate for unique ergodicity.

#include <numeric>
#include <utility>
#include <vector>

#include "induction.hpp"
#include "matrix.hpp"

namespace ietlab {

struct ConeApprox {
  int n = 0;
  std::vector<IntMatrix> matrices;  // the chain's A_1..A_depth
  IntMatrix product;                // A_1 ... A_depth
  std::vector<std::vector<Rational>> rays;  // product columns scaled to sum 1
  std::vector<std::vector<int>> clusters;   // ray indices, each sorted
  int nu_estimate = 0;

  int depth() const { return static_cast<int>(matrices.size()); }
};

inline Rational max_norm_distance(const std::vector<Rational>& x, const std::vector<Rational>& y) {
  Rational d = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, Rational(abs(x[i] - y[i])));
  return d;
}

// Rays are clustered by single linkage: two rays share a cluster when a chain
// of rays at pairwise max-norm distance < epsilon joins them.
inline ConeApprox cone_approx(const std::vector<IntMatrix>& matrices, int n, const Rational& epsilon) {
  ConeApprox c;
  c.n = n;
  c.matrices = matrices;
  c.product = IntMatrix::identity(n);
  for (const auto& a : matrices) c.product = c.product * a;
  for (int j = 0; j < n; ++j) {
    Integer s = c.product.column_sum(j);
    std::vector<Rational> ray(n);
    for (int i = 0; i < n; ++i) ray[i] = Rational(c.product(i, j), s);
    for (auto& x : ray) x.canonicalize();
    c.rays.push_back(std::move(ray));
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (max_norm_distance(c.rays[i], c.rays[j]) < epsilon) parent[find(j)] = find(i);
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(c.clusters.size());
      c.clusters.emplace_back();
    }
    c.clusters[slot[r]].push_back(i);
  }
  c.nu_estimate = static_cast<int>(c.clusters.size());
  return c;
}

inline ConeApprox cone_approx(const std::vector<InductionStep>& chain, const Rational& epsilon) {
  if (chain.empty()) throw Error(ErrorCode::invalid_argument, "empty chain");
  std::vector<IntMatrix> ms;
  for (const auto& s : chain) ms.push_back(s.A);
  return cone_approx(ms, chain.front().parent.size(), epsilon);
}

struct MeasureVector {
  std::vector<long> counts;          // visits to I(j) over the window
  std::vector<Rational> raw;         // counts / n_steps
  std::vector<Rational> normalized;  // counts / (n_steps + 1)
};

// Visit frequencies of T^i(p) for i = m..m+n_steps (inclusive, n_steps + 1
// terms).
inline MeasureVector empirical_measure(const Iet& t, const QuadReal& p, long m, long n_steps) {
  if (m < 0 || n_steps < 1) throw Error(ErrorCode::invalid_argument, "need m >= 0 and n_steps >= 1");
  MeasureVector v;
  v.counts.assign(t.size(), 0);
  QuadReal x = t.iterate(p, m);
  for (long i = 0; i <= n_steps; ++i) {
    if (i) x = t.apply(x);
    ++v.counts[t.locate(x) - 1];
  }
  for (long c : v.counts) {
    v.raw.push_back(Rational(c, n_steps));
    v.normalized.push_back(Rational(c, n_steps + 1));
  }
  for (auto& r : v.raw) r.canonicalize();
  for (auto& r : v.normalized) r.canonicalize();
  return v;
}

struct ErgodicityCertificate {
  bool certified = false;
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // inclusive step ranges
};

// Greedy scan for disjoint ranges [i..j] of chain steps whose product is
// entrywise positive. Taking the earliest possible end each time maximizes
// the number of blocks. Certified means only that `required_blocks` such
// blocks occur within the chain, not that infinitely many exist.
inline ErgodicityCertificate unique_ergodicity_certificate(const std::vector<IntMatrix>& matrices,
                                                           int required_blocks) {
  ErgodicityCertificate c;
  std::size_t i = 0;
  while (i < matrices.size()) {
    IntMatrix p = matrices[i];
    std::size_t j = i;
    while (!p.positive() && j + 1 < matrices.size()) p = p * matrices[++j];
    if (!p.positive()) break;
    c.blocks.emplace_back(i, j);
    i = j + 1;
  }
  c.certified = static_cast<int>(c.blocks.size()) >= required_blocks;
  return c;
}

inline ErgodicityCertificate unique_ergodicity_certificate(const std::vector<InductionStep>& chain,
                                                           int required_blocks) {
  std::vector<IntMatrix> ms;
  for (const auto& s : chain) ms.push_back(s.A);
  return unique_ergodicity_certificate(ms, required_blocks);
}

}  // namespace ietlab
