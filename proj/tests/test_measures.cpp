#include "ietlab/measures.hpp"
#include "support.hpp"

using namespace ietlab;
using fixtures::q;

namespace {

double ray_entry(const ConeApprox& c, int j, int i) { return c.rays[j][i].get_d(); }

}  // namespace

TEST(Cone, Sqrt2SingleClusterAtLebesgue) {
  Iet t = fixtures::sqrt2();
  auto c = cone_approx(shrink_sequence(t, QuadReal(), 15), Rational(1, 1000000));
  EXPECT_EQ(c.nu_estimate, 1);
  EXPECT_EQ(c.depth(), 15);
  for (int j = 0; j < 2; ++j) {
    EXPECT_NEAR(ray_entry(c, j, 0), 0.41421356, 1e-6);
    EXPECT_NEAR(ray_entry(c, j, 1), 0.58578644, 1e-6);
  }
}

TEST(Cone, GoldenSingleCluster) {
  Iet t = fixtures::golden();
  auto c = cone_approx(shrink_sequence(t, QuadReal(), 15), Rational(1, 1000000));
  EXPECT_EQ(c.nu_estimate, 1);
  EXPECT_NEAR(ray_entry(c, 0, 0), 0.6180339887, 1e-6);
  EXPECT_NEAR(ray_entry(c, 1, 1), 0.3819660113, 1e-6);
}

TEST(Cone, ShallowDepthSeparatesRays) {
  auto c = cone_approx(std::vector<IntMatrix>{IntMatrix::identity(3)}, 3, Rational(1, 10));
  EXPECT_EQ(c.nu_estimate, 3);
  auto d = cone_approx(std::vector<IntMatrix>{IntMatrix{{1, 1}, {1, 1}}}, 2, Rational(1, 10));
  EXPECT_EQ(d.nu_estimate, 1);
}

TEST(Cone, RaysAreNested) {
  Iet t = fixtures::sqrt2();
  auto chain = shrink_sequence(t, q(1, 10), 12);
  IntMatrix p = IntMatrix::identity(2);
  for (const auto& s : chain) {
    IntMatrix next = p * s.A;
    for (int j = 0; j < 2; ++j) {
      std::vector<Integer> col{next(0, j), next(1, j)};
      auto x = solve_rational(p, col);
      ASSERT_EQ(x.size(), 2u);
      for (const auto& v : x) EXPECT_GE(v, 0);
    }
    p = next;
  }
}

TEST(Measure, Sqrt2Frequencies) {
  auto m = empirical_measure(fixtures::sqrt2(), QuadReal(), 0, 10000);
  EXPECT_NEAR(m.normalized[0].get_d(), 0.41421356, 1e-2);
  EXPECT_EQ(m.counts[0] + m.counts[1], 10001);
  EXPECT_EQ(m.raw[0] + m.raw[1], Rational(10001, 10000));
  EXPECT_EQ(m.normalized[0] + m.normalized[1], 1);
}

TEST(Measure, RationalRotationPeriod) {
  Iet t(Permutation({2, 1}), {q(1, 3), q(2, 3)});
  auto m = empirical_measure(t, QuadReal(), 0, 2);
  EXPECT_EQ(m.normalized, (std::vector<Rational>{Rational(1, 3), Rational(2, 3)}));
}

TEST(Measure, SingleStep) {
  auto m = empirical_measure(fixtures::sqrt2(), QuadReal(), 0, 1);
  // 0 in I(1), T(0) = 2 - sqrt2 in I(2)
  EXPECT_EQ(m.counts, (std::vector<long>{1, 1}));
  EXPECT_EQ(m.raw, (std::vector<Rational>{Rational(1), Rational(1)}));
  EXPECT_IETLAB_ERROR(empirical_measure(fixtures::sqrt2(), QuadReal(), 0, 0), ErrorCode::invalid_argument);
}

TEST(Certificate, QuadraticExamples) {
  auto s = unique_ergodicity_certificate(shrink_sequence(fixtures::sqrt2(), QuadReal(), 10), 2);
  EXPECT_TRUE(s.certified);
  auto g = unique_ergodicity_certificate(shrink_sequence(fixtures::golden(), QuadReal(), 12), 3);
  EXPECT_TRUE(g.certified);
  for (std::size_t b = 1; b < g.blocks.size(); ++b) EXPECT_GT(g.blocks[b].first, g.blocks[b - 1].second);
}

TEST(Certificate, GreedyBlocks) {
  IntMatrix u{{1, 1}, {0, 1}}, l{{1, 0}, {1, 1}};
  auto c = unique_ergodicity_certificate(std::vector<IntMatrix>{IntMatrix::identity(2), u, l, u, u, l}, 2);
  ASSERT_EQ(c.blocks.size(), 2u);
  EXPECT_EQ(c.blocks[0], (std::pair<std::size_t, std::size_t>{0, 2}));
  EXPECT_EQ(c.blocks[1], (std::pair<std::size_t, std::size_t>{3, 5}));
  EXPECT_FALSE(unique_ergodicity_certificate(std::vector<IntMatrix>{u, u, u}, 1).certified);
}
