// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "csv_check.hpp"
#include "oracle.hpp"
#include "ietlab/cli.hpp"
#include "ietlab/ktheory.hpp"
#include "ietlab/measures.hpp"
#include "ietlab/suspension.hpp"

using namespace ietlab;
namespace fs = std::filesystem;

namespace {

QuadReal q(long num, long den = 1) { return QuadReal(Rational(num, den)); }

Iet sqrt2_map() {
  auto r = sqrt_of(2);
  return Iet(Permutation({2, 1}), {r - 1, 2 - r});
}

Iet golden_map() {
  auto r = sqrt_of(5);
  return Iet(Permutation({2, 1}), {(r - 1) * q(1, 2), (3 - r) * q(1, 2)});
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// 1. Worked strip example.
Outcome strip_example() {
  Outcome o;
  auto t0 = Clock::now();
  auto levels = strip_decomposition(sqrt2_map(), 2);
  double dt = seconds_since(t0);
  o.require(levels.size() == 2, "levels");
  o.require(levels[0].raw_K == 4, "raw K " + std::to_string(levels[0].raw_K));
  o.require(levels[0].K == 5, "level-1 K " + std::to_string(levels[0].K));
  o.require(levels[1].K == 7, "level-2 K " + std::to_string(levels[1].K));
  for (const auto& L : levels) o.require(L.n() == 2, "strip count");
  o.require(dt < 1.0, "runtime");
  o.detail << (o.pass ? "" : "; ") << "raw K=4, K=5, 7, 2 strips each, " << dt << " s";
  return o;
}

// 2. Randomized unimodular induction over Q(sqrt 2).
Outcome induction_suite() {
  Outcome o;
  auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  int done = 0, rejected_idoc = 0, rejected_budget = 0;
  while (done < 100) {
    int n = 2 + done % 5;
    std::vector<QuadReal> a;
    for (int i = 0; i < n; ++i) a.push_back(oracle::random_length(rng));
    Iet t(oracle::random_irreducible(rng, n), a);
    if (!idoc_check(t, 200).verified()) {
      ++rejected_idoc;
      continue;
    }
    int i = static_cast<int>(rng() % static_cast<unsigned>(n));  // [beta(i), beta(i+1))
    InductionStep s, s2;
    try {
      s = induce(t, subinterval(t, i + 1));
      int j = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
      s2 = induce(s.induced, subinterval(s.induced, j));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::return_time_exceeded) throw;
      ++rejected_budget;
      continue;
    }
    ++done;
    o.require(s.A.apply(s.induced.lengths()) == t.lengths(), "alpha = A alpha'");
    Integer det = s.A.determinant();
    o.require(det == 1 || det == -1, "det");
    QuadReal kac;
    for (int m = 1; m <= n; ++m) kac += s.induced.alpha(m) * QuadReal(s.return_times[m - 1]);
    o.require(kac == t.length(), "Kac");
    o.require(s.A.nonnegative() && s2.A.nonnegative(), "nonnegative");
    // Extreme rays of A1 A2 Lambda lie in A1 Lambda: A1 x = column, x >= 0.
    IntMatrix p = s.A * s2.A;
    for (int c = 0; c < n; ++c) {
      std::vector<Integer> col;
      for (int r = 0; r < n; ++r) col.emplace_back(p(r, c));
      auto x = solve_rational(s.A, col);
      bool inside = x.size() == static_cast<std::size_t>(n);
      for (const auto& v : x) inside = inside && v >= 0;
      o.require(inside, "nested cone");
    }
  }
  double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime");
  o.detail << (o.pass ? "" : "; ") << done << " maps (" << rejected_idoc << " resampled for IDOC, "
           << rejected_budget << " for return-time budget), " << dt << " s";
  return o;
}

// 3. Towers against induction along shrink chains.
Outcome tower_equivalence() {
  Outcome o;
  int stages = 0;
  for (auto [name, t] : {std::pair{"sqrt2", sqrt2_map()}, std::pair{"golden", golden_map()}}) {
    for (QuadReal y0 : {QuadReal(), q(1, 10)}) {
      auto chain = shrink_sequence(t, y0, 10);
      oracle::FloatIet f(t);
      for (std::size_t k = 0; k <= chain.size(); ++k) {
        ++stages;
        auto J = stage_interval(chain, k, 100000);
        // Stage intervals are admissible for their parent induced map.
        auto p = towers(t, J, default_max_steps, false);
        IntMatrix prod = chain_product(chain, k);
        const Iet& m = stage_map(chain, k);
        oracle::Dec a = oracle::to_dec(J.left.value), b = oracle::to_dec(J.right.value);
        for (int l = 0; l < t.size(); ++l) {
          const auto& tw = p.towers[static_cast<std::size_t>(l)];
          o.require(tw.base_right - tw.base_left == m.alpha(l + 1), std::string(name) + " base length");
          o.require(Integer(tw.height) == prod.column_sum(l), std::string(name) + " height vs product");
          oracle::Dec mid = (oracle::to_dec(tw.base_left) + oracle::to_dec(tw.base_right)) / 2;
          o.require(f.first_return(mid, a, b, 10000000).first == tw.height, std::string(name) + " return oracle");
        }
      }
      bratteli(chain);  // throws ConsistencyViolation if a recount differs from A
    }
  }
  o.detail << (o.pass ? "" : "; ") << stages << " stages, heights = return times = column sums, recounts = A";
  return o;
}

// 4. Unique ergodicity certificate and empirical measure.
Outcome ergodicity() {
  Outcome o;
  auto t0 = Clock::now();
  std::ostringstream d;
  for (auto [name, t, target] : {std::tuple{"sqrt2", sqrt2_map(), std::sqrt(2.0) - 1},
                                 std::tuple{"golden", golden_map(), (std::sqrt(5.0) - 1) / 2}}) {
    auto cert = unique_ergodicity_certificate(shrink_sequence(t, QuadReal(), 10), 2);
    o.require(cert.certified, std::string(name) + " certificate");
    auto mv = empirical_measure(t, QuadReal(), 0, 10000);
    double l1 = mv.raw[0].get_d();
    o.require(std::abs(l1 - target) < 1e-2, std::string(name) + " lambda_1");
    d << name << ": " << cert.blocks.size() << " blocks, lambda_1=" << l1 << "; ";
  }
  double dt = seconds_since(t0);
  o.require(dt < 10.0, "runtime");
  o.detail << (o.pass ? "" : "; ") << d.str() << dt << " s";
  return o;
}

// 5. Suspension combinatorics, exhaustive for n <= 7.
Outcome suspension() {
  Outcome o;
  long checked = 0, counted = 0;
  for (int n = 2; n <= 7; ++n)
    for (const auto& sigma : all_permutations(n)) {
      if (!irreducible(sigma)) continue;
      ++checked;
      auto p = singularity_profile(sigma);
      std::vector<int> seen(static_cast<std::size_t>(n + 1));
      for (int v : p.sigma0) seen[static_cast<std::size_t>(v)]++;
      o.require(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }), "sigma0 bijective");
      for (int j = 1; j < n; ++j) {
        bool fake = std::find(p.fake_saddles.begin(), p.fake_saddles.end(), j) != p.fake_saddles.end();
        o.require(fake == (p.sigma0[static_cast<std::size_t>(j)] == j), "fake saddle iff fixed point");
      }
      if (p.closed_transversal) o.require(p.sigma0[static_cast<std::size_t>(n)] == 0, "closed transversal");
      if (p.fake_saddles.empty() && p.zero_and_n_share_cycle) {
        ++counted;
        o.require((n + 1 - p.N) % 2 == 0, "parity of n+1-N");
        o.require(p.genus && *p.genus == (n + 1 - p.N) / 2, "genus");
        int l = static_cast<int>(p.singularities.size());
        o.require(p.genus && n == 2 * *p.genus + l - 1, "n = 2g + l - 1 for " + sigma.to_string());
      }
    }
  auto spot = singularity_profile(Permutation({3, 1, 4, 2}));
  o.require(spot.genus == 2 && spot.singularities.size() == 1 && spot.singularities[0].multiplicity == 2 &&
                spot.singularities[0].prongs == 6,
            "(3 1 4 2) spot values");
  o.detail << (o.pass ? "" : "; ") << checked << " irreducible permutations, " << counted
           << " with the interval count checked; (3 1 4 2): g=2, one order-2 zero, 6 prongs";
  return o;
}

// 6. L^sigma.
Outcome lsigma() {
  Outcome o;
  long anti = 0, odd = 0;
  for (int n = 1; n <= 7; ++n)
    for (const auto& sigma : all_permutations(n)) {
      auto l = l_sigma(sigma);
      if (n <= 6) {
        ++anti;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) o.require(l.matrix(i, j) == -l.matrix(j, i), "antisymmetry");
      }
      if (n % 2 == 1) {
        ++odd;
        o.require(l.det == 0, "odd determinant");
      }
    }
  o.require(l_sigma(Permutation({2, 1})).det == 1, "(2 1) det");
  o.detail << (o.pass ? "" : "; ") << anti << " antisymmetric, " << odd << " odd-n determinants zero, det L(2 1) = 1";
  return o;
}

struct Agreement {
  int agree = 0, disagree = 0, undecided = 0, positive = 0, dual_ok = 0, dual_bad = 0;
};

Agreement compare_groups(const Iet& t, unsigned seed, std::string& note) {
  Agreement a;
  auto chain = shrink_sequence(t, QuadReal(), 10);
  auto levels = strip_decomposition(t, 10);
  auto al = align_strips(chain, levels.front());
  if (!al) {
    note = "no alignment stage within depth 10";
    a.disagree = -1;
    return a;
  }
  auto gi = dimension_group(chain);
  auto gs = dimension_group(levels);
  Rational eps(1, 1000000000);
  auto cone = cone_approx(chain, eps);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(-10, 10);
  for (int r = 0; r < 200; ++r) {
    std::vector<Integer> v(static_cast<std::size_t>(t.size()));
    for (auto& x : v) x = coord(rng);
    auto ps = positivity(gs, {0, v}, gs.depth());
    GroupElement xi{al->level, al->phi.apply(v)};
    auto pi = positivity(gi, xi, gi.depth() - al->level);
    if (ps.verdict == Positivity::unknown || pi.verdict == Positivity::unknown) {
      ++a.undecided;
    } else if (ps.verdict == pi.verdict) {
      ++a.agree;
    } else {
      ++a.disagree;
    }
    if (pi.verdict == Positivity::positive) {
      ++a.positive;
      (dual_cone_test(xi, cone, eps) == DualVerdict::consistent_positive ? a.dual_ok : a.dual_bad)++;
    }
  }
  note = "aligned at stage " + std::to_string(al->level);
  return a;
}

// 7 and 8 share the vectors.
std::pair<Outcome, Outcome> group_checks() {
  Outcome seven, eight;
  for (auto [name, t, seed] : {std::tuple{"sqrt2", sqrt2_map(), 7u}, std::tuple{"golden", golden_map(), 11u}}) {
    std::string note;
    auto a = compare_groups(t, seed, note);
    seven.require(a.disagree == 0, std::string(name) + ": " + note);
    eight.require(a.dual_bad == 0, std::string(name) + " dual contradiction");
    seven.detail << (seven.pass ? "" : "; ") << name << " " << a.agree << " agree, " << a.disagree << " disagree, "
                 << a.undecided << " undecided (" << note << ")" << (std::string(name) == "sqrt2" ? "; " : "");
    eight.detail << (eight.pass ? "" : "; ") << name << " " << a.dual_ok << "/" << a.positive
                 << " positive vectors consistent_positive" << (std::string(name) == "sqrt2" ? "; " : "");
  }
  return {std::move(seven), std::move(eight)};
}

int run_cli(const std::string& command, const fs::path& cfg, const fs::path& out) {
  std::string cmd = std::string(IETLAB_BIN) + " " + command + " --config " + cfg.string() + " --out " + out.string() +
                    " > /dev/null 2>&1";
  return WEXITSTATUS(std::system(cmd.c_str()));
}

// 9. Determinism and CSV round-trip.
Outcome determinism() {
  Outcome o;
  fs::path root = fs::temp_directory_path() / "ietlab_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  long files = 0, numeric = 0;
  struct Case {
    const char* name;
    long d;
    const char* text;
  };
  for (const auto& c : {Case{"sqrt2", 2, "d=2\nsigma=2 1\nalpha=-1/1+1/1r, 2/1-1/1r\ndepth=10\nlevels=2\ny0=1/10\n"},
                        Case{"golden", 5, "d=5\nsigma=2 1\nalpha=-1/2+1/2r, 3/2-1/2r\ndepth=10\nlevels=2\n"}}) {
    fs::path cfg = root / (std::string(c.name) + ".cfg");
    std::ofstream(cfg) << c.text;
    for (const auto& cmd : cli_commands()) {
      int a = run_cli(cmd, cfg, root / c.name / "a"), b = run_cli(cmd, cfg, root / c.name / "b");
      o.require(a == 0 && b == 0, std::string(c.name) + " " + cmd + " exit " + std::to_string(a));
    }
    for (const auto& e : fs::directory_iterator(root / c.name / "a")) {
      ++files;
      auto other = root / c.name / "b" / e.path().filename();
      o.require(csvcheck::slurp(e.path().string()) == csvcheck::slurp(other.string()),
                "differs: " + e.path().filename().string());
      if (e.path().extension() == ".csv") {
        auto rt = csvcheck::round_trip(e.path().string(), c.d);
        numeric += rt.numeric;
        for (const auto& f : rt.failures) o.require(false, "round trip: " + f);
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << files << " files byte-identical across runs, " << numeric
           << " numeric cells re-parsed";
  return o;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"strip example", strip_example},           {"unimodular induction", induction_suite},
      {"towers vs induction", tower_equivalence}, {"unique ergodicity", ergodicity},
      {"suspension combinatorics", suspension},   {"L^sigma", lsigma}};
  int failed = 0, index = 0;
  auto report = [&](const std::string& name, const Outcome& o) {
    ++index;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << index << " " << name << ": " << o.detail.str() << std::endl;
    failed += !o.pass;
  };
  auto guarded = [](const std::function<Outcome()>& f) {
    try {
      return f();
    } catch (const std::exception& e) {
      Outcome o;
      o.require(false, std::string("exception: ") + e.what());
      return o;
    }
  };
  for (const auto& [name, f] : criteria) report(name, guarded(f));
  std::pair<Outcome, Outcome> groups;
  try {
    groups = group_checks();
  } catch (const std::exception& e) {
    groups.first.require(false, std::string("exception: ") + e.what());
    groups.second.require(false, std::string("exception: ") + e.what());
  }
  report("order-isomorphy", groups.first);
  report("cone duality", groups.second);
  report("determinism and round-trip", guarded(determinism));
  return failed == 0 ? 0 : 1;
}
