#pragma once

// Command runner behind the ietlab executable. Each command writes
// <out>/<command>.csv (plus .dot / .svg files where noted) and a short summary
// on the given stream.

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>

#include "config.hpp"
#include "ktheory.hpp"
#include "measures.hpp"
#include "render.hpp"
#include "report.hpp"
#include "suspension.hpp"

namespace ietlab {

enum ExitCode : int { exit_ok = 0, exit_domain = 2, exit_unknown = 3, exit_parse = 4 };

namespace cli_defaults {
inline constexpr long depth = 10;
inline constexpr long idoc_depth = 1000;
inline constexpr long cone_depth = 15;
inline constexpr long levels = 2;
inline constexpr long required_blocks = 2;
inline constexpr long window_n = 10'000;
inline const Rational epsilon{1, 1'000'000};
}  // namespace cli_defaults

inline const std::vector<std::string>& cli_commands() {
  static const std::vector<std::string> c{"orbit",   "idoc",   "induce", "shrink",   "cone",  "measure", "certify",
                                          "profile", "strips", "towers", "bratteli", "group", "lsigma",  "render"};
  return c;
}

namespace detail {

inline void write_file(const std::filesystem::path& p, const std::string& body) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + p.string());
  f << body;
}

inline std::string join(const std::vector<int>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

inline void put_matrix(CsvTable& csv, const std::string& field, std::optional<long> k, const IntMatrix& m) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) csv.number(field, k, r + 1, c + 1, m(r, c));
}

inline std::string orbit_point_text(const OrbitPoint& p) {
  return "T^" + std::to_string(p.power) + " beta(" + std::to_string(p.base) + ")";
}

inline QuadReal start_point(const ExperimentConfig& c) { return c.y0.value_or(QuadReal()); }

// Interval I(i) holding y0 (with side = left, the one whose closure ends at y0).
inline AdmissibleInterval y0_interval(const Iet& t, const ExperimentConfig& c) {
  QuadReal y = start_point(c);
  if (c.side == Side::left) {
    if (y.sign() != Sign::positive || y > t.length()) throw Error(ErrorCode::out_of_domain, "y0 = " + y.to_string());
    return subinterval(t, t.locate_left(y));
  }
  if (!t.contains(y)) throw Error(ErrorCode::out_of_domain, "y0 = " + y.to_string());
  return subinterval(t, t.locate(y));
}

inline std::vector<InductionStep> chain_for(const Iet& t, const ExperimentConfig& c, long default_depth) {
  return shrink_sequence(t, start_point(c), static_cast<int>(c.depth.value_or(default_depth)),
                         c.max_steps.value_or(default_max_steps), c.side);
}

}  // namespace detail

// Runs one command. Domain errors propagate as Error; the return value is
// exit_ok or exit_unknown.
inline int run_command(const std::string& command, const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                       std::ostream& log) {
  using detail::put_matrix;
  std::filesystem::create_directories(out_dir);
  const long max_steps = cfg.max_steps.value_or(default_max_steps);
  CsvTable csv;
  int code = exit_ok;

  auto iet = [&] { return cfg.make_iet(); };

  if (command == "orbit") {
    Iet t = iet();
    QuadReal x = detail::start_point(cfg);
    long depth = cfg.horizon.value_or(cfg.depth.value_or(cli_defaults::depth));
    if (!t.contains(x)) throw Error(ErrorCode::out_of_domain, "y0 = " + x.to_string());
    for (long k = 0; k <= depth; ++k) {
      if (k) x = t.apply(x);
      csv.number("point", k, std::nullopt, std::nullopt, x);
      csv.number("interval", k, std::nullopt, std::nullopt, static_cast<long>(t.locate(x)));
    }
    log << "orbit: " << depth + 1 << " points\n";
  } else if (command == "idoc") {
    Iet t = iet();
    auto r = idoc_check(t, cfg.depth.value_or(cli_defaults::idoc_depth));
    csv.text("status", {}, {}, {}, r.verified() ? "verified_to_depth" : "failed");
    csv.number("depth", {}, {}, {}, r.depth);
    csv.text("reducible", {}, {}, {}, r.reducible ? "true" : "false");
    if (r.witness) {
      const auto& w = *r.witness;
      csv.number("witness_i", w.k, w.i, {}, static_cast<long>(w.i));
      csv.number("witness_j", w.l, w.j, {}, static_cast<long>(w.j));
      csv.number("witness_value", {}, {}, {}, w.value);
    }
    log << "idoc: " << r.describe() << '\n';
  } else if (command == "induce") {
    Iet t = iet();
    auto J = detail::y0_interval(t, cfg);
    InductionStep s = induce(t, J, max_steps);
    verify_step(s);
    csv.number("J_left", {}, {}, {}, J.left.value);
    csv.number("J_right", {}, {}, {}, J.right.value);
    csv.text("sigma_prime", {}, {}, {}, s.induced.sigma().to_string());
    for (int i = 1; i <= s.induced.size(); ++i) {
      csv.number("alpha_prime", {}, i, {}, s.induced.alpha(i));
      csv.number("return_time", {}, i, {}, s.return_times[static_cast<std::size_t>(i - 1)]);
      csv.text("cut", {}, i, {}, detail::orbit_point_text(s.cuts[static_cast<std::size_t>(i - 1)]));
    }
    put_matrix(csv, "A", {}, s.A);
    csv.number("det", {}, {}, {}, s.A.determinant());
    auto image = s.A.apply(s.induced.lengths());
    for (int i = 1; i <= t.size(); ++i)
      csv.number("residual", {}, i, {}, t.alpha(i) - image[static_cast<std::size_t>(i - 1)]);
    log << "induce: sigma' = " << s.induced.sigma().to_string() << ", A = " << s.A.to_string() << '\n';
  } else if (command == "shrink") {
    Iet t = iet();
    auto chain = detail::chain_for(t, cfg, cli_defaults::depth);
    for (std::size_t k = 0; k < chain.size(); ++k) {
      const auto& s = chain[k];
      long kk = static_cast<long>(k);
      csv.number("J_left", kk, {}, {}, s.origin + s.J.left.value);
      csv.number("J_right", kk, {}, {}, s.origin + s.J.right.value);
      csv.text("sigma", kk, {}, {}, s.induced.sigma().to_string());
      for (int i = 1; i <= s.induced.size(); ++i) csv.number("alpha", kk, i, {}, s.induced.alpha(i));
      put_matrix(csv, "A", kk, s.A);
    }
    auto per = detect_period(chain, detail::start_point(cfg));
    if (per) {
      csv.number("period_start", {}, {}, {}, static_cast<long>(per->start));
      csv.number("period_length", {}, {}, {}, static_cast<long>(per->period));
    } else {
      csv.text("period", {}, {}, {}, "none");
    }
    log << "shrink: " << chain.size() << " steps, "
        << (per ? "periodic from " + std::to_string(per->start) + " with period " + std::to_string(per->period)
                : std::string("no period detected"))
        << '\n';
  } else if (command == "cone") {
    Iet t = iet();
    auto chain = detail::chain_for(t, cfg, cli_defaults::cone_depth);
    auto cone = cone_approx(chain, cfg.epsilon.value_or(cli_defaults::epsilon));
    put_matrix(csv, "product", {}, cone.product);
    for (int j = 0; j < cone.n; ++j)
      for (int i = 0; i < cone.n; ++i) csv.number("ray", {}, j + 1, i + 1, cone.rays[j][i]);
    for (std::size_t c = 0; c < cone.clusters.size(); ++c)
      for (int r : cone.clusters[c]) csv.number("cluster", static_cast<long>(c + 1), r + 1, {}, static_cast<long>(r + 1));
    csv.number("nu_estimate", {}, {}, {}, static_cast<long>(cone.nu_estimate));
    log << "cone: depth " << cone.depth() << ", nu estimate " << cone.nu_estimate << '\n';
  } else if (command == "measure") {
    Iet t = iet();
    auto mv = empirical_measure(t, detail::start_point(cfg), cfg.window_m.value_or(0),
                                cfg.window_n.value_or(cli_defaults::window_n));
    for (int i = 1; i <= t.size(); ++i) {
      std::size_t x = static_cast<std::size_t>(i - 1);
      csv.number("count", {}, i, {}, mv.counts[x]);
      csv.number("raw", {}, i, {}, mv.raw[x]);
      csv.number("normalized", {}, i, {}, mv.normalized[x]);
    }
    log << "measure: " << detail::join(std::vector<int>(mv.counts.begin(), mv.counts.end())) << '\n';
  } else if (command == "certify") {
    Iet t = iet();
    auto chain = detail::chain_for(t, cfg, cli_defaults::depth);
    int required = static_cast<int>(cfg.levels.value_or(cli_defaults::required_blocks));
    auto cert = unique_ergodicity_certificate(chain, required);
    for (std::size_t b = 0; b < cert.blocks.size(); ++b) {
      csv.number("block_start", static_cast<long>(b + 1), {}, {}, static_cast<long>(cert.blocks[b].first));
      csv.number("block_end", static_cast<long>(b + 1), {}, {}, static_cast<long>(cert.blocks[b].second));
    }
    csv.text("verdict", {}, {}, {}, cert.certified ? "certified" : "unknown");
    log << "certify: " << cert.blocks.size() << " positive blocks, " << (cert.certified ? "certified" : "unknown")
        << '\n';
    if (!cert.certified) code = exit_unknown;
  } else if (command == "profile") {
    auto p = singularity_profile(cfg.sigma);
    for (std::size_t j = 0; j < p.sigma0.size(); ++j)
      csv.number("sigma0", {}, static_cast<long>(j), {}, static_cast<long>(p.sigma0[j]));
    for (std::size_t c = 0; c < p.cycles.size(); ++c) csv.text("cycle", static_cast<long>(c + 1), {}, {}, detail::join(p.cycles[c]));
    csv.number("N", {}, {}, {}, static_cast<long>(p.N));
    for (std::size_t s = 0; s < p.singularities.size(); ++s) {
      const auto& g = p.singularities[s];
      long k = static_cast<long>(s + 1);
      csv.text("singularity_cycle", k, {}, {}, detail::join(g.cycle));
      csv.number("adjusted_length", k, {}, {}, static_cast<long>(g.adjusted_length));
      csv.number("multiplicity", k, {}, {}, static_cast<long>(g.multiplicity));
      csv.number("prongs", k, {}, {}, static_cast<long>(g.prongs));
    }
    if (p.genus) csv.number("genus", {}, {}, {}, static_cast<long>(*p.genus));
    else csv.text("genus", {}, {}, {}, "undefined");
    csv.text("zero_and_n_share_cycle", {}, {}, {}, p.zero_and_n_share_cycle ? "true" : "false");
    csv.text("closed_transversal", {}, {}, {}, p.closed_transversal ? "true" : "false");
    for (int j : p.fake_saddles) csv.number("fake_saddle", {}, j, {}, static_cast<long>(j));
    log << "profile: N = " << p.N << ", genus " << (p.genus ? std::to_string(*p.genus) : "undefined") << '\n';
  } else if (command == "strips" || command == "render") {
    Iet t = iet();
    int levels = static_cast<int>(cfg.levels.value_or(cli_defaults::levels));
    auto ls = strip_decomposition(t, levels);
    for (const auto& L : ls) {
      long k = L.level;
      if (command == "render") {
        std::string name = "strips_level" + std::to_string(L.level) + ".svg";
        detail::write_file(out_dir / name, render_strip_level(t, L));
        csv.text("file", k, {}, {}, name);
        continue;
      }
      csv.number("raw_K", k, {}, {}, L.raw_K);
      csv.number("K", k, {}, {}, L.K);
      for (const auto& m : L.markers) {
        csv.number(m.delta ? "x1" : "x0", k, m.i, {}, m.x);
        csv.number(m.delta ? "x1_exp" : "x0_exp", k, m.i, {}, m.k);
      }
      for (const auto& m : L.markers_prime) {
        csv.number(m.delta ? "xp1" : "xp0", k, m.i, {}, m.x);
        csv.number(m.delta ? "xp1_exp" : "xp0_exp", k, m.i, {}, m.k);
      }
      for (std::size_t a = 0; a < L.strips.size(); ++a) {
        const auto& s = L.strips[a];
        long ai = static_cast<long>(a + 1);
        csv.number("strip_width", k, ai, {}, s.width);
        csv.text("strip_word", k, ai, {}, detail::join(s.visit_word));
        csv.number("strip_start_box", k, ai, {}, static_cast<long>(s.start_box));
        csv.number("strip_end_box", k, ai, {}, static_cast<long>(s.end_box));
      }
      if (L.incidence_to_previous.rows() > 0) put_matrix(csv, "incidence", k, L.incidence_to_previous);
      log << "level " << L.level << ": K=" << L.K << " (raw " << L.raw_K << "), " << L.n() << " strips\n";
    }
  } else if (command == "towers") {
    Iet t = iet();
    auto Y = detail::y0_interval(t, cfg);
    auto p = towers(t, Y, max_steps);
    for (std::size_t l = 0; l < p.towers.size(); ++l) {
      const auto& tw = p.towers[l];
      long k = static_cast<long>(l + 1);
      csv.number("base_left", k, {}, {}, tw.base_left);
      csv.number("base_right", k, {}, {}, tw.base_right);
      csv.number("height", k, {}, {}, tw.height);
      for (std::size_t j = 0; j < tw.floors.size(); ++j) {
        csv.number("floor_left", k, static_cast<long>(j + 1), {}, tw.floors[j].left);
        csv.number("floor_right", k, static_cast<long>(j + 1), {}, tw.floors[j].right);
      }
    }
    for (std::size_t l = 0; l < p.algebra_dims.size(); ++l)
      csv.number("algebra_dim", static_cast<long>(l + 1), {}, {}, p.algebra_dims[l]);
    std::string dims;
    for (long h : p.algebra_dims) dims += (dims.empty() ? "" : " ") + std::to_string(h);
    log << "towers: heights " << dims << '\n';
  } else if (command == "bratteli") {
    Iet t = iet();
    auto chain = detail::chain_for(t, cfg, cli_defaults::depth);
    auto d = bratteli(chain, max_steps);
    detail::write_file(out_dir / "bratteli.dot", export_bratteli(d));
    for (std::size_t k = 0; k < d.edges.size(); ++k) put_matrix(csv, "edges", static_cast<long>(k), d.edges[k]);
    log << "bratteli: " << d.levels() << " levels, rank " << d.rank << '\n';
  } else if (command == "group") {
    Iet t = iet();
    auto chain = detail::chain_for(t, cfg, cli_defaults::depth);
    auto g = dimension_group(chain);
    for (int k = 0; k < g.depth(); ++k) put_matrix(csv, "induction", k, g.matrices[static_cast<std::size_t>(k)]);
    int levels = static_cast<int>(cfg.levels.value_or(cli_defaults::levels));
    auto ls = strip_decomposition(t, levels);
    auto sg = dimension_group(ls);
    for (int k = 0; k < sg.depth(); ++k) put_matrix(csv, "strip", k + 1, sg.matrices[static_cast<std::size_t>(k)]);
    auto al = align_strips(chain, ls.back());
    if (al) {
      csv.number("alignment_stage", {}, {}, {}, static_cast<long>(al->level));
      put_matrix(csv, "phi", ls.back().level, al->phi);
    } else {
      csv.text("alignment_stage", {}, {}, {}, "none");
    }
    log << "group: induction depth " << g.depth() << ", strip depth " << sg.depth() << ", alignment "
        << (al ? "stage " + std::to_string(al->level) : std::string("none")) << '\n';
  } else if (command == "lsigma") {
    auto L = l_sigma(cfg.sigma);
    put_matrix(csv, "L", {}, L.matrix);
    csv.number("det", {}, {}, {}, L.det);
    csv.text("invertible", {}, {}, {}, L.invertible ? "true" : "false");
    for (int r = 0; r < L.matrix.rows(); ++r) {
      for (int c = 0; c < L.matrix.cols(); ++c) log << (c ? "," : "") << L.matrix(r, c).get_str();
      log << '\n';
    }
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown command '" + command + "'");
  }
  detail::write_file(out_dir / (command + ".csv"), csv.str());
  return code;
}

}  // namespace ietlab
