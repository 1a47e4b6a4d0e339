#pragma once

// Line-oriented experiment configuration: `key=value` per line.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "iet.hpp"
#include "induction.hpp"
#include "quadreal.hpp"

namespace ietlab {

struct ExperimentConfig {
  long d = 0;
  Permutation sigma;
  std::vector<QuadReal> alpha;
  std::optional<long> depth, horizon, max_steps, levels, window_m, window_n;
  std::optional<Rational> epsilon;
  std::optional<QuadReal> y0;
  std::optional<Side> side;

  Iet make_iet() const { return Iet(sigma, alpha); }
};

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{"d",         "sigma", "alpha", "depth", "horizon",  "epsilon",
                                             "max_steps", "y0",    "side",  "levels", "window_m", "window_n"};
  return keys;
}

namespace detail {

struct RawValue {
  std::string text;
  int line;
  int column;  // 1-based column of the first value character
};

inline std::string_view trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0, b = s.size();
  while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
  while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r')) --b;
  if (lead) *lead = a;
  return s.substr(a, b - a);
}

inline long parse_integer(const RawValue& v, long min) {
  std::size_t lead;
  std::string_view t = trim(v.text, &lead);
  bool ok = !t.empty();
  for (std::size_t i = 0; i < t.size() && ok; ++i)
    ok = std::isdigit(static_cast<unsigned char>(t[i])) || (i == 0 && t[i] == '-' && t.size() > 1);
  if (!ok || t.size() > 18) throw ParseError(v.line, v.column + static_cast<int>(lead), "expected an integer");
  long x = std::stol(std::string(t));
  if (x < min)
    throw ParseError(v.line, v.column + static_cast<int>(lead), "value must be >= " + std::to_string(min));
  return x;
}

// p/q, or a decimal with optional exponent such as 1e-6 or 0.25.
inline Rational parse_positive_rational(const RawValue& v) {
  std::size_t lead;
  std::string t(trim(v.text, &lead));
  auto fail = [&](const std::string& why) { return ParseError(v.line, v.column + static_cast<int>(lead), why); };
  Rational r;
  if (t.find('/') != std::string::npos) {
    std::size_t pos = 0;
    if (!read_rational(t, pos, r) || pos != t.size()) throw fail("expected p/q");
  } else {
    std::size_t pos = 0;
    std::string digits;
    long exp10 = 0;
    while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) digits += t[pos++];
    if (pos < t.size() && t[pos] == '.') {
      ++pos;
      while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) {
        digits += t[pos++];
        --exp10;
      }
    }
    if (digits.empty()) throw fail("expected a number");
    if (pos < t.size() && (t[pos] == 'e' || t[pos] == 'E')) {
      std::size_t es = ++pos;
      if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) ++pos;
      std::size_t ds = pos;
      while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
      if (pos == ds || pos - ds > 6) throw fail("bad exponent");
      exp10 += std::stol(t.substr(es, pos - es));
    }
    if (pos != t.size()) throw fail("unexpected '" + t.substr(pos) + "'");
    Integer p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    r = exp10 < 0 ? Rational(Integer(digits, 10), p10) : Rational(Integer(digits, 10) * p10);
    r.canonicalize();
  }
  if (r <= 0) throw fail("value must be positive");
  return r;
}

}  // namespace detail

// Blank lines and lines starting with '#' are ignored; trailing whitespace is
// dropped. Every key may appear at most once; sigma and alpha are required.
inline ExperimentConfig parse_config(std::string_view text) {
  std::map<std::string, detail::RawValue> raw;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    std::size_t lead;
    std::string_view body = detail::trim(line, &lead);
    if (body.empty() || body.front() == '#') continue;
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, static_cast<int>(lead) + 1, "expected key=value");
    std::string key(detail::trim(line.substr(0, eq)));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      throw ParseError(line_no, static_cast<int>(lead) + 1, "unknown key '" + key + "'");
    if (raw.count(key)) throw ParseError(line_no, static_cast<int>(lead) + 1, "duplicate key '" + key + "'");
    raw[key] = {std::string(line.substr(eq + 1)), line_no, static_cast<int>(eq) + 2};
  }

  ExperimentConfig c;
  auto get = [&](const char* k) -> const detail::RawValue* {
    auto it = raw.find(k);
    return it == raw.end() ? nullptr : &it->second;
  };
  if (auto v = get("d")) {
    c.d = detail::parse_integer(*v, 0);
    if (!is_square_free(c.d)) throw ParseError(v->line, v->column, "d must be square-free");
  }
  auto quad = [&](const detail::RawValue& v, std::string_view part, int offset) {
    return parse_quadreal(part, c.d, v.line, v.column - 1 + offset);
  };
  if (auto v = get("sigma")) {
    try {
      c.sigma = Permutation::parse(v->text);
    } catch (const Error& e) {
      throw ParseError(v->line, v->column, e.what());
    }
  } else {
    throw ParseError(line_no, 1, "missing key 'sigma'");
  }
  if (auto v = get("alpha")) {
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = v->text.find(',', pos);
      std::string_view part = std::string_view(v->text).substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      c.alpha.push_back(quad(*v, part, static_cast<int>(pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  } else {
    throw ParseError(line_no, 1, "missing key 'alpha'");
  }
  auto positive = [&](const char* k, std::optional<long>& out) {
    if (auto v = get(k)) out = detail::parse_integer(*v, 1);
  };
  positive("depth", c.depth);
  positive("horizon", c.horizon);
  positive("max_steps", c.max_steps);
  positive("levels", c.levels);
  positive("window_n", c.window_n);
  if (auto v = get("window_m")) c.window_m = detail::parse_integer(*v, 0);
  if (auto v = get("epsilon")) c.epsilon = detail::parse_positive_rational(*v);
  if (auto v = get("y0")) c.y0 = quad(*v, v->text, 0);
  if (auto v = get("side")) {
    std::size_t lead;
    std::string_view s = detail::trim(v->text, &lead);
    if (s == "left") c.side = Side::left;
    else if (s == "right") c.side = Side::right;
    else throw ParseError(v->line, v->column + static_cast<int>(lead), "side must be left or right");
  }
  return c;
}

}  // namespace ietlab
