#pragma once

// Long-format CSV: one value per row. Numeric cells hold the exact text form
// in `exact` and a 12-digit decimal in `approx`; text cells leave `approx`
// empty.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "quadreal.hpp"

namespace ietlab {

inline constexpr int csv_digits = 12;
inline constexpr const char* csv_header = "field,k,i,j,exact,approx";

class CsvTable {
 public:
  using Index = std::optional<long>;

  void number(const std::string& field, Index k, Index i, Index j, const QuadReal& v) {
    rows_.push_back(prefix(field, k, i, j) + v.to_string() + ',' + v.approx(csv_digits));
  }
  void number(const std::string& field, Index k, Index i, Index j, const Rational& v) {
    number(field, k, i, j, QuadReal(v));
  }
  void number(const std::string& field, Index k, Index i, Index j, const Integer& v) {
    number(field, k, i, j, QuadReal(Rational(v)));
  }
  void number(const std::string& field, Index k, Index i, Index j, long v) { number(field, k, i, j, QuadReal(v)); }
  void text(const std::string& field, Index k, Index i, Index j, const std::string& v) {
    rows_.push_back(prefix(field, k, i, j) + quote(v) + ',');
  }

  std::string str() const {
    std::string s = std::string(csv_header) + '\n';
    for (const auto& r : rows_) s += r + '\n';
    return s;
  }

 private:
  static std::string quote(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string q = "\"";
    for (char c : v) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + '"';
  }
  static std::string prefix(const std::string& field, Index k, Index i, Index j) {
    auto ix = [](Index x) { return x ? std::to_string(*x) : std::string(); };
    return field + ',' + ix(k) + ',' + ix(i) + ',' + ix(j) + ',';
  }

  std::vector<std::string> rows_;
};

}  // namespace ietlab
