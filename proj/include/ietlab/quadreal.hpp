#pragma once

// Exact arithmetic in a real quadratic field Q(sqrt d).
//
// A QuadReal is a + b*sqrt(d) with a, b in Q and d square-free. Values with
// b == 0 are pure rationals and carry d == 0, so one normal form exists per
// value. Mixing two irrational values with different radicands throws.

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <cstdlib>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace ietlab {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign { negative = -1, zero = 0, positive = 1 };

inline bool is_square_free(long d) {
  if (d < 0) return false;
  for (long p = 2; p * p <= d; ++p)
    if (d % (p * p) == 0) return false;
  return true;
}

class QuadReal {
 public:
  QuadReal() = default;
  QuadReal(long v) : a_(v) {}  // NOLINT: integers convert implicitly
  explicit QuadReal(const Rational& a) : a_(a) { a_.canonicalize(); }
  QuadReal(const Rational& a, const Rational& b, long d) : a_(a), b_(b), d_(d) {
    if (!is_square_free(d))
      throw Error(ErrorCode::invalid_radicand, "radicand " + std::to_string(d) + " is not square-free");
    normalize();
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long radicand() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  Sign sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return to_sign(sa);
    if (sa == 0 || sa == sb) return to_sign(sb);
    // Opposite signs: the larger of a^2 and b^2 d wins. They are never equal
    // because sqrt(d) is irrational.
    Rational lhs = a_ * a_;
    Rational rhs = b_ * b_ * d_;
    return lhs > rhs ? to_sign(sa) : to_sign(sb);
  }

  QuadReal operator-() const {
    QuadReal r = *this;
    r.a_ = -r.a_;
    r.b_ = -r.b_;
    return r;
  }

  friend QuadReal operator+(const QuadReal& x, const QuadReal& y) {
    long d = common_radicand(x, y);
    return QuadReal(x.a_ + y.a_, x.b_ + y.b_, d, raw_tag{});
  }
  friend QuadReal operator-(const QuadReal& x, const QuadReal& y) {
    long d = common_radicand(x, y);
    return QuadReal(x.a_ - y.a_, x.b_ - y.b_, d, raw_tag{});
  }
  friend QuadReal operator*(const QuadReal& x, const QuadReal& y) {
    long d = common_radicand(x, y);
    Rational a = x.a_ * y.a_ + x.b_ * y.b_ * d;
    Rational b = x.a_ * y.b_ + x.b_ * y.a_;
    return QuadReal(a, b, d, raw_tag{});
  }
  friend QuadReal operator/(const QuadReal& x, const QuadReal& y) { return x * y.inverse(); }

  QuadReal& operator+=(const QuadReal& y) { return *this = *this + y; }
  QuadReal& operator-=(const QuadReal& y) { return *this = *this - y; }
  QuadReal& operator*=(const QuadReal& y) { return *this = *this * y; }

  QuadReal inverse() const {
    Rational norm = a_ * a_ - b_ * b_ * d_;
    if (norm == 0) throw Error(ErrorCode::division_by_zero, "inverse of zero");
    return QuadReal(a_ / norm, -b_ / norm, d_, raw_tag{});
  }

  friend bool operator==(const QuadReal& x, const QuadReal& y) {
    return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const QuadReal& x, const QuadReal& y) {
    if (x == y) return std::strong_ordering::equal;
    return (x - y).sign() == Sign::negative ? std::strong_ordering::less
                                            : std::strong_ordering::greater;
  }

  // Largest integer <= value, decided exactly.
  Integer floor() const {
    if (is_rational()) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a_.get_num_mpz_t(), a_.get_den_mpz_t());
      return q;
    }
    std::size_t bits = 128;
    for (const Integer* z : {&a_.get_num(), &a_.get_den(), &b_.get_num(), &b_.get_den()})
      bits += 2 * mpz_sizeinbase(z->get_mpz_t(), 2);
    mpf_class est(0, bits), root(d_, bits);
    root = sqrt(root);
    est = mpf_class(a_, bits) + mpf_class(b_, bits) * root;
    mpf_class fl = ::floor(est);
    Integer m(fl);
    while (QuadReal(Rational(m)) > *this) m -= 1;
    while (QuadReal(Rational(m + 1)) <= *this) m += 1;
    return m;
  }

  // Decimal rounded to `digits` places, ties away from zero. Display only.
  std::string approx(int digits) const {
    if (digits < 1) throw Error(ErrorCode::invalid_argument, "approx needs digits >= 1");
    bool negative = sign() == Sign::negative;
    QuadReal mag = negative ? -*this : *this;
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    Integer m = (mag * QuadReal(Rational(scale)) + QuadReal(Rational(1, 2))).floor();
    std::string s = m.get_str();
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    if (negative && m != 0) s.insert(0, "-");
    return s;
  }

  double to_double() const { return std::strtod(approx(17).c_str(), nullptr); }

  // Canonical text form: "p/q" or "p/q+r/sr" (r stands for sqrt d).
  std::string to_string() const {
    std::string s = fraction(a_);
    if (!is_rational()) {
      if (b_ > 0) s += "+";
      s += fraction(b_) + "r";
    }
    return s;
  }

 private:
  struct raw_tag {};
  QuadReal(Rational a, Rational b, long d, raw_tag) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    normalize();
  }

  void normalize() {
    a_.canonicalize();
    b_.canonicalize();
    if (d_ == 1) a_ += b_;
    if (d_ <= 1) b_ = 0;
    if (b_ == 0) d_ = 0;
  }

  static long common_radicand(const QuadReal& x, const QuadReal& y) {
    if (x.is_rational()) return y.d_;
    if (y.is_rational() || x.d_ == y.d_) return x.d_;
    throw Error(ErrorCode::mixed_radicand,
                "sqrt " + std::to_string(x.d_) + " and sqrt " + std::to_string(y.d_));
  }

  static Sign to_sign(int s) { return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero); }

  static std::string fraction(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
  }

  Rational a_{0};
  Rational b_{0};
  long d_ = 0;
};

inline QuadReal sqrt_of(long d) { return QuadReal(0, 1, d); }

namespace detail {

// Reads an optionally signed p or p/q starting at pos; advances pos.
inline bool read_rational(std::string_view s, std::size_t& pos, Rational& out) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) return false;
  Integer num(std::string(s.substr(start, pos - start)), 10);
  Integer den(1);
  if (pos < s.size() && s[pos] == '/') {
    std::size_t ds = ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == ds) return false;
    den = Integer(std::string(s.substr(ds, pos - ds)), 10);
    if (den == 0) return false;
  }
  out = Rational(num, den);
  out.canonicalize();
  return true;
}

}  // namespace detail

// Parses the text form produced by QuadReal::to_string. Also accepts plain
// integers, a leading radical term, a bare "r" and spaces between tokens.
// Columns in errors are 1-based and shifted by column_offset.
inline QuadReal parse_quadreal(std::string_view text, long d, int line = 1, int column_offset = 0) {
  std::string s;
  std::vector<int> cols;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == ' ' || text[i] == '\t') continue;
    s.push_back(text[i]);
    cols.push_back(static_cast<int>(i) + 1 + column_offset);
  }
  auto fail = [&](std::size_t at, const std::string& why) -> ParseError {
    int col = at < cols.size() ? cols[at] : static_cast<int>(text.size()) + 1 + column_offset;
    return ParseError(line, col, why + " in '" + std::string(text) + "'");
  };
  if (s.empty()) throw fail(0, "empty number");
  Rational a(0), b(0);
  bool have_a = false, have_b = false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t term_start = pos;
    int sgn = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sgn = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (term_start != 0) {
      throw fail(pos, "expected '+' or '-'");
    }
    Rational coef(1);
    bool have_coef = detail::read_rational(s, pos, coef);
    bool radical = pos < s.size() && s[pos] == 'r';
    if (radical) ++pos;
    if (!have_coef && !radical) throw fail(pos, "expected a number");
    if (radical) {
      if (have_b) throw fail(term_start, "two radical terms");
      if (d == 0) throw fail(term_start, "radical term without radicand");
      b = sgn * coef;
      have_b = true;
    } else {
      if (have_a) throw fail(term_start, "two rational terms");
      a = sgn * coef;
      have_a = true;
    }
  }
  if (!is_square_free(d)) throw fail(0, "radicand " + std::to_string(d) + " is not square-free");
  return QuadReal(a, b, d);
}

}  // namespace ietlab
