#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "graphwright/core/error.hpp"

namespace graphwright {

/// Exact rational number over int64 with a normalized representation
/// (gcd(num, den) == 1, den > 0). Intermediate products use 128-bit
/// arithmetic; results that do not fit in int64 raise Errc::overflow.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t value) : num_(value) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den) { assign(num, den); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }
  bool is_negative() const noexcept { return num_ < 0; }

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "7", "-3/4"
  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  /// Fixed-point rendering rounded half away from zero.
  std::string decimal(int digits) const {
    __int128 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    __int128 n = static_cast<__int128>(num_) * scale;
    bool neg = n < 0;
    if (neg) n = -n;
    __int128 q = n / den_;
    if ((n % den_) * 2 >= den_) ++q;
    __int128 whole = q / scale;
    __int128 frac = q % scale;
    std::string out = neg && q != 0 ? "-" : "";
    out += to_str128(whole);
    if (digits > 0) {
      std::string f = to_str128(frac);
      out += "." + std::string(static_cast<std::size_t>(digits) - f.size(), '0') + f;
    }
    return out;
  }

  /// Accepts "12", "-12", "3/4", "2.50" (finite decimals are exact).
  static Rational parse(std::string_view text) {
    auto fail = [&] { return Error(Errc::parse_error, "not a number: '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Rational n = parse_integer(text.substr(0, slash), text);
      Rational d = parse_integer(text.substr(slash + 1), text);
      if (d.is_zero()) throw fail();
      return n / d;
    }
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return parse_integer(text, text);
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18) throw fail();
    bool neg = !whole.empty() && whole.front() == '-';
    if (neg || (!whole.empty() && whole.front() == '+')) whole.remove_prefix(1);
    Rational w = whole.empty() ? Rational(0) : parse_integer(whole, text);
    Rational f = parse_integer(frac, text);
    if (f.is_negative()) throw fail();
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Rational r = w + Rational(f.num(), scale);
    return neg ? -r : r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.den_ + static_cast<__int128>(b.num_) * a.den_,
                   static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from128(static_cast<__int128>(a.num_) * b.num_, static_cast<__int128>(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw Error(Errc::invalid_input, "division by zero");
    return from128(static_cast<__int128>(a.num_) * b.den_, static_cast<__int128>(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;

  void assign(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(Errc::invalid_input, "zero denominator");
    *this = from128(num, den);
  }

  static Rational from128(__int128 num, __int128 den) {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 a = num < 0 ? -num : num;
    __int128 b = den;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    constexpr __int128 lo = INT64_MIN + 1;
    constexpr __int128 hi = INT64_MAX;
    if (num < lo || num > hi || den > hi) throw Error(Errc::overflow, "rational out of int64 range");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(num == 0 ? 1 : den);
    return r;
  }

  static Rational parse_integer(std::string_view digits, std::string_view whole) {
    auto fail = [&] { return Error(Errc::parse_error, "not a number: '" + std::string(whole) + "'"); };
    bool neg = false;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      neg = digits.front() == '-';
      digits.remove_prefix(1);
    }
    if (digits.empty() || digits.size() > 18) throw fail();
    std::int64_t v = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') throw fail();
      v = v * 10 + (c - '0');
    }
    return Rational(neg ? -v : v);
  }

  static std::string to_str128(__int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
      s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
      v /= 10;
    }
    return s;
  }
};

}  // namespace graphwright
