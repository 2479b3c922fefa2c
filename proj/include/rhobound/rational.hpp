#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rhobound {

// Exact rational arithmetic on a 64-bit numerator / denominator, normalized
// so that den > 0 and gcd(|num|, den) == 1. Intermediate products run
// through __int128; narrowing back to 64 bits throws std::overflow_error
// instead of wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  long long ceil() const {
    long long q = num_ / den_;
    if (num_ > 0 && num_ % den_ != 0) ++q;
    return q;
  }

  // "p" when the denominator is 1, "p/q" otherwise.
  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  // Accepts "p" or "p/q" with an optional leading minus; anything else throws.
  static Rational parse(std::string_view text) {
    auto parse_ll = [](std::string_view s) -> long long {
      long long v = 0;
      const char* first = s.data();
      const char* last = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last) {
        throw std::invalid_argument("not a valid rational: '" + std::string(s) + "'");
      }
      return v;
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_ll(text));
    long long num = parse_ll(text.substr(0, slash));
    long long den = parse_ll(text.substr(slash + 1));
    return Rational(num, den);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

 private:
  using i128 = __int128;

  static long long narrow(i128 v) {
    if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
      throw std::overflow_error("rational arithmetic overflowed 64 bits");
    }
    return static_cast<long long>(v);
  }

  static Rational make(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      num /= a;
      den /= a;
    }
    Rational r;
    r.num_ = narrow(num);
    r.den_ = narrow(den);
    return r;
  }

  void normalize() { *this = make(num_, den_); }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace rhobound
