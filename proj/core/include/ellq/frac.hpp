/**
 * @file frac.hpp
 * @brief Small exact fraction used for series exponents and parameters.
 *
 * Exponents stay tiny (numerators bounded by a few million once scaled by the
 * session denominator), so a machine-word fraction with __int128 intermediates
 * is exact and cheap.  Coefficients use arbitrary precision, see rational.hpp.
 */
#ifndef ELLQ_FRAC_HPP
#define ELLQ_FRAC_HPP

#include <cassert>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ellq {

struct Frac {
  long long num = 0;
  long long den = 1;  // invariant: den > 0, gcd(num, den) = 1

  constexpr Frac() = default;
  constexpr Frac(long long n) : num(n), den(1) {}
  Frac(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Frac: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
    if (num == 0) den = 1;
  }

  static Frac from_i128(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Frac: zero denominator");
    if (d < 0) { n = -n; d = -d; }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) { __int128 t = a % b; a = b; b = t; }
    if (a > 1) { n /= a; d /= a; }
    constexpr __int128 lim = __int128(1) << 62;
    if (n >= lim || n <= -lim || d >= lim)
      throw std::overflow_error("Frac: exponent overflow");
    Frac f;
    f.num = (long long)n;
    f.den = (long long)d;
    return f;
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  double to_double() const { return double(num) / double(den); }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return from_i128(__int128(a.num) * b.den + __int128(b.num) * a.den,
                     __int128(a.den) * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return from_i128(__int128(a.num) * b.den - __int128(b.num) * a.den,
                     __int128(a.den) * b.den);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return from_i128(__int128(a.num) * b.num, __int128(a.den) * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num == 0) throw std::domain_error("Frac: division by zero");
    return from_i128(__int128(a.num) * b.den, __int128(a.den) * b.num);
  }
  Frac operator-() const { Frac f; f.num = -num; f.den = den; return f; }
  Frac& operator+=(const Frac& o) { return *this = *this + o; }
  Frac& operator-=(const Frac& o) { return *this = *this - o; }
  Frac& operator*=(const Frac& o) { return *this = *this * o; }
  Frac& operator/=(const Frac& o) { return *this = *this / o; }

  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
  friend bool operator<(const Frac& a, const Frac& b) {
    return __int128(a.num) * b.den < __int128(b.num) * a.den;
  }
  friend bool operator<=(const Frac& a, const Frac& b) { return !(b < a); }
  friend bool operator>(const Frac& a, const Frac& b) { return b < a; }
  friend bool operator>=(const Frac& a, const Frac& b) { return !(a < b); }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
  friend std::ostream& operator<<(std::ostream& os, const Frac& f) {
    return os << f.str();
  }
};

inline long long lcm_ll(long long a, long long b) {
  __int128 l = __int128(a) / std::gcd(a, b) * b;
  if (l > (__int128(1) << 62)) throw std::overflow_error("lcm overflow");
  return (long long)l;
}

}  // namespace ellq

#endif
