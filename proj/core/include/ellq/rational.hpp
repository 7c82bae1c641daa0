/**
 * @file rational.hpp
 * @brief Arbitrary precision rational coefficients and helpers.
 */
#ifndef ELLQ_RATIONAL_HPP
#define ELLQ_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <string>

#include "ellq/frac.hpp"

namespace ellq {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_of(const Frac& f) { return Rat(BigInt(f.num), BigInt(f.den)); }

inline Rat rat_pow(const Rat& base, long long e) {
  if (e == 0) return Rat(1);
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long long n = e > 0 ? (unsigned long long)e : (unsigned long long)(-e);
  Rat acc(1);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

inline std::string rat_str(const Rat& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  std::string s = num.str();
  if (den != 1) s += "/" + den.str();
  return s;
}

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

using Cx = std::complex<double>;

// q^f for real q > 0 and rational f; exact sign handling is the caller's job.
inline double pow_frac(double q, const Frac& f) {
  if (f.num == 0) return 1.0;
  return std::pow(q, f.to_double());
}

}  // namespace ellq

#endif
