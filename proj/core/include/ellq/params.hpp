/**
 * @file params.hpp
 * @brief Model parameters (r, k) and exact arithmetic in the quadratic
 *        extension generated by the zero-mode normalization radicals.
 *
 * For fixed (r, k) every square root appearing in zero-mode prefactors is a
 * rational multiple of rho = sqrt(2kr(r-k)), and every momentum-lattice
 * constant is a rational multiple of tau = sqrt(kr(r-k)) = rho/sqrt(2).
 * AlgNum stores a + b*sqrt(g2) with g2 carried alongside, so both towers are
 * served by one type; mixing distinct generators in a sum is a logic error
 * and throws.
 */
#ifndef ELLQ_PARAMS_HPP
#define ELLQ_PARAMS_HPP

#include <cmath>
#include <stdexcept>
#include <string>

#include "ellq/frac.hpp"

namespace ellq {

/**
 * Level k >= 1 and restriction height r >= k + 3, so that the unitary coset
 * window 1 <= n <= r - k - 1, 1 <= n' <= r - 1 is nonempty.  The two
 * elliptic nomes are the monomials q^{2r} and q^{2(r-k)}.
 */
struct Params {
  long long r = 0;
  long long k = 0;

  Params(long long r_, long long k_) : r(r_), k(k_) {
    if (k < 1) throw std::domain_error("Params: level k must be >= 1");
    if (r < k + 3)
      throw std::domain_error("Params: need r >= k + 3, got r=" +
                              std::to_string(r) + " k=" + std::to_string(k));
  }

  long long p_exp() const { return 2 * r; }           // nome p  = q^{2r}
  long long pstar_exp() const { return 2 * (r - k); } // nome p* = q^{2(r-k)}
  long long rho2() const { return 2 * k * r * (r - k); }
  long long tau2() const { return k * r * (r - k); }
};

/**
 * Exact element a + b*sqrt(g2) of a real quadratic extension of Q.  The
 * generator square g2 is part of the value; rationals carry g2 = 0.  No
 * square-free reduction is attempted: the pair (a, b) is formal, which is
 * exactly what exponent bookkeeping needs (a radical must cancel
 * algebraically, not merely numerically).
 */
class AlgNum {
 public:
  AlgNum() = default;
  AlgNum(const Frac& a) : a_(a) {}
  AlgNum(long long a) : a_(a) {}
  AlgNum(const Frac& a, const Frac& b, long long g2) : a_(a), b_(b), g2_(g2) {
    if (g2_ < 0) throw std::domain_error("AlgNum: negative generator square");
    if (b_.is_zero() || g2_ == 0) { b_ = Frac(0); g2_ = 0; }
  }
  static AlgNum root(long long g2) { return AlgNum(Frac(0), Frac(1), g2); }

  const Frac& rat_part() const { return a_; }
  const Frac& irr_part() const { return b_; }
  long long gen2() const { return g2_; }
  bool is_rational() const { return g2_ == 0; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  // Value as a plain rational; throws if the radical has not cancelled.
  Frac rational() const {
    if (!is_rational()) throw std::domain_error("AlgNum: irrational value");
    return a_;
  }

  double to_double() const {
    return a_.to_double() + b_.to_double() * std::sqrt(double(g2_));
  }

  friend AlgNum operator+(const AlgNum& x, const AlgNum& y) {
    return AlgNum(x.a_ + y.a_, x.b_ + y.b_, merged(x, y));
  }
  friend AlgNum operator-(const AlgNum& x, const AlgNum& y) {
    return AlgNum(x.a_ - y.a_, x.b_ - y.b_, merged(x, y));
  }
  AlgNum operator-() const { return AlgNum(-a_, -b_, g2_); }
  friend AlgNum operator*(const AlgNum& x, const AlgNum& y) {
    long long g = merged(x, y);
    return AlgNum(x.a_ * y.a_ + x.b_ * y.b_ * Frac(g),
                  x.a_ * y.b_ + x.b_ * y.a_, g);
  }
  friend AlgNum operator/(const AlgNum& x, const AlgNum& y) {
    // 1/(a + b s) = (a - b s)/(a^2 - b^2 g2); the norm vanishes only when
    // the divisor is numerically zero (possible if g2 is a perfect square).
    Frac nrm = y.a_ * y.a_ - y.b_ * y.b_ * Frac(y.g2_);
    if (nrm.is_zero()) throw std::domain_error("AlgNum: division by zero");
    return x * AlgNum(y.a_ / nrm, -y.b_ / nrm, y.g2_);
  }
  AlgNum& operator+=(const AlgNum& o) { return *this = *this + o; }
  AlgNum& operator-=(const AlgNum& o) { return *this = *this - o; }
  AlgNum& operator*=(const AlgNum& o) { return *this = *this * o; }

  friend bool operator==(const AlgNum& x, const AlgNum& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.g2_ == y.g2_;
  }
  friend bool operator!=(const AlgNum& x, const AlgNum& y) { return !(x == y); }

  std::string str() const {
    if (is_rational()) return a_.str();
    return a_.str() + " + (" + b_.str() + ")*sqrt(" + std::to_string(g2_) + ")";
  }

 private:
  static long long merged(const AlgNum& x, const AlgNum& y) {
    if (x.g2_ == 0) return y.g2_;
    if (y.g2_ == 0 || x.g2_ == y.g2_) return x.g2_;
    throw std::domain_error("AlgNum: mixed generators");
  }

  Frac a_{0};
  Frac b_{0};
  long long g2_ = 0;
};

}  // namespace ellq

#endif
