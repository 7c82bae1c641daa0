/**
 * @file ratfunc.hpp
 * @brief Exact rational functions of the base variable: quotients of sparse
 *        Laurent polynomials with rational coefficients and exponents on a
 *        lattice (1/D)Z.
 *
 * Numerator and denominator are QSeries at the exact (infinite) cutoff, so
 * every operation is cross-multiplication on finite term maps, followed by
 * gcd reduction: without it, chained sums over a common accumulator grow
 * degrees multiplicatively.  Equality is still decided by
 * cross-multiplication, not canonical form.  The denominator is normalized
 * to valuation 0 and unit lowest coefficient, which keeps repeated products
 * from accumulating monomial content.
 */
#ifndef ELLQ_RATFUNC_HPP
#define ELLQ_RATFUNC_HPP

#include "ellq/qseries.hpp"

namespace ellq {

class RatFunc {
 public:
  RatFunc() : num_(QSeries::zero(1, QSeries::inf_cutoff())), den_(one_poly(1)) {}
  explicit RatFunc(const QSeries& num)
      : num_(num), den_(one_poly(num.denom())) {
    normalize();
  }
  RatFunc(const QSeries& num, const QSeries& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    normalize();
  }

  static RatFunc zero(long long den = 1) {
    return RatFunc(QSeries::zero(den, QSeries::inf_cutoff()));
  }
  static RatFunc one(long long den = 1) { return RatFunc(one_poly(den)); }
  static RatFunc from_rat(const Rat& c, long long den = 1) {
    return RatFunc(QSeries::constant(c, den));
  }
  // c * q^e as an exact monomial.
  static RatFunc monomial(const Rat& c, const Frac& e, long long den = 1) {
    return RatFunc(QSeries::monomial(c, e, den));
  }

  const QSeries& num() const { return num_; }
  const QSeries& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_.equals_to_cutoff(b.den_))
      return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_)
        .reduced();
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    if (a.den_.equals_to_cutoff(b.den_))
      return RatFunc(a.num_ - b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_)
        .reduced();
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    return RatFunc(a.num_ * b.num_, a.den_ * b.den_).reduced();
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
    if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(a.num_ * b.den_, a.den_ * b.num_).reduced();
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

  RatFunc scaled(const Rat& c) const { return RatFunc(num_.scaled(c), den_); }
  RatFunc inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den_, num_);
  }

  // Cancel any common polynomial factor of numerator and denominator.
  RatFunc reduced() const {
    if (num_.is_zero() || den_.term_count() <= 1 || num_.term_count() <= 1)
      return *this;
    QSeries g = poly_gcd(num_, den_);
    if (g.term_count() <= 1) return *this;
    return RatFunc(poly_exact_div(num_, g), poly_exact_div(den_, g));
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return (a.num_ * b.den_).equals_to_cutoff(b.num_ * a.den_);
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) {
    return !(a == b);
  }

  double eval(double x) const { return num_.eval(x) / den_.eval(x); }
  Cx eval(Cx x) const { return num_.eval(x) / den_.eval(x); }

  // Truncated series expansion; requires den to have a nonzero constant or
  // lowest term (always true after normalization).
  QSeries expand(const Frac& cutoff) const {
    return num_.truncated(cutoff) * den_.truncated(cutoff).inverted();
  }

 private:
  static QSeries one_poly(long long den) {
    return QSeries::constant(Rat(1), den);
  }

  // Divisor gauge: valuation 0 and lowest coefficient 1.
  void normalize() {
    if (num_.is_zero()) {
      den_ = one_poly(den_.denom());
      return;
    }
    Frac v = den_.valuation().value();
    Rat c = den_.coeff(v);
    den_ = den_.shifted(-v).scaled(Rat(1) / c);
    num_ = num_.shifted(-v).scaled(Rat(1) / c);
  }

  QSeries num_, den_;
};

// q-integer (q^m - q^{-m})/(q - q^{-1}) as an exact Laurent polynomial,
// i.e. q^{m-1} + q^{m-3} + ... + q^{1-m}; odd in m, zero at m = 0.
inline QSeries qint_poly(long long m, long long den = 1) {
  QSeries s = QSeries::zero(den, QSeries::inf_cutoff());
  long long a = m < 0 ? -m : m;
  Rat sign = m < 0 ? Rat(-1) : Rat(1);
  for (long long i = 0; i < a; ++i) s.add_coeff(Frac(a - 1 - 2 * i), sign);
  return s;
}

}  // namespace ellq

#endif
