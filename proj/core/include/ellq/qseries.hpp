/**
 * @file qseries.hpp
 * @brief Truncated sparse Laurent series in one formal variable with exact
 *        rational coefficients and rational exponents.
 *
 * Exponents live on the lattice (1/denom)*Z.  The truncation bound `cutoff`
 * is part of the value: arithmetic keeps every exponent <= cutoff and the
 * cutoff of a product/sum is the minimum of the operands' cutoffs, so a term
 * that is present is always exact.  Zero coefficients are never stored.
 *
 * The variable is formal: the same type serves q-series, y-series
 * (characters) and polynomial numerators of rational functions.
 */
#ifndef ELLQ_QSERIES_HPP
#define ELLQ_QSERIES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ellq/frac.hpp"
#include "ellq/rational.hpp"

namespace ellq {

class QSeries {
 public:
  // Sentinel cutoff for exact (polynomial) data.
  static Frac inf_cutoff() { return Frac(1LL << 50); }

  QSeries() : den_(1), cutoff_(inf_cutoff()) {}
  explicit QSeries(long long den, Frac cutoff) : den_(den), cutoff_(cutoff) {}

  static QSeries zero(long long den, Frac cutoff) { return QSeries(den, cutoff); }
  static QSeries constant(const Rat& c, long long den = 1,
                          Frac cutoff = inf_cutoff());
  // c * q^e
  static QSeries monomial(const Rat& c, const Frac& e, long long den = 1,
                          Frac cutoff = inf_cutoff());

  long long denom() const { return den_; }
  const Frac& cutoff() const { return cutoff_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Smallest exponent; nullopt for the zero series.
  std::optional<Frac> valuation() const;
  Rat coeff(const Frac& e) const;
  void set_coeff(const Frac& e, const Rat& c);
  void add_coeff(const Frac& e, const Rat& c);

  QSeries truncated(const Frac& new_cutoff) const;
  // Multiply by q^e (shifts cutoff along).
  QSeries shifted(const Frac& e) const;
  QSeries scaled(const Rat& c) const;
  // Substitute variable -> variable^a for rational a > 0 (used for nome maps).
  QSeries var_pow(const Frac& a) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries operator-() const { return scaled(Rat(-1)); }
  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  // Reciprocal; requires a nonzero leading term.  Result cutoff is
  // cutoff - 2*valuation adjusted so that f * invert(f) == 1 holds exactly
  // to the reported cutoff.
  QSeries inverted() const;
  QSeries pow_int(long long n) const;
  // exp of a series every term of which has strictly positive exponent.
  QSeries exponential() const;
  // log of a series of the form 1 + (positive-valuation part).
  QSeries logarithm() const;

  bool equals_to_cutoff(const QSeries& other) const;
  // Largest absolute difference of coefficients up to the common cutoff,
  // as a double (exact comparison: use equals_to_cutoff).
  double max_coeff_deviation(const QSeries& other) const;

  double eval(double x) const;
  Cx eval(Cx x) const;

  // Text dump: header "denom=<D> cutoff=<rational>", then one line per term
  // "<exponent-as-fraction> <coefficient-as-fraction>", sorted by exponent.
  std::string dump() const;
  static QSeries parse(const std::string& text);

  // Iteration over (exponent, coefficient), sorted.
  std::vector<std::pair<Frac, Rat>> items() const;

  // Rescale both operands to a common exponent denominator.
  static void align(QSeries& a, QSeries& b);

 private:
  long long den_;                 // exponent lattice denominator
  Frac cutoff_;                   // inclusive exponent bound
  std::map<long long, Rat> terms_;  // key = exponent * den_

  Frac key_to_exp(long long k) const { return Frac(k, den_); }
  long long exp_to_key(const Frac& e) const;  // throws if off-lattice
  void prune();
  friend class BiSeries;
};

// Laurent-polynomial division: a = b * quotient + remainder with the
// remainder's width smaller than b's.  Untruncated operands only.
QSeries poly_divmod(const QSeries& a, const QSeries& b, QSeries* rem);

// Exact quotient; throws if b does not divide a.
QSeries poly_exact_div(const QSeries& a, const QSeries& b);

// Greatest common divisor in gauge form: valuation 0, lowest coefficient 1.
// gcd(a, 0) = gauge(a); monomials count as units.
QSeries poly_gcd(const QSeries& a, const QSeries& b);

}  // namespace ellq

#endif
