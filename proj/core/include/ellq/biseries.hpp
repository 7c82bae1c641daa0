/**
 * @file biseries.hpp
 * @brief Laurent series in an auxiliary variable x whose coefficients are
 *        truncated q-series.
 *
 * The x-window |exponent| <= x_cutoff is part of the value, exactly like
 * the q-cutoff of QSeries; arithmetic truncates to the smaller window.  The
 * intended regime is products of factors (1 - q^c x^e) with c > 0, where
 * the q-valuation of the x^n coefficient grows linearly in |n|, so a window
 * of q_cutoff / min(c) loses nothing.
 */
#ifndef ELLQ_BISERIES_HPP
#define ELLQ_BISERIES_HPP

#include <map>

#include "ellq/qseries.hpp"

namespace ellq {

class BiSeries {
 public:
  BiSeries(long long den, const Frac& q_cutoff, long long x_cutoff)
      : den_(den), qcut_(q_cutoff), xcut_(x_cutoff) {}

  static BiSeries one(long long den, const Frac& q_cutoff, long long x_cutoff);
  // c * x^e; the q-policy is taken from c.
  static BiSeries monomial(const QSeries& c, long long e, long long x_cutoff);

  long long denom() const { return den_; }
  const Frac& q_cutoff() const { return qcut_; }
  long long x_cutoff() const { return xcut_; }
  bool is_zero() const { return terms_.empty(); }

  const std::map<long long, QSeries>& items() const { return terms_; }
  QSeries coeff(long long e) const;
  void add_coeff(long long e, const QSeries& c);

  friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator-(const BiSeries& a, const BiSeries& b);
  friend BiSeries operator*(const BiSeries& a, const BiSeries& b);
  BiSeries operator-() const;

  // Multiplicative inverse; requires no negative x-powers and an x^0
  // coefficient invertible as a q-series.
  BiSeries inverted() const;

  // Substitute x = q^s.
  QSeries at_qpow(const Frac& s) const;
  // Substitute x -> q^s x.
  BiSeries x_scaled(const Frac& s) const;
  // Substitute x -> 1/x.
  BiSeries x_inverted() const;

  Cx eval(double q, Cx x) const;

  bool equals_to_cutoff(const BiSeries& other) const;

 private:
  long long den_ = 1;
  Frac qcut_;
  long long xcut_ = 0;
  std::map<long long, QSeries> terms_;
};

/**
 * (q^a x^e; q^{s_1},...,q^{s_d})_inf^{power} with every s_i > 0 and
 * power = +-1.  The inverse multiplies the geometric series of each factor;
 * a factor degenerating to (1 - x^{e'}) is kept literally for power = +1
 * and rejected for power = -1.
 */
BiSeries poch_bi(const Frac& a, long long e, const std::vector<Frac>& nomes,
                 int power, long long den, const Frac& q_cutoff,
                 long long x_cutoff);

// Theta_{q^s}(q^a x^e) = sum_n (-1)^n q^{s n(n-1)/2 + a n} x^{e n}.
BiSeries theta_bi(const Frac& a, long long e, const Frac& s, long long den,
                  const Frac& q_cutoff, long long x_cutoff);

}  // namespace ellq

#endif
