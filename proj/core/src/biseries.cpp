#include "ellq/biseries.hpp"

#include <cmath>
#include <stdexcept>

namespace ellq {

BiSeries BiSeries::one(long long den, const Frac& q_cutoff,
                       long long x_cutoff) {
  BiSeries s(den, q_cutoff, x_cutoff);
  s.add_coeff(0, QSeries::constant(Rat(1), den, q_cutoff));
  return s;
}

BiSeries BiSeries::monomial(const QSeries& c, long long e,
                            long long x_cutoff) {
  BiSeries s(c.denom(), c.cutoff(), x_cutoff);
  s.add_coeff(e, c);
  return s;
}

QSeries BiSeries::coeff(long long e) const {
  auto it = terms_.find(e);
  if (it != terms_.end()) return it->second;
  return QSeries::zero(den_, qcut_);
}

void BiSeries::add_coeff(long long e, const QSeries& c) {
  if (e > xcut_ || e < -xcut_) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
  BiSeries r(lcm_ll(a.den_, b.den_), std::min(a.qcut_, b.qcut_),
             std::min(a.xcut_, b.xcut_));
  for (const auto& [e, c] : a.terms_) r.add_coeff(e, c.truncated(r.qcut_));
  for (const auto& [e, c] : b.terms_) r.add_coeff(e, c.truncated(r.qcut_));
  return r;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b) { return a + (-b); }

BiSeries BiSeries::operator-() const {
  BiSeries r(den_, qcut_, xcut_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, QSeries::zero(den_, qcut_) - c);
  return r;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b) {
  // an absent coefficient is zero only up to the series' q-cutoff, and a
  // negative-valuation partner shifts that bound down; same product rule as
  // the single-variable series
  Frac va(0), vb(0);
  for (const auto& [e, c] : a.terms_)
    if (auto v = c.valuation()) va = std::min(va, *v);
  for (const auto& [e, c] : b.terms_)
    if (auto v = c.valuation()) vb = std::min(vb, *v);
  Frac cut = std::min(std::min(a.qcut_ + vb, b.qcut_ + va),
                      std::min(a.qcut_, b.qcut_));
  BiSeries r(lcm_ll(a.den_, b.den_), cut, std::min(a.xcut_, b.xcut_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_coeff(ea + eb, (ca * cb).truncated(cut));
  return r;
}

BiSeries BiSeries::inverted() const {
  if (terms_.empty())
    throw std::domain_error("BiSeries::inverted: zero series");
  if (terms_.begin()->first < 0)
    throw std::domain_error("BiSeries::inverted: negative x-powers");
  QSeries c0inv = coeff(0).inverted();
  // Neumann series in x: rest has x-valuation >= 1
  BiSeries unit = BiSeries::monomial(c0inv, 0, xcut_);
  BiSeries rest = *this * unit - BiSeries::one(den_, qcut_, xcut_);
  BiSeries acc = BiSeries::one(den_, qcut_, xcut_);
  BiSeries pw = BiSeries::one(den_, qcut_, xcut_);
  for (long long j = 1; j <= xcut_; ++j) {
    pw = pw * rest;
    if (pw.is_zero()) break;
    acc = (j % 2 == 1) ? acc - pw : acc + pw;
  }
  return acc * unit;
}

QSeries BiSeries::at_qpow(const Frac& s) const {
  QSeries r = QSeries::zero(den_, qcut_);
  for (const auto& [e, c] : terms_)
    r = r + c.shifted(s * Frac(e)).truncated(qcut_);
  return r;
}

BiSeries BiSeries::x_scaled(const Frac& s) const {
  BiSeries r(den_, qcut_, xcut_);
  for (const auto& [e, c] : terms_)
    r.add_coeff(e, c.shifted(s * Frac(e)).truncated(qcut_));
  return r;
}

BiSeries BiSeries::x_inverted() const {
  BiSeries r(den_, qcut_, xcut_);
  for (const auto& [e, c] : terms_) r.add_coeff(-e, c);
  return r;
}

Cx BiSeries::eval(double q, Cx x) const {
  Cx r(0.0, 0.0);
  for (const auto& [e, c] : terms_)
    r += c.eval(Cx(q, 0.0)) * std::pow(x, Cx(double(e), 0.0));
  return r;
}

bool BiSeries::equals_to_cutoff(const BiSeries& other) const {
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  long long w = std::min(xcut_, other.xcut_);
  while (ia != terms_.end() || ib != other.terms_.end()) {
    long long ea = ia != terms_.end() ? ia->first : w + 1;
    long long eb = ib != other.terms_.end() ? ib->first : w + 1;
    long long e = std::min(ea, eb);
    if (e > w) break;
    if (!coeff(e).equals_to_cutoff(other.coeff(e))) return false;
    if (ia != terms_.end() && ia->first == e) ++ia;
    if (ib != other.terms_.end() && ib->first == e) ++ib;
  }
  return true;
}

BiSeries poch_bi(const Frac& a, long long e, const std::vector<Frac>& nomes,
                 int power, long long den, const Frac& q_cutoff,
                 long long x_cutoff) {
  if (power != 1 && power != -1)
    throw std::invalid_argument("poch_bi: power must be +-1");
  for (const Frac& s : nomes)
    if (!(Frac(0) < s)) throw std::domain_error("poch_bi: nonpositive nome");
  // collect the lattice exponents c = a + n.s <= q_cutoff; factors beyond
  // the cutoff only touch digits past it
  std::vector<Frac> cs;
  auto scan = [&](auto&& self, const Frac& base, std::size_t i) -> void {
    if (i == nomes.size()) {
      if (base <= q_cutoff) cs.push_back(base);
      return;
    }
    for (Frac c = base; c <= q_cutoff; c += nomes[i]) self(self, c, i + 1);
  };
  scan(scan, a, 0);
  BiSeries res = BiSeries::one(den, q_cutoff, x_cutoff);
  for (const Frac& c : cs) {
    long long d2 = lcm_ll(den, c.den);
    BiSeries f(d2, q_cutoff, x_cutoff);
    if (power == 1) {
      f.add_coeff(0, QSeries::constant(Rat(1), d2, q_cutoff));
      f.add_coeff(e, QSeries::monomial(Rat(-1), c, d2, q_cutoff));
    } else if (Frac(0) < c) {
      for (long long j = 0; c * Frac(j) <= q_cutoff; ++j) {
        if (e != 0 && (e * j > x_cutoff || e * j < -x_cutoff)) break;
        f.add_coeff(e * j, QSeries::monomial(Rat(1), c * Frac(j), d2, q_cutoff));
      }
    } else if (c.num == 0) {
      throw std::domain_error("poch_bi: unit factor not invertible");
    } else {
      // 1/(1 - q^c x^e) = -sum_{j>=1} q^{-cj} x^{-ej} for c < 0
      Frac mc = Frac(0) - c;
      for (long long j = 1; mc * Frac(j) <= q_cutoff; ++j) {
        if (e != 0 && (-e * j > x_cutoff || -e * j < -x_cutoff)) break;
        f.add_coeff(-e * j,
                    QSeries::monomial(Rat(-1), mc * Frac(j), d2, q_cutoff));
      }
    }
    res = res * f;
  }
  return res;
}

BiSeries theta_bi(const Frac& a, long long e, const Frac& s, long long den,
                  const Frac& q_cutoff, long long x_cutoff) {
  if (!(Frac(0) < s)) throw std::domain_error("theta_bi: nonpositive nome");
  BiSeries r(lcm_ll(den, lcm_ll(a.den, s.den)), q_cutoff, x_cutoff);
  // q-exponent of term n is s n(n-1)/2 + a n, a convex parabola in n
  double sd = s.to_double(), ad = a.to_double(), cd = q_cutoff.to_double();
  double disc = (sd / 2 - ad) * (sd / 2 - ad) + 2 * sd * cd;
  if (disc < 0) return r;
  double mid = (sd / 2 - ad) / sd, half = std::sqrt(disc) / sd;
  long long lo = (long long)std::floor(mid - half) - 2;
  long long hi = (long long)std::ceil(mid + half) + 2;
  for (long long n = lo; n <= hi; ++n) {
    Frac c = s * Frac(n * (n - 1), 2) + a * Frac(n);
    if (!(c <= q_cutoff)) continue;
    r.add_coeff(e * n, QSeries::monomial(Rat(n % 2 ? -1 : 1), c, r.denom(),
                                         q_cutoff));
  }
  return r;
}

}  // namespace ellq
