#include "ellq/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ellq {

namespace {

// Visit every exponent base + n.s with n >= 0 that stays <= bound.
// All s_i > 0, so pruning per axis is exact.
template <class F>
void scan_lattice(const Frac& base, const std::vector<Frac>& s, std::size_t i,
                  const Frac& bound, F&& f) {
  if (i == s.size()) {
    f(base);
    return;
  }
  for (Frac e = base; e <= bound; e += s[i]) scan_lattice(e, s, i + 1, bound, f);
}

void poch_num_rec(Cx v, const std::vector<Cx>& s, std::size_t i, double eps,
                  Cx& prod) {
  if (i == s.size()) {
    prod *= (Cx(1.0) - v);
    return;
  }
  // |v * s_i^n| decays monotonically; factors below eps are 1 to within eps
  for (Cx w = v; std::abs(w) >= eps; w *= s[i]) poch_num_rec(w, s, i + 1, eps, prod);
}

}  // namespace

QSeries poch_series(const Frac& z_exp, const std::vector<Frac>& nome_exps,
                    long long den, const Frac& cutoff, bool omit_zero_factors,
                    int* zero_count) {
  for (const Frac& s : nome_exps)
    if (!(Frac(0) < s))
      throw std::domain_error("poch_series: nome exponent must be positive");
  long long d = lcm_ll(den, z_exp.den);
  for (const Frac& s : nome_exps) d = lcm_ll(d, s.den);

  // factors with nonpositive exponent handled explicitly
  std::vector<Frac> peeled;
  scan_lattice(z_exp, nome_exps, 0, Frac(0),
               [&](const Frac& e) { peeled.push_back(e); });
  int zeros = 0;
  QSeries head = QSeries::constant(Rat(1), d, cutoff);
  for (const Frac& e : peeled) {
    if (e.is_zero()) {
      ++zeros;
      if (!omit_zero_factors)
        throw std::domain_error("poch_series: vanishing factor");
      continue;
    }
    QSeries fac = QSeries::constant(Rat(1), d, cutoff);
    fac.add_coeff(e, Rat(-1));
    head *= fac;
  }
  if (zero_count) *zero_count = zeros;

  // smallest positive lattice exponent (at 0 or one step past a peeled point)
  Frac minpos(0);
  bool found = false;
  auto consider = [&](const Frac& e) {
    if (Frac(0) < e && (!found || e < minpos)) {
      minpos = e;
      found = true;
    }
  };
  consider(z_exp);
  for (const Frac& p : peeled)
    for (const Frac& s : nome_exps) consider(p + s);
  if (!found) return head;  // unreachable: axes are unbounded upward

  // log of the remaining product:
  //   -sum_j (1/j) [ q^{j z}/prod_i(1 - q^{j s_i}) - sum_peeled q^{j e} ]
  long long jmax =
      (long long)std::floor(cutoff.to_double() / minpos.to_double()) + 1;
  if (jmax < 1) jmax = 1;
  QSeries logsum = QSeries::zero(d, cutoff);
  for (long long j = 1; j <= jmax; ++j) {
    // a negative argument exponent shifts everything down by z*j, so the
    // geometric factors must be expanded further to stay exact to `cutoff`
    Frac wcut = cutoff;
    if (z_exp < Frac(0)) wcut -= z_exp * Frac(j);
    QSeries term = QSeries::monomial(Rat(1), z_exp * Frac(j), d, wcut);
    for (const Frac& s : nome_exps) {
      QSeries f = QSeries::constant(Rat(1), d, wcut);
      f.add_coeff(s * Frac(j), Rat(-1));
      term *= f.inverted();
    }
    for (const Frac& p : peeled) term.add_coeff(p * Frac(j), Rat(-1));
    if (term.is_zero()) continue;
    logsum += term.scaled(Rat(-1) / j).truncated(cutoff);
  }
  return head * logsum.exponential();
}

Cx poch_num(Cx z, const std::vector<Cx>& nomes, double tail_eps) {
  for (const Cx& s : nomes)
    if (std::abs(s) >= 1.0)
      throw std::domain_error("poch_num: |nome| must be < 1");
  Cx prod = 1.0;
  poch_num_rec(z, nomes, 0, tail_eps, prod);
  return prod;
}

QSeries theta_triple_series(const Frac& z_exp, const Frac& s_exp,
                            long long den, const Frac& cutoff) {
  if (!(Frac(0) < s_exp))
    throw std::domain_error("theta_triple_series: nome exponent must be > 0");
  long long d = lcm_ll(lcm_ll(den, z_exp.den), lcm_ll(s_exp.den, 2));
  QSeries r = QSeries::zero(d, cutoff);
  auto expo = [&](long long n) {
    return s_exp * Frac(n * (n - 1), 2) + z_exp * Frac(n);
  };
  for (long long n = 0;; ++n) {
    Frac e = expo(n);
    // increasing once s(n) + z > 0; safe to stop past the bound there
    if (cutoff < e && Frac(0) < s_exp * Frac(n) + z_exp) break;
    r.add_coeff(e, Rat(n % 2 ? -1 : 1));
  }
  for (long long n = -1;; --n) {
    Frac e = expo(n);
    if (cutoff < e && s_exp * Frac(n - 1) + z_exp < Frac(0)) break;
    r.add_coeff(e, Rat(((-n) % 2) ? -1 : 1));
  }
  return r;
}

Cx theta_triple_num(Cx z, Cx s, double tail_eps) {
  if (std::abs(s) >= 1.0)
    throw std::domain_error("theta_triple_num: |s| must be < 1");
  if (z == Cx(0)) throw std::domain_error("theta_triple_num: z = 0");
  auto term = [&](long long n) {
    Cx t = std::pow(s, 0.5 * double(n) * double(n - 1)) * std::pow(z, double(n));
    return (n & 1) ? -t : t;
  };
  Cx sum = term(0);
  for (long long n = 1;; ++n) {
    Cx t = term(n);
    sum += t;
    if (std::abs(t) < tail_eps && std::abs(term(n + 1)) < tail_eps) break;
    if (n > 100000) throw std::runtime_error("theta_triple_num: no decay");
  }
  for (long long n = -1;; --n) {
    Cx t = term(n);
    sum += t;
    if (std::abs(t) < tail_eps && std::abs(term(n - 1)) < tail_eps) break;
    if (n < -100000) throw std::runtime_error("theta_triple_num: no decay");
  }
  return sum;
}

QSeries bracket_series(const Frac& u, long long x, long long den,
                       const Frac& cutoff) {
  if (x <= 0) throw std::domain_error("bracket_series: x must be positive");
  Frac pre = u * u / Frac(x) - u;
  QSeries theta =
      theta_triple_series(u * Frac(2), Frac(2 * x), den, cutoff - pre);
  return theta.shifted(pre);
}

Cx bracket_num(double q, Cx u, long long x) {
  if (!(q > 0.0 && q < 1.0))
    throw std::domain_error("bracket_num: q must lie in (0,1)");
  const double lq = std::log(q);
  Cx pre = std::exp((u * u / double(x) - u) * lq);
  Cx z = std::exp(2.0 * u * lq);
  Cx s = std::exp(2.0 * double(x) * lq);
  return pre * theta_triple_num(z, s);
}

QSeries euler_phi_series(long long den, const Frac& cutoff) {
  QSeries r = QSeries::zero(den, cutoff);
  r.add_coeff(Frac(0), Rat(1));
  for (long long k = 1;; ++k) {
    Frac g1(k * (3 * k - 1), 2), g2(k * (3 * k + 1), 2);
    if (cutoff < g1) break;
    Rat sign(k % 2 ? -1 : 1);
    r.add_coeff(g1, sign);
    r.add_coeff(g2, sign);
  }
  return r;
}

QSeries dedekind_eta_series(long long den, const Frac& cutoff) {
  return euler_phi_series(lcm_ll(den, 24), cutoff - Frac(1, 24))
      .shifted(Frac(1, 24));
}

}  // namespace ellq
