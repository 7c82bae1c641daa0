/**
 * @file fock.cpp
 * @brief Labels, weights, boson pairings and basis enumeration.
 */
#include "ellq/fock.hpp"

#include <algorithm>
#include <stdexcept>

namespace ellq {

void FockLabel::validate(const Params& pp) const {
  if (J < 0 || J > pp.k)
    throw std::domain_error("FockLabel: J out of [0, k]: " + str());
  if (n < 1 || n > pp.r - pp.k - 1)
    throw std::domain_error("FockLabel: n out of [1, r-k-1]: " + str());
  if (np < 1 || np > pp.r - 1)
    throw std::domain_error("FockLabel: n' out of [1, r-1]: " + str());
}

bool FockLabel::is_physical(const Params& pp) const {
  long long two_k = 2 * pp.k;
  if (((M - (np - n)) % two_k + two_k) % two_k != 0) return false;
  long long v = ((np - n) % two_k + two_k) % two_k;
  if (v > pp.k) v -= two_k;
  return J == (v < 0 ? -v : v);
}

std::string FockLabel::str() const {
  return "(J=" + std::to_string(J) + ",M=" + std::to_string(M) +
         ",n'=" + std::to_string(np) + ",n=" + std::to_string(n) + ")";
}

FockLabel physical_label(long long np, long long n, const Params& pp) {
  long long two_k = 2 * pp.k;
  long long v = ((np - n) % two_k + two_k) % two_k;
  if (v > pp.k) v -= two_k;
  return FockLabel{v < 0 ? -v : v, v, np, n};
}

long long FockState::degree() const {
  long long d = 0;
  for (const auto& c : parts)
    for (long long m : c) d += m;
  return d;
}

std::string FockState::str() const {
  std::string s = label.str() + "[";
  for (int j = 0; j < 3; ++j) {
    if (j) s += ";";
    for (std::size_t i = 0; i < parts[j].size(); ++i)
      s += (i ? "," : "") + std::to_string(parts[j][i]);
  }
  return s + "]";
}

ZeroModeEigen zero_mode_eigen(const FockLabel& label, const Params& pp) {
  ZeroModeEigen e;
  long long c = pp.r * label.n - (pp.r - pp.k) * label.np - pp.k;
  e.p0 = AlgNum(Frac(0), Frac(c, pp.rho2()), pp.rho2());
  e.p1 = AlgNum(Frac(label.J));
  e.p2 = AlgNum(Frac(-label.M));
  // sqrt(2r(r-k)/k) = rho/k, so both combinations are rational.
  AlgNum rho_over_k = AlgNum(Frac(0), Frac(1, pp.k), pp.rho2());
  e.pi_hat = (rho_over_k * e.p0 - AlgNum(Frac(pp.r - pp.k, pp.k)) * e.p2)
                 .rational();
  e.pi_hat_p =
      (rho_over_k * e.p0 - AlgNum(Frac(pp.r, pp.k)) * e.p2).rational();
  return e;
}

Frac zero_mode_pairing(int j, const Params& pp) {
  switch (j) {
    case 0: return Frac(1);
    case 1: return Frac(2 * (pp.k + 2));
    case 2: return Frac(-2 * pp.k);
  }
  throw std::domain_error("zero_mode_pairing: boson index out of range");
}

RatFunc commutator_norm(int j, long long m, const Params& pp) {
  if (m == 0) throw std::domain_error("commutator_norm: m = 0");
  QSeries two_m = qint_poly(2 * m);
  switch (j) {
    case 0:
      return RatFunc(two_m * qint_poly(pp.k * m) * qint_poly(pp.r * m),
                     qint_poly((pp.r - pp.k) * m).scaled(Rat(m)));
    case 1:
      return RatFunc(two_m * qint_poly((pp.k + 2) * m)).scaled(Rat(1) / m);
    case 2:
      return RatFunc(two_m * qint_poly(pp.k * m)).scaled(Rat(-1) / m);
  }
  throw std::domain_error("commutator_norm: boson index out of range");
}

RatFunc a0_prime_factor(long long m, const Params& pp) {
  if (m == 0) throw std::domain_error("a0_prime_factor: m = 0");
  return RatFunc(qint_poly((pp.r - pp.k) * m), qint_poly(pp.r * m));
}

Frac central_charge(const Params& pp) {
  Frac lead(3 * pp.k, pp.k + 2);
  return lead * (Frac(1) - Frac(2 * (pp.k + 2), pp.r * (pp.r - pp.k)));
}

Frac fock_weight(long long J, long long M, long long np, long long n,
                 const Params& pp) {
  Frac h(J * (J + 2), 4 * (pp.k + 2));
  h -= Frac(M * M, 4 * pp.k);
  long long d = n * pp.r - np * (pp.r - pp.k);
  h += Frac(d * d - pp.k * pp.k, 4 * pp.k * pp.r * (pp.r - pp.k));
  return h;
}

Frac conformal_weight(const FockLabel& label, const Params& pp) {
  label.validate(pp);
  return fock_weight(label.J, label.M, label.np, label.n, pp);
}

Frac conformal_weight_coset(long long J, long long np, long long n,
                            const Params& pp) {
  Frac h(J * (pp.k - J), 2 * pp.k * (pp.k + 2));
  long long d = n * pp.r - np * (pp.r - pp.k);
  h += Frac(d * d - pp.k * pp.k, 4 * pp.k * pp.r * (pp.r - pp.k));
  return h;
}

RatFunc l0_mode_coeff(int j, long long m, const Params& pp) {
  if (m <= 0) throw std::domain_error("l0_mode_coeff: need m > 0");
  return RatFunc::from_rat(Rat(m)) / commutator_norm(j, m, pp);
}

Frac l0_zero_part(const FockLabel& label, const Params& pp) {
  ZeroModeEigen e = zero_mode_eigen(label, pp);
  // sqrt(2k/(r(r-k))) = rho/(r(r-k)).
  AlgNum shift = AlgNum(Frac(0), Frac(1, pp.r * (pp.r - pp.k)), pp.rho2());
  AlgNum zero = e.p1 * (e.p1 + AlgNum(2)) * AlgNum(Frac(1, 4 * (pp.k + 2))) -
                e.p2 * e.p2 * AlgNum(Frac(1, 4 * pp.k)) +
                e.p0 * (e.p0 + shift) * AlgNum(Frac(1, 2));
  return zero.rational();
}

Frac l0_eigenvalue(const FockState& state, const Params& pp) {
  return fock_weight(state.label.J, state.label.M, state.label.np,
                     state.label.n, pp) +
         Frac(state.degree());
}

namespace {

// All partitions of d with parts <= cap, each sorted descending.
void partitions_rec(long long d, long long cap, std::vector<long long>& cur,
                    std::vector<std::vector<long long>>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (long long p = std::min(d, cap); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(d - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<FockState> enumerate_basis(const FockLabel& label,
                                       long long max_degree) {
  std::vector<std::vector<std::vector<long long>>> parts(max_degree + 1);
  for (long long d = 0; d <= max_degree; ++d) {
    std::vector<long long> cur;
    partitions_rec(d, d, cur, parts[d]);
  }
  std::vector<FockState> basis;
  for (long long d = 0; d <= max_degree; ++d)
    for (long long d0 = 0; d0 <= d; ++d0)
      for (long long d1 = 0; d1 + d0 <= d; ++d1) {
        long long d2 = d - d0 - d1;
        for (const auto& p0 : parts[d0])
          for (const auto& p1 : parts[d1])
            for (const auto& p2 : parts[d2])
              basis.push_back(FockState{label, {p0, p1, p2}});
      }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace ellq
