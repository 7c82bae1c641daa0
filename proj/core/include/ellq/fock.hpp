/**
 * @file fock.hpp
 * @brief Module labels, three-boson Fock states, zero-mode eigenvalues and
 *        the grading data (central charge, conformal weights, L0).
 *
 * Conventions fixed here and used by every other module:
 *   - boson pairings [a_{j,m}, a_{j,-m}] = N_j(m) from commutator_norm;
 *   - zero-mode pairings [P_0, iQ_0] = 1, [P_1, Q_1] = 2(k+2),
 *     [P_2, Q_2] = -2k, so a vertex e^{c Q_j}|0> carries P_j = c * pairing
 *     (with c the coefficient of iQ_0 for j = 0);
 *   - on the highest-weight vector of F_{J,M;n',n}: P_1 = J, P_2 = -M and
 *     P_0 = (r n - (r-k) n' - k) / sqrt(2kr(r-k)).
 */
#ifndef ELLQ_FOCK_HPP
#define ELLQ_FOCK_HPP

#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "ellq/params.hpp"
#include "ellq/ratfunc.hpp"

namespace ellq {

/**
 * Label of a Fock module.  J, M grade the parafermion sector, (n', n) the
 * momentum lattice.  The coset window is 0 <= J <= k, 1 <= n <= r-k-1,
 * 1 <= n' <= r-1; labels outside the window still define Fock modules
 * (screening operators pass through them), so range checking is explicit
 * via validate(), not enforced on construction.
 */
struct FockLabel {
  long long J = 0;
  long long M = 0;
  long long np = 1;  // n'
  long long n = 1;

  void validate(const Params& pp) const;
  // M congruent to n'-n mod 2k and J = |M reduced into (-k, k]|.
  bool is_physical(const Params& pp) const;

  auto tie() const { return std::tie(J, M, np, n); }
  friend bool operator==(const FockLabel& a, const FockLabel& b) {
    return a.tie() == b.tie();
  }
  friend bool operator!=(const FockLabel& a, const FockLabel& b) {
    return !(a == b);
  }
  friend bool operator<(const FockLabel& a, const FockLabel& b) {
    return a.tie() < b.tie();
  }
  std::string str() const;
};

// The label with M = n'-n reduced into (-k, k] and J = |M|.
FockLabel physical_label(long long np, long long n, const Params& pp);

/**
 * Basis vector (prod_j prod_i a_{j,-m_{j,i}}) |label>: three partitions,
 * one per boson color, each sorted descending.  Degree = sum of all parts.
 */
struct FockState {
  FockLabel label;
  std::array<std::vector<long long>, 3> parts;

  long long degree() const;
  auto tie() const { return std::tie(parts[0], parts[1], parts[2], label); }
  friend bool operator==(const FockState& a, const FockState& b) {
    return a.tie() == b.tie();
  }
  friend bool operator<(const FockState& a, const FockState& b) {
    long long da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.tie() < b.tie();
  }
  std::string str() const;
};

// Exact zero-mode eigenvalues on the highest-weight vector.
struct ZeroModeEigen {
  AlgNum p0;        // rational multiple of sqrt(2kr(r-k))^{-1}
  AlgNum p1, p2;    // integers J and -M
  Frac pi_hat;      // sqrt(2r(r-k)/k) P0 - ((r-k)/k) P2; equals n-1 on
                    // physical labels
  Frac pi_hat_p;    // sqrt(2r(r-k)/k) P0 - (r/k) P2; equals n'-1
};

ZeroModeEigen zero_mode_eigen(const FockLabel& label, const Params& pp);

// Pairing constant of [P_j, Q_j] in the conventions above (j = 0 refers to
// the iQ_0 combination, so all three are real).
Frac zero_mode_pairing(int j, const Params& pp);

// N_j(m) with [a_{j,m}, a_{j,-m}] = N_j(m), as an exact rational function
// of q: N_0 = [2m][km][rm]/(m [(r-k)m]), N_1 = [2m][(k+2)m]/m,
// N_2 = -[2m][km]/m.  Odd in m; throws on m = 0.
RatFunc commutator_norm(int j, long long m, const Params& pp);

// Mode rescaling a'_{0,m} = ([(r-k)m]/[rm]) a_{0,m}.
RatFunc a0_prime_factor(long long m, const Params& pp);

// c = (3k/(k+2)) (1 - 2(k+2)/(r(r-k))).
Frac central_charge(const Params& pp);

// Weight formula for arbitrary integer labels (no range check):
// J(J+2)/(4(k+2)) - M^2/(4k) + ((n r - n'(r-k))^2 - k^2)/(4kr(r-k)).
Frac fock_weight(long long J, long long M, long long np, long long n,
                 const Params& pp);

// h_{J,M;n',n} for a label inside the coset window (throws otherwise).
Frac conformal_weight(const FockLabel& label, const Params& pp);

// Diagonal form at M = J: J(k-J)/(2k(k+2)) + momentum part.
Frac conformal_weight_coset(long long J, long long np, long long n,
                            const Params& pp);

// Coefficient of a_{j,-m} a_{j,m} (m > 0) in the mode expansion of L0,
// equal to m / N_j(m).
RatFunc l0_mode_coeff(int j, long long m, const Params& pp);

// Zero-mode part of L0: P1(P1+2)/(4(k+2)) - P2^2/(4k)
// + (1/2) P0 (P0 + sqrt(2k/(r(r-k)))).  Agrees with fock_weight.
Frac l0_zero_part(const FockLabel& label, const Params& pp);

// L0 eigenvalue h + N of a basis state.
Frac l0_eigenvalue(const FockState& state, const Params& pp);

// All basis states of degree <= max_degree, sorted (degree, then shape).
// The count at degree d is the y^d coefficient of prod_n (1-y^n)^{-3}.
std::vector<FockState> enumerate_basis(const FockLabel& label,
                                       long long max_degree);

}  // namespace ellq

#endif
