/**
 * @file currents.hpp
 * @brief Catalog of the level-k currents, screening currents, parafermion
 *        pieces and vertex operators as exact vertex descriptors, together
 *        with the scalar elliptic functions entering their exchange
 *        relations.
 */
#ifndef ELLQ_CURRENTS_HPP
#define ELLQ_CURRENTS_HPP

#include <string>

#include "ellq/biseries.hpp"
#include "ellq/vertex.hpp"

namespace ellq {

/**
 * Named currents on the three-boson Fock space:
 *   "k"     diagonal current, one vertex, shifts (n', n) by (-1, -1)
 *   "E"     raising current, parafermion pair times e^{-phi_0}, (0, -2)
 *   "F"     lowering current, parafermion pair times e^{+phi'_0}, (-2, 0)
 *   "H+"    kappa * k(q^{s+1}z) k(q^{s-1}z), s = +(r - k/2); the kappa
 *   "H-"    constant cancels the contraction scalar exactly, so the result
 *           is a single vertex with rational weight (s = -(r - k/2))
 *   "S"     parafermion screening current, J -> J - 2
 *   "eta"   fermionic screening current, (J, M) -> (J + k + 2, M + k)
 *   "Psi+"  parafermion current, M -> M - 2
 *   "Psi-"  parafermion current, M -> M + 2
 * Throws std::invalid_argument on any other name.
 */
CurrentSum build_current(const std::string& name, const Params& pp);

/**
 * H^{+-}(z) as a fusion: k(q^{s+1} z) k(q^{s-1} z) normal-ordered by
 * fuse_at, then multiplied by the kappa constant and its monomial.  The
 * z-monomials of kappa and the kernel cancel exactly, and the surviving
 * scalar is 1 up to the cutoff; build_current("H+-") folds it away after
 * asserting that.
 */
FuseResult current_h(int sign, const Params& pp, long long den,
                     const Frac& q_cutoff);

/**
 * Top components of the vertex operators, 0 <= l <= k (std::out_of_range
 * otherwise):
 *   "Phi"    phi_{l,l}       * e^{-phi'_0(l;2,k|z)}   (n' + l)
 *   "Psi*"   phi_{l,-l}      * e^{+phi_0(l;2,k|z)}    (n + l)
 *   "tPhi"   phi_{k-l,l-k}   * e^{-phi'_0(l;2,k|z)}   (n' + l)
 *   "tPsi*"  phi_{k-l,k-l}   * e^{+phi_0(l;2,k|z)}    (n + l)
 *   "phi+"   the bare parafermion primary phi_{l,+l}
 *   "phi-"   ... and phi_{l,-l}
 */
CurrentSum build_vertex(const std::string& name, long long l,
                        const Params& pp);

// Parafermion primary phi_{l, sign*l}(z); identity vertex at l = 0.
ExpVertex parafermion_primary(long long l, int sign, const Params& pp);

/**
 * Descriptor-level r -> infinity degeneration: every bracket factor [X m]
 * with r-dependent X is dropped from the oscillator patterns; zero modes
 * are left untouched.
 */
ExpVertex r_infinity_limit(const ExpVertex& v);

/**
 * One factor (q^a x^e; q^{nomes})_inf^{power}, or with `theta` set the
 * triple product Theta_{q^{nomes[0]}}(q^a x^e)^{power}.
 */
struct EFactor {
  Frac a;
  long long e = 0;
  std::vector<Frac> nomes;
  long long power = 1;
  bool theta = false;
};

// Scalar monomial c * q^{qe} * x^{xe}.
struct EMono {
  Rat c = Rat(1);
  Frac qe;
  Frac xe;
};

/**
 * Product of infinite-product factors times a monomial, evaluable as a
 * bivariate series or numerically.  The series form excludes the monomial,
 * whose x-exponent is fractional in general.
 */
struct EllipticFunction {
  EMono mono;
  std::vector<EFactor> fac;

  BiSeries series(long long den, const Frac& q_cutoff,
                  long long x_cutoff) const;
  // value at x = q^s (monomial included) with vanishing lattice factors
  // omitted and counted
  QSeries series_at(const Frac& s, long long den, const Frac& q_cutoff,
                    int* zero_count = nullptr) const;
  // numeric value including the monomial; principal branch of x^{xe}
  Cx eval(double q, Cx x) const;

  EllipticFunction reciprocal() const;
  // substitute x -> 1/x
  EllipticFunction at_x_inverse() const;
  // substitute x -> q^s x
  EllipticFunction x_scaled(const Frac& s) const;
  EllipticFunction times(const EllipticFunction& o) const;
  // true when the monomial is 1 and all factors cancel pairwise
  bool is_unit() const;
};

/**
 * Exchange factors of the top type I / type II vertex operators and the
 * related scalar functions:
 *   "r_k"      Phi(z)Phi(w) factor, argument x = w/z
 *   "s_1"      Psi*(z)Psi*(w) factor
 *   "sigma"    building block of s_1, stored factored
 *   "chi"      mixed Phi/Psi* factor
 *   "kappa_u"  1/r_k, the fusion-RSOS partition function per site
 * Throws std::invalid_argument on any other name.
 */
EllipticFunction commutation_function(const std::string& name,
                                      const Params& pp);

// xi(q^a x^e; p or p*, q) as factor data.
EllipticFunction xi_function(const Frac& a, long long e, bool star,
                             const Params& pp);

// The same four-factor ratio expanded as a bivariate series.
BiSeries xi_series(const Frac& a, long long e, bool star, const Params& pp,
                   long long den, const Frac& q_cutoff, long long x_cutoff);

// The constant xi(x;p*,q)/xi(x;p,q) at x = q^{-2}; both sides have one
// vanishing lattice factor, omitted consistently.
QSeries kappa_constant(const Params& pp, long long den, const Frac& q_cutoff);

/**
 * Level-one q-Virasoro building block Lambda(z) = :tPhi(zq) tPhi(zq^{-1}):
 * as a fused descriptor with its contraction scalar at separation q^{-2};
 * T(z) = Lambda(zq) + Lambda(zq^{-1}).  Requires k = 1.
 */
FuseResult qvirasoro_lambda(const Params& pp, long long den,
                            const Frac& q_cutoff);

}  // namespace ellq

#endif
