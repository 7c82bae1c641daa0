/**
 * @file vertex.hpp
 * @brief Normal-ordering engine: exponential vertex descriptors over the
 *        three-boson Fock space, pairwise contraction kernels in closed
 *        product form, fusion at coincident points, and a brute-force
 *        matrix-element oracle.
 *
 * A vertex is :exp(sum of boson fields):, stored as exact data:
 *   - a scalar weight c(q) * z^{wz},
 *   - zero modes  e^{qc_j Q~_j} z^{pc_j P_j} q^{qp_j P_j}  (Q~_0 = iQ_0,
 *     Q's normal-ordered to the left of all P's),
 *   - oscillator coefficient patterns: the exponent carries
 *     sum_{m != 0} c_j(m) a_{j,m} z^{-m} with c_j(m) given symbolically by
 *     bracket-quotient terms  scale * (q-q^{-1})^wexp * prod [X m] / prod [Y m]
 *     * q^{d m}, valid on all m, only m > 0, or only m < 0.
 * Products of two vertices normal-order with a scalar kernel
 *   exp(sum_{m>0} K(m) x^m) * z^{E} q^{G},  x = w/z,
 * where m K(m) is a rational function of t = q^{m/lat}; the engine factors
 * it mechanically into lattice-geometric pieces, i.e. the kernel into a
 * finite product of multi-nome infinite products, which gives exact pole
 * orders and regularized values at any x = q^s.
 */
#ifndef ELLQ_VERTEX_HPP
#define ELLQ_VERTEX_HPP

#include <map>

#include "ellq/fock.hpp"

namespace ellq {

// Integer linear form a + b*r; keeps the restriction height symbolic so
// descriptors admit the r -> infinity degeneration check.
struct LinR {
  long long a = 0;
  long long b = 0;

  LinR() = default;
  LinR(long long a_) : a(a_) {}
  LinR(long long a_, long long b_) : a(a_), b(b_) {}
  long long eval(const Params& pp) const { return a + b * pp.r; }
  bool depends_r() const { return b != 0; }
  friend bool operator==(const LinR& x, const LinR& y) {
    return x.a == y.a && x.b == y.b;
  }
};

enum class OscRange { full, pos, neg };

/**
 * One bracket-quotient summand of an oscillator coefficient function:
 * c(m) = scale * (q - q^{-1})^wexp * prod_i [num_i m] / prod_i [den_i m]
 *        * q^{dpos * m}   (m > 0)
 *        * q^{dneg * m}   (m < 0),
 * restricted to the declared range.  [X m] is the q-integer.
 */
struct OscTerm {
  int j = 0;
  OscRange range = OscRange::full;
  Rat scale = Rat(1);
  long long wexp = 0;
  std::vector<LinR> num;
  std::vector<LinR> den;
  Frac dpos;
  Frac dneg;
};

struct ExpVertex {
  RatFunc cq = RatFunc::one();  // scalar weight in q
  Frac wz;                      // scalar power of the vertex point z
  std::array<AlgNum, 3> qc{};   // Q-exponents (j = 0: coefficient of iQ_0)
  std::array<AlgNum, 3> pc{};   // z^{P}-exponents
  std::array<AlgNum, 3> qp{};   // q^{P}-exponents (sector-dependent scalars)
  long long dnp = 0;            // declared momentum shift of n'
  long long dn = 0;             // ... and of n
  std::vector<OscTerm> osc;
};

// A current as a finite sum of vertices; all summands must share the same
// zero-mode momentum (equal qc), so label shifts are well-defined.
using CurrentSum = std::vector<ExpVertex>;

/**
 * Attach the standard boson fields, multiplied by sign = +-1, to a vertex:
 *   full field, color 1,2:  -(A/(BC))(Q_j + P_j log z)
 *                           + sum_{m!=0} [Am]/([Bm][Cm]) a_{j,m} z^{-m} q^{D|m|}
 *   full field, color 0:    +(A/(BC)) sqrt(2kr/(r-k)) (iQ_0 + P_0 log z) + sum(...)
 *   primed color 0:         same with sqrt(2k(r-k)/r) and the extra factor
 *                           [(r-k)m]/[rm] on every oscillator
 *   half field (color 1,2): (P_j/2) log q
 *                           + (q-q^{-1}) sum_{m>0} [Am]/[Bm] a_{j,+-m} z^{-+m} q^{Cm}
 * `ann` selects the annihilation-side half field (modes a_{j,+m}).
 */
void add_full_field(ExpVertex& v, int j, LinR A, LinR B, LinR C, const Frac& D,
                    int sign, const Params& pp);
void add_full_field_primed0(ExpVertex& v, LinR A, LinR B, LinR C, const Frac& D,
                            int sign, const Params& pp);
void add_half_field(ExpVertex& v, int j, bool ann, LinR A, LinR B,
                    const Frac& C, int sign, const Params& pp);

// Declare the (n', n) lattice shift of the vertex and assert it against the
// accumulated Q_0 exponent.
void set_momentum_shift(ExpVertex& v, long long dnp, long long dn,
                        const Params& pp);

// Product of two vertices at the same point.
ExpVertex merge_vertices(const ExpVertex& a, const ExpVertex& b);

// Substitute z -> q^s z.
ExpVertex shifted_arg(const ExpVertex& v, const Frac& s, const Params& pp);

// Exact oscillator coefficient c_j(m), m != 0, as a rational function of q.
RatFunc osc_coeff(const ExpVertex& v, int j, long long m, const Params& pp);

// Semantic equality of oscillator data over 0 < |m| <= mmax.
bool osc_equal(const ExpVertex& a, const ExpVertex& b, const Params& pp,
               long long mmax);

// Label reached from `from` by the vertex's zero-mode shifts; asserts that
// the shifts are integral and consistent with the declared (dnp, dn).
FockLabel shifted_label(const FockLabel& from, const ExpVertex& v,
                        const Params& pp);

// One factor (q^{arg} x; q^{nomes[0]}, q^{nomes[1]}, ...)_inf^{power} of a
// kernel's closed product form.
struct PochFactor {
  Frac arg;
  std::vector<Frac> nomes;
  long long power = 1;
};

/**
 * Scalar kernel of V1(z) V2(w):  V1(z) V2(w) = kernel * :V1(z)V2(w): with
 * kernel = z^{z_pow} q^{q_pow} exp(sum_{m>=1} K(m) x^m), x = w/z.  The
 * zero-mode monomial comes from moving V1's P-factors past V2's Q's.
 */
class ContractionKernel {
 public:
  ContractionKernel(const ExpVertex& v1, const ExpVertex& v2,
                    const Params& pp);

  const Frac& z_pow() const { return z_pow_; }
  const Frac& q_pow() const { return q_pow_; }
  long long lattice() const { return lat_; }
  // m K(m) as a rational function of t, where t^e stands for q^{e m}.
  const RatFunc& log_coeff_sym() const { return rsym_; }
  // Exact K(m) for a concrete m >= 1.
  RatFunc coeff(long long m) const;
  const std::vector<PochFactor>& factors() const { return fac_; }

  // Kernel value at x = q^s with vanishing lattice factors omitted; their
  // signed count (the pole order: positive = pole, negative = zero) is
  // written to *pole.  Exact q-series; excludes the z^{z_pow} monomial but
  // includes q^{q_pow}.
  QSeries value_at(const Frac& s, long long den, const Frac& cutoff,
                   long long* pole = nullptr) const;
  long long pole_order_at(const Frac& s) const;

  // Closed-form numeric value of the exponential part at complex x
  // (q^{q_pow} included, z^{z_pow} not).
  Cx eval(double q, Cx x, double tail_eps = 1e-15) const;

  // Coefficients of x^0..x^depth of exp(sum K(m) x^m), exact in q.
  std::vector<RatFunc> exp_coeffs(long long depth) const;

 private:
  Params pp_;
  Frac z_pow_, q_pow_;
  long long lat_ = 1;
  RatFunc rsym_;
  std::vector<PochFactor> fac_;
};

struct FuseResult {
  long long pole_order = 0;
  ExpVertex vertex;   // :V1(z) V2(q^s z):
  QSeries scalar;     // regularized kernel value (q-series, z-power folded
                      // into vertex.wz)
};

// Normal-ordered product at coincident points w = q^s z.
FuseResult fuse_at(const ExpVertex& v1, const ExpVertex& v2, const Frac& s,
                   const Params& pp, long long den, const Frac& cutoff);

// One branch of V(z)|state>: coefficient * z^{zpow} * |out>.
struct ApplyTerm {
  FockState state;
  Frac zpow;
  RatFunc coef;
};

std::vector<ApplyTerm> apply_vertex(const ExpVertex& v, const FockState& in,
                                    long long degree_cap, const Params& pp);
std::vector<ApplyTerm> apply_current(const CurrentSum& c, const FockState& in,
                                     long long degree_cap, const Params& pp);
// Coefficient of z^{-mode_exp} of C(z)|state>.
std::vector<ApplyTerm> mode_apply(const CurrentSum& c, const Frac& mode_exp,
                                  const FockState& in, long long degree_cap,
                                  const Params& pp);

// <state|state> with the dual pairing a_{j,m}^dag = a_{j,-m}.
RatFunc state_norm(const FockState& st, const Params& pp);
// <bra|ket>: zero unless both sides are the identical basis monomial.
RatFunc pair_states(const FockState& bra, const FockState& ket,
                    const Params& pp);

/**
 * <bra| C_1(z_1) ... C_n(z_n) |ket> as exact multivariate Laurent data:
 * map from the exponent tuple (e_1..e_n) to the coefficient of
 * z_1^{e_1}...z_n^{e_n}.  Intermediate states truncated at degree_cap,
 * which bounds every retained exponent window exactly.
 */
std::map<std::vector<Frac>, RatFunc> matrix_element(
    const std::vector<const CurrentSum*>& word, const FockState& bra,
    const FockState& ket, long long degree_cap, const Params& pp);

}  // namespace ellq

#endif
