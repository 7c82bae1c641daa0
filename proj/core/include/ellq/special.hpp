/**
 * @file special.hpp
 * @brief Infinite products and theta-type special functions, both as exact
 *        truncated series in a formal nome and as complex-numeric values.
 *
 * Series arguments are monomials q^e of the formal variable; numeric
 * arguments are complex with every nome strictly inside the unit disk.
 */
#ifndef ELLQ_SPECIAL_HPP
#define ELLQ_SPECIAL_HPP

#include <vector>

#include "ellq/qseries.hpp"

namespace ellq {

/**
 * (z; s_1,...,s_d)_inf = prod_{n>=0} (1 - z s^n) with z = q^{z_exp},
 * s_i = q^{nome_exps[i]}, every nome exponent > 0.
 *
 * Lattice points with z_exp + n.s <= 0 contribute explicit Laurent factors.
 * A factor that degenerates to (1 - q^0) makes the product vanish; with
 * omit_zero_factors those factors are skipped and counted in *zero_count,
 * which gives the regularized product used in ratios where the zero factors
 * cancel pairwise.
 */
QSeries poch_series(const Frac& z_exp, const std::vector<Frac>& nome_exps,
                    long long den, const Frac& cutoff,
                    bool omit_zero_factors = false,
                    int* zero_count = nullptr);

/// Numeric (z; s_1,...,s_d)_inf by direct factor enumeration.
Cx poch_num(Cx z, const std::vector<Cx>& nomes, double tail_eps = 1e-17);

/**
 * Theta_s(z) = (z;s)(s/z;s)(s;s) = sum_n (-1)^n s^{n(n-1)/2} z^n,
 * as a Laurent series with z = q^{z_exp}, s = q^{s_exp}, s_exp > 0.
 */
QSeries theta_triple_series(const Frac& z_exp, const Frac& s_exp,
                            long long den, const Frac& cutoff);
Cx theta_triple_num(Cx z, Cx s, double tail_eps = 1e-18);

/**
 * Bracket function [u]_x = q^{u^2/x - u} Theta_{q^{2x}}(q^{2u}), x > 0.
 * Zeros at u in x*Z; quasi-periodicity [u+x]_x = -[u]_x.
 */
QSeries bracket_series(const Frac& u, long long x, long long den,
                       const Frac& cutoff);
Cx bracket_num(double q, Cx u, long long x);

/// Euler product phi(y) = prod_{n>=1} (1 - y^n) via the pentagonal sum.
QSeries euler_phi_series(long long den, const Frac& cutoff);

/// eta(y) = y^{1/24} phi(y).
QSeries dedekind_eta_series(long long den, const Frac& cutoff);

}  // namespace ellq

#endif
