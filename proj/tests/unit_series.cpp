#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ellq/qseries.hpp"
#include "ellq/biseries.hpp"
#include "ellq/special.hpp"

using namespace ellq;

namespace {

QSeries random_series(std::mt19937& rng, long long den, Frac cutoff,
                      int terms, long long emin, long long emax) {
  std::uniform_int_distribution<long long> expd(emin, emax);
  std::uniform_int_distribution<int> coefd(-9, 9);
  QSeries s(den, cutoff);
  for (int i = 0; i < terms; ++i)
    s.add_coeff(Frac(expd(rng), den), Rat(coefd(rng)));
  return s;
}

}  // namespace

TEST_CASE("frac arithmetic normalizes and compares exactly") {
  CHECK(Frac(2, 4) == Frac(1, 2));
  CHECK(Frac(-3, -6) == Frac(1, 2));
  CHECK(Frac(1, 3) + Frac(1, 6) == Frac(1, 2));
  CHECK(Frac(1, 3) * Frac(3, 5) == Frac(1, 5));
  CHECK(Frac(7, 2) / Frac(7, 4) == Frac(2));
  CHECK(Frac(1, 3) < Frac(1, 2));
  CHECK(Frac(-5, 3) < Frac(-1, 3));
  CHECK(Frac(5, 15).str() == "1/3");
}

TEST_CASE("geometric series inversion") {
  QSeries f = QSeries::constant(Rat(1), 1, Frac(20));
  f.add_coeff(Frac(1), Rat(-1));  // 1 - q
  QSeries g = f.inverted();
  for (long long n = 0; n <= 20; ++n) CHECK(g.coeff(Frac(n)) == 1);
  CHECK((f * g).equals_to_cutoff(QSeries::constant(Rat(1), 1, Frac(20))));
}

TEST_CASE("inversion with negative valuation is exact to its cutoff") {
  QSeries f = QSeries::monomial(Rat(2), Frac(-3, 2), 2, Frac(12));
  f.add_coeff(Frac(1, 2), Rat(5));
  f.add_coeff(Frac(3), Rat(-7));
  QSeries g = f.inverted();
  CHECK(g.cutoff() == Frac(15));  // 12 - 2*(-3/2)
  QSeries prod = f * g;
  QSeries one = QSeries::constant(Rat(1), 2, prod.cutoff());
  CHECK(prod.equals_to_cutoff(one));
}

TEST_CASE("exponential and logarithm invert each other") {
  QSeries g(6, Frac(15));
  g.add_coeff(Frac(1, 3), Rat(2));
  g.add_coeff(Frac(5, 6), Rat(-1, 3));
  g.add_coeff(Frac(2), Rat(7, 2));
  QSeries h = g.exponential();
  CHECK(h.coeff(Frac(0)) == 1);
  CHECK(h.logarithm().equals_to_cutoff(g));

  QSeries e1 = g.exponential();
  QSeries e2 = g.scaled(Rat(-1)).exponential();
  CHECK((e1 * e2).equals_to_cutoff(QSeries::constant(Rat(1), 6, Frac(15))));
}

TEST_CASE("ring laws on random sparse Laurent series") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 30; ++trial) {
    QSeries a = random_series(rng, 6, Frac(10), 8, -12, 40);
    QSeries b = random_series(rng, 6, Frac(9), 8, -12, 40);
    QSeries c = random_series(rng, 6, Frac(11), 8, -12, 40);
    CHECK(((a + b) * c).equals_to_cutoff(a * c + b * c));
    CHECK((a * (b * c)).equals_to_cutoff((a * b) * c));
    CHECK((a * b).equals_to_cutoff(b * a));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("product cutoff respects valuations") {
  // multiplying by q^5 extends the exactness window by 5
  QSeries a = QSeries::monomial(Rat(1), Frac(5), 1, Frac(30));
  QSeries b = QSeries::constant(Rat(1), 1, Frac(10));
  b.add_coeff(Frac(1), Rat(3));
  CHECK((a * b).cutoff() == Frac(15));
  // dividing by q^5 shrinks it
  QSeries c = QSeries::monomial(Rat(1), Frac(-5), 1, Frac(30));
  CHECK((c * b).cutoff() == Frac(5));
}

TEST_CASE("dump and parse round trip") {
  std::mt19937 rng(7);
  QSeries a = random_series(rng, 12, Frac(55, 7), 10, -30, 90);
  a.add_coeff(Frac(1, 12), Rat(BigInt("123456789123456789"), BigInt(7)));
  QSeries b = QSeries::parse(a.dump());
  CHECK(b.denom() == a.denom());
  CHECK(b.cutoff() == a.cutoff());
  CHECK(b.equals_to_cutoff(a));
  CHECK(a.dump() == b.dump());
}

TEST_CASE("euler product matches direct finite product") {
  Frac cut(10);
  QSeries direct = QSeries::constant(Rat(1), 1, cut);
  for (long long n = 1; n <= 11; ++n) {
    QSeries f = QSeries::constant(Rat(1), 1, cut);
    f.add_coeff(Frac(n), Rat(-1));
    direct *= f;
  }
  CHECK(euler_phi_series(1, cut).equals_to_cutoff(direct));
}

TEST_CASE("eta cubed has odd-coefficient square-triangular pattern") {
  QSeries eta = dedekind_eta_series(1, Frac(10));
  QSeries e3 = eta * eta * eta;
  // y^{1/8} sum_n (-1)^n (2n+1) y^{n(n+1)/2}
  long long expect[] = {1, -3, 0, 5, 0, 0, -7, 0, 0, 0};
  for (long long n = 0; n < 10; ++n)
    CHECK(e3.coeff(Frac(1, 8) + Frac(n)) == expect[n]);
}

TEST_CASE("single-nome product matches direct finite product") {
  Frac cut(18);
  // (q; q^2)
  QSeries direct = QSeries::constant(Rat(1), 1, cut);
  for (long long n = 0; 1 + 2 * n <= 18; ++n) {
    QSeries f = QSeries::constant(Rat(1), 1, cut);
    f.add_coeff(Frac(1 + 2 * n), Rat(-1));
    direct *= f;
  }
  CHECK(poch_series(Frac(1), {Frac(2)}, 1, cut).equals_to_cutoff(direct));
}

TEST_CASE("two-nome product matches direct finite product") {
  Frac cut(14);
  // (q^3; q^2, q^4): factors 1 - q^{3 + 2a + 4b}
  QSeries direct = QSeries::constant(Rat(1), 1, cut);
  for (long long a = 0; 3 + 2 * a <= 14; ++a)
    for (long long b = 0; 3 + 2 * a + 4 * b <= 14; ++b) {
      QSeries f = QSeries::constant(Rat(1), 1, cut);
      f.add_coeff(Frac(3 + 2 * a + 4 * b), Rat(-1));
      direct *= f;
    }
  CHECK(poch_series(Frac(3), {Frac(2), Frac(4)}, 1, cut).equals_to_cutoff(direct));
}

TEST_CASE("product with negative argument exponent peels Laurent factors") {
  Frac cut(10);
  // (q^{-3}; q^2) = (1-q^{-3})(1-q^{-1}) (q; q^2)
  QSeries peel = QSeries::constant(Rat(1), 1, cut);
  for (long long e : {-3, -1}) {
    QSeries f = QSeries::constant(Rat(1), 1, cut + Frac(4));
    f.add_coeff(Frac(e), Rat(-1));
    peel *= f;
  }
  QSeries expect = peel * poch_series(Frac(1), {Frac(2)}, 1, cut + Frac(4));
  QSeries got = poch_series(Frac(-3), {Frac(2)}, 1, cut);
  CHECK(got.equals_to_cutoff(expect.truncated(got.cutoff())));
}

TEST_CASE("vanishing factor is rejected unless explicitly omitted") {
  CHECK_THROWS(poch_series(Frac(0), {Frac(2)}, 1, Frac(10)));
  CHECK_THROWS(poch_series(Frac(-2), {Frac(1), Frac(3)}, 1, Frac(10)));
  int zc = -1;
  QSeries reg = poch_series(Frac(0), {Frac(2)}, 1, Frac(10), true, &zc);
  CHECK(zc == 1);
  CHECK(reg.equals_to_cutoff(poch_series(Frac(2), {Frac(2)}, 1, Frac(10))));
}

TEST_CASE("triple product theta equals its product form") {
  Frac cut(16);
  // Theta_s(z) with z = q^3, s = q^5: (z;s)(s/z;s)(s;s)
  QSeries lhs = theta_triple_series(Frac(3), Frac(5), 1, cut);
  QSeries rhs = poch_series(Frac(3), {Frac(5)}, 1, cut) *
                poch_series(Frac(2), {Frac(5)}, 1, cut) *
                poch_series(Frac(5), {Frac(5)}, 1, cut);
  CHECK(lhs.equals_to_cutoff(rhs));
}

TEST_CASE("theta quasi-periodicity in series form") {
  // Theta_s(s z) = -z^{-1} Theta_s(z)
  Frac u(3, 2), x(7);
  QSeries lhs = theta_triple_series(u + x, x, 2, Frac(20));
  QSeries rhs = theta_triple_series(u, x, 2, Frac(20)).shifted(-u).scaled(Rat(-1));
  CHECK(lhs.equals_to_cutoff(rhs.truncated(lhs.cutoff())));
}

TEST_CASE("bracket function symmetries") {
  long long x = 5;
  Frac u(7, 3);
  Frac cut(24);
  QSeries b = bracket_series(u, x, 3, cut);
  SUBCASE("vanishes at multiples of the modulus") {
    CHECK(bracket_series(Frac(0), x, 1, cut).is_zero());
    CHECK(bracket_series(Frac(5), x, 1, cut).is_zero());
    CHECK(bracket_series(Frac(-10), x, 1, cut).is_zero());
  }
  SUBCASE("odd under negation") {
    QSeries c = bracket_series(-u, x, 3, cut);
    CHECK(c.equals_to_cutoff(b.scaled(Rat(-1)).truncated(c.cutoff())));
  }
  SUBCASE("antiperiodic under a modulus shift") {
    QSeries c = bracket_series(u + Frac(x), x, 3, cut);
    CHECK(c.equals_to_cutoff(b.scaled(Rat(-1)).truncated(c.cutoff())));
  }
}

TEST_CASE("numeric product agrees with series evaluation") {
  double q = 0.45;
  Frac cut(60);
  QSeries s = poch_series(Frac(1), {Frac(2)}, 1, cut);
  double lhs = s.eval(q);
  double rhs = std::real(poch_num(Cx(q), {Cx(q * q)}));
  CHECK(std::abs(lhs - rhs) < 1e-13);

  QSeries s2 = poch_series(Frac(3), {Frac(2), Frac(4)}, 1, cut);
  double rhs2 = std::real(
      poch_num(Cx(std::pow(q, 3)), {Cx(q * q), Cx(std::pow(q, 4))}));
  CHECK(std::abs(s2.eval(q) - rhs2) < 1e-13);
}

TEST_CASE("numeric theta and bracket agree with series evaluation") {
  double q = 0.5;
  Frac cut(64);
  QSeries th = theta_triple_series(Frac(3), Frac(5), 1, cut);
  Cx tn = theta_triple_num(Cx(std::pow(q, 3)), Cx(std::pow(q, 5)));
  CHECK(std::abs(th.eval(q) - std::real(tn)) < 1e-13);

  Frac u(7, 3);
  QSeries br = bracket_series(u, 5, 3, cut);
  Cx bn = bracket_num(q, Cx(7.0 / 3.0), 5);
  CHECK(std::abs(br.eval(q) - std::real(bn)) < 1e-12);

  // complex argument: compare against an explicit finite theta sum
  Cx uu(0.3, 1.1);
  Cx direct = bracket_num(q, uu, 5);
  const double lq = std::log(q);
  Cx z = std::exp(2.0 * uu * lq);
  Cx acc = 0.0;
  for (long long m = -40; m <= 40; ++m)
    acc += Cx((m & 1) ? -1.0 : 1.0) *
           std::exp(double(5 * m * (m - 1)) * lq) * std::pow(z, double(m));
  Cx viasum = std::exp((uu * uu / 5.0 - uu) * lq) * acc;
  CHECK(std::abs(direct - viasum) < 1e-12);
}

TEST_CASE("variable substitution powers the lattice") {
  QSeries s = QSeries::monomial(Rat(3), Frac(1, 2), 2, Frac(8));
  s.add_coeff(Frac(2), Rat(-1));
  QSeries t = s.var_pow(Frac(3, 2));
  CHECK(t.coeff(Frac(3, 4)) == 3);
  CHECK(t.coeff(Frac(3)) == -1);
  CHECK(t.cutoff() == Frac(12));
}

TEST_CASE("bivariate product expansion against the geometric oracle") {
  Frac cut(14);
  BiSeries p = poch_bi(Frac(0), 1, {Frac(2), Frac(4)}, 1, 1, cut, 6);
  // coefficient of x^1 is -sum q^{2n1+4n2} = -1/((1-q^2)(1-q^4))
  QSeries g1 = QSeries::constant(Rat(1), 1, cut);
  g1.add_coeff(Frac(2), Rat(-1));
  QSeries g2 = QSeries::constant(Rat(1), 1, cut);
  g2.add_coeff(Frac(4), Rat(-1));
  QSeries oracle = QSeries::zero(1, cut) - (g1 * g2).inverted();
  CHECK(p.coeff(1).equals_to_cutoff(oracle));
  CHECK(p.coeff(0).equals_to_cutoff(QSeries::constant(Rat(1), 1, cut)));
  // x^2 coefficient: sum over unordered pairs of distinct lattice factors
  QSeries x2 = p.coeff(2);
  QSeries sq = oracle * oracle;  // (sum q^c)^2 = sum_{pairs} + sum q^{2c}
  QSeries diag = (g1.var_pow(Frac(2)) * g2.var_pow(Frac(2))).inverted();
  CHECK((x2 + x2).equals_to_cutoff(sq - diag));
}

TEST_CASE("bivariate theta sum equals its triple product form") {
  Frac cut(16);
  long long xw = 9;
  for (Frac a : {Frac(1), Frac(3), Frac(1, 2)}) {
    Frac s(5);
    BiSeries sum = theta_bi(a, 1, s, 2, cut, xw);
    BiSeries prod = poch_bi(a, 1, {s}, 1, 2, cut, xw) *
                    poch_bi(s - a, -1, {s}, 1, 2, cut, xw) *
                    BiSeries::monomial(poch_series(s, {s}, 2, cut), 0, xw);
    CHECK(sum.equals_to_cutoff(prod));
  }
}

TEST_CASE("bivariate theta shift identity") {
  // Theta_s(s z) = -z^{-1} Theta_s(z) with z = q^a x
  Frac cut(18), a(2), s(7);
  BiSeries lhs = theta_bi(a + s, 1, s, 1, cut, 8);
  BiSeries rhs =
      -(BiSeries::monomial(QSeries::monomial(Rat(1), Frac(0) - a, 1, cut), -1,
                           8) *
        theta_bi(a, 1, s, 1, cut, 8));
  CHECK(lhs.equals_to_cutoff(rhs));
}

TEST_CASE("bivariate factor inverses and division") {
  Frac cut(12);
  BiSeries f = poch_bi(Frac(3), 1, {Frac(2)}, 1, 1, cut, 6);
  BiSeries g = poch_bi(Frac(3), 1, {Frac(2)}, -1, 1, cut, 6);
  CHECK((f * g).equals_to_cutoff(BiSeries::one(1, cut, 6)));
  // negative argument exponents peel into positive inverse powers; the
  // peeled q^{-3} shifts valuations down, so the x-window must clear the
  // q-cutoff by that margin for the identity to close
  BiSeries h = poch_bi(Frac(-3), -1, {Frac(2)}, -1, 1, cut, 18);
  BiSeries hh = poch_bi(Frac(-3), -1, {Frac(2)}, 1, 1, cut, 18);
  CHECK((h * hh).equals_to_cutoff(BiSeries::one(1, cut, 18)));
  // Neumann inversion agrees with the closed-form factor inverse
  BiSeries fi = f.inverted();
  CHECK(fi.equals_to_cutoff(g));
}

TEST_CASE("bivariate substitution collapses to the single-variable engine") {
  Frac cut(15);
  BiSeries p = poch_bi(Frac(1), 1, {Frac(3), Frac(5)}, 1, 1, cut, 20);
  for (Frac b : {Frac(0), Frac(2), Frac(1, 2)}) {
    QSeries direct = poch_series(Frac(1) + b, {Frac(3), Frac(5)}, b.den, cut);
    CHECK(p.at_qpow(b).equals_to_cutoff(direct));
  }
  // x -> q^s x then x = q^t equals x = q^{s+t}
  BiSeries ps = p.x_scaled(Frac(3, 2));
  CHECK(ps.at_qpow(Frac(1, 2)).equals_to_cutoff(p.at_qpow(Frac(2))));
}

TEST_CASE("bivariate numeric evaluation") {
  double q = 0.3;
  Cx x(0.2, 0.0);
  Frac cut(40);
  BiSeries th = theta_bi(Frac(2), 1, Frac(5), 1, cut, 25);
  Cx direct = theta_triple_num(Cx(std::pow(q, 2)) * x, Cx(std::pow(q, 5)));
  CHECK(std::abs(th.eval(q, x) - direct) < 1e-12);
  BiSeries pp = poch_bi(Frac(1), 1, {Frac(2), Frac(3)}, 1, 1, cut, 25);
  Cx dp = poch_num(Cx(q) * x, {Cx(q * q), Cx(std::pow(q, 3))});
  CHECK(std::abs(pp.eval(q, x) - dp) < 1e-10);
}
