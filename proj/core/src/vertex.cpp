#include "ellq/vertex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ellq/special.hpp"

namespace ellq {

namespace {

// (q - q^{-1}) as an exact Laurent polynomial.
QSeries unit_poly(long long den = 1) {
  QSeries s = QSeries::zero(den, QSeries::inf_cutoff());
  s.add_coeff(Frac(1), Rat(1));
  s.add_coeff(Frac(-1), Rat(-1));
  return s;
}

// t^X - t^{-X} on the lattice (1/den)Z.
QSeries tdiff(long long X, long long den) {
  QSeries s = QSeries::zero(den, QSeries::inf_cutoff());
  if (X == 0) return s;
  s.add_coeff(Frac(X), Rat(1));
  s.add_coeff(Frac(-X), Rat(-1));
  return s;
}

Rat rat_binom(long long n, long long s) {
  Rat b(1);
  for (long long i = 0; i < s; ++i) b *= Rat(n - i) / Rat(i + 1);
  return b;
}

bool frac_integral(const Frac& f) { return f.den == 1; }

// Zero-mode prefactor of the color-0 fields: sqrt(2kr/(r-k)) = rho/(r-k)
// for the unprimed field, sqrt(2k(r-k)/r) = rho/r for the primed one.
AlgNum rho_over(long long d, const Params& pp) {
  return AlgNum(Frac(0), Frac(1, d), pp.rho2());
}

}  // namespace

void add_full_field(ExpVertex& v, int j, LinR A, LinR B, LinR C, const Frac& D,
                    int sign, const Params& pp) {
  if (j < 0 || j > 2) throw std::domain_error("add_full_field: bad color");
  OscTerm t;
  t.j = j;
  t.scale = Rat(sign);
  t.num = {A};
  t.den = {B, C};
  t.dpos = D;
  t.dneg = -D;
  v.osc.push_back(t);
  Frac pref(sign * A.eval(pp), B.eval(pp) * C.eval(pp));
  if (j == 0) {
    AlgNum z = AlgNum(pref) * rho_over(pp.r - pp.k, pp);
    v.qc[0] = v.qc[0] + z;
    v.pc[0] = v.pc[0] + z;
  } else {
    v.qc[j] = v.qc[j] - AlgNum(pref);
    v.pc[j] = v.pc[j] - AlgNum(pref);
  }
}

void add_full_field_primed0(ExpVertex& v, LinR A, LinR B, LinR C,
                            const Frac& D, int sign, const Params& pp) {
  OscTerm t;
  t.j = 0;
  t.scale = Rat(sign);
  t.num = {A, LinR(-pp.k, 1)};  // mode rescaling [(r-k)m]/[rm]
  t.den = {B, C, LinR(0, 1)};
  t.dpos = D;
  t.dneg = -D;
  v.osc.push_back(t);
  Frac pref(sign * A.eval(pp), B.eval(pp) * C.eval(pp));
  AlgNum z = AlgNum(pref) * rho_over(pp.r, pp);
  v.qc[0] = v.qc[0] + z;
  v.pc[0] = v.pc[0] + z;
}

void add_half_field(ExpVertex& v, int j, bool ann, LinR A, LinR B,
                    const Frac& C, int sign, const Params& pp) {
  if (j < 1 || j > 2) throw std::domain_error("add_half_field: bad color");
  OscTerm t;
  t.j = j;
  t.scale = Rat(sign);
  t.wexp = 1;
  t.num = {A};
  t.den = {B};
  if (ann) {
    t.range = OscRange::pos;
    t.dpos = C;
  } else {
    t.range = OscRange::neg;
    t.dneg = -C;
  }
  v.osc.push_back(t);
  v.qp[j] = v.qp[j] + AlgNum(Frac(sign, 2));
  (void)pp;
}

void set_momentum_shift(ExpVertex& v, long long dnp, long long dn,
                        const Params& pp) {
  Frac dc = (v.qc[0] * AlgNum::root(pp.rho2())).rational();
  if (dc != Frac(pp.r * dn - (pp.r - pp.k) * dnp))
    throw std::domain_error("set_momentum_shift: inconsistent Q_0 exponent");
  v.dnp = dnp;
  v.dn = dn;
}

ExpVertex merge_vertices(const ExpVertex& a, const ExpVertex& b) {
  ExpVertex m;
  m.cq = a.cq * b.cq;
  m.wz = a.wz + b.wz;
  for (int j = 0; j < 3; ++j) {
    m.qc[j] = a.qc[j] + b.qc[j];
    m.pc[j] = a.pc[j] + b.pc[j];
    m.qp[j] = a.qp[j] + b.qp[j];
  }
  m.dnp = a.dnp + b.dnp;
  m.dn = a.dn + b.dn;
  m.osc = a.osc;
  m.osc.insert(m.osc.end(), b.osc.begin(), b.osc.end());
  return m;
}

ExpVertex shifted_arg(const ExpVertex& v, const Frac& s, const Params& pp) {
  (void)pp;
  ExpVertex w = v;
  Frac e = s * v.wz;
  if (e != Frac(0))
    w.cq = w.cq * RatFunc::monomial(Rat(1), e, e.den);
  for (OscTerm& t : w.osc) {
    t.dpos = t.dpos - s;
    t.dneg = t.dneg - s;
  }
  for (int j = 0; j < 3; ++j) w.qp[j] = w.qp[j] + v.pc[j] * AlgNum(s);
  return w;
}

RatFunc osc_coeff(const ExpVertex& v, int j, long long m, const Params& pp) {
  if (m == 0) throw std::domain_error("osc_coeff: m = 0");
  RatFunc total = RatFunc::zero();
  for (const OscTerm& t : v.osc) {
    if (t.j != j) continue;
    if (m > 0 && t.range == OscRange::neg) continue;
    if (m < 0 && t.range == OscRange::pos) continue;
    Frac d = (m > 0 ? t.dpos : t.dneg) * Frac(m);
    long long lden = d.den;
    QSeries num = QSeries::constant(t.scale, lden);
    QSeries den = QSeries::constant(Rat(1), lden);
    for (const LinR& X : t.num) num *= qint_poly(X.eval(pp) * m, lden);
    for (const LinR& Y : t.den) {
      QSeries f = qint_poly(Y.eval(pp) * m, lden);
      if (f.is_zero())
        throw std::domain_error("osc_coeff: vanishing bracket in denominator");
      den *= f;
    }
    QSeries w = unit_poly(lden);
    if (t.wexp >= 0)
      for (long long i = 0; i < t.wexp; ++i) num *= w;
    else
      for (long long i = 0; i < -t.wexp; ++i) den *= w;
    num = num.shifted(d);
    total += RatFunc(num, den);
  }
  return total;
}

bool osc_equal(const ExpVertex& a, const ExpVertex& b, const Params& pp,
               long long mmax) {
  for (int j = 0; j < 3; ++j)
    for (long long m = 1; m <= mmax; ++m) {
      if (osc_coeff(a, j, m, pp) != osc_coeff(b, j, m, pp)) return false;
      if (osc_coeff(a, j, -m, pp) != osc_coeff(b, j, -m, pp)) return false;
    }
  return true;
}

FockLabel shifted_label(const FockLabel& from, const ExpVertex& v,
                        const Params& pp) {
  Frac dJ = (v.qc[1] * AlgNum(zero_mode_pairing(1, pp))).rational();
  Frac dM = -(v.qc[2] * AlgNum(zero_mode_pairing(2, pp))).rational();
  if (!frac_integral(dJ) || !frac_integral(dM))
    throw std::domain_error("shifted_label: non-integral parafermion shift");
  Frac dc = (v.qc[0] * AlgNum::root(pp.rho2())).rational();
  if (dc != Frac(pp.r * v.dn - (pp.r - pp.k) * v.dnp))
    throw std::domain_error("shifted_label: momentum shift mismatch");
  return FockLabel{from.J + dJ.num, from.M + dM.num, from.np + v.dnp,
                   from.n + v.dn};
}

namespace {

// c(m) for m > 0 (side = +1) or c(-m) for m > 0 (side = -1) of one term,
// as a rational function of t with t^e meaning q^{e m}.  The net power of
// (q - q^{-1}), which must cancel inside kernel coefficients, is returned
// through *omega.
RatFunc sym_term(const OscTerm& t, int side, long long lat, const Params& pp,
                 long long* omega) {
  QSeries num = QSeries::constant(t.scale, lat);
  QSeries den = QSeries::constant(Rat(1), lat);
  long long sign_flips = 0;
  for (const LinR& X : t.num) {
    num *= tdiff(X.eval(pp), lat);
    ++sign_flips;
  }
  for (const LinR& Y : t.den) {
    QSeries f = tdiff(Y.eval(pp), lat);
    if (f.is_zero())
      throw std::domain_error("kernel: vanishing bracket in denominator");
    den *= f;
    ++sign_flips;
  }
  Frac d = side > 0 ? t.dpos : -t.dneg;
  num = num.shifted(d);
  if (side < 0 && (sign_flips & 1)) num = num.scaled(Rat(-1));
  *omega = t.wexp + static_cast<long long>(t.den.size()) -
           static_cast<long long>(t.num.size());
  return RatFunc(num, den);
}

// m * N_j(m) with t^e = q^{e m}; carries (q - q^{-1})^{-2}.
RatFunc sym_norm(int j, long long lat, const Params& pp) {
  QSeries two = tdiff(2, lat);
  switch (j) {
    case 0: {
      QSeries num = two * tdiff(pp.k, lat) * tdiff(pp.r, lat);
      return RatFunc(num, tdiff(pp.r - pp.k, lat));
    }
    case 1:
      return RatFunc(two * tdiff(pp.k + 2, lat));
    case 2:
      return RatFunc((two * tdiff(pp.k, lat)).scaled(Rat(-1)));
    default:
      throw std::domain_error("sym_norm: bad color");
  }
}

long long lattice_den(const ExpVertex& v) {
  long long l = 1;
  for (const OscTerm& t : v.osc) {
    l = lcm_ll(l, t.dpos.den);
    l = lcm_ll(l, t.dneg.den);
  }
  return l;
}

// Non-reducing sum and product: the factorization below needs the
// denominator kept verbatim as the accumulated product of bracket contents,
// so gcd cancellation must not restructure it.
RatFunc raw_add(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}

RatFunc raw_mul(const RatFunc& a, const RatFunc& b) {
  return RatFunc(a.num() * b.num(), a.den() * b.den());
}

// Representations target = sum n_i h_i with n_i >= 0 (h_i > 0), counted
// with multiplicity.
long long lattice_reps(const Frac& target, const std::vector<Frac>& h,
                       std::size_t idx) {
  if (target < Frac(0)) return 0;
  if (idx == h.size()) return target == Frac(0) ? 1 : 0;
  long long count = 0;
  Frac t = target;
  while (t >= Frac(0)) {
    count += lattice_reps(t, h, idx + 1);
    t = t - h[idx];
  }
  return count;
}

}  // namespace

ContractionKernel::ContractionKernel(const ExpVertex& v1, const ExpVertex& v2,
                                     const Params& pp)
    : pp_(pp) {
  for (int j = 0; j < 3; ++j) {
    z_pow_ = z_pow_ + (v1.pc[j] * v2.qc[j] * AlgNum(zero_mode_pairing(j, pp)))
                          .rational();
    q_pow_ = q_pow_ + (v1.qp[j] * v2.qc[j] * AlgNum(zero_mode_pairing(j, pp)))
                          .rational();
  }
  lat_ = lcm_ll(lattice_den(v1), lattice_den(v2));
  rsym_ = RatFunc::zero(lat_);
  for (int j = 0; j < 3; ++j) {
    RatFunc left = RatFunc::zero(lat_);
    RatFunc right = RatFunc::zero(lat_);
    bool any = false;
    for (const OscTerm& t : v1.osc) {
      if (t.j != j || t.range == OscRange::neg) continue;
      long long om = 0;
      left = raw_add(left, sym_term(t, +1, lat_, pp, &om));
      if (om != 1) throw std::domain_error("kernel: unbalanced unit factors");
      any = true;
    }
    for (const OscTerm& t : v2.osc) {
      if (t.j != j || t.range == OscRange::pos) continue;
      long long om = 0;
      right = raw_add(right, sym_term(t, -1, lat_, pp, &om));
      if (om != 1) throw std::domain_error("kernel: unbalanced unit factors");
      any = true;
    }
    if (any)
      rsym_ = raw_add(rsym_,
                      raw_mul(raw_mul(left, right), sym_norm(j, lat_, pp)));
  }

  // Factor the exponential part into lattice-geometric pieces: with
  // R(t) = m K(m) = sum_l c_l t^{e_l} / prod_H (1 - t^H)^{nu_H}, the kernel
  // exp(sum_m R(q^m) x^m / m) equals
  // prod_l (q^{e_l} x; nu-multiset of nomes)^{-c_l}.
  if (rsym_.is_zero()) return;
  const QSeries& D = rsym_.den();
  long long lden = D.denom();
  std::map<long long, long long> nu;
  if (D.term_count() > 1) {
    auto terms = D.items();
    Frac degf = terms.back().first;
    long long degkey = degf.num * (lden / degf.den);
    QSeries L = D.truncated(degf).logarithm();
    std::map<long long, Rat> G;  // G_n = sum_{H | n} H nu_H
    for (const auto& [e, c] : L.items()) {
      long long n = e.num * (lden / e.den);
      G[n] = -Rat(n) * c;
    }
    for (long long n = 1; n <= degkey; ++n) {
      Rat g = G.count(n) ? G[n] : Rat(0);
      for (long long d = 1; d < n; ++d)
        if (n % d == 0 && nu.count(d)) g -= Rat(d) * Rat(nu[d]);
      Rat v = g / Rat(n);
      if (boost::multiprecision::denominator(v) != 1)
        throw std::domain_error("kernel: denominator not a bracket product");
      long long nv = static_cast<long long>(
          boost::multiprecision::numerator(v).convert_to<long long>());
      if (nv != 0) nu[n] = nv;
    }
    QSeries rebuilt = QSeries::constant(Rat(1), lden);
    for (const auto& [h, m] : nu) {
      if (m < 0)
        throw std::domain_error("kernel: denominator not a bracket product");
      QSeries f = QSeries::constant(Rat(1), lden);
      f.add_coeff(Frac(h, lden), Rat(-1));
      for (long long i = 0; i < m; ++i) rebuilt *= f;
    }
    if (!rebuilt.equals_to_cutoff(D))
      throw std::domain_error("kernel: denominator not a bracket product");
  }
  std::vector<Frac> nomes;
  for (const auto& [h, m] : nu)
    for (long long i = 0; i < m; ++i) nomes.push_back(Frac(h, lden));
  for (const auto& [e, c] : rsym_.num().items()) {
    if (boost::multiprecision::denominator(c) != 1)
      throw std::domain_error("kernel: non-integral product form");
    long long cl = static_cast<long long>(
        boost::multiprecision::numerator(c).convert_to<long long>());
    fac_.push_back(PochFactor{e, nomes, -cl});
  }
}

RatFunc ContractionKernel::coeff(long long m) const {
  if (m < 1) throw std::domain_error("kernel coeff: m < 1");
  if (rsym_.is_zero()) return RatFunc::zero(lat_);
  return RatFunc(rsym_.num().var_pow(Frac(m)), rsym_.den().var_pow(Frac(m)))
      .scaled(Rat(1) / Rat(m));
}

long long ContractionKernel::pole_order_at(const Frac& s) const {
  long long pole = 0;
  for (const PochFactor& f : fac_)
    pole -= f.power * lattice_reps(-(f.arg + s), f.nomes, 0);
  return pole;
}

QSeries ContractionKernel::value_at(const Frac& s, long long den,
                                    const Frac& cutoff,
                                    long long* pole) const {
  long long d = lcm_ll(den, q_pow_.den);
  QSeries val = QSeries::monomial(Rat(1), q_pow_, d, cutoff);
  long long ord = 0;
  for (const PochFactor& f : fac_) {
    long long pd = lcm_ll(d, (f.arg + s).den);
    for (const Frac& h : f.nomes) pd = lcm_ll(pd, h.den);
    int zc = 0;
    QSeries p = poch_series(f.arg + s, f.nomes, pd, cutoff, true, &zc);
    ord -= f.power * zc;
    if (f.power > 0)
      for (long long i = 0; i < f.power; ++i) val *= p;
    else {
      QSeries pi = p.inverted().truncated(cutoff);
      for (long long i = 0; i < -f.power; ++i) val *= pi;
    }
  }
  if (pole) *pole = ord;
  return val;
}

Cx ContractionKernel::eval(double q, Cx x, double tail_eps) const {
  Cx val = std::pow(Cx(q), q_pow_.to_double());
  for (const PochFactor& f : fac_) {
    std::vector<Cx> nom;
    nom.reserve(f.nomes.size());
    for (const Frac& h : f.nomes) nom.push_back(std::pow(Cx(q), h.to_double()));
    Cx p = poch_num(std::pow(Cx(q), f.arg.to_double()) * x, nom, tail_eps);
    if (f.power > 0)
      for (long long i = 0; i < f.power; ++i) val *= p;
    else
      for (long long i = 0; i < -f.power; ++i) val /= p;
  }
  return val;
}

std::vector<RatFunc> ContractionKernel::exp_coeffs(long long depth) const {
  std::vector<RatFunc> c(depth + 1, RatFunc::zero(lat_));
  c[0] = RatFunc::one(lat_);
  for (long long m = 1; m <= depth; ++m) {
    RatFunc km = coeff(m);
    if (km.is_zero()) continue;
    std::vector<RatFunc> next = c;
    RatFunc pw = RatFunc::one(lat_);
    for (long long i = 1; m * i <= depth; ++i) {
      pw = pw * km.scaled(Rat(1) / Rat(i));
      for (long long n = 0; n + m * i <= depth; ++n) {
        if (c[n].is_zero()) continue;
        next[n + m * i] += c[n] * pw;
      }
    }
    c = next;
  }
  return c;
}

FuseResult fuse_at(const ExpVertex& v1, const ExpVertex& v2, const Frac& s,
                   const Params& pp, long long den, const Frac& cutoff) {
  ContractionKernel ker(v1, v2, pp);
  FuseResult r;
  r.scalar = ker.value_at(s, den, cutoff, &r.pole_order);
  r.vertex = merge_vertices(v1, shifted_arg(v2, s, pp));
  r.vertex.wz = r.vertex.wz + ker.z_pow();
  return r;
}

namespace {

struct PartBranch {
  std::array<std::vector<long long>, 3> parts;
  Frac zpow;
  RatFunc coef;
};

// Distinct part sizes with multiplicities, descending order preserved.
std::vector<std::pair<long long, long long>> run_lengths(
    const std::vector<long long>& parts) {
  std::vector<std::pair<long long, long long>> out;
  for (long long p : parts) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

}  // namespace

std::vector<ApplyTerm> apply_vertex(const ExpVertex& v, const FockState& in,
                                    long long degree_cap, const Params& pp) {
  FockLabel out_label = shifted_label(in.label, v, pp);
  ZeroModeEigen eig = zero_mode_eigen(in.label, pp);
  const AlgNum pj[3] = {eig.p0, eig.p1, eig.p2};
  Frac zscal, qscal;
  for (int j = 0; j < 3; ++j) {
    zscal = zscal + (v.pc[j] * pj[j]).rational();
    qscal = qscal + (v.qp[j] * pj[j]).rational();
  }
  RatFunc base = v.cq;
  if (qscal != Frac(0))
    base = base * RatFunc::monomial(Rat(1), qscal, qscal.den);
  Frac zbase = v.wz + zscal;

  // Annihilation part: every sub-multiset of existing parts can be removed;
  // removing s of the mu parts of size m contributes binom(mu, s) (c N)^s.
  // Powers are tabulated once per run so each branch costs one multiply.
  std::vector<PartBranch> branches;
  branches.push_back(PartBranch{in.parts, Frac(0), RatFunc::one()});
  for (int j = 0; j < 3; ++j) {
    auto runs = run_lengths(in.parts[j]);
    for (const auto& [m, mu] : runs) {
      RatFunc cn = osc_coeff(v, j, m, pp);
      if (cn.is_zero()) continue;
      cn = cn * commutator_norm(j, m, pp);
      std::vector<RatFunc> tab(mu + 1, RatFunc::one());
      for (long long s = 1; s <= mu; ++s)
        tab[s] = (tab[s - 1] * cn).scaled(rat_binom(mu, s) /
                                          rat_binom(mu, s - 1));
      std::vector<PartBranch> next;
      next.reserve(branches.size() * (mu + 1));
      for (const PartBranch& b : branches) {
        for (long long s = 0; s <= mu; ++s) {
          PartBranch nb = b;
          if (s > 0) {
            nb.coef = nb.coef * tab[s];
            auto& ps = nb.parts[j];
            long long removed = 0;
            for (auto it = ps.begin(); it != ps.end() && removed < s;)
              if (*it == m) {
                it = ps.erase(it);
                ++removed;
              } else
                ++it;
            nb.zpow = nb.zpow - Frac(m * s);
          }
          next.push_back(std::move(nb));
        }
      }
      branches = std::move(next);
    }
  }

  // Creation part: add t parts of size m with coefficient c(-m)^t / t!,
  // again from shared power tables.
  struct CreTab {
    int j;
    long long m;
    std::vector<RatFunc> pow;  // pow[t-1] = c(-m)^t / t!
  };
  std::vector<CreTab> cre;
  for (int j = 0; j < 3; ++j)
    for (long long m = 1; m <= degree_cap; ++m) {
      RatFunc cm = osc_coeff(v, j, -m, pp);
      if (cm.is_zero()) continue;
      CreTab ct{j, m, {}};
      RatFunc pw = RatFunc::one();
      for (long long t = 1; m * t <= degree_cap; ++t) {
        pw = pw * cm.scaled(Rat(1) / Rat(t));
        ct.pow.push_back(pw);
      }
      cre.push_back(std::move(ct));
    }

  std::vector<ApplyTerm> out;
  for (const PartBranch& b : branches) {
    std::vector<PartBranch> grow;
    grow.push_back(b);
    for (const CreTab& ct : cre) {
      std::vector<PartBranch> next;
      for (const PartBranch& g : grow) {
        long long deg = 0;
        for (int jj = 0; jj < 3; ++jj)
          for (long long p : g.parts[jj]) deg += p;
        next.push_back(g);
        for (long long t = 1; deg + ct.m * t <= degree_cap; ++t) {
          PartBranch nb = g;
          nb.coef = g.coef * ct.pow[t - 1];
          nb.zpow = g.zpow + Frac(ct.m * t);
          for (long long i = 0; i < t; ++i) nb.parts[ct.j].push_back(ct.m);
          std::sort(nb.parts[ct.j].rbegin(), nb.parts[ct.j].rend());
          next.push_back(std::move(nb));
        }
      }
      grow = std::move(next);
    }
    for (PartBranch& g : grow) {
      ApplyTerm term;
      term.state = FockState{out_label, g.parts};
      term.zpow = zbase + g.zpow;
      term.coef = base * g.coef;
      if (!term.coef.is_zero()) out.push_back(std::move(term));
    }
  }
  return out;
}

std::vector<ApplyTerm> apply_current(const CurrentSum& c, const FockState& in,
                                     long long degree_cap, const Params& pp) {
  for (std::size_t i = 1; i < c.size(); ++i)
    for (int j = 0; j < 3; ++j)
      if (!(c[i].qc[j] == c[0].qc[j]))
        throw std::domain_error("apply_current: summand momenta differ");
  std::vector<ApplyTerm> out;
  for (const ExpVertex& v : c) {
    auto part = apply_vertex(v, in, degree_cap, pp);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::vector<ApplyTerm> mode_apply(const CurrentSum& c, const Frac& mode_exp,
                                  const FockState& in, long long degree_cap,
                                  const Params& pp) {
  std::map<std::pair<FockState, Frac>, RatFunc> acc;
  for (ApplyTerm& t : apply_current(c, in, degree_cap, pp)) {
    if (t.zpow != -mode_exp) continue;
    auto key = std::make_pair(t.state, t.zpow);
    auto it = acc.find(key);
    if (it == acc.end())
      acc.emplace(key, t.coef);
    else
      it->second += t.coef;
  }
  std::vector<ApplyTerm> out;
  for (auto& [key, coef] : acc)
    if (!coef.is_zero()) out.push_back(ApplyTerm{key.first, key.second, coef});
  return out;
}

RatFunc state_norm(const FockState& st, const Params& pp) {
  RatFunc n = RatFunc::one();
  for (int j = 0; j < 3; ++j)
    for (const auto& [m, mu] : run_lengths(st.parts[j])) {
      RatFunc nm = commutator_norm(j, m, pp);
      Rat fact(1);
      for (long long i = 2; i <= mu; ++i) fact *= Rat(i);
      RatFunc f = RatFunc::from_rat(fact);
      for (long long i = 0; i < mu; ++i) f = f * nm;
      n = n * f;
    }
  return n;
}

RatFunc pair_states(const FockState& bra, const FockState& ket,
                    const Params& pp) {
  if (!(bra.label == ket.label) || !(bra.parts == ket.parts))
    return RatFunc::zero();
  return state_norm(ket, pp);
}

std::map<std::vector<Frac>, RatFunc> matrix_element(
    const std::vector<const CurrentSum*>& word, const FockState& bra,
    const FockState& ket, long long degree_cap, const Params& pp) {
  std::map<std::pair<FockState, std::vector<Frac>>, RatFunc> cur;
  cur.emplace(std::make_pair(ket, std::vector<Frac>{}), RatFunc::one());
  for (std::size_t i = word.size(); i-- > 0;) {
    // group carried exponent tuples by state so the vertex acts once per
    // distinct intermediate state
    std::map<FockState, std::vector<std::pair<std::vector<Frac>, RatFunc>>>
        grouped;
    for (auto& [key, coef] : cur)
      grouped[key.first].emplace_back(key.second, coef);
    std::map<std::pair<FockState, std::vector<Frac>>, RatFunc> next;
    for (const auto& [state, carried] : grouped) {
      for (const ApplyTerm& t :
           apply_current(*word[i], state, degree_cap, pp)) {
        for (const auto& [exps0, coef] : carried) {
          std::vector<Frac> exps;
          exps.reserve(exps0.size() + 1);
          exps.push_back(t.zpow);
          exps.insert(exps.end(), exps0.begin(), exps0.end());
          auto nk = std::make_pair(t.state, std::move(exps));
          auto it = next.find(nk);
          if (it == next.end())
            next.emplace(std::move(nk), coef * t.coef);
          else
            it->second += coef * t.coef;
        }
      }
    }
    cur = std::move(next);
  }
  std::map<std::vector<Frac>, RatFunc> out;
  for (const auto& [key, coef] : cur) {
    RatFunc p = pair_states(bra, key.first, pp);
    if (p.is_zero() || coef.is_zero()) continue;
    auto it = out.find(key.second);
    if (it == out.end())
      out.emplace(key.second, coef * p);
    else
      it->second += coef * p;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace ellq
