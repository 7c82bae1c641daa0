/**
 * @file currents.cpp
 * @brief Construction of the named currents and vertex operators, the
 *        scalar elliptic factor catalog, and the level-one fusion block.
 */
#include "ellq/currents.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "ellq/special.hpp"

namespace ellq {

namespace {

// 1/(q - q^{-1}) as an exact rational function of q.
RatFunc inv_qdiff() {
  QSeries u = QSeries::monomial(Rat(1), Frac(1), 1, QSeries::inf_cutoff());
  u.add_coeff(Frac(-1), Rat(-1));
  return RatFunc(QSeries::constant(Rat(1), 1, QSeries::inf_cutoff()), u);
}

// :exp(-phi_0(k|z)): and :exp(+phi'_0(k|z)):, the zero-mode cores of E / F.
ExpVertex e_core(const Params& pp) {
  ExpVertex v;
  add_full_field(v, 0, LinR(pp.k), LinR(pp.k), LinR(pp.k), Frac(0), -1, pp);
  set_momentum_shift(v, 0, -2, pp);
  return v;
}

ExpVertex f_core(const Params& pp) {
  ExpVertex v;
  add_full_field_primed0(v, LinR(pp.k), LinR(pp.k), LinR(pp.k), Frac(0), +1,
                         pp);
  set_momentum_shift(v, -2, 0, pp);
  return v;
}

// The two normal-ordered summands of Psi^{s}, s = +-1, prefactors included:
//   -s/(q-q^{-1}) : e^{s phi_2(k|z; s k/2)}
//     ( e^{-phi_2^{(+)}(1;2|z; -s(k+2)/2) + s phi_1^{(+)}(1;2|z; -s k/2)}
//     - e^{+phi_2^{(-)}(1;2|z; -s(k+2)/2) - s phi_1^{(-)}(1;2|z; -s k/2)} ) :
CurrentSum psi_branches(int s, const Params& pp) {
  const Frac c2 = Frac(-s) * Frac(pp.k + 2, 2);
  const Frac c1 = Frac(-s) * Frac(pp.k, 2);
  const RatFunc pref = inv_qdiff().scaled(Rat(-s));
  CurrentSum out;
  for (int branch = 0; branch < 2; ++branch) {
    ExpVertex v;
    v.cq = branch == 0 ? pref : -pref;
    add_full_field(v, 2, LinR(pp.k), LinR(pp.k), LinR(pp.k),
                   Frac(s) * Frac(pp.k, 2), s, pp);
    const bool ann = branch == 0;
    add_half_field(v, 2, ann, LinR(1), LinR(2), c2, ann ? -1 : +1, pp);
    add_half_field(v, 1, ann, LinR(1), LinR(2), c1, ann ? s : -s, pp);
    set_momentum_shift(v, 0, 0, pp);
    out.push_back(v);
  }
  return out;
}

CurrentSum merged_with(const CurrentSum& parts, const ExpVertex& core) {
  CurrentSum out;
  for (const ExpVertex& b : parts) out.push_back(merge_vertices(b, core));
  return out;
}

}  // namespace

CurrentSum build_current(const std::string& name, const Params& pp) {
  if (name == "k") {
    ExpVertex v;
    add_full_field(v, 0, LinR(1), LinR(2), LinR(0, 1), Frac(0), -1, pp);
    set_momentum_shift(v, -1, -1, pp);
    return {v};
  }
  if (name == "E") return merged_with(psi_branches(-1, pp), e_core(pp));
  if (name == "F") return merged_with(psi_branches(+1, pp), f_core(pp));
  if (name == "H+" || name == "H-") {
    const long long den = 4 * pp.r * (pp.r - pp.k);
    FuseResult fr = current_h(name == "H+" ? +1 : -1, pp, den, Frac(12));
    const auto items = fr.scalar.items();
    if (items.size() != 1 || items[0].second != Rat(1))
      throw std::logic_error("build_current: H scalar did not collapse");
    if (!items[0].first.is_zero())
      fr.vertex.cq = fr.vertex.cq * RatFunc::monomial(Rat(1), items[0].first,
                                                      items[0].first.den);
    return {fr.vertex};
  }
  if (name == "Psi+") return psi_branches(+1, pp);
  if (name == "Psi-") return psi_branches(-1, pp);
  if (name == "S") {
    const RatFunc pref = inv_qdiff().scaled(Rat(-1));
    CurrentSum out;
    for (int branch = 0; branch < 2; ++branch) {
      ExpVertex v;
      v.cq = branch == 0 ? pref : -pref;
      add_full_field(v, 1, LinR(pp.k + 2), LinR(pp.k + 2), LinR(pp.k + 2),
                     -Frac(pp.k + 2, 2), +1, pp);
      const bool ann = branch == 0;
      const int hs = ann ? +1 : -1;
      add_half_field(v, 2, ann, LinR(1), LinR(2), Frac(pp.k + 2, 2), hs, pp);
      add_half_field(v, 1, ann, LinR(1), LinR(2), Frac(pp.k, 2), hs, pp);
      set_momentum_shift(v, 0, 0, pp);
      out.push_back(v);
    }
    return out;
  }
  if (name == "eta") {
    ExpVertex v;
    add_full_field(v, 1, LinR(2), LinR(2), LinR(2), Frac(pp.k, 2), -1, pp);
    add_full_field(v, 2, LinR(2), LinR(2), LinR(2), Frac(pp.k + 2, 2), -1, pp);
    set_momentum_shift(v, 0, 0, pp);
    return {v};
  }
  throw std::invalid_argument("build_current: unknown name " + name);
}

ExpVertex parafermion_primary(long long l, int sign, const Params& pp) {
  ExpVertex v;
  add_full_field(v, 2, LinR(sign * l), LinR(2), LinR(pp.k),
                 Frac(sign) * Frac(pp.k, 2), -1, pp);
  add_full_field(v, 1, LinR(l), LinR(2), LinR(pp.k + 2),
                 Frac(sign) * Frac(pp.k + 2, 2), -1, pp);
  return v;
}

CurrentSum build_vertex(const std::string& name, long long l,
                        const Params& pp) {
  if (l < 0 || l > pp.k)
    throw std::out_of_range("build_vertex: need 0 <= l <= k, got l=" +
                            std::to_string(l));
  if (name == "phi+") return {parafermion_primary(l, +1, pp)};
  if (name == "phi-") return {parafermion_primary(l, -1, pp)};
  ExpVertex core;
  ExpVertex par;
  if (name == "Phi" || name == "tPhi") {
    add_full_field_primed0(core, LinR(l), LinR(2), LinR(pp.k), Frac(0), -1,
                           pp);
    set_momentum_shift(core, l, 0, pp);
    par = name == "Phi" ? parafermion_primary(l, +1, pp)
                        : parafermion_primary(pp.k - l, -1, pp);
  } else if (name == "Psi*" || name == "tPsi*") {
    add_full_field(core, 0, LinR(l), LinR(2), LinR(pp.k), Frac(0), +1, pp);
    set_momentum_shift(core, 0, l, pp);
    par = name == "Psi*" ? parafermion_primary(l, -1, pp)
                         : parafermion_primary(pp.k - l, +1, pp);
  } else {
    throw std::invalid_argument("build_vertex: unknown name " + name);
  }
  return {merge_vertices(par, core)};
}

ExpVertex r_infinity_limit(const ExpVertex& v) {
  ExpVertex out = v;
  for (OscTerm& t : out.osc) {
    auto drop = [](std::vector<LinR>& fs) {
      fs.erase(std::remove_if(fs.begin(), fs.end(),
                              [](const LinR& x) { return x.depends_r(); }),
               fs.end());
    };
    drop(t.num);
    drop(t.den);
  }
  return out;
}

FuseResult current_h(int sign, const Params& pp, long long den,
                     const Frac& q_cutoff) {
  const ExpVertex kv = build_current("k", pp)[0];
  const Frac s = Frac(sign) * Frac(2 * pp.r - pp.k, 2);
  const ExpVertex a = shifted_arg(kv, s + Frac(1), pp);
  const ExpVertex b = shifted_arg(kv, s - Frac(1), pp);
  FuseResult fr = fuse_at(a, b, Frac(0), pp, den, q_cutoff);
  const Frac zk = Frac(pp.k, 2 * pp.r * (pp.r - pp.k));
  if (fr.vertex.wz != zk)
    throw std::logic_error("current_h: unexpected kernel z-power");
  fr.vertex.wz = Frac(0);
  const QSeries kc = kappa_constant(pp, den, q_cutoff);
  fr.scalar =
      (fr.scalar * kc).shifted((s + Frac(1)) * (-zk)).truncated(q_cutoff);
  return fr;
}

BiSeries EllipticFunction::series(long long den, const Frac& q_cutoff,
                                  long long x_cutoff) const {
  BiSeries r = BiSeries::one(den, q_cutoff, x_cutoff);
  for (const EFactor& f : fac) {
    if (f.power == 0) continue;
    BiSeries g(den, q_cutoff, x_cutoff);
    if (f.theta) {
      if (f.nomes.size() != 1)
        throw std::invalid_argument(
            "EllipticFunction: theta factor needs exactly one nome");
      const Frac& s = f.nomes[0];
      if (f.power > 0) {
        g = theta_bi(f.a, f.e, s, den, q_cutoff, x_cutoff);
      } else {
        // invert the triple product factor by factor
        g = poch_bi(f.a, f.e, {s}, -1, den, q_cutoff, x_cutoff) *
            poch_bi(s - f.a, -f.e, {s}, -1, den, q_cutoff, x_cutoff);
        BiSeries sc(den, q_cutoff, x_cutoff);
        sc.add_coeff(0, poch_series(s, {s}, den, q_cutoff).inverted());
        g = g * sc;
      }
    } else {
      g = poch_bi(f.a, f.e, f.nomes, f.power > 0 ? +1 : -1, den, q_cutoff,
                  x_cutoff);
    }
    const long long n = f.power > 0 ? f.power : -f.power;
    for (long long i = 0; i < n; ++i) r = r * g;
  }
  return r;
}

QSeries EllipticFunction::series_at(const Frac& s, long long den,
                                    const Frac& q_cutoff,
                                    int* zero_count) const {
  // The monomial contributes the plain q-power c q^{qe + s*xe}.
  QSeries r = QSeries::monomial(mono.c, mono.qe + s * mono.xe, den, q_cutoff);
  int total = 0;
  for (const EFactor& f : fac) {
    if (f.power == 0) continue;
    const Frac arg = f.a + s * Frac(f.e);
    QSeries g;
    if (f.theta) {
      g = theta_triple_series(arg, f.nomes[0], den, q_cutoff);
    } else {
      int zc = 0;
      g = poch_series(arg, f.nomes, den, q_cutoff, true, &zc);
      total += zc * int(f.power);
    }
    if (f.power < 0) g = g.inverted();
    const long long n = f.power > 0 ? f.power : -f.power;
    for (long long i = 0; i < n; ++i) r = (r * g).truncated(q_cutoff);
  }
  if (zero_count) *zero_count = total;
  return r;
}

Cx EllipticFunction::eval(double q, Cx x) const {
  Cx r = Cx(rat_double(mono.c)) * std::pow(Cx(q, 0), Cx(mono.qe.to_double())) *
         std::pow(x, Cx(mono.xe.to_double()));
  for (const EFactor& f : fac) {
    if (f.power == 0) continue;
    Cx arg = std::pow(Cx(q, 0), Cx(f.a.to_double()));
    for (long long i = 0; i < f.e; ++i) arg *= x;
    for (long long i = 0; i > f.e; --i) arg /= x;
    Cx v;
    if (f.theta) {
      v = theta_triple_num(arg, std::pow(Cx(q, 0), Cx(f.nomes[0].to_double())));
    } else {
      std::vector<Cx> nm;
      for (const Frac& e : f.nomes)
        nm.push_back(std::pow(Cx(q, 0), Cx(e.to_double())));
      v = poch_num(arg, nm);
    }
    for (long long i = 0; i < f.power; ++i) r *= v;
    for (long long i = 0; i > f.power; --i) r /= v;
  }
  return r;
}

EllipticFunction EllipticFunction::reciprocal() const {
  EllipticFunction r = *this;
  r.mono.c = Rat(1) / r.mono.c;
  r.mono.qe = -r.mono.qe;
  r.mono.xe = -r.mono.xe;
  for (EFactor& f : r.fac) f.power = -f.power;
  return r;
}

EllipticFunction EllipticFunction::at_x_inverse() const {
  EllipticFunction r = *this;
  r.mono.xe = -r.mono.xe;
  for (EFactor& f : r.fac) f.e = -f.e;
  return r;
}

EllipticFunction EllipticFunction::x_scaled(const Frac& s) const {
  EllipticFunction r = *this;
  r.mono.qe += s * r.mono.xe;
  for (EFactor& f : r.fac) f.a += s * Frac(f.e);
  return r;
}

EllipticFunction EllipticFunction::times(const EllipticFunction& o) const {
  EllipticFunction r = *this;
  r.mono.c *= o.mono.c;
  r.mono.qe += o.mono.qe;
  r.mono.xe += o.mono.xe;
  r.fac.insert(r.fac.end(), o.fac.begin(), o.fac.end());
  return r;
}

bool EllipticFunction::is_unit() const {
  if (mono.c != Rat(1) || !mono.qe.is_zero() || !mono.xe.is_zero())
    return false;
  std::map<std::tuple<Frac, long long, std::vector<Frac>, bool>, long long>
      net;
  for (const EFactor& f : fac)
    net[{f.a, f.e, f.nomes, f.theta}] += f.power;
  for (const auto& [key, p] : net)
    if (p != 0) return false;
  return true;
}

EllipticFunction commutation_function(const std::string& name,
                                      const Params& pp) {
  const long long r = pp.r, k = pp.k;
  if (name == "r_k" || name == "kappa_u") {
    EllipticFunction f;
    // Monomial exponent chosen so that kappa(u)kappa(-u) = 1 and
    // kappa(u)kappa(-2-u) equals the theta-bracket cross ratio exactly;
    // the first identity is insensitive to this exponent, the second pins it.
    f.mono.xe = Frac(-(k * (r - k)), 2 * r);
    const std::vector<Frac> nm = {Frac(4), Frac(2 * r)};
    auto add = [&](long long a, long long e, long long pw) {
      f.fac.push_back({Frac(a), e, nm, pw, false});
    };
    add(2 * r - 2 * k + 2, -1, +1);
    add(2 * k + 2, -1, +1);
    add(2 * r + 2, +1, +1);
    add(2, +1, +1);
    add(2 * r + 2, -1, -1);
    add(2, -1, -1);
    add(2 * r - 2 * k + 2, +1, -1);
    add(2 * k + 2, +1, -1);
    return name == "r_k" ? f : f.reciprocal();
  }
  if (name == "sigma" || name == "s_1") {
    EllipticFunction f;
    const std::vector<Frac> A = {Frac(2 * k), Frac(2 * k + 4)};
    const std::vector<Frac> B = {Frac(4), Frac(2 * k)};
    const std::vector<Frac> C = {Frac(4), Frac(2 * (r - k))};
    auto add = [&](long long a, const std::vector<Frac>& nm, long long pw) {
      f.fac.push_back({Frac(a), +1, nm, pw, false});
    };
    add(2 * k + 2, A, +2);
    add(2 * k + 4, B, +1);
    add(2 * k, B, +1);
    add(4, C, +1);
    add(0, C, +1);
    add(4 * k, A, -2);
    add(4, A, -2);
    add(2 * k + 2, B, -2);
    add(2, C, -2);
    if (name == "sigma") return f;
    EllipticFunction s = f.at_x_inverse().times(f.reciprocal());
    s.mono.xe = Frac(r, 2 * k * (r - k)) - Frac((k - 1) * (k - 1), k * (k + 2));
    return s;
  }
  if (name == "chi") {
    EllipticFunction f;
    f.mono.xe = Frac(1, 2);
    f.fac.push_back({Frac(1), -1, {Frac(4)}, +1, true});
    f.fac.push_back({Frac(1), +1, {Frac(4)}, -1, true});
    return f;
  }
  throw std::invalid_argument("commutation_function: unknown name " + name);
}

EllipticFunction xi_function(const Frac& a, long long e, bool star,
                             const Params& pp) {
  const long long c = star ? pp.pstar_exp() : pp.p_exp();
  const std::vector<Frac> nm = {Frac(c), Frac(4)};
  EllipticFunction f;
  f.fac.push_back({a + Frac(2), e, nm, +1, false});
  f.fac.push_back({a + Frac(c + 2), e, nm, +1, false});
  f.fac.push_back({a + Frac(4), e, nm, -1, false});
  f.fac.push_back({a + Frac(c), e, nm, -1, false});
  return f;
}

BiSeries xi_series(const Frac& a, long long e, bool star, const Params& pp,
                   long long den, const Frac& q_cutoff, long long x_cutoff) {
  return xi_function(a, e, star, pp).series(den, q_cutoff, x_cutoff);
}

QSeries kappa_constant(const Params& pp, long long den, const Frac& q_cutoff) {
  int zs = 0, zp = 0;
  const QSeries xs =
      xi_function(Frac(0), 1, true, pp).series_at(Frac(-2), den, q_cutoff, &zs);
  const QSeries xp = xi_function(Frac(0), 1, false, pp)
                         .series_at(Frac(-2), den, q_cutoff, &zp);
  if (zs != zp)
    throw std::logic_error("kappa_constant: uncancelled vanishing factor");
  return (xs * xp.inverted()).truncated(q_cutoff);
}

FuseResult qvirasoro_lambda(const Params& pp, long long den,
                            const Frac& q_cutoff) {
  if (pp.k != 1)
    throw std::domain_error("qvirasoro_lambda: defined at level 1 only");
  const ExpVertex tphi = build_vertex("tPhi", 1, pp)[0];
  const ExpVertex a = shifted_arg(tphi, Frac(1), pp);
  const ExpVertex b = shifted_arg(tphi, Frac(-1), pp);
  return fuse_at(a, b, Frac(0), pp, den, q_cutoff);
}

}  // namespace ellq
