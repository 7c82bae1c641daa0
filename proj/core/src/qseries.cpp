#include "ellq/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ellq {

namespace {
// Largest key on lattice (1/den)Z with key/den <= c, clamped to the sentinel.
long long cutoff_key(const Frac& c, long long den) {
  __int128 n = __int128(c.num) * den;
  __int128 q = n / c.den;
  if (n % c.den != 0 && n < 0) --q;  // floor for negative cutoffs
  const __int128 clamp = __int128(1) << 61;
  if (q > clamp) q = clamp;
  if (q < -clamp) q = -clamp;
  return (long long)q;
}
}  // namespace

QSeries QSeries::constant(const Rat& c, long long den, Frac cutoff) {
  QSeries s(den, cutoff);
  if (c != 0 && Frac(0) <= cutoff) s.terms_[0] = c;
  return s;
}

QSeries QSeries::monomial(const Rat& c, const Frac& e, long long den,
                          Frac cutoff) {
  long long d = lcm_ll(den, e.den);
  QSeries s(d, cutoff);
  if (c != 0 && e <= cutoff) s.terms_[s.exp_to_key(e)] = c;
  return s;
}

long long QSeries::exp_to_key(const Frac& e) const {
  __int128 k = __int128(e.num) * (den_ / e.den);
  if (den_ % e.den != 0)
    throw std::domain_error("QSeries: exponent off the lattice");
  return (long long)k;
}

std::optional<Frac> QSeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return key_to_exp(terms_.begin()->first);
}

Rat QSeries::coeff(const Frac& e) const {
  if (den_ % e.den != 0) return Rat(0);
  auto it = terms_.find(exp_to_key(e));
  return it == terms_.end() ? Rat(0) : it->second;
}

void QSeries::set_coeff(const Frac& e, const Rat& c) {
  if (e > cutoff_) return;
  if (den_ % e.den != 0) {
    long long d = lcm_ll(den_, e.den);
    long long f = d / den_;
    std::map<long long, Rat> nt;
    for (auto& [k, v] : terms_) nt[k * f] = v;
    terms_ = std::move(nt);
    den_ = d;
  }
  long long k = exp_to_key(e);
  if (c == 0)
    terms_.erase(k);
  else
    terms_[k] = c;
}

void QSeries::add_coeff(const Frac& e, const Rat& c) {
  if (e > cutoff_ || c == 0) return;
  if (den_ % e.den != 0) {
    long long d = lcm_ll(den_, e.den);
    long long f = d / den_;
    std::map<long long, Rat> nt;
    for (auto& [k, v] : terms_) nt[k * f] = v;
    terms_ = std::move(nt);
    den_ = d;
  }
  long long k = exp_to_key(e);
  auto [it, fresh] = terms_.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void QSeries::prune() {
  const long long kmax = cutoff_key(cutoff_, den_);
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || it->first > kmax)
      it = terms_.erase(it);
    else
      ++it;
  }
}

void QSeries::align(QSeries& a, QSeries& b) {
  long long d = lcm_ll(a.den_, b.den_);
  auto rescale = [d](QSeries& s) {
    if (s.den_ == d) return;
    long long f = d / s.den_;
    std::map<long long, Rat> nt;
    for (auto& [k, v] : s.terms_) nt[k * f] = v;
    s.terms_ = std::move(nt);
    s.den_ = d;
  };
  rescale(a);
  rescale(b);
}

QSeries QSeries::truncated(const Frac& new_cutoff) const {
  QSeries r = *this;
  if (new_cutoff < r.cutoff_) r.cutoff_ = new_cutoff;
  r.prune();
  return r;
}

QSeries QSeries::shifted(const Frac& e) const {
  QSeries r(lcm_ll(den_, e.den),
            cutoff_ == inf_cutoff() ? cutoff_ : cutoff_ + e);
  for (auto& [k, v] : terms_) {
    long long f = r.den_ / den_;
    r.terms_[k * f + e.num * (r.den_ / e.den)] = v;
  }
  return r;
}

QSeries QSeries::scaled(const Rat& c) const {
  QSeries r(den_, cutoff_);
  if (c == 0) return r;
  for (auto& [k, v] : terms_) r.terms_[k] = v * c;
  return r;
}

QSeries QSeries::var_pow(const Frac& a) const {
  if (a.num <= 0) throw std::domain_error("QSeries::var_pow: need a > 0");
  // exponent k/den -> (k*a.num)/(den*a.den)
  QSeries r(den_ * a.den, cutoff_ == inf_cutoff() ? cutoff_ : cutoff_ * a);
  for (auto& [k, v] : terms_) r.terms_[k * a.num] = v;
  return r;
}

QSeries operator+(const QSeries& a0, const QSeries& b0) {
  QSeries a = a0, b = b0;
  QSeries::align(a, b);
  QSeries r(a.den_, std::min(a.cutoff_, b.cutoff_));
  r.terms_ = a.terms_;
  for (auto& [k, v] : b.terms_) {
    auto [it, fresh] = r.terms_.try_emplace(k, v);
    if (!fresh) {
      it->second += v;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  r.prune();
  return r;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  return a + b.scaled(Rat(-1));
}

QSeries operator*(const QSeries& a0, const QSeries& b0) {
  QSeries a = a0, b = b0;
  QSeries::align(a, b);
  // Unknown tail of a starts above cutoff(a); multiplied by b it first
  // touches cutoff(a) + val(b).  Hence the product is exact up to
  // min(ca + vb, cb + va); for a zero operand its own cutoff bounds the
  // tail, and an exact operand imposes no bound at all.
  const Frac va = a.valuation().value_or(a.cutoff_);
  const Frac vb = b.valuation().value_or(b.cutoff_);
  const Frac ba =
      a.cutoff_ == QSeries::inf_cutoff() ? a.cutoff_ : a.cutoff_ + vb;
  const Frac bb =
      b.cutoff_ == QSeries::inf_cutoff() ? b.cutoff_ : b.cutoff_ + va;
  QSeries r(a.den_, std::min(ba, bb));
  if (a.terms_.empty() || b.terms_.empty()) return r;
  const long long kmax = cutoff_key(r.cutoff_, r.den_);
  const auto& small = a.terms_.size() <= b.terms_.size() ? a.terms_ : b.terms_;
  const auto& large = a.terms_.size() <= b.terms_.size() ? b.terms_ : a.terms_;
  for (auto& [ka, va] : small) {
    for (auto& [kb, vb] : large) {
      __int128 k = __int128(ka) + kb;
      if (k > kmax) break;  // maps are sorted ascending
      auto [it, fresh] = r.terms_.try_emplace((long long)k, Rat(va * vb));
      if (!fresh) it->second += va * vb;
    }
  }
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = it->second == 0 ? r.terms_.erase(it) : std::next(it);
  return r;
}

QSeries QSeries::inverted() const {
  if (terms_.empty()) throw std::domain_error("QSeries::inverted: zero series");
  if (cutoff_ == inf_cutoff() && terms_.size() > 1)
    throw std::domain_error("QSeries::inverted: truncate exact series first");
  const Frac v = *valuation();
  const Rat c0 = terms_.begin()->second;
  // f = c0 q^v (1 + g), val(g) > 0
  QSeries g = shifted(-v).scaled(Rat(1) / c0);
  Frac work_cut = cutoff_ - v;
  if (work_cut < Frac(0))
    throw std::domain_error("QSeries::inverted: cutoff below valuation");
  g.add_coeff(Frac(0), Rat(-1));
  g = g.truncated(work_cut);
  QSeries acc = QSeries::constant(Rat(1), g.den_, work_cut);
  QSeries term = acc;
  if (!g.is_zero()) {
    const Frac gval = *g.valuation();
    if (!(Frac(0) < gval))
      throw std::domain_error("QSeries::inverted: non-unit tail");
    long long nmax = (long long)std::ceil(work_cut.to_double() /
                                          std::max(gval.to_double(), 1e-12)) +
                     1;
    for (long long n = 1; n <= nmax; ++n) {
      term = (term * g).scaled(Rat(-1)).truncated(work_cut);
      if (term.is_zero()) break;
      acc += term;
    }
  }
  return acc.shifted(-v).scaled(Rat(1) / c0).truncated(cutoff_ - v - v);
}

QSeries QSeries::pow_int(long long n) const {
  if (n < 0) return inverted().pow_int(-n);
  QSeries acc = QSeries::constant(Rat(1), den_, cutoff_);
  QSeries b = *this;
  unsigned long long m = (unsigned long long)n;
  while (m) {
    if (m & 1) acc *= b;
    if (m >>= 1) b *= b;
  }
  return acc;
}

QSeries QSeries::exponential() const {
  if (!terms_.empty() && !(Frac(0) < *valuation()))
    throw std::domain_error("QSeries::exponential: needs positive valuation");
  QSeries acc = QSeries::constant(Rat(1), den_, cutoff_);
  if (terms_.empty()) return acc;
  QSeries term = acc;
  const Frac v = *valuation();
  long long nmax =
      (long long)std::ceil(cutoff_.to_double() / std::max(v.to_double(), 1e-12)) + 1;
  Rat fact(1);
  for (long long n = 1; n <= nmax; ++n) {
    term = (term * *this).truncated(cutoff_);
    if (term.is_zero()) break;
    fact *= n;
    acc += term.scaled(Rat(1) / fact);
  }
  return acc;
}

QSeries QSeries::logarithm() const {
  if (coeff(Frac(0)) != 1)
    throw std::domain_error("QSeries::logarithm: constant term must be 1");
  QSeries g = *this;
  g.add_coeff(Frac(0), Rat(-1));
  QSeries acc = QSeries::zero(den_, cutoff_);
  if (g.is_zero()) return acc;
  const Frac v = *g.valuation();
  if (!(Frac(0) < v))
    throw std::domain_error("QSeries::logarithm: negative valuation tail");
  long long nmax =
      (long long)std::ceil(cutoff_.to_double() / std::max(v.to_double(), 1e-12)) + 1;
  QSeries term = QSeries::constant(Rat(1), den_, cutoff_);
  for (long long n = 1; n <= nmax; ++n) {
    term = (term * g).truncated(cutoff_);
    if (term.is_zero()) break;
    acc += term.scaled(Rat(n % 2 ? 1 : -1) / n);
  }
  return acc;
}

bool QSeries::equals_to_cutoff(const QSeries& other) const {
  QSeries a = *this, b = other;
  align(a, b);
  Frac c = std::min(a.cutoff_, b.cutoff_);
  a = a.truncated(c);
  b = b.truncated(c);
  return a.terms_ == b.terms_;
}

double QSeries::max_coeff_deviation(const QSeries& other) const {
  QSeries a = *this, b = other;
  align(a, b);
  Frac c = std::min(a.cutoff_, b.cutoff_);
  a = a.truncated(c);
  b = b.truncated(c);
  double m = 0;
  auto d = a - b;
  for (auto& [k, v] : d.terms_) m = std::max(m, std::abs(rat_double(v)));
  return m;
}

double QSeries::eval(double x) const {
  double s = 0;
  for (auto& [k, v] : terms_) s += rat_double(v) * std::pow(x, double(k) / den_);
  return s;
}

Cx QSeries::eval(Cx x) const {
  Cx s = 0;
  for (auto& [k, v] : terms_) s += rat_double(v) * std::pow(x, double(k) / den_);
  return s;
}

std::string QSeries::dump() const {
  std::ostringstream os;
  os << "denom=" << den_ << " cutoff=" << cutoff_.str() << "\n";
  for (auto& [k, v] : terms_) os << key_to_exp(k).str() << " " << rat_str(v) << "\n";
  return os.str();
}

QSeries QSeries::parse(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  std::getline(is, head);
  auto grab = [&head](const std::string& key) {
    auto p = head.find(key + "=");
    if (p == std::string::npos)
      throw std::invalid_argument("QSeries::parse: missing " + key);
    p += key.size() + 1;
    auto e = head.find(' ', p);
    return head.substr(p, e == std::string::npos ? e : e - p);
  };
  auto parse_frac = [](const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Frac(std::stoll(s));
    return Frac(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  };
  QSeries r(std::stoll(grab("denom")), parse_frac(grab("cutoff")));
  std::string es, cs;
  while (is >> es >> cs) {
    Frac e = parse_frac(es);
    Rat c;
    auto slash = cs.find('/');
    if (slash == std::string::npos)
      c = Rat(BigInt(cs));
    else
      c = Rat(BigInt(cs.substr(0, slash)), BigInt(cs.substr(slash + 1)));
    r.add_coeff(e, c);
  }
  return r;
}

std::vector<std::pair<Frac, Rat>> QSeries::items() const {
  std::vector<std::pair<Frac, Rat>> out;
  out.reserve(terms_.size());
  for (auto& [k, v] : terms_) out.emplace_back(key_to_exp(k), v);
  return out;
}

namespace {

// Dense coefficient window of an untruncated series on the lattice
// (1/lat)Z: c[i] multiplies q^{(val + i)/lat}.
struct Dense {
  long long lat = 1;
  long long val = 0;
  std::vector<Rat> c;

  bool empty() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    std::size_t lead = 0;
    while (lead < c.size() && c[lead].is_zero()) ++lead;
    if (lead) {
      c.erase(c.begin(), c.begin() + lead);
      val += static_cast<long long>(lead);
    }
  }
};

Dense to_dense(const QSeries& s, long long lat) {
  Dense d;
  d.lat = lat;
  if (s.is_zero()) return d;
  auto items = s.items();
  auto key = [lat](const Frac& e) { return e.num * (lat / e.den); };
  d.val = key(items.front().first);
  d.c.assign(key(items.back().first) - d.val + 1, Rat(0));
  for (auto& [e, v] : items) d.c[key(e) - d.val] = v;
  return d;
}

QSeries from_dense(const Dense& d) {
  QSeries s = QSeries::zero(d.lat, QSeries::inf_cutoff());
  for (std::size_t i = 0; i < d.c.size(); ++i)
    if (!d.c[i].is_zero())
      s.add_coeff(Frac(d.val + static_cast<long long>(i), d.lat), d.c[i]);
  return s;
}

void require_untruncated(const QSeries& s, const char* who) {
  if (s.cutoff() != QSeries::inf_cutoff())
    throw std::domain_error(std::string(who) + ": truncated operand");
}

}  // namespace

QSeries poly_divmod(const QSeries& a, const QSeries& b, QSeries* rem) {
  require_untruncated(a, "poly_divmod");
  require_untruncated(b, "poly_divmod");
  if (b.is_zero()) throw std::domain_error("poly_divmod: zero divisor");
  long long lat = lcm_ll(a.denom(), b.denom());
  Dense A = to_dense(a, lat), B = to_dense(b, lat);
  Dense Q;
  Q.lat = lat;
  if (A.c.size() >= B.c.size() && !A.empty()) {
    Q.val = A.val + static_cast<long long>(A.c.size()) - B.val -
            static_cast<long long>(B.c.size());
    Q.c.assign(A.c.size() - B.c.size() + 1, Rat(0));
    Q.val -= static_cast<long long>(Q.c.size()) - 1;
    while (true) {
      while (!A.c.empty() && A.c.back().is_zero()) A.c.pop_back();
      if (A.c.size() < B.c.size()) break;
      Rat f = A.c.back() / B.c.back();
      std::size_t off = A.c.size() - B.c.size();
      Q.c[off] = f;
      for (std::size_t i = 0; i < B.c.size(); ++i) A.c[off + i] -= f * B.c[i];
      A.c.pop_back();
    }
  }
  A.trim();
  Q.trim();
  if (rem) *rem = from_dense(A);
  return from_dense(Q);
}

QSeries poly_exact_div(const QSeries& a, const QSeries& b) {
  QSeries r;
  QSeries q = poly_divmod(a, b, &r);
  if (!r.is_zero()) throw std::domain_error("poly_exact_div: not divisible");
  return q;
}

QSeries poly_gcd(const QSeries& a, const QSeries& b) {
  require_untruncated(a, "poly_gcd");
  require_untruncated(b, "poly_gcd");
  long long lat = lcm_ll(a.denom(), b.denom());
  Dense A = to_dense(a, lat), B = to_dense(b, lat);
  A.trim();
  B.trim();
  // work over the integers: clear denominators, then drop content and
  // monomial factors (both are units here, so the gcd is unaffected)
  auto to_prim = [](const Dense& d) {
    BigInt l = 1;
    for (const Rat& v : d.c)
      l = boost::multiprecision::lcm(l, BigInt(denominator(v)));
    std::vector<BigInt> z;
    z.reserve(d.c.size());
    for (const Rat& v : d.c)
      z.push_back(BigInt(numerator(v)) * (l / BigInt(denominator(v))));
    return z;
  };
  auto strip = [](std::vector<BigInt>& z) {
    while (!z.empty() && z.back() == 0) z.pop_back();
    std::size_t lead = 0;
    while (lead < z.size() && z[lead] == 0) ++lead;
    if (lead) z.erase(z.begin(), z.begin() + lead);
    if (z.empty()) return;
    BigInt g = 0;
    for (const BigInt& v : z) {
      g = boost::multiprecision::gcd(g, v);
      if (g == 1) break;
    }
    if (z.back() < 0) g = -g;
    if (g != 1)
      for (BigInt& v : z) v /= g;
  };
  std::vector<BigInt> P, Q;
  if (!A.empty()) {
    P = to_prim(A);
    strip(P);
  }
  if (!B.empty()) {
    Q = to_prim(B);
    strip(Q);
  }
  if (P.size() < Q.size()) std::swap(P, Q);
  // modular probe: a unit gcd in GF(p)[x] certifies a unit gcd here, and
  // coprime operands are the overwhelmingly common case
  auto probe_trivial = [](const std::vector<BigInt>& P0,
                          const std::vector<BigInt>& Q0) {
    const std::uint64_t primes[] = {1000000007ULL, 998244353ULL, 754974721ULL};
    for (std::uint64_t p : primes) {
      auto img = [p](const std::vector<BigInt>& z) {
        std::vector<std::uint64_t> m;
        m.reserve(z.size());
        for (const BigInt& v : z) {
          BigInt r = v % p;
          if (r < 0) r += p;
          m.push_back(r.convert_to<std::uint64_t>());
        }
        return m;
      };
      std::vector<std::uint64_t> A = img(P0), B = img(Q0);
      // p dividing a leading coefficient would spoil the degree bound
      if (A.empty() || B.empty() || A.back() == 0 || B.back() == 0) continue;
      auto modpow = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        for (; e; e >>= 1, b = (unsigned __int128)b * b % p)
          if (e & 1) r = (unsigned __int128)r * b % p;
        return r;
      };
      if (A.size() < B.size()) std::swap(A, B);
      while (!B.empty()) {
        std::uint64_t inv = modpow(B.back(), p - 2);
        while (true) {
          while (!A.empty() && A.back() == 0) A.pop_back();
          if (A.size() < B.size()) break;
          std::uint64_t f = (unsigned __int128)A.back() * inv % p;
          std::size_t off = A.size() - B.size();
          for (std::size_t i = 0; i + 1 < B.size(); ++i)
            A[off + i] =
                (A[off + i] + p - (unsigned __int128)f * B[i] % p) % p;
          A.pop_back();
        }
        std::swap(A, B);
      }
      return A.size() <= 1;
    }
    return false;
  };
  if (!P.empty() && !Q.empty() && probe_trivial(P, Q))
    return QSeries::constant(Rat(1), lat, QSeries::inf_cutoff());
  // primitive pseudo-remainder sequence: scaling by the divisor's leading
  // coefficient keeps every step integral, and stripping content after each
  // remainder keeps the coefficients near the size of the final answer
  while (!Q.empty()) {
    while (true) {
      while (!P.empty() && P.back() == 0) P.pop_back();
      if (P.size() < Q.size()) break;
      const BigInt f = P.back();
      const BigInt& g = Q.back();
      std::size_t off = P.size() - Q.size();
      if (g != 1)
        for (BigInt& v : P) v *= g;
      for (std::size_t i = 0; i + 1 < Q.size(); ++i) P[off + i] -= f * Q[i];
      P.pop_back();
    }
    strip(P);
    std::swap(P, Q);
  }
  Dense G;
  G.lat = lat;
  G.val = 0;
  if (!P.empty() && P.front() < 0)
    for (BigInt& v : P) v = -v;
  for (const BigInt& v : P) G.c.emplace_back(Rat(v, P.front()));
  return from_dense(G);
}

}  // namespace ellq
