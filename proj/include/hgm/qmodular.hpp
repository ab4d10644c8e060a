#pragma once

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hgm/core/error.hpp"
#include "hgm/core/ntheory.hpp"
#include "hgm/core/rational.hpp"
#include "hgm/core/record.hpp"
#include "hgm/fixtures.hpp"
#include "hgm/hyperdata.hpp"

namespace hgm {

using ZZ = long long;

/// Element of Z[i].
struct GaussInt {
  ZZ re = 0;
  ZZ im = 0;

  GaussInt() = default;
  GaussInt(ZZ r, ZZ i = 0) : re(r), im(i) {}

  friend GaussInt operator+(GaussInt a, GaussInt b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussInt operator-(GaussInt a, GaussInt b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussInt operator*(GaussInt a, GaussInt b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  GaussInt& operator+=(GaussInt b) { return *this = *this + b; }
  friend bool operator==(GaussInt a, GaussInt b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(GaussInt a, GaussInt b) { return !(a == b); }
};

namespace detail {

inline ZZ checked_mul(ZZ a, ZZ b) {
  ZZ r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::domain, "q-series coefficient overflow");
  return r;
}
inline ZZ checked_add(ZZ a, ZZ b) {
  ZZ r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::domain, "q-series coefficient overflow");
  return r;
}
template <class T>
T ring_mul(const T& a, const T& b) {
  return a * b;
}
template <>
inline ZZ ring_mul<ZZ>(const ZZ& a, const ZZ& b) {
  return checked_mul(a, b);
}
template <class T>
T ring_add(const T& a, const T& b) {
  return a + b;
}
template <>
inline ZZ ring_add<ZZ>(const ZZ& a, const ZZ& b) {
  return checked_add(a, b);
}

}  // namespace detail

/// Truncated expansion sum_i coeffs[i] q^{(offset+i)/grid}, known for exponents
/// below order/grid.
template <class Coeff>
struct QSeries {
  long long grid = 1;
  long long offset = 0;
  long long order = 0;  // exclusive, in units of 1/grid
  std::vector<Coeff> coeffs;

  QSeries() = default;
  QSeries(long long g, long long off, long long ord) : grid(g), offset(off), order(ord) {
    require(g > 0, ErrorKind::parameter, "grid must be positive");
    coeffs.assign(static_cast<std::size_t>(std::max(0LL, ord - off)), Coeff{});
  }

  Rational leading_exponent() const {
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != Coeff{}) return Rational(BigInt(offset + static_cast<long long>(i)), BigInt(grid));
    fail(ErrorKind::domain, "zero series has no leading exponent");
  }

  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Coeff& c) { return c == Coeff{}; });
  }

  Rational precision() const { return Rational(BigInt(order), BigInt(grid)); }

  // Coefficient of q^e; zero off the grid or below the offset.
  Coeff coeff(const Rational& e) const {
    Rational t = e * grid;
    if (!is_integer(t)) return Coeff{};
    long long n = to_ll(t);
    require(n < order, ErrorKind::truncation,
            "coefficient at exponent " + to_string(e) + " beyond precision " + to_string(precision()));
    if (n < offset) return Coeff{};
    return coeffs[static_cast<std::size_t>(n - offset)];
  }

  Coeff coeff(long long n) const { return coeff(Rational(n)); }

  // Same series on a finer grid (newgrid must be a multiple of grid).
  QSeries regrid(long long newgrid) const {
    require(newgrid % grid == 0, ErrorKind::parameter, "regrid needs a multiple of the current grid");
    const long long f = newgrid / grid;
    QSeries out(newgrid, offset * f, order * f);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i * f] = coeffs[i];
    return out;
  }

  // f(tau) -> f(N tau)
  QSeries rescale(long long N) const {
    require(N > 0, ErrorKind::parameter, "scale must be positive");
    const long long g = std::gcd(N, grid);
    const long long ng = grid / g, f = N / g;
    QSeries out(ng, offset * f, order * f);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i * f] = coeffs[i];
    return out;
  }

  QSeries truncate(long long new_order) const {
    QSeries out(grid, offset, std::min(order, new_order));
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = coeffs[i];
    return out;
  }
};

template <class C>
QSeries<C> operator+(const QSeries<C>& a, const QSeries<C>& b) {
  const long long g = nt::lcm(a.grid, b.grid);
  auto x = a.regrid(g), y = b.regrid(g);
  const long long off = std::min(x.offset, y.offset), ord = std::min(x.order, y.order);
  QSeries<C> out(g, off, ord);
  for (long long n = off; n < ord; ++n) {
    C v{};
    if (n >= x.offset) v = detail::ring_add(v, x.coeffs[n - x.offset]);
    if (n >= y.offset) v = detail::ring_add(v, y.coeffs[n - y.offset]);
    out.coeffs[n - off] = v;
  }
  return out;
}

template <class C>
QSeries<C> scale_by(const QSeries<C>& a, const C& c) {
  QSeries<C> out = a;
  for (auto& v : out.coeffs) v = detail::ring_mul(v, c);
  return out;
}

template <class C>
QSeries<C> operator-(const QSeries<C>& a, const QSeries<C>& b) {
  return a + scale_by(b, C(-1));
}

template <class C>
QSeries<C> operator*(const QSeries<C>& a, const QSeries<C>& b) {
  const long long g = nt::lcm(a.grid, b.grid);
  auto x = a.regrid(g), y = b.regrid(g);
  const long long off = x.offset + y.offset;
  const long long ord = std::min(x.order + y.offset, y.order + x.offset);
  QSeries<C> out(g, off, ord);
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (x.coeffs[i] == C{}) continue;
    for (std::size_t k = 0; k < y.coeffs.size(); ++k) {
      long long n = off + static_cast<long long>(i + k);
      if (n >= ord) break;
      auto& dst = out.coeffs[static_cast<std::size_t>(n - off)];
      dst = detail::ring_add(dst, detail::ring_mul(x.coeffs[i], y.coeffs[k]));
    }
  }
  return out;
}

template <class To, class From>
QSeries<To> convert(const QSeries<From>& a) {
  QSeries<To> out(a.grid, a.offset, a.order);
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] = To(a.coeffs[i]);
  return out;
}

struct EtaFactor {
  Rational scale;  // eta(scale * tau)
  int exponent = 0;
};

/// prod eta(scale_i tau)^{e_i}
struct EtaQuotient {
  std::vector<EtaFactor> factors;

  Rational weight() const {
    Rational w = 0;
    for (const auto& f : factors) w += Rational(f.exponent);
    return w / 2;
  }

  Rational leading_exponent() const {
    Rational e = 0;
    for (const auto& f : factors) e += f.scale * f.exponent;
    return e / 24;
  }

  // Combine equal scales and drop zero exponents; sorted by scale.
  EtaQuotient normalized() const {
    std::map<Rational, int> m;
    for (const auto& f : factors) m[f.scale] += f.exponent;
    EtaQuotient out;
    for (const auto& [s, e] : m)
      if (e != 0) out.factors.push_back({s, e});
    return out;
  }

  std::string key() const {
    std::string k;
    for (const auto& f : normalized().factors) k += to_string(f.scale) + "^" + std::to_string(f.exponent) + ";";
    return k;
  }

  friend bool operator==(const EtaQuotient& a, const EtaQuotient& b) { return a.key() == b.key(); }
};

// "m^e,m^e,..." e.g. "1^2,2^1,4^1,8^2" or "1/2^8,2^16,1^-24"
inline EtaQuotient parse_eta_spec(const std::string& spec) {
  EtaQuotient q;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto comma = spec.find(',', start);
    std::string tok = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    auto caret = tok.find('^');
    require(caret != std::string::npos, ErrorKind::parse, "eta factor '" + tok + "' needs scale^exponent");
    Rational s = parse_rational(tok.substr(0, caret));
    require(s > 0, ErrorKind::parse, "eta scale must be positive");
    q.factors.push_back({s, static_cast<int>(to_ll(parse_rational(tok.substr(caret + 1))))});
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return q;
}

namespace detail {

// Coefficients of prod_{t>=1} (1 - x^t)^{e(t)} up to x^{len-1} via
// m f_m = sum_{k=1}^m sigma(k) f_{m-k}, sigma(k) = -sum_{t | k} t e(t).
inline std::vector<ZZ> eta_product_coeffs(const std::vector<ZZ>& e, std::size_t len) {
  std::vector<__int128> sigma(len, 0);
  for (std::size_t t = 1; t < len && t < e.size(); ++t) {
    if (e[t] == 0) continue;
    for (std::size_t m = t; m < len; m += t) sigma[m] -= static_cast<__int128>(t) * e[t];
  }
  std::vector<ZZ> f(len, 0);
  if (len == 0) return f;
  f[0] = 1;
  for (std::size_t m = 1; m < len; ++m) {
    __int128 s = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      if (sigma[k] == 0 || f[m - k] == 0) continue;
      s += sigma[k] * f[m - k];
    }
    if (s % static_cast<__int128>(m) != 0) fail(ErrorKind::consistency, "eta recurrence lost integrality");
    __int128 v = s / static_cast<__int128>(m);
    if (v > std::numeric_limits<ZZ>::max() || v < std::numeric_limits<ZZ>::min())
      fail(ErrorKind::domain, "eta quotient coefficient overflow at index " + std::to_string(m));
    f[m] = static_cast<ZZ>(v);
  }
  return f;
}

}  // namespace detail

/// Expansion of an eta quotient with exponents strictly below max_exponent.
inline QSeries<ZZ> expand_eta_quotient(const EtaQuotient& eq, const Rational& max_exponent) {
  const EtaQuotient q = eq.normalized();
  long long den_all = 1;
  for (const auto& f : q.factors) den_all = nt::lcm(den_all, to_ll(den(f.scale)));
  const Rational lead = q.leading_exponent();
  const long long grid = nt::lcm(den_all, to_ll(den(lead)));
  // x = q^{1/den_all}; factor (1 - q^{scale n}) = (1 - x^{den_all scale n})
  const Rational span = (max_exponent - lead) * den_all;
  const long long len = std::max(0LL, to_ll(floor_of(span)) + (is_integer(span) ? 0 : 1));
  std::vector<ZZ> e(static_cast<std::size_t>(len + 1), 0);
  for (const auto& f : q.factors) {
    const long long step = to_ll(f.scale * den_all);
    for (long long t = step; t <= len; t += step) e[static_cast<std::size_t>(t)] += f.exponent;
  }
  auto c = detail::eta_product_coeffs(e, static_cast<std::size_t>(len));
  const long long f = grid / den_all;
  const long long off = to_ll(lead * grid);
  QSeries<ZZ> out(grid, off, off + len * f);
  for (long long t = 0; t < len; ++t) out.coeffs[static_cast<std::size_t>(t * f)] = c[static_cast<std::size_t>(t)];
  return out;
}

/// q^{scale/24} prod (1 - q^{scale n})
inline QSeries<ZZ> eta_series(const Rational& scale, const Rational& max_exponent) {
  return expand_eta_quotient(EtaQuotient{{{scale, 1}}}, max_exponent);
}

enum class KFamily { k1, k2 };

// Exponents on eta(tau/2), eta(2 tau) and eta(tau) (the last enters the denominator).
inline std::tuple<Rational, Rational, Rational> k_exponents(KFamily fam, const Rational& r, const Rational& s) {
  if (fam == KFamily::k2) return {16 * s - 8 * r - 12, 8 * s + 8 * r - 12, 24 * s - 30};
  return {16 * s - 8 * r - 16, 8 * r + 8 * s - 12, 24 * s - 32};
}

inline EtaQuotient k_eta_quotient(KFamily fam, const Rational& r, const Rational& s) {
  auto [a, b, c] = k_exponents(fam, r, s);
  require(is_integer(a) && is_integer(b) && is_integer(c), ErrorKind::domain,
          "(" + to_string(r) + "," + to_string(s) + ") gives non-integral eta exponents");
  return EtaQuotient{{{rat(1, 2), static_cast<int>(to_ll(a))},
                      {Rational(2), static_cast<int>(to_ll(b))},
                      {Rational(1), -static_cast<int>(to_ll(c))}}};
}

/// Process-wide memo of unscaled K-family expansions; each entry only grows.
class KExpansionMemo {
 public:
  QSeries<ZZ> get(KFamily fam, const Rational& r, const Rational& s, const Rational& max_exponent) {
    const auto key = std::make_tuple(fam == KFamily::k1 ? 1 : 2, r, s);
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end() && it->second.precision() >= max_exponent) return it->second;
    }
    auto eq = k_eta_quotient(fam, r, s);
    Rational target = max_exponent;
    {
      std::shared_lock lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) target = std::max(target, 2 * it->second.precision());
    }
    auto series = expand_eta_quotient(eq, target);
    ++computations_;
    std::unique_lock lock(mu_);
    auto& slot = memo_[key];
    if (slot.coeffs.empty() || slot.precision() < series.precision()) slot = series;
    return slot;
  }

  long long computations() const { return computations_; }

  static KExpansionMemo& global() {
    static KExpansionMemo m;
    return m;
  }

 private:
  std::shared_mutex mu_;
  std::map<std::tuple<int, Rational, Rational>, QSeries<ZZ>> memo_;
  std::atomic<long long> computations_{0};
};

/// K_fam(r,s)(N tau) with exponents below `order`.
inline QSeries<ZZ> k_series(KFamily fam, const Rational& r, const Rational& s, long long N, const Rational& order) {
  require(N > 0, ErrorKind::parameter, "scale must be positive");
  auto base = KExpansionMemo::global().get(fam, r, s, order / N);
  auto scaled = base.rescale(N);
  const Rational cut = order * scaled.grid;
  const long long bound = to_ll(floor_of(cut)) + (is_integer(cut) ? 0 : 1);
  return scaled.truncate(bound);
}

inline QSeries<ZZ> k2_series(const Rational& r, const Rational& s, long long N, const Rational& order) {
  return k_series(KFamily::k2, r, s, N, order);
}

inline QSeries<ZZ> k1_series(const Rational& r, const Rational& s, long long N, const Rational& order) {
  return k_series(KFamily::k1, r, s, N, order);
}

/// K2(s - r, s)
inline QSeries<ZZ> k2_star(const Rational& r, const Rational& s, long long N, const Rational& order) {
  return k2_series(s - r, s, N, order);
}

/// lambda = 16 eta(tau/2)^8 eta(2 tau)^16 / eta(tau)^24
inline QSeries<ZZ> lambda_series(const Rational& order) {
  auto e = expand_eta_quotient(EtaQuotient{{{rat(1, 2), 8}, {Rational(2), 16}, {Rational(1), -24}}}, order);
  return scale_by(e, ZZ(16));
}

/// theta_3^2 = sum_{n,m} q^{(n^2+m^2)/2}
inline QSeries<ZZ> theta3_sq_series(const Rational& order) {
  const long long bound = to_ll(floor_of(order * 2)) + (is_integer(order * 2) ? 0 : 1);
  QSeries<ZZ> out(2, 0, bound);
  for (long long n = -bound; n <= bound; ++n)
    for (long long m = -bound; m <= bound; ++m) {
      long long k = n * n + m * m;
      if (k < bound) out.coeffs[static_cast<std::size_t>(k)] += 1;
    }
  return out;
}

/// c^t q^{t e} (1 + h)^t for a series c q^e (1 + h); c^t is supplied by the
/// caller (ct), and when omitted c must be 1.
inline QSeries<Rational> fractional_power(const QSeries<Rational>& f, const Rational& t,
                                          const Rational* ct = nullptr) {
  std::size_t lead = 0;
  while (lead < f.coeffs.size() && f.coeffs[lead] == 0) ++lead;
  require(lead < f.coeffs.size(), ErrorKind::domain, "fractional power of a zero series");
  const Rational c = f.coeffs[lead];
  require(ct != nullptr || c == 1, ErrorKind::parameter, "leading coefficient must be 1 unless c^t is supplied");
  const Rational e_num = Rational(BigInt(f.offset + static_cast<long long>(lead)));  // over f.grid
  const Rational te = t * e_num / f.grid;
  const long long grid = nt::lcm(f.grid, to_ll(den(te)));
  const long long step = grid / f.grid;
  // h_k on the original grid, k = 1..len-1
  const long long len = f.order - (f.offset + static_cast<long long>(lead));
  std::vector<Rational> h(static_cast<std::size_t>(len), Rational(0));
  for (long long k = 1; k < len; ++k) h[k] = f.coeffs[lead + static_cast<std::size_t>(k)] / c;
  // n g_n = sum_{k=1}^n ((t+1)k - n) h_k g_{n-k}
  std::vector<Rational> g(static_cast<std::size_t>(len), Rational(0));
  if (len > 0) g[0] = 1;
  for (long long n = 1; n < len; ++n) {
    Rational s = 0;
    for (long long k = 1; k <= n; ++k)
      if (h[k] != 0) s += ((t + 1) * k - n) * h[k] * g[n - k];
    g[n] = s / n;
  }
  const Rational scal = ct ? *ct : Rational(1);
  const long long off = to_ll(te * grid);
  QSeries<Rational> out(grid, off, off + len * step);
  for (long long n = 0; n < len; ++n) out.coeffs[static_cast<std::size_t>(n * step)] = scal * g[n];
  return out;
}

/// q d/dq
inline QSeries<Rational> q_derivative(const QSeries<Rational>& f) {
  QSeries<Rational> out = f;
  for (std::size_t i = 0; i < f.coeffs.size(); ++i)
    out.coeffs[i] = f.coeffs[i] * Rational(BigInt(f.offset + static_cast<long long>(i)), BigInt(f.grid));
  return out;
}

/// Weight and nebentypus (kronecker_top / .) used by T_p; kronecker_top = 1 means trivial.
struct HeckeContext {
  int weight = 3;
  long long kronecker_top = 1;

  int character(long long p) const { return kronecker_top == 1 ? 1 : nt::kronecker(kronecker_top, p); }

  // Character (-2^{24s}/.) attached to K2(r,s)(N tau).
  static HeckeContext for_k2(const Rational& s) {
    long long e = to_ll(24 * s);
    return {3, (e % 2) ? -2 : -1};
  }
  static HeckeContext for_k1(const Rational& s) {
    long long e = to_ll(24 * s);
    return {2, (e % 2) ? -2 : -1};
  }
};

/// (T_p f)_n = a_{np} + chi(p) p^{k-1} a_{n/p} for exponents n below target_order.
inline QSeries<ZZ> hecke_tp(const QSeries<ZZ>& f, long long p, const HeckeContext& ctx, long long target_order) {
  require(f.grid == 1, ErrorKind::parameter, "hecke_tp needs an integer grid");
  require(nt::is_prime(static_cast<nt::u64>(p)), ErrorKind::parameter, "T_p needs p prime");
  require(f.order >= p * (target_order - 1) + 1, ErrorKind::truncation,
          "series known below q^" + std::to_string(f.order) + ", T_" + std::to_string(p) + " to order " +
              std::to_string(target_order) + " needs more");
  QSeries<ZZ> out(1, 0, target_order);
  ZZ pk = 1;
  for (int i = 0; i < ctx.weight - 1; ++i) pk = detail::checked_mul(pk, p);
  const ZZ chi = ctx.character(p);
  for (long long n = 0; n < target_order; ++n) {
    ZZ v = f.coeff(n * p);
    if (n % p == 0) v = detail::checked_add(v, detail::checked_mul(chi * pk, f.coeff(n / p)));
    out.coeffs[static_cast<std::size_t>(n)] = v;
  }
  return out;
}

// Eigenvalue of T_p on f checked on all exponents below depth; throws if f is not an eigenvector there.
inline ZZ hecke_eigenvalue(const QSeries<ZZ>& f, long long p, const HeckeContext& ctx, long long depth) {
  auto tf = hecke_tp(f, p, ctx, depth);
  long long n0 = -1;
  for (long long n = 0; n < depth; ++n)
    if (f.coeff(n) != 0) {
      n0 = n;
      break;
    }
  require(n0 >= 0, ErrorKind::consistency, "series vanishes below the check depth");
  const ZZ lead = f.coeff(n0);
  require(tf.coeff(n0) % lead == 0, ErrorKind::consistency, "non-integral Hecke eigenvalue");
  const ZZ a = tf.coeff(n0) / lead;
  for (long long n = 0; n < depth; ++n)
    if (tf.coeff(n) != detail::checked_mul(a, f.coeff(n)))
      fail(ErrorKind::consistency, "T_" + std::to_string(p) + " eigen relation fails at q^" + std::to_string(n));
  return a;
}

inline constexpr long long kDefaultEigenDepth = 60;

namespace detail {

inline ZZ eigen_ap(KFamily fam, int D, long long p, long long depth) {
  require(nt::is_prime(static_cast<nt::u64>(p)) && p >= 5, ErrorKind::parameter,
          "p=" + std::to_string(p) + " must be a prime >= 5");
  const long long M = nt::lcm(4, D);
  require(p % M == 1, ErrorKind::parameter,
          "p=" + std::to_string(p) + " is not 1 mod " + std::to_string(M));
  const int weight = fam == KFamily::k2 ? 3 : 2;
  const auto members = fixtures().combination(weight, D);
  const Rational order(BigInt(p * (depth - 1) + 1));
  const auto& lead = members.front();
  require(lead.coeff.c == 1 && !lead.coeff.imag && lead.coeff.radicand == 1, ErrorKind::consistency,
          "leading member must have coefficient 1");
  auto f0 = k_series(fam, lead.r, lead.s, lead.N, order);
  require(f0.leading_exponent() == 1, ErrorKind::consistency, "leading member must start at q^1");
  const ZZ ap = f0.coeff(p);
  for (const auto& m : members) {
    auto f = k_series(fam, m.r, m.s, m.N, order);
    auto ctx = fam == KFamily::k2 ? HeckeContext::for_k2(m.s) : HeckeContext::for_k1(m.s);
    const ZZ a = hecke_eigenvalue(f, p, ctx, depth);
    if (a != ap)
      fail(ErrorKind::consistency, "orbit member (" + to_string(m.r) + "," + to_string(m.s) + ") has eigenvalue " +
                                       std::to_string(a) + " != " + std::to_string(ap));
  }
  return ap;
}

}  // namespace detail

/// a_p of the weight-3 eigenform for orbit modulus D, read off the coefficient-1 member;
/// asserts T_p eigen relations on every orbit member below `depth`.
inline ZZ eigen_ap_f3(int D, long long p, long long depth = kDefaultEigenDepth) {
  const ZZ a = detail::eigen_ap(KFamily::k2, D, p, depth);
  require(a <= 2 * p && a >= -2 * p, ErrorKind::consistency, "weight 3 bound |a_p| <= 2p violated");
  return a;
}

inline ZZ eigen_ap_f2(int D, long long p, long long depth = kDefaultEigenDepth) {
  const ZZ a = detail::eigen_ap(KFamily::k1, D, p, depth);
  require(a * a <= 4 * p, ErrorKind::consistency, "weight 2 bound |a_p| <= 2 sqrt(p) violated");
  return a;
}

/// [q^n] of the full fixture combination, for combinations with coefficients in Z[i].
inline GaussInt combination_coeff(int weight, int D, long long n, const std::string& variant = "") {
  GaussInt total;
  for (const auto& m : fixtures().combination(weight, D, variant)) {
    require(m.coeff.radicand == 1 && is_integer(m.coeff.c), ErrorKind::parameter,
            "combination coefficient outside Z[i]");
    const ZZ c = to_ll(m.coeff.c);
    auto f = k_series(weight == 3 ? KFamily::k2 : KFamily::k1, m.r, m.s, m.N, Rational(n + 1));
    const ZZ v = f.coeff(n);
    total += m.coeff.imag ? GaussInt(0, c * v) : GaussInt(c * v, 0);
  }
  return total;
}

/// K2(1/8,1/4)(16 tau) -+ 8 K2(5/8,5/4)(16 tau) are T_p eigenforms with integer eigenvalues.
inline VerificationRecord nongalois_orbit_check(long long p, long long depth = kDefaultEigenDepth) {
  require(nt::is_prime(static_cast<nt::u64>(p)) && p % 8 == 1, ErrorKind::parameter,
          "p must be a prime = 1 mod 8");
  VerificationRecord rec;
  rec.check_id = "qmodular.nongalois_orbit";
  rec.param("p", p).param("depth", depth);
  RecordTimer timer(rec);
  const Rational order(BigInt(p * (depth - 1) + 1));
  auto a = k2_series(rat(1, 8), rat(1, 4), 16, order);
  auto b = scale_by(k2_series(rat(5, 8), rat(5, 4), 16, order), ZZ(8));
  auto ctx = HeckeContext::for_k2(rat(1, 4));
  try {
    ZZ e1 = hecke_eigenvalue(a - b, p, ctx, depth);
    ZZ e2 = hecke_eigenvalue(a + b, p, ctx, depth);
    rec.lhs = std::to_string(e1);
    rec.rhs = std::to_string(e2);
    rec.modulus_or_tolerance = "exact";
    rec.status = Status::pass;
  } catch (const Error& e) {
    rec.status = Status::fail;
    rec.note = e.what();
  }
  return rec;
}

}  // namespace hgm
