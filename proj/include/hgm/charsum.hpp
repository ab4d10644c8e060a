#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hgm/core/error.hpp"
#include "hgm/core/ntheory.hpp"
#include "hgm/core/rational.hpp"
#include "hgm/core/record.hpp"
#include "hgm/cycint.hpp"
#include "hgm/hyperdata.hpp"
#include "hgm/qmodular.hpp"

namespace hgm {

/// Complex value with an accumulated absolute error bound.
template <class Real>
struct BasicComplexApprox {
  std::complex<Real> value{};
  Real abs_error = 0;

  static constexpr Real unit_roundoff() { return std::numeric_limits<Real>::epsilon() / 2; }

  BasicComplexApprox() = default;
  BasicComplexApprox(std::complex<Real> v, Real e) : value(v), abs_error(e) {}

  Real magnitude() const { return std::abs(value); }

  friend BasicComplexApprox operator+(const BasicComplexApprox& a, const BasicComplexApprox& b) {
    const Real u = unit_roundoff();
    return {a.value + b.value, a.abs_error + b.abs_error + 2 * u * (a.magnitude() + b.magnitude())};
  }
  friend BasicComplexApprox operator-(const BasicComplexApprox& a) { return {-a.value, a.abs_error}; }
  friend BasicComplexApprox operator-(const BasicComplexApprox& a, const BasicComplexApprox& b) { return a + (-b); }
  friend BasicComplexApprox operator*(const BasicComplexApprox& a, const BasicComplexApprox& b) {
    const Real u = unit_roundoff();
    const Real ma = a.magnitude(), mb = b.magnitude();
    return {a.value * b.value, a.abs_error * mb + b.abs_error * ma + a.abs_error * b.abs_error + 6 * u * ma * mb};
  }
  friend BasicComplexApprox operator/(const BasicComplexApprox& a, const BasicComplexApprox& b) {
    const Real u = unit_roundoff();
    const Real mb = b.magnitude();
    const Real floor_b = mb - b.abs_error;
    require(floor_b > 0, ErrorKind::precision, "division by a value not certified nonzero");
    const auto q = a.value / b.value;
    const Real mq = std::abs(q);
    return {q, (a.abs_error + mq * b.abs_error) / floor_b + 8 * u * mq};
  }
  friend BasicComplexApprox operator*(long long k, const BasicComplexApprox& a) {
    const Real u = unit_roundoff();
    const Real K = static_cast<Real>(std::llabs(k));
    return {static_cast<Real>(k) * a.value, K * a.abs_error + 2 * u * K * a.magnitude()};
  }
};

using ComplexApprox = BasicComplexApprox<double>;
using ComplexApproxExt = BasicComplexApprox<long double>;

template <class Real>
BasicComplexApprox<Real> embed(const CycInt& z) {
  const Real u = BasicComplexApprox<Real>::unit_roundoff();
  const Real l1 = static_cast<Real>(z.l1_norm());
  const Real n = static_cast<Real>(z.coeffs().size());
  return {z.embed_value<Real>(), l1 * (8 * u) + 2 * u * n * l1};
}

/// F_p with a primitive root, discrete logs, and the embedding choice zeta_{p-1} -> omega(g)^{...}.
class PrimeFieldContext {
 public:
  explicit PrimeFieldContext(long long p, long long root_choice = 1) : p_(p) {
    require(p >= 3 && nt::is_prime(static_cast<nt::u64>(p)), ErrorKind::parameter,
            "p=" + std::to_string(p) + " must be an odd prime");
    const long long n = p - 1;
    c_ = static_cast<long long>(nt::mod(root_choice, static_cast<nt::u64>(n)));
    require(std::gcd(c_, n) == 1, ErrorKind::parameter,
            "root_choice " + std::to_string(root_choice) + " is not coprime to p-1");
    g_ = static_cast<long long>(nt::primitive_root(static_cast<nt::u64>(p)));
    dlog_.assign(static_cast<std::size_t>(p), -1);
    pow_g_.assign(static_cast<std::size_t>(n), 0);
    long long x = 1;
    for (long long i = 0; i < n; ++i) {
      pow_g_[i] = x;
      dlog_[x] = i;
      x = x * g_ % p;
    }
    fill_tables(roots_d_, add_d_);
    fill_tables(roots_ld_, add_ld_);
  }

  long long p() const { return p_; }
  long long g() const { return g_; }
  long long root_choice() const { return c_; }
  long long dlog(long long x) const {
    auto r = nt::mod(x, static_cast<nt::u64>(p_));
    require(r != 0, ErrorKind::domain, "discrete log of 0");
    return dlog_[r];
  }
  long long pow_g(long long e) const { return pow_g_[nt::mod(e, static_cast<nt::u64>(p_ - 1))]; }

  // x mod p for a rational with denominator prime to p
  long long reduce(const Rational& x) const {
    const long long d = static_cast<long long>(nt::mod(to_ll(den(x) % p_), static_cast<nt::u64>(p_)));
    require(d != 0, ErrorKind::domain, "p divides the denominator of " + to_string(x));
    const long long n = static_cast<long long>(nt::mod(to_ll(num(x) % p_), static_cast<nt::u64>(p_)));
    return static_cast<long long>(nt::mulmod(n, nt::invmod(d, p_), p_));
  }

  // Index m of iota(a) = omega^{(p-1)a}, i.e. x -> zeta_{p-1}^{m dlog x}.
  long long char_index(const Rational& a) const {
    const Rational e = frac_part(a) * (p_ - 1);
    require(is_integer(e), ErrorKind::incompatible_prime,
            "denominator of " + to_string(a) + " does not divide p-1=" + std::to_string(p_ - 1));
    return static_cast<long long>(nt::mulmod(to_ll(e), c_, p_ - 1));
  }

  template <class Real>
  const std::vector<std::complex<Real>>& roots() const {
    if constexpr (std::is_same_v<Real, double>) return roots_d_;
    else return roots_ld_;
  }
  template <class Real>
  const std::vector<std::complex<Real>>& additive() const {
    if constexpr (std::is_same_v<Real, double>) return add_d_;
    else return add_ld_;
  }

  // Error of one table entry.
  template <class Real>
  static constexpr Real table_error() {
    return 8 * BasicComplexApprox<Real>::unit_roundoff();
  }

 private:
  template <class Real>
  void fill_tables(std::vector<std::complex<Real>>& roots, std::vector<std::complex<Real>>& add) const {
    const long double tau = 2 * std::numbers::pi_v<long double>;
    roots.resize(static_cast<std::size_t>(p_ - 1));
    for (long long k = 0; k < p_ - 1; ++k) {
      long double a = tau * k / (p_ - 1);
      roots[k] = {static_cast<Real>(std::cos(a)), static_cast<Real>(std::sin(a))};
    }
    add.resize(static_cast<std::size_t>(p_));
    for (long long x = 0; x < p_; ++x) {
      long double a = tau * x / p_;
      add[x] = {static_cast<Real>(std::cos(a)), static_cast<Real>(std::sin(a))};
    }
  }

  long long p_ = 0, g_ = 0, c_ = 1;
  std::vector<long long> dlog_, pow_g_;
  std::vector<std::complex<double>> roots_d_, add_d_;
  std::vector<std::complex<long double>> roots_ld_, add_ld_;
};

/// Multiplicative character x -> zeta_{p-1}^{index * dlog x}, 0 at 0.
struct MultChar {
  const PrimeFieldContext* context = nullptr;  // must outlive the character
  long long index = 0;

  long long order_mod() const { return context->p() - 1; }
  bool trivial() const { return index == 0; }
  MultChar conj() const { return {context, static_cast<long long>(nt::mod(-index, order_mod()))}; }
  friend MultChar operator*(const MultChar& a, const MultChar& b) {
    return {a.context, static_cast<long long>(nt::mod(a.index + b.index, a.order_mod()))};
  }
  // exponent of zeta_{p-1} at x, empty at 0
  std::optional<long long> exponent_at(long long x) const {
    if (nt::mod(x, context->p()) == 0) return std::nullopt;
    return static_cast<long long>(nt::mulmod(index, context->dlog(x), order_mod()));
  }
  int at_minus_one() const { return index % 2 == 0 ? 1 : -1; }
  template <class Real>
  std::complex<Real> value(long long x) const {
    auto e = exponent_at(x);
    return e ? context->roots<Real>()[*e] : std::complex<Real>(0);
  }
};

inline MultChar char_of_fraction(const PrimeFieldContext& ctx, const Rational& x) {
  return {&ctx, ctx.char_index(x)};
}

/// sum_x chi(x) e^{2 pi i x/p}
template <class Real = double>
BasicComplexApprox<Real> gauss_sum_complex(const MultChar& chi) {
  const auto& ctx = *chi.context;
  const auto& roots = ctx.roots<Real>();
  const auto& add = ctx.additive<Real>();
  const long long n = ctx.p() - 1;
  std::complex<Real> s = 0;
  for (long long x = 1; x < ctx.p(); ++x) s += roots[nt::mulmod(chi.index, ctx.dlog(x), n)] * add[x];
  const Real u = BasicComplexApprox<Real>::unit_roundoff();
  const Real N = static_cast<Real>(n);
  return {s, N * (2 * PrimeFieldContext::table_error<Real>() + 6 * u) + 2 * u * N * N};
}

/// J(A,B) = sum_{x != 0,1} A(x) B(1-x) by direct summation; indices are character indices.
template <class Real = double>
BasicComplexApprox<Real> jacobi_sum_complex(const PrimeFieldContext& ctx, long long a, long long b) {
  const auto& roots = ctx.roots<Real>();
  const long long p = ctx.p(), n = p - 1;
  a = static_cast<long long>(nt::mod(a, n));
  b = static_cast<long long>(nt::mod(b, n));
  std::complex<Real> s = 0;
  for (long long x = 2; x < p; ++x) {
    const auto e = (static_cast<unsigned __int128>(a) * ctx.dlog(x) + static_cast<unsigned __int128>(b) * ctx.dlog(1 - x)) % n;
    s += roots[static_cast<std::size_t>(e)];
  }
  const Real u = BasicComplexApprox<Real>::unit_roundoff();
  const Real N = static_cast<Real>(p - 2);
  return {s, N * PrimeFieldContext::table_error<Real>() + 2 * u * N * N};
}

inline long long lcd(const std::vector<Rational>& xs) {
  long long m = 1;
  for (const auto& x : xs) m = nt::lcm(m, to_ll(den(x)));
  return m;
}

/// Exact J(iota(a), iota(b)) in Z[zeta_M]; M = 0 picks the least common denominator of a and b.
inline CycInt jacobi_sum_exact(const PrimeFieldContext& ctx, const Rational& a, const Rational& b, long long M = 0) {
  if (M == 0) M = lcd({a, b});
  require(M % to_ll(den(a)) == 0 && M % to_ll(den(b)) == 0, ErrorKind::parameter,
          "cyclotomic order must be a common multiple of the denominators");
  const long long p = ctx.p();
  require((p - 1) % M == 0, ErrorKind::incompatible_prime,
          "p=" + std::to_string(p) + " is not 1 mod " + std::to_string(M));
  const long long ka = to_ll(frac_part(a) * M), kb = to_ll(frac_part(b) * M);
  const long long c = ctx.root_choice() % M;
  std::vector<long long> counts(static_cast<std::size_t>(M), 0);
  for (long long x = 2; x < p; ++x) {
    const long long e = (ka * (ctx.dlog(x) % M) + kb * (ctx.dlog(1 - x) % M)) % M;
    counts[static_cast<std::size_t>(e * c % M)] += 1;
  }
  return CycInt::from_powers(M, counts);
}

/// iota(a)(x) exactly, as a power of zeta_M; x must be nonzero mod p.
inline CycInt char_value_exact(const PrimeFieldContext& ctx, const Rational& a, const Rational& x, long long M = 0) {
  if (M == 0) M = to_ll(den(a));
  require((ctx.p() - 1) % M == 0 && M % to_ll(den(a)) == 0, ErrorKind::incompatible_prime, "bad order for character value");
  const long long xr = ctx.reduce(x);
  require(xr != 0, ErrorKind::domain, "character value at 0");
  const long long k = to_ll(frac_part(a) * M);
  return CycInt::root_power(M, k * (ctx.dlog(xr) % M) % M * (ctx.root_choice() % M));
}

/// -B(-1) J(A, conj B) by direct summation.
template <class Real = double>
BasicComplexApprox<Real> binomial(const MultChar& A, const MultChar& B) {
  return (-B.at_minus_one()) * jacobi_sum_complex<Real>(*A.context, A.index, B.conj().index);
}

namespace detail {

inline void require_compatible(const HypergeometricDatum& hd, const PrimeFieldContext& ctx) {
  std::vector<Rational> all = hd.alpha;
  all.insert(all.end(), hd.beta.begin(), hd.beta.end());
  const long long M = lcd(all);
  require((ctx.p() - 1) % M == 0, ErrorKind::incompatible_prime,
          "p=" + std::to_string(ctx.p()) + " is not 1 mod M=" + std::to_string(M));
}

inline int sign_at_minus_one(const PrimeFieldContext& ctx, const Rational& a) {
  return char_of_fraction(ctx, a).at_minus_one();
}

}  // namespace detail

/// The P character sum of a datum at lambda.
template <class Real = double>
BasicComplexApprox<Real> pp_sum(const HypergeometricDatum& hd, const Rational& lambda, const PrimeFieldContext& ctx) {
  detail::require_compatible(hd, ctx);
  const long long lam = ctx.reduce(lambda);
  require(lam != 0, ErrorKind::domain, "lambda is 0 mod p");
  const std::size_t n = hd.length();
  const long long q1 = ctx.p() - 1;
  int sign = n % 2 ? -1 : 1;
  for (std::size_t i = 1; i < n; ++i) sign *= detail::sign_at_minus_one(ctx, hd.alpha[i] + hd.beta[i]);
  std::vector<long long> ia(n), ib(n);
  for (std::size_t i = 0; i < n; ++i) {
    ia[i] = ctx.char_index(hd.alpha[i]);
    ib[i] = ctx.char_index(hd.beta[i]);
  }
  // table[t][i] = binomial(R_i chi_t, Q_i chi_t)
  const auto& roots = ctx.roots<Real>();
  const long long dl = ctx.dlog(lam);
  BasicComplexApprox<Real> total;
  for (long long t = 0; t < q1; ++t) {
    BasicComplexApprox<Real> term({1, 0}, 0);
    for (std::size_t i = 0; i < n; ++i) {
      MultChar A{&ctx, static_cast<long long>(nt::mod(ia[i] + t, q1))};
      MultChar B{&ctx, static_cast<long long>(nt::mod(ib[i] + t, q1))};
      term = term * binomial<Real>(A, B);
    }
    BasicComplexApprox<Real> chi_lam(roots[nt::mulmod(t, dl, q1)], PrimeFieldContext::table_error<Real>());
    total = total + term * chi_lam;
  }
  BasicComplexApprox<Real> scale({static_cast<Real>(sign) / static_cast<Real>(q1), 0},
                                 BasicComplexApprox<Real>::unit_roundoff() / static_cast<Real>(q1));
  return total * scale;
}

/// Exact Jacobi normalization iota(r_1+q_1)(-1) prod_i -J(iota(r_i), iota(q_i - r_i)).
inline CycInt calj_exact(const HypergeometricDatum& hd, const PrimeFieldContext& ctx) {
  detail::require_compatible(hd, ctx);
  std::vector<Rational> all = hd.alpha;
  all.insert(all.end(), hd.beta.begin(), hd.beta.end());
  const long long M = std::max(2LL, lcd(all));
  CycInt v = CycInt::integer(M, detail::sign_at_minus_one(ctx, hd.alpha[0] + hd.beta[0]));
  for (std::size_t i = 0; i < hd.length(); ++i) v = v * (-jacobi_sum_exact(ctx, hd.alpha[i], hd.beta[i] - hd.alpha[i], M));
  return v;
}

/// H_p(datum; lambda) = (-1)^{n-1} P / calJ.
template <class Real = double>
BasicComplexApprox<Real> h_value(const HypergeometricDatum& hd, const Rational& lambda, const PrimeFieldContext& ctx) {
  require(datum_invariants(hd).primitive, ErrorKind::domain, "H_p needs a primitive datum: " + render_datum(hd, lambda));
  auto P = pp_sum<Real>(hd, lambda, ctx);
  auto J = embed<Real>(calj_exact(hd, ctx));
  auto h = P / J;
  return hd.length() % 2 ? h : -h;
}

/// J(iota(j/12), phi)^2 exactly.
inline CycInt omega_ff(int j, const PrimeFieldContext& ctx) {
  check_family_index(j);
  auto J = jacobi_sum_exact(ctx, rat(j, 12), rat(1, 2), nt::lcm(2, to_ll(den(rat(j, 12)))));
  return J * J;
}

/// Nearest integer of a certified real value.
template <class Real>
BigInt integer_reconstruct(const BasicComplexApprox<Real>& x) {
  require(x.abs_error < Real(0.25), ErrorKind::precision,
          "error bound too large to certify an integer; raise the working precision");
  require(std::abs(x.value.imag()) <= x.abs_error, ErrorKind::consistency, "value is not real within its error bound");
  const Real r = std::round(x.value.real());
  require(std::abs(x.value.real() - r) + x.abs_error < Real(0.5), ErrorKind::precision,
          "rounding not certified; raise the working precision");
  std::ostringstream os;
  os.precision(0);
  os << std::fixed << r;
  return BigInt(os.str());
}

template <class Real>
std::string format_complex(const BasicComplexApprox<Real>& x, int digits = 12) {
  std::ostringstream os;
  os.precision(digits);
  os << x.value.real() << (x.value.imag() < 0 ? "-" : "+") << std::abs(x.value.imag()) << "i";
  return os.str();
}

template <class Real>
std::string format_error(Real e) {
  std::ostringstream os;
  os.precision(3);
  os << e;
  return os.str();
}

namespace detail {

// Run f<double>, retrying in extended precision when certification fails.
template <class F>
auto with_escalation(F&& f) {
  try {
    return f.template operator()<double>();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::precision) throw;
  }
  return f.template operator()<long double>();
}

inline VerificationRecord make_record(std::string id) {
  VerificationRecord rec;
  rec.check_id = std::move(id);
  return rec;
}

}  // namespace detail

/// Omega_{j,F_p} H_p(HD4(j/12); -1) against a_p(f2) a_p(f3) from eta expansions.
inline VerificationRecord galois_point_check(int j, const PrimeFieldContext& ctx) {
  check_family_index(j);
  const long long p = ctx.p();
  const int M = family_M(j), D = family_D(j);
  require(p >= 5 && p % M == 1, ErrorKind::parameter,
          "p=" + std::to_string(p) + " must be >= 5 and 1 mod " + std::to_string(M));
  auto rec = detail::make_record("charsum.galois_point");
  rec.param("j", j).param("p", p).param("root_choice", ctx.root_choice());
  RecordTimer timer(rec);
  const CycInt omega = omega_ff(j, ctx);
  const auto hd = make_hd4(j);
  std::string err;
  BigInt lhs = detail::with_escalation([&]<class Real>() {
    auto v = embed<Real>(omega) * h_value<Real>(hd, Rational(-1), ctx);
    err = format_error(v.abs_error);
    return integer_reconstruct(v);
  });
  const BigInt rhs = BigInt(eigen_ap_f2(D, p)) * eigen_ap_f3(D, p);
  rec.lhs = lhs.str();
  rec.rhs = rhs.str();
  rec.modulus_or_tolerance = "exact";
  rec.error_bound = err;
  rec.status = lhs == rhs ? Status::pass : Status::fail;
  return rec;
}

inline VerificationRecord galois_point_check(int j, long long p, long long root_choice = 1) {
  PrimeFieldContext ctx(p, root_choice);
  return galois_point_check(j, ctx);
}

namespace detail {

// H with parameters reduced mod 1 (0 read as 1); empty when the datum is imprimitive.
template <class Real>
std::optional<BasicComplexApprox<Real>> h_reduced(std::vector<Rational> a, std::vector<Rational> b, const Rational& lam,
                                                  const PrimeFieldContext& ctx) {
  for (auto* v : {&a, &b})
    for (auto& x : *v) {
      x = frac_part(x);
      if (x == 0) x = 1;
    }
  HypergeometricDatum hd(a, b);
  if (!datum_invariants(hd).primitive) return std::nullopt;
  return h_value<Real>(hd, lam, ctx);
}

template <class Real>
BasicComplexApprox<Real> gauss_of(const PrimeFieldContext& ctx, const Rational& a) {
  return gauss_sum_complex<Real>(char_of_fraction(ctx, a));
}

template <class Real>
bool agree(const BasicComplexApprox<Real>& a, const BasicComplexApprox<Real>& b) {
  return std::abs(a.value - b.value) <= a.abs_error + b.abs_error;
}

}  // namespace detail

/// Both sides of the 4F3(-1) evaluation as a sum of two 3F2(1) values (McCarthy's identity).
inline VerificationRecord mccarthy_check(const std::vector<Rational>& r, const PrimeFieldContext& ctx) {
  require(r.size() == 4, ErrorKind::parameter, "mccarthy_check needs four parameters");
  const long long p = ctx.p();
  auto rec = detail::make_record("charsum.mccarthy");
  std::string rs;
  for (const auto& x : r) rs += (rs.empty() ? "" : ",") + to_string(x);
  rec.param("r", rs).param("p", p).param("root_choice", ctx.root_choice());
  RecordTimer timer(rec);
  require((p - 1) % lcd(r) == 0, ErrorKind::incompatible_prime,
          "p=" + std::to_string(p) + " is not 1 mod " + std::to_string(lcd(r)));
  const Rational& r1 = r[0];
  auto star = [&](const Rational& x) { return 1 + r1 - x; };
  const bool square = to_ll(frac_part(r1) * (p - 1)) % 2 == 0;
  using Real = double;
  auto lhs = detail::h_reduced<Real>({r[0], r[1], r[2], r[3]}, {1, star(r[1]), star(r[2]), star(r[3])}, -1, ctx);
  std::optional<BasicComplexApprox<Real>> s1, s2;
  if (lhs && square) {
    s1 = detail::h_reduced<Real>({r1 / 2 - r[1], r[2], r[3]}, {1, r1 / 2, star(r[1])}, 1, ctx);
    s2 = detail::h_reduced<Real>({(r1 + 1) / 2 - r[1], r[2], r[3]}, {1, (r1 + 1) / 2, star(r[1])}, 1, ctx);
  }
  if (!lhs || (square && (!s1 || !s2))) {
    rec.status = Status::skipped;
    rec.note = "a generated datum is not primitive";
    return rec;
  }
  BasicComplexApprox<Real> rhs;
  if (square) {
    auto pre = detail::gauss_of<Real>(ctx, -r1) * detail::gauss_of<Real>(ctx, r[2] - star(r[3])) /
               (detail::gauss_of<Real>(ctx, -star(r[2])) * detail::gauss_of<Real>(ctx, -star(r[3])));
    rhs = pre * (*s1 + *s2);
  }
  rec.lhs = format_complex(*lhs);
  rec.rhs = format_complex(rhs);
  rec.modulus_or_tolerance = "certified";
  rec.error_bound = format_error(lhs->abs_error + rhs.abs_error);
  if (!square) rec.note = "omega^{(p-1)r1} is not a square; both sides vanish";
  rec.status = detail::agree(*lhs, rhs) ? Status::pass : Status::fail;
  return rec;
}

/// Greene's Kummer-type relation between two 3F2(1) values with exact Jacobi factors.
inline VerificationRecord greene_kummer_check(const Rational& r, const PrimeFieldContext& ctx) {
  const long long p = ctx.p();
  auto rec = detail::make_record("charsum.greene_kummer");
  rec.param("r", to_string(r)).param("p", p).param("root_choice", ctx.root_choice());
  RecordTimer timer(rec);
  const Rational h = rat(1, 2);
  require((p - 1) % lcd({r / 2, h}) == 0, ErrorKind::incompatible_prime,
          "p=" + std::to_string(p) + " is incompatible with r=" + to_string(r));
  using Real = double;
  auto lhs = detail::h_reduced<Real>({h, h, 1 - r / 2}, {1, 1, h - r}, 1, ctx);
  auto base = detail::h_reduced<Real>({h, h, -r / 2}, {1, 1, r / 2}, 1, ctx);
  if (!lhs || !base) {
    rec.status = Status::skipped;
    rec.note = "a datum is not primitive";
    return rec;
  }
  const long long M = std::max(2LL, lcd({r / 2, h - r / 2}));
  auto num = jacobi_sum_exact(ctx, -r / 2, r, M);
  auto dnm = jacobi_sum_exact(ctx, -r / 2, h - r / 2, M);
  auto factor = detail::sign_at_minus_one(ctx, r / 2) * (embed<Real>(num) / embed<Real>(dnm));
  auto rhs = factor * *base;
  rec.lhs = format_complex(*lhs);
  rec.rhs = format_complex(rhs);
  rec.modulus_or_tolerance = "certified";
  rec.error_bound = format_error(lhs->abs_error + rhs.abs_error);
  rec.status = detail::agree(*lhs, rhs) ? Status::pass : Status::fail;
  return rec;
}

namespace detail {

inline bool reduced_primitive(std::vector<Rational> a, std::vector<Rational> b) {
  for (auto* v : {&a, &b})
    for (auto& x : *v) {
      x = frac_part(x);
      if (x == 0) x = 1;
    }
  return datum_invariants(HypergeometricDatum(a, b)).primitive;
}

}  // namespace detail

/// All three data in mccarthy_check are primitive (independent of p).
inline bool mccarthy_admissible(const std::vector<Rational>& r) {
  require(r.size() == 4, ErrorKind::parameter, "mccarthy_admissible needs four parameters");
  const Rational& r1 = r[0];
  auto star = [&](const Rational& x) { return 1 + r1 - x; };
  return detail::reduced_primitive({r[0], r[1], r[2], r[3]}, {1, star(r[1]), star(r[2]), star(r[3])}) &&
         detail::reduced_primitive({r1 / 2 - r[1], r[2], r[3]}, {1, r1 / 2, star(r[1])}) &&
         detail::reduced_primitive({(r1 + 1) / 2 - r[1], r[2], r[3]}, {1, (r1 + 1) / 2, star(r[1])});
}

inline bool greene_kummer_admissible(const Rational& r) {
  const Rational h = rat(1, 2);
  return detail::reduced_primitive({h, h, 1 - r / 2}, {1, 1, h - r}) &&
         detail::reduced_primitive({h, h, -r / 2}, {1, 1, r / 2});
}

/// a_p(f2) as -[J(j/24, 1-j/12) + J((j+12)/24, -j/12)] iota(-j/6)(2), exactly.
inline long long ap_f2_from_jacobi(int j, const PrimeFieldContext& ctx) {
  check_family_index(j);
  const Rational a1 = rat(j, 24), b1 = 1 - rat(j, 12), a2 = rat(j + 12, 24), b2 = -rat(j, 12);
  const long long M = lcd({a1, b1, a2, b2, rat(j, 6)});
  require((ctx.p() - 1) % M == 0, ErrorKind::incompatible_prime,
          "p=" + std::to_string(ctx.p()) + " is not 1 mod " + std::to_string(M));
  CycInt v = -(jacobi_sum_exact(ctx, a1, b1, M) + jacobi_sum_exact(ctx, a2, b2, M)) *
             char_value_exact(ctx, -rat(j, 6), Rational(2), M);
  require(v.is_rational(), ErrorKind::consistency, "a_p from Jacobi sums is not rational: " + v.str());
  const long long a = v.rational_value();
  require(a * a <= 4 * ctx.p(), ErrorKind::consistency, "Weil bound violated by a_p=" + std::to_string(a));
  return a;
}

/// p^2 H_p(HD1; -1) = a_p(f_{288.3.g.c}) a_p(f_{288.2.a.a}) at p = 1 mod 12, and H_p(HD1; -1) = 0 at p = 7 mod 12.
inline HypergeometricDatum make_hd1() {
  return HypergeometricDatum({rat(1, 6), rat(1, 6), rat(5, 6), rat(5, 6)}, {rat(1, 3), rat(1, 3), rat(2, 3), rat(2, 3)});
}

inline VerificationRecord hd1_check(const PrimeFieldContext& ctx) {
  const long long p = ctx.p();
  require(p % 6 == 1, ErrorKind::incompatible_prime, "HD1 needs p = 1 mod 6");
  auto rec = detail::make_record(p % 12 == 7 ? "charsum.hd1_vanishing" : "charsum.hd1_point_count");
  rec.param("p", p).param("root_choice", ctx.root_choice());
  RecordTimer timer(rec);
  const auto hd = make_hd1();
  std::string err;
  BigInt lhs = detail::with_escalation([&]<class Real>() {
    auto h = h_value<Real>(hd, Rational(-1), ctx);
    auto v = (p * p) * h;
    err = format_error(v.abs_error);
    return integer_reconstruct(v);
  });
  BigInt rhs = 0;
  if (p % 12 == 1) {
    // 288.3.g.c = 288.3.g.a twisted by a character trivial at p = 1 mod 12
    rhs = BigInt(eigen_ap_f3(12, p)) * eigen_ap_f2(12, p);
  }
  rec.lhs = lhs.str();
  rec.rhs = rhs.str();
  rec.modulus_or_tolerance = "exact";
  rec.error_bound = err;
  rec.status = lhs == rhs ? Status::pass : Status::fail;
  return rec;
}

}  // namespace hgm
