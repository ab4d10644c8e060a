#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hgm/harness.hpp"

namespace {

using namespace hgm;

std::pair<Rational, Rational> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  require(comma != std::string::npos, ErrorKind::parse, "expected R,S but got '" + text + "'");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

int cmd_charsum(const std::string& datum, long long p, long long root_choice) {
  const auto parsed = parse_datum(datum);
  const PrimeFieldContext ctx(p, root_choice);
  detail::require_compatible(parsed.datum, ctx);
  const std::string value = detail::with_escalation([&]<class Real>() -> std::string {
    const auto v = h_value<Real>(parsed.datum, parsed.lambda, ctx);
    require(v.abs_error < Real(0.25), ErrorKind::precision, "error bound too large");
    const std::string bound = "error bound " + format_error(v.abs_error);
    try {
      return integer_reconstruct(v).str() + " (certified integer, " + bound + ")";
    } catch (const Error&) {
      return format_complex(v, 18) + " (" + bound + ")";
    }
  });
  std::cout << "H_p(" << render_datum(parsed.datum, parsed.lambda) << ") at p=" << p << ", root_choice=" << ctx.root_choice()
            << "\nvalue " << value << "\n";
  return 0;
}

int cmd_gammap(const std::string& x, long long p, long long k) {
  require(nt::is_prime(static_cast<u64>(p)), ErrorKind::parameter, "p must be prime");
  const auto g = gamma_p(parse_rational(x), p, k);
  std::cout << g.unit_part() % g.modulus() << "*" << p << "^" << g.valuation() << " mod " << p << "^" << k << "\n";
  return 0;
}

int cmd_qexp(const std::string& k2, const std::string& k1, const std::string& eta, long long scale, const std::string& order) {
  require(scale > 0, ErrorKind::parameter, "--scale must be positive");
  EtaQuotient q;
  if (!k2.empty()) {
    auto [r, s] = parse_pair(k2);
    q = k_eta_quotient(KFamily::k2, r, s);
  } else if (!k1.empty()) {
    auto [r, s] = parse_pair(k1);
    q = k_eta_quotient(KFamily::k1, r, s);
  } else {
    q = parse_eta_spec(eta);
  }
  ExpansionCache cache;
  const auto f = cache.get_or_compute(q, scale, parse_rational(order));
  std::cout << "# eta quotient " << q.key() << " at scale " << scale << ", exponents below " << order << "\n";
  for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
    if (f.coeffs[i] == 0) continue;
    std::cout << to_string(Rational(BigInt(f.offset + static_cast<long long>(i)), BigInt(f.grid))) << " " << f.coeffs[i] << "\n";
  }
  return 0;
}

int cmd_lvalue(const std::string& eta, long long level, const std::string& k2, long long scale, int s, int digits) {
  require(s == 1 || s == 2, ErrorKind::parameter, "--s must be 1 or 2");
  auto print = [&]<class R>(const LValue<R>& L) {
    const int shown = std::min(digits, 50);
    const auto text = L.value.im == 0 ? decimal(L.value.re, shown) : decimal(L.value, shown);
    std::cout << "L(" << L.form << "," << s << ") = " << text << " +- "
              << decimal(L.error, 3) << "\n";
  };
  if (!eta.empty()) {
    require(level > 0, ErrorKind::parameter, "--fricke-level is required with --eta");
    with_precision(digits, [&]<class R>() {
      print(lvalue_eta<R>(parse_eta_spec(eta), level, s));
      return 0;
    });
  } else {
    require(scale > 0, ErrorKind::parameter, "--scale is required with --k2");
    auto [r, ss] = parse_pair(k2);
    with_precision(digits, [&]<class R>() {
      print(lvalue_k2<R>(r, ss, scale, s));
      return 0;
    });
  }
  return 0;
}

int cmd_pvalue(const std::string& r, const std::string& s, int digits) {
  with_precision(digits, [&]<class R>() {
    const auto P = p_value<R>(parse_rational(r), parse_rational(s));
    std::cout << "P(" << r << "," << s << ") = " << decimal(P.value, std::min(digits, 50)) << " +- " << decimal(P.error, 3)
              << "\n";
    return 0;
  });
  return 0;
}

int cmd_verify(SuiteConfig cfg, const std::string& jrange, const std::string& statement, const std::string& out) {
  std::tie(cfg.j_lo, cfg.j_hi) = parse_j_range(jrange);
  cfg.statement = parse_statement(statement);
  cfg.validate();
  SuiteResult res;
  if (out.empty()) {
    res = run_suite(cfg, &std::cout);
  } else {
    res = run_suite_to_file(cfg, out);
  }
  const auto& s = res.summary;
  std::cerr << cfg.suite << ": " << s.pass << " pass, " << s.fail << " fail, " << s.skipped << " skipped, " << s.error
            << " error\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypergeometric motive verification tools"};
  app.require_subcommand(1);

  SuiteConfig cfg;
  std::string jrange = "1..11", statement = "both", out;
  auto* verify = app.add_subcommand("verify", "run a verification suite and write a JSON-lines report");
  verify->add_option("suite", cfg.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--j", jrange, "j range A..B");
  verify->add_option("--pmax", cfg.pmax, "prime bound (0 = suite default)");
  verify->add_option("--threads", cfg.threads, "worker threads");
  verify->add_option("--precision", cfg.precision, "working decimal digits for complex checks");
  verify->add_option("--seed", cfg.seed, "random seed for sampled tuples");
  verify->add_option("--out", out, "report file (default stdout)");
  verify->add_option("--cache-dir", cfg.cache_dir, "expansion cache directory");
  verify->add_option("--statement", statement, "both | as-stated | corrected");

  std::string datum;
  long long p = 0, root_choice = 1;
  auto* charsum = app.add_subcommand("charsum", "finite-field hypergeometric value H_p");
  charsum->add_option("--datum", datum, "alpha;beta@lambda")->required();
  charsum->add_option("--p", p, "prime")->required();
  charsum->add_option("--root-choice", root_choice, "embedding choice coprime to p-1");

  std::string x;
  long long prec = 1;
  auto* gammap = app.add_subcommand("gammap", "Morita p-adic gamma function");
  gammap->add_option("--x", x, "rational argument")->required();
  gammap->add_option("--p", p, "prime")->required();
  gammap->add_option("--prec", prec, "p-adic precision k")->required();

  std::string k2, k1, eta, order;
  long long scale = 0, level = 0;
  auto* qexp = app.add_subcommand("qexp", "q-expansion of an eta quotient");
  auto* q_k2 = qexp->add_option("--k2", k2, "R,S");
  auto* q_k1 = qexp->add_option("--k1", k1, "R,S");
  auto* q_eta = qexp->add_option("--eta", eta, "m^e,m^e,...");
  q_k2->excludes(q_k1)->excludes(q_eta);
  q_k1->excludes(q_eta);
  qexp->add_option("--scale", scale, "tau -> N tau")->required();
  qexp->add_option("--order", order, "exponent bound (exclusive)")->required();

  int s = 1, digits = 60;
  auto* lvalue = app.add_subcommand("lvalue", "L-value of an eta quotient");
  auto* l_eta = lvalue->add_option("--eta", eta, "m^e,m^e,...");
  auto* l_k2 = lvalue->add_option("--k2", k2, "R,S");
  l_eta->excludes(l_k2);
  lvalue->add_option("--fricke-level", level, "level N of the Fricke involution");
  lvalue->add_option("--scale", scale, "tau -> N tau for --k2");
  lvalue->add_option("--s", s, "1 or 2")->required();
  lvalue->add_option("--precision", digits, "working decimal digits");

  std::string pr, ps;
  auto* pvalue = app.add_subcommand("pvalue", "period value P(r,s)");
  pvalue->add_option("--r", pr, "rational r")->required();
  pvalue->add_option("--s", ps, "rational s")->required();
  pvalue->add_option("--precision", digits, "working decimal digits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return cmd_verify(cfg, jrange, statement, out);
    if (*charsum) return cmd_charsum(datum, p, root_choice);
    if (*gammap) return cmd_gammap(x, p, prec);
    if (*qexp) {
      if (k2.empty() && k1.empty() && eta.empty()) {
        std::cerr << "qexp: one of --k2, --k1, --eta is required\n";
        return 2;
      }
      return cmd_qexp(k2, k1, eta, scale, order);
    }
    if (*lvalue) {
      if (eta.empty() == k2.empty()) {
        std::cerr << "lvalue: exactly one of --eta, --k2 is required\n";
        return 2;
      }
      return cmd_lvalue(eta, level, k2, scale, s, digits);
    }
    if (*pvalue) return cmd_pvalue(pr, ps, digits);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.kind() == ErrorKind::parameter || e.kind() == ErrorKind::parse ? 2 : 1;
  }
  return 2;
}
