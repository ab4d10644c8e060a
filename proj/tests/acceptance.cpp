// Acceptance runner: `acceptance --criterion N` (1..10) or `acceptance` for all.
// Prints one PASS/FAIL line per criterion; exit status is nonzero when any requested criterion fails.
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include <unistd.h>

#include <CLI11.hpp>

#include "hgm/harness.hpp"

namespace {

using namespace hgm;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Tally {
  std::size_t total = 0, good = 0;
  std::vector<std::string> bad;

  void add(const VerificationRecord& r, bool ok) {
    ++total;
    if (ok) {
      ++good;
    } else if (bad.size() < 5) {
      std::string id = r.check_id;
      for (const auto& [k, v] : r.params) id += " " + k + "=" + v;
      if (!r.note.empty()) id += " (" + r.note + ")";
      bad.push_back(id);
    }
  }
  void add(const VerificationRecord& r) { add(r, r.passed()); }
  bool all() const { return total > 0 && good == total; }
  std::string text(const std::string& what) const {
    std::string s = what + " " + std::to_string(good) + "/" + std::to_string(total);
    if (!bad.empty()) s += " (failures include";
    for (const auto& b : bad) s += " [" + b + "]";
    if (!bad.empty()) s += ")";
    return s;
  }
};

int threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<long long> primes_one_mod(long long M, long long lo, long long hi) { return suites::primes_in(M, lo, hi); }

VerificationRecord single(const std::string& id, std::function<VerificationRecord()> fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    VerificationRecord r;
    r.check_id = id;
    r.status = Status::error;
    r.note = e.what();
    return r;
  }
}

// H_p(HD4(1/2); -1) at every odd prime 5..199 against the product of the two D = 4 eigenform coefficients.
Outcome criterion1() {
  const auto t0 = Clock::now();
  Tally t;
  const auto hd = make_hd4(6);
  const auto f2 = fixtures().leading(2, 4);
  const auto f3 = fixtures().leading(3, 4);
  for (auto up : nt::primes_upto(199)) {
    const auto p = static_cast<long long>(up);
    if (p < 5) continue;
    auto rec = single("criterion1", [&] {
      VerificationRecord r;
      r.check_id = "charsum.q_defined_point_count";
      r.param("p", p);
      const PrimeFieldContext ctx(p);
      const BigInt h = detail::with_escalation([&]<class Real>() { return integer_reconstruct(h_value<Real>(hd, Rational(-1), ctx)); });
      const auto a2 = k1_series(f2.r, f2.s, f2.N, Rational(p + 1)).coeff(p);
      const auto a3 = k2_series(f3.r, f3.s, f3.N, Rational(p + 1)).coeff(p);
      r.lhs = h.str();
      r.rhs = std::to_string(a2 * a3);
      r.status = h == BigInt(a2) * a3 ? Status::pass : Status::fail;
      return r;
    });
    t.add(rec);
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << t.text("primes exact") << ", " << secs << " s single-threaded (limit 120 s)";
  return {t.all() && secs <= 120.0, os.str()};
}

// The 5 smallest primes p = 1 mod M(j), p <= 1000, for every j.
std::vector<std::pair<int, long long>> galois_grid() {
  std::vector<std::pair<int, long long>> grid;
  for (int j = 1; j <= 11; ++j) {
    auto ps = primes_one_mod(family_M(j), 5, 1000);
    if (ps.size() > 5) ps.resize(5);
    for (auto p : ps) grid.emplace_back(j, p);
  }
  return grid;
}

Outcome criterion2() {
  std::vector<Task> tasks;
  for (auto [j, p] : galois_grid())
    tasks.push_back({"charsum.galois_point", [j = j, p = p] {
                       auto a = galois_point_check(j, p, 1);
                       auto b = galois_point_check(j, p, -1);
                       VerificationRecord same;
                       same.check_id = "charsum.root_choice_independence";
                       same.param("j", j).param("p", p);
                       same.status = (a.passed() && b.passed() && a.lhs == b.lhs) ? Status::pass : Status::fail;
                       return std::vector<VerificationRecord>{a, b, same};
                     }});
  Tally t;
  for (const auto& r : run_tasks(tasks, threads())) t.add(r);
  const auto grid = galois_grid();
  bool five_each = true;
  for (int j = 1; j <= 11; ++j)
    five_each = five_each && std::count_if(grid.begin(), grid.end(), [j](auto& g) { return g.first == j; }) >= 5;
  return {t.all() && five_each, t.text("records (2 root choices + independence per (j,p))") +
                                    (five_each ? "" : "; fewer than 5 primes for some j")};
}

Outcome criterion3() {
  std::vector<Task> tasks;
  for (auto [j, p] : galois_grid())
    tasks.push_back({"charsum.ap_f2_jacobi", [j = j, p = p] {
                       VerificationRecord r;
                       r.check_id = "charsum.ap_f2_jacobi";
                       r.param("j", j).param("p", p);
                       const long long a = ap_f2_from_jacobi(j, PrimeFieldContext(p));
                       const long long b = eigen_ap_f2(family_D(j), p);
                       r.lhs = std::to_string(a);
                       r.rhs = std::to_string(b);
                       r.status = a == b ? Status::pass : Status::fail;
                       return std::vector<VerificationRecord>{r};
                     }});
  for (int j = 1; j <= 6; ++j)
    for (auto p : primes_one_mod(family_M(j), 5, 300))
      tasks.push_back({"padic.unit_root", [j, p] { return std::vector<VerificationRecord>{unit_root_check(j, p)}; }});
  Tally jac, unit;
  for (const auto& r : run_tasks(tasks, threads())) (r.check_id == "padic.unit_root" ? unit : jac).add(r);
  return {jac.all() && unit.all(), jac.text("Jacobi vs eta a_p(f2)") + ", " + unit.text("unit root mod p^3 with v=0")};
}

// Literal statement: the printed sign. The corrected sign is reported for reference and does not affect the verdict.
Outcome criterion4() {
  std::vector<Task> tasks;
  for (int j = 1; j <= 6; ++j)
    for (auto p : primes_one_mod(family_M(j), 5, 300))
      tasks.push_back({"padic.supercongruence", [j, p] {
                         std::vector<VerificationRecord> out;
                         for (auto sign : {SupercongruenceSign::as_stated, SupercongruenceSign::corrected}) {
                           out.push_back(supercongruence_check_4(j, p, sign));
                           out.push_back(supercongruence_check_5(j, p, sign, 2));
                           if (j == 6) out.push_back(supercongruence_check_5(j, p, sign, 3));
                         }
                         return out;
                       }});
  for (int j = 7; j <= 11; ++j)
    tasks.push_back({"padic.integrality_failure_expected",
                     [j] { return std::vector<VerificationRecord>{suites::integrality_failure_record(j, 300)}; }});
  Tally stated, corrected, integrality;
  for (const auto& r : run_tasks(tasks, threads())) {
    if (r.check_id.ends_with(".as_stated")) stated.add(r);
    else if (r.check_id.ends_with(".corrected")) corrected.add(r);
    else integrality.add(r);
  }
  return {stated.all() && integrality.all(),
          stated.text("congruences as printed") + "; " + integrality.text("j=7..11 integrality failures") +
              "; reference only, corrected sign " + std::to_string(corrected.good) + "/" + std::to_string(corrected.total)};
}

Outcome criterion5() {
  std::vector<Task> tasks;
  for (int j = 1; j <= 6; ++j)
    for (auto p : primes_one_mod(family_M(j), 5, 200))
      tasks.push_back({"padic.key1", [j, p] { return std::vector<VerificationRecord>{key1_check(j, p)}; }});
  for (const auto& inst : suites::perturbation_instances(1, 200, 37))
    tasks.push_back({"padic.perturbation_average", [inst] {
                       return std::vector<VerificationRecord>{
                           perturbation_average_check(inst.xi, inst.ell, inst.v, inst.w, inst.p)};
                     }});
  Tally key, pert;
  for (const auto& r : run_tasks(tasks, threads())) (r.check_id == "padic.key1" ? key : pert).add(r);
  return {key.all() && pert.all() && pert.total == 200, key.text("key1") + ", " + pert.text("perturbation instances")};
}

// Literal statement: the printed powers of 2, tolerance 1e-20 at 60 digits.
Outcome criterion6() {
  const auto t0 = Clock::now();
  std::vector<Task> tasks;
  for (int j = 1; j <= 11; ++j)
    for (auto form : {ClassicalForm::as_stated, ClassicalForm::corrected})
      tasks.push_back({"lnum.product_identity", [j, form] { return product_identity_check<Real>(j, form, 1e-20); }});
  Tally stated, corrected;
  for (const auto& r : run_tasks(tasks, threads())) (r.check_id.ends_with(".as_stated") ? stated : corrected).add(r);
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << stated.text("identities as printed (rel err <= 1e-20)") << "; reference only, corrected powers of 2 "
     << corrected.good << "/" << corrected.total << "; " << secs << " s (limit 300 s)";
  return {stated.all() && secs <= 300.0, os.str()};
}

Outcome criterion7() {
  Tally t;
  for (const auto& r : j6_lvalue_checks<Real>(1e-15)) t.add(r);
  return {t.all(), t.text("identities to 1e-15")};
}

Outcome criterion8() {
  Tally t;
  std::size_t skipped = 0;
  for (const auto& r : appendix_checks<Real>(1e-10)) {
    if (r.status == Status::skipped) {
      ++skipped;
      continue;
    }
    t.add(r);
  }
  return {t.all(), t.text("asserted rows to 1e-10") + ", " + std::to_string(skipped) + " rows outside the list recorded"};
}

Outcome criterion9() {
  std::vector<Task> tasks;
  for (const auto& x : suites::whipple_tuples(1, 20))
    tasks.push_back({"lnum.whipple", [x] { return whipple_numeric_check<Real>(x[0], x[1], x[2], x[3], 1e-18); }});
  for (const auto& x : suites::kummer_tuples(1, 20))
    tasks.push_back({"lnum.kummer", [x] {
                       return std::vector<VerificationRecord>{kummer_numeric_check<Real>(x[0], x[1], x[2], x[3], x[4], 1e-18)};
                     }});
  for (const auto& t : suites::mccarthy_tuples(1, 10))
    for (auto p : primes_one_mod(lcd(t), 5, 200))
      tasks.push_back({"charsum.mccarthy", [t, p] { return std::vector<VerificationRecord>{mccarthy_check(t, PrimeFieldContext(p))}; }});
  for (const auto& r : suites::greene_kummer_params(1, 10))
    for (auto p : primes_one_mod(lcd({r / 2, rat(1, 2)}), 5, 200))
      tasks.push_back({"charsum.greene_kummer",
                       [r, p] { return std::vector<VerificationRecord>{greene_kummer_check(r, PrimeFieldContext(p))}; }});
  for (auto up : nt::primes_upto(500)) {
    const auto p = static_cast<long long>(up);
    if (p % 12 == 7)
      tasks.push_back({"charsum.hd1", [p] { return std::vector<VerificationRecord>{hd1_check(PrimeFieldContext(p))}; }});
  }
  auto ones = primes_one_mod(12, 5, 1000);
  ones.resize(5);
  for (auto p : ones)
    tasks.push_back({"charsum.hd1", [p] { return std::vector<VerificationRecord>{hd1_check(PrimeFieldContext(p))}; }});
  std::map<std::string, Tally> by;
  for (const auto& r : run_tasks(tasks, threads())) {
    std::string family = r.check_id;
    if (family.starts_with("lnum.whipple")) family = "lnum.whipple";
    by[family].add(r);
  }
  bool ok = true;
  std::string detail;
  for (const auto& [id, t] : by) {
    ok = ok && t.all();
    detail += (detail.empty() ? "" : ", ") + t.text(id);
  }
  ok = ok && by.size() == 6;
  return {ok, detail};
}

Outcome criterion10() {
  Tally t;
  std::string detail;
  for (const char* suite : {"padic-properties", "qmodular-properties", "charsum-identities"}) {
    SuiteConfig c;
    c.suite = suite;
    c.threads = threads();
    const auto res = run_suite(c);
    Tally s;
    for (const auto& r : res.records) s.add(r, !r.bad());
    detail += s.text(suite) + ", ";
    t.total += s.total;
    t.good += s.good;
  }
  // determinism across thread counts
  SuiteConfig g;
  g.suite = "galois";
  g.pmax = 200;
  g.threads = 1;
  std::ostringstream one, many;
  run_suite(g, &one);
  g.threads = threads();
  run_suite(g, &many);
  const bool deterministic = canonical_report(one.str()) == canonical_report(many.str());
  // cache transparency
  const auto dir = std::filesystem::temp_directory_path() / ("hgm-acceptance-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  SuiteConfig q;
  q.suite = "qmodular-properties";
  q.pmax = 100;
  q.threads = threads();
  q.cache_dir = dir.string();
  std::ostringstream cold, warm;
  const int cold_exit = run_suite(q, &cold).exit_code;
  const int warm_exit = run_suite(q, &warm).exit_code;
  std::filesystem::remove_all(dir);
  const bool transparent = cold_exit == 0 && warm_exit == 0 && canonical_report(cold.str()) == canonical_report(warm.str());
  detail += std::string("thread-count determinism ") + (deterministic ? "yes" : "no") + ", cold/warm cache identical " +
            (transparent ? "yes" : "no");
  return {t.all() && deterministic && transparent, detail};
}

Outcome run(int n) {
  switch (n) {
    case 1: return criterion1();
    case 2: return criterion2();
    case 3: return criterion3();
    case 4: return criterion4();
    case 5: return criterion5();
    case 6: return criterion6();
    case 7: return criterion7();
    case 8: return criterion8();
    case 9: return criterion9();
    case 10: return criterion10();
  }
  return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "criterion number 1..10 (default all)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);
  bool all_pass = true;
  for (int n = 1; n <= 10; ++n) {
    if (only && n != only) continue;
    Outcome o;
    try {
      o = run(n);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << std::endl;
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
