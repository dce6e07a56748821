// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "bohr/cli.hpp"
#include "bohr/dirichlet.hpp"
#include "bohr/errors.hpp"
#include "bohr/poisson.hpp"
#include "bohr/seqfactor.hpp"
#include "bohr/szego.hpp"
#include "bohr/torus.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace bohr;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what)
  {
    if (!ok) {
      if (passed)
        detail = what;
      passed = false;
    }
  }
};

std::string fmt(const char* f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<Outcome()> body;
};

const LiftedPolynomial kOne = LiftedPolynomial::constant(1.0);
const LiftedPolynomial kZ1 = LiftedPolynomial::variable(1);

Outcome round_trip()
{
  Outcome o;
  std::uint64_t bad = 0;
  for (std::uint64_t n = 1; n <= 1'000'000; ++n)
    if (index_of(factorize(n)) != n && bad++ == 0)
      o.require(false, "index_of(factorize(" + std::to_string(n) + ")) differs");
  std::mt19937_64 rng(101);
  for (int i = 0; i < 1000; ++i) {
    const DirichletSeries q = testing::random_series(rng, 20, 1'000'000);
    o.require(unlift(lift(q)) == q, "unlift(lift(Q)) != Q on sample " + std::to_string(i));
  }
  if (o.passed)
    o.detail = "1e6 integers, 1000 series";
  return o;
}

Outcome homomorphism()
{
  Outcome o;
  std::mt19937_64 rng(202);
  for (int i = 0; i < 500; ++i) {
    const DirichletSeries f = testing::random_series(rng, 12, 100'000);
    const DirichletSeries g = testing::random_series(rng, 12, 100'000);
    o.require(lift(multiply(f, g)) == lift(f) * lift(g), "pair " + std::to_string(i));
  }
  if (o.passed)
    o.detail = "500 pairs";
  return o;
}

Outcome birkhoff()
{
  Outcome o;
  LineAverageConfig cfg;
  cfg.t_max = 10000.0;
  cfg.stop_on_convergence = false;
  const auto log1p = [](double x) { return std::log1p(x); };
  const std::vector<DirichletSeries> qs{
      {{1, 1.0}, {2, 1.0}},
      {{1, 1.0}, {2, 1.0}, {3, 1.0}},
      {{1, 1.0}, {2, 1.0}, {3, 1.0}, {5, 1.0}},
  };
  std::string summary;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const double torus = metric_d0(lift(qs[i]));
    const LineAverageReport r = line_average(qs[i], 0.0, cfg, log1p);
    const double final_gap = std::abs(r.value - torus);
    o.require(r.window == 10000.0 && final_gap <= 2e-2, "final gap " + fmt("%.3g", final_gap));
    double previous = INFINITY;
    bool monotone = true;
    std::string gaps;
    for (const auto& w : r.history) {
      const double gap = std::abs(w.value - torus);
      monotone = monotone && gap <= previous;
      previous = gap;
      gaps += (gaps.empty() ? "" : ",") + fmt("%.1e", gap);
    }
    o.require(monotone, "gap not non-increasing for Q" + std::to_string(i + 1) + ": " + gaps);
    summary += (summary.empty() ? "final gaps " : ", ") + fmt("%.2e", final_gap);
  }
  if (o.passed)
    o.detail = summary;
  else
    o.detail += "; " + summary;
  return o;
}

Outcome monotonicity()
{
  Outcome o;
  constexpr double kSlack = 1e-8;
  std::mt19937_64 rng(404);
  const std::vector<double> rs{0.0, 0.2, 0.4, 0.6, 0.8, 0.9, 1.0};
  const std::vector<double> sigmas{0.0, 0.25, 0.5, 1.0, 2.0, 4.0};
  const std::vector<std::uint32_t> ks{0, 1, 2, 3};
  double worst = 0.0;
  const auto scan = [&](const std::vector<ProfilePoint>& pts, double sign, const std::string& what) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double drop = sign * (pts[i - 1].value - pts[i].value);
      worst = std::max(worst, drop);
      o.require(drop <= kSlack, what + " drops by " + fmt("%.3g", drop));
    }
  };
  for (int i = 0; i < 100; ++i) {
    const int vars = 1 + i % 3;
    const auto f = testing::random_polynomial(rng, vars, vars == 3 ? 3 : 4, 5);
    scan(d0_profile(f, rs), 1.0, "d0 profile " + std::to_string(i));
  }
  for (int i = 0; i < 100; ++i)
    scan(sigma_profile(testing::random_series(rng, 4, 6), sigmas), -1.0, "sigma profile " + std::to_string(i));
  for (int i = 0; i < 100; ++i)
    scan(abschnitt_profile(testing::random_series(rng, 6, 30), 0.5, ks), 1.0, "abschnitt profile " + std::to_string(i));
  if (o.passed)
    o.detail = "300 profiles, worst step against the law " + fmt("%.2e", worst);
  return o;
}

Outcome jensen_outer()
{
  Outcome o;
  std::mt19937_64 rng(505);
  std::uniform_int_distribution<int> vars_d(1, 3), degree_d(1, 4);
  double worst = INFINITY;
  for (int i = 0; i < 200; ++i) {
    const int vars = vars_d(rng);
    const auto f = testing::random_polynomial(rng, vars, degree_d(rng), 4);
    const PoissonPoint zeta(testing::random_point(rng, vars, 0.7));
    const GapReport g = jensen_gap(f, zeta);
    if (!g.infinite)
      worst = std::min(worst, g.value);
    o.require(g.infinite || g.value >= -1e-8, "jensen gap " + fmt("%.3g", g.value) + " on pair " + std::to_string(i));
  }
  const OuterReport a = outer_gap(kOne - 0.5 * kZ1);
  o.require(std::abs(a.gamma) <= 1e-6, "outer_gap(1 - z/2) = " + fmt("%.3g", a.gamma));
  const OuterReport b = outer_gap(kZ1 - 0.5 * kOne);
  o.require(std::abs(b.gamma - std::numbers::ln2) <= 1e-4, "outer_gap(z - 1/2) = " + fmt("%.8g", b.gamma));
  if (o.passed)
    o.detail = "min gap " + fmt("%.2e", worst) + ", gamma " + fmt("%.1e", a.gamma) + " and " + fmt("%.7f", b.gamma);
  return o;
}

WeightSpec cos_weight()
{
  return WeightSpec::fourier({{SignedMultiIndex{}, 1.0}, {SignedMultiIndex{{1, 1}, {2, -1}}, 0.5}});
}

Outcome szego_endpoints()
{
  Outcome o;
  int solves = 0;
  const auto sandwich = [&](const SzegoResult& r, const std::string& what) {
    ++solves;
    o.require(r.value >= r.lower - 1e-8 && r.value <= r.upper + 1e-8,
              "sandwich fails for " + what + ": " + fmt("%.17g", r.value));
  };

  const auto half = WeightSpec::modulus_power(kOne - 0.5 * kZ1, 2.0);
  double previous = INFINITY;
  double s10 = 0.0;
  for (int d = 1; d <= 10; ++d) {
    const SzegoResult r = szego_p2(half, 1, d);
    sandwich(r, "|1 - z/2|^2 at d=" + std::to_string(d));
    o.require(r.value <= previous, "|1 - z/2|^2 ladder rises at d=" + std::to_string(d));
    previous = r.value;
    s10 = r.value;
  }
  o.require(s10 - 1.0 <= 1e-5, "|1 - z/2|^2: S_10 - 1 = " + fmt("%.3g", s10 - 1.0));

  const auto plus = WeightSpec::modulus_power(kOne + kZ1, 2.0);
  previous = INFINITY;
  double s64 = 0.0;
  for (const int d : {1, 2, 4, 8, 16, 32, 64}) {
    const SzegoResult r = szego_p2(plus, 1, d);
    sandwich(r, "|1 + z|^2 at d=" + std::to_string(d));
    o.require(r.value - 1.0 < previous - 1.0, "|1 + z|^2 ladder not decreasing at d=" + std::to_string(d));
    previous = r.value;
    s64 = r.value;
  }
  o.require(s64 - 1.0 <= 0.1, "|1 + z|^2: S_64 - 1 = " + fmt("%.3g", s64 - 1.0));

  const WeightSpec cw = cos_weight();
  for (const int d : {1, 2, 4, 6}) {
    const SzegoResult r = szego_p2(cw, 2, d);
    sandwich(r, "1 + cos at d=" + std::to_string(d));
    o.require(r.value == 1.0, "1 + cos: S_d = " + fmt("%.17g", r.value));
    o.require(r.coeffs.size() == 0 || r.coeffs.cwiseAbs().maxCoeff() <= 1e-12, "1 + cos: nonzero coefficients");
    o.require(std::abs(r.lower - 0.5) <= 1e-6, "1 + cos: lower bound " + fmt("%.10g", r.lower));
  }

  std::mt19937_64 rng(606);
  for (int i = 0; i < 12; ++i) {
    const int vars = 1 + i % 2;
    const auto h = testing::random_polynomial(rng, vars, 2, 3, 0.5) + kOne;
    SzegoConfig cfg;
    cfg.p = i % 3 == 0 ? 2.0 : (i % 3 == 1 ? 1.5 : 3.0);
    cfg.vars = vars;
    cfg.degree = 2;
    sandwich(szego_general(WeightSpec::modulus_power(h, cfg.p), cfg), "random weight " + std::to_string(i));
    sandwich(szego_p2(WeightSpec::modulus_power(h, 2.0), vars, 3), "random |h|^2 " + std::to_string(i));
  }
  if (o.passed)
    o.detail = std::to_string(solves) + " solves, S_10 - 1 = " + fmt("%.2e", s10 - 1.0) + ", S_64 - 1 = " +
               fmt("%.4f", s64 - 1.0);
  return o;
}

Outcome oracle_equivalence()
{
  Outcome o;
  std::mt19937_64 rng(707);
  std::normal_distribution<double> n01;
  double worst_value = 0.0, worst_grad = 0.0;
  const double ps[] = {2.0, 1.5, 3.0, 4.0};
  for (int i = 0; i < 50; ++i) {
    const int vars = 1 + i % 2;
    const int d = 2 + i % 2;
    const auto h = testing::random_polynomial(rng, vars, 2, 3, 0.5) + kOne;
    const auto k = WeightSpec::modulus_power(h, 2.0);
    SzegoConfig cfg;
    cfg.vars = vars;
    cfg.degree = d;
    const double general = szego_general(k, cfg).value;
    const double exact = szego_p2(k, vars, d).value;
    worst_value = std::max(worst_value, std::abs(general - exact));
    o.require(std::abs(general - exact) <= 1e-8, "instance " + std::to_string(i) + " differs by " +
                                                     fmt("%.3g", std::abs(general - exact)));

    const double p = ps[i % 4];
    const auto kp = WeightSpec::modulus_power(h, p);
    const SzegoObjective phi(kp, build_index_set(vars, d), QuadratureGrid(vars, 2 * (2 * d + kp.degree()) + 1), p);
    const auto m = static_cast<Eigen::Index>(phi.size());
    constexpr double eps = 1e-2, step = 1e-6;
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXcd c(m);
      for (auto& x : c)
        x = Complex(0.3 * n01(rng), 0.3 * n01(rng));
      const Eigen::VectorXcd g = phi.gradient(c, eps);
      Eigen::VectorXcd fd(m);
      for (Eigen::Index j = 0; j < m; ++j) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
        e[j] = step;
        const double dre = (phi.value(c + e, eps) - phi.value(c - e, eps)) / (2 * step);
        e[j] = Complex(0, step);
        const double dim = (phi.value(c + e, eps) - phi.value(c - e, eps)) / (2 * step);
        fd[j] = Complex(dre, dim);
      }
      const double rel = (fd - g).norm() / g.norm();
      worst_grad = std::max(worst_grad, rel);
      o.require(rel <= 1e-5, "gradient off by " + fmt("%.3g", rel) + " on instance " + std::to_string(i));
    }
  }
  if (o.passed)
    o.detail = "value gap " + fmt("%.2e", worst_value) + ", gradient rel " + fmt("%.2e", worst_grad);
  return o;
}

Outcome lemma()
{
  Outcome o;
  SummableSeq geometric, inverse_square;
  for (int n = 1; n <= 10000; ++n) {
    geometric.emplace_back(std::ldexp(1.0, -n), 0.0);
    inverse_square.emplace_back(1.0 / (static_cast<double>(n) * n), 0.0);
  }
  std::string summary;
  for (const auto* a : {&geometric, &inverse_square}) {
    const char* name = a == &geometric ? "2^-n" : "n^-2";
    const FactorizationResult r = factorize_l1(*a);
    const FactorizationReport rep = verify_factorization(*a, r);
    for (const auto& c : rep.checks)
      o.require(c.passed, std::string(name) + ": " + c.name + " fails " + c.detail);
    constexpr long double kZeta32 = 2.612375348685488343348567567924071630571L;
    const long double pi2 = std::numbers::pi_v<long double> * std::numbers::pi_v<long double>;
    const long double l4 = 12.0L * r.total / pi2 * kZeta32;
    o.require(std::abs(static_cast<double>(rep.l4 / l4 - 1.0L)) <= 1e-15, std::string(name) + ": tail constant");
    o.require(!r.blocks.empty(), std::string(name) + ": no blocks");
    if (r.blocks.empty())
      continue;
    const FactorizationReport bad = verify_factorization(*a, corrupt_block(r, *a, r.blocks.size() / 2));
    o.require(!bad.passed(), std::string(name) + ": corruption not detected");
    std::string caught;
    for (const auto& c : bad.checks)
      if (!c.passed)
        caught += (caught.empty() ? "" : "+") + c.name;
    summary += std::string(summary.empty() ? "" : "; ") + name + ": " + std::to_string(r.blocks.size()) +
               " blocks, corruption caught by " + caught;
  }
  if (o.passed)
    o.detail = summary;
  return o;
}

void write_file(const fs::path& p, const std::string& text)
{
  std::ofstream f(p, std::ios::binary);
  f << text;
}

std::string read_file(const fs::path& p)
{
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

// Runs the CLI suite into `dir`; returns the number of invocations with an
// unexpected exit code.
int run_suite(const fs::path& inputs, const fs::path& dir)
{
  const auto in = [&](const char* name) { return (inputs / name).string(); };
  const auto out = [&](const char* name) { return (dir / name).string(); };
  struct Call {
    std::vector<std::string> args;
    int expected;
  };
  const std::vector<Call> calls{
      {{"lift", in("series.json"), "--out", out("lift.json")}, 0},
      {{"unlift", in("poly.json"), "--out", out("unlift.json")}, 0},
      {{"eval", "--series", in("series.json"), "--sigma", "0.5", "--t", "3", "--out", out("eval.json")}, 0},
      {{"metric", "--poly", in("poly.json"), "--out", out("metric.json")}, 0},
      {{"metric", "--poly", in("poly.json"), "--method", "qmc", "--seed", "17", "--out", out("metric_qmc.json")}, 0},
      {{"profile", "--mode", "r", "--poly", in("poly.json"), "--values", "0,0.5,1", "--out", out("profile_r.csv")}, 0},
      {{"profile", "--mode", "sigma", "--series", in("series.json"), "--values", "0,1,2", "--out",
        out("profile_sigma.csv")},
       0},
      {{"profile", "--mode", "k", "--series", in("series.json"), "--sigma", "0.5", "--values", "0,1,2,3", "--out",
        out("profile_k.csv")},
       0},
      {{"ergodic", "--series", in("series.json"), "--t-max", "512", "--out", out("ergodic.csv"), "--summary",
        out("ergodic_summary.json")},
       0},
      {{"szego", "--weight", in("weight.json"), "--degree", "4", "--ladder", "1,2,4", "--out", out("szego.json")}, 0},
      {{"szego", "--weight", in("weight.json"), "--p", "3", "--degree", "2", "--out", out("szego_p3.json")}, 0},
      {{"outer", "--poly", in("poly.json"), "--out", out("outer.json")}, 0},
      {{"jensen", "--poly", in("poly.json"), "--zeta", "0.3,0.1;-0.2,0.4", "--out", out("jensen.json")}, 0},
      {{"factorize", in("sequence.json"), "--out", out("factorize.json")}, 0},
      {{"fourier", "--weight", in("weight.json"), "--vars", "1", "--degree", "2", "--out", out("fourier.json")}, 0},
      {{"divergence-witness", "-J", "8", "--out", out("witness.json")}, 0},
  };
  int failures = 0;
  for (const auto& c : calls) {
    std::vector<std::string> args{"bohr-szego"};
    args.insert(args.end(), c.args.begin(), c.args.end());
    std::ostringstream so, se;
    if (cli::run(args, so, se) != c.expected) {
      ++failures;
      std::fprintf(stderr, "suite call %s failed: %s\n", c.args[0].c_str(), se.str().c_str());
    }
  }
  return failures;
}

Outcome determinism()
{
  Outcome o;
  const fs::path root = fs::temp_directory_path() / ("bohr_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root / "inputs");
  write_file(root / "inputs/series.json",
             R"({"terms":[{"n":1,"re":1,"im":0},{"n":2,"re":0.5,"im":0.25},{"n":6,"re":-0.3,"im":0},{"n":5,"re":0.2,"im":0}]})");
  write_file(root / "inputs/poly.json",
             R"({"monomials":[{"alpha":[],"re":1,"im":0},{"alpha":[[1,1]],"re":0.4,"im":0.1},{"alpha":[[1,1],[2,2]],"re":-0.3,"im":0}]})");
  write_file(root / "inputs/weight.json",
             R"({"type":"modulus_power","p":2,"h":{"monomials":[{"alpha":[],"re":1,"im":0},{"alpha":[[1,1]],"re":0.5,"im":0}]}})");
  std::string seq = "[";
  for (int n = 1; n <= 200; ++n)
    seq += (n > 1 ? "," : "") + fmt("%.17g", 1.0 / (static_cast<double>(n) * n));
  write_file(root / "inputs/sequence.json", seq + "]");

  const fs::path a = root / "run1", b = root / "run2";
  fs::create_directories(a);
  fs::create_directories(b);
  o.require(run_suite(root / "inputs", a) == 0, "first run had failing calls");
  o.require(run_suite(root / "inputs", b) == 0, "second run had failing calls");
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(a))
    names.push_back(e.path().filename().string());
  std::sort(names.begin(), names.end());
  o.require(names.size() == 17, "expected 17 artifacts, found " + std::to_string(names.size()));
  for (const auto& n : names) {
    o.require(fs::exists(b / n), n + " missing from the second run");
    o.require(read_file(a / n) == read_file(b / n), n + " differs between runs");
  }
  fs::remove_all(root);
  if (o.passed)
    o.detail = std::to_string(names.size()) + " artifacts byte-identical";
  return o;
}

} // namespace

int main()
{
  const std::vector<Criterion> criteria{
      {1, "Bohr round trip", 10.0, round_trip},
      {2, "lift is a homomorphism", 10.0, homomorphism},
      {3, "line averages approach the torus integral", 60.0, birkhoff},
      {4, "monotone profiles in r, sigma and k", 120.0, monotonicity},
      {5, "Jensen gaps and outer gaps", 60.0, jensen_outer},
      {6, "Szego sandwich and endpoint instances", 120.0, szego_endpoints},
      {7, "general solver matches the p = 2 solve", 180.0, oracle_equivalence},
      {8, "l1 factorization ladder", 5.0, lemma},
      {9, "byte-identical artifacts", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds)
      o.require(false, "runtime " + fmt("%.1f", seconds) + " s over the " + fmt("%.0f", c.budget_seconds) + " s budget");
    failed += o.passed ? 0 : 1;
    std::printf("criterion %d %s  %s  (%.1f s)  %s\n", c.id, o.passed ? "PASS" : "FAIL", c.title, seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
