#include "bohr/cli.hpp"

#include "bohr/errors.hpp"
#include "bohr/parallel.hpp"
#include "bohr/poisson.hpp"
#include "bohr/primes.hpp"
#include "bohr/seqfactor.hpp"
#include "bohr/series_json.hpp"
#include "bohr/torus.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace bohr::cli {

using nlohmann::json;

WeightSpec weight_from_json(const json& j)
{
  if (!j.is_object() || !j.contains("type"))
    throw DomainError("weight JSON needs a \"type\" field");
  const auto type = j.at("type").get<std::string>();
  if (type == "modulus_power")
    return WeightSpec::modulus_power(polynomial_from_json(j.at("h")), j.value("p", 2.0));
  if (type == "fourier") {
    std::map<SignedMultiIndex, Complex> table;
    for (const json& item : j.at("coefficients")) {
      const auto alpha = signed_index_from_json(item.at("alpha"));
      const Complex c{item.value("re", 0.0), item.value("im", 0.0)};
      if (!table.emplace(alpha, c).second)
        throw DomainError("duplicate Fourier coefficient " + alpha.to_string());
    }
    return WeightSpec::fourier(std::move(table));
  }
  throw DomainError("unknown weight type \"" + type + "\"");
}

std::vector<Complex> parse_point(const std::string& text)
{
  std::vector<Complex> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty())
      continue;
    const auto comma = item.find(',');
    try {
      const double re = std::stod(item.substr(0, comma));
      const double im = comma == std::string::npos ? 0.0 : std::stod(item.substr(comma + 1));
      out.emplace_back(re, im);
    } catch (const std::logic_error&) {
      throw DomainError("cannot parse point coordinate \"" + item + "\"");
    }
  }
  return out;
}

namespace {

json read_json(const std::string& path)
{
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open " + path);
  return json::parse(in);
}

std::string format_number(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

/// Writes to a sibling temporary and renames it into place, or to `out` when
/// no path was given.
void emit(const std::string& path, const std::string& text, std::ostream& out)
{
  if (path.empty()) {
    out << text;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f)
      throw DomainError("cannot write " + tmp.string());
    f << text;
    if (!f.flush())
      throw DomainError("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string profile_csv(const std::vector<ProfilePoint>& points)
{
  std::string s = "parameter,value,error\n";
  for (const auto& p : points)
    s += format_number(p.parameter) + "," + format_number(p.value) + "," + format_number(p.error) + "\n";
  return s;
}

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

SummableSeq sequence_from_json(const json& j)
{
  if (!j.is_array())
    throw DomainError("factorize input must be a JSON array");
  SummableSeq a;
  for (const json& v : j) {
    if (v.is_number())
      a.emplace_back(v.get<double>(), 0.0);
    else if (v.is_array() && v.size() == 2)
      a.emplace_back(v[0].get<double>(), v[1].get<double>());
    else
      throw DomainError("sequence entries must be numbers or [re, im] pairs");
  }
  return a;
}

struct Options {
  std::string out;
  std::uint64_t seed = 0;
  int threads = 1;
  double tol = 1e-6;
};

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Bohr lift, Nevanlinna metrics and the Szego extremal problem"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--out", opt.out, "Output file (default: stdout)");
  app.add_option("--seed", opt.seed, "Random seed");
  app.add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--tol", opt.tol, "Tolerance for classifications and convergence")->check(CLI::PositiveNumber);

  std::string input, poly_path, series_path, weight_path, zeta_text, mode = "r", kind = "d0", summary_path;
  double sigma = 0.0, t = 0.0, p = 2.0;
  int vars = 1, degree = 1, grid_nodes = 0, terms = 3;
  std::vector<double> values;
  std::vector<int> ladder;
  std::string alpha_text;
  LineAverageConfig line;

  auto* lift_cmd = app.add_subcommand("lift", "Dirichlet series JSON to polynomial JSON");
  lift_cmd->add_option("--input,input", input, "Series JSON")->required();
  auto* unlift_cmd = app.add_subcommand("unlift", "Polynomial JSON to Dirichlet series JSON");
  unlift_cmd->add_option("--input,input", input, "Polynomial JSON")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a series on a vertical line or a polynomial in the polydisk");
  auto* eval_series = eval_cmd->add_option("--series", series_path, "Series JSON");
  auto* eval_poly = eval_cmd->add_option("--poly", poly_path, "Polynomial JSON");
  eval_series->excludes(eval_poly);
  eval_cmd->add_option("--sigma", sigma, "Real part");
  eval_cmd->add_option("--t", t, "Imaginary part");
  eval_cmd->add_option("--zeta", zeta_text, "Point re,im;re,im;...");

  auto* metric_cmd = app.add_subcommand("metric", "Nevanlinna (d0) or L^p metric of a polynomial");
  auto* metric_poly = metric_cmd->add_option("--poly", poly_path, "Polynomial JSON");
  auto* metric_series = metric_cmd->add_option("--series", series_path, "Series JSON (lifted after the shift)");
  metric_poly->excludes(metric_series);
  metric_cmd->add_option("--kind", kind, "d0 or p")->check(CLI::IsMember({"d0", "p"}));
  metric_cmd->add_option("--p", p, "Exponent for --kind p")->check(CLI::PositiveNumber);
  metric_cmd->add_option("--sigma", sigma, "Vertical shift for --series");
  std::string method = "auto";
  std::size_t qmc_points = 65536;
  metric_cmd->add_option("--method", method, "grid, qmc, or auto (qmc beyond the node budget)")
      ->check(CLI::IsMember({"auto", "grid", "qmc"}));
  metric_cmd->add_option("--qmc-points", qmc_points, "Lattice size for qmc")->check(CLI::PositiveNumber);

  auto* profile_cmd = app.add_subcommand("profile", "Monotone profiles in r, sigma or k as CSV");
  profile_cmd->add_option("--mode", mode, "r, sigma or k")->check(CLI::IsMember({"r", "sigma", "k"}));
  profile_cmd->add_option("--poly", poly_path, "Polynomial JSON (mode r)");
  profile_cmd->add_option("--series", series_path, "Series JSON (modes sigma and k)");
  profile_cmd->add_option("--sigma", sigma, "Shift for mode k");
  profile_cmd->add_option("--values", values, "Parameter values")->delimiter(',');

  auto* ergodic_cmd = app.add_subcommand("ergodic", "Vertical-line averages against the torus integral");
  ergodic_cmd->add_option("--series", series_path, "Series JSON")->required();
  ergodic_cmd->add_option("--sigma", sigma, "Line abscissa")->check(CLI::NonNegativeNumber);
  ergodic_cmd->add_option("--t-min", line.t_min, "First half-window");
  ergodic_cmd->add_option("--t-max", line.t_max, "Last half-window");
  ergodic_cmd->add_option("--dt", line.dt, "Time step (0: automatic)");
  ergodic_cmd->add_option("--samples-per-period", line.samples_per_period, "Samples per fastest period");
  ergodic_cmd->add_option("--summary", summary_path, "Summary JSON file (default: stderr)");

  auto* szego_cmd = app.add_subcommand("szego", "Truncated Szego infimum S_d(K)");
  szego_cmd->add_option("--weight", weight_path, "Weight JSON")->required();
  szego_cmd->add_option("--p", p, "Exponent p > 1");
  szego_cmd->add_option("--vars", vars, "Variables of q")->check(CLI::PositiveNumber);
  szego_cmd->add_option("--degree", degree, "Total degree of q")->check(CLI::PositiveNumber);
  szego_cmd->add_option("--grid", grid_nodes, "Nodes per axis (0: automatic)");
  szego_cmd->add_option("--ladder", ladder, "Degrees d1,d2,...")->delimiter(',');

  auto* outer_cmd = app.add_subcommand("outer", "Outer-function criterion Gamma F");
  outer_cmd->alias("outer-check");
  outer_cmd->add_option("--poly", poly_path, "Polynomial JSON")->required();

  auto* jensen_cmd = app.add_subcommand("jensen", "Jensen gap at a polydisk point");
  jensen_cmd->add_option("--poly", poly_path, "Polynomial JSON")->required();
  jensen_cmd->add_option("--zeta", zeta_text, "Point re,im;re,im;...");

  auto* factorize_cmd = app.add_subcommand("factorize", "Factor an l^1 sequence as b c with c -> 0");
  factorize_cmd->add_option("--input,input", input, "JSON array of values")->required();

  auto* fourier_cmd = app.add_subcommand("fourier", "Fourier coefficients of a weight");
  fourier_cmd->add_option("--weight", weight_path, "Weight JSON")->required();
  fourier_cmd->add_option("--alpha", alpha_text,
                          "Signed multi-indices as JSON pairs, e.g. [[1,1],[2,-1]]; separate several with ';'");
  fourier_cmd->add_option("--vars", vars, "Variables for the default table")->check(CLI::PositiveNumber);
  fourier_cmd->add_option("--degree", degree, "Degree for the default table")->check(CLI::PositiveNumber);
  fourier_cmd->add_option("--grid", grid_nodes, "Nodes per axis (0: automatic)");

  auto* witness_cmd = app.add_subcommand("divergence-witness", "Primes with p_{j+1} > 2 p_j and damped sums");
  witness_cmd->add_option("--terms,-J", terms, "Number of primes")->check(CLI::Range(1, 40));

  std::vector<const char*> argv;
  for (const auto& a : args)
    argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  int threads = opt.threads;
  if (const char* env = std::getenv("BOHR_SZEGO_THREADS")) {
    try {
      threads = std::stoi(env);
    } catch (const std::logic_error&) {
      err << "error: BOHR_SZEGO_THREADS is not an integer\n";
      return kInputError;
    }
    if (threads < 1) {
      err << "error: BOHR_SZEGO_THREADS must be positive\n";
      return kInputError;
    }
  }
  set_num_threads(threads);

  try {
    if (*lift_cmd) {
      emit(opt.out, dump(to_json(lift(series_from_json(read_json(input))))), out);
      return kOk;
    }
    if (*unlift_cmd) {
      emit(opt.out, dump(to_json(unlift(polynomial_from_json(read_json(input))))), out);
      return kOk;
    }
    if (*eval_cmd) {
      json result;
      if (!series_path.empty()) {
        const auto f = series_from_json(read_json(series_path));
        result = {{"sigma", sigma}, {"t", t}, {"value", complex_json(evaluate_line(f, sigma, t))}};
        if (sigma > 0.0) {
          const auto k = f.empty() ? 0u : lift(f).max_variable();
          result["lift"] = complex_json(evaluate_lift(lift(f), prime_point(k, sigma, t)));
        }
      } else if (!poly_path.empty()) {
        const auto f = polynomial_from_json(read_json(poly_path));
        const PolydiskPoint z(parse_point(zeta_text));
        result = {{"value", complex_json(evaluate_lift(f, z))}};
      } else {
        throw DomainError("eval needs --series or --poly");
      }
      emit(opt.out, dump(result), out);
      return kOk;
    }
    if (*metric_cmd) {
      LiftedPolynomial f;
      if (!poly_path.empty())
        f = polynomial_from_json(read_json(poly_path));
      else if (!series_path.empty())
        f = lift(vertical_shift(series_from_json(read_json(series_path)), sigma));
      else
        throw DomainError("metric needs --poly or --series");
      bool use_qmc = method == "qmc";
      if (method == "auto") {
        try {
          default_grid(f);
        } catch (const ResourceError&) {
          use_qmc = true;
        }
      }
      json result;
      if (use_qmc) {
        const bool d0 = kind == "d0";
        const TorusFunction integrand = [&](std::span<const Complex> w) {
          const double m = std::abs(evaluate_lift(f, w));
          return d0 ? std::log1p(m) : std::pow(m, p);
        };
        const MetricReport m =
            qmc_integral(integrand, std::max(1, static_cast<int>(f.max_variable())), qmc_points, opt.seed);
        if (d0)
          result = {{"metric", "d0"}, {"method", "qmc"}, {"value", m.value}, {"error", m.error}, {"nodes", m.nodes}};
        else
          result = {{"metric", "p"},         {"method", "qmc"},           {"p", p},
                    {"value", std::pow(m.value, 1.0 / p)}, {"error", m.error}, {"nodes", m.nodes}};
      } else if (kind == "d0") {
        const MetricReport m = metric_d0_report(f);
        result = {{"metric", "d0"}, {"value", m.value}, {"error", m.error}, {"nodes", m.nodes}};
      } else {
        result = {{"metric", "p"}, {"p", p}, {"value", metric_p(f, p)}};
      }
      emit(opt.out, dump(result), out);
      return kOk;
    }
    if (*profile_cmd) {
      std::vector<ProfilePoint> points;
      if (mode == "r") {
        if (poly_path.empty())
          throw DomainError("profile --mode r needs --poly");
        if (values.empty())
          for (int i = 0; i <= 10; ++i)
            values.push_back(i / 10.0);
        points = d0_profile(polynomial_from_json(read_json(poly_path)), values);
      } else {
        if (series_path.empty())
          throw DomainError("profile --mode " + mode + " needs --series");
        const auto f = series_from_json(read_json(series_path));
        if (mode == "sigma") {
          if (values.empty())
            for (int i = 0; i <= 8; ++i)
              values.push_back(i / 4.0);
          points = sigma_profile(f, values);
        } else {
          std::vector<std::uint32_t> ks;
          for (const double v : values) {
            if (!(v >= 0.0) || v != std::floor(v))
              throw DomainError("profile --mode k needs nonnegative integer values");
            ks.push_back(static_cast<std::uint32_t>(v));
          }
          if (ks.empty())
            for (std::uint32_t k = 1; k <= std::max(1u, lift(f).max_variable()); ++k)
              ks.push_back(k);
          points = abschnitt_profile(f, sigma, ks);
        }
      }
      emit(opt.out, profile_csv(points), out);
      return kOk;
    }
    if (*ergodic_cmd) {
      const auto f = series_from_json(read_json(series_path));
      line.tol = opt.tol;
      line.stop_on_convergence = false;
      const auto report = line_average(f, sigma, line, [](double x) { return std::log1p(x); });
      const MetricReport torus = metric_d0_report(lift(vertical_shift(f, sigma)));
      std::string csv = "T,line_average,torus_value,gap\n";
      bool non_increasing = true;
      double previous = INFINITY;
      for (const auto& w : report.history) {
        const double gap = std::abs(w.value - torus.value);
        non_increasing = non_increasing && gap <= previous;
        previous = gap;
        csv += format_number(w.t) + "," + format_number(w.value) + "," + format_number(torus.value) + "," +
               format_number(gap) + "\n";
      }
      json summary = {{"sigma", sigma},
                      {"dt", report.dt},
                      {"torus_value", torus.value},
                      {"torus_error", torus.error},
                      {"final_window", report.window},
                      {"final_gap", std::abs(report.value - torus.value)},
                      {"gap_non_increasing", non_increasing},
                      {"converged", report.converged}};
      if (!report.converged)
        summary["warning"] = "line average moved by more than tol between the last two windows";
      emit(opt.out, csv, out);
      if (summary_path.empty())
        err << dump(summary);
      else
        emit(summary_path, dump(summary), out);
      return kOk;
    }
    if (*szego_cmd) {
      const WeightSpec k = weight_from_json(read_json(weight_path));
      auto solve = [&](int d) {
        SzegoConfig cfg;
        cfg.p = p;
        cfg.vars = vars;
        cfg.degree = d;
        if (grid_nodes > 0)
          cfg.grid = QuadratureGrid(std::max(vars, k.vars()), grid_nodes);
        if (p == 2.0)
          return cfg.grid ? szego_p2(k, build_index_set(vars, d), *cfg.grid) : szego_p2(k, vars, d);
        return szego_general(k, cfg);
      };
      const SzegoResult r = solve(degree);
      json coeffs = json::array();
      for (std::size_t i = 0; i < r.index_set.size(); ++i) {
        const Complex c = r.coeffs[static_cast<Eigen::Index>(i)];
        coeffs.push_back({{"alpha", to_json(r.index_set[i])}, {"re", c.real()}, {"im", c.imag()}});
      }
      json ladder_json = json::array();
      bool sandwich = r.value >= r.lower - opt.tol && r.value <= r.upper + opt.tol;
      for (const int d : ladder) {
        const SzegoResult s = d == degree ? r : solve(d);
        sandwich = sandwich && s.value >= s.lower - opt.tol && s.value <= s.upper + opt.tol;
        ladder_json.push_back({{"degree", d}, {"S", s.value}, {"converged", s.converged}});
      }
      const json result = {{"p", p},
                           {"vars", vars},
                           {"degree", degree},
                           {"S", r.value},
                           {"lower", r.lower},
                           {"upper", r.upper},
                           {"lower_unreliable", r.lower_unreliable},
                           {"converged", r.converged},
                           {"sandwich", sandwich},
                           {"coeffs", coeffs},
                           {"ladder", ladder_json}};
      emit(opt.out, dump(result), out);
      return sandwich ? kOk : kCheckFailed;
    }
    if (*outer_cmd) {
      const OuterReport r = outer_gap(polynomial_from_json(read_json(poly_path)), opt.tol);
      const json result = {{"gamma", finite_or_null(r.gamma)},
                           {"error", r.error},
                           {"infinite", r.infinite},
                           {"outer", r.outer},
                           {"tol", r.tol}};
      emit(opt.out, dump(result), out);
      return kOk;
    }
    if (*jensen_cmd) {
      const auto f = polynomial_from_json(read_json(poly_path));
      const PoissonPoint z(parse_point(zeta_text));
      const GapReport r = jensen_gap(f, z);
      const json result = {{"gap", finite_or_null(r.value)}, {"error", r.error}, {"infinite", r.infinite}};
      emit(opt.out, dump(result), out);
      return r.infinite || r.value >= -opt.tol ? kOk : kCheckFailed;
    }
    if (*factorize_cmd) {
      const SummableSeq a = sequence_from_json(read_json(input));
      const FactorizationResult r = factorize_l1(a);
      const FactorizationReport rep = verify_factorization(a, r);
      json b = json::array(), c = json::array(), s = json::array();
      for (const Complex& v : r.b)
        b.push_back(v.imag() == 0.0 ? json(v.real()) : json::array({v.real(), v.imag()}));
      for (const double v : r.c)
        c.push_back(v);
      for (const auto& block : r.blocks)
        s.push_back(format_ladder_value(block.s));
      json checks = json::object();
      for (const auto& check : rep.checks)
        checks[check.name] = {{"passed", check.passed}, {"worst", check.worst}, {"detail", check.detail}};
      const json result = {{"b", b},
                           {"c", c},
                           {"breakpoints", r.breakpoints},
                           {"s", s},
                           {"truncated", r.truncated},
                           {"checks", checks},
                           {"chain",
                            {static_cast<double>(rep.l1), static_cast<double>(rep.l2), static_cast<double>(rep.l3),
                             static_cast<double>(rep.l4)}},
                           {"passed", rep.passed()}};
      emit(opt.out, dump(result), out);
      return rep.passed() ? kOk : kCheckFailed;
    }
    if (*fourier_cmd) {
      const WeightSpec k = weight_from_json(read_json(weight_path));
      std::vector<SignedMultiIndex> list;
      std::stringstream all(alpha_text);
      std::string text;
      while (std::getline(all, text, ';'))
        if (!text.empty())
          list.push_back(signed_index_from_json(json::parse(text)));
      if (list.empty()) {
        list.emplace_back();
        for (const auto& alpha : build_index_set(vars, degree))
          list.push_back(to_signed(alpha));
      }
      int grid_vars = k.vars();
      int reach = 0;
      for (const auto& alpha : list) {
        grid_vars = std::max(grid_vars, static_cast<int>(alpha.max_position()));
        for (const auto& [pos, e] : alpha.entries())
          reach = std::max(reach, std::abs(e));
      }
      const QuadratureGrid g(grid_vars, grid_nodes > 0 ? grid_nodes : reach + k.degree() + 1);
      json table = json::array();
      for (const auto& alpha : list) {
        const Complex c = fourier_coeff(k, alpha, g);
        table.push_back({{"alpha", to_json(alpha)}, {"re", c.real()}, {"im", c.imag()}});
      }
      emit(opt.out, dump(json{{"coefficients", table}, {"grid", g.nodes_per_axis()}}), out);
      return kOk;
    }
    if (*witness_cmd) {
      std::vector<std::uint64_t> primes{2};
      while (static_cast<int>(primes.size()) < terms) {
        std::uint64_t q = 2 * primes.back() + 1;
        while (!is_prime(q))
          ++q;
        primes.push_back(q);
      }
      json positions = json::array(), coefficients = json::array();
      bool unbounded = true;
      for (std::size_t j = 0; j < primes.size(); ++j) {
        if (primes[j] < kSieveCap)
          positions.push_back(prime_position(primes[j]));
        else
          positions.push_back(nullptr);
        const double lp = std::log(static_cast<double>(primes[j]));
        coefficients.push_back(lp);
        // p_j >= 2^j, so log p_j >= j log 2.
        unbounded = unbounded && lp >= static_cast<double>(j + 1) * std::log(2.0) * (1.0 - 1e-15);
        if (j > 0)
          unbounded = unbounded && primes[j] > 2 * primes[j - 1];
      }
      json damped = json::array();
      for (const double s : {0.5, 0.25, 0.1}) {
        std::vector<double> parts;
        for (const auto q : primes)
          parts.push_back(std::log(static_cast<double>(q)) * std::pow(static_cast<double>(q), -2.0 * s));
        damped.push_back({{"sigma", s}, {"sum", pairwise_sum(std::span<const double>(parts))}});
      }
      const json result = {{"primes", primes},
                           {"positions", positions},
                           {"coefficients", coefficients},
                           {"certificate",
                            {{"doubling_gaps", unbounded},
                             {"bound", "log p_j >= j log 2"},
                             {"unbounded", unbounded}}},
                           {"damped_sums", damped}};
      emit(opt.out, dump(result), out);
      return unbounded ? kOk : kCheckFailed;
    }
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegenerateWeightError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::logic_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

} // namespace bohr::cli
