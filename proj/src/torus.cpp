#include "bohr/torus.hpp"

#include "bohr/errors.hpp"
#include "bohr/parallel.hpp"
#include "bohr/primes.hpp"
#include "jensen.hpp"
#include "torus_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace bohr {

QuadratureGrid::QuadratureGrid(int vars, int nodes_per_axis) : vars_(vars), nodes_(nodes_per_axis)
{
  if (vars < 0)
    throw DomainError("grid variable count must be non-negative");
  if (nodes_per_axis < 1)
    throw DomainError("grid needs at least one node per axis");
}

std::size_t QuadratureGrid::node_count() const
{
  std::size_t count = 1;
  for (int a = 0; a < vars_; ++a) {
    count *= static_cast<std::size_t>(nodes_);
    if (count > kNodeBudget)
      throw ResourceError("tensor grid " + std::to_string(nodes_) + "^" + std::to_string(vars_) +
                          " exceeds the node budget; use qmc_integral for this many variables");
  }
  return count;
}

QuadratureGrid default_grid(int vars, int axis_degree)
{
  static constexpr int kLadder[] = {1, 4096, 512, 128, 40};
  const int floor_nodes = 2 * axis_degree + 1;
  int n = 1;
  if (vars < 5) {
    n = kLadder[vars];
  } else {
    n = static_cast<int>(std::floor(std::pow(static_cast<double>(kNodeBudget), 1.0 / vars)));
  }
  if (vars > 0)
    n = std::max(n, floor_nodes);
  QuadratureGrid g(vars, n);
  g.node_count();
  return g;
}

QuadratureGrid default_grid(const LiftedPolynomial& f)
{
  int degree = 0;
  const auto k = f.max_variable();
  for (std::uint32_t j = 1; j <= k; ++j)
    degree = std::max(degree, static_cast<int>(f.axis_degree(j)));
  return default_grid(static_cast<int>(k), degree);
}

Eigen::ArrayXcd grid_values(const LiftedPolynomial& f, const QuadratureGrid& g)
{
  g.node_count();
  return detail::synthesize(detail::to_laurent(f, g.vars()), g.nodes_per_axis());
}

double haar_mean(const Eigen::ArrayXd& values)
{
  return pairwise_sum(std::span<const double>(values.data(), static_cast<std::size_t>(values.size()))) /
         static_cast<double>(values.size());
}

Complex haar_mean(const Eigen::ArrayXcd& values)
{
  return pairwise_sum(std::span<const Complex>(values.data(), static_cast<std::size_t>(values.size()))) /
         static_cast<double>(values.size());
}

Complex haar_integral(const LiftedPolynomial& f, const QuadratureGrid& g) { return haar_mean(grid_values(f, g)); }

double haar_integral(const LiftedPolynomial& f, const QuadratureGrid& g, const ModulusTransform& transform)
{
  const Eigen::ArrayXcd v = grid_values(f, g);
  Eigen::ArrayXd t(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i)
    t[i] = transform(std::abs(v[i]));
  return haar_mean(t);
}

double haar_integral(const TorusFunction& f, const QuadratureGrid& g)
{
  const std::size_t count = g.node_count();
  const auto roots = detail::roots_of_unity(g.nodes_per_axis());
  std::vector<double> values(count);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    std::vector<Complex> w;
    for (std::size_t i = begin; i < end; ++i) {
      detail::node_coordinates(i, g.vars(), g.nodes_per_axis(), roots, w);
      values[i] = f(w);
    }
  });
  return pairwise_sum(std::span<const double>(values)) / static_cast<double>(count);
}

MetricReport qmc_integral(const TorusFunction& f, int vars, std::size_t n, std::uint64_t seed, int shifts,
                          std::uint64_t generator)
{
  if (n < 2)
    throw DomainError("qmc_integral needs at least two lattice points");
  if (shifts < 8)
    throw DomainError("qmc_integral needs at least eight random shifts");
  if (vars < 0)
    throw DomainError("variable count must be non-negative");

  std::vector<std::uint64_t> z(static_cast<std::size_t>(vars));
  std::uint64_t power = 1;
  for (int j = 0; j < vars; ++j) {
    z[j] = power;
    power = mul_mod(power, generator, n);
  }

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> shift_means(static_cast<std::size_t>(shifts));
  std::vector<double> values(n);
  for (int s = 0; s < shifts; ++s) {
    std::vector<double> delta(static_cast<std::size_t>(vars));
    for (double& d : delta)
      d = uniform(rng);
    parallel_for(n, [&](std::size_t begin, std::size_t end) {
      std::vector<Complex> w(static_cast<std::size_t>(vars));
      for (std::size_t i = begin; i < end; ++i) {
        for (int j = 0; j < vars; ++j) {
          const auto lattice = mul_mod(i, z[j], n);
          double x = static_cast<double>(lattice) / static_cast<double>(n) + delta[j];
          x -= std::floor(x);
          w[j] = std::polar(1.0, 2.0 * std::numbers::pi * x);
        }
        values[i] = f(w);
      }
    });
    shift_means[s] = pairwise_sum(std::span<const double>(values)) / static_cast<double>(n);
  }
  const double mean = pairwise_sum(std::span<const double>(shift_means)) / shifts;
  double ss = 0.0;
  for (double m : shift_means)
    ss += (m - mean) * (m - mean);
  MetricReport report;
  report.value = mean;
  report.error = std::sqrt(ss / (shifts - 1) / shifts);
  report.nodes = n * static_cast<std::size_t>(shifts);
  return report;
}

LiftedPolynomial radial_dilate(const LiftedPolynomial& f, double r)
{
  if (!(r >= 0.0 && r <= 1.0))
    throw DomainError("radial dilation needs 0 <= r <= 1");
  if (r == 1.0)
    return f;
  LiftedPolynomial::Monomials m;
  for (const auto& [alpha, c] : f.monomials())
    m.emplace(alpha, c * std::pow(r, static_cast<double>(alpha.weighted_degree())));
  return LiftedPolynomial(std::move(m));
}

namespace {

double log1p_modulus(double x) { return std::log1p(x); }

QuadratureGrid coarser(const QuadratureGrid& g)
{
  return QuadratureGrid(g.vars(), std::max(1, g.nodes_per_axis() / 2));
}

MetricReport d0_on(const LiftedPolynomial& f, const QuadratureGrid& g)
{
  MetricReport r;
  r.value = haar_integral(f, g, log1p_modulus);
  r.error = g.vars() == 0 ? 0.0 : std::abs(r.value - haar_integral(f, coarser(g), log1p_modulus));
  r.nodes = g.node_count();
  return r;
}

} // namespace

std::vector<ProfilePoint> d0_profile(const LiftedPolynomial& f, std::span<const double> rs)
{
  const QuadratureGrid g = default_grid(f);
  std::vector<ProfilePoint> out;
  out.reserve(rs.size());
  for (const double r : rs) {
    const MetricReport m = d0_on(radial_dilate(f, r), g);
    out.push_back({r, m.value, m.error});
  }
  return out;
}

MetricReport metric_d0_report(const LiftedPolynomial& f) { return d0_on(f, default_grid(f)); }

double metric_d0(const LiftedPolynomial& f) { return metric_d0_report(f).value; }

double metric_p(const LiftedPolynomial& f, double p)
{
  if (!(p > 0.0))
    throw DomainError("metric_p needs p > 0");
  const double mean = haar_integral(f, default_grid(f), [p](double x) { return std::pow(x, p); });
  return std::pow(mean, 1.0 / p);
}

MetricReport log_modulus_integral(const LiftedPolynomial& f, const QuadratureGrid& g)
{
  if (f.is_zero())
    throw DomainError("log_modulus_integral: F is identically zero");
  const int vars = std::max(g.vars(), static_cast<int>(f.max_variable()));
  const auto laurent = detail::to_laurent(f, vars);
  const int n = g.nodes_per_axis();
  MetricReport r;
  r.value = detail::poisson_log_modulus(laurent, {}, n);
  r.error = vars <= 1 ? 0.0 : std::abs(r.value - detail::poisson_log_modulus(laurent, {}, std::max(1, n / 2)));
  r.nodes = vars <= 1 ? 1 : static_cast<std::size_t>(std::pow(n, vars - 1));
  return r;
}

std::vector<double> line_schedule(const LineAverageConfig& cfg)
{
  if (!(cfg.t_min > 0.0) || !(cfg.t_max >= cfg.t_min) || !(cfg.growth > 1.0))
    throw DomainError("line schedule needs 0 < t_min <= t_max and growth > 1");
  std::vector<double> ts;
  for (double t = cfg.t_min; t < cfg.t_max; t *= cfg.growth)
    ts.push_back(t);
  ts.push_back(cfg.t_max);
  return ts;
}

namespace {

double line_window_mean(const DirichletSeries& f, double sigma, double t_half, double dt,
                        const ModulusTransform& transform)
{
  const auto intervals = static_cast<std::size_t>(std::ceil(2.0 * t_half / dt));
  const double h = 2.0 * t_half / static_cast<double>(intervals);
  std::vector<double> v(intervals + 1);
  parallel_for(intervals + 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t m = begin; m < end; ++m) {
      const double t = -t_half + h * static_cast<double>(m);
      v[m] = transform(std::abs(evaluate_line(f, sigma, t)));
    }
  });
  v.front() *= 0.5;
  v.back() *= 0.5;
  return h * pairwise_sum(std::span<const double>(v)) / (2.0 * t_half);
}

} // namespace

LineAverageReport line_average(const DirichletSeries& f, double sigma, const LineAverageConfig& cfg,
                               const ModulusTransform& transform)
{
  if (!(sigma >= 0.0))
    throw DomainError("line_average needs sigma >= 0");
  const auto schedule = line_schedule(cfg);
  double max_log = 0.0;
  for (const auto& [n, a] : f.terms())
    max_log = std::max(max_log, std::log(static_cast<double>(n)));

  LineAverageReport report;
  report.dt = cfg.dt > 0.0 ? cfg.dt
                           : (max_log > 0.0 ? 2.0 * std::numbers::pi / (cfg.samples_per_period * max_log)
                                            : schedule.front());
  for (const double t : schedule) {
    const double dt = std::min(report.dt, t);
    const double value = line_window_mean(f, sigma, t, dt, transform);
    if (!report.history.empty()) {
      report.error = std::abs(value - report.history.back().value);
      report.converged = report.error < cfg.tol;
    }
    report.history.push_back({t, value});
    report.value = value;
    report.window = t;
    if (report.converged && cfg.stop_on_convergence)
      break;
  }
  return report;
}

std::vector<ProfilePoint> sigma_profile(const DirichletSeries& f, std::span<const double> sigmas)
{
  const LiftedPolynomial lifted = lift(f);
  const QuadratureGrid g = default_grid(lifted);
  std::vector<ProfilePoint> out;
  out.reserve(sigmas.size());
  for (const double s : sigmas) {
    const MetricReport m = d0_on(lift(vertical_shift(f, s)), g);
    out.push_back({s, m.value, m.error});
  }
  return out;
}

std::vector<ProfilePoint> abschnitt_profile(const DirichletSeries& f, double sigma,
                                            std::span<const std::uint32_t> ks)
{
  if (!(sigma > 0.0))
    throw DomainError("abschnitt_profile needs sigma > 0");
  const LiftedPolynomial shifted = lift(vertical_shift(f, sigma));
  std::uint32_t k_max = 0;
  for (const auto k : ks)
    k_max = std::max(k_max, k);
  const LiftedPolynomial widest = abschnitt(shifted, k_max);
  int degree = 0;
  for (std::uint32_t j = 1; j <= widest.max_variable(); ++j)
    degree = std::max(degree, static_cast<int>(widest.axis_degree(j)));
  const QuadratureGrid g = default_grid(static_cast<int>(widest.max_variable()), degree);

  std::vector<ProfilePoint> out;
  out.reserve(ks.size());
  for (const auto k : ks) {
    const MetricReport m = d0_on(abschnitt(shifted, k), g);
    out.push_back({static_cast<double>(k), m.value, m.error});
  }
  return out;
}

} // namespace bohr
