#pragma once

#include "bohr/dirichlet.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bohr {

/// Largest tensor grid (node count) the quadrature routines will build.
inline constexpr std::size_t kNodeBudget = 10'000'000;

/// Equal-weight tensor grid on T^k: N-th roots of unity on each axis.
/// Exact for trigonometric polynomials whose per-axis degree is below N.
class QuadratureGrid {
public:
  QuadratureGrid(int vars, int nodes_per_axis);

  int vars() const { return vars_; }
  int nodes_per_axis() const { return nodes_; }
  /// N^k. Throws ResourceError above kNodeBudget.
  std::size_t node_count() const;

private:
  int vars_;
  int nodes_;
};

struct MetricReport {
  double value = 0.0;
  double error = 0.0;
  std::size_t nodes = 0;
  bool converged = true;
};

struct ProfilePoint {
  double parameter = 0.0;
  double value = 0.0;
  double error = 0.0;
};

using TorusFunction = std::function<double(std::span<const Complex>)>;
using ComplexTorusFunction = std::function<Complex(std::span<const Complex>)>;
using ModulusTransform = std::function<double(double)>;

/// Grid used by the metrics when none is given: the finest tensor grid in a
/// per-dimension ladder (4096, 512, 128, 40, ...) that fits the node budget
/// and resolves the polynomial's per-axis degree.
QuadratureGrid default_grid(const LiftedPolynomial& f);
QuadratureGrid default_grid(int vars, int axis_degree);

/// F at every node of the grid, axis 0 varying slowest.
Eigen::ArrayXcd grid_values(const LiftedPolynomial& f, const QuadratureGrid& g);

/// Pairwise mean of node values.
double haar_mean(const Eigen::ArrayXd& values);
Complex haar_mean(const Eigen::ArrayXcd& values);

/// int F dm over the grid (identity transform on complex values).
Complex haar_integral(const LiftedPolynomial& f, const QuadratureGrid& g);
/// int transform(|F|) dm.
double haar_integral(const LiftedPolynomial& f, const QuadratureGrid& g, const ModulusTransform& transform);
/// int f dm for a callable on T^k.
double haar_integral(const TorusFunction& f, const QuadratureGrid& g);

/// Randomly shifted rank-1 lattice rule with Korobov generator
/// (1, a, a^2, ...) mod n. The value is the mean over `shifts` independent
/// shifts and the error is the standard error of that mean.
MetricReport qmc_integral(const TorusFunction& f, int vars, std::size_t n, std::uint64_t seed, int shifts = 8,
                          std::uint64_t generator = 17797);

/// F_[r](w) = F(r w_1, r^2 w_2, ...): c_alpha -> r^{sum_j j alpha_j} c_alpha.
LiftedPolynomial radial_dilate(const LiftedPolynomial& f, double r);

/// int log(1 + |F_[r]|) dm for each r (ascending in [0, 1]); all points share
/// one grid. The error column is the change against the half-resolution grid.
std::vector<ProfilePoint> d0_profile(const LiftedPolynomial& f, std::span<const double> rs);

/// ||F||_0. For polynomials the sup over r is attained at r = 1.
double metric_d0(const LiftedPolynomial& f);
MetricReport metric_d0_report(const LiftedPolynomial& f);

/// (int |F|^p dm)^{1/p}.
double metric_p(const LiftedPolynomial& f, double p);

/// int log|F| dm. The last variable is integrated exactly through Jensen's
/// formula; the others use the grid's trapezoid rule. The error is the change
/// against the half-resolution grid. Throws DomainError for F = 0.
MetricReport log_modulus_integral(const LiftedPolynomial& f, const QuadratureGrid& g);

struct LineAverageConfig {
  double t_min = 64.0;
  double t_max = 16384.0;
  double growth = 2.0;
  /// Time step; 0 selects 2 pi / (samples_per_period * max log n).
  double dt = 0.0;
  int samples_per_period = 64;
  double tol = 1e-3;
  /// Stop at the first window whose value moved by less than tol.
  bool stop_on_convergence = true;
};

struct LineWindow {
  double t = 0.0;
  double value = 0.0;
};

struct LineAverageReport {
  double value = 0.0;
  /// |value(T_last) - value(T_prev)|, the last Cauchy gap of the schedule.
  double error = 0.0;
  double window = 0.0;
  double dt = 0.0;
  bool converged = false;
  std::vector<LineWindow> history;
};

/// The window schedule t_min, t_min*growth, ..., ending exactly at t_max.
std::vector<double> line_schedule(const LineAverageConfig& cfg);

/// (1/2T) int_{-T}^{T} transform(|f(sigma + i t)|) dt by the composite
/// trapezoid rule, over the growing window schedule.
LineAverageReport line_average(const DirichletSeries& f, double sigma, const LineAverageConfig& cfg,
                               const ModulusTransform& transform);

/// ||f_sigma||_0 through the lift for each sigma.
std::vector<ProfilePoint> sigma_profile(const DirichletSeries& f, std::span<const double> sigmas);

/// int log(1 + |B_k f_sigma|) dm for each k; all points share the grid of the
/// largest k.
std::vector<ProfilePoint> abschnitt_profile(const DirichletSeries& f, double sigma,
                                            std::span<const std::uint32_t> ks);

} // namespace bohr
