#pragma once

#include "bohr/dirichlet.hpp"
#include "bohr/torus.hpp"

#include <Eigen/Core>

#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace bohr {

/// K = |h|^p.
struct ModulusPower {
  LiftedPolynomial h;
  double p = 2.0;
};

/// K given by its Fourier coefficients on Z^k. Missing mirror entries are
/// completed by K^(-alpha) = conj K^(alpha).
struct FourierTable {
  std::map<SignedMultiIndex, Complex> coefficients;
};

/// A nonnegative weight K on the torus.
class WeightSpec {
public:
  /// Throws DomainError for h = 0 or p <= 0.
  static WeightSpec modulus_power(LiftedPolynomial h, double p);
  /// Throws DomainError when the table is not Hermitian or K^(0) is not a
  /// positive real.
  static WeightSpec fourier(std::map<SignedMultiIndex, Complex> coefficients);

  const std::variant<ModulusPower, FourierTable>& data() const { return data_; }
  /// Number of leading variables K depends on.
  int vars() const;
  /// Largest |exponent| of K on any axis. For a power |h|^p with p not an even
  /// integer this is the degree of |h|^{ceil p}, a heuristic bandwidth.
  int degree() const;
  /// lambda K (lambda > 0).
  WeightSpec scaled(double lambda) const;
  /// K at every node of the grid.
  Eigen::ArrayXd values(const QuadratureGrid& g) const;

private:
  explicit WeightSpec(std::variant<ModulusPower, FourierTable> d) : data_(std::move(d)) {}

  std::variant<ModulusPower, FourierTable> data_;
};

/// int K conj(e_alpha) dm on the grid.
Complex fourier_coeff(const WeightSpec& k, const SignedMultiIndex& alpha, const QuadratureGrid& g);

struct LowerBoundReport {
  double value = 0.0;
  double error = 0.0;
  double min_on_grid = 0.0;
  /// K vanishes on more than half of the grid nodes.
  bool unreliable = false;
};

/// exp int log K dm. The last variable is integrated exactly (Jensen) for
/// both weight kinds; the grid is also used for the positivity spot check.
LowerBoundReport lower_bound(const WeightSpec& k, const QuadratureGrid& g);
LowerBoundReport lower_bound(const WeightSpec& k);

/// Nonzero alpha supported in the first k variables with |alpha| <= d, graded
/// by degree and lexicographically descending within a degree.
std::vector<MultiIndex> build_index_set(int k, int d);

/// Smallest grid on which every Gram entry and the p = 2 objective are exact:
/// N = 2d + deg K + 1 over max(k, vars K) variables.
QuadratureGrid szego_grid(const WeightSpec& k, int vars, int d);

struct SzegoResult {
  double value = 0.0;
  std::vector<MultiIndex> index_set;
  Eigen::VectorXcd coeffs;
  double lower = 0.0;
  /// K^(0)
  double upper = 0.0;
  bool lower_unreliable = false;
  bool converged = true;
  int iterations = 0;
  /// ||G c - b|| for the p = 2 normal equations (0 when not applicable).
  double residual = 0.0;
  double min_weight = 0.0;
};

/// Exact p = 2 solve: G c = b with G_{beta alpha} = K^(beta - alpha),
/// b_beta = K^(beta), S = K^(0) - Re(b^H c). Throws DegenerateWeightError if G
/// is not positive definite.
SzegoResult szego_p2(const WeightSpec& k, const std::vector<MultiIndex>& index_set, const QuadratureGrid& g);
SzegoResult szego_p2(const WeightSpec& k, int vars, int d);

struct SzegoConfig {
  double p = 2.0;
  int vars = 1;
  int degree = 1;
  /// Unset selects N = 2 (2d + deg K) + 1 for p != 2 and szego_grid for p = 2.
  std::optional<QuadratureGrid> grid;
  double step_tol = 1e-13;
  int max_iterations = 500;
  double eps_start = 1e-2;
  double eps_end = 1e-10;
  double eps_factor = 0.1;
};

/// The smoothed grid objective Phi(c) = mean K (|1 - q_c|^2 + eps^2)^{p/2}.
class SzegoObjective {
public:
  SzegoObjective(const WeightSpec& k, std::vector<MultiIndex> index_set, const QuadratureGrid& g, double p);

  double value(const Eigen::VectorXcd& c, double eps) const;
  /// dPhi/dRe c + i dPhi/dIm c.
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& c, double eps) const;

  const QuadratureGrid& grid() const { return grid_; }
  const Eigen::ArrayXd& weights() const { return weights_; }
  std::size_t size() const { return index_set_.size(); }

private:
  Eigen::ArrayXcd one_minus_q(const Eigen::VectorXcd& c) const;

  std::vector<MultiIndex> index_set_;
  QuadratureGrid grid_;
  double p_;
  Eigen::ArrayXd weights_;
  int axis_degree_ = 0;
};

/// Minimizes the smoothed objective by Gram-preconditioned gradient descent
/// with Armijo backtracking and eps-continuation, starting from the p = 2
/// solution. The reported value is the unsmoothed objective.
SzegoResult szego_general(const WeightSpec& k, const SzegoConfig& cfg);

struct LadderStep {
  int degree = 0;
  double value = 0.0;
  double gap = 0.0;
};

struct AttainmentReport {
  bool refused = false;
  double gamma = 0.0;
  double lower = 0.0;
  std::vector<LadderStep> ladder;
  bool monotone = true;
  bool below_target = true;
  double target = 0.0;
};

/// S_d(|h|^p) - exp(p int log|h|) over the degree ladder. Refuses (refused =
/// true, gamma set) unless h passes is_outer.
AttainmentReport certify_lower_attainment(const LiftedPolynomial& h, double p, const std::vector<int>& degrees,
                                          double target, const SzegoConfig& cfg = {});

struct UpperReport {
  double max_coeff = 0.0;
  MultiIndex witness;
  bool vanishing = false;
  double value = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  /// vanishing: S == K^(0) and every solver coefficient <= 1e-12;
  /// otherwise S <= K^(0) - |K^(witness)|^2 / K^(0).
  bool passed = false;
  double max_solver_coeff = 0.0;
};

UpperReport certify_upper(const WeightSpec& k, int vars, int d, const QuadratureGrid& g);
UpperReport certify_upper(const WeightSpec& k, int vars, int d);

} // namespace bohr
