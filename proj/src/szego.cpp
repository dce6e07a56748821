#include "bohr/szego.hpp"

#include "bohr/errors.hpp"
#include "bohr/poisson.hpp"
#include "jensen.hpp"
#include "torus_grid.hpp"

#include <Eigen/Cholesky>

#include <algorithm>
#include <cmath>
#include <functional>

namespace bohr {

namespace {

int axis_degree(const LiftedPolynomial& h)
{
  int d = 0;
  for (std::uint32_t j = 1; j <= h.max_variable(); ++j)
    d = std::max(d, static_cast<int>(h.axis_degree(j)));
  return d;
}

std::vector<std::pair<SignedMultiIndex, Complex>> table_entries(const FourierTable& t)
{
  return {t.coefficients.begin(), t.coefficients.end()};
}

} // namespace

WeightSpec WeightSpec::modulus_power(LiftedPolynomial h, double p)
{
  if (h.is_zero())
    throw DomainError("weight |h|^p needs h != 0");
  if (!(p > 0.0))
    throw DomainError("weight |h|^p needs p > 0");
  return WeightSpec(ModulusPower{std::move(h), p});
}

WeightSpec WeightSpec::fourier(std::map<SignedMultiIndex, Complex> coefficients)
{
  std::map<SignedMultiIndex, Complex> full = coefficients;
  double scale = 0.0;
  for (const auto& [alpha, c] : coefficients)
    scale = std::max(scale, std::abs(c));
  for (const auto& [alpha, c] : coefficients) {
    const SignedMultiIndex mirror = -alpha;
    const auto it = coefficients.find(mirror);
    if (it == coefficients.end()) {
      full.emplace(mirror, std::conj(c));
    } else if (std::abs(it->second - std::conj(c)) > 1e-12 * scale) {
      throw DomainError("Fourier table is not Hermitian at " + alpha.to_string());
    }
  }
  const auto zero = full.find(SignedMultiIndex{});
  if (zero == full.end() || !(zero->second.real() > 0.0))
    throw DomainError("weight needs a positive mean K^(0)");
  zero->second = zero->second.real();
  std::erase_if(full, [](const auto& e) { return e.second == Complex{}; });
  return WeightSpec(FourierTable{std::move(full)});
}

int WeightSpec::vars() const
{
  if (const auto* m = std::get_if<ModulusPower>(&data_))
    return static_cast<int>(m->h.max_variable());
  std::uint32_t k = 0;
  for (const auto& [alpha, c] : std::get<FourierTable>(data_).coefficients)
    k = std::max(k, alpha.max_position());
  return static_cast<int>(k);
}

int WeightSpec::degree() const
{
  if (const auto* m = std::get_if<ModulusPower>(&data_))
    return static_cast<int>(std::ceil(m->p / 2.0)) * axis_degree(m->h);
  int d = 0;
  for (const auto& [alpha, c] : std::get<FourierTable>(data_).coefficients)
    for (const auto& [pos, e] : alpha.entries())
      d = std::max(d, std::abs(e));
  return d;
}

WeightSpec WeightSpec::scaled(double lambda) const
{
  if (!(lambda > 0.0))
    throw DomainError("weight scale must be positive");
  if (const auto* m = std::get_if<ModulusPower>(&data_))
    return WeightSpec(ModulusPower{std::pow(lambda, 1.0 / m->p) * m->h, m->p});
  FourierTable t = std::get<FourierTable>(data_);
  for (auto& [alpha, c] : t.coefficients)
    c *= lambda;
  return WeightSpec(std::move(t));
}

Eigen::ArrayXd WeightSpec::values(const QuadratureGrid& g) const
{
  g.node_count();
  if (vars() > g.vars())
    throw DomainError("weight uses more variables than the grid provides");
  if (const auto* m = std::get_if<ModulusPower>(&data_)) {
    const Eigen::ArrayXcd h = detail::synthesize(detail::to_laurent(m->h, g.vars()), g.nodes_per_axis());
    const double p = m->p;
    return h.abs().unaryExpr([p](double x) { return p == 2.0 ? x * x : std::pow(x, p); });
  }
  const auto laurent = detail::to_laurent(table_entries(std::get<FourierTable>(data_)), g.vars());
  return detail::synthesize(laurent, g.nodes_per_axis()).real();
}

namespace {

/// K^(gamma) for every gamma in the box; lookups by exponent vector.
class CoefficientBox {
public:
  CoefficientBox(const WeightSpec& k, const QuadratureGrid& g, detail::ExponentBox box)
      : box_(std::move(box)),
        data_(detail::analyze(k.values(g).cast<Complex>(), g.vars(), g.nodes_per_axis(), box_))
  {
  }

  Complex operator()(const std::vector<int>& e) const { return data_[static_cast<Eigen::Index>(box_.offset(e))]; }

private:
  detail::ExponentBox box_;
  Eigen::ArrayXcd data_;
};

std::vector<int> dense(const MultiIndex& alpha, int vars)
{
  std::vector<int> e(vars, 0);
  for (const auto& [p, x] : alpha.entries())
    e[p - 1] = static_cast<int>(x);
  return e;
}

std::vector<int> index_set_axis_degrees(const std::vector<MultiIndex>& a, int vars)
{
  std::vector<int> deg(vars, 0);
  for (const auto& alpha : a)
    for (const auto& [p, x] : alpha.entries())
      deg[p - 1] = std::max(deg[p - 1], static_cast<int>(x));
  return deg;
}

void check_vars(const WeightSpec& k, const std::vector<MultiIndex>& a, const QuadratureGrid& g)
{
  if (k.vars() > g.vars())
    throw DomainError("weight uses more variables than the grid provides");
  for (const auto& alpha : a)
    if (static_cast<int>(alpha.max_position()) > g.vars())
      throw DomainError("index set uses more variables than the grid provides");
}

struct GramSystem {
  Eigen::MatrixXcd gram;
  Eigen::VectorXcd rhs;
  double mean = 0.0;
};

GramSystem gram_system(const WeightSpec& k, const std::vector<MultiIndex>& a, const QuadratureGrid& g)
{
  check_vars(k, a, g);
  const int vars = g.vars();
  const auto deg = index_set_axis_degrees(a, vars);
  detail::ExponentBox box;
  for (int j = 0; j < vars; ++j) {
    box.lo.push_back(-deg[j]);
    box.hi.push_back(deg[j]);
  }
  const CoefficientBox khat(k, g, box);

  const auto m = static_cast<Eigen::Index>(a.size());
  std::vector<std::vector<int>> e(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    e[i] = dense(a[i], vars);

  GramSystem s;
  s.gram.resize(m, m);
  s.rhs.resize(m);
  std::vector<int> diff(vars);
  for (Eigen::Index r = 0; r < m; ++r) {
    s.rhs[r] = khat(e[r]);
    for (Eigen::Index c = 0; c < m; ++c) {
      for (int j = 0; j < vars; ++j)
        diff[j] = e[r][j] - e[c][j];
      s.gram(r, c) = khat(diff);
    }
  }
  // Symmetrize the rounding so the factorization sees an exactly Hermitian matrix.
  s.gram = (0.5 * (s.gram + s.gram.adjoint())).eval();
  s.mean = khat(std::vector<int>(vars, 0)).real();
  return s;
}

int log_nodes(int vars, const QuadratureGrid& g)
{
  if (vars <= 1)
    return 1;
  return std::max(g.nodes_per_axis(), default_grid(vars - 1, 0).nodes_per_axis());
}

} // namespace

Complex fourier_coeff(const WeightSpec& k, const SignedMultiIndex& alpha, const QuadratureGrid& g)
{
  if (static_cast<int>(alpha.max_position()) > g.vars())
    throw DomainError("multi-index uses more variables than the grid provides");
  detail::ExponentBox box;
  for (int j = 1; j <= g.vars(); ++j) {
    box.lo.push_back(alpha[static_cast<std::uint32_t>(j)]);
    box.hi.push_back(alpha[static_cast<std::uint32_t>(j)]);
  }
  return detail::analyze(k.values(g).cast<Complex>(), g.vars(), g.nodes_per_axis(), box)[0];
}

LowerBoundReport lower_bound(const WeightSpec& k, const QuadratureGrid& g)
{
  LowerBoundReport r;
  const Eigen::ArrayXd v = k.values(g);
  const double peak = v.maxCoeff();
  r.min_on_grid = v.minCoeff();
  const auto zeros = (v <= detail::kLogClamp * std::max(peak, 1.0)).count();
  r.unreliable = 2 * zeros > v.size();

  const int vars = k.vars();
  const int nodes = log_nodes(vars, g);
  const int half = std::max(1, nodes / 2);
  double fine = 0.0, coarse = 0.0;
  if (const auto* m = std::get_if<ModulusPower>(&k.data())) {
    const auto laurent = detail::to_laurent(m->h, vars);
    fine = m->p * detail::poisson_log_modulus(laurent, {}, nodes);
    coarse = vars <= 1 ? fine : m->p * detail::poisson_log_modulus(laurent, {}, half);
  } else {
    const auto laurent = detail::to_laurent(table_entries(std::get<FourierTable>(k.data())), vars);
    fine = detail::poisson_log_modulus(laurent, {}, nodes);
    coarse = vars <= 1 ? fine : detail::poisson_log_modulus(laurent, {}, half);
  }
  r.value = std::exp(fine);
  r.error = std::abs(r.value - std::exp(coarse));
  return r;
}

LowerBoundReport lower_bound(const WeightSpec& k) { return lower_bound(k, szego_grid(k, k.vars(), 1)); }

std::vector<MultiIndex> build_index_set(int k, int d)
{
  if (k < 1 || d < 1)
    throw DomainError("index set needs k >= 1 and d >= 1");
  std::vector<MultiIndex> out;
  std::vector<std::uint32_t> e(static_cast<std::size_t>(k), 0);
  std::function<void(int, int)> fill = [&](int axis, int left) {
    if (axis == k - 1) {
      e[axis] = static_cast<std::uint32_t>(left);
      std::vector<MultiIndex::Entry> entries;
      for (int j = 0; j < k; ++j)
        if (e[j] != 0)
          entries.emplace_back(static_cast<std::uint32_t>(j + 1), e[j]);
      out.emplace_back(std::move(entries));
      return;
    }
    for (int x = left; x >= 0; --x) {
      e[axis] = static_cast<std::uint32_t>(x);
      fill(axis + 1, left - x);
    }
  };
  for (int degree = 1; degree <= d; ++degree)
    fill(0, degree);
  return out;
}

QuadratureGrid szego_grid(const WeightSpec& k, int vars, int d)
{
  return QuadratureGrid(std::max(vars, k.vars()), 2 * d + k.degree() + 1);
}

SzegoResult szego_p2(const WeightSpec& k, const std::vector<MultiIndex>& index_set, const QuadratureGrid& g)
{
  const GramSystem s = gram_system(k, index_set, g);
  const Eigen::LLT<Eigen::MatrixXcd> llt(s.gram);
  if (llt.info() != Eigen::Success)
    throw DegenerateWeightError("Gram matrix of the weight is not positive definite");

  SzegoResult r;
  r.index_set = index_set;
  r.coeffs = llt.solve(s.rhs);
  r.upper = s.mean;
  r.value = s.mean - s.rhs.dot(r.coeffs).real();
  r.residual = (s.gram * r.coeffs - s.rhs).norm();
  const LowerBoundReport lb = lower_bound(k, g);
  r.lower = lb.value;
  r.lower_unreliable = lb.unreliable;
  r.min_weight = lb.min_on_grid;
  return r;
}

SzegoResult szego_p2(const WeightSpec& k, int vars, int d)
{
  return szego_p2(k, build_index_set(vars, d), szego_grid(k, vars, d));
}

SzegoObjective::SzegoObjective(const WeightSpec& k, std::vector<MultiIndex> index_set, const QuadratureGrid& g,
                               double p)
    : index_set_(std::move(index_set)), grid_(g), p_(p), weights_(k.values(g))
{
  check_vars(k, index_set_, g);
  for (const auto& alpha : index_set_)
    for (const auto& [pos, e] : alpha.entries())
      axis_degree_ = std::max(axis_degree_, static_cast<int>(e));
}

Eigen::ArrayXcd SzegoObjective::one_minus_q(const Eigen::VectorXcd& c) const
{
  detail::LaurentPolynomial q;
  q.vars = grid_.vars();
  q.terms.push_back({std::vector<int>(grid_.vars(), 0), 1.0});
  for (std::size_t i = 0; i < index_set_.size(); ++i)
    q.terms.push_back({dense(index_set_[i], grid_.vars()), -c[static_cast<Eigen::Index>(i)]});
  return detail::synthesize(q, grid_.nodes_per_axis());
}

double SzegoObjective::value(const Eigen::VectorXcd& c, double eps) const
{
  const Eigen::ArrayXcd u = one_minus_q(c);
  const double e2 = eps * eps;
  const double half_p = p_ / 2.0;
  Eigen::ArrayXd v(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double s = std::norm(u[i]) + e2;
    v[i] = weights_[i] * (p_ == 2.0 ? s : std::pow(s, half_p));
  }
  return haar_mean(v);
}

Eigen::VectorXcd SzegoObjective::gradient(const Eigen::VectorXcd& c, double eps) const
{
  const Eigen::ArrayXcd u = one_minus_q(c);
  const double e2 = eps * eps;
  const double half_p = p_ / 2.0;
  Eigen::ArrayXcd v(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    const double s = std::norm(u[i]) + e2;
    v[i] = weights_[i] * (p_ == 2.0 ? 1.0 : std::pow(s, half_p - 1.0)) * u[i];
  }
  const int vars = grid_.vars();
  const auto deg = index_set_axis_degrees(index_set_, vars);
  detail::ExponentBox box;
  box.lo.assign(vars, 0);
  box.hi = deg;
  const Eigen::ArrayXcd coef = detail::analyze(v, vars, grid_.nodes_per_axis(), box);
  Eigen::VectorXcd g(static_cast<Eigen::Index>(index_set_.size()));
  for (std::size_t i = 0; i < index_set_.size(); ++i)
    g[static_cast<Eigen::Index>(i)] = -p_ * coef[static_cast<Eigen::Index>(box.offset(dense(index_set_[i], vars)))];
  return g;
}

SzegoResult szego_general(const WeightSpec& k, const SzegoConfig& cfg)
{
  if (!(cfg.p > 1.0))
    throw DomainError("the Szego problem needs p > 1");
  if (cfg.vars < 1 || cfg.degree < 1)
    throw DomainError("the Szego problem needs k >= 1 and d >= 1");
  const auto index_set = build_index_set(cfg.vars, cfg.degree);
  const int vars = std::max(cfg.vars, k.vars());
  const QuadratureGrid g = cfg.grid ? *cfg.grid
                           : cfg.p == 2.0
                               ? szego_grid(k, vars, cfg.degree)
                               : QuadratureGrid(vars, 2 * (2 * cfg.degree + k.degree()) + 1);

  const GramSystem s = gram_system(k, index_set, g);
  const Eigen::LLT<Eigen::MatrixXcd> llt(s.gram);
  if (llt.info() != Eigen::Success)
    throw DegenerateWeightError("Gram matrix of the weight is not positive definite");

  const SzegoObjective phi(k, index_set, g, cfg.p);
  Eigen::VectorXcd c = llt.solve(s.rhs);

  SzegoResult r;
  r.index_set = index_set;
  r.upper = s.mean;
  for (double eps = cfg.eps_start; eps >= cfg.eps_end * (1.0 - 1e-12); eps *= cfg.eps_factor) {
    double f0 = phi.value(c, eps);
    bool stage_done = false;
    for (int it = 0; it < cfg.max_iterations; ++it) {
      ++r.iterations;
      const Eigen::VectorXcd grad = phi.gradient(c, eps);
      Eigen::VectorXcd dir = -llt.solve(grad) / cfg.p;
      double slope = grad.dot(dir).real();
      if (!(slope < 0.0)) {
        dir = -grad;
        slope = -grad.squaredNorm();
      }
      if (slope == 0.0 || std::abs(slope) <= 1e-15 * std::abs(f0)) {
        stage_done = true;
        break;
      }
      double t = 1.0;
      bool accepted = false;
      double f1 = f0;
      for (int bt = 0; bt < 60; ++bt) {
        f1 = phi.value(c + t * dir, eps);
        if (f1 <= f0 + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) {
        // No decrease representable at this precision: the stage is at its floor
        // unless the step is still macroscopic.
        stage_done = t * dir.cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, c.cwiseAbs().maxCoeff());
        if (!stage_done)
          r.converged = false;
        break;
      }
      c += t * dir;
      const double step = t * dir.cwiseAbs().maxCoeff();
      f0 = f1;
      if (step <= cfg.step_tol * std::max(1.0, c.cwiseAbs().maxCoeff())) {
        stage_done = true;
        break;
      }
    }
    if (!stage_done)
      r.converged = false;
    if (!r.converged)
      break;
    if (cfg.p == 2.0)
      break;
  }
  r.coeffs = c;
  r.value = phi.value(c, 0.0);
  const LowerBoundReport lb = lower_bound(k, g);
  r.lower = lb.value;
  r.lower_unreliable = lb.unreliable;
  r.min_weight = lb.min_on_grid;
  return r;
}

AttainmentReport certify_lower_attainment(const LiftedPolynomial& h, double p, const std::vector<int>& degrees,
                                          double target, const SzegoConfig& cfg)
{
  AttainmentReport rep;
  rep.target = target;
  const OuterReport outer = outer_gap(h);
  rep.gamma = outer.gamma;
  if (!outer.outer) {
    rep.refused = true;
    rep.monotone = false;
    rep.below_target = false;
    return rep;
  }
  const WeightSpec k = WeightSpec::modulus_power(h, p);
  rep.lower = lower_bound(k).value;
  const int vars = std::max({cfg.vars, k.vars(), 1});
  const double slack = p == 2.0 ? 1e-10 : 1e-6;
  for (const int d : degrees) {
    SzegoResult s;
    if (p == 2.0) {
      s = szego_p2(k, vars, d);
    } else {
      SzegoConfig c = cfg;
      c.p = p;
      c.vars = vars;
      c.degree = d;
      c.grid.reset();
      s = szego_general(k, c);
    }
    const LadderStep step{d, s.value, s.value - rep.lower};
    if (!rep.ladder.empty() && step.gap > rep.ladder.back().gap + slack)
      rep.monotone = false;
    rep.ladder.push_back(step);
  }
  rep.below_target = !rep.ladder.empty() && rep.ladder.back().gap <= target;
  return rep;
}

UpperReport certify_upper(const WeightSpec& k, int vars, int d, const QuadratureGrid& g)
{
  const auto index_set = build_index_set(vars, d);
  check_vars(k, index_set, g);
  const auto deg = index_set_axis_degrees(index_set, g.vars());
  detail::ExponentBox box;
  box.lo.assign(g.vars(), 0);
  box.hi = deg;
  const CoefficientBox khat(k, g, box);

  UpperReport rep;
  for (const auto& alpha : index_set) {
    const double a = std::abs(khat(dense(alpha, g.vars())));
    if (a > rep.max_coeff) {
      rep.max_coeff = a;
      rep.witness = alpha;
    }
  }
  rep.vanishing = rep.max_coeff < 1e-10;
  const SzegoResult s = szego_p2(k, index_set, g);
  rep.value = s.value;
  rep.upper = s.upper;
  rep.lower = s.lower;
  rep.max_solver_coeff = s.coeffs.size() == 0 ? 0.0 : s.coeffs.cwiseAbs().maxCoeff();
  if (rep.vanishing)
    rep.passed = std::abs(s.value - s.upper) <= 1e-12 * s.upper && rep.max_solver_coeff <= 1e-12;
  else
    rep.passed = s.value <= s.upper - rep.max_coeff * rep.max_coeff / s.upper + 1e-12 * s.upper;
  return rep;
}

UpperReport certify_upper(const WeightSpec& k, int vars, int d)
{
  return certify_upper(k, vars, d, szego_grid(k, vars, d));
}

} // namespace bohr
