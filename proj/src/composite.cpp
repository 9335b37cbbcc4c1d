#include "cresolv/composite.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cresolv {

ResolventProblem::ResolventProblem(LinearMap C_, MonotoneOpPtr M_, double lambda_,
                                   Vector y_)
    : C(std::move(C_)), M(std::move(M_)), lambda(lambda_), y(std::move(y_)) {
  if (!M) throw std::invalid_argument("ResolventProblem: null operator");
  if (M->dim() != C.rows()) {
    throw std::invalid_argument("ResolventProblem: operator dim must equal rows of C");
  }
  if (y.size() != C.cols()) {
    throw std::invalid_argument("ResolventProblem: y must have length cols of C");
  }
  if (!(lambda > 0)) throw std::invalid_argument("ResolventProblem: lambda must be positive");
}

SumResolventProblem::SumResolventProblem(LinearMap C_, MonotoneOpPtr M1_,
                                         MonotoneOpPtr M2_, double lambda_, Vector y_)
    : C(std::move(C_)),
      M1(std::move(M1_)),
      M2(std::move(M2_)),
      lambda(lambda_),
      y(std::move(y_)) {
  if (!M1 || !M2) throw std::invalid_argument("SumResolventProblem: null operator");
  if (M1->dim() != C.cols() || M2->dim() != C.rows()) {
    throw std::invalid_argument("SumResolventProblem: operator dims inconsistent with C");
  }
  if (y.size() != C.cols()) {
    throw std::invalid_argument("SumResolventProblem: y must have length cols of C");
  }
  if (!(lambda > 0)) throw std::invalid_argument("SumResolventProblem: lambda must be positive");
}

KMSchedule KMSchedule::constant(double alpha) {
  return sequence({alpha});
}

KMSchedule KMSchedule::sequence(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("KMSchedule: empty sequence");
  for (double a : values) {
    if (!(a > 0.0 && a < 1.0)) {
      throw std::invalid_argument("KMSchedule: every alpha must lie in (0,1)");
    }
  }
  return KMSchedule(std::move(values));
}

double KMSchedule::alpha(int k) const {
  if (k < 0) throw std::invalid_argument("KMSchedule: negative index");
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(k), values_.size() - 1);
  return values_[i];
}

double KMSchedule::min_alpha() const {
  return *std::min_element(values_.begin(), values_.end());
}

Vector map_N(const ResolventProblem& p, double mu, const Vector& v) {
  if (!(mu > 0)) throw std::invalid_argument("map_N: mu must be positive");
  if (v.size() != p.C.rows()) throw std::invalid_argument("map_N: dimension mismatch");
  Vector arg = p.C.apply(p.y) + v / mu - p.lambda * p.C.gram_apply(v);
  return yosida(*p.M, 1.0 / mu, arg);
}

Vector map_Q(const ResolventProblem& p, double mu, const Vector& u) {
  if (!(mu > 0)) throw std::invalid_argument("map_Q: mu must be positive");
  if (u.size() != p.C.rows()) throw std::invalid_argument("map_Q: dimension mismatch");
  Vector w = p.C.apply(p.y) + u - (p.lambda * mu) * p.C.gram_apply(u);
  return w - p.M->resolvent(1.0 / mu, w);
}

Vector map_P(const SumResolventProblem& p, double kappa, const Vector& u) {
  if (!(kappa > 0)) throw std::invalid_argument("map_P: kappa must be positive");
  if (u.size() != p.C.rows()) throw std::invalid_argument("map_P: dimension mismatch");
  Vector inner = p.M1->resolvent(p.lambda, p.y - p.lambda * p.C.adjoint_apply(u));
  return yosida(*p.M2, kappa, p.C.apply(inner) + kappa * u);
}

namespace {

double median_step_ratio(const std::vector<double>& steps) {
  // robust rate diagnostic over the last 20 step ratios
  constexpr int kWindow = 20;
  if (static_cast<int>(steps.size()) < kWindow + 1) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  std::vector<double> ratios;
  ratios.reserve(kWindow);
  for (std::size_t j = steps.size() - kWindow; j < steps.size(); ++j) {
    if (steps[j - 1] <= 0.0) return std::numeric_limits<double>::quiet_NaN();
    ratios.push_back(steps[j] / steps[j - 1]);
  }
  std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
  double hi = ratios[ratios.size() / 2];
  if (ratios.size() % 2 == 0) {
    double lo = *std::max_element(ratios.begin(), ratios.begin() + ratios.size() / 2);
    return 0.5 * (lo + hi);
  }
  return hi;
}

template <typename Map>
SolveReport km_iterate(int dim, const Map& T, const SolveOptions& opts) {
  SolveReport r;
  Vector u = opts.warm_start ? *opts.warm_start : Vector::Zero(dim);
  if (u.size() != dim) throw std::invalid_argument("warm_start: dimension mismatch");
  for (int k = 0; k < opts.max_iter; ++k) {
    const double a = opts.schedule.alpha(k);
    Vector next = (1.0 - a) * u + a * T(u);
    const double step = (next - u).norm();
    if (opts.record_history) r.step_history.push_back(step);
    u = std::move(next);
    r.iterations = k + 1;
    if (step <= opts.tol) {
      r.converged = true;
      break;
    }
  }
  r.fixed_point = std::move(u);
  r.contraction_estimate = median_step_ratio(r.step_history);
  return r;
}

struct ParamChoice {
  double gamma;  // lambda*mu (or lambda/kappa)
  double value;  // mu (or kappa)
};

ParamChoice choose_mu(const ResolventProblem& p, const SolveOptions& opts,
                      const GramSpectrum& s) {
  if (opts.mu) {
    if (!(*opts.mu > 0)) throw std::invalid_argument("SolveOptions: mu must be positive");
    return {p.lambda * *opts.mu, *opts.mu};
  }
  AutoParams a = auto_parameters(p.C, p.lambda, s);
  return {p.lambda * a.mu, a.mu};
}

}  // namespace

SolveReport solve_algorithm1(const ResolventProblem& p, const SolveOptions& opts) {
  if (p.C.is_zero()) {
    // C^T v vanishes identically, so the inclusion forces x = y
    SolveReport r;
    r.x = p.y;
    r.fixed_point = Vector::Zero(p.C.rows());
    r.converged = true;
    return r;
  }
  GramSpectrum s = estimate_spectrum(p.C);
  ParamChoice mu = choose_mu(p, opts, s);
  auto check = nonexpansive_bound_holds(p.C, mu.gamma, s);
  SolveReport r = km_iterate(p.C.rows(),
                             [&](const Vector& v) { return map_N(p, mu.value, v); }, opts);
  r.x = p.y - p.lambda * p.C.adjoint_apply(r.fixed_point);
  r.condition_certificate = check.certificate;
  r.condition_holds = check.holds;
  r.mu_used = mu.value;
  return r;
}

SolveReport solve_algorithm2(const ResolventProblem& p, const SolveOptions& opts) {
  if (p.C.is_zero()) {
    SolveReport r;
    r.x = p.y;
    r.fixed_point = Vector::Zero(p.C.rows());
    r.converged = true;
    return r;
  }
  GramSpectrum s = estimate_spectrum(p.C);
  ParamChoice mu = choose_mu(p, opts, s);
  auto check = nonexpansive_bound_holds(p.C, mu.gamma, s);
  SolveReport r = km_iterate(p.C.rows(),
                             [&](const Vector& u) { return map_Q(p, mu.value, u); }, opts);
  r.x = p.y - (p.lambda * mu.value) * p.C.adjoint_apply(r.fixed_point);
  r.condition_certificate = check.certificate;
  r.condition_holds = check.holds;
  r.mu_used = mu.value;
  return r;
}

SolveReport mcx_resolvent(const LinearMap& C, const MonotoneOpPtr& M, double mu,
                          const Vector& y, const SolveOptions& opts) {
  SolveOptions o = opts;
  o.mu = mu;
  return solve_algorithm2(ResolventProblem(C, M, 1.0, y), o);
}

SolveReport solve_algorithm3(const SumResolventProblem& p, const SolveOptions& opts) {
  if (p.C.is_zero()) {
    // the coupling term vanishes; only M1 remains
    SolveReport r;
    r.x = p.M1->resolvent(p.lambda, p.y);
    r.fixed_point = Vector::Zero(p.C.rows());
    r.converged = true;
    return r;
  }
  GramSpectrum s = estimate_spectrum(p.C);
  double kappa;
  if (opts.kappa) {
    if (!(*opts.kappa > 0)) throw std::invalid_argument("SolveOptions: kappa must be positive");
    kappa = *opts.kappa;
  } else if (s.min_eigen > 1e-10) {
    // lambda/kappa = c/||E||^2, mirroring the contraction choice for N
    kappa = p.lambda * s.op_norm * s.op_norm / s.min_eigen;
  } else {
    kappa = p.lambda * s.op_norm;  // centers lambda/kappa in (0, 2/||C||^2)
  }
  auto check = nonexpansive_bound_holds(p.C, p.lambda / kappa, s);
  SolveReport r = km_iterate(p.C.rows(),
                             [&](const Vector& u) { return map_P(p, kappa, u); }, opts);
  r.x = p.M1->resolvent(p.lambda, p.y - p.lambda * p.C.adjoint_apply(r.fixed_point));
  r.condition_certificate = check.certificate;
  r.condition_holds = check.holds;
  r.kappa_used = kappa;
  return r;
}

AutoParams auto_parameters(const LinearMap& C, double lambda,
                           const GramSpectrum& spectrum) {
  if (C.is_zero() || spectrum.op_norm <= 0) {
    throw std::invalid_argument("auto_parameters: degenerate (zero) operator");
  }
  if (!(lambda > 0)) throw std::invalid_argument("auto_parameters: lambda must be positive");
  AutoParams a;
  if (spectrum.min_eigen > 1e-10) {
    const double ratio = spectrum.min_eigen / spectrum.op_norm;
    a.mu = spectrum.min_eigen / (lambda * spectrum.op_norm * spectrum.op_norm);
    a.predicted_q = std::sqrt(std::max(0.0, 1.0 - ratio * ratio));
  } else {
    a.mu = 1.0 / (lambda * spectrum.op_norm);
  }
  return a;
}

}  // namespace cresolv
