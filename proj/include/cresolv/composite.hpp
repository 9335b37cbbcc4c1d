#pragma once

#include <optional>
#include <vector>

#include "cresolv/linop.hpp"
#include "cresolv/monotone.hpp"

namespace cresolv {

/// Inputs of the composite resolvent inclusion y in x + lambda*C^T M(Cx).
struct ResolventProblem {
  LinearMap C;
  MonotoneOpPtr M;  // acts on the range of C
  double lambda = 1.0;
  Vector y;

  ResolventProblem(LinearMap C_, MonotoneOpPtr M_, double lambda_, Vector y_);
};

/// Inputs of y in x + lambda*M1(x) + lambda*C^T M2(Cx).
struct SumResolventProblem {
  LinearMap C;
  MonotoneOpPtr M1;  // acts on the domain of C
  MonotoneOpPtr M2;  // acts on the range of C
  double lambda = 1.0;
  Vector y;

  SumResolventProblem(LinearMap C_, MonotoneOpPtr M1_, MonotoneOpPtr M2_,
                      double lambda_, Vector y_);
};

/// Relaxation sequence (alpha_k) in (0,1) for the averaged iteration.
/// Either a constant or a user sequence whose last value repeats.
class KMSchedule {
 public:
  static KMSchedule constant(double alpha);
  static KMSchedule sequence(std::vector<double> values);

  double alpha(int k) const;
  double min_alpha() const;

 private:
  explicit KMSchedule(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

struct SolveOptions {
  std::optional<double> mu;     // fixed-point scaling; auto-selected if unset
  std::optional<double> kappa;  // Yosida index for the sum solver; auto if unset
  KMSchedule schedule = KMSchedule::constant(0.5);
  double tol = 1e-8;            // threshold on the KM step norm
  int max_iter = 100000;
  bool record_history = true;
  std::optional<Vector> warm_start;  // initial fixed-point iterate; zero if unset
};

struct SolveReport {
  Vector x;            // the resolvent value
  Vector fixed_point;  // final internal iterate (v or u)
  int iterations = 0;
  bool converged = false;
  double condition_certificate =
      std::numeric_limits<double>::quiet_NaN();  // ||I - gamma*CC^T||
  bool condition_holds = false;
  double mu_used = std::numeric_limits<double>::quiet_NaN();
  double kappa_used = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> step_history;  // ||iterate_{k+1} - iterate_k||
  double inclusion_residual = std::numeric_limits<double>::quiet_NaN();
  double contraction_estimate = std::numeric_limits<double>::quiet_NaN();
};

/// N(v) = M_{1/mu}( Cy + ((1/mu)I - lambda*CC^T) v ); nonexpansive when
/// lambda*mu <= 2/||C||^2.
Vector map_N(const ResolventProblem& p, double mu, const Vector& v);

/// Q(u) = (I - J_{(1/mu)M})( Cy + (I - lambda*mu*CC^T) u ); satisfies
/// map_N(p, mu, mu*u) = mu * map_Q(p, mu, u).
Vector map_Q(const ResolventProblem& p, double mu, const Vector& u);

/// P(u) = (M2)_kappa( C J_{lambda M1}(y - lambda*C^T u) + kappa*u );
/// nonexpansive when lambda/kappa <= 2/||C||^2.
Vector map_P(const SumResolventProblem& p, double kappa, const Vector& u);

/// Averaged iteration v_{k+1} = (1-a_k) v_k + a_k N(v_k) from v_0 = 0;
/// x = y - lambda*C^T v.
SolveReport solve_algorithm1(const ResolventProblem& p, const SolveOptions& opts);

/// Averaged iteration on Q from u_0 = 0; x = y - lambda*mu*C^T u.
SolveReport solve_algorithm2(const ResolventProblem& p, const SolveOptions& opts);

/// Single-parameter scheme: solve_algorithm2 with lambda = 1.
SolveReport mcx_resolvent(const LinearMap& C, const MonotoneOpPtr& M, double mu,
                          const Vector& y, const SolveOptions& opts);

/// Averaged iteration on P from u_0 = 0;
/// x = J_{lambda M1}(y - lambda*C^T u).
SolveReport solve_algorithm3(const SumResolventProblem& p, const SolveOptions& opts);

struct AutoParams {
  double mu = 0.0;
  double predicted_q = std::numeric_limits<double>::quiet_NaN();
};

/// When E = CC^T is positive definite, picks mu = c/(lambda*||E||^2)
/// which makes the iteration map a contraction with factor at most
/// sqrt(1 - (c/||E||)^2). Otherwise centers lambda*mu in the admissible
/// interval with no rate prediction.
AutoParams auto_parameters(const LinearMap& C, double lambda,
                           const GramSpectrum& spectrum);

}  // namespace cresolv
