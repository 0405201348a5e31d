#include "estimators.hpp"

#include <cmath>

#include "cumulant_recursion.hpp"

namespace aee {

MomentSet central_moments_from_data(const std::vector<double>& data, int M) {
  if (data.size() < 2) throw std::invalid_argument("moments: need at least two observations");
  if (M < 2 || M > 8) throw std::invalid_argument("moments: order must lie in [2, 8]");
  for (double v : data) {
    if (!std::isfinite(v)) throw std::invalid_argument("moments: non-finite observation");
  }
  const double n = static_cast<double>(data.size());
  double mean = 0.0;
  for (double v : data) mean += v;
  mean /= n;

  MomentSet ms;
  ms.n_obs = static_cast<long>(data.size());
  ms.mu.assign(M - 1, 0.0);
  for (double v : data) {
    double d = v - mean;
    double p = d;
    for (int j = 2; j <= M; ++j) {
      p *= d;
      ms.mu[j - 2] += p;
    }
  }
  for (double& m : ms.mu) m /= n;
  ms.sigma2 = ms.mu[0];
  if (ms.sigma2 > 0.0 && M >= 3) ms.lambda = standardized_cumulants(ms.mu);
  return ms;
}

MomentSet declared_moment_set(const std::vector<double>& mu, long n_obs) {
  if (mu.size() < 1) throw std::invalid_argument("moments: need mu_2 at least");
  for (double v : mu) {
    if (!std::isfinite(v)) throw std::invalid_argument("moments: non-finite moment");
  }
  MomentSet ms;
  ms.mu = mu;
  ms.sigma2 = mu[0];
  ms.n_obs = n_obs;
  if (ms.sigma2 > 0.0 && mu.size() >= 2) ms.lambda = standardized_cumulants(ms.mu);
  return ms;
}

std::vector<double> standardized_cumulants(const MomentSet& ms) {
  if (!(ms.sigma2 > 0.0)) throw std::domain_error("moments: sigma^2 must be positive");
  if (ms.mu.size() < 2) throw std::invalid_argument("moments: need mu_2..mu_3 at least");
  return standardized_cumulants(ms.mu);
}

NumericBindings estimator_bindings(const EstimatorSpec& spec, const MomentSet& x,
                                   const MomentSet* y) {
  NumericBindings b;
  b[sym_A()] = spec.A;
  b[sym_B(Sample::X)] = spec.Bx;
  for (std::size_t i = 0; i < x.mu.size(); ++i) {
    b[sym_mu(Sample::X, static_cast<int>(i) + 2)] = x.mu[i];
  }
  if (spec.kind.arity == Arity::TwoSample) {
    if (y == nullptr) throw std::invalid_argument("bindings: two-sample spec needs both moment sets");
    b[sym_B(Sample::Y)] = spec.By;
    b[sym_b(Sample::X)] = spec.bx;
    b[sym_b(Sample::Y)] = spec.by;
    for (std::size_t i = 0; i < y->mu.size(); ++i) {
      b[sym_mu(Sample::Y, static_cast<int>(i) + 2)] = y->mu[i];
    }
  }
  return b;
}

}  // namespace aee
