#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "sparse_poly.hpp"
#include "statistic_kind.hpp"

namespace aee {

template <class T>
struct BasicModeratedPrior {
  T d0;   // prior degrees of freedom, nonnegative
  T s02;  // prior variance, positive
};

// Constants of the variance law s^2 = A + Bx (Xbar_s - Xbar^2) [+ By (Ybar_s
// - Ybar^2)] together with the adjustment r^2 and the size factors. For
// one-sample statistics By is 0 and bx = by = 1. n is (nx + ny)/2 for
// two-sample statistics and may be a half-integer.
template <class T>
struct BasicEstimatorSpec {
  StatisticKind kind;
  T n;
  T A;
  T Bx;
  T By;
  T bx;
  T by;
  T r2;
};

using ModeratedPrior = BasicModeratedPrior<double>;
using EstimatorSpec = BasicEstimatorSpec<double>;

namespace detail {
template <class T>
const BasicModeratedPrior<T>& checked_prior(const std::optional<BasicModeratedPrior<T>>& prior) {
  if (!prior) throw std::invalid_argument("estimator: moderated statistic needs a prior");
  if (prior->d0 < T(0)) throw std::invalid_argument("estimator: prior d0 must be nonnegative");
  if (!(prior->s02 > T(0))) throw std::invalid_argument("estimator: prior s02 must be positive");
  return *prior;
}
}  // namespace detail

template <class T>
BasicEstimatorSpec<T> one_sample_spec(
    Estimator est, const T& n, const T& sigma2,
    const std::optional<BasicModeratedPrior<T>>& prior = std::nullopt) {
  StatisticKind kind{Arity::OneSample, est};
  require_valid(kind);
  if (n < T(2)) throw std::invalid_argument("estimator: need n >= 2");
  if (!(sigma2 > T(0))) throw std::invalid_argument("estimator: sigma^2 must be positive");

  BasicEstimatorSpec<T> s{kind, n, T(0), T(0), T(0), T(1), T(1), T(0)};
  switch (est) {
    case Estimator::Biased:
      s.A = sigma2;
      s.Bx = T(1);
      s.r2 = T(1);
      break;
    case Estimator::Unbiased: {
      T c = n / (n - T(1));
      s.A = c * sigma2;
      s.Bx = c;
      s.r2 = T(1) / c;
      break;
    }
    case Estimator::Moderated: {
      const auto& p = detail::checked_prior(prior);
      T den = p.d0 + n - T(1);
      s.A = (p.d0 * p.s02 + n * sigma2) / den;
      s.Bx = n / den;
      s.r2 = den / (p.d0 * p.s02 / sigma2 + n);
      break;
    }
    default:
      break;  // unreachable: require_valid rejects two-sample estimators
  }
  return s;
}

template <class T>
BasicEstimatorSpec<T> two_sample_spec(
    Estimator est, int nx, int ny, const T& sigma2x, const T& sigma2y,
    const std::optional<BasicModeratedPrior<T>>& prior = std::nullopt) {
  StatisticKind kind{Arity::TwoSample, est};
  require_valid(kind);
  if (nx < 2 || ny < 2) throw std::invalid_argument("estimator: need nx, ny >= 2");
  if (!(sigma2x > T(0)) || !(sigma2y > T(0)))
    throw std::invalid_argument("estimator: variances must be positive");
  const bool one_variance = est == Estimator::Pooled || est == Estimator::Moderated;
  if (one_variance && !(sigma2x == sigma2y))
    throw std::invalid_argument(
        "estimator: pooled and moderated statistics assume one declared variance");

  BasicEstimatorSpec<T> s;
  s.kind = kind;
  s.n = (T(nx) + T(ny)) / T(2);
  s.bx = s.n / T(nx);
  s.by = s.n / T(ny);
  T cx = T(nx) / T(nx - 1);
  T cy = T(ny) / T(ny - 1);
  T cxy = (T(nx) + T(ny)) / (T(nx) + T(ny) - T(2));
  switch (est) {
    case Estimator::WelchBiased:
      s.A = s.bx * sigma2x + s.by * sigma2y;
      s.Bx = s.bx;
      s.By = s.by;
      s.r2 = T(1);
      break;
    case Estimator::WelchUnbiased:
      s.A = cx * s.bx * sigma2x + cy * s.by * sigma2y;
      s.Bx = cx * s.bx;
      s.By = cy * s.by;
      s.r2 = (s.bx * sigma2x + s.by * sigma2y) / s.A;
      break;
    case Estimator::Pooled:
      s.A = cxy * (s.bx + s.by) * sigma2x;
      s.Bx = cxy * s.by;
      s.By = cxy * s.bx;
      s.r2 = T(1) / cxy;
      break;
    case Estimator::Moderated: {
      const auto& p = detail::checked_prior(prior);
      T dg = T(nx + ny - 2);
      T den = p.d0 + dg;
      s.A = (s.bx + s.by) * (p.d0 * p.s02 + cxy * dg * sigma2x) / den;
      s.Bx = cxy * dg * s.by / den;
      s.By = cxy * dg * s.bx / den;
      s.r2 = den / (p.d0 * p.s02 / sigma2x + cxy * dg);
      break;
    }
    default:
      break;  // unreachable
  }
  return s;
}

// Central moments and standardized cumulants of one population. mu[j-2]
// holds mu_j for j = 2..M; lambda[j-3] holds lambda_j for j = 3..M (empty
// when sigma^2 = 0 or M < 3). n_obs is 0 for declared moment sets.
struct MomentSet {
  double sigma2 = 0.0;
  std::vector<double> mu;
  std::vector<double> lambda;
  long n_obs = 0;
};

// Plug-in estimates: mean-centered power sums divided by the sample size.
MomentSet central_moments_from_data(const std::vector<double>& data, int M);

// Moment set from declared central moments mu = {mu_2, ..., mu_M}.
MomentSet declared_moment_set(const std::vector<double>& mu, long n_obs = 0);

// lambda_3..lambda_M; requires sigma^2 > 0 and M >= 3.
std::vector<double> standardized_cumulants(const MomentSet& ms);

// Numeric bindings for the symbols appearing in derived expansions: the
// variance-law constants from the spec plus the population moments. Two-sample
// specs need both moment sets.
NumericBindings estimator_bindings(const EstimatorSpec& spec, const MomentSet& x,
                                   const MomentSet* y = nullptr);

}  // namespace aee
