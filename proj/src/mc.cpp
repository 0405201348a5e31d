#include "mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <thread>

#include "cumulant_recursion.hpp"
#include "rng.hpp"

namespace aee {

namespace {

constexpr int kMaxRetries = 64;
constexpr std::uint64_t kRetryBase = 0x8000000000000000ull;

struct DiscreteTable {
  std::vector<double> support;
  std::vector<double> cum;  // cumulative probabilities, last entry 1
};

double draw(const GammaGen& g, Rng& rng) {
  double v = rng.gamma(g.shape) * g.scale;
  return g.centered ? v - g.shape * g.scale : v;
}

double draw(const NormalGen& g, Rng& rng) { return g.mean + g.sd * rng.normal(); }

double draw(const DiscreteTable& t, Rng& rng) {
  double u = rng.uniform();
  for (std::size_t i = 0; i + 1 < t.cum.size(); ++i) {
    if (u < t.cum[i]) return t.support[i];
  }
  return t.support.back();
}

struct SampleStats {
  double mean = 0.0;
  double ss = 0.0;  // sum of squared deviations
};

template <class Gen>
SampleStats draw_sample(const Gen& g, Rng& rng, int n, std::vector<double>& buf) {
  buf.clear();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = draw(g, rng);
    buf.push_back(v);
    sum += v;
  }
  SampleStats st;
  st.mean = sum / n;
  for (double v : buf) st.ss += (v - st.mean) * (v - st.mean);
  return st;
}

struct StatisticLaw {
  StatisticKind kind;
  int nx = 0;
  int ny = 0;
  double d0 = 0.0;
  double s02 = 0.0;

  // Returns NaN on a degenerate variance.
  template <class Gen>
  double replicate(const Gen& g, Rng& rng, std::vector<double>& buf) const {
    SampleStats x = draw_sample(g, rng, nx, buf);
    double s2 = 0.0;
    double num = 0.0;
    double n = 0.0;
    if (kind.arity == Arity::OneSample) {
      n = nx;
      num = x.mean;
      switch (kind.estimator) {
        case Estimator::Biased:
          s2 = x.ss / nx;
          break;
        case Estimator::Unbiased:
          s2 = x.ss / (nx - 1);
          break;
        case Estimator::Moderated:
          s2 = (d0 * s02 + x.ss) / (d0 + nx - 1);
          break;
        default:
          break;
      }
    } else {
      SampleStats y = draw_sample(g, rng, ny, buf);
      n = 0.5 * (nx + ny);
      num = x.mean - y.mean;
      double bx = n / nx;
      double by = n / ny;
      switch (kind.estimator) {
        case Estimator::WelchBiased:
          s2 = bx * x.ss / nx + by * y.ss / ny;
          break;
        case Estimator::WelchUnbiased:
          s2 = bx * x.ss / (nx - 1) + by * y.ss / (ny - 1);
          break;
        case Estimator::Pooled:
          s2 = (bx + by) * (x.ss + y.ss) / (nx + ny - 2);
          break;
        case Estimator::Moderated:
          s2 = (bx + by) * (d0 * s02 + x.ss + y.ss) / (d0 + nx + ny - 2);
          break;
        default:
          break;
      }
    }
    if (!(s2 > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::sqrt(n) * num / std::sqrt(s2);
  }
};

template <class Gen>
void run_replicates(const Gen& g, const StatisticLaw& law, long reps, std::uint64_t seed,
                    int threads, std::vector<double>& values, std::atomic<long>& resampled) {
  auto worker = [&](long lo, long hi) {
    std::vector<double> buf;
    long local_resampled = 0;
    for (long i = lo; i < hi; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(i));
      double v = law.replicate(g, rng, buf);
      for (int a = 0; std::isnan(v); ++a) {
        if (a == kMaxRetries) throw std::runtime_error("simulate: replicate stuck degenerate");
        if (a == 0) ++local_resampled;
        Rng retry(seed, kRetryBase ^ (static_cast<std::uint64_t>(i) * kMaxRetries +
                                      static_cast<std::uint64_t>(a)));
        v = law.replicate(g, retry, buf);
      }
      values[i] = v;
    }
    resampled += local_resampled;
  };

  if (threads <= 1 || reps < 2 * threads) {
    worker(0, reps);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  long chunk = (reps + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    long lo = t * chunk;
    long hi = std::min(reps, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, t, lo, hi] {
      try {
        worker(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

void validate_generator(const GeneratorSpec& gen) {
  if (const auto* g = std::get_if<GammaGen>(&gen)) {
    if (!(g->shape > 0.0) || !(g->scale > 0.0))
      throw std::invalid_argument("generator: gamma needs positive shape and scale");
  } else if (const auto* n = std::get_if<NormalGen>(&gen)) {
    if (!(n->sd > 0.0)) throw std::invalid_argument("generator: normal needs positive sd");
    if (!std::isfinite(n->mean)) throw std::invalid_argument("generator: non-finite mean");
  } else {
    const auto& d = std::get<DiscreteGen>(gen);
    if (d.support.size() < 2) throw std::invalid_argument("generator: need two atoms at least");
    if (d.support.size() != d.probs.size())
      throw std::invalid_argument("generator: support/probability length mismatch");
    Rational total(0);
    for (const Rational& p : d.probs) {
      if (p < Rational(0)) throw std::invalid_argument("generator: negative probability");
      total = total + p;
    }
    if (!(total == Rational(1)))
      throw std::invalid_argument("generator: probabilities must sum to one exactly");
  }
}

std::vector<double> generator_moments(const GeneratorSpec& gen, int M) {
  validate_generator(gen);
  if (M < 2) throw std::invalid_argument("generator: moment order must be at least 2");
  if (const auto* g = std::get_if<GammaGen>(&gen)) {
    // kappa_j = shape * scale^j * (j-1)!; centering does not change these.
    std::vector<double> kappa{0.0};
    double fact = 1.0;
    for (int j = 2; j <= M; ++j) {
      fact *= (j - 1);
      kappa.push_back(g->shape * std::pow(g->scale, j) * fact);
    }
    std::vector<double> mu = cumulants_to_raw(kappa);
    return std::vector<double>(mu.begin() + 1, mu.end());
  }
  if (const auto* n = std::get_if<NormalGen>(&gen)) {
    std::vector<double> kappa(M, 0.0);
    kappa[1] = n->sd * n->sd;
    std::vector<double> mu = cumulants_to_raw(kappa);
    return std::vector<double>(mu.begin() + 1, mu.end());
  }
  const auto& d = std::get<DiscreteGen>(gen);
  double mean = 0.0;
  for (std::size_t i = 0; i < d.support.size(); ++i)
    mean += d.probs[i].to_double() * d.support[i];
  std::vector<double> mu(M - 1, 0.0);
  for (std::size_t i = 0; i < d.support.size(); ++i) {
    double p = d.probs[i].to_double();
    double dev = d.support[i] - mean;
    double pw = dev;
    for (int j = 2; j <= M; ++j) {
      pw *= dev;
      mu[j - 2] += p * pw;
    }
  }
  return mu;
}

EmpiricalCdf sample_statistic(const GeneratorSpec& gen, const StatisticKind& kind,
                              SimSizes sizes, long reps, std::uint64_t seed,
                              const std::optional<ModeratedPrior>& prior, int threads) {
  validate_generator(gen);
  require_valid(kind);
  if (reps < 1) throw std::invalid_argument("simulate: need reps >= 1");
  StatisticLaw law;
  law.kind = kind;
  law.nx = sizes.nx;
  law.ny = kind.arity == Arity::TwoSample ? sizes.ny : 0;
  if (law.nx < 2 || (kind.arity == Arity::TwoSample && law.ny < 2))
    throw std::invalid_argument("simulate: sample sizes must be at least 2");
  if (kind.estimator == Estimator::Moderated) {
    const ModeratedPrior& p = detail::checked_prior(prior);
    law.d0 = p.d0;
    law.s02 = p.s02;
  }
  if (threads <= 0) {
    threads = static_cast<int>(std::min(8u, std::max(1u, std::thread::hardware_concurrency())));
  }

  EmpiricalCdf out;
  out.reps = reps;
  out.seed = seed;
  out.values.resize(reps);
  std::atomic<long> resampled{0};
  std::visit(
      [&](const auto& g) {
        if constexpr (std::is_same_v<std::decay_t<decltype(g)>, DiscreteGen>) {
          DiscreteTable t;
          t.support = g.support;
          double acc = 0.0;
          for (const Rational& p : g.probs) {
            acc += p.to_double();
            t.cum.push_back(acc);
          }
          t.cum.back() = 1.0;
          run_replicates(t, law, reps, seed, threads, out.values, resampled);
        } else {
          run_replicates(g, law, reps, seed, threads, out.values, resampled);
        }
      },
      gen);
  out.resampled = resampled.load();
  if (out.resampled > reps / 10000) {
    throw std::runtime_error("simulate: degenerate replicate rate above 1e-4");
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

double empirical_cdf_at(const EmpiricalCdf& e, double x) {
  if (e.values.empty()) return 0.0;
  auto it = std::upper_bound(e.values.begin(), e.values.end(), x);
  return static_cast<double>(it - e.values.begin()) / static_cast<double>(e.reps);
}

}  // namespace aee
