#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "estimators.hpp"
#include "rational.hpp"
#include "statistic_kind.hpp"

namespace aee {

struct GammaGen {
  double shape;
  double scale;
  bool centered;  // subtract shape * scale
};

struct NormalGen {
  double mean;
  double sd;
};

// Atom probabilities are rationals so "sums to one" is an exact statement.
struct DiscreteGen {
  std::vector<double> support;
  std::vector<Rational> probs;
};

using GeneratorSpec = std::variant<GammaGen, NormalGen, DiscreteGen>;

void validate_generator(const GeneratorSpec& gen);

// Population central moments mu_2..mu_M.
std::vector<double> generator_moments(const GeneratorSpec& gen, int M);

// Sorted replicate values of the statistic; evaluation at x is rank / reps.
struct EmpiricalCdf {
  std::vector<double> values;
  long reps = 0;
  std::uint64_t seed = 0;
  long resampled = 0;  // degenerate replicates that were redrawn
};

struct SimSizes {
  int nx = 0;
  int ny = 0;  // 0 selects the one-sample statistic
};

// reps independent draws of the statistic, both samples drawn from gen.
// Replicate i consumes its own counter-based stream, so results are
// bit-identical for any thread count. A replicate with a degenerate variance
// is redrawn from a dedicated retry stream; the run fails if more than
// 1e-4 * reps replicates needed that.
EmpiricalCdf sample_statistic(const GeneratorSpec& gen, const StatisticKind& kind,
                              SimSizes sizes, long reps, std::uint64_t seed,
                              const std::optional<ModeratedPrior>& prior = std::nullopt,
                              int threads = 0);

// Proportion of replicate values <= x.
double empirical_cdf_at(const EmpiricalCdf& e, double x);

}  // namespace aee
