#pragma once

#include <optional>
#include <string>
#include <vector>

#include "diagnostics.hpp"
#include "estimators.hpp"
#include "expansion.hpp"
#include "mc.hpp"
#include "statistic_kind.hpp"

namespace aee {

// Statistic tokens, bijective with the supported table rows:
// one-biased, one-unbiased, one-moderated, two-pooled, welch-biased,
// welch-unbiased, two-moderated.
StatisticKind parse_kind_token(const std::string& token);
std::string kind_token(const StatisticKind& kind);

// Generator tokens: "gamma:shape:scale[:centered]", "normal:mean:sd",
// "discrete:x1:p1:x2:p2[...]" with exact rational atom probabilities.
GeneratorSpec parse_generator_token(const std::string& token);
std::string generator_token(const GeneratorSpec& gen);

// One sample's slice of a moment-spec document:
// {"n": int, "sigma2": real, "mu": [mu_2, ...], "source": "data"|"declared"}.
struct SampleSpec {
  MomentSet ms;
  long n = 0;
  std::string source;
};

// Whole document; the two-sample variant nests one SampleSpec under "x" and
// one under "y".
struct MomentSpecDoc {
  Arity arity = Arity::OneSample;
  SampleSpec x;
  SampleSpec y;
};

MomentSpecDoc parse_moment_spec(const std::string& json_text);
std::string moment_spec_json(const MomentSpecDoc& doc);
SampleSpec sample_spec_from_data(const std::vector<double>& data, int M);

// Prior JSON: {"d0": real, "s02": real}.
ModeratedPrior parse_prior_json(const std::string& json_text);
std::string prior_json(const ModeratedPrior& prior);

// Table-row constants from a parsed document, then every engine symbol bound.
struct BoundExpansion {
  StatisticKind kind;
  int K = 0;
  double n = 0.0;
  NumericExpansion ne;
};
BoundExpansion bind_moment_spec(const StatisticKind& kind, int K, const MomentSpecDoc& doc,
                                const std::optional<ModeratedPrior>& prior);

// One factored lambda-form block: scale * lam * (x-polynomial with integer
// coefficients), e.g. (1/6) * l3 * (2*x^2 + 1). The Gaussian block has a
// constant lam.
struct LambdaBlock {
  Monomial lam;
  Rational scale;
  std::vector<std::pair<int, Rational>> poly;  // (degree, coefficient), descending
};
std::vector<LambdaBlock> lambda_blocks(const UniPoly<SparsePoly>& q);
std::string lambda_blocks_text(const std::vector<LambdaBlock>& blocks);

// Symbolic expansion rendering; format "json" or "text". lambda_form is the
// ordinary one-sample special case and rejects every other kind.
std::string render_expansion(const StatisticKind& kind, int K, bool lambda_form,
                             bool with_k_table, const std::string& format);

std::string tail_report_json(const TailReport& rep);

}  // namespace aee
