#pragma once

#include <stdexcept>
#include <string>

namespace aee {

enum class Arity { OneSample, TwoSample };

enum class Estimator { Biased, Unbiased, Pooled, WelchBiased, WelchUnbiased, Moderated };

struct StatisticKind {
  Arity arity;
  Estimator estimator;

  bool operator==(const StatisticKind&) const = default;
};

// pooled / welch-* are two-sample constructs; plain biased/unbiased are
// one-sample; moderated exists for both arities.
inline bool kind_valid(const StatisticKind& k) {
  switch (k.estimator) {
    case Estimator::Biased:
    case Estimator::Unbiased:
      return k.arity == Arity::OneSample;
    case Estimator::Pooled:
    case Estimator::WelchBiased:
    case Estimator::WelchUnbiased:
      return k.arity == Arity::TwoSample;
    case Estimator::Moderated:
      return true;
  }
  return false;
}

inline void require_valid(const StatisticKind& k) {
  if (!kind_valid(k)) throw std::invalid_argument("statistic: estimator not valid for arity");
}

inline std::string arity_name(Arity a) {
  return a == Arity::OneSample ? "one-sample" : "two-sample";
}

inline std::string estimator_name(Estimator e) {
  switch (e) {
    case Estimator::Biased: return "biased";
    case Estimator::Unbiased: return "unbiased";
    case Estimator::Pooled: return "pooled";
    case Estimator::WelchBiased: return "welch-biased";
    case Estimator::WelchUnbiased: return "welch-unbiased";
    case Estimator::Moderated: return "moderated";
  }
  return "?";
}

inline Estimator parse_estimator(const std::string& s) {
  if (s == "biased") return Estimator::Biased;
  if (s == "unbiased") return Estimator::Unbiased;
  if (s == "pooled") return Estimator::Pooled;
  if (s == "welch-biased") return Estimator::WelchBiased;
  if (s == "welch-unbiased") return Estimator::WelchUnbiased;
  if (s == "moderated") return Estimator::Moderated;
  throw std::invalid_argument("statistic: unknown estimator \"" + s + "\"");
}

}  // namespace aee
