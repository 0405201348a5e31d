#include "cumulant_recursion.hpp"

#include <stdexcept>

namespace aee {

std::vector<double> standardized_cumulants(const std::vector<double>& central) {
  if (central.size() < 2) throw std::invalid_argument("cumulants: need mu_2..mu_4 at least");
  // Central moments are raw moments of the centered variable.
  std::vector<double> raw;
  raw.reserve(central.size() + 1);
  raw.push_back(0.0);
  raw.insert(raw.end(), central.begin(), central.end());
  std::vector<double> kappa = raw_to_cumulants(raw);
  const double sigma = std::sqrt(central[0]);
  std::vector<double> lambda;
  lambda.reserve(kappa.size() - 2);
  for (std::size_t j = 3; j <= kappa.size(); ++j)
    lambda.push_back(kappa[j - 1] / std::pow(sigma, static_cast<double>(j)));
  return lambda;
}

}  // namespace aee
