#pragma once

#include "rational.hpp"
#include "unipoly.hpp"

namespace aee {

// Probabilists' Hermite polynomial He_m, exact coefficients.
UniPoly<Rational> hermite(int m);

// Three-term recurrence evaluation, no table.
double hermite_eval(int m, double x);

}  // namespace aee
