#pragma once

namespace aee {

// Standard normal density and distribution function.
double norm_pdf(double x);
double norm_cdf(double x);

// Inverse of norm_cdf; p must lie in (0, 1).
double norm_quantile(double p);

// Regularized incomplete beta I_x(a, b); a, b > 0, x in [0, 1].
double reg_inc_beta(double a, double b, double x);

// Student t distribution function with nu > 0 degrees of freedom.
double student_t_cdf(double x, double nu);

}  // namespace aee
