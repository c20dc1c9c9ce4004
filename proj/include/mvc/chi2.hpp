#pragma once

namespace mvc {

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double lower_regularized_gamma(double a, double x);

// CDF of the chi-square distribution with df degrees of freedom.
double chi2_cdf(double x, int df);

// Quantile of level q in (0,1), solved by bracketed bisection on the CDF to
// an absolute tolerance of 1e-10.
double chi2_quantile(double q, int df);

}  // namespace mvc
