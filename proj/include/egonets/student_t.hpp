#pragma once
// Student-t distribution via the regularized incomplete beta function,
// evaluated with a Lentz continued fraction. Self-contained so p-values do
// not depend on any platform statistics stack.

namespace egonets {

// Regularized incomplete beta I_x(a, b), a,b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// P(T <= x) for T ~ Student-t with nu > 0 degrees of freedom.
double student_t_cdf(double x, double nu);

// P(T >= x); computed as cdf(-x) so cdf + sf == 1 exactly.
double student_t_sf(double x, double nu);

// Inverse CDF by bisection, |result| accurate to ~1e-12 relative.
double student_t_quantile(double p, double nu);

}  // namespace egonets
