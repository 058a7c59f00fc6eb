#pragma once

namespace amos {

/// Standard normal CDF via the complementary error function,
/// absolute accuracy better than 1e-12.
double normal_cdf(double z);

/// Lower regularized incomplete gamma P(a, x).
double regularized_gamma_p(double a, double x);

/// Upper alpha quantile of the central chi-square distribution with dof
/// degrees of freedom: the value xi with P(X >= xi) = upper_alpha.
/// Solved by bisection on the regularized incomplete gamma to 1e-12
/// relative width.
double chi_square_quantile(int dof, double upper_alpha);

} // namespace amos
