#pragma once

namespace scut {

// Root of alpha * 2^alpha = x. The residual is evaluated at 192-bit precision
// before alpha is rounded to double, so it certifies the internal root, not
// the double approximation.
struct AlphaSolution {
    double x = 0;
    double alpha_star = 0;
    double residual = 0;
};

// Requires x >= 4. Exact integer roots (x = k * 2^k) are returned with
// residual 0.
AlphaSolution solve_alpha(double x);

// Grouping parameter for an n-node instance: max(2, ceil(alpha*)) at
// x = log2(n). Requires n >= 16.
int choose_ell(int n);

} // namespace scut
