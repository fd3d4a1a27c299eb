#include "scut/selector.hpp"

#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace scut {

namespace {

constexpr mpfr_prec_t kPrec = 192;

// f(alpha) = alpha * 2^alpha - x, monotone increasing for alpha > 0
void eval_f(mpfr_t out, const mpfr_t alpha, const mpfr_t x, mpfr_t scratch) {
    mpfr_exp2(scratch, alpha, MPFR_RNDN);
    mpfr_mul(out, scratch, alpha, MPFR_RNDN);
    mpfr_sub(out, out, x, MPFR_RNDN);
}

} // namespace

AlphaSolution solve_alpha(double x) {
    if (!(x >= 4)) throw std::invalid_argument("solve_alpha needs x >= 4");

    for (int k = 1; k <= 60; ++k) {
        if (std::ldexp(static_cast<double>(k), k) == x)
            return {x, static_cast<double>(k), 0.0};
    }

    mpfr_t mx, lo, hi, mid, f, scratch;
    mpfr_inits2(kPrec, mx, lo, hi, mid, f, scratch, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_d(mx, x, MPFR_RNDN);

    // bracket [0.27 log2 x, log2 x]
    mpfr_log2(hi, mx, MPFR_RNDN);
    mpfr_mul_d(lo, hi, 0.27, MPFR_RNDN);

    for (int it = 0; it < 220; ++it) {
        mpfr_add(mid, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        eval_f(f, mid, mx, scratch);
        if (mpfr_sgn(f) > 0)
            mpfr_set(hi, mid, MPFR_RNDN);
        else
            mpfr_set(lo, mid, MPFR_RNDN);
    }
    mpfr_add(mid, lo, hi, MPFR_RNDN);
    mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
    eval_f(f, mid, mx, scratch);
    mpfr_abs(f, f, MPFR_RNDN);

    AlphaSolution sol;
    sol.x = x;
    sol.alpha_star = mpfr_get_d(mid, MPFR_RNDN);
    sol.residual = mpfr_get_d(f, MPFR_RNDN);
    mpfr_clears(mx, lo, hi, mid, f, scratch, static_cast<mpfr_ptr>(nullptr));
    return sol;
}

int choose_ell(int n) {
    if (n < 16) throw std::invalid_argument("choose_ell needs n >= 16");
    AlphaSolution sol = solve_alpha(std::log2(static_cast<double>(n)));
    int ell = static_cast<int>(std::ceil(sol.alpha_star - 1e-9));
    return ell < 2 ? 2 : ell;
}

} // namespace scut
