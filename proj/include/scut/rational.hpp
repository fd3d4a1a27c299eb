#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <string>

namespace scut {

// Exact rational scalar used across the solver. gmpxx keeps values canonical
// as long as they are built through make_rat or arithmetic on canonical values.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// "p/q" (or "p" when q == 1), the form used in reports and test expectations.
inline std::string rat_str(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rat rat_from_str(const std::string& s) {
    Rat q(s);
    q.canonicalize();
    return q;
}

inline double rat_double(const Rat& q) { return q.get_d(); }

// Uniform rational in [0,1) with 64 bits of resolution, for exact CDF sampling.
inline Rat rat_unit_from_u64(uint64_t r) {
    Rat q(mpz_class(r), mpz_class(1) << 64);
    q.canonicalize();
    return q;
}

} // namespace scut
