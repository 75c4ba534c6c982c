#pragma once

#include <gmpxx.h>
#include <string>

namespace eqh {

using Int = mpz_class;
using Rat = mpq_class;

// mpq_class(n, d) does not reduce; every Rat in the engine is canonical.
inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integral(const Rat& r) { return r.get_den() == 1; }

inline Int int_pow(const Int& base, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
    return out;
}

inline Rat rat_pow(const Rat& base, unsigned long e) {
    Rat out = 1;
    for (unsigned long i = 0; i < e; ++i) out *= base;
    return out;
}

inline Int factorial(unsigned long n) {
    Int out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

} // namespace eqh
