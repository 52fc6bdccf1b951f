#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace pcw {

// Exact arbitrary-precision integer / rational. Collection can inflate
// exponents well past any fixed width, so all exponent arithmetic runs on
// these. gmpxx supplies abs/sgn/gcd/cmp on both types.
using Int = mpz_class;
using Rat = mpq_class;

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& v) { return v.get_str(); }

// Floored division: q = floor(a/b), r = a - q*b; for b > 0, 0 <= r < b.
inline void floor_divmod(const Int& a, const Int& b, Int& q, Int& r) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

inline Int pow_ui(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// True if v fits a signed long; guards budget arithmetic before get_si().
inline bool fits_long(const Int& v) { return v.fits_slong_p(); }

inline std::string join_exps(const std::vector<Int>& exps, char sep = ',') {
    std::string out;
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (i) out.push_back(sep);
        out += exps[i].get_str();
    }
    return out;
}

}  // namespace pcw
