#pragma once

#include <gmpxx.h>

#include <string>

namespace svi {

// Exact rational scalar. mpq_class keeps values in lowest terms with a
// positive denominator, which is exactly the canonical form we rely on.
using Rational = mpq_class;
using Integer = mpz_class;

inline std::string ratStr(const Rational& r) { return r.get_str(); }

inline Rational ratPow(const Rational& base, unsigned e) {
    if (e == 0) return Rational(1);
    Integer num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
    mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
    Rational out(num, den);
    out.canonicalize();
    return out;
}

inline int ratSign(const Rational& r) { return sgn(r); }

} // namespace svi
