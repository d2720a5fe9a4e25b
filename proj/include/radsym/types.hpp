#pragma once

// Scalar types shared by every module: exact integers and rationals (GMP),
// the error types thrown across the library, and a few small helpers.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace radsym {

using Int = mpz_class;
using Rat = mpq_class;

/// Input outside the mathematical domain of an operation (bad matrix,
/// non-member element, unsupported group pair, malformed text).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Requested precision cannot be met, or a rational value could not be
/// recovered from its floating-point approximation.
class PrecisionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline int sign(const Int& x) { return sgn(x); }
inline int sign(const Rat& x) { return sgn(x); }
inline int sign(long x) { return (x > 0) - (x < 0); }

inline Rat make_rat(const Int& num, const Int& den) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

/// Floor division for GMP integers (rounds toward -infinity).
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

/// Non-negative residue of a modulo m (m > 0).
inline Int mod_pos(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline long mod_long(const Int& a, long m) {
    return static_cast<long>(mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m)));
}

inline std::string to_string(const Rat& r) { return r.get_str(); }
inline std::string to_string(const Int& z) { return z.get_str(); }

/// Parses "p/q" or "p" into a normalized rational.
Rat parse_rat(const std::string& text);

}  // namespace radsym
