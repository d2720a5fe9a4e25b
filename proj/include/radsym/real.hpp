#pragma once

// Extended-precision reals (MPFR through Boost.Multiprecision). Every value
// is created with an explicit precision; the library never touches the
// process-wide default precision, so concurrent callers cannot interfere.

#include "radsym/types.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace radsym {

using Real = boost::multiprecision::mpfr_float;

Real real(long v, unsigned digits);
Real real(const Int& v, unsigned digits);
Real real(const Rat& v, unsigned digits);
Real real_pi(unsigned digits);
/// cos(2 pi x) and sin(2 pi x) for rational x.
Real cos_2pi(const Rat& x, unsigned digits);
Real sin_2pi(const Rat& x, unsigned digits);

/// Exact rational value of a (finite) binary floating-point number.
Rat exact_rational(const Real& x);
/// 10^(-k) as a double, saturating at the smallest positive normal value.
double pow10_neg(double k);
/// Scientific notation with the requested number of significant digits.
std::string format_real(const Real& x, unsigned digits);

}  // namespace radsym
