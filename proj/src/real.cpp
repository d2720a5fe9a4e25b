#include "radsym/real.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace radsym {

Real real(long v, unsigned digits) { return Real(v, digits); }

Real real(const Int& v, unsigned digits) {
    Real r(0, digits);
    mpfr_set_z(r.backend().data(), v.get_mpz_t(), MPFR_RNDN);
    return r;
}

Real real(const Rat& v, unsigned digits) {
    Real r(0, digits);
    mpfr_set_q(r.backend().data(), v.get_mpq_t(), MPFR_RNDN);
    return r;
}

Real real_pi(unsigned digits) {
    Real r(0, digits);
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

namespace {

Rat reduce_unit(const Rat& x) {
    Rat f = x - Rat(floor_div(x.get_num(), x.get_den()));
    f.canonicalize();
    return f;
}

}  // namespace

Real cos_2pi(const Rat& x, unsigned digits) {
    const Rat f = reduce_unit(x);
    if (f == 0) return real(1, digits);
    if (f == Rat(1, 2)) return real(-1, digits);
    if (f == Rat(1, 4) || f == Rat(3, 4)) return real(0, digits);
    Real t = real_pi(digits + 5) * 2 * real(f, digits + 5);
    Real c = cos(t);
    return Real(c, digits);
}

Real sin_2pi(const Rat& x, unsigned digits) {
    const Rat f = reduce_unit(x);
    if (f == 0 || f == Rat(1, 2)) return real(0, digits);
    if (f == Rat(1, 4)) return real(1, digits);
    if (f == Rat(3, 4)) return real(-1, digits);
    Real t = real_pi(digits + 5) * 2 * real(f, digits + 5);
    Real c = sin(t);
    return Real(c, digits);
}

Rat exact_rational(const Real& x) {
    if (!mpfr_number_p(x.backend().data())) throw PrecisionError("non-finite value");
    if (mpfr_zero_p(x.backend().data())) return 0;
    Int m;
    const mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), x.backend().data());
    Rat r(m);
    if (e >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
    }
    r.canonicalize();
    return r;
}

double pow10_neg(double k) {
    return std::max(std::pow(10.0, -k), std::numeric_limits<double>::min());
}

std::string format_real(const Real& x, unsigned digits) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(static_cast<int>(digits)) << x;
    return os.str();
}

}  // namespace radsym
