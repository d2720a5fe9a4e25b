#include "radsym/symbols.hpp"

#include <cmath>

namespace radsym {

void PrecisionCtx::validate() const {
    if (digits < 30) throw DomainError("precision must be at least 30 digits, got " + std::to_string(digits));
    if (denom_bound < 0) throw DomainError("denominator bound must be non-negative");
    if (direct_limit < 1) throw DomainError("direct summation limit must be positive");
}

double PrecisionCtx::tolerance() const { return pow10_neg(digits / 2.0); }

Int PrecisionCtx::bound_for(long level) const {
    if (denom_bound > 0) return denom_bound;
    const Rat mu = level <= 1 ? Rat(1) : projective_index(GroupId::gamma(level));
    return Int(12 * std::max(level, 1L)) * mu.get_num() * 1024;
}

// ---------------------------------------------------------------- SymbolValue

SymbolValue SymbolValue::exact(Rat v) {
    SymbolValue s;
    v.canonicalize();
    s.rat_ = std::move(v);
    return s;
}

SymbolValue SymbolValue::approx(Real v, double error) {
    SymbolValue s;
    s.kind_ = Kind::Approx;
    s.real_ = std::move(v);
    s.err_ = error;
    return s;
}

SymbolValue SymbolValue::reconstructed(Rat v, double residual) {
    SymbolValue s = exact(std::move(v));
    s.kind_ = Kind::Reconstructed;
    s.err_ = residual;
    return s;
}

const Rat& SymbolValue::rational() const {
    if (kind_ == Kind::Approx) throw PrecisionError("value " + to_string() + " was not recognized as a rational");
    return rat_;
}

Real SymbolValue::to_real(unsigned digits) const {
    if (kind_ == Kind::Approx) return Real(real_, digits);
    return real(rat_, digits);
}

std::string SymbolValue::kind_name() const {
    switch (kind_) {
        case Kind::Exact: return "exact";
        case Kind::Approx: return "approx";
        case Kind::Reconstructed: return "reconstructed";
    }
    return "?";
}

std::string SymbolValue::to_string(unsigned digits) const {
    if (kind_ == Kind::Approx) return format_real(real_, digits);
    return rat_.get_str();
}

SymbolValue SymbolValue::operator-() const {
    SymbolValue s = *this;
    s.rat_ = -rat_;
    if (kind_ == Kind::Approx) s.real_ = -real_;
    return s;
}

SymbolValue operator+(const SymbolValue& x, const SymbolValue& y) {
    using K = SymbolValue::Kind;
    if (x.kind_ == K::Approx || y.kind_ == K::Approx) {
        const unsigned d = x.kind_ == K::Approx ? x.real_.precision() : y.real_.precision();
        Real v = x.to_real(d) + y.to_real(d);
        return SymbolValue::approx(std::move(v), x.err_ + y.err_);
    }
    Rat v = x.rat_ + y.rat_;
    if (x.kind_ == K::Exact && y.kind_ == K::Exact) return SymbolValue::exact(std::move(v));
    return SymbolValue::reconstructed(std::move(v), x.err_ + y.err_);
}

SymbolValue operator-(const SymbolValue& x, const SymbolValue& y) { return x + (-y); }

SymbolValue operator*(const Rat& s, const SymbolValue& x) {
    SymbolValue r = x;
    const double scale = std::fabs(s.get_d());
    r.err_ = x.err_ * scale;
    if (x.kind_ == SymbolValue::Kind::Approx) {
        Real v = x.real_ * real(s, x.real_.precision());
        r.real_ = std::move(v);
    } else {
        r.rat_ = s * x.rat_;
        r.rat_.canonicalize();
    }
    return r;
}

// ---------------------------------------------------------------- reconstruction

std::optional<Reconstruction> reconstruct_rational(const Real& x, const Int& bound, double tol) {
    const Rat target = exact_rational(x);
    Rat r = target;
    Int p2 = 0, q2 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 10000; ++iter) {
        const Int a = floor_div(r.get_num(), r.get_den());
        const Int p = a * p1 + p2, q = a * q1 + q2;
        if (q > bound) break;
        const Rat cand = make_rat(p, q);
        const double residual = std::fabs(Rat(target - cand).get_d());
        if (residual < tol) return Reconstruction{cand, residual};
        const Rat frac = r - a;
        if (frac == 0) break;
        r = 1 / frac;
        r.canonicalize();
        p2 = p1;
        q2 = q1;
        p1 = p;
        q1 = q;
    }
    return std::nullopt;
}

}  // namespace radsym
