#include "radsym/dedekind.hpp"
#include "radsym/symbols.hpp"

#include <cmath>

namespace radsym {

namespace {

Int to_int(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
    Int hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0UL));
    Int r = (hi << 64) + lo;
    return neg ? Int(-r) : r;
}

}  // namespace

TakadaEvaluator::TakadaEvaluator(long N, const PrecisionCtx& ctx)
    : n_(N), ctx_(ctx), space_(GroupId::gamma(N)) {
    ctx_.validate();
    if (N < 2) throw DomainError("Takada's formula needs N >= 2");
    lambda0_ = pi_over_volume(GroupId::gamma(N));
    lambda_ = N * lambda0_;
    lambda_.canonicalize();
    bound_ = ctx_.bound_for(N);
    c_ = takada_constants(N, ctx_);
}

SymbolValue TakadaEvaluator::finish(const Real& value, double error) const {
    if (auto rec = reconstruct_rational(value, bound_, ctx_.tolerance()))
        return SymbolValue::reconstructed(rec->value, rec->residual);
    return SymbolValue::approx(Real(value, ctx_.digits), error);
}

SymbolValue TakadaEvaluator::phi_direct(const GroupElement& g) const {
    if (!member(g, GroupId::gamma(n_))) throw DomainError(g.to_string() + " is not in Gamma(" + std::to_string(n_) + ")");
    if (g.c() == 0) return SymbolValue::exact(make_rat(g.b(), g.d()));
    const Int abs_c = abs(g.c());
    if (!abs_c.fits_slong_p() || abs_c > Int(1000000000) / n_)
        throw DomainError("entries too large for the direct Takada sum");
    const long c = abs_c.get_si();
    const long a = mod_long(g.a(), c);
    const long top = c * n_;
    // 2|c| * sum_{j = r (N)} j ((aj/|c|)) accumulated per residue r
    std::vector<__int128> w(n_, 0);
    long rj = 0;
    for (long j = 1; j < top; ++j) {
        rj += a;
        if (rj >= c) rj -= c;
        if (rj != 0) w[j % n_] += static_cast<__int128>(j) * (2 * rj - c);
    }
    const int sc = sign(g.c());
    const Rat head = make_rat(g.trace(), g.c());
    const Rat scale = make_rat(Int(4) * lambda0_.get_num() * sc, lambda0_.get_den() * abs_c * 2 * abs_c);
    if (exact_constants()) {
        Int s = 0;
        for (long r = 0; r < n_; ++r) s += (r % 2 == 0 ? 1 : -1) * to_int(w[r]);
        return SymbolValue::exact(head - scale * Rat(s));
    }
    const unsigned wd = ctx_.working_digits() + 10;
    Real s(0, wd);
    double mass = 0;
    for (long r = 0; r < n_; ++r) {
        s += c_[r].value * real(to_int(w[r]), wd);
        mass += std::fabs(static_cast<double>(w[r])) * c_[r].error;
    }
    Real v = real(head, wd) - real(scale, wd) * s;
    return finish(v, mass * std::fabs(scale.get_d()));
}

SymbolValue TakadaEvaluator::piece(std::size_t coset, char kind, long r, const GroupElement& x) const {
    const auto key = std::make_tuple(coset, kind, r);
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = pieces_.find(key);
        if (it != pieces_.end()) return it->second;
    }
    SymbolValue v = phi_direct(x);
    std::lock_guard<std::mutex> lock(mutex_);
    return pieces_.emplace(key, std::move(v)).first->second;
}

SymbolValue TakadaEvaluator::phi_cocycle(const GroupElement& g) const {
    if (!member(g, GroupId::gamma(n_))) throw DomainError(g.to_string() + " is not in Gamma(" + std::to_string(n_) + ")");
    // g is a product of pieces rep_i x rep_j^-1 in Gamma(N); Phi_T is assembled
    // with Phi(PX) = Phi(P) + Phi(X) - lambda sign(c_P c_X c_PX).
    GroupElement P;
    SymbolValue val;
    std::size_t i = 0;
    auto step = [&](const GroupElement& X, const SymbolValue& phi_x) {
        GroupElement next = P * X;
        const int s = sign(P.c()) * sign(X.c()) * sign(next.c());
        val += phi_x;
        if (s != 0) val = val - SymbolValue::exact(lambda_ * s);
        P = std::move(next);
    };
    for (const auto& syl : word_decompose(g).syllables) {
        if (syl.letter == 'S') {
            for (long k = mod_long(syl.exponent, 4); k > 0; --k) {
                const std::size_t j = space_.act_S(i);
                const GroupElement X = space_.rep(i) * GroupElement::S() * space_.rep(j).inverse();
                step(X, piece(i, 'S', 0, X));
                i = j;
            }
            continue;
        }
        const long len = static_cast<long>(space_.t_orbit_length(i));
        const Int q = floor_div(syl.exponent, Int(len));
        const long r = Int(syl.exponent - q * len).get_si();
        if (q != 0) {
            // full laps around the T-orbit give powers of the parabolic u = rep_i T^len rep_i^-1
            GroupElement u = space_.rep(i) * GroupElement::T(len) * space_.rep(i).inverse();
            if (u.trace() < 0) u = -u;
            const SymbolValue phi_u = piece(i, 'U', 0, u);
            const Int aq = abs(q);
            const GroupElement X(1 + q * (u.a() - 1), q * u.b(), q * u.c(), 1 + q * (u.d() - 1));
            SymbolValue phi_x = Rat(aq) * phi_u - SymbolValue::exact(Rat(aq - 1) * lambda_ * sign(u.c()));
            step(X, q > 0 ? phi_x : -phi_x);
        }
        if (r > 0) {
            std::size_t j = i;
            for (long k = 0; k < r; ++k) j = space_.act_T(j);
            const GroupElement X = space_.rep(i) * GroupElement::T(r) * space_.rep(j).inverse();
            step(X, piece(i, 'V', r, X));
            i = j;
        }
    }
    if (i != 0 || !P.projectively_equal(g)) throw std::logic_error("coset walk did not reproduce " + g.to_string());
    return val;
}

SymbolValue TakadaEvaluator::phi(const GroupElement& g) const {
    if (g.c() == 0 || abs(g.c()) * n_ <= ctx_.direct_limit) return phi_direct(g);
    return phi_cocycle(g);
}

SymbolValue TakadaEvaluator::psi(const GroupElement& g) const {
    const int s = sign(g.c()) * sign(g.trace());
    return Rat(1, n_) * (phi(g) - SymbolValue::exact(lambda_ * s));
}

SymbolValue takada_phi(long N, const GroupElement& g, const PrecisionCtx& ctx) {
    return TakadaEvaluator(N, ctx).phi(g);
}

}  // namespace radsym
