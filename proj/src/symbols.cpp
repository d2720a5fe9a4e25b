#include "radsym/symbols.hpp"

#include "radsym/dedekind.hpp"

#include <array>

namespace radsym {

namespace {

Cusp fixed_cusp(const GroupElement& g) {
    if (g.c() == 0) return Cusp::infinity();
    return Cusp(g.a() - g.d(), 2 * g.c());
}

/// Least k >= 1 with g^k = +-I mod N.
long order_mod(const GroupElement& g, long n) {
    using M = std::array<long, 4>;
    const M x{mod_long(g.a(), n), mod_long(g.b(), n), mod_long(g.c(), n), mod_long(g.d(), n)};
    M y = x;
    const long limit = 6 * n * n * n + 6;
    for (long k = 1; k <= limit; ++k) {
        const bool plus = y[0] == 1 % n && y[3] == 1 % n && y[1] == 0 && y[2] == 0;
        const bool minus = y[0] == (n - 1) % n && y[3] == (n - 1) % n && y[1] == 0 && y[2] == 0;
        if (plus || minus) return k;
        y = M{(y[0] * x[0] + y[1] * x[2]) % n, (y[0] * x[1] + y[1] * x[3]) % n, (y[2] * x[0] + y[3] * x[2]) % n,
              (y[2] * x[1] + y[3] * x[3]) % n};
    }
    throw std::logic_error("element has no power in Gamma(N)");
}

GroupElement positive_trace(const GroupElement& g) { return g.trace() < 0 ? -g : g; }

}  // namespace

struct SymbolEngine::Impl {
    GroupId group;
    PrecisionCtx ctx;
    Rat lambda;
    std::vector<CuspInfo> cusps;
    std::optional<CosetSpace> space;
    std::vector<std::size_t> cusp_orbit;
    std::unique_ptr<TakadaEvaluator> takada;
    std::vector<GroupElement> lift;
    std::unique_ptr<SymbolEngine> base;
    std::vector<GroupElement> involutions;
    mutable std::mutex mutex;
    mutable std::map<std::pair<std::size_t, GroupElement>, Evaluation> cache;

    Evaluation compute(std::size_t idx, const GroupElement& g) const;
    Evaluation lifted(const CuspInfo& cusp, const GroupElement& g) const;
};

SymbolEngine::SymbolEngine(const GroupId& G, const PrecisionCtx& ctx) : impl_(std::make_unique<Impl>()) {
    ctx.validate();
    Impl& m = *impl_;
    m.group = G;
    m.ctx = ctx;
    m.lambda = pi_over_volume(G);
    m.cusps = cusps(G);
    if (G.family == Family::Gamma0NPlus) {
        m.base = std::make_unique<SymbolEngine>(G.level == 1 ? GroupId::sl2z() : GroupId::gamma0(G.level), ctx);
        m.involutions = atkin_lehner(G.level);
    } else if (!G.is_full_modular()) {
        m.space.emplace(G);
        for (const auto& c : m.cusps) m.cusp_orbit.push_back(m.space->t_orbit(m.space->index_of(c.sigma.base)));
        m.takada = std::make_unique<TakadaEvaluator>(G.level, ctx);
        if (G.family != Family::GammaN) m.lift = cosets(GroupId::gamma(G.level), G);
    }
}

SymbolEngine::~SymbolEngine() = default;

const GroupId& SymbolEngine::group() const { return impl_->group; }
const PrecisionCtx& SymbolEngine::context() const { return impl_->ctx; }
const Rat& SymbolEngine::lambda() const { return impl_->lambda; }
const std::vector<CuspInfo>& SymbolEngine::cusp_list() const { return impl_->cusps; }

std::size_t SymbolEngine::cusp_index(const Cusp& c) const {
    if (!impl_->space) return 0;
    const std::size_t orbit = impl_->space->t_orbit(impl_->space->index_of(cusp_base(c)));
    for (std::size_t i = 0; i < impl_->cusp_orbit.size(); ++i)
        if (impl_->cusp_orbit[i] == orbit) return i;
    throw std::logic_error("cusp class not found");
}

Evaluation SymbolEngine::evaluate(const Cusp& a, const GroupElement& g) const {
    if (!member(g, impl_->group)) throw DomainError(g.to_string() + " is not in " + impl_->group.name());
    const std::size_t idx = cusp_index(a);
    auto key = std::make_pair(idx, g.canonical());
    {
        std::lock_guard<std::mutex> lock(impl_->mutex);
        auto it = impl_->cache.find(key);
        if (it != impl_->cache.end()) return it->second;
    }
    Evaluation e = impl_->compute(idx, g);
    std::lock_guard<std::mutex> lock(impl_->mutex);
    return impl_->cache.emplace(std::move(key), std::move(e)).first->second;
}

Evaluation SymbolEngine::Impl::compute(std::size_t idx, const GroupElement& g) const {
    if (group.is_full_modular()) return {SymbolValue::exact(psi_classical(g)), "classical"};
    const CuspInfo& cusp = cusps[idx];
    const GroupElement& A = cusp.sigma.base;
    const MotionClass mc = classify(g);
    switch (mc.tag) {
        case Motion::Identity: return {SymbolValue(), "identity"};
        case Motion::Elliptic: {
            const Rat phi = elliptic_phi(lambda, A, g);
            const int s = sign(frame_c(A, g)) * sign(g.trace());
            return {SymbolValue::exact(phi - lambda * s), "elliptic"};
        }
        case Motion::Parabolic: {
            if (auto tau = cusp_equivalent(group, fixed_cusp(g), cusp.cusp)) {
                const GroupElement M = A.inverse() * *tau * g * tau->inverse() * A;
                if (M.c() != 0) throw std::logic_error("conjugated parabolic does not fix infinity");
                return {SymbolValue::exact(make_rat(M.b(), M.d()) / cusp.width), "parabolic"};
            }
            return lifted(cusp, g);
        }
        case Motion::Hyperbolic: return lifted(cusp, g);
    }
    return {};
}

Evaluation SymbolEngine::Impl::lifted(const CuspInfo& cusp, const GroupElement& g0) const {
    const GroupElement g = positive_trace(g0);
    if (group.family == Family::Gamma0NPlus) {
        const GroupId sub = base->group();
        GroupElement h = g;
        long k = 1;
        if (!member(h, sub)) {
            h = h * g;
            k = 2;
        }
        if (!member(h, sub)) throw std::logic_error("square of an Atkin-Lehner element left Gamma0(N)");
        SymbolValue sum;
        for (const auto& w : involutions) sum += base->psi(Cusp::infinity(), w * h * w.inverse());
        return {Rat(1, k) * sum, "atkin-lehner-sum"};
    }
    const GroupElement& A = cusp.sigma.base;
    const GroupElement Ai = A.inverse();
    if (group.family == Family::GammaN) return {takada->psi(Ai * g * A), "takada"};
    const long k = order_mod(g, group.level);
    const GroupElement h = g.pow(k);
    SymbolValue sum;
    for (const auto& tau : lift) sum += takada->psi(Ai * tau * h * tau.inverse() * A);
    return {Rat(1, k) * sum, "coset-sum"};
}

SymbolValue SymbolEngine::phi(const Cusp& a, const GroupElement& g) const {
    const SymbolValue psi_value = psi(a, g);
    const int s = sign(frame_c(cusp_base(a), g)) * sign(g.trace());
    return psi_value + SymbolValue::exact(impl_->lambda * s);
}

SymbolFn SymbolEngine::psi_fn(const Cusp& a) const {
    return [this, a](const GroupElement& g) { return psi(a, g); };
}

// ---------------------------------------------------------------- free functions

SymbolValue symbol_parabolic(const SymbolEngine& engine, const Cusp& a, const GroupElement& g) {
    const Motion tag = classify(g).tag;
    if (tag != Motion::Parabolic && tag != Motion::Identity)
        throw DomainError(g.to_string() + " is not parabolic");
    return engine.psi(a, g);
}

SymbolValue symbol_elliptic(const SymbolEngine& engine, const Cusp& a, const GroupElement& g) {
    const Motion tag = classify(g).tag;
    if (tag != Motion::Elliptic && tag != Motion::Identity) throw DomainError(g.to_string() + " is not elliptic");
    if (!member(g, engine.group())) throw DomainError(g.to_string() + " is not in " + engine.group().name());
    return SymbolValue::exact(elliptic_phi(engine.lambda(), cusp_base(a), g));
}

SymbolFn transport_cusp(const GroupElement& tau, const Cusp& a, const Cusp& b, SymbolFn psi_b) {
    if (!(apply(tau, a) == b))
        throw DomainError(tau.to_string() + " does not map " + a.to_string() + " to " + b.to_string());
    if (tau.is_scalar()) return psi_b;
    const GroupElement inv = tau.inverse();
    return [tau, inv, psi_b = std::move(psi_b)](const GroupElement& g) { return psi_b(tau * g * inv); };
}

SymbolValue lift_coset_sum(const GroupId& G1, const GroupId& G, const SymbolFn& psi1, const GroupElement& g) {
    if (!member(g, G1)) throw DomainError(g.to_string() + " is not in " + G1.name());
    if (classify(g).tag != Motion::Hyperbolic) throw DomainError(g.to_string() + " is not hyperbolic");
    const GroupElement h = positive_trace(g);
    SymbolValue sum;
    for (const auto& tau : cosets(G1, G)) sum += psi1(tau * h * tau.inverse());
    return sum;
}

SymbolValue psi_general(const GroupId& G, const Cusp& a, const GroupElement& g, const PrecisionCtx& ctx) {
    return SymbolEngine(G, ctx).psi(a, g);
}

}  // namespace radsym
