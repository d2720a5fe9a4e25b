#include "radsym/periods.hpp"

#include "radsym/dedekind.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <set>
#include <thread>

namespace radsym {

namespace {

using Wide = std::complex<long double>;

constexpr long double kPi = 3.141592653589793238462643383279502884L;

Wide to_wide(Complex z) { return {z.real(), z.imag()}; }
Complex to_narrow(Wide z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

Wide q_of(Wide z) { return std::exp(Wide(0, 2 * kPi) * z); }

Wide eta_log_wide(Wide z, long double tol) {
    if (!(z.imag() > 0)) throw DomainError("eta needs Im z > 0");
    const Wide q = q_of(z);
    const long double aq = std::abs(q);
    Wide sum = Wide(0, kPi / 12) * z;
    Wide qn = q;
    for (long n = 1;; ++n) {
        sum += std::log(1.0L - qn);
        // |sum_{m>n} log(1 - q^m)| <= |q|^{n+1} / ((1 - |q|)(1 - |q|^{n+1}))
        if (std::abs(qn) * aq < tol * (1 - aq) * (1 - aq)) break;
        qn *= q;
        if (n > 100000000) throw PrecisionError("eta series did not converge");
    }
    return sum;
}

Wide e2_wide(Wide z, long double tol) {
    if (!(z.imag() > 0)) throw DomainError("E2 needs Im z > 0");
    const Wide q = q_of(z);
    const long double aq = std::abs(q);
    Wide sum = 0;
    Wide qn = q;
    for (long n = 1;; ++n) {
        sum += static_cast<long double>(n) * qn / (1.0L - qn);
        // tail of sum m |q|^m / (1 - |q|^m) from m = n + 1
        const long double an = std::abs(qn) * aq;
        if (24 * (n + 1) * an / ((1 - aq) * (1 - aq) * (1 - an)) < tol) break;
        qn *= q;
        if (n > 100000000) throw PrecisionError("E2 series did not converge");
    }
    return 1.0L - 24.0L * sum - 3.0L / (kPi * z.imag());
}

void require_sl2z(const GroupElement& g) {
    if (!g.is_sl2z()) throw DomainError(g.to_string() + " is not in SL2(Z)");
}

Cusp fixed_cusp(const GroupElement& g) {
    if (g.c() == 0) return Cusp::infinity();
    return Cusp(g.a() - g.d(), 2 * g.c());
}

struct Axis {
    long double center, radius;
};

Axis axis_of(const GroupElement& g) {
    const long double t = g.trace().get_d(), c = g.c().get_d();
    return {(g.a().get_d() - g.d().get_d()) / (2 * c), std::sqrt(t * t - 4) / (2 * std::fabs(c))};
}

}  // namespace

Complex eta_log(Complex z, double tol) { return to_narrow(eta_log_wide(to_wide(z), tol)); }

Int phi_from_eta(const GroupElement& g) {
    require_sl2z(g);
    if (g.c() <= 0) throw DomainError("phi_from_eta needs c > 0");
    // at z = (-d + i)/c one has cz + d = i, so the automorphy factor has log 0
    const long double c = g.c().get_d();
    const Wide z(-g.d().get_d() / c, 1 / c), gz(g.a().get_d() / c, 1 / c);
    const long double tol = 1e-18L;
    const Wide diff = eta_log_wide(gz, tol) - eta_log_wide(z, tol);
    const Wide phi = diff * Wide(12, 0) / Wide(0, kPi);
    const long double nearest = std::round(phi.real());
    const long double residual = std::fabs(phi.real() - nearest) + std::fabs(phi.imag());
    if (residual > 1e-6L)
        throw PrecisionError("eta extraction residual " + std::to_string(static_cast<double>(residual)) + " for " +
                             g.to_string());
    return Int(static_cast<long>(nearest));
}

Complex e2_value(Complex z, double tol) { return to_narrow(e2_wide(to_wide(z), tol)); }

Rat phi_fourier_coefficient(long n) {
    if (n < 1) throw DomainError("Fourier index must be positive");
    Rat s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        s += Rat(1, d);
        if (d * d != n) s += make_rat(d, n);
    }
    s.canonicalize();
    return s;
}

NumericPeriod period_numeric(const GroupElement& g0, double tol) {
    require_sl2z(g0);
    if (classify(g0).tag != Motion::Hyperbolic) throw DomainError(g0.to_string() + " is not hyperbolic");
    GroupElement g = g0.trace() < 0 ? -g0 : g0;
    // conjugate until the apex of the axis is at height >= 0.05: each round
    // centers the axis over [-1/2, 1/2] and inverts, which multiplies the radius by >= 4
    for (int round = 0; axis_of(g).radius < 0.05L; ++round) {
        if (round > 200) throw DomainError("could not raise the axis of " + g0.to_string());
        const Int k = -floor_div(2 * (g.a() - g.d()) + 2 * g.c(), 4 * g.c());
        g = GroupElement::T(k.get_si()) * g * GroupElement::T(-k.get_si());
        g = GroupElement::S() * g * GroupElement::S().inverse();
    }
    const Axis ax = axis_of(g);
    const long double t = g.trace().get_d();
    const double half = static_cast<double>(std::acosh(t / 2));
    const int direction = sign(g.c());  // g moves along the axis towards center + direction * radius
    const long double series_tol = 1e-17L;

    auto point = [&](double s) {
        const long double th = std::tanh(static_cast<long double>(s)), sh = 1 / std::cosh(static_cast<long double>(s));
        return Wide(ax.center + ax.radius * th, ax.radius * sh);
    };
    auto integrand = [&](double s) {
        const long double th = std::tanh(static_cast<long double>(s)), sh = 1 / std::cosh(static_cast<long double>(s));
        const Wide dz(ax.radius * sh * sh, -ax.radius * sh * th);
        return e2_wide(point(s), series_tol) * dz;
    };
    using boost::math::quadrature::gauss_kronrod;
    double err_re = 0, err_im = 0;
    const double re = gauss_kronrod<double, 15>::integrate(
        [&](double s) { return static_cast<double>(integrand(s).real()); }, -half, half, 25, tol * 1e-2, &err_re);
    const double im = gauss_kronrod<double, 15>::integrate(
        [&](double s) { return static_cast<double>(integrand(s).imag()); }, -half, half, 25, tol * 1e-2, &err_im);
    NumericPeriod out;
    out.value = direction * re;
    out.imaginary = direction * im;
    out.error = err_re + static_cast<double>(2 * half * ax.radius * series_tol);
    out.integrated = g;
    return out;
}

Rat x0_period_exact(long N, const GroupElement& g) {
    require_sl2z(g);
    if (N < 2 || prime_factors(N) != std::vector<long>{N}) throw DomainError("level " + std::to_string(N) + " is not prime");
    if (mod_long(g.c(), N) != 0) throw DomainError(g.to_string() + " is not in Gamma0(" + std::to_string(N) + ")");
    const GroupElement h(g.a(), g.b() * N, g.c() / N, g.d());
    return psi_classical(g) - psi_classical(h);
}

// ---------------------------------------------------------------- divisors

Divisor::Divisor(const GroupId& G, const std::vector<std::pair<Cusp, long>>& terms) : group_(G) {
    const auto list = cusps(G);
    std::set<std::size_t> seen;
    for (const auto& [c, m] : terms) {
        const std::size_t idx = cusp_class(G, c);
        if (!seen.insert(idx).second)
            throw DomainError("cusp " + c.to_string() + " repeats a class already in the divisor");
        if (m != 0) terms_[list[idx].cusp] = m;
    }
    if (degree() != 0) throw DomainError("divisor " + to_string() + " has degree " + std::to_string(degree()));
}

Divisor Divisor::parse(const GroupId& G, const std::string& text) {
    std::vector<std::pair<Cusp, long>> terms;
    const std::string trimmed = boost::algorithm::trim_copy(text);
    if (trimmed.empty()) return Divisor(G, terms);
    std::vector<std::string> parts;
    boost::algorithm::split(parts, trimmed, boost::algorithm::is_any_of(","));
    for (auto part : parts) {
        boost::algorithm::trim(part);
        const auto colon = part.rfind(':');
        if (colon == std::string::npos) throw DomainError("divisor term '" + part + "' is not cusp:multiplicity");
        const std::string cusp = boost::algorithm::trim_copy(part.substr(0, colon));
        const std::string mult = boost::algorithm::trim_copy(part.substr(colon + 1));
        std::size_t used = 0;
        long m = 0;
        try {
            m = std::stol(mult, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (mult.empty() || used != mult.size()) throw DomainError("bad multiplicity '" + mult + "'");
        terms.emplace_back(Cusp::parse(cusp), m);
    }
    return Divisor(G, terms);
}

long Divisor::multiplicity(const Cusp& canonical) const {
    auto it = terms_.find(canonical);
    return it == terms_.end() ? 0 : it->second;
}

long Divisor::degree() const {
    long d = 0;
    for (const auto& [c, m] : terms_) d += m;
    return d;
}

bool Divisor::is_zero() const { return terms_.empty(); }

std::string Divisor::to_string() const {
    std::string out;
    for (const auto& [c, m] : terms_) {
        if (!out.empty()) out += ",";
        out += c.to_string() + ":" + std::to_string(m);
    }
    return out;
}

PeriodValue period_of(const SymbolEngine& engine, const Divisor& D, const GroupElement& g) {
    const GroupId& G = engine.group();
    if (!(D.group() == G)) throw DomainError("divisor belongs to " + D.group().name() + ", not " + G.name());
    if (!member(g, G)) throw DomainError(g.to_string() + " is not in " + G.name());
    PeriodValue out{SymbolValue(), g, D, ""};
    switch (classify(g).tag) {
        case Motion::Identity: out.kind = "identity"; break;
        case Motion::Elliptic: out.kind = "elliptic"; break;
        case Motion::Parabolic: {
            out.kind = "parabolic";
            const Cusp b = fixed_cusp(g);
            const Cusp rep = engine.cusp_list()[engine.cusp_index(b)].cusp;
            const long m = D.multiplicity(rep);
            if (m != 0) out.value = Rat(m) * symbol_parabolic(engine, b, g);
            break;
        }
        case Motion::Hyperbolic:
            out.kind = "hyperbolic";
            for (const auto& [c, m] : D.terms()) out.value += Rat(m) * engine.psi(c, g);
            break;
    }
    return out;
}

std::vector<PeriodValue> divisor_periods(const SymbolEngine& engine, const Divisor& D,
                                         const std::vector<GroupElement>& gens, unsigned workers) {
    std::vector<std::optional<PeriodValue>> slots(gens.size());
    std::vector<std::exception_ptr> errors(gens.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < gens.size(); i = next++) {
            try {
                slots[i] = period_of(engine, D, gens[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(gens.size())));
    if (n == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    std::vector<PeriodValue> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

std::vector<PeriodValue> divisor_periods(const GroupId& G, const Divisor& D, const PrecisionCtx& ctx,
                                         unsigned workers) {
    SymbolEngine engine(G, ctx);
    return divisor_periods(engine, D, generating_set(G), workers);
}

// ---------------------------------------------------------------- certificates

std::string TorsionCertificate::status_name() const {
    switch (status) {
        case Status::Exact: return "exact";
        case Status::ReconstructedVerified: return "reconstructed-verified";
        case Status::NonRational: return "non-rational-flag";
    }
    return "";
}

namespace {

Int order_of(const std::vector<PeriodValue>& periods) {
    Int n = 1;
    for (const auto& p : periods) n = lcm(n, Int(p.value.rational().get_den()));
    return n;
}

// Exact checks that reconstructed values must pass: additivity of the
// period on products of neighbouring generators, and the cocycle relation of
// Phi at every cusp in the support of the divisor.
std::vector<std::string> cross_checks(const SymbolEngine& engine, const Divisor& D,
                                      const std::vector<GroupElement>& gens, const std::vector<PeriodValue>& periods) {
    std::vector<std::string> failures;
    if (gens.size() < 2) return failures;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const std::size_t j = (i + 1) % gens.size();
        const GroupElement& x = gens[i];
        const GroupElement& y = gens[j];
        const GroupElement xy = x * y;
        const PeriodValue p = period_of(engine, D, xy);
        if (!p.value.is_rational() || p.value.rational() != periods[i].value.rational() + periods[j].value.rational())
            failures.push_back("period of " + x.to_string() + " * " + y.to_string() + " is not additive");
        for (const auto& [c, m] : D.terms()) {
            const SymbolValue px = engine.phi(c, x), py = engine.phi(c, y), pxy = engine.phi(c, xy);
            if (!px.is_rational() || !py.is_rational() || !pxy.is_rational() ||
                cocycle_defect(engine.group(), c, x, y, px.rational(), py.rational(), pxy.rational()) != 0)
                failures.push_back("cocycle relation fails at cusp " + c.to_string() + " for " + x.to_string() +
                                   ", " + y.to_string());
        }
    }
    return failures;
}

}  // namespace

TorsionCertificate torsion_certificate(const SymbolEngine& engine, const Divisor& D, unsigned workers) {
    TorsionCertificate cert;
    cert.group = engine.group();
    cert.divisor = D;
    cert.generators = generating_set(cert.group);
    cert.periods = divisor_periods(engine, D, cert.generators, workers);
    bool reconstructed = false;
    for (const auto& p : cert.periods) {
        if (!p.value.is_rational()) {
            cert.notes.push_back("period of " + p.element.to_string() + " was not recognized as a rational: " +
                                 p.value.to_string());
        } else if (p.value.kind() == SymbolValue::Kind::Reconstructed) {
            reconstructed = true;
        }
    }
    if (cert.notes.empty() && reconstructed) cert.notes = cross_checks(engine, D, cert.generators, cert.periods);
    if (!cert.notes.empty()) {
        cert.status = TorsionCertificate::Status::NonRational;
        return cert;
    }
    cert.status = reconstructed ? TorsionCertificate::Status::ReconstructedVerified : TorsionCertificate::Status::Exact;
    cert.order = order_of(cert.periods);
    return cert;
}

TorsionCertificate torsion_certificate(const GroupId& G, const Divisor& D, const PrecisionCtx& ctx, unsigned workers) {
    SymbolEngine engine(G, ctx);
    return torsion_certificate(engine, D, workers);
}

std::vector<std::string> recheck_certificate(const SymbolEngine& engine, const TorsionCertificate& cert) {
    std::vector<std::string> issues;
    if (!(cert.group == engine.group())) return {"certificate is for " + cert.group.name()};
    if (cert.generators.size() != cert.periods.size()) return {"generator and period lists differ in length"};
    const auto standard = generating_set(cert.group);
    std::set<GroupElement> expected;
    for (const auto& g : standard) expected.insert(g.canonical());
    std::set<GroupElement> listed;
    for (const auto& g : cert.generators) listed.insert(g.canonical());
    if (expected != listed) issues.push_back("generators differ from the generating set of " + cert.group.name());
    bool all_rational = true;
    for (std::size_t i = 0; i < cert.generators.size(); ++i) {
        const GroupElement& g = cert.generators[i];
        PeriodValue p;
        try {
            p = period_of(engine, cert.divisor, g);
        } catch (const std::exception& e) {
            issues.push_back(e.what());
            continue;
        }
        const SymbolValue& claimed = cert.periods[i].value;
        if (!p.value.is_rational() || !claimed.is_rational()) {
            all_rational = false;
            continue;
        }
        if (p.value.rational() != claimed.rational())
            issues.push_back("period of " + g.to_string() + " is " + p.value.to_string() + ", certificate says " +
                             claimed.to_string());
    }
    if (cert.status == TorsionCertificate::Status::NonRational) {
        if (cert.order) issues.push_back("non-rational certificate carries an order");
    } else if (!all_rational) {
        issues.push_back("certificate claims rational periods that could not be recovered");
    } else if (!cert.order || *cert.order != order_of(cert.periods)) {
        issues.push_back("order is not the lcm of the period denominators");
    }
    return issues;
}

}  // namespace radsym
