#include "radsym/modgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <regex>

namespace radsym {

// ---------------------------------------------------------------- arithmetic

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

long omega(long n) { return static_cast<long>(prime_factors(n).size()); }

bool squarefree(long n) {
    for (long p : prime_factors(n))
        if (n % (p * p) == 0) return false;
    return true;
}

// ---------------------------------------------------------------- GroupId

GroupId GroupId::make(Family f, long n) {
    if (n < 1) throw DomainError("group level must be >= 1");
    if (f == Family::SL2Z && n != 1) throw DomainError("SL2(Z) has level 1");
    if (f == Family::Gamma0NPlus && !squarefree(n))
        throw DomainError("Gamma0(N)+ requires squarefree N, got " + std::to_string(n));
    return {f, n};
}

GroupId GroupId::parse(const std::string& family, long level) {
    if (family == "sl2z" || family == "SL2Z") return sl2z();
    if (family == "gamma") return gamma(level);
    if (family == "gamma0") return gamma0(level);
    if (family == "gamma1") return gamma1(level);
    if (family == "gamma0+" || family == "gamma0plus") return gamma0_plus(level);
    throw DomainError("unknown group family '" + family + "'");
}

std::string GroupId::name() const {
    const std::string n = std::to_string(level);
    switch (family) {
        case Family::SL2Z: return "SL2(Z)";
        case Family::GammaN: return "Gamma(" + n + ")";
        case Family::Gamma0N: return "Gamma0(" + n + ")";
        case Family::Gamma1N: return "Gamma1(" + n + ")";
        case Family::Gamma0NPlus: return "Gamma0(" + n + ")+";
    }
    return "?";
}

std::string MotionClass::name() const {
    switch (tag) {
        case Motion::Identity: return "identity";
        case Motion::Elliptic: return "elliptic";
        case Motion::Parabolic: return "parabolic";
        case Motion::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

// ---------------------------------------------------------------- cusps

Cusp::Cusp(Int num, Int den) : p(std::move(num)), q(std::move(den)) {
    if (q == 0) {
        if (p == 0) throw DomainError("0/0 is not a cusp");
        p = 1;
        return;
    }
    Int g = gcd(p, q);
    p /= g;
    q /= g;
    if (q < 0) {
        p = -p;
        q = -q;
    }
}

std::string Cusp::to_string() const {
    if (is_infinity()) return "inf";
    if (q == 1) return p.get_str();
    return p.get_str() + "/" + q.get_str();
}

Cusp Cusp::parse(const std::string& text) {
    if (text == "inf" || text == "oo" || text == "infinity") return infinity();
    static const std::regex re(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw DomainError("malformed cusp '" + text + "' (expected p/q or inf)");
    Int den = m[2].matched ? Int(m[2].str()) : Int(1);
    return Cusp(Int(m[1].str()), den);
}

bool operator<(const Cusp& x, const Cusp& y) {
    if (x.q != y.q) return x.q < y.q;
    return x.p < y.p;
}

GroupElement cusp_base(const Cusp& c) {
    if (c.is_infinity()) return GroupElement::identity();
    // [[p, x], [q, y]] with p*y - x*q = 1 and 0 <= y < q.
    Int y = 0;
    if (c.q > 1) mpz_invert(y.get_mpz_t(), Int(mod_pos(c.p, c.q)).get_mpz_t(), c.q.get_mpz_t());
    Int x = (c.p * y - 1) / c.q;
    return {c.p, x, c.q, y};
}

Cusp apply(const GroupElement& g, const Cusp& c) {
    auto [p, q] = g.act(c.p, c.q);
    return Cusp(p, q);
}

// ---------------------------------------------------------------- classification

MotionClass classify(const GroupElement& g) {
    const Int t = g.trace();
    const Int disc = t * t - 4 * g.e();
    if (disc > 0) return {Motion::Hyperbolic, 0};
    if (disc == 0) return g.is_scalar() ? MotionClass{Motion::Identity, 0} : MotionClass{Motion::Parabolic, 0};
    // Rotation by theta with 4cos^2(theta) = t^2/e; the projective order is the
    // least m with m*theta a multiple of pi.
    if ((t * t) % g.e() != 0) throw DomainError("elliptic element of infinite order: " + g.to_string());
    const Int ratio = (t * t) / g.e();
    int order = 0;
    if (ratio == 0) order = 2;
    else if (ratio == 1) order = 3;
    else if (ratio == 2) order = 4;
    else if (ratio == 3) order = 6;
    if (order == 0 || !g.pow(order).is_scalar())
        throw DomainError("elliptic element of infinite order: " + g.to_string());
    return {Motion::Elliptic, order};
}

bool member(const GroupElement& g, const GroupId& G) {
    const long n = G.level;
    if (G.family == Family::Gamma0NPlus) {
        const Int& e = g.e();
        if (!e.fits_slong_p() || n % e.get_si() != 0) return false;
        const long el = e.get_si();
        if (std::gcd(el, n / el) != 1) return false;
        return mod_long(g.a(), el) == 0 && mod_long(g.d(), el) == 0 && mod_long(g.c(), n) == 0;
    }
    if (!g.is_sl2z()) return false;
    if (G.is_full_modular()) return true;
    const long a = mod_long(g.a(), n), b = mod_long(g.b(), n), c = mod_long(g.c(), n), d = mod_long(g.d(), n);
    const bool plus_one = (a == 1 % n) && (d == 1 % n);
    const bool minus_one = (a == (n - 1) % n) && (d == (n - 1) % n);
    switch (G.family) {
        case Family::GammaN: return b == 0 && c == 0 && (plus_one || minus_one);
        case Family::Gamma0N: return c == 0;
        case Family::Gamma1N: return c == 0 && (plus_one || minus_one);
        default: return true;
    }
}

Rat projective_index(const GroupId& G) {
    const long n = G.level;
    if (G.is_full_modular()) return 1;
    Rat r = 1;
    switch (G.family) {
        case Family::GammaN:
            if (n == 2) return 6;
            r = Rat(n) * n * n / 2;
            for (long p : prime_factors(n)) r *= Rat(p * p - 1, p * p);
            break;
        case Family::Gamma1N:
            if (n == 2) return 3;
            r = Rat(n) * n / 2;
            for (long p : prime_factors(n)) r *= Rat(p * p - 1, p * p);
            break;
        case Family::Gamma0N:
        case Family::Gamma0NPlus:
            r = n;
            for (long p : prime_factors(n)) r *= Rat(p + 1, p);
            if (G.family == Family::Gamma0NPlus) r /= Rat(Int(1) << static_cast<unsigned>(omega(n)));
            break;
        default: break;
    }
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- words

GroupElement Word::evaluate() const {
    GroupElement g;
    for (const auto& s : syllables) {
        if (s.letter == 'T') g = g * GroupElement::T(s.exponent);
        else g = g * GroupElement::S().pow(mod_long(s.exponent, 4));
    }
    return sign < 0 ? -g : g;
}

std::string Word::to_string() const {
    if (syllables.empty()) return "I";
    std::string out;
    for (const auto& s : syllables) {
        if (!out.empty()) out += ' ';
        out += s.letter;
        if (s.exponent != 1) out += "^" + s.exponent.get_str();
    }
    return out;
}

Word word_decompose(const GroupElement& g) {
    if (!g.is_sl2z()) throw DomainError("word_decompose needs an element of SL2(Z)");
    Word w;
    auto push = [&w](char letter, const Int& exponent) {
        if (exponent == 0) return;
        if (!w.syllables.empty() && w.syllables.back().letter == letter) {
            w.syllables.back().exponent += exponent;
            if (w.syllables.back().exponent == 0) w.syllables.pop_back();
        } else {
            w.syllables.push_back({letter, exponent});
        }
    };
    Int a = g.a(), b = g.b(), c = g.c(), d = g.d();
    while (c != 0) {
        // nearest-integer quotient keeps |a - q c| <= |c|/2
        Int q = floor_div(2 * a + c, 2 * c);
        push('T', q);
        a -= q * c;
        b -= q * d;
        push('S', 1);
        Int na = c, nb = d;
        c = -a;
        d = -b;
        a = na;
        b = nb;
    }
    // remaining matrix is +-T^k
    const int s = sign(a);
    push('T', s * b);
    w.sign = s;
    return w;
}

// ---------------------------------------------------------------- coset spaces

CosetSpace::CosetSpace(const GroupId& G) : group_(G), n_(G.level) {
    if (!G.inside_sl2z()) throw DomainError("coset tables are only built for subgroups of SL2(Z)");
    if (G.is_full_modular()) n_ = 1;
    const GroupElement gens[3] = {GroupElement::S(), GroupElement::T(), GroupElement::T(-1)};
    reps_.push_back(GroupElement::identity());
    index_.emplace(key(reps_[0]), 0);
    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        const std::size_t i = queue.front();
        queue.pop_front();
        for (const auto& x : gens) {
            GroupElement h = reps_[i] * x;
            auto [it, inserted] = index_.emplace(key(h), reps_.size());
            if (inserted) {
                queue.push_back(reps_.size());
                reps_.push_back(std::move(h));
            }
        }
    }
    const std::size_t n = reps_.size();
    s_.resize(n);
    t_.resize(n);
    tinv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s_[i] = index_of(reps_[i] * gens[0]);
        t_[i] = index_of(reps_[i] * gens[1]);
        tinv_[i] = index_of(reps_[i] * gens[2]);
    }
    orbit_.assign(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        if (orbit_[i] != n) continue;
        const std::size_t id = orbit_len_.size();
        std::size_t len = 0;
        for (std::size_t j = i; orbit_[j] == n; j = t_[j]) {
            orbit_[j] = id;
            ++len;
        }
        orbit_len_.push_back(len);
    }
}

CosetSpace::Key CosetSpace::key(const GroupElement& g) const {
    if (n_ == 1) return {0, 0, 0, 0};
    const long n = n_;
    const long a = mod_long(g.a(), n), b = mod_long(g.b(), n), c = mod_long(g.c(), n), d = mod_long(g.d(), n);
    auto neg = [n](long x) { return (n - x) % n; };
    switch (group_.family) {
        case Family::Gamma0N: {
            // point (c:d) of P^1(Z/N), normalized over all unit multiples
            Key best{n, n, 0, 0};
            for (long u = 1; u < n; ++u) {
                if (std::gcd(u, n) != 1) continue;
                Key k{(u * c) % n, (u * d) % n, 0, 0};
                best = std::min(best, k);
            }
            return best;
        }
        case Family::Gamma1N: return std::min(Key{c, d, 0, 0}, Key{neg(c), neg(d), 0, 0});
        case Family::GammaN: return std::min(Key{a, b, c, d}, Key{neg(a), neg(b), neg(c), neg(d)});
        default: return {0, 0, 0, 0};
    }
}

std::size_t CosetSpace::index_of(const GroupElement& g) const {
    if (!g.is_sl2z()) throw DomainError("coset lookup needs an element of SL2(Z)");
    auto it = index_.find(key(g));
    if (it == index_.end()) throw DomainError("coset lookup failed for " + g.to_string());
    return it->second;
}

std::size_t CosetSpace::elliptic2() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < size(); ++i) k += s_[i] == i;
    return k;
}

std::size_t CosetSpace::elliptic3() const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < size(); ++i) k += t_[s_[i]] == i;
    return k;
}

long CosetSpace::genus() const {
    const long twelve_g = 12 + static_cast<long>(size()) - 3 * static_cast<long>(elliptic2()) -
                          4 * static_cast<long>(elliptic3()) - 6 * static_cast<long>(t_orbit_count());
    return twelve_g / 12;
}

// ---------------------------------------------------------------- cusp enumeration

namespace {

struct CuspTable {
    std::vector<CuspInfo> list;
    std::vector<std::size_t> orbit_to_class;
};

CuspTable build_cusp_table(const CosetSpace& cs) {
    const std::size_t count = cs.t_orbit_count();
    std::vector<std::optional<Cusp>> found(count);
    std::size_t remaining = count;
    found[cs.t_orbit(0)] = Cusp::infinity();
    --remaining;
    const long n = std::max<long>(cs.group().level, 1);
    for (long q = 1; remaining > 0; ++q) {
        if (q > 4 * n * n + 4) throw DomainError("cusp enumeration did not terminate");
        for (long p = 0; p < n * q && remaining > 0; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Cusp c(p, q);
            const std::size_t orb = cs.t_orbit(cs.index_of(cusp_base(c)));
            if (!found[orb]) {
                found[orb] = c;
                --remaining;
            }
        }
    }
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return *found[x] < *found[y]; });
    CuspTable table;
    table.orbit_to_class.resize(count);
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t orb = order[k];
        const Cusp& c = *found[orb];
        const GroupElement base = cusp_base(c);
        const Rat width(static_cast<long>(cs.t_orbit_length(cs.index_of(base))));
        table.list.push_back({c, width, {base, width}});
        table.orbit_to_class[orb] = k;
    }
    return table;
}

}  // namespace

std::vector<CuspInfo> cusps(const GroupId& G) {
    if (G.family == Family::Gamma0NPlus) return {{Cusp::infinity(), Rat(1), {GroupElement::identity(), Rat(1)}}};
    return build_cusp_table(CosetSpace(G)).list;
}

std::size_t cusp_class(const GroupId& G, const Cusp& c) {
    if (G.family == Family::Gamma0NPlus) return 0;
    CosetSpace cs(G);
    CuspTable table = build_cusp_table(cs);
    return table.orbit_to_class[cs.t_orbit(cs.index_of(cusp_base(c)))];
}

std::optional<GroupElement> cusp_equivalent(const GroupId& G, const Cusp& c1, const Cusp& c2) {
    if (G.family == Family::Gamma0NPlus) {
        for (const auto& w : atkin_lehner(G.level)) {
            auto tau = cusp_equivalent(GroupId::gamma0(G.level), apply(w, c1), c2);
            if (tau) return (*tau * w).canonical();
        }
        return std::nullopt;
    }
    const GroupElement a1 = cusp_base(c1), a2 = cusp_base(c2);
    const long n = G.is_full_modular() ? 1 : G.level;
    for (long k = 0; k < n; ++k) {
        GroupElement tau = a2 * GroupElement::T(k) * a1.inverse();
        if (member(tau, G)) return tau.canonical();
    }
    return std::nullopt;
}

std::vector<GroupElement> atkin_lehner(long n) {
    std::vector<GroupElement> out;
    for (long e = 1; e <= n; ++e) {
        if (n % e != 0 || std::gcd(e, n / e) != 1) continue;
        if (e == 1) {
            out.push_back(GroupElement::identity());
        } else if (e == n) {
            out.emplace_back(0, -1, n, 0, n);
        } else {
            const long m = n / e;
            Int w;
            mpz_invert(w.get_mpz_t(), Int(e % m).get_mpz_t(), Int(m).get_mpz_t());
            const Int y = (e * w - 1) / m;
            out.emplace_back(e, y, n, e * w, e);
        }
    }
    return out;
}

// ---------------------------------------------------------------- subgroup lattice

bool subgroup_of(const GroupId& G1, const GroupId& G) {
    if (G.family == Family::Gamma0NPlus) {
        if (G1.family == Family::Gamma0NPlus) return G1.level == G.level;
        return subgroup_of(G1, GroupId::gamma0(G.level));
    }
    if (G1.family == Family::Gamma0NPlus) return false;
    if (G.is_full_modular()) return true;
    if (G1.is_full_modular()) return false;
    if (G1.level % G.level != 0) return false;
    switch (G.family) {
        case Family::GammaN: return G1.family == Family::GammaN;
        case Family::Gamma1N: return G1.family == Family::GammaN || G1.family == Family::Gamma1N;
        case Family::Gamma0N: return true;
        default: return false;
    }
}

std::vector<GroupElement> cosets(const GroupId& G1, const GroupId& G) {
    if (!subgroup_of(G1, G))
        throw DomainError(G1.name() + " is not a supported subgroup of " + G.name());
    std::vector<GroupElement> out;
    if (G.family == Family::Gamma0NPlus) {
        const std::vector<GroupElement> base =
            G1.family == Family::Gamma0NPlus ? std::vector<GroupElement>{GroupElement::identity()}
                                             : cosets(G1, GroupId::gamma0(G.level));
        if (G1.family == Family::Gamma0NPlus) return base;
        for (const auto& w : atkin_lehner(G.level))
            for (const auto& t : base) out.push_back((t * w).canonical());
    } else {
        CosetSpace cs(G1);
        for (std::size_t i = 0; i < cs.size(); ++i)
            if (member(cs.rep(i), G)) out.push_back(cs.rep(i).canonical());
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool is_normal_subgroup(const GroupId& G1, const GroupId& G) {
    const std::vector<GroupElement> gens = generating_set(G1);
    for (const auto& tau : cosets(G1, G)) {
        const GroupElement inv = tau.inverse();
        for (const auto& s : gens)
            if (!member(tau * s * inv, G1)) return false;
    }
    return true;
}

// ---------------------------------------------------------------- Schreier generators

SchreierSystem::SchreierSystem(const GroupId& G) : space_(G) {
    for (std::size_t i = 0; i < space_.size(); ++i) {
        record(i, 'S');
        record(i, 'T');
    }
}

void SchreierSystem::record(std::size_t from, char letter) {
    const GroupElement x = letter == 'S' ? GroupElement::S() : GroupElement::T();
    const std::size_t to = letter == 'S' ? space_.act_S(from) : space_.act_T(from);
    const GroupElement piece = space_.rep(from) * x * space_.rep(to).inverse();
    if (piece.is_scalar() || lookup(piece)) return;
    const std::size_t idx = gens_.size();
    gens_.push_back(piece);
    table_.emplace(piece.canonical(), Letter{idx, 1});
    table_.emplace(piece.inverse().canonical(), Letter{idx, -1});
}

std::optional<SchreierSystem::Letter> SchreierSystem::lookup(const GroupElement& piece) const {
    auto it = table_.find(piece.canonical());
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

std::vector<SchreierSystem::Letter> SchreierSystem::rewrite(const GroupElement& g) const {
    if (!member(g, space_.group())) throw DomainError(g.to_string() + " is not in " + space_.group().name());
    std::vector<Letter> out;
    std::size_t i = 0;
    auto step = [&](const GroupElement& x, std::size_t to) {
        const GroupElement piece = space_.rep(i) * x * space_.rep(to).inverse();
        i = to;
        if (piece.is_scalar()) return;
        auto l = lookup(piece);
        if (!l) throw DomainError("Schreier rewriting met an unknown piece " + piece.to_string());
        out.push_back(*l);
    };
    for (const auto& syl : word_decompose(g).syllables) {
        if (syl.letter == 'S') {
            for (long k = mod_long(syl.exponent, 4); k > 0; --k) step(GroupElement::S(), space_.act_S(i));
        } else if (syl.exponent > 0) {
            for (Int k = syl.exponent; k > 0; --k) step(GroupElement::T(), space_.act_T(i));
        } else {
            for (Int k = syl.exponent; k < 0; ++k) step(GroupElement::T(-1), space_.act_Tinv(i));
        }
    }
    if (i != 0) throw DomainError("rewriting did not return to the identity coset");
    return out;
}

GroupElement SchreierSystem::evaluate(const std::vector<GroupElement>& gens, const std::vector<Letter>& w) {
    GroupElement g;
    for (const auto& l : w) g = g * (l.exponent > 0 ? gens[l.generator] : gens[l.generator].inverse());
    return g;
}

std::vector<GroupElement> schreier_generators(const GroupId& G) {
    if (!G.inside_sl2z()) throw DomainError("Schreier generators are built for subgroups of SL2(Z)");
    return SchreierSystem(G).generators();
}

std::vector<GroupElement> generating_set(const GroupId& G) {
    if (G.inside_sl2z()) return schreier_generators(G);
    std::vector<GroupElement> gens = schreier_generators(G.level == 1 ? GroupId::sl2z() : GroupId::gamma0(G.level));
    for (const auto& w : atkin_lehner(G.level))
        if (!w.is_scalar()) gens.push_back(w);
    return gens;
}

}  // namespace radsym
