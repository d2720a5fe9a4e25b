#include <gtest/gtest.h>

#include "radsym/dedekind.hpp"
#include "radsym/symbols.hpp"
#include "support.hpp"

#include <cmath>

using namespace radsym;
using radsym::testing::random_hyperbolic;
using radsym::testing::random_sl2z;
using radsym::testing::random_word;

namespace {

double distance(const Real& x, const Rat& r) {
    Real d = abs(x - real(r, x.precision()));
    return d.convert_to<double>();
}

bool close_to(const Real& x, const Real& y, double tol) {
    Real d = abs(x - y);
    return d.convert_to<double>() < tol;
}

}  // namespace

// =============================================================================
// Special values
// =============================================================================

TEST(Special, Bernoulli) {
    auto b = bernoulli_numbers(12);
    EXPECT_EQ(b[0], 1);
    EXPECT_EQ(b[1], Rat(-1, 2));
    EXPECT_EQ(b[2], Rat(1, 6));
    EXPECT_EQ(b[4], Rat(-1, 30));
    EXPECT_EQ(b[5], 0);
    EXPECT_EQ(b[12], Rat(-691, 2730));
}

TEST(Special, HurwitzZeta) {
    const unsigned d = 80;
    Real pi = real_pi(d + 10);
    Real z2 = pi * pi / 6;
    double err = 1;
    EXPECT_TRUE(close_to(hurwitz_zeta2(Rat(1), d, &err), z2, 1e-75));
    EXPECT_LT(err, 1e-80);
    EXPECT_TRUE(close_to(hurwitz_zeta2(Rat(1, 2), d), 3 * z2, 1e-75));
    // zeta(2, x) - zeta(2, x + 1) = x^-2
    Real diff = hurwitz_zeta2(Rat(2, 7), d) - hurwitz_zeta2(Rat(9, 7), d);
    EXPECT_LT(distance(diff, Rat(49, 4)), 1e-75);
    EXPECT_THROW(hurwitz_zeta2(Rat(0), d), DomainError);
}

TEST(Special, Reconstruction) {
    const unsigned d = 60;
    Real x = real(Rat(-22, 7), d);
    auto r = reconstruct_rational(x, Int(1000), 1e-30);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->value, Rat(-22, 7));
    EXPECT_LT(r->residual, 1e-55);
    EXPECT_FALSE(reconstruct_rational(real_pi(d), Int(100000), 1e-30));
    auto z = reconstruct_rational(real(0, d), Int(10), 1e-30);
    ASSERT_TRUE(z);
    EXPECT_EQ(z->value, 0);
}

// =============================================================================
// Takada constants
// =============================================================================

TEST(TakadaC, LevelTwo) {
    for (long j = -4; j <= 4; ++j) {
        TakadaConstant c = takada_C(2, j);
        EXPECT_EQ(distance(c.value, Rat(j % 2 == 0 ? 1 : -1)), 0.0);
        EXPECT_EQ(c.error, 0.0);
    }
}

TEST(TakadaC, LevelThree) {
    TakadaConstant c = takada_C(3, 1);
    EXPECT_LT(distance(c.value, Rat(-1, 2)), 1e-55);
    EXPECT_LT(c.error, 1e-50);
}

TEST(TakadaC, KnownRationalValues) {
    const std::vector<std::pair<long, std::vector<Rat>>> known = {
        {4, {1, 0, -1, 0}},
        {5, {1, 1, Rat(-3, 2), Rat(-3, 2), 1}},
        {6, {1, Rat(1, 2), Rat(-1, 2), -1, Rat(-1, 2), Rat(1, 2)}},
        {7, {1, Rat(3, 2), Rat(-1, 2), Rat(-3, 2), Rat(-3, 2), Rat(-1, 2), Rat(3, 2)}},
    };
    for (const auto& [N, values] : known) {
        auto cs = takada_constants(N);
        for (long j = 0; j < N; ++j) EXPECT_LT(distance(cs[j].value, values[j]), 1e-50) << N << " " << j;
    }
}

TEST(TakadaC, EvenInJ) {
    for (long N : {5L, 8L, 9L, 12L, 13L, 15L}) {
        auto cs = takada_constants(N);
        for (long j = 1; j < N; ++j) EXPECT_TRUE(close_to(cs[j].value, cs[N - j].value, 1e-50)) << N << " " << j;
        EXPECT_TRUE(close_to(takada_C(N, -1).value, takada_C(N, 1).value, 1e-50));
    }
}

TEST(TakadaC, MobiusOracle) {
    for (long N : {3L, 4L, 5L}) {
        auto cs = takada_constants(N);
        for (long j = 0; j < N; ++j) {
            MobiusEstimate m = takada_C_mobius(N, j, 1000000);
            EXPECT_LT(m.tail_bound, 1e-5);
            EXPECT_NEAR(cs[j].value.convert_to<double>(), m.value, m.tail_bound + 1e-12) << N << " " << j;
        }
    }
}

TEST(TakadaC, Validation) {
    EXPECT_THROW(takada_C(1, 0), DomainError);
    PrecisionCtx low;
    low.digits = 20;
    EXPECT_THROW(takada_C(3, 1, low), DomainError);
}

// =============================================================================
// Takada symbol on Gamma(N)
// =============================================================================

TEST(TakadaPhi, Examples) {
    SymbolValue t5 = takada_phi(5, GroupElement::T(5));
    EXPECT_TRUE(t5.is_exact());
    EXPECT_EQ(t5.rational(), 5);
    SymbolValue id = takada_phi(2, GroupElement::identity());
    EXPECT_TRUE(id.is_exact());
    EXPECT_EQ(id.rational(), 0);
    SymbolValue g = takada_phi(2, GroupElement(3, 2, 4, 3));
    EXPECT_TRUE(g.is_exact());
    EXPECT_THROW(takada_phi(2, GroupElement(2, 1, 1, 1)), DomainError);
}

TEST(TakadaPhi, LevelTwoMatchesSawtoothSum) {
    // independent evaluation of the formula with C_{2,j} = (-1)^j
    std::mt19937_64 rng(21);
    auto gens = schreier_generators(GroupId::gamma(2));
    const Rat lambda0 = pi_over_volume(GroupId::gamma(2));
    TakadaEvaluator ev(2, {});
    for (int i = 0; i < 50; ++i) {
        GroupElement g = random_word(gens, rng, 4);
        if (g.c() == 0) continue;
        const long c = g.c().get_si();
        const long a = g.a().get_si();
        Rat s = 0;
        for (long j = 1; j < std::labs(c) * 2; ++j) s += Rat(j % 2 == 0 ? j : -j) * sawtooth(make_rat(a * j, c));
        Rat expected = make_rat(g.trace(), g.c()) - 4 * lambda0 / std::labs(c) * s;
        EXPECT_EQ(ev.phi(g).rational(), expected) << g;
    }
}

TEST(TakadaPhi, CocycleRouteMatchesDirect) {
    std::mt19937_64 rng(22);
    for (long N : {2L, 3L, 4L, 5L}) {
        PrecisionCtx ctx;
        TakadaEvaluator ev(N, ctx);
        auto gens = schreier_generators(GroupId::gamma(N));
        int tested = 0;
        while (tested < 25) {
            GroupElement g = random_word(gens, rng, 3);
            if (g.c() == 0 || abs(g.c()) * N > 5000) continue;
            ++tested;
            SymbolValue direct = ev.phi_direct(g), walk = ev.phi_cocycle(g);
            ASSERT_TRUE(direct.is_rational()) << g;
            ASSERT_TRUE(walk.is_rational()) << g;
            EXPECT_EQ(direct.rational(), walk.rational()) << N << " " << g;
        }
    }
}

TEST(TakadaPhi, CocycleRelation) {
    std::mt19937_64 rng(23);
    for (long N : {2L, 3L, 5L}) {
        TakadaEvaluator ev(N, {});
        auto gens = schreier_generators(GroupId::gamma(N));
        for (int i = 0; i < 40; ++i) {
            GroupElement x = random_word(gens, rng, 3), y = random_word(gens, rng, 3);
            SymbolValue px = ev.phi(x), py = ev.phi(y), pxy = ev.phi(x * y);
            ASSERT_TRUE(px.is_rational() && py.is_rational() && pxy.is_rational());
            EXPECT_EQ(cocycle_defect(ev.lambda(), GroupElement(), x, y, px.rational(), py.rational(), pxy.rational()), 0)
                << N << " " << x << " " << y;
        }
    }
}

TEST(TakadaPhi, LargeEntriesUseCocycleWalk) {
    TakadaEvaluator ev(3, {});
    auto gens = schreier_generators(GroupId::gamma(3));
    std::mt19937_64 rng(24);
    GroupElement g = random_hyperbolic(gens, rng, 40);
    ASSERT_GT(abs(g.c()) * 3, 200000);
    SymbolValue v = ev.phi(g);
    EXPECT_TRUE(v.is_rational());
    // Psi is homogeneous on positive-trace hyperbolic elements
    GroupElement h = g.trace() < 0 ? -g : g;
    EXPECT_EQ(ev.psi(h.pow(3)).rational(), 3 * ev.psi(h).rational());
}

// =============================================================================
// Engines
// =============================================================================

TEST(Engine, CosetSumLevelTwo) {
    std::mt19937_64 rng(31);
    const GroupId G2 = GroupId::gamma(2);
    SymbolEngine eng(G2);
    auto gens = schreier_generators(G2);
    for (int i = 0; i < 20; ++i) {
        GroupElement g = random_hyperbolic(gens, rng, 5);
        SymbolValue sum = lift_coset_sum(G2, GroupId::sl2z(), eng.psi_fn(Cusp::infinity()), g);
        ASSERT_TRUE(sum.is_exact());
        EXPECT_EQ(sum.rational(), psi_classical(g)) << g;
    }
    SymbolValue ex = lift_coset_sum(G2, GroupId::sl2z(), eng.psi_fn(Cusp::infinity()), GroupElement(3, 2, 4, 3));
    EXPECT_EQ(ex.rational(), 0);
}

TEST(Engine, CosetSumLevelThree) {
    std::mt19937_64 rng(32);
    const GroupId G3 = GroupId::gamma(3);
    SymbolEngine eng(G3);
    auto gens = schreier_generators(G3);
    for (int i = 0; i < 10; ++i) {
        GroupElement g = random_hyperbolic(gens, rng, 4);
        SymbolValue sum = lift_coset_sum(G3, GroupId::sl2z(), eng.psi_fn(Cusp::infinity()), g);
        ASSERT_EQ(sum.kind(), SymbolValue::Kind::Reconstructed);
        EXPECT_LT(sum.error(), 1e-20);
        EXPECT_EQ(sum.rational(), psi_classical(g)) << g;
    }
}

TEST(Engine, SignAndInverseLaws) {
    std::mt19937_64 rng(33);
    for (long N : {2L, 3L, 4L, 5L}) {
        for (const GroupId& G : {GroupId::gamma(N), GroupId::gamma0(N)}) {
            SymbolEngine eng(G);
            auto gens = schreier_generators(G);
            for (int i = 0; i < 15; ++i) {
                GroupElement g = random_word(gens, rng, 4);
                for (const auto& c : eng.cusp_list()) {
                    SymbolValue v = eng.psi(c.cusp, g);
                    ASSERT_TRUE(v.is_rational());
                    EXPECT_EQ(eng.psi(c.cusp, g.inverse()).rational(), -v.rational()) << G.name() << " " << g;
                    EXPECT_EQ(eng.psi(c.cusp, -g).rational(), v.rational());
                }
            }
        }
    }
}

TEST(Engine, CocycleConsistency) {
    std::mt19937_64 rng(34);
    for (const GroupId& G : {GroupId::gamma(2), GroupId::gamma0(2), GroupId::gamma0(3), GroupId::gamma0(4),
                             GroupId::gamma1(5), GroupId::gamma0_plus(2), GroupId::gamma0_plus(11)}) {
        SymbolEngine eng(G);
        std::vector<GroupElement> gens = G.inside_sl2z() ? schreier_generators(G) : schreier_generators(GroupId::gamma0(G.level));
        if (!G.inside_sl2z())
            for (const auto& w : atkin_lehner(G.level)) gens.push_back(w);
        for (int i = 0; i < 25; ++i) {
            GroupElement x = random_word(gens, rng, 3), y = random_word(gens, rng, 3);
            for (const auto& c : eng.cusp_list()) {
                SymbolValue px = eng.phi(c.cusp, x), py = eng.phi(c.cusp, y), pxy = eng.phi(c.cusp, x * y);
                ASSERT_TRUE(px.is_rational() && py.is_rational() && pxy.is_rational());
                EXPECT_EQ(cocycle_defect(G, c.cusp, x, y, px.rational(), py.rational(), pxy.rational()), 0)
                    << G.name() << " cusp " << c.cusp.to_string() << " " << x << " " << y;
            }
        }
    }
}

TEST(Engine, ClassicalIsWidthWeightedSum) {
    std::mt19937_64 rng(35);
    for (long N = 2; N <= 6; ++N) {
        const GroupId G = GroupId::gamma0(N);
        SymbolEngine eng(G);
        auto gens = schreier_generators(G);
        for (int i = 0; i < 10; ++i) {
            GroupElement g = random_word(gens, rng, 4);
            Rat total = 0;
            for (const auto& c : eng.cusp_list()) total += c.width * eng.psi(c.cusp, g).rational();
            EXPECT_EQ(total, psi_classical(g)) << G.name() << " " << g;
        }
    }
}

TEST(Engine, RepresentativeIndependence) {
    std::mt19937_64 rng(36);
    const GroupId G2 = GroupId::gamma(2);
    SymbolEngine eng(G2);
    auto gens = schreier_generators(G2);
    auto reps = cosets(G2, GroupId::sl2z());
    SymbolFn psi = eng.psi_fn(Cusp::infinity());
    for (int i = 0; i < 10; ++i) {
        GroupElement g = random_hyperbolic(gens, rng, 4);
        if (g.trace() < 0) g = -g;
        SymbolValue sum;
        for (const auto& t : reps) {
            GroupElement moved = random_word(gens, rng, 3) * t;
            sum += psi(moved * g * moved.inverse());
        }
        EXPECT_EQ(sum.rational(), psi_classical(g));
    }
}

TEST(Engine, Transport) {
    const GroupId G2 = GroupId::gamma(2);
    SymbolEngine eng(G2);
    const GroupElement g(3, 2, 4, 3);
    SymbolFn psi0 = transport_cusp(GroupElement::S(), Cusp(0, 1), Cusp::infinity(), eng.psi_fn(Cusp::infinity()));
    EXPECT_EQ(psi0(g).rational(), eng.psi(Cusp(0, 1), g).rational());
    SymbolFn other = transport_cusp(GroupElement::T(2) * GroupElement::S(), Cusp(0, 1), Cusp::infinity(),
                                    eng.psi_fn(Cusp::infinity()));
    std::mt19937_64 rng(37);
    auto gens = schreier_generators(G2);
    for (int i = 0; i < 100; ++i) {
        GroupElement h = random_hyperbolic(gens, rng, 4);
        EXPECT_EQ(psi0(h).rational(), other(h).rational());
    }
    SymbolFn same = transport_cusp(GroupElement(), Cusp::infinity(), Cusp::infinity(), eng.psi_fn(Cusp::infinity()));
    EXPECT_EQ(same(g).rational(), eng.psi(Cusp::infinity(), g).rational());
    EXPECT_THROW(transport_cusp(GroupElement::T(), Cusp(0, 1), Cusp::infinity(), psi0), DomainError);
}

TEST(Engine, Parabolic) {
    SymbolEngine g2(GroupId::gamma(2));
    EXPECT_EQ(symbol_parabolic(g2, Cusp::infinity(), GroupElement::T(2)).rational(), 1);
    SymbolEngine sl(GroupId::sl2z());
    for (long k = -3; k <= 3; ++k) EXPECT_EQ(symbol_parabolic(sl, Cusp::infinity(), GroupElement::T(k)).rational(), k);
    EXPECT_THROW(symbol_parabolic(sl, Cusp::infinity(), GroupElement(2, 1, 1, 1)), DomainError);

    // generator of the stabilizer of 0 in Gamma0(N) has width N
    for (long N : {2L, 3L, 4L, 6L}) {
        SymbolEngine eng(GroupId::gamma0(N));
        const GroupElement at_zero(1, 0, -N, 1);
        EXPECT_EQ(eng.psi(Cusp(0, 1), at_zero).rational(), 1);
        EXPECT_EQ(eng.psi(Cusp::infinity(), at_zero).rational(), 0);
        EXPECT_EQ(eng.psi(Cusp::infinity(), GroupElement::T(3)).rational(), 3);
        EXPECT_EQ(eng.psi(Cusp(0, 1), GroupElement::T(3)).rational(), 0);
    }
    SymbolEngine plus(GroupId::gamma0_plus(11));
    EXPECT_EQ(plus.psi(Cusp::infinity(), GroupElement(1, 0, 11, 1)).rational(), -1);
}

TEST(Engine, Elliptic) {
    SymbolEngine sl(GroupId::sl2z());
    const GroupElement S = GroupElement::S(), ST = S * GroupElement::T();
    EXPECT_EQ(symbol_elliptic(sl, Cusp::infinity(), S).rational(), 0);
    EXPECT_EQ(symbol_elliptic(sl, Cusp::infinity(), ST).rational(), phi_classical(ST));
    EXPECT_EQ(symbol_elliptic(sl, Cusp::infinity(), GroupElement()).rational(), 0);
    SymbolEngine g2(GroupId::gamma0(2));
    // [[1,-1],[2,-1]] is elliptic of order 2 in Gamma0(2)
    const GroupElement e(1, -1, 2, -1);
    for (const auto& c : g2.cusp_list()) {
        EXPECT_EQ(g2.psi(c.cusp, e).rational(), g2.phi(c.cusp, e).rational());
        EXPECT_EQ(g2.psi(c.cusp, e).rational(), -g2.psi(c.cusp, e.inverse()).rational());
    }
}

TEST(Engine, AtkinLehnerSum) {
    std::mt19937_64 rng(38);
    const GroupId G0 = GroupId::gamma0(11), Gp = GroupId::gamma0_plus(11);
    SymbolEngine base(G0), plus(Gp);
    auto gens = schreier_generators(G0);
    for (int i = 0; i < 10; ++i) {
        GroupElement g = random_hyperbolic(gens, rng, 3);
        SymbolValue lifted = lift_coset_sum(G0, Gp, base.psi_fn(Cusp::infinity()), g);
        EXPECT_EQ(lifted.rational(), plus.psi(Cusp::infinity(), g).rational());
        // the Fricke involution exchanges the two cusps of Gamma0(11)
        EXPECT_EQ(lifted.rational(), (base.psi(Cusp::infinity(), g) + base.psi(Cusp(0, 1), g)).rational());
    }
    EXPECT_EQ(psi_general(Gp, Cusp::infinity(), GroupElement()).rational(), 0);
}

TEST(Engine, PlusConjugacyInvariance) {
    std::mt19937_64 rng(39);
    const GroupId Gp = GroupId::gamma0_plus(6);
    SymbolEngine plus(Gp);
    std::vector<GroupElement> gens = schreier_generators(GroupId::gamma0(6));
    for (const auto& w : atkin_lehner(6)) gens.push_back(w);
    int done = 0;
    while (done < 10) {
        GroupElement g = random_word(gens, rng, 4);
        if (classify(g).tag != Motion::Hyperbolic) continue;
        ++done;
        GroupElement h = random_word(gens, rng, 3);
        EXPECT_EQ(plus.psi(Cusp::infinity(), h * g * h.inverse()).rational(), plus.psi(Cusp::infinity(), g).rational());
    }
}

TEST(Engine, GeneralExamples) {
    EXPECT_EQ(psi_general(GroupId::sl2z(), Cusp::infinity(), GroupElement(2, 1, 1, 1)).rational(), 0);
    SymbolValue v = psi_general(GroupId::gamma(2), Cusp::infinity(), GroupElement(3, 2, 4, 3));
    EXPECT_TRUE(v.is_exact());
    EXPECT_THROW(psi_general(GroupId::gamma0(2), Cusp::infinity(), GroupElement(2, 1, 1, 1)), DomainError);
    SymbolEngine eng(GroupId::gamma0(4));
    // equivalent cusps give the same symbol
    EXPECT_EQ(eng.cusp_index(Cusp(1, 4)), eng.cusp_index(Cusp::infinity()));
    const GroupElement g(5, 1, 4, 1);
    EXPECT_EQ(eng.psi(Cusp(1, 4), g).rational(), eng.psi(Cusp::infinity(), g).rational());
}
