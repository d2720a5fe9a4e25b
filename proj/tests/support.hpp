#pragma once

#include "radsym/modgroup.hpp"

#include <random>

namespace radsym::testing {

/// Uniform-ish element of SL2(Z) with |a|, |c| <= bound.
inline GroupElement random_sl2z(std::mt19937_64& rng, long bound) {
    std::uniform_int_distribution<long> dist(-bound, bound);
    for (;;) {
        Int a = dist(rng), c = dist(rng);
        Int g, x, y;
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
        if (g != 1) continue;
        // a*x + c*y = 1, so [[a, -y], [c, x]] has determinant 1
        return {a, -y, c, x};
    }
}

/// Random word of the given length in the generators of G and their inverses.
inline GroupElement random_word(const std::vector<GroupElement>& gens, std::mt19937_64& rng, int length) {
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::bernoulli_distribution flip(0.5);
    GroupElement g;
    for (int i = 0; i < length; ++i) {
        const GroupElement& x = gens[pick(rng)];
        g = g * (flip(rng) ? x : x.inverse());
    }
    return g;
}

inline bool hyperbolic(const GroupElement& g) { return classify(g).tag == Motion::Hyperbolic; }

/// Random hyperbolic element of G (a subgroup of SL2(Z)) built from its Schreier generators.
inline GroupElement random_hyperbolic(const std::vector<GroupElement>& gens, std::mt19937_64& rng, int length) {
    for (;;) {
        GroupElement g = random_word(gens, rng, length);
        if (hyperbolic(g)) return g;
    }
}

}  // namespace radsym::testing
