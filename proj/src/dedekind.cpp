#include "radsym/dedekind.hpp"

namespace radsym {

Rat sawtooth(const Rat& x) {
    if (x.get_den() == 1) return 0;
    Rat r = x - Rat(floor_div(x.get_num(), x.get_den())) - Rat(1, 2);
    r.canonicalize();
    return r;
}

Rat dedekind_sum(const Int& a_in, const Int& c_in) {
    if (c_in < 1) throw DomainError("dedekind_sum needs c >= 1");
    if (gcd(a_in, c_in) != 1) throw DomainError("dedekind_sum needs gcd(a, c) = 1");
    // s(a,c) + s(c,a) = -1/4 + (a^2 + c^2 + 1) / (12ac), applied down the Euclidean chain
    Int a = mod_pos(a_in, c_in), c = c_in;
    Rat total = 0;
    int sgn = 1;
    while (a != 0) {
        Rat term(a * a + c * c + 1, 12 * a * c);
        term.canonicalize();
        term -= Rat(1, 4);
        total += sgn * term;
        sgn = -sgn;
        Int r = mod_pos(c, a);
        c = a;
        a = r;
    }
    total.canonicalize();
    return total;
}

Rat dedekind_sum_direct(const Int& a, const Int& c) {
    if (c < 1) throw DomainError("dedekind_sum needs c >= 1");
    if (gcd(a, c) != 1) throw DomainError("dedekind_sum needs gcd(a, c) = 1");
    // ((k/c)) = (2k - c)/(2c) for 0 < k < c
    Int acc = 0;
    Int r = 0;
    const Int step = mod_pos(a, c);
    for (Int k = 1; k < c; ++k) {
        r += step;
        if (r >= c) r -= c;
        acc += (2 * k - c) * (2 * r - c);
    }
    return make_rat(acc, 4 * c * c);
}

Rat phi_classical(const GroupElement& g) {
    if (!g.is_sl2z()) throw DomainError("phi_classical needs an element of SL2(Z)");
    if (g.c() == 0) return make_rat(g.b(), g.d());
    const Int abs_c = abs(g.c());
    Rat r = make_rat(g.trace(), g.c()) - 12 * sign(g.c()) * dedekind_sum(g.a(), abs_c);
    r.canonicalize();
    return r;
}

Rat psi_classical(const GroupElement& g) {
    Rat r = phi_classical(g) - 3 * sign(Int(g.c() * g.trace()));
    r.canonicalize();
    return r;
}

Rat pi_over_volume(const GroupId& G) {
    Rat r = Rat(3) / projective_index(G);
    r.canonicalize();
    return r;
}

Int frame_c(const GroupElement& A, const GroupElement& g) {
    // lower-left entry of A^-1 g A without the content normalization
    const GroupElement Ai = A.inverse();
    return (Ai.c() * g.a() + Ai.d() * g.c()) * A.a() + (Ai.c() * g.b() + Ai.d() * g.d()) * A.c();
}

Rat cocycle_defect(const Rat& lambda, const GroupElement& A, const GroupElement& g1, const GroupElement& g2,
                   const Rat& phi1, const Rat& phi2, const Rat& phi12) {
    const int s = sign(frame_c(A, g1)) * sign(frame_c(A, g2)) * sign(frame_c(A, g1 * g2));
    Rat r = phi12 - phi1 - phi2 + lambda * s;
    r.canonicalize();
    return r;
}

Rat cocycle_defect(const GroupId& G, const Cusp& cusp, const GroupElement& g1, const GroupElement& g2,
                   const Rat& phi1, const Rat& phi2, const Rat& phi12) {
    return cocycle_defect(pi_over_volume(G), cusp_base(cusp), g1, g2, phi1, phi2, phi12);
}

Rat elliptic_phi(const Rat& lambda, const GroupElement& A, const GroupElement& g) {
    const MotionClass mc = classify(g);
    if (mc.tag == Motion::Identity) return 0;
    if (mc.tag != Motion::Elliptic) throw DomainError("elliptic_phi needs an elliptic element");
    const int m = mc.order;
    const int cg = sign(frame_c(A, g));
    long total = 0;
    GroupElement gk = g;
    for (int k = 1; k < m; ++k) {
        GroupElement gk1 = gk * g;
        total += cg * sign(frame_c(A, gk)) * sign(frame_c(A, gk1));
        gk = std::move(gk1);
    }
    Rat r = lambda * total / m;
    r.canonicalize();
    return r;
}

}  // namespace radsym
