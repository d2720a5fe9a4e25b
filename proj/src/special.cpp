#include "radsym/symbols.hpp"

#include <cmath>
#include <functional>
#include <numeric>

namespace radsym {

std::vector<Rat> bernoulli_numbers(unsigned n) {
    // sum_{k=0}^{m} binom(m+1, k) B_k = 0
    std::vector<Rat> b(n + 1);
    b[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        if (m > 1 && m % 2 == 1) {
            b[m] = 0;
            continue;
        }
        Rat acc = 0;
        Int binom = 1;  // binom(m+1, k)
        for (unsigned k = 0; k < m; ++k) {
            if (b[k] != 0) acc += Rat(binom) * b[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        b[m] = -acc / Rat(m + 1);
        b[m].canonicalize();
    }
    return b;
}

Real hurwitz_zeta2(const Rat& x, unsigned digits, double* error) {
    if (x <= 0) throw DomainError("hurwitz_zeta2 needs x > 0");
    const unsigned wd = digits + 10;
    const long M = static_cast<long>(digits) + 10;
    Real sum(0, wd);
    for (long k = 0; k < M; ++k) {
        Real t = real(x + k, wd);
        sum += 1 / (t * t);
    }
    // Euler-Maclaurin tail: 1/y + 1/(2y^2) + sum_k B_{2k} / y^{2k+1}, y = x + M
    const Real y = real(x + M, wd);
    sum += 1 / y + 1 / (2 * y * y);
    const Real eps = real(Rat(1), wd) / pow(real(10, wd), static_cast<long>(digits + 5));
    const Real y2 = y * y;
    Real ypow = y2 * y;
    std::vector<Rat> b = bernoulli_numbers(2);
    double bound = 0;
    for (unsigned k = 1;; ++k) {
        if (b.size() <= 2 * k) b = bernoulli_numbers(4 * k + 2);
        Real term = real(b[2 * k], wd) / ypow;
        if (abs(term) < eps) {
            bound = std::fabs(term.convert_to<double>());
            break;
        }
        if (k > 4 * digits) throw PrecisionError("Euler-Maclaurin expansion did not converge");
        sum += term;
        ypow *= y2;
    }
    if (error) *error = bound + pow10_neg(digits + 5);
    return Real(sum, digits);
}

namespace {

// Dirichlet characters mod N: chi_t(r) = e(sum_i t_i log_i(r) / ord_i) over a
// decomposition of (Z/N)* into cyclic factors, one or two per prime power.
struct CharacterTable {
    long n;
    std::vector<long> units;
    std::vector<long> orders;
    std::vector<std::vector<long>> logs;  // logs[u][i] for units[u]
    long exponent = 1;                    // lcm of orders

    explicit CharacterTable(long N) : n(N) {
        struct Factor {
            long modulus;
            long order;
            std::function<long(long)> log;
        };
        std::vector<Factor> factors;
        for (long p : prime_factors(N)) {
            long q = 1;
            while (N % (q * p) == 0) q *= p;
            if (p == 2) {
                if (q == 2) continue;
                // (Z/2^k)* = <-1> x <5>
                factors.push_back({q, 2, [q](long r) { return r % 4 == 1 ? 0L : 1L; }});
                if (q >= 8) {
                    const long ord = q / 4;
                    factors.push_back({q, ord, [q, ord](long r) {
                                           const long s = r % 4 == 1 ? r : q - r;
                                           long v = 1;
                                           for (long e = 0; e < ord; ++e, v = v * 5 % q)
                                               if (v == s) return e;
                                           return -1L;
                                       }});
                }
            } else {
                const long phi = q / p * (p - 1);
                long g = 2;
                for (;; ++g) {
                    if (std::gcd(g, p) != 1) continue;
                    bool primitive = true;
                    for (long f : prime_factors(phi)) {
                        long v = 1;
                        for (long e = 0; e < phi / f; ++e) v = v * g % q;
                        if (v == 1) primitive = false;
                    }
                    if (primitive) break;
                }
                factors.push_back({q, phi, [q, g, phi](long r) {
                                       long v = 1;
                                       for (long e = 0; e < phi; ++e, v = v * g % q)
                                           if (v == r % q) return e;
                                       return -1L;
                                   }});
            }
        }
        for (const auto& f : factors) {
            orders.push_back(f.order);
            exponent = std::lcm(exponent, f.order);
        }
        for (long r = 1; r <= N; ++r) {
            if (std::gcd(r, N) != 1) continue;
            units.push_back(r % N);
            std::vector<long> l;
            for (const auto& f : factors) l.push_back(f.log(r % f.modulus));
            logs.push_back(std::move(l));
        }
    }

    std::size_t count() const { return units.size(); }

    /// Exponent m of chi_t(units[u]) = e(m / exponent).
    long phase(const std::vector<long>& t, std::size_t u) const {
        long m = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) m += t[i] * logs[u][i] * (exponent / orders[i]);
        return m % exponent;
    }

    std::vector<std::vector<long>> all() const {
        std::vector<std::vector<long>> out{std::vector<long>(orders.size(), 0)};
        for (std::size_t i = 0; i < orders.size(); ++i) {
            std::vector<std::vector<long>> next;
            for (const auto& t : out)
                for (long v = 0; v < orders[i]; ++v) {
                    auto s = t;
                    s[i] = v;
                    next.push_back(std::move(s));
                }
            out = std::move(next);
        }
        return out;
    }
};

struct Complex {
    Real re, im;
};

Complex mul(const Complex& x, const Complex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

Complex div(const Complex& x, const Complex& y) {
    Real den = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / den, (x.im * y.re - x.re * y.im) / den};
}

long inverse_mod(long a, long n) {
    for (long x = 1; x < n; ++x)
        if (a * x % n == 1) return x;
    return 1;
}

}  // namespace

std::vector<TakadaConstant> takada_constants(long N, const PrecisionCtx& ctx) {
    if (N < 2) throw DomainError("Takada constants need N >= 2");
    ctx.validate();
    const unsigned wd = ctx.working_digits() + 10;
    std::vector<TakadaConstant> out(N);
    if (N == 2) {
        for (long j = 0; j < 2; ++j) out[j] = {2, j, real(j == 0 ? 1 : -1, wd), 0.0};
        return out;
    }
    const CharacterTable chars(N);
    const long phi = static_cast<long>(chars.count());

    double zeta_err = 0;
    std::vector<Real> zeta(chars.count());
    for (std::size_t u = 0; u < chars.count(); ++u) {
        double e = 0;
        const long r = chars.units[u] == 0 ? N : chars.units[u];
        zeta[u] = hurwitz_zeta2(make_rat(r, N), wd, &e);
        zeta_err = std::max(zeta_err, e);
    }
    std::vector<Complex> roots(chars.exponent);
    for (long m = 0; m < chars.exponent; ++m)
        roots[m] = {cos_2pi(make_rat(m, chars.exponent), wd), sin_2pi(make_rat(m, chars.exponent), wd)};

    // A(b) = sum_{n = b (N)} mu(n)/n^2 = (1/phi) sum_chi conj(chi(b)) / L(2, chi)
    std::vector<Real> A(chars.count(), real(0, wd));
    const Real n2 = real(N * N, wd);
    for (const auto& t : chars.all()) {
        Complex L{real(0, wd), real(0, wd)};
        for (std::size_t u = 0; u < chars.count(); ++u) {
            const Complex& w = roots[chars.phase(t, u)];
            L.re += w.re * zeta[u];
            L.im += w.im * zeta[u];
        }
        L.re /= n2;
        L.im /= n2;
        const Complex one{real(1, wd), real(0, wd)};
        const Complex inv = div(one, L);
        for (std::size_t u = 0; u < chars.count(); ++u) {
            const Complex& w = roots[chars.phase(t, u)];
            const Complex conj{w.re, -w.im};
            A[u] += mul(conj, inv).re;
        }
    }
    for (auto& a : A) a /= phi;

    Real pref = real_pi(wd);
    pref = pref * pref / 6;
    for (long p : prime_factors(N)) pref *= real(Rat(p * p - 1, p * p), wd);

    std::vector<long> inverse(N, 0);
    for (std::size_t u = 0; u < chars.count(); ++u) inverse[chars.units[u]] = inverse_mod(chars.units[u], N);
    std::vector<std::size_t> position(N, 0);
    for (std::size_t u = 0; u < chars.count(); ++u) position[chars.units[u]] = u;

    // 1/L(2, chi) is at most zeta(2), so the zeta errors propagate with a modest factor
    const double err = 1e3 * zeta_err * static_cast<double>(N) + pow10_neg(ctx.working_digits() + 5);
    for (long j = 0; j < N; ++j) {
        Real s(0, wd);
        for (std::size_t u = 0; u < chars.count(); ++u) {
            const long a = chars.units[u];
            s += cos_2pi(make_rat(a * j, N), wd) * A[position[inverse[a]]];
        }
        Real v = pref * s;
        out[j] = {N, j, Real(v, wd), err};
    }
    return out;
}

TakadaConstant takada_C(long N, long j, const PrecisionCtx& ctx) {
    auto all = takada_constants(N, ctx);
    TakadaConstant c = all[static_cast<std::size_t>(((j % N) + N) % N)];
    c.j = j;
    return c;
}

MobiusEstimate takada_C_mobius(long N, long j, long cutoff) {
    if (N < 2) throw DomainError("Takada constants need N >= 2");
    if (cutoff < N) throw DomainError("cutoff must exceed N");
    // linear sieve for the Moebius function
    std::vector<signed char> mu(cutoff + 1, 1);
    std::vector<int> primes;
    std::vector<bool> composite(cutoff + 1, false);
    mu[0] = 0;
    for (long i = 2; i <= cutoff; ++i) {
        if (!composite[i]) {
            primes.push_back(static_cast<int>(i));
            mu[i] = -1;
        }
        for (int p : primes) {
            const long ip = i * p;
            if (ip > cutoff) break;
            composite[ip] = true;
            if (i % p == 0) {
                mu[ip] = 0;
                break;
            }
            mu[ip] = static_cast<signed char>(-mu[i]);
        }
    }
    std::vector<long double> cls(N, 0.0L);
    for (long n = cutoff; n >= 1; --n)
        if (mu[n]) cls[n % N] += mu[n] / (static_cast<long double>(n) * n);
    long double pref = M_PIl * M_PIl / 6;
    for (long p : prime_factors(N)) pref *= 1.0L - 1.0L / (p * p);
    long double s = 0;
    long units = 0;
    for (long a = 1; a < N; ++a) {
        if (std::gcd(a, N) != 1) continue;
        ++units;
        s += cosl(2 * M_PIl * static_cast<long double>((a * j) % N) / N) * cls[inverse_mod(a, N)];
    }
    // each residue class tail is at most 1/(N (cutoff - N)) + 1/cutoff^2
    const double tail = static_cast<double>(pref) * static_cast<double>(units) *
                        (1.0 / (static_cast<double>(N) * static_cast<double>(cutoff - N)) +
                         1.0 / (static_cast<double>(cutoff) * static_cast<double>(cutoff)));
    return {static_cast<double>(pref * s), tail};
}

}  // namespace radsym
