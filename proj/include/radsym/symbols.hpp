#pragma once

// Generalized Dedekind and Rademacher symbols on congruence groups.
//
// Gamma(N) symbols come from Takada's explicit formula, whose only
// transcendental input is the table of constants C_{N,j}; these are computed
// from Dirichlet L-values at s = 2 (Hurwitz zeta by Euler-Maclaurin) and the
// resulting symbol values are recovered as rationals. Symbols on larger
// groups are obtained by cusp transport and by summing over cosets of a
// normal subgroup.
//
// Normalization: the scaling map of a cusp of width w is
// A diag(sqrt w, 1/sqrt w), so Psi_a(A T^{kw} A^-1) = k.

#include "radsym/group_element.hpp"
#include "radsym/modgroup.hpp"
#include "radsym/real.hpp"
#include "radsym/types.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

namespace radsym {

struct PrecisionCtx {
    unsigned digits = 60;     // decimal digits of the reported values
    unsigned guard_digits = 20;
    Int denom_bound = 0;      // reconstruction bound; 0 selects 12 N [SL2(Z):Gamma(N)] 2^10
    long direct_limit = 200000;  // largest |c| N summed term by term in Takada's formula

    void validate() const;
    unsigned working_digits() const { return digits + guard_digits; }
    /// Residual accepted by rational reconstruction: 10^(-digits/2).
    double tolerance() const;
    Int bound_for(long level) const;
};

class SymbolValue {
public:
    enum class Kind { Exact, Approx, Reconstructed };

    SymbolValue() = default;
    static SymbolValue exact(Rat v);
    static SymbolValue approx(Real v, double error);
    static SymbolValue reconstructed(Rat v, double residual);

    Kind kind() const { return kind_; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_rational() const { return kind_ != Kind::Approx; }
    /// Throws PrecisionError for approximate values.
    const Rat& rational() const;
    Real to_real(unsigned digits) const;
    /// Error bound (Approx), reconstruction residual (Reconstructed), or 0.
    double error() const { return err_; }
    std::string kind_name() const;
    /// "p/q" for rational values, a decimal approximation otherwise.
    std::string to_string(unsigned digits = 30) const;

    SymbolValue operator-() const;
    friend SymbolValue operator+(const SymbolValue& x, const SymbolValue& y);
    friend SymbolValue operator-(const SymbolValue& x, const SymbolValue& y);
    friend SymbolValue operator*(const Rat& s, const SymbolValue& x);
    SymbolValue& operator+=(const SymbolValue& y) { return *this = *this + y; }

private:
    Kind kind_ = Kind::Exact;
    Rat rat_{0};
    Real real_;
    double err_ = 0;
};

// ---------------------------------------------------------------- special values

/// B_0 .. B_n (B_1 = -1/2).
std::vector<Rat> bernoulli_numbers(unsigned n);
/// zeta(2, x) = sum_{k>=0} (x+k)^-2 for rational x > 0, with an error bound.
Real hurwitz_zeta2(const Rat& x, unsigned digits, double* error = nullptr);

struct TakadaConstant {
    long N = 0;
    long j = 0;
    Real value;
    double error = 0;
};

/// C_{N,j} through the character decomposition of sum_{n = b mod N} mu(n)/n^2.
TakadaConstant takada_C(long N, long j, const PrecisionCtx& ctx = {});
/// All C_{N,j}, j = 0..N-1, sharing one set of L-values.
std::vector<TakadaConstant> takada_constants(long N, const PrecisionCtx& ctx = {});

struct MobiusEstimate {
    double value = 0;
    double tail_bound = 0;
};
/// C_{N,j} from the Moebius series truncated at n <= cutoff (low precision).
MobiusEstimate takada_C_mobius(long N, long j, long cutoff);

struct Reconstruction {
    Rat value;
    double residual = 0;
};
/// First continued-fraction convergent p/q of x with q <= bound and |x - p/q| < tol.
std::optional<Reconstruction> reconstruct_rational(const Real& x, const Int& bound, double tol);

// ---------------------------------------------------------------- Gamma(N) at infinity

/// Takada's symbol Phi_T on Gamma(N) (scaling map the identity). Its cocycle
/// constant is N pi/V(Gamma(N)); the width-normalized Dedekind symbol is Phi_T / N.
class TakadaEvaluator {
public:
    TakadaEvaluator(long N, const PrecisionCtx& ctx);

    long level() const { return n_; }
    const PrecisionCtx& context() const { return ctx_; }
    /// N pi/V(Gamma(N)).
    const Rat& lambda() const { return lambda_; }
    const std::vector<TakadaConstant>& constants() const { return c_; }
    bool exact_constants() const { return n_ == 2; }

    /// Direct sum for small |c| N, cocycle walk over the coset space otherwise.
    SymbolValue phi(const GroupElement& g) const;
    SymbolValue phi_direct(const GroupElement& g) const;
    SymbolValue phi_cocycle(const GroupElement& g) const;
    /// Psi^{Gamma(N)}_inf = (Phi_T - lambda sign(c(a+d))) / N.
    SymbolValue psi(const GroupElement& g) const;

private:
    SymbolValue finish(const Real& value, double error) const;
    SymbolValue piece(std::size_t coset, char kind, long r, const GroupElement& x) const;

    long n_;
    PrecisionCtx ctx_;
    Rat lambda0_, lambda_;
    Int bound_;
    std::vector<TakadaConstant> c_;
    CosetSpace space_;
    mutable std::mutex mutex_;
    mutable std::map<std::tuple<std::size_t, char, long>, SymbolValue> pieces_;
};

SymbolValue takada_phi(long N, const GroupElement& g, const PrecisionCtx& ctx = {});

// ---------------------------------------------------------------- engines

using SymbolFn = std::function<SymbolValue(const GroupElement&)>;

struct Evaluation {
    SymbolValue value;
    std::string method;
};

/// Psi and Phi for every cusp of one group. Thread-safe; results are cached
/// by cusp class and sign-normalized element.
class SymbolEngine {
public:
    explicit SymbolEngine(const GroupId& G, const PrecisionCtx& ctx = {});
    ~SymbolEngine();
    SymbolEngine(const SymbolEngine&) = delete;
    SymbolEngine& operator=(const SymbolEngine&) = delete;

    const GroupId& group() const;
    const PrecisionCtx& context() const;
    /// pi / V for the group: the cocycle constant of every Phi_a.
    const Rat& lambda() const;
    const std::vector<CuspInfo>& cusp_list() const;
    /// Index in cusp_list() of the class of c.
    std::size_t cusp_index(const Cusp& c) const;

    Evaluation evaluate(const Cusp& a, const GroupElement& g) const;
    SymbolValue psi(const Cusp& a, const GroupElement& g) const { return evaluate(a, g).value; }
    /// Phi_a = Psi_a + lambda sign(c(a+d)), entries read in the frame of the cusp.
    SymbolValue phi(const Cusp& a, const GroupElement& g) const;
    SymbolFn psi_fn(const Cusp& a) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Psi_a of a parabolic element: k when it is the k-th power of the
/// stabilizer generator of a cusp equivalent to a, otherwise from the engine.
SymbolValue symbol_parabolic(const SymbolEngine& engine, const Cusp& a, const GroupElement& g);
/// Phi_a of an elliptic element (or the identity) by the order-m recursion.
SymbolValue symbol_elliptic(const SymbolEngine& engine, const Cusp& a, const GroupElement& g);
/// Psi_a(g) := Psi_b(tau g tau^-1) for tau a = b.
SymbolFn transport_cusp(const GroupElement& tau, const Cusp& a, const Cusp& b, SymbolFn psi_b);
/// Sum of psi1(tau g tau^-1) over representatives of G1 \ G; g must be in G1.
SymbolValue lift_coset_sum(const GroupId& G1, const GroupId& G, const SymbolFn& psi1, const GroupElement& g);
SymbolValue psi_general(const GroupId& G, const Cusp& a, const GroupElement& g, const PrecisionCtx& ctx = {});

}  // namespace radsym
