#pragma once

// Periods of weight-2 Eisenstein series and cuspidal divisor classes.
//
// For a degree-zero divisor D = sum m_i (a_i) the period of gamma is
// I(gamma) = sum m_i Psi_{a_i}(gamma); it vanishes on elliptic elements and
// equals k m_b on the k-th power of the stabilizer generator of b. The class
// of D has order n exactly when n I(gamma) is an integer on all generators.

#include "radsym/group_element.hpp"
#include "radsym/modgroup.hpp"
#include "radsym/symbols.hpp"
#include "radsym/types.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radsym {

using Complex = std::complex<double>;

// ---------------------------------------------------------------- q-series

/// log eta(z) = pi i z / 12 + sum log(1 - q^n), a holomorphic branch on H.
Complex eta_log(Complex z, double tol = 1e-15);
/// Phi(g) read off the transformation law of log eta at z = (-d + i)/c.
Int phi_from_eta(const GroupElement& g);
/// E2(z) - 3/(pi Im z) with E2 = 1 - 24 sum sigma_1(n) q^n.
Complex e2_value(Complex z, double tol = 1e-15);
/// sum_{d | n} 1/d.
Rat phi_fourier_coefficient(long n);

struct NumericPeriod {
    double value = 0;
    double error = 0;       // quadrature estimate plus series truncation
    double imaginary = 0;   // should vanish
    GroupElement integrated;  // g itself or a conjugate with a higher axis
};
/// Integral of e2_value along the axis of g over one translation length.
/// Equals Psi(g) for hyperbolic g in SL2(Z).
NumericPeriod period_numeric(const GroupElement& g, double tol = 1e-10);

/// Psi(g) - Psi([[a, bN], [c/N, d]]) = (N - 1)(Psi_0 - Psi_inf)(g) on Gamma0(N), N prime.
Rat x0_period_exact(long N, const GroupElement& g);

// ---------------------------------------------------------------- divisors

class Divisor {
public:
    Divisor() = default;
    /// Keys are moved to the representatives listed by cusps(G); classes may not repeat.
    Divisor(const GroupId& G, const std::vector<std::pair<Cusp, long>>& terms);
    /// "0:-1,inf:1"; the empty string is the zero divisor.
    static Divisor parse(const GroupId& G, const std::string& text);

    const GroupId& group() const { return group_; }
    const std::map<Cusp, long>& terms() const { return terms_; }
    long multiplicity(const Cusp& canonical) const;
    long degree() const;
    bool is_zero() const;
    std::string to_string() const;

private:
    GroupId group_ = GroupId::sl2z();
    std::map<Cusp, long> terms_;  // nonzero multiplicities only
};

struct PeriodValue {
    SymbolValue value;
    GroupElement element;
    Divisor divisor;
    std::string kind;  // identity, elliptic, parabolic, hyperbolic
};

/// I(g) for one element of the divisor's group.
PeriodValue period_of(const SymbolEngine& engine, const Divisor& D, const GroupElement& g);
/// Periods over the elements of gens, evaluated on up to `workers` threads.
std::vector<PeriodValue> divisor_periods(const SymbolEngine& engine, const Divisor& D,
                                         const std::vector<GroupElement>& gens, unsigned workers = 1);
/// Periods over generating_set(G).
std::vector<PeriodValue> divisor_periods(const GroupId& G, const Divisor& D, const PrecisionCtx& ctx = {},
                                         unsigned workers = 1);

// ---------------------------------------------------------------- certificates

struct TorsionCertificate {
    enum class Status { Exact, ReconstructedVerified, NonRational };

    GroupId group = GroupId::sl2z();
    Divisor divisor;
    std::vector<GroupElement> generators;
    std::vector<PeriodValue> periods;
    std::optional<Int> order;  // absent with NonRational
    Status status = Status::Exact;
    std::vector<std::string> notes;  // failed cross-checks

    std::string status_name() const;
};

TorsionCertificate torsion_certificate(const SymbolEngine& engine, const Divisor& D, unsigned workers = 1);
TorsionCertificate torsion_certificate(const GroupId& G, const Divisor& D, const PrecisionCtx& ctx = {},
                                       unsigned workers = 1);

/// Recomputes every listed period and the order; returns the discrepancies.
std::vector<std::string> recheck_certificate(const SymbolEngine& engine, const TorsionCertificate& cert);

}  // namespace radsym
