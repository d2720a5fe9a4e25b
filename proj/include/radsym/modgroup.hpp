#pragma once

// Congruence groups and their combinatorics: membership, motion classes,
// S/T words, coset spaces inside PSL2(Z), cusps with scaling maps, coset
// representatives between nested groups, and Schreier generators.
//
// Everything works in the projective group: an element and its negative
// are the same motion, cosets are cosets of the image in PSL2(Z).

#include "radsym/group_element.hpp"
#include "radsym/types.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace radsym {

enum class Family { SL2Z, GammaN, Gamma0N, Gamma1N, Gamma0NPlus };

struct GroupId {
    Family family = Family::SL2Z;
    long level = 1;

    static GroupId sl2z() { return {Family::SL2Z, 1}; }
    static GroupId gamma(long n) { return make(Family::GammaN, n); }
    static GroupId gamma0(long n) { return make(Family::Gamma0N, n); }
    static GroupId gamma1(long n) { return make(Family::Gamma1N, n); }
    static GroupId gamma0_plus(long n) { return make(Family::Gamma0NPlus, n); }
    /// Validates level >= 1 and squarefree level for the Atkin-Lehner extension.
    static GroupId make(Family f, long n);
    /// Accepts sl2z | gamma | gamma0 | gamma1 | gamma0+ (also gamma0plus).
    static GroupId parse(const std::string& family, long level);

    /// Level 1 members of every family except the Atkin-Lehner one are SL2(Z).
    bool is_full_modular() const { return family != Family::Gamma0NPlus && level == 1; }
    /// True for the subgroups of SL2(Z) handled by coset tables.
    bool inside_sl2z() const { return family != Family::Gamma0NPlus; }
    std::string name() const;

    friend bool operator==(const GroupId&, const GroupId&) = default;
    friend auto operator<=>(const GroupId&, const GroupId&) = default;
};

enum class Motion { Identity, Elliptic, Parabolic, Hyperbolic };

struct MotionClass {
    Motion tag = Motion::Identity;
    int order = 0;  // projective order for elliptic motions

    std::string name() const;
    friend bool operator==(const MotionClass&, const MotionClass&) = default;
};

/// Point of P^1(Q) stored as a reduced pair (p:q) with q >= 0; (1:0) is infinity.
struct Cusp {
    Int p{1};
    Int q{0};

    Cusp() = default;
    Cusp(Int num, Int den);

    static Cusp infinity() { return {}; }
    bool is_infinity() const { return q == 0; }
    /// "inf" or "p/q" (integers print as "p/1" -> "p").
    std::string to_string() const;
    static Cusp parse(const std::string& text);

    friend bool operator==(const Cusp&, const Cusp&) = default;
    /// Canonical order: infinity first, then by denominator, then numerator.
    friend bool operator<(const Cusp& x, const Cusp& y);
};

/// sigma = base * diag(sqrt(width), 1/sqrt(width)), base in SL2(Z) with base(inf) = cusp.
struct ScalingMap {
    GroupElement base;
    Rat width{1};
};

struct CuspInfo {
    Cusp cusp;
    Rat width;
    ScalingMap sigma;
};

/// A matrix in SL2(Z) sending infinity to the cusp; deterministic choice.
GroupElement cusp_base(const Cusp& c);
Cusp apply(const GroupElement& g, const Cusp& c);

MotionClass classify(const GroupElement& g);
bool member(const GroupElement& g, const GroupId& G);

/// Index of the image of G in PSL2(Z); for the Atkin-Lehner extension this is
/// the (rational) generalized index mu(Gamma0(N)) / 2^omega(N).
Rat projective_index(const GroupId& G);
long omega(long n);
std::vector<long> prime_factors(long n);
bool squarefree(long n);

// ---------------------------------------------------------------- words

struct Syllable {
    char letter;  // 'S' or 'T'
    Int exponent;
    friend bool operator==(const Syllable&, const Syllable&) = default;
};

struct Word {
    std::vector<Syllable> syllables;
    int sign = 1;  // product of the syllables equals sign * g

    GroupElement evaluate() const;
    std::string to_string() const;
};

/// Euclidean reduction of g in SL2(Z) to a word T^{q1} S T^{q2} S ... equal to +-g.
Word word_decompose(const GroupElement& g);

// ---------------------------------------------------------------- cosets

/// Right cosets of the image of G in PSL2(Z), with the permutation action of
/// S and T. Representatives come from a breadth-first search over S, T, T^-1
/// starting at the identity coset (index 0).
class CosetSpace {
public:
    explicit CosetSpace(const GroupId& G);

    const GroupId& group() const { return group_; }
    std::size_t size() const { return reps_.size(); }
    const GroupElement& rep(std::size_t i) const { return reps_[i]; }
    std::size_t act_S(std::size_t i) const { return s_[i]; }
    std::size_t act_T(std::size_t i) const { return t_[i]; }
    std::size_t act_Tinv(std::size_t i) const { return tinv_[i]; }
    /// Coset containing g (which must lie in SL2(Z)).
    std::size_t index_of(const GroupElement& g) const;

    /// Orbit of <T> containing coset i; orbits correspond to cusp classes.
    std::size_t t_orbit(std::size_t i) const { return orbit_[i]; }
    std::size_t t_orbit_length(std::size_t i) const { return orbit_len_[orbit_[i]]; }
    std::size_t t_orbit_count() const { return orbit_len_.size(); }

    /// Fixed cosets of S and of ST: the elliptic points of order 2 and 3.
    std::size_t elliptic2() const;
    std::size_t elliptic3() const;
    long genus() const;

private:
    using Key = std::array<long, 4>;
    Key key(const GroupElement& g) const;

    GroupId group_;
    long n_;
    std::vector<GroupElement> reps_;
    std::vector<std::size_t> s_, t_, tinv_;
    std::vector<std::size_t> orbit_, orbit_len_;
    std::map<Key, std::size_t> index_;
};

std::vector<CuspInfo> cusps(const GroupId& G);
/// Position of the class of c in cusps(G).
std::size_t cusp_class(const GroupId& G, const Cusp& c);
/// Witness tau in G with tau(c1) = c2, if the cusps are G-equivalent.
std::optional<GroupElement> cusp_equivalent(const GroupId& G, const Cusp& c1, const Cusp& c2);

/// Atkin-Lehner representatives W_e (e || N, increasing e) of Gamma0(N)\Gamma0(N)+.
std::vector<GroupElement> atkin_lehner(long n);

bool subgroup_of(const GroupId& G1, const GroupId& G);
/// Representatives tau of the cosets G1 tau making up G, sorted.
std::vector<GroupElement> cosets(const GroupId& G1, const GroupId& G);
/// Checks tau g tau^-1 in G1 over generators of G1 and coset representatives of G1 in G.
bool is_normal_subgroup(const GroupId& G1, const GroupId& G);

/// Schreier generators of G from its coset space; trivial and inverse
/// duplicates are removed.
class SchreierSystem {
public:
    explicit SchreierSystem(const GroupId& G);

    const std::vector<GroupElement>& generators() const { return gens_; }
    const CosetSpace& space() const { return space_; }

    struct Letter {
        std::size_t generator;
        int exponent;  // +1 or -1
    };
    /// Expresses g in G as a product of generators (up to sign).
    std::vector<Letter> rewrite(const GroupElement& g) const;
    static GroupElement evaluate(const std::vector<GroupElement>& gens, const std::vector<Letter>& w);

private:
    void record(std::size_t from, char letter);
    std::optional<Letter> lookup(const GroupElement& piece) const;

    CosetSpace space_;
    std::vector<GroupElement> gens_;
    std::map<GroupElement, Letter> table_;  // canonical piece -> letter
};

std::vector<GroupElement> schreier_generators(const GroupId& G);
/// Schreier generators, plus the Atkin-Lehner representatives for Gamma0(N)+.
std::vector<GroupElement> generating_set(const GroupId& G);

}  // namespace radsym
