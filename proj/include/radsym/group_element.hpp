#pragma once

#include "radsym/types.hpp"

#include <array>
#include <iosfwd>
#include <string>

namespace radsym {

/// Integer matrix [[a,b],[c,d]] of determinant e > 0, standing for the real
/// matrix e^{-1/2}[[a,b],[c,d]] of determinant one. Entries are kept
/// primitive (content 1), so each real matrix has exactly two
/// representations, g and -g. Ordinary SL2(Z) elements have e = 1.
class GroupElement {
public:
    GroupElement();  // identity
    GroupElement(Int a, Int b, Int c, Int d);
    GroupElement(Int a, Int b, Int c, Int d, Int e);

    static GroupElement identity() { return {}; }
    static GroupElement S() { return {0, -1, 1, 0}; }
    static GroupElement T(const Int& n = 1) { return {1, n, 0, 1}; }

    const Int& a() const { return a_; }
    const Int& b() const { return b_; }
    const Int& c() const { return c_; }
    const Int& d() const { return d_; }
    const Int& e() const { return e_; }

    Int trace() const { return a_ + d_; }
    bool is_sl2z() const { return e_ == 1; }
    /// +-identity as a real matrix.
    bool is_scalar() const { return b_ == 0 && c_ == 0 && a_ == d_; }

    GroupElement inverse() const;
    GroupElement operator-() const;
    GroupElement pow(long n) const;

    /// Sign-normalized representative: c > 0, or c = 0 and d > 0.
    GroupElement canonical() const;
    bool projectively_equal(const GroupElement& o) const;

    /// Moebius action on a rational point given as a projective pair (p:q).
    std::array<Int, 2> act(const Int& p, const Int& q) const;

    /// "a,b,c,d" when e = 1, "a,b,c,d;e" otherwise.
    std::string to_string() const;
    static GroupElement parse(const std::string& text);

    std::array<Int, 4> entries() const { return {a_, b_, c_, d_}; }

    friend bool operator==(const GroupElement& x, const GroupElement& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_ && x.e_ == y.e_;
    }
    friend bool operator<(const GroupElement& x, const GroupElement& y);
    friend GroupElement operator*(const GroupElement& x, const GroupElement& y);
    friend std::ostream& operator<<(std::ostream& os, const GroupElement& g);

private:
    void normalize();

    Int a_{1}, b_{0}, c_{0}, d_{1}, e_{1};
};

}  // namespace radsym
