#include "radsym/group_element.hpp"

#include <ostream>
#include <regex>
#include <sstream>
#include <tuple>

namespace radsym {

Rat parse_rat(const std::string& text) {
    static const std::regex re(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) throw DomainError("malformed rational: '" + text + "'");
    Int num(m[1].str());
    Int den = m[2].matched ? Int(m[2].str()) : Int(1);
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return make_rat(num, den);
}

GroupElement::GroupElement() = default;

GroupElement::GroupElement(Int a, Int b, Int c, Int d)
    : GroupElement(std::move(a), std::move(b), std::move(c), std::move(d), Int(1)) {}

GroupElement::GroupElement(Int a, Int b, Int c, Int d, Int e)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)), e_(std::move(e)) {
    if (e_ <= 0) throw DomainError("scale e must be positive");
    if (a_ * d_ - b_ * c_ != e_)
        throw DomainError("determinant of [" + to_string() + "] differs from e = " + e_.get_str());
    normalize();
}

void GroupElement::normalize() {
    Int g = gcd(gcd(a_, b_), gcd(c_, d_));
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
        d_ /= g;
        e_ /= g * g;
    }
}

GroupElement GroupElement::inverse() const {
    GroupElement r;
    r.a_ = d_;
    r.b_ = -b_;
    r.c_ = -c_;
    r.d_ = a_;
    r.e_ = e_;
    return r;
}

GroupElement GroupElement::operator-() const {
    GroupElement r = *this;
    r.a_ = -a_;
    r.b_ = -b_;
    r.c_ = -c_;
    r.d_ = -d_;
    return r;
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    GroupElement r;
    r.a_ = x.a_ * y.a_ + x.b_ * y.c_;
    r.b_ = x.a_ * y.b_ + x.b_ * y.d_;
    r.c_ = x.c_ * y.a_ + x.d_ * y.c_;
    r.d_ = x.c_ * y.b_ + x.d_ * y.d_;
    r.e_ = x.e_ * y.e_;
    r.normalize();
    return r;
}

GroupElement GroupElement::pow(long n) const {
    GroupElement base = n < 0 ? inverse() : *this;
    unsigned long k = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
    GroupElement acc;
    while (k) {
        if (k & 1UL) acc = acc * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return acc;
}

GroupElement GroupElement::canonical() const {
    if (c_ > 0 || (c_ == 0 && d_ > 0)) return *this;
    return -*this;
}

bool GroupElement::projectively_equal(const GroupElement& o) const {
    return canonical() == o.canonical();
}

std::array<Int, 2> GroupElement::act(const Int& p, const Int& q) const {
    Int np = a_ * p + b_ * q;
    Int nq = c_ * p + d_ * q;
    Int g = gcd(np, nq);
    if (g != 0) {
        np /= g;
        nq /= g;
    }
    if (nq < 0 || (nq == 0 && np < 0)) {
        np = -np;
        nq = -nq;
    }
    return {np, nq};
}

bool operator<(const GroupElement& x, const GroupElement& y) {
    return std::tie(x.a_, x.b_, x.c_, x.d_, x.e_) < std::tie(y.a_, y.b_, y.c_, y.d_, y.e_);
}

std::string GroupElement::to_string() const {
    std::string s = a_.get_str() + "," + b_.get_str() + "," + c_.get_str() + "," + d_.get_str();
    if (e_ != 1) s += ";" + e_.get_str();
    return s;
}

GroupElement GroupElement::parse(const std::string& text) {
    static const std::regex re(
        R"(\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*,\s*([+-]?\d+)\s*(?:;\s*(\d+)\s*)?)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw DomainError("malformed matrix '" + text + "' (expected a,b,c,d or a,b,c,d;e)");
    Int e = m[5].matched ? Int(m[5].str()) : Int(1);
    return GroupElement(Int(m[1].str()), Int(m[2].str()), Int(m[3].str()), Int(m[4].str()), e);
}

std::ostream& operator<<(std::ostream& os, const GroupElement& g) { return os << "[" << g.to_string() << "]"; }

}  // namespace radsym
