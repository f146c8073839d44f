#pragma once

#include "knotsurg/exactmath.hpp"
#include "knotsurg/vinv.hpp"

#include <string>

namespace knotsurg {

// Surgery slope p/q with gcd(p,q) = 1 and q > 0.
struct Slope {
    Integer p, q;
    static Slope make(const Integer& p, const Integer& q);
    static Slope parse(const std::string& s);  // "p/q" or "p"
    Rational value() const { return Rational(p, q); }
    std::string str() const;
    friend bool operator==(const Slope&, const Slope&) = default;
};

Rational lambda1_rel(const InvariantSet& k, const Slope& r);
// Degree-2 invariant of the lens space L(p,q); depends on |p| only.
Rational lambda2_lens(const Integer& p);
// Degree-2 invariant of S^3(K, p/q), in terms of a2, a4, v3.
Rational lambda2(const InvariantSet& k, const Slope& r);
// The same quantity written through v2, v3, v4.
Rational lambda2_v_form(const InvariantSet& k, const Slope& r);

// lambda3 = c1 * v5 + c0.
struct Lambda3Affine {
    Rational c1, c0;
    Rational at(const Rational& v5) const { return c1 * v5 + c0; }
};
Lambda3Affine lambda3(const InvariantSet& k, const Slope& r);
// Degree-3 lens space contribution; identically zero.
Rational lambda3_lens(const Integer& p);

}  // namespace knotsurg
