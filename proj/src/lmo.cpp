#include "knotsurg/lmo.hpp"

#include <stdexcept>

namespace knotsurg {

Slope Slope::make(const Integer& p, const Integer& q) {
    if (p == 0) throw std::invalid_argument("slope with p = 0 is not a rational homology sphere");
    if (q == 0) throw std::invalid_argument("slope with q = 0");
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    Slope s{p / g, q / g};
    if (s.q < 0) {
        s.p = -s.p;
        s.q = -s.q;
    }
    return s;
}

Slope Slope::parse(const std::string& s) {
    Rational r = Rational::parse(s);
    return make(r.num(), r.den());
}

std::string Slope::str() const {
    return q == 1 ? p.get_str() : p.get_str() + "/" + q.get_str();
}

Rational lambda1_rel(const InvariantSet& k, const Slope& r) {
    return k.a2 * Rational(r.q) / (Rational(2) * Rational(r.p));
}

Rational lambda2_lens(const Integer& p) {
    if (p == 0) throw std::invalid_argument("lens space with p = 0");
    Rational ap(Integer(abs(p)));
    return Rational(1, 24) * (Rational(1) / (Rational(48) * ap * ap) - Rational(1, 48));
}

Rational lambda2(const InvariantSet& k, const Slope& r) {
    Rational x = Rational(r.q) / Rational(r.p);  // q/p
    Rational p2inv = Rational(1) / (Rational(r.p) * Rational(r.p));
    Rational quad = (Rational(7) * k.a2 * k.a2 - k.a2 - Rational(10) * k.a4) / Rational(8);
    return quad * x * x - k.v3 * x + k.a2 / Rational(48) * (Rational(1) - p2inv) + lambda2_lens(r.p);
}

Rational lambda2_v_form(const InvariantSet& k, const Slope& r) {
    Rational x = Rational(r.q) / Rational(r.p);
    Rational p2inv = Rational(1) / (Rational(r.p) * Rational(r.p));
    Rational quad = k.v2 * k.v2 + k.v2 / Rational(24) + Rational(5, 2) * k.v4;
    return quad * x * x - k.v3 * x + k.v2 / Rational(24) * (p2inv - Rational(1)) + lambda2_lens(r.p);
}

Lambda3Affine lambda3(const InvariantSet& k, const Slope& r) {
    const Rational &v2 = k.v2, &v3 = k.v3, &v4 = k.v4, &w4 = k.w4, &v6 = k.v6;
    Rational P(r.p), Q(r.q);
    Rational x = Q / P;
    Rational p2inv = Rational(1) / (P * P);
    Rational p3inv = p2inv / P;
    Lambda3Affine out;
    out.c1 = Rational(5, 2) * x * x;
    Rational t1 = Rational(35, 4) * v6 + Rational(5, 24) * v4 + Rational(10) * v2 * v4 +
                  Rational(4, 3) * v2 * v2 * v2 + Rational(1, 12) * v2 * v2;
    Rational t2 = Rational(5, 24) * v4 + Rational(1, 288) * v2 + Rational(1, 12) * v2 * v2;
    Rational t3 = Rational(2) * v3 * v2 + v3 / Rational(24);
    Rational t4 = w4 - v2 * v2 / Rational(12) - v2 / Rational(288) - Rational(5, 24) * v4;
    out.c0 = -t1 * x * x * x - t2 * Q * p3inv + t3 * x * x + v3 / Rational(24) * (p2inv - Rational(1)) -
             t4 * x + lambda3_lens(r.p);
    return out;
}

Rational lambda3_lens(const Integer& p) {
    if (p == 0) throw std::invalid_argument("lens space with p = 0");
    return Rational(0);
}

}  // namespace knotsurg
