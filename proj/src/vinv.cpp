#include "knotsurg/vinv.hpp"

#include "knotsurg/knotpoly.hpp"

#include <stdexcept>

namespace knotsurg {

InvariantSet lift(const KnotData& d) {
    if (!(d.j3 / Rational(6)).is_integer())
        throw std::invalid_argument("j3 = " + d.j3.str() + " is not a multiple of 6");
    InvariantSet s;
    s.name = d.name;
    s.a2 = d.a2;
    s.a4 = d.a4;
    s.a6 = d.a6;
    s.j3 = d.j3;
    s.j4 = d.j4;
    const Rational& a2 = d.a2;
    const Rational& a4 = d.a4;
    const Rational& a6 = d.a6;
    s.v2 = -a2 / Rational(2);
    s.v3 = -d.j3 / Rational(24);
    s.v4 = -a4 / Rational(2) - a2 / Rational(24) + a2 * a2 / Rational(4);
    s.w4 = d.j4 / Rational(96) + Rational(3, 32) * a4 - Rational(9, 2) * a2 * a2;
    s.v6 = -a6 / Rational(2) - a4 / Rational(12) - a2 / Rational(720) + a2 * a2 / Rational(24) +
           a2 * a4 / Rational(2) - a2 * a2 * a2 / Rational(6);
    s.v5 = d.v5;
    return s;
}

KnotData knot_data_from_diagram(const PDCode& k, const std::string& name) {
    PolySet p = compute_polys(k, 4);
    auto conway = [&](size_t i) { return i < p.conway.size() ? p.conway[i] : Rational(0); };
    if (conway(0) != Rational(1)) throw std::logic_error("Conway a0 must be 1 for a knot");
    KnotData d;
    d.name = name;
    d.a2 = conway(1);
    d.a4 = conway(2);
    d.a6 = conway(3);
    d.j3 = p.j[3];
    d.j4 = p.j[4];
    return d;
}

InvariantSet lift_from_diagram(const PDCode& k, const std::string& name) {
    return lift(knot_data_from_diagram(k, name));
}

InvariantSet with_v5(InvariantSet s, const Rational& v5) {
    s.v5 = v5;
    return s;
}

InvariantSet mirror_invariants(const InvariantSet& s) {
    InvariantSet m = s;
    m.j3 = -s.j3;
    m.v3 = -s.v3;
    if (s.v5) m.v5 = -*s.v5;
    return m;
}

}  // namespace knotsurg
