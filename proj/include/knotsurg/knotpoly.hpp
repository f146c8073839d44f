#pragma once

#include "knotsurg/exactmath.hpp"
#include "knotsurg/knotdiag.hpp"

#include <vector>

namespace knotsurg {

inline constexpr size_t kMaxStateSumCrossings = 16;

// Kauffman bracket in the variable A, normalized so the 0-crossing unknot is 1.
LaurentPoly kauffman_bracket(const PDCode& k);
// Jones polynomial V(t), V(unknot) = 1.
LaurentPoly jones(const PDCode& k);
// Alexander polynomial, symmetric with Delta(1) = 1.
LaurentPoly alexander(const PDCode& k);
// Conway coefficients [a0, a2, a4, ...] up to the degree of Delta.
std::vector<Rational> conway_coeffs(const LaurentPoly& delta);
// j_0..j_order with V(e^h) = sum j_n h^n.
std::vector<Rational> jones_h_coeffs(const LaurentPoly& v, int order);
// Coefficients d_0..d_order of -1/2 log Delta(e^x); odd ones vanish.
std::vector<Rational> dseries(const LaurentPoly& delta, int order);

struct PolySet {
    LaurentPoly jones;
    LaurentPoly alexander;
    std::vector<Rational> conway;  // a0, a2, a4, ... (index i holds a_{2i})
    std::vector<Rational> j;       // j_0..j_order
    std::vector<Rational> d;       // d_0..d_order
};

PolySet compute_polys(const PDCode& k, int order = 6);

}  // namespace knotsurg
