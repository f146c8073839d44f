#pragma once

#include "knotsurg/exactmath.hpp"
#include "knotsurg/knotdiag.hpp"

#include <optional>
#include <string>

namespace knotsurg {

// Raw per-knot quantities: Conway coefficients and Jones h-coefficients.
struct KnotData {
    std::string name;
    Rational a2, a4, a6;
    Rational j3, j4;
    std::optional<Rational> v5;
};

// Finite-type invariants in the normalization used by the surgery formulas.
struct InvariantSet {
    std::string name;
    Rational a2, a4, a6, j3, j4;
    Rational v2, v3, v4, w4, v6;
    std::optional<Rational> v5;
};

InvariantSet lift(const KnotData& d);
InvariantSet lift_from_diagram(const PDCode& k, const std::string& name = "");
KnotData knot_data_from_diagram(const PDCode& k, const std::string& name = "");
InvariantSet with_v5(InvariantSet s, const Rational& v5);
// Invariants of the mirror image: odd-degree ones change sign.
InvariantSet mirror_invariants(const InvariantSet& s);

}  // namespace knotsurg
