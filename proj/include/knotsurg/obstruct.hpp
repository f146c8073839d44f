#pragma once

#include "knotsurg/dioph.hpp"
#include "knotsurg/lmo.hpp"
#include "knotsurg/vinv.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace knotsurg {

enum class Verdict { Obstructed, Passes, NotApplicable, Inconclusive };
std::string to_string(Verdict v);

struct Check {
    std::string statement;  // "NW", "T1.1.i", ..., "T1.10.ii"
    Verdict verdict = Verdict::NotApplicable;
    nlohmann::json evidence = nlohmann::json::object();
    std::string note;
};

struct ObstructionReport {
    std::string knot;
    std::string question;
    std::vector<Check> checks;
    Verdict overall = Verdict::NotApplicable;
    nlohmann::json to_json() const;
};

// User-asserted hypothesis; never verified.
struct EquivalenceAssumption {
    enum class Kind { Cn, OddCn };
    Kind kind = Kind::Cn;
    int n = 0;
    bool trivial = false;  // C_n-trivial (equivalent to the unknot)
    std::string str() const;
};

// Residues q in [1, p-1] with q^2 = -1 mod p; p = 1 gives {0}.
std::vector<long> nw_admissible(long p);
// gcd(p,q) = 1, q >= 1, q^2 = -1 mod |p|.
bool nw_slope_ok(const Integer& p, const Integer& q);

// Integer coefficients (A, B, C) of A p^2 - B q^2 = C assembled from the
// degree-3 cosmetic relation under a2 = v3 = 0.
struct CosmeticEquation {
    Integer A, B, C;
};
CosmeticEquation cosmetic_equation(const InvariantSet& k);

ObstructionReport purely_cosmetic(const InvariantSet& k, int members_checked = 8);
ObstructionReport chiral_cosmetic(const InvariantSet& k, const std::optional<Slope>& r,
                                  const std::optional<Slope>& r2, int max_height = 12);
ObstructionReport same_slope(const InvariantSet& k, const InvariantSet& k2, const Slope& r);
ObstructionReport lens_surgery(const InvariantSet& k, bool assume_non_torus,
                               const std::optional<Slope>& r = std::nullopt);
// mode 1: coefficient a_{2m+2} for C_{2m+2}-equivalent K, K'.
// mode 2: coefficient a_{4m+2} for a C_{4m+2}-trivial K (coeffs2 ignored).
ObstructionReport high_even(int mode, int m, const std::map<int, Rational>& coeffs,
                            const std::map<int, Rational>& coeffs2, const EquivalenceAssumption& assumption,
                            const std::string& knot = "");

struct SweepRow {
    std::string name;
    Rational a4, j4, a6;
};
struct SweepEntry {
    std::string name;
    CosmeticEquation eq;
    DiophResult dioph;
    ObstructionReport report;
};
struct SweepSummary {
    std::vector<SweepEntry> rows;
    int holds = 0;
    int inconclusive = 0;
    nlohmann::json to_json() const;
};
SweepSummary cor17_sweep(const std::vector<SweepRow>& table);

nlohmann::json dioph_to_json(const DiophResult& r);

}  // namespace knotsurg
