#pragma once

#include "knotsurg/exactmath.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knotsurg {

// Thrown when a continued-fraction expansion or orbit search exceeds its budget.
class DiophBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class DiophVerdict { Unsolvable, Finite, Infinite };
std::string to_string(DiophVerdict v);

struct DiophWitness {
    enum class Kind { None, Modulus, Definite, Degenerate, Irrational, Divisors, Classes };
    Kind kind = Kind::None;
    Integer modulus = 0;   // Modulus: no residue solution mod this
    Integer p_bound = 0;   // Definite: |p| <= p_bound, 1 <= q <= q_bound
    Integer q_bound = 0;
    std::string detail;
};
std::string to_string(DiophWitness::Kind k);

// A one-parameter family of solutions (p, q) with q >= 1.
struct DiophFamily {
    enum class Kind {
        Pell,    // a p + q sqrt(D) = +-(a p0 + q0 sqrt(D)) (u + v sqrt(D))^t, t in Z
        Ray,     // (p, q) = t (p0, q0), t >= 1, with either sign of p0 if stated
        PFree,   // q = q0, p arbitrary
        QFree,   // p = +-p0, q >= 1 arbitrary
        All      // every pair solves
    };
    Kind kind = Kind::Pell;
    Integer p0 = 0, q0 = 0;
    Integer u = 1, v = 0;
    bool both_signs = false;  // Ray: (-p0, q0) generates a family too
};
std::string to_string(DiophFamily::Kind k);

struct DiophResult {
    DiophVerdict verdict = DiophVerdict::Unsolvable;
    Integer a, b, c;     // as given
    Integer ra, rb, rc;  // after removing gcd and fixing ra >= 0
    Integer D = 0, N = 0;     // x^2 - D y^2 = N with x = ra p, y = q
    std::vector<std::pair<Integer, Integer>> solutions;  // Finite: every (p, q), q >= 1
    std::vector<DiophFamily> families;                   // Infinite
    std::optional<std::pair<Integer, Integer>> unit;     // fundamental solution of u^2 - D v^2 = 1
    DiophWitness witness;                                // Unsolvable
};

// Solves a p^2 - b q^2 = c over the integers with q >= 1.
DiophResult solve(const Integer& a, const Integer& b, const Integer& c);
bool is_solution(const Integer& a, const Integer& b, const Integer& c, const Integer& p, const Integer& q);
// Re-derives the unsolvability certificate from scratch.
bool verify_witness(const Integer& a, const Integer& b, const Integer& c, const DiophWitness& w);
// The first `count` members (p, q), q >= 1, of a family; used for spot checks.
std::vector<std::pair<Integer, Integer>> family_members(const DiophResult& r, const DiophFamily& f, int count);

// Fundamental solution of x^2 - D y^2 = 1, D > 0 nonsquare.
std::pair<Integer, Integer> pell_fundamental(const Integer& D);
// Fundamental solution of x^2 - D y^2 = -1 if one exists.
std::optional<std::pair<Integer, Integer>> pell_negative(const Integer& D);
// One representative per class of solutions of x^2 - D y^2 = N (N != 0, D nonsquare).
std::vector<std::pair<Integer, Integer>> generalized_pell_classes(const Integer& D, const Integer& N);

// p = pu*u + pv*v, q = qu*u + qv*v.
struct LinearForm {
    Integer cu, cv;
};
struct FamilyCheck {
    bool identity = false;  // a p^2 - b q^2 - c == k (u^2 - D v^2 - 1) identically
    Integer k = 0;
    Integer uu = 0, uv = 0, vv = 0, constant = 0;  // expanded coefficients
};
FamilyCheck family_check(const Integer& a, const Integer& b, const Integer& c, const LinearForm& p,
                         const LinearForm& q, const Integer& D);

// CF step budget; overridable through KNOTSURG_DIOPH_STEPS.
long dioph_step_budget();

}  // namespace knotsurg
