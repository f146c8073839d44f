#pragma once

#include "knotsurg/exactmath.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace knotsurg {

class JacobiBudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Uni-trivalent vertex-oriented graph. Nodes have arity 1 (legs) or 3;
// arity 2 is allowed while building and removed by normalize(). The
// cyclic order at a trivalent node is its slot order 0, 1, 2.
class JacobiDiagram {
public:
    int add_node(int arity);
    int port(int node, int slot) const { return offset_.at(static_cast<size_t>(node)) + slot; }
    int node_of(int port) const { return port_node_.at(static_cast<size_t>(port)); }
    int slot_of(int port) const { return port - offset_.at(static_cast<size_t>(node_of(port))); }
    int mate(int port) const { return mate_.at(static_cast<size_t>(port)); }
    void connect(int pa, int pb);
    void add_circles(int c) { circles_ += c; }
    void kill(int node) { dead_.at(static_cast<size_t>(node)) = 1; }

    // Contracts bivalent chains (closed chains become circles), drops
    // killed nodes, and checks every port is connected.
    void normalize();

    int node_count() const { return static_cast<int>(arity_.size()); }
    int arity(int node) const { return arity_.at(static_cast<size_t>(node)); }
    bool alive(int node) const { return !dead_.at(static_cast<size_t>(node)); }
    int circles() const { return circles_; }
    int trivalent_count() const;
    int leg_count() const;
    int strut_count() const;
    std::vector<int> legs() const;
    bool is_closed() const { return leg_count() == 0; }
    bool pure_struts() const { return trivalent_count() == 0 && circles_ == 0; }

    // deg = (number of vertices)/2, and e = -chi; both computed separately.
    int degree() const;
    int euler_degree() const;

    // Joins the neighbours of two legs and removes the legs.
    void glue_legs(int leg_a, int leg_b);
    // Reverses the cyclic order at a trivalent node.
    void flip(int node);

    static JacobiDiagram disjoint_union(const JacobiDiagram& a, const JacobiDiagram& b);

private:
    std::vector<int> arity_, offset_, mate_, port_node_;
    std::vector<char> dead_;
    int circles_ = 0;
};

struct Canonical {
    bool zero = false;
    std::string key;
    int sign = 1;  // d = sign * representative(key)
};
Canonical canonical(const JacobiDiagram& d);
// The representative of d's class: d itself with some vertices flipped so
// that its sign is +1. Throws if d is zero.
JacobiDiagram canonical_rep(const JacobiDiagram& d);

// Linear combination of canonical diagrams.
class DiagramSum {
public:
    DiagramSum() = default;
    explicit DiagramSum(const JacobiDiagram& d, const Rational& c = Rational(1)) { add(d, c); }
    static DiagramSum one();  // the empty diagram

    void add(const JacobiDiagram& d, const Rational& c);
    void add(const DiagramSum& s, const Rational& c = Rational(1));
    DiagramSum scaled(const Rational& c) const;
    DiagramSum truncated(int maxdeg) const;
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    Rational coeff(const JacobiDiagram& d) const;

    struct Term {
        JacobiDiagram rep;
        Rational coeff;
    };
    const std::map<std::string, Term>& terms() const { return terms_; }

    friend DiagramSum operator*(const DiagramSum& a, const DiagramSum& b);  // disjoint union
    friend DiagramSum operator+(DiagramSum a, const DiagramSum& b) {
        a.add(b);
        return a;
    }
    friend DiagramSum operator-(DiagramSum a, const DiagramSum& b) {
        a.add(b, Rational(-1));
        return a;
    }
    friend bool operator==(const DiagramSum& a, const DiagramSum& b);
    std::string str() const;

private:
    std::map<std::string, Term> terms_;
};

DiagramSum power(const DiagramSum& s, int n);
// exp_⊔(s) for s of positive degree, truncated at maxdeg.
DiagramSum exp_union(const DiagramSum& s, int maxdeg);

JacobiDiagram strut();
JacobiDiagram theta();
JacobiDiagram circle_diagram();
JacobiDiagram wheel(int k);
// n bubbles in a row with a leg at each end; chain(1) is wheel(2).
JacobiDiagram bubble_chain(int n);
// wheel(k) with a bubble inserted on one spoke.
JacobiDiagram bubbled_wheel(int k);
// closed ring of n bubbles; necklace(1) is theta.
JacobiDiagram necklace(int n);
// disjoint union of n copies
JacobiDiagram union_power(const JacobiDiagram& d, int n);

DiagramSum omega_q(long q, int maxdeg);

DiagramSum pair(const DiagramSum& c, const DiagramSum& d);
DiagramSum partial(const DiagramSum& c, const DiagramSum& d);
DiagramSum pair(const JacobiDiagram& c, const JacobiDiagram& d);
DiagramSum partial(const JacobiDiagram& c, const JacobiDiagram& d);

// Polynomial in h and S = (n^2 - 1)/2.
class WeightPoly {
public:
    WeightPoly() = default;
    explicit WeightPoly(const Rational& c) { add(0, 0, c); }
    static WeightPoly h_power(int i, const Rational& c = Rational(1));
    void add(int hdeg, int sdeg, const Rational& c);
    Rational coeff(int hdeg, int sdeg = 0) const;
    const std::map<std::pair<int, int>, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    // substitute S = (n^2 - 1)/2
    WeightPoly at_n(long n) const;
    WeightPoly& operator+=(const WeightPoly& o);
    friend WeightPoly operator+(WeightPoly a, const WeightPoly& b) { return a += b; }
    friend WeightPoly operator-(WeightPoly a, const WeightPoly& b) {
        for (const auto& [k, c] : b.t_) a.add(k.first, k.second, -c);
        return a;
    }
    friend WeightPoly operator*(const WeightPoly& a, const WeightPoly& b);
    friend WeightPoly operator*(WeightPoly a, const Rational& c);
    friend bool operator==(const WeightPoly& a, const WeightPoly& b) { return a.t_ == b.t_; }
    std::string str() const;

private:
    std::map<std::pair<int, int>, Rational> t_;
};

// sl2 weight system through the recursive relations; memoized on keys.
WeightPoly sl2_weight(const JacobiDiagram& d);
WeightPoly sl2_weight(const DiagramSum& s);
// Same recursion with no canonicalization; used as an independent check.
WeightPoly sl2_weight_direct(const JacobiDiagram& d);

// Checks W(<wheel_{2m}, strut^m>) = 2 (2h)^m (2m+1)!.
bool verify_nonvanish(int m);
int jacobi_max_m();  // KNOTSURG_JACOBI_MAX_M, default 5

// The three IHX terms at the edge leaving `port` (an internal edge).
std::vector<JacobiDiagram> ihx_terms(const JacobiDiagram& d, int port);

struct ReducedBasis {
    int degree = 0;
    bool kill_theta = false;
    std::vector<std::string> generator_keys;
    std::vector<JacobiDiagram> generators;
    std::vector<std::string> generator_names;
    size_t diagram_count = 0;
    size_t relation_count = 0;
    // coordinates of every nonzero diagram class of this degree
    std::map<std::string, std::vector<Rational>> key_coords;
};
struct Reduction {
    std::map<int, ReducedBasis> bases;  // by degree
    std::map<int, std::vector<Rational>> coords;
    Rational constant = 0;  // degree-0 part
    int circles = 0;
};
// Closed diagrams of degree <= 3, modulo AS, IHX (and theta multiples).
Reduction aspace_reduce(const DiagramSum& s, bool kill_theta);
ReducedBasis aspace_basis(int degree, bool kill_theta);

struct RelationSanity {
    size_t as_checked = 0, ihx_checked = 0, theta_checked = 0;
    size_t as_failures = 0, ihx_failures = 0;
    size_t theta_nonzero = 0;
    bool ok() const { return as_failures == 0 && ihx_failures == 0; }
};
RelationSanity relation_sanity(int maxdeg = 3);

// All closed trivalent diagrams with 2*degree vertices (one orientation each),
// including those with self-loops.
std::vector<JacobiDiagram> enumerate_closed(int degree, bool allow_loops);

// Diagram expression language used by the command line.
DiagramSum parse_diagram_expr(const std::string& text);

}  // namespace knotsurg
