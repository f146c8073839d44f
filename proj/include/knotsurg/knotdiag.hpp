#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace knotsurg {

// X[a,b,c,d]: arcs listed counterclockwise starting from the incoming
// under-strand a; the under-strand runs a -> c.
using Crossing = std::array<int, 4>;

// A validated, oriented, single-component planar diagram code.
// Arcs are relabeled 1..2n in traversal order; the labeling is canonical
// (minimal over all starting arcs) so equal diagrams compare equal.
class PDCode {
public:
    PDCode() = default;  // the 0-crossing unknot

    // Accepts X[..]/PD[..] notation, a list of 4-tuples in brackets or
    // parentheses, or the literal "unknot".
    static PDCode parse(std::string_view text);
    static PDCode from_crossings(const std::vector<Crossing>& xs);

    const std::vector<Crossing>& crossings() const { return xs_; }
    size_t crossing_count() const { return xs_.size(); }
    int arc_count() const { return static_cast<int>(2 * xs_.size()); }
    // +1 when the over-strand runs d -> b.
    const std::vector<int>& signs() const { return signs_; }
    int writhe() const;

    PDCode mirror() const;
    std::string str() const;

    friend bool operator==(const PDCode& a, const PDCode& b) { return a.xs_ == b.xs_ && a.signs_ == b.signs_; }

private:
    std::vector<Crossing> xs_;
    std::vector<int> signs_;
};

}  // namespace knotsurg
