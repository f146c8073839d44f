#pragma once

#include "knotsurg/exactmath.hpp"
#include "knotsurg/vinv.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace knotsurg {

// One row of a knot table: header name,pd,a2,a4,a6,j3,j4,v5; blank = absent.
struct KnotRecord {
    std::string name;
    std::optional<std::string> pd;
    std::optional<Rational> a2, a4, a6, j3, j4, v5;
    friend bool operator==(const KnotRecord&, const KnotRecord&) = default;
};

std::vector<KnotRecord> read_table(std::istream& in);
std::vector<KnotRecord> read_table_file(const std::string& path);
void write_table(std::ostream& out, const std::vector<KnotRecord>& rows);

// The shipped registry (unknot, trefoils, figure-eight, the eight table knots).
const std::vector<KnotRecord>& registry();

// Match ignoring case and underscores ("10_118" == "10118").
const KnotRecord* find_record(const std::vector<KnotRecord>& rows, const std::string& name);

// Knot data from a record. With a pd cell everything is recomputed and any
// ingested column that disagrees is an error; v5 always comes from the row.
KnotData resolve_knot_data(const KnotRecord& r);
InvariantSet resolve_invariants(const KnotRecord& r);

}  // namespace knotsurg
