#include "knotsurg/table.hpp"

#include <doctest.h>

#include <sstream>

using namespace knotsurg;

namespace {
std::string data_path(const std::string& f) { return std::string(KNOTSURG_DATA_DIR) + "/" + f; }
}

TEST_CASE("registry contents") {
    const auto& r = registry();
    for (const char* n : {"unknot", "trefoil_rh", "trefoil_lh", "figure8", "10_33", "10_118", "10_146", "11a_91",
                          "11a_138", "11a_285", "11n_86", "11n_157"})
        CHECK_MESSAGE(find_record(r, n) != nullptr, n);
    CHECK(find_record(r, "10118") == find_record(r, "10_118"));
    CHECK(find_record(r, "Trefoil_RH") == find_record(r, "trefoil_rh"));
    CHECK(find_record(r, "nope") == nullptr);
    InvariantSet t = resolve_invariants(*find_record(r, "trefoil_rh"));
    CHECK(t.v3 == Rational(-1, 4));
    CHECK(resolve_invariants(*find_record(r, "trefoil_lh")).v3 == Rational(1, 4));
}

TEST_CASE("CSV round trip") {
    for (const char* f : {"paper_table.csv", "knotinfo.csv", "registry.csv"}) {
        auto rows = read_table_file(data_path(f));
        REQUIRE_FALSE(rows.empty());
        std::ostringstream os;
        write_table(os, rows);
        std::istringstream is(os.str());
        CHECK(read_table(is) == rows);
    }
    KnotRecord k{"x", std::nullopt, Rational(1, 2), std::nullopt, Rational(-3), std::nullopt, std::nullopt, Rational(7)};
    std::ostringstream os;
    write_table(os, {k});
    std::istringstream is(os.str());
    CHECK(read_table(is) == std::vector<KnotRecord>{k});
}

TEST_CASE("malformed tables") {
    std::istringstream bad_header("name,a2\nx,1\n");
    CHECK_THROWS(read_table(bad_header));
    std::istringstream bad_cell("name,pd,a2,a4,a6,j3,j4,v5\nx,,zz,,,,,\n");
    CHECK_THROWS(read_table(bad_cell));
    std::istringstream bad_width("name,pd,a2,a4,a6,j3,j4,v5\nx,,1\n");
    CHECK_THROWS(read_table(bad_width));
    CHECK_THROWS(read_table_file(data_path("missing.csv")));
}

TEST_CASE("ingested columns are validated against the diagram") {
    auto rows = read_table_file(data_path("knotinfo.csv"));
    for (const auto& r : rows) CHECK_NOTHROW(resolve_knot_data(r));
    KnotRecord r = *find_record(rows, "10_118");
    KnotData d = resolve_knot_data(r);
    CHECK(d.a4 == Rational(2));
    CHECK(d.a6 == Rational(3));
    CHECK(d.j4 == Rational(-6));
    r.a4 = Rational(5);
    CHECK_THROWS(resolve_knot_data(r));
    KnotRecord partial{"p", std::nullopt, Rational(0), Rational(2), std::nullopt, Rational(0), Rational(-6), std::nullopt};
    CHECK_THROWS(resolve_knot_data(partial));
    partial.a6 = Rational(3);
    CHECK(resolve_invariants(partial).w4 == Rational(1, 8));
}

TEST_CASE("published table agrees with recomputation") {
    auto published = read_table_file(data_path("paper_table.csv"));
    REQUIRE(published.size() == 8);
    for (const auto& row : published) {
        const KnotRecord* reg = find_record(registry(), row.name);
        REQUIRE(reg);
        KnotData d = resolve_knot_data(*reg);
        CAPTURE(row.name);
        CHECK(d.a2 == Rational(0));
        CHECK(d.a4 == *row.a4);
        CHECK(d.a6 == *row.a6);
        CHECK(d.j4 == *row.j4);
    }
}
