#include "knotsurg/table.hpp"

#include "knotsurg/knotdiag.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace knotsurg {

namespace detail {
extern const std::string_view kRegistryCsv;
}

namespace {

const char* const kHeader[] = {"name", "pd", "a2", "a4", "a6", "j3", "j4", "v5"};
constexpr size_t kCols = 8;

// Splits one CSV record; double quotes protect commas, "" is a literal quote.
std::vector<std::string> split_csv(const std::string& line, size_t lineno) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw std::invalid_argument("table line " + std::to_string(lineno) + ": unterminated quote");
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fold(const std::string& s) {
    std::string out;
    for (char c : s)
        if (c != '_') out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::vector<KnotRecord> read_table(std::istream& in) {
    std::vector<KnotRecord> rows;
    std::string line;
    size_t lineno = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || trim(line)[0] == '#') continue;
        auto cells = split_csv(line, lineno);
        for (auto& c : cells) c = trim(c);
        if (!header) {
            if (cells.size() != kCols) throw std::invalid_argument("table header must be name,pd,a2,a4,a6,j3,j4,v5");
            for (size_t i = 0; i < kCols; ++i)
                if (cells[i] != kHeader[i]) throw std::invalid_argument("table header must be name,pd,a2,a4,a6,j3,j4,v5");
            header = true;
            continue;
        }
        if (cells.size() != kCols)
            throw std::invalid_argument("table line " + std::to_string(lineno) + ": expected 8 cells, got " +
                                        std::to_string(cells.size()));
        KnotRecord r;
        if (cells[0].empty()) throw std::invalid_argument("table line " + std::to_string(lineno) + ": empty name");
        r.name = cells[0];
        if (!cells[1].empty()) r.pd = cells[1];
        std::optional<Rational>* num[] = {&r.a2, &r.a4, &r.a6, &r.j3, &r.j4, &r.v5};
        for (size_t i = 0; i < 6; ++i) {
            const auto& c = cells[i + 2];
            if (c.empty()) continue;
            try {
                *num[i] = Rational::parse(c);
            } catch (const std::exception& e) {
                throw std::invalid_argument("table line " + std::to_string(lineno) + ", column " + kHeader[i + 2] +
                                            ": " + e.what());
            }
        }
        rows.push_back(std::move(r));
    }
    if (!header) throw std::invalid_argument("table is empty");
    return rows;
}

std::vector<KnotRecord> read_table_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open table " + path);
    return read_table(f);
}

void write_table(std::ostream& out, const std::vector<KnotRecord>& rows) {
    out << "name,pd,a2,a4,a6,j3,j4,v5\n";
    for (const auto& r : rows) {
        out << quote(r.name) << ',' << (r.pd ? quote(*r.pd) : "");
        for (const auto* v : {&r.a2, &r.a4, &r.a6, &r.j3, &r.j4, &r.v5}) out << ',' << (*v ? (*v)->str() : "");
        out << '\n';
    }
}

const std::vector<KnotRecord>& registry() {
    static const std::vector<KnotRecord> rows = [] {
        std::istringstream in{std::string(detail::kRegistryCsv)};
        return read_table(in);
    }();
    return rows;
}

const KnotRecord* find_record(const std::vector<KnotRecord>& rows, const std::string& name) {
    std::string key = fold(name);
    for (const auto& r : rows)
        if (fold(r.name) == key) return &r;
    return nullptr;
}

KnotData resolve_knot_data(const KnotRecord& r) {
    if (r.pd) {
        KnotData d = knot_data_from_diagram(PDCode::parse(*r.pd), r.name);
        std::pair<const char*, std::pair<const std::optional<Rational>*, const Rational*>> cols[] = {
            {"a2", {&r.a2, &d.a2}}, {"a4", {&r.a4, &d.a4}}, {"a6", {&r.a6, &d.a6}},
            {"j3", {&r.j3, &d.j3}}, {"j4", {&r.j4, &d.j4}}};
        for (const auto& [col, v] : cols) {
            if (*v.first && !(**v.first == *v.second))
                throw std::invalid_argument("knot " + r.name + ": column " + col + " = " + (*v.first)->str() +
                                            " but the PD code gives " + v.second->str());
        }
        d.v5 = r.v5;
        return d;
    }
    const std::optional<Rational>* need[] = {&r.a2, &r.a4, &r.a6, &r.j3, &r.j4};
    const char* names[] = {"a2", "a4", "a6", "j3", "j4"};
    for (size_t i = 0; i < 5; ++i)
        if (!*need[i]) throw std::invalid_argument("knot " + r.name + ": no PD code and no " + names[i] + " column");
    KnotData d;
    d.name = r.name;
    d.a2 = *r.a2;
    d.a4 = *r.a4;
    d.a6 = *r.a6;
    d.j3 = *r.j3;
    d.j4 = *r.j4;
    d.v5 = r.v5;
    return d;
}

InvariantSet resolve_invariants(const KnotRecord& r) { return lift(resolve_knot_data(r)); }

}  // namespace knotsurg
