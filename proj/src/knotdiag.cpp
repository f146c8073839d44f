#include "knotsurg/knotdiag.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace knotsurg {

namespace {

std::string lower(std::string_view s) {
    std::string r(s);
    for (auto& ch : r) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return r;
}

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Collects the innermost bracket groups; everything outside them must be
// separators, brackets, or the X / PD markers.
std::vector<std::vector<long>> innermost_groups(const std::string& s) {
    std::vector<std::vector<long>> groups;
    size_t i = 0;
    auto is_open = [](char c) { return c == '[' || c == '(' || c == '{'; };
    auto is_close = [](char c) { return c == ']' || c == ')' || c == '}'; };
    while (i < s.size()) {
        char c = s[i];
        if (is_open(c)) {
            size_t j = i + 1;
            while (j < s.size() && !is_open(s[j]) && !is_close(s[j])) ++j;
            if (j >= s.size()) throw std::invalid_argument("unbalanced bracket in PD code");
            if (is_open(s[j])) {
                ++i;
                continue;
            }
            std::vector<long> vals;
            std::string body = s.substr(i + 1, j - i - 1);
            std::string tok;
            std::istringstream in(body);
            while (std::getline(in, tok, ',')) {
                std::string t = trim(tok);
                if (t.empty()) throw std::invalid_argument("empty entry in PD tuple");
                size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
                if (k == t.size()) throw std::invalid_argument("bad PD label: " + t);
                for (size_t m = k; m < t.size(); ++m)
                    if (!std::isdigit(static_cast<unsigned char>(t[m])))
                        throw std::invalid_argument("bad PD label: " + t);
                vals.push_back(std::stol(t));
            }
            groups.push_back(std::move(vals));
            i = j + 1;
            continue;
        }
        if (is_close(c) || c == ',' || std::isspace(static_cast<unsigned char>(c)) || c == 'X' ||
            c == 'x') {
            ++i;
            continue;
        }
        if ((c == 'P' || c == 'p') && i + 1 < s.size() && (s[i + 1] == 'D' || s[i + 1] == 'd')) {
            i += 2;
            continue;
        }
        throw std::invalid_argument(std::string("unexpected character in PD code: ") + c);
    }
    return groups;
}

struct Slot {
    size_t crossing;
    int pos;
    bool operator==(const Slot&) const = default;
};

}  // namespace

PDCode PDCode::parse(std::string_view text) {
    std::string t = trim(text);
    if (lower(t) == "unknot") return PDCode();
    if (t.empty()) throw std::invalid_argument("empty PD code (use the literal 'unknot')");
    auto groups = innermost_groups(t);
    if (groups.empty()) throw std::invalid_argument("PD code has no crossings (use the literal 'unknot')");
    std::vector<Crossing> xs;
    for (const auto& g : groups) {
        if (g.size() != 4)
            throw std::invalid_argument("PD crossing must have 4 labels, got " + std::to_string(g.size()));
        Crossing c{};
        for (int k = 0; k < 4; ++k) c[k] = static_cast<int>(g[k]);
        xs.push_back(c);
    }
    return from_crossings(xs);
}

PDCode PDCode::from_crossings(const std::vector<Crossing>& xs) {
    PDCode out;
    if (xs.empty()) return out;
    const size_t n = xs.size();
    std::map<int, std::vector<Slot>> occ;
    for (size_t i = 0; i < n; ++i)
        for (int p = 0; p < 4; ++p) occ[xs[i][p]].push_back({i, p});
    for (const auto& [label, v] : occ)
        if (v.size() != 2)
            throw std::invalid_argument("PD label " + std::to_string(label) + " appears " +
                                        std::to_string(v.size()) + " times (must be 2)");
    if (occ.size() != 2 * n) throw std::invalid_argument("PD code must have 2n distinct arcs");

    // Walk the strand starting at the incoming under-arc of crossing 0.
    std::vector<int> sequence;  // arc labels in traversal order
    std::vector<int> over_dir(n, 0);  // +1 over enters at d, -1 enters at b
    std::vector<int> under_seen(n, 0);
    Slot entry{0, 0};
    for (size_t steps = 0;; ++steps) {
        if (steps > 2 * n) throw std::invalid_argument("PD traversal does not close");
        const Crossing& c = xs[entry.crossing];
        if (entry.pos == 0) {
            if (under_seen[entry.crossing]++) throw std::invalid_argument("under-strand traversed twice");
        } else {
            if (over_dir[entry.crossing] != 0) throw std::invalid_argument("over-strand traversed twice");
            over_dir[entry.crossing] = (entry.pos == 3) ? 1 : -1;
        }
        Slot exit{entry.crossing, (entry.pos + 2) % 4};
        int arc = c[exit.pos];
        sequence.push_back(arc);
        const auto& v = occ[arc];
        Slot next = (v[0] == exit) ? v[1] : v[0];
        if (next.pos == 2)
            throw std::invalid_argument("inconsistent orientation: arc " + std::to_string(arc) +
                                        " enters a crossing at its outgoing under position");
        entry = next;
        if (entry == Slot{0, 0}) break;
    }
    if (sequence.size() != 2 * n)
        throw std::invalid_argument("PD code has more than one component");

    // Canonical relabeling: minimal sorted crossing list over starting arcs.
    const int m = static_cast<int>(2 * n);
    std::map<int, int> index;
    for (int k = 0; k < m; ++k) index[sequence[static_cast<size_t>(k)]] = k;
    std::vector<std::pair<Crossing, int>> best;
    for (int r = 0; r < m; ++r) {
        std::vector<std::pair<Crossing, int>> cand;
        cand.reserve(n);
        for (size_t i = 0; i < n; ++i) {
            Crossing y{};
            for (int p = 0; p < 4; ++p) y[p] = ((index[xs[i][p]] - r) % m + m) % m + 1;
            cand.emplace_back(y, over_dir[i]);
        }
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = std::move(cand);
    }
    for (auto& [c, s] : best) {
        out.xs_.push_back(c);
        out.signs_.push_back(s);
    }
    return out;
}

int PDCode::writhe() const {
    int w = 0;
    for (int s : signs_) w += s;
    return w;
}

PDCode PDCode::mirror() const {
    std::vector<Crossing> ys;
    ys.reserve(xs_.size());
    for (size_t i = 0; i < xs_.size(); ++i) {
        const Crossing& x = xs_[i];
        if (signs_[i] > 0)
            ys.push_back({x[3], x[0], x[1], x[2]});
        else
            ys.push_back({x[1], x[2], x[3], x[0]});
    }
    return from_crossings(ys);
}

std::string PDCode::str() const {
    if (xs_.empty()) return "unknot";
    std::ostringstream os;
    for (size_t i = 0; i < xs_.size(); ++i) {
        if (i) os << ",";
        os << "X[" << xs_[i][0] << "," << xs_[i][1] << "," << xs_[i][2] << "," << xs_[i][3] << "]";
    }
    return os.str();
}

}  // namespace knotsurg
