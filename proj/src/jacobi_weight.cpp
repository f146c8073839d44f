#include "knotsurg/jacobi.hpp"

#include <array>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <unordered_map>

namespace knotsurg {

WeightPoly WeightPoly::h_power(int i, const Rational& c) {
    WeightPoly w;
    w.add(i, 0, c);
    return w;
}

void WeightPoly::add(int hdeg, int sdeg, const Rational& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(hdeg, sdeg);
    auto it = t_.find(key);
    if (it == t_.end()) {
        t_.emplace(key, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

Rational WeightPoly::coeff(int hdeg, int sdeg) const {
    auto it = t_.find({hdeg, sdeg});
    return it == t_.end() ? Rational(0) : it->second;
}

WeightPoly WeightPoly::at_n(long n) const {
    Rational s = Rational(Integer(n) * n - 1, Integer(2));
    WeightPoly out;
    for (const auto& [k, c] : t_) out.add(k.first, 0, c * s.pow(k.second));
    return out;
}

WeightPoly& WeightPoly::operator+=(const WeightPoly& o) {
    for (const auto& [k, c] : o.t_) add(k.first, k.second, c);
    return *this;
}

WeightPoly operator*(const WeightPoly& a, const WeightPoly& b) {
    WeightPoly out;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_) out.add(ka.first + kb.first, ka.second + kb.second, ca * cb);
    return out;
}

WeightPoly operator*(WeightPoly a, const Rational& c) {
    WeightPoly out;
    for (const auto& [k, v] : a.t_) out.add(k.first, k.second, v * c);
    return out;
}

std::string WeightPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : t_) {
        Rational v = c;
        if (!first) {
            os << (v.sign() < 0 ? " - " : " + ");
            v = v.abs();
        }
        first = false;
        bool bare = k.first == 0 && k.second == 0;
        if (bare || !(v == Rational(1))) {
            if (v == Rational(-1) && !bare) os << "-";
            else os << v.str();
        }
        bool need_star = !bare && !(v == Rational(1)) && !(v == Rational(-1));
        if (k.first > 0) {
            os << (need_star ? "*" : "") << "h";
            if (k.first > 1) os << "^" << k.first;
            need_star = true;
        }
        if (k.second > 0) {
            os << (need_star ? "*" : "") << "S";
            if (k.second > 1) os << "^" << k.second;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- edge surgery

namespace {

// Removes the endpoints u, v of the internal edge at `pe` and leaves four
// bivalent stubs standing in for u's and v's other half-edges, in the order
// a, b (after the edge at u) and c, d (after the edge at v).
struct Opened {
    JacobiDiagram g;
    std::array<int, 4> inner{};
};

Opened open_edge(const JacobiDiagram& d, int pe) {
    int u = d.node_of(pe), s = d.slot_of(pe);
    int qe = d.mate(pe);
    int v = d.node_of(qe), t = d.slot_of(qe);
    if (u == v || d.arity(u) != 3 || d.arity(v) != 3)
        throw std::invalid_argument("jacobi: edge is not internal");
    std::array<int, 4> ext{d.port(u, (s + 1) % 3), d.port(u, (s + 2) % 3), d.port(v, (t + 1) % 3),
                           d.port(v, (t + 2) % 3)};
    Opened o{d, {}};
    std::array<int, 4> stub{};
    for (int x = 0; x < 4; ++x) stub[static_cast<size_t>(x)] = o.g.add_node(2);
    for (int x = 0; x < 4; ++x) {
        int y = d.mate(ext[static_cast<size_t>(x)]);
        int j = -1;
        for (int k = 0; k < 4; ++k)
            if (ext[static_cast<size_t>(k)] == y) j = k;
        if (j < 0) o.g.connect(o.g.port(stub[static_cast<size_t>(x)], 1), y);
        else if (x < j) o.g.connect(o.g.port(stub[static_cast<size_t>(x)], 1), o.g.port(stub[static_cast<size_t>(j)], 1));
    }
    o.g.kill(u);
    o.g.kill(v);
    for (int x = 0; x < 4; ++x) o.inner[static_cast<size_t>(x)] = o.g.port(stub[static_cast<size_t>(x)], 0);
    return o;
}

// Resolution of an internal edge: W(D) = 2h [W(D_ad,bc) - W(D_ac,bd)].
std::pair<JacobiDiagram, JacobiDiagram> resolve(const JacobiDiagram& d, int pe) {
    Opened o = open_edge(d, pe);
    const auto& in = o.inner;
    JacobiDiagram d1 = o.g, d2 = o.g;
    d1.connect(in[0], in[3]);
    d1.connect(in[1], in[2]);
    d2.connect(in[0], in[2]);
    d2.connect(in[1], in[3]);
    d1.normalize();
    d2.normalize();
    return {std::move(d1), std::move(d2)};
}

enum class Shape { Zero, Base, Internal };

// Classifies d; for Internal returns a port on an internal edge.
Shape classify(const JacobiDiagram& d, int& pe) {
    for (int n = 0; n < d.node_count(); ++n) {
        if (!d.alive(n) || d.arity(n) != 3) continue;
        int legs = 0;
        for (int s = 0; s < 3; ++s) {
            int m = d.mate(d.port(n, s));
            int mn = d.node_of(m);
            if (mn == n) return Shape::Zero;
            if (d.arity(mn) == 1) ++legs;
        }
        if (legs >= 2) return Shape::Zero;
    }
    for (int n = 0; n < d.node_count(); ++n) {
        if (!d.alive(n) || d.arity(n) != 3) continue;
        for (int s = 0; s < 3; ++s) {
            int m = d.mate(d.port(n, s));
            if (d.arity(d.node_of(m)) == 3) {
                pe = d.port(n, s);
                return Shape::Internal;
            }
        }
    }
    return Shape::Base;
}

WeightPoly base_weight(const JacobiDiagram& d) {
    if (d.trivalent_count() != 0) throw std::logic_error("jacobi: unexpected trivalent vertex");
    WeightPoly w;
    w.add(d.strut_count(), d.strut_count(), Rational(Integer(3)).pow(d.circles()));
    return w;
}

std::mutex g_memo_mutex;
std::unordered_map<std::string, WeightPoly> g_memo;

WeightPoly weight_of_rep(const JacobiDiagram& rep) {
    int pe = -1;
    switch (classify(rep, pe)) {
        case Shape::Zero:
            return WeightPoly{};
        case Shape::Base:
            return base_weight(rep);
        case Shape::Internal:
            break;
    }
    auto [d1, d2] = resolve(rep, pe);
    return (sl2_weight(d1) - sl2_weight(d2)) * WeightPoly::h_power(1, Rational(2));
}

}  // namespace

std::vector<JacobiDiagram> ihx_terms(const JacobiDiagram& d0, int pe) {
    JacobiDiagram d = d0;
    d.normalize();
    Opened o = open_edge(d, pe);
    const auto& in = o.inner;
    static constexpr std::array<std::array<int, 4>, 3> assign{{{0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}}};
    std::vector<JacobiDiagram> out;
    for (const auto& a : assign) {
        JacobiDiagram g = o.g;
        int u = g.add_node(3), v = g.add_node(3);
        g.connect(g.port(u, 0), g.port(v, 0));
        g.connect(g.port(u, 1), in[static_cast<size_t>(a[0])]);
        g.connect(g.port(u, 2), in[static_cast<size_t>(a[1])]);
        g.connect(g.port(v, 1), in[static_cast<size_t>(a[2])]);
        g.connect(g.port(v, 2), in[static_cast<size_t>(a[3])]);
        g.normalize();
        out.push_back(std::move(g));
    }
    return out;
}

WeightPoly sl2_weight(const JacobiDiagram& d) {
    Canonical c = canonical(d);
    if (c.zero) return WeightPoly{};
    {
        std::lock_guard<std::mutex> lock(g_memo_mutex);
        auto it = g_memo.find(c.key);
        if (it != g_memo.end()) return c.sign > 0 ? it->second : it->second * Rational(-1);
    }
    WeightPoly w = weight_of_rep(canonical_rep(d));
    {
        std::lock_guard<std::mutex> lock(g_memo_mutex);
        g_memo.emplace(c.key, w);
    }
    return c.sign > 0 ? w : w * Rational(-1);
}

WeightPoly sl2_weight(const DiagramSum& s) {
    WeightPoly out;
    for (const auto& [k, t] : s.terms()) out += sl2_weight(t.rep) * t.coeff;
    return out;
}

WeightPoly sl2_weight_direct(const JacobiDiagram& d0) {
    JacobiDiagram d = d0;
    d.normalize();
    int pe = -1;
    switch (classify(d, pe)) {
        case Shape::Zero:
            return WeightPoly{};
        case Shape::Base:
            return base_weight(d);
        case Shape::Internal:
            break;
    }
    auto [d1, d2] = resolve(d, pe);
    return (sl2_weight_direct(d1) - sl2_weight_direct(d2)) * WeightPoly::h_power(1, Rational(2));
}

int jacobi_max_m() {
    if (const char* e = std::getenv("KNOTSURG_JACOBI_MAX_M")) {
        char* end = nullptr;
        long v = std::strtol(e, &end, 10);
        if (end != e && *end == '\0' && v >= 0 && v <= 64) return static_cast<int>(v);
    }
    return 5;
}

bool verify_nonvanish(int m) {
    if (m < 1) throw std::invalid_argument("jacobi: verify_nonvanish needs m >= 1");
    if (m > jacobi_max_m())
        throw JacobiBudgetExceeded("jacobi: m = " + std::to_string(m) + " exceeds KNOTSURG_JACOBI_MAX_M");
    DiagramSum p = pair(wheel(2 * m), union_power(strut(), m));
    WeightPoly w = sl2_weight(p);
    Rational expect = Rational(2) * Rational(Integer(2)).pow(m) * Rational(factorial(static_cast<unsigned long>(2 * m + 1)));
    return w == WeightPoly::h_power(m, expect);
}

}  // namespace knotsurg
