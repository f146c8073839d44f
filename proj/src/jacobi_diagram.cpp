#include "knotsurg/jacobi.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <sstream>

namespace knotsurg {

int JacobiDiagram::add_node(int a) {
    if (a < 1 || a > 3) throw std::invalid_argument("jacobi: node arity must be 1, 2 or 3");
    int id = node_count();
    arity_.push_back(a);
    offset_.push_back(static_cast<int>(mate_.size()));
    dead_.push_back(0);
    for (int s = 0; s < a; ++s) {
        mate_.push_back(-1);
        port_node_.push_back(id);
    }
    return id;
}

void JacobiDiagram::connect(int pa, int pb) {
    if (pa == pb) throw std::invalid_argument("jacobi: cannot connect a port to itself");
    mate_.at(static_cast<size_t>(pa)) = pb;
    mate_.at(static_cast<size_t>(pb)) = pa;
}

void JacobiDiagram::normalize() {
    for (int n = 0; n < node_count(); ++n) {
        if (dead_[static_cast<size_t>(n)] || arity_[static_cast<size_t>(n)] != 2) continue;
        int x = port(n, 0), y = port(n, 1);
        int mx = mate(x), my = mate(y);
        if (mx < 0 || my < 0) throw std::logic_error("jacobi: dangling bivalent node");
        if (mx == y) {
            ++circles_;
        } else {
            mate_[static_cast<size_t>(mx)] = my;
            mate_[static_cast<size_t>(my)] = mx;
        }
        dead_[static_cast<size_t>(n)] = 1;
    }
    std::vector<int> newid(arity_.size(), -1);
    JacobiDiagram out;
    out.circles_ = circles_;
    for (int n = 0; n < node_count(); ++n)
        if (!dead_[static_cast<size_t>(n)]) newid[static_cast<size_t>(n)] = out.add_node(arity_[static_cast<size_t>(n)]);
    for (int n = 0; n < node_count(); ++n) {
        if (dead_[static_cast<size_t>(n)]) continue;
        for (int s = 0; s < arity(n); ++s) {
            int m = mate(port(n, s));
            if (m < 0) throw std::logic_error("jacobi: unconnected port");
            int mn = node_of(m);
            if (dead_[static_cast<size_t>(mn)]) throw std::logic_error("jacobi: port connected to a removed node");
            out.mate_[static_cast<size_t>(out.port(newid[static_cast<size_t>(n)], s))] =
                out.port(newid[static_cast<size_t>(mn)], slot_of(m));
        }
    }
    *this = std::move(out);
}

int JacobiDiagram::trivalent_count() const {
    int c = 0;
    for (int n = 0; n < node_count(); ++n) c += alive(n) && arity(n) == 3;
    return c;
}

int JacobiDiagram::leg_count() const {
    int c = 0;
    for (int n = 0; n < node_count(); ++n) c += alive(n) && arity(n) == 1;
    return c;
}

int JacobiDiagram::strut_count() const {
    int c = 0;
    for (int n = 0; n < node_count(); ++n)
        if (alive(n) && arity(n) == 1 && arity(node_of(mate(port(n, 0)))) == 1) ++c;
    return c / 2;
}

std::vector<int> JacobiDiagram::legs() const {
    std::vector<int> out;
    for (int n = 0; n < node_count(); ++n)
        if (alive(n) && arity(n) == 1) out.push_back(n);
    return out;
}

int JacobiDiagram::degree() const {
    int v = trivalent_count() + leg_count();
    if (v % 2) throw std::logic_error("jacobi: odd vertex count");
    return v / 2;
}

int JacobiDiagram::euler_degree() const {
    int t = trivalent_count(), l = leg_count();
    int edges = (3 * t + l) / 2;
    int e = edges - (t + l);
    return e + l;
}

void JacobiDiagram::glue_legs(int a, int b) {
    if (a == b || arity(a) != 1 || arity(b) != 1 || !alive(a) || !alive(b))
        throw std::invalid_argument("jacobi: glue_legs needs two distinct legs");
    int pa = port(a, 0), pb = port(b, 0);
    int ma = mate(pa), mb = mate(pb);
    if (ma == pb) {
        ++circles_;
    } else {
        mate_[static_cast<size_t>(ma)] = mb;
        mate_[static_cast<size_t>(mb)] = ma;
    }
    kill(a);
    kill(b);
}

void JacobiDiagram::flip(int n) {
    if (arity(n) != 3) throw std::invalid_argument("jacobi: flip needs a trivalent node");
    static constexpr std::array<int, 3> sigma{0, 2, 1};
    std::array<int, 3> target{};
    for (int s = 0; s < 3; ++s) {
        int t = mate(port(n, s));
        if (node_of(t) == n) t = port(n, sigma[static_cast<size_t>(slot_of(t))]);
        target[static_cast<size_t>(sigma[static_cast<size_t>(s)])] = t;
    }
    for (int s = 0; s < 3; ++s) connect(port(n, s), target[static_cast<size_t>(s)]);
}

JacobiDiagram JacobiDiagram::disjoint_union(const JacobiDiagram& a, const JacobiDiagram& b) {
    JacobiDiagram out = a;
    int node_shift = a.node_count();
    int port_shift = static_cast<int>(a.mate_.size());
    for (size_t i = 0; i < b.arity_.size(); ++i) {
        out.arity_.push_back(b.arity_[i]);
        out.offset_.push_back(b.offset_[i] + port_shift);
        out.dead_.push_back(b.dead_[i]);
    }
    for (size_t p = 0; p < b.mate_.size(); ++p) {
        out.mate_.push_back(b.mate_[p] < 0 ? -1 : b.mate_[p] + port_shift);
        out.port_node_.push_back(b.port_node_[p] + node_shift);
    }
    out.circles_ += b.circles_;
    return out;
}

// ---------------------------------------------------------------- canonical form

namespace {

struct Core {
    int n = 0;
    std::vector<int> node;                // core index -> node id
    std::vector<int> label;               // legs attached (0 or 1)
    std::vector<std::vector<int>> mult;   // edge multiplicities
    std::vector<std::array<int, 3>> nb;   // neighbour core index per slot, -1 for a leg
    std::vector<std::array<int, 3>> nbslot;
};

struct Search {
    std::vector<int> best;
    std::vector<int> best_eps;
    int best_sign = 1;
    bool zero = false;
    bool have = false;
    long leaves = 0;
};

constexpr long kMaxLeaves = 2'000'000;

std::vector<int> refine(const Core& c, std::vector<int> col) {
    size_t ncol = 0;
    for (;;) {
        std::vector<std::vector<int>> sig(static_cast<size_t>(c.n));
        for (int v = 0; v < c.n; ++v) {
            auto& s = sig[static_cast<size_t>(v)];
            s.push_back(col[static_cast<size_t>(v)]);
            std::vector<std::pair<int, int>> nbrs;
            for (int w = 0; w < c.n; ++w) {
                int m = c.mult[static_cast<size_t>(v)][static_cast<size_t>(w)];
                if (m) nbrs.emplace_back(col[static_cast<size_t>(w)], m);
            }
            std::sort(nbrs.begin(), nbrs.end());
            for (auto [a, b] : nbrs) {
                s.push_back(a);
                s.push_back(b);
            }
        }
        auto uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        for (int v = 0; v < c.n; ++v)
            col[static_cast<size_t>(v)] = static_cast<int>(
                std::lower_bound(uniq.begin(), uniq.end(), sig[static_cast<size_t>(v)]) - uniq.begin());
        if (uniq.size() == ncol) return col;
        ncol = uniq.size();
    }
}

// Per-vertex parity of the slot order against the reference order.
std::vector<int> vertex_eps(const Core& c, const std::vector<int>& pos) {
    std::vector<int> eps(static_cast<size_t>(c.n), 1);
    for (int v = 0; v < c.n; ++v) {
        std::array<int, 3> key{};
        const auto& nbv = c.nb[static_cast<size_t>(v)];
        for (int s = 0; s < 3; ++s) {
            int w = nbv[static_cast<size_t>(s)];
            if (w < 0) {
                key[static_cast<size_t>(s)] = 4 * c.n;
                continue;
            }
            int rank = 0;
            if (pos[static_cast<size_t>(v)] < pos[static_cast<size_t>(w)]) {
                for (int s2 = 0; s2 < s; ++s2) rank += nbv[static_cast<size_t>(s2)] == w;
            } else {
                int t = c.nbslot[static_cast<size_t>(v)][static_cast<size_t>(s)];
                const auto& nbw = c.nb[static_cast<size_t>(w)];
                for (int t2 = 0; t2 < t; ++t2) rank += nbw[static_cast<size_t>(t2)] == v;
            }
            key[static_cast<size_t>(s)] = 4 * pos[static_cast<size_t>(w)] + rank;
        }
        int inv = (key[0] > key[1]) + (key[0] > key[2]) + (key[1] > key[2]);
        eps[static_cast<size_t>(v)] = inv % 2 ? -1 : 1;
    }
    return eps;
}

void leaf(const Core& c, const std::vector<int>& pos, Search& st) {
    if (++st.leaves > kMaxLeaves) throw JacobiBudgetExceeded("jacobi: canonical form search too large");
    std::vector<int> inv(static_cast<size_t>(c.n));
    for (int v = 0; v < c.n; ++v) inv[static_cast<size_t>(pos[static_cast<size_t>(v)])] = v;
    std::vector<int> cert;
    cert.reserve(static_cast<size_t>(c.n * (c.n + 1) / 2));
    for (int p = 0; p < c.n; ++p) cert.push_back(c.label[static_cast<size_t>(inv[static_cast<size_t>(p)])]);
    for (int p = 0; p < c.n; ++p)
        for (int q = p + 1; q < c.n; ++q)
            cert.push_back(c.mult[static_cast<size_t>(inv[static_cast<size_t>(p)])][static_cast<size_t>(inv[static_cast<size_t>(q)])]);
    if (st.have && cert > st.best) return;
    auto eps = vertex_eps(c, pos);
    int sign = 1;
    for (int e : eps) sign *= e;
    if (!st.have || cert < st.best) {
        st.best = std::move(cert);
        st.best_eps = std::move(eps);
        st.best_sign = sign;
        st.zero = false;
        st.have = true;
    } else if (sign != st.best_sign) {
        st.zero = true;
    }
}

void search(const Core& c, std::vector<int> col, Search& st) {
    col = refine(c, std::move(col));
    std::vector<int> count(static_cast<size_t>(c.n), 0);
    for (int x : col) ++count[static_cast<size_t>(x)];
    int target = -1;
    for (int k = 0; k < c.n; ++k)
        if (count[static_cast<size_t>(k)] > 1) {
            target = k;
            break;
        }
    if (target < 0) {
        leaf(c, col, st);
        return;
    }
    for (int v = 0; v < c.n; ++v) {
        if (col[static_cast<size_t>(v)] != target) continue;
        std::vector<int> col2(col.size());
        for (int w = 0; w < c.n; ++w)
            col2[static_cast<size_t>(w)] =
                2 * col[static_cast<size_t>(w)] + (col[static_cast<size_t>(w)] == target && w != v ? 1 : 0);
        search(c, std::move(col2), st);
    }
}

struct Analysis {
    bool zero = false;
    std::string key;
    int sign = 1;
    Core core;
    std::vector<int> eps;
};

Analysis analyse(const JacobiDiagram& d) {
    Analysis a;
    Core& c = a.core;
    std::vector<int> idx(static_cast<size_t>(d.node_count()), -1);
    for (int n = 0; n < d.node_count(); ++n) {
        if (!d.alive(n)) continue;
        if (d.arity(n) == 2) throw std::logic_error("jacobi: canonical form needs a normalized diagram");
        if (d.arity(n) == 3) {
            idx[static_cast<size_t>(n)] = c.n++;
            c.node.push_back(n);
        }
    }
    c.label.assign(static_cast<size_t>(c.n), 0);
    c.mult.assign(static_cast<size_t>(c.n), std::vector<int>(static_cast<size_t>(c.n), 0));
    c.nb.assign(static_cast<size_t>(c.n), {-1, -1, -1});
    c.nbslot.assign(static_cast<size_t>(c.n), {-1, -1, -1});
    for (int v = 0; v < c.n; ++v) {
        int n = c.node[static_cast<size_t>(v)];
        for (int s = 0; s < 3; ++s) {
            int m = d.mate(d.port(n, s));
            int mn = d.node_of(m);
            if (mn == n) {
                a.zero = true;  // self-loop
                return a;
            }
            if (d.arity(mn) == 1) {
                ++c.label[static_cast<size_t>(v)];
            } else {
                int w = idx[static_cast<size_t>(mn)];
                c.nb[static_cast<size_t>(v)][static_cast<size_t>(s)] = w;
                c.nbslot[static_cast<size_t>(v)][static_cast<size_t>(s)] = d.slot_of(m);
                ++c.mult[static_cast<size_t>(v)][static_cast<size_t>(w)];
            }
        }
        if (c.label[static_cast<size_t>(v)] >= 2) {
            a.zero = true;
            return a;
        }
    }
    Search st;
    if (c.n > 0) {
        search(c, c.label, st);
        if (st.zero) {
            a.zero = true;
            return a;
        }
    }
    std::ostringstream os;
    os << "t" << c.n << "s" << d.strut_count() << "c" << d.circles() << ":";
    for (size_t i = 0; i < st.best.size(); ++i) os << st.best[i];
    a.key = os.str();
    a.sign = st.best_sign;
    a.eps = st.best_eps;
    return a;
}

JacobiDiagram normalized(const JacobiDiagram& d) {
    JacobiDiagram x = d;
    x.normalize();
    return x;
}

}  // namespace

Canonical canonical(const JacobiDiagram& d0) {
    auto a = analyse(normalized(d0));
    Canonical c;
    c.zero = a.zero;
    if (!a.zero) {
        c.key = a.key;
        c.sign = a.sign;
    }
    return c;
}

JacobiDiagram canonical_rep(const JacobiDiagram& d0) {
    JacobiDiagram d = normalized(d0);
    auto a = analyse(d);
    if (a.zero) throw std::invalid_argument("jacobi: zero diagram has no representative");
    for (int v = 0; v < a.core.n; ++v)
        if (a.eps[static_cast<size_t>(v)] < 0) d.flip(a.core.node[static_cast<size_t>(v)]);
    return d;
}

// ---------------------------------------------------------------- sums

DiagramSum DiagramSum::one() { return DiagramSum(JacobiDiagram{}); }

void DiagramSum::add(const JacobiDiagram& d0, const Rational& c) {
    if (c.is_zero()) return;
    JacobiDiagram d = normalized(d0);
    auto a = analyse(d);
    if (a.zero) return;
    Rational val = a.sign > 0 ? c : -c;
    auto it = terms_.find(a.key);
    if (it != terms_.end()) {
        it->second.coeff += val;
        if (it->second.coeff.is_zero()) terms_.erase(it);
        return;
    }
    for (int v = 0; v < a.core.n; ++v)
        if (a.eps[static_cast<size_t>(v)] < 0) d.flip(a.core.node[static_cast<size_t>(v)]);
    terms_.emplace(a.key, Term{std::move(d), val});
}

void DiagramSum::add(const DiagramSum& s, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [k, t] : s.terms_) {
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(k, Term{t.rep, t.coeff * c});
        } else {
            it->second.coeff += t.coeff * c;
            if (it->second.coeff.is_zero()) terms_.erase(it);
        }
    }
}

DiagramSum DiagramSum::scaled(const Rational& c) const {
    DiagramSum out;
    out.add(*this, c);
    return out;
}

DiagramSum DiagramSum::truncated(int maxdeg) const {
    DiagramSum out;
    for (const auto& [k, t] : terms_)
        if (t.rep.degree() <= maxdeg) out.terms_.emplace(k, t);
    return out;
}

Rational DiagramSum::coeff(const JacobiDiagram& d) const {
    auto c = canonical(d);
    if (c.zero) return Rational(0);
    auto it = terms_.find(c.key);
    if (it == terms_.end()) return Rational(0);
    return c.sign > 0 ? it->second.coeff : -it->second.coeff;
}

DiagramSum operator*(const DiagramSum& a, const DiagramSum& b) {
    DiagramSum out;
    for (const auto& [ka, ta] : a.terms_)
        for (const auto& [kb, tb] : b.terms_)
            out.add(JacobiDiagram::disjoint_union(ta.rep, tb.rep), ta.coeff * tb.coeff);
    return out;
}

bool operator==(const DiagramSum& a, const DiagramSum& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (const auto& [k, t] : a.terms_) {
        auto it = b.terms_.find(k);
        if (it == b.terms_.end() || !(it->second.coeff == t.coeff)) return false;
    }
    return true;
}

std::string DiagramSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, t] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << t.coeff.str() << "*[" << k << "]";
    }
    return os.str();
}

DiagramSum power(const DiagramSum& s, int n) {
    if (n < 0) throw std::invalid_argument("jacobi: negative power");
    DiagramSum out = DiagramSum::one();
    for (int i = 0; i < n; ++i) out = out * s;
    return out;
}

DiagramSum exp_union(const DiagramSum& s, int maxdeg) {
    for (const auto& [k, t] : s.terms())
        if (t.rep.degree() == 0) throw std::invalid_argument("jacobi: exp needs a sum without degree-0 part");
    DiagramSum out = DiagramSum::one();
    DiagramSum term = DiagramSum::one();
    for (int n = 1; n <= maxdeg; ++n) {
        term = (term * s).truncated(maxdeg).scaled(Rational(1, n));
        if (term.is_zero()) break;
        out.add(term);
    }
    return out;
}

// ---------------------------------------------------------------- named diagrams

JacobiDiagram strut() {
    JacobiDiagram d;
    int a = d.add_node(1), b = d.add_node(1);
    d.connect(d.port(a, 0), d.port(b, 0));
    return d;
}

JacobiDiagram theta() { return necklace(1); }

JacobiDiagram circle_diagram() {
    JacobiDiagram d;
    d.add_circles(1);
    return d;
}

JacobiDiagram wheel(int k) {
    if (k < 1) throw std::invalid_argument("jacobi: wheel needs k >= 1");
    JacobiDiagram d;
    std::vector<int> rim(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) rim[static_cast<size_t>(i)] = d.add_node(3);
    for (int i = 0; i < k; ++i) {
        int leg = d.add_node(1);
        d.connect(d.port(rim[static_cast<size_t>(i)], 0), d.port(leg, 0));
        int next = rim[static_cast<size_t>((i + 1) % k)];
        d.connect(d.port(rim[static_cast<size_t>(i)], 1), d.port(next, 2));
    }
    return d;
}

namespace {

// Planar bubble between ports: returns (left node, right node); left slot 0
// and right slot 0 are the free ends.
std::pair<int, int> add_bubble(JacobiDiagram& d) {
    int u = d.add_node(3), v = d.add_node(3);
    d.connect(d.port(u, 1), d.port(v, 2));
    d.connect(d.port(u, 2), d.port(v, 1));
    return {u, v};
}

}  // namespace

JacobiDiagram bubble_chain(int n) {
    if (n < 1) throw std::invalid_argument("jacobi: chain needs n >= 1");
    JacobiDiagram d;
    int left = d.add_node(1);
    int prev = d.port(left, 0);
    for (int i = 0; i < n; ++i) {
        auto [u, v] = add_bubble(d);
        d.connect(prev, d.port(u, 0));
        prev = d.port(v, 0);
    }
    int right = d.add_node(1);
    d.connect(prev, d.port(right, 0));
    return d;
}

JacobiDiagram necklace(int n) {
    if (n < 1) throw std::invalid_argument("jacobi: necklace needs n >= 1");
    JacobiDiagram d;
    int first = -1, prev = -1;
    for (int i = 0; i < n; ++i) {
        auto [u, v] = add_bubble(d);
        if (i == 0) first = d.port(u, 0);
        else d.connect(prev, d.port(u, 0));
        prev = d.port(v, 0);
    }
    d.connect(prev, first);
    return d;
}

JacobiDiagram bubbled_wheel(int k) {
    JacobiDiagram d = wheel(k);
    // rim node 0 sits at id 0, its leg at id k
    int leg = d.node_of(d.mate(d.port(0, 0)));
    d.kill(leg);
    auto [u, v] = add_bubble(d);
    d.connect(d.port(0, 0), d.port(u, 0));
    int nl = d.add_node(1);
    d.connect(d.port(v, 0), d.port(nl, 0));
    d.normalize();
    return d;
}

JacobiDiagram union_power(const JacobiDiagram& d, int n) {
    JacobiDiagram out;
    for (int i = 0; i < n; ++i) out = JacobiDiagram::disjoint_union(out, d);
    return out;
}

DiagramSum omega_q(long q, int maxdeg) {
    if (q == 0) throw std::invalid_argument("jacobi: omega_q needs q != 0");
    DiagramSum logpart;
    for (int n = 1; 2 * n <= maxdeg; ++n) {
        Rational b = modified_bernoulli(2 * n);
        logpart.add(wheel(2 * n), b / Rational(Integer(q)).pow(2 * n));
    }
    return exp_union(logpart, maxdeg);
}

// ---------------------------------------------------------------- pairing

namespace {

// Sum over perfect matchings of the legs of d, each matched pair glued.
void matchings(const JacobiDiagram& d, std::vector<int> legs, DiagramSum& out, const Rational& c) {
    if (legs.empty()) {
        out.add(d, c);
        return;
    }
    int a = legs[0];
    for (size_t j = 1; j < legs.size(); ++j) {
        JacobiDiagram g = d;
        g.glue_legs(a, legs[j]);
        std::vector<int> rest;
        for (size_t i = 1; i < legs.size(); ++i)
            if (i != j) rest.push_back(legs[i]);
        matchings(g, std::move(rest), out, c);
    }
}

// Glue legs of c (in u) to distinct legs of d (in u) over all injections;
// with `full` the image must be all of d's legs.
void injections(const JacobiDiagram& u, const std::vector<int>& lc, size_t i, const std::vector<int>& ld,
                std::vector<char>& used, DiagramSum& out) {
    if (i == lc.size()) {
        out.add(u, Rational(1));
        return;
    }
    for (size_t j = 0; j < ld.size(); ++j) {
        if (used[j]) continue;
        used[j] = 1;
        JacobiDiagram g = u;
        g.glue_legs(lc[i], ld[j]);
        injections(g, lc, i + 1, ld, used, out);
        used[j] = 0;
    }
}

DiagramSum strut_pairing(const JacobiDiagram& struts, const JacobiDiagram& d) {
    int m = struts.strut_count();
    DiagramSum out;
    Rational c = Rational(Integer(Integer(1) << m)) * Rational(factorial(static_cast<unsigned long>(m)));
    DiagramSum tmp;
    matchings(d, d.legs(), tmp, Rational(1));
    out.add(tmp, c);
    return out;
}

}  // namespace

DiagramSum partial(const JacobiDiagram& c0, const JacobiDiagram& d0) {
    JacobiDiagram c = normalized(c0), d = normalized(d0);
    auto lc = c.legs(), ld = d.legs();
    DiagramSum out;
    if (lc.size() > ld.size()) return out;
    JacobiDiagram u = JacobiDiagram::disjoint_union(c, d);
    for (int& x : ld) x += c.node_count();
    std::vector<char> used(ld.size(), 0);
    injections(u, lc, 0, ld, used, out);
    return out;
}

DiagramSum pair(const JacobiDiagram& c0, const JacobiDiagram& d0) {
    JacobiDiagram c = normalized(c0), d = normalized(d0);
    if (c.leg_count() != d.leg_count()) return DiagramSum{};
    if (c.pure_struts()) return strut_pairing(c, d);
    if (d.pure_struts()) return strut_pairing(d, c);
    return partial(c, d);
}

DiagramSum pair(const DiagramSum& c, const DiagramSum& d) {
    DiagramSum out;
    for (const auto& [kc, tc] : c.terms())
        for (const auto& [kd, td] : d.terms()) out.add(pair(tc.rep, td.rep), tc.coeff * td.coeff);
    return out;
}

DiagramSum partial(const DiagramSum& c, const DiagramSum& d) {
    DiagramSum out;
    for (const auto& [kc, tc] : c.terms())
        for (const auto& [kd, td] : d.terms()) out.add(partial(tc.rep, td.rep), tc.coeff * td.coeff);
    return out;
}

}  // namespace knotsurg
