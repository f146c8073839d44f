#include "knotsurg/jacobi.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>

namespace knotsurg {

namespace {

using Row = std::vector<Rational>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(std::vector<Row>& m, size_t ncols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < m.size(); ++c) {
        size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        Rational inv = Rational(1) / m[r][c];
        for (auto& x : m[r]) x *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < ncols; ++j)
                if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    m.resize(r);
    return pivots;
}

// Columns of the returned matrix (n x q, stored by rows) span {x : R x = 0}.
std::vector<Row> nullspace(std::vector<Row> rel, size_t n) {
    auto piv = rref(rel, n);
    std::vector<char> is_pivot(n, 0);
    for (size_t c : piv) is_pivot[c] = 1;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    std::vector<Row> phi(n, Row(free_cols.size(), Rational(0)));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        phi[free_cols[k]][k] = Rational(1);
        for (size_t r = 0; r < piv.size(); ++r) phi[piv[r]][k] = -rel[r][free_cols[k]];
    }
    return phi;
}

size_t rank_of(std::vector<Row> rows, size_t ncols) { return rref(rows, ncols).size(); }

// Inverse of a square matrix; throws if singular.
std::vector<Row> inverse(const std::vector<Row>& a) {
    size_t n = a.size();
    std::vector<Row> m(n, Row(2 * n, Rational(0)));
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
        m[i][n + i] = Rational(1);
    }
    auto piv = rref(m, 2 * n);
    bool ok = piv.size() == n;
    for (size_t i = 0; ok && i < n; ++i) ok = piv[i] == i;
    if (!ok) throw std::logic_error("jacobi: singular generator matrix");
    std::vector<Row> out(n, Row(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
    return out;
}

JacobiDiagram from_matrix(const std::vector<std::vector<int>>& mult) {
    JacobiDiagram d;
    int t = static_cast<int>(mult.size());
    for (int i = 0; i < t; ++i) d.add_node(3);
    std::vector<int> next(static_cast<size_t>(t), 0);
    for (int i = 0; i < t; ++i) {
        for (int l = 0; l < mult[static_cast<size_t>(i)][static_cast<size_t>(i)]; ++l) {
            int& s = next[static_cast<size_t>(i)];
            d.connect(d.port(i, s), d.port(i, s + 1));
            s += 2;
        }
        for (int j = i + 1; j < t; ++j)
            for (int e = 0; e < mult[static_cast<size_t>(i)][static_cast<size_t>(j)]; ++e)
                d.connect(d.port(i, next[static_cast<size_t>(i)]++), d.port(j, next[static_cast<size_t>(j)]++));
    }
    return d;
}

std::vector<std::vector<int>> partitions(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int left, int maxpart) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(left, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(left - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
}

std::string necklace_name(const std::vector<int>& parts) {
    std::string out;
    size_t i = 0;
    while (i < parts.size()) {
        size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        if (!out.empty()) out += "*";
        out += parts[i] == 1 ? "theta" : "N" + std::to_string(parts[i]);
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

std::mutex g_basis_mutex;
std::map<std::pair<int, bool>, ReducedBasis> g_bases;

ReducedBasis build_basis(int degree, bool kill_theta) {
    ReducedBasis b;
    b.degree = degree;
    b.kill_theta = kill_theta;
    std::map<std::string, size_t> index;
    std::vector<std::string> keys;
    auto var = [&](const std::string& k) {
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        index.emplace(k, keys.size());
        keys.push_back(k);
        return keys.size() - 1;
    };
    auto sources = enumerate_closed(degree, true);
    for (const auto& g : sources) {
        auto c = canonical(g);
        if (!c.zero) var(c.key);
    }
    b.diagram_count = keys.size();

    std::vector<std::map<size_t, Rational>> rels;
    for (const auto& g : sources) {
        for (int n = 0; n < g.node_count(); ++n) {
            for (int s = 0; s < 3; ++s) {
                int p = g.port(n, s), m = g.mate(p);
                if (g.node_of(m) == n || p > m) continue;
                std::map<size_t, Rational> row;
                for (const auto& term : ihx_terms(g, p)) {
                    auto c = canonical(term);
                    if (c.zero) continue;
                    row[var(c.key)] += Rational(c.sign);
                }
                std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
                if (!row.empty()) rels.push_back(std::move(row));
            }
        }
    }
    if (kill_theta) {
        std::vector<JacobiDiagram> lower;
        if (degree == 1) lower.push_back(JacobiDiagram{});
        else lower = enumerate_closed(degree - 1, false);
        for (const auto& x : lower) {
            auto c = canonical(JacobiDiagram::disjoint_union(theta(), x));
            if (c.zero) continue;
            rels.push_back({{var(c.key), Rational(1)}});
        }
    }
    b.relation_count = rels.size();

    size_t n = keys.size();
    std::vector<Row> dense;
    dense.reserve(rels.size());
    for (const auto& r : rels) {
        Row row(n, Rational(0));
        for (const auto& [i, c] : r) row[i] = c;
        dense.push_back(std::move(row));
    }
    auto phi = nullspace(std::move(dense), n);
    size_t q = phi.empty() ? 0 : phi[0].size();

    struct Cand {
        std::string key, name;
        int sign;
        JacobiDiagram diagram;
    };
    std::vector<Cand> cands;
    for (const auto& parts : partitions(degree)) {
        JacobiDiagram g;
        for (int p : parts) g = JacobiDiagram::disjoint_union(g, necklace(p));
        auto c = canonical(g);
        if (!c.zero) cands.push_back({c.key, necklace_name(parts), c.sign, g});
    }
    for (const auto& g : sources) {
        auto c = canonical(g);
        if (!c.zero) cands.push_back({c.key, "[" + c.key + "]", 1, canonical_rep(g)});
    }

    std::vector<Row> chosen;
    std::set<std::string> seen;
    for (const auto& cd : cands) {
        if (chosen.size() == q) break;
        if (!seen.insert(cd.key).second) continue;
        Row row = phi[index.at(cd.key)];
        if (cd.sign < 0)
            for (auto& x : row) x = -x;
        auto trial = chosen;
        trial.push_back(row);
        if (rank_of(trial, q) == trial.size()) {
            chosen.push_back(std::move(row));
            b.generator_keys.push_back(cd.key);
            b.generator_names.push_back(cd.name);
            b.generators.push_back(cd.diagram);
        }
    }
    if (chosen.size() != q) throw std::logic_error("jacobi: could not complete a generator set");

    // x = sum c_i g_i mod relations; Phi^T x = G^T c with G rows = Phi[g_i].
    std::vector<Row> gt(q, Row(q));
    for (size_t i = 0; i < q; ++i)
        for (size_t j = 0; j < q; ++j) gt[j][i] = chosen[i][j];
    auto ginv = inverse(gt);
    for (size_t k = 0; k < n; ++k) {
        Row c(q, Rational(0));
        for (size_t i = 0; i < q; ++i)
            for (size_t j = 0; j < q; ++j) c[i] += ginv[i][j] * phi[k][j];
        b.key_coords.emplace(keys[k], std::move(c));
    }
    return b;
}

}  // namespace

std::vector<JacobiDiagram> enumerate_closed(int degree, bool allow_loops) {
    if (degree < 1) throw std::invalid_argument("jacobi: enumeration needs degree >= 1");
    int t = 2 * degree;
    std::vector<std::vector<int>> mult(static_cast<size_t>(t), std::vector<int>(static_cast<size_t>(t), 0));
    std::vector<int> left(static_cast<size_t>(t), 3);
    std::vector<JacobiDiagram> out;
    std::function<void(int, int)> rec = [&](int i, int j) {
        if (i == t) {
            out.push_back(from_matrix(mult));
            return;
        }
        if (j == t) {
            if (left[static_cast<size_t>(i)] == 0) rec(i + 1, i + 1);
            return;
        }
        auto& li = left[static_cast<size_t>(i)];
        if (i == j) {
            int maxl = allow_loops ? li / 2 : 0;
            for (int l = 0; l <= maxl; ++l) {
                mult[static_cast<size_t>(i)][static_cast<size_t>(i)] = l;
                li -= 2 * l;
                rec(i, j + 1);
                li += 2 * l;
            }
            mult[static_cast<size_t>(i)][static_cast<size_t>(i)] = 0;
            return;
        }
        auto& lj = left[static_cast<size_t>(j)];
        int maxe = std::min(li, lj);
        for (int e = 0; e <= maxe; ++e) {
            mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = e;
            li -= e;
            lj -= e;
            rec(i, j + 1);
            li += e;
            lj += e;
        }
        mult[static_cast<size_t>(i)][static_cast<size_t>(j)] = 0;
    };
    rec(0, 0);
    if (!allow_loops) {
        std::vector<JacobiDiagram> dedup;
        std::set<std::string> seen;
        for (auto& g : out) {
            auto c = canonical(g);
            if (c.zero || !seen.insert(c.key).second) continue;
            dedup.push_back(std::move(g));
        }
        return dedup;
    }
    return out;
}

ReducedBasis aspace_basis(int degree, bool kill_theta) {
    if (degree < 1 || degree > 3) throw std::invalid_argument("jacobi: reduction is implemented for degrees 1..3");
    {
        std::lock_guard<std::mutex> lock(g_basis_mutex);
        auto it = g_bases.find({degree, kill_theta});
        if (it != g_bases.end()) return it->second;
    }
    ReducedBasis b = build_basis(degree, kill_theta);
    std::lock_guard<std::mutex> lock(g_basis_mutex);
    g_bases.emplace(std::make_pair(degree, kill_theta), b);
    return b;
}

Reduction aspace_reduce(const DiagramSum& s, bool kill_theta) {
    Reduction r;
    for (const auto& [k, t] : s.terms()) {
        if (!t.rep.is_closed()) throw std::invalid_argument("jacobi: reduction needs closed diagrams");
        if (t.rep.circles() != 0) throw std::invalid_argument("jacobi: reduction does not accept circle components");
        int deg = t.rep.degree();
        if (deg == 0) {
            r.constant += t.coeff;
            continue;
        }
        if (!r.bases.count(deg)) {
            r.bases.emplace(deg, aspace_basis(deg, kill_theta));
            r.coords[deg] = std::vector<Rational>(r.bases[deg].generator_keys.size(), Rational(0));
        }
        const auto& kc = r.bases[deg].key_coords;
        auto it = kc.find(k);
        if (it == kc.end()) throw std::logic_error("jacobi: diagram class missing from enumeration");
        auto& c = r.coords[deg];
        for (size_t i = 0; i < c.size(); ++i) c[i] += t.coeff * it->second[i];
    }
    return r;
}

RelationSanity relation_sanity(int maxdeg) {
    RelationSanity rs;
    auto check_diagram = [&](const JacobiDiagram& g) {
        WeightPoly w = sl2_weight_direct(g);
        for (int n = 0; n < g.node_count(); ++n) {
            if (!g.alive(n) || g.arity(n) != 3) continue;
            JacobiDiagram f = g;
            f.flip(n);
            ++rs.as_checked;
            if (!(w + sl2_weight_direct(f)).is_zero()) ++rs.as_failures;
            for (int s = 0; s < 3; ++s) {
                int p = g.port(n, s), m = g.mate(p);
                int mn = g.node_of(m);
                if (mn == n || g.arity(mn) != 3 || p > m) continue;
                WeightPoly sum;
                for (const auto& term : ihx_terms(g, p)) sum += sl2_weight_direct(term);
                ++rs.ihx_checked;
                if (!sum.is_zero()) ++rs.ihx_failures;
            }
        }
    };
    for (int d = 1; d <= maxdeg; ++d)
        for (const auto& g : enumerate_closed(d, true)) check_diagram(g);
    for (const auto& g : {wheel(2), wheel(3), wheel(4), bubble_chain(2), bubble_chain(3), bubbled_wheel(4)})
        check_diagram(g);
    for (int d = 1; d < maxdeg; ++d) {
        for (const auto& x : enumerate_closed(d, false)) {
            ++rs.theta_checked;
            if (!sl2_weight(JacobiDiagram::disjoint_union(theta(), x)).is_zero()) ++rs.theta_nonzero;
        }
    }
    return rs;
}

}  // namespace knotsurg
