#include "knotsurg/knotpoly.hpp"

#include <numeric>
#include <stdexcept>

namespace knotsurg {

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(static_cast<size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[static_cast<size_t>(x)] != x) {
            p[static_cast<size_t>(x)] = p[static_cast<size_t>(p[static_cast<size_t>(x)])];
            x = p[static_cast<size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        p[static_cast<size_t>(a)] = b;
        return true;
    }
};

// Integer determinant by fraction-free elimination.
Integer bareiss_det(std::vector<std::vector<Integer>> m) {
    const size_t n = m.size();
    if (n == 0) return Integer(1);
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && m[r][k] == 0) ++r;
            if (r == n) return Integer(0);
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace

LaurentPoly kauffman_bracket(const PDCode& k) {
    const size_t n = k.crossing_count();
    if (n == 0) return LaurentPoly(Rational(1));
    if (n > kMaxStateSumCrossings)
        throw std::invalid_argument("state sum limited to " + std::to_string(kMaxStateSumCrossings) +
                                    " crossings");
    const int arcs = k.arc_count();
    const auto& xs = k.crossings();
    // counts[nA][loops]
    std::vector<std::vector<long>> counts(n + 1, std::vector<long>(static_cast<size_t>(arcs) + 1, 0));
    for (unsigned long state = 0; state < (1ul << n); ++state) {
        UnionFind uf(arcs);
        int loops = arcs;
        size_t na = 0;
        for (size_t i = 0; i < n; ++i) {
            const Crossing& x = xs[i];
            if (state & (1ul << i)) {  // B-smoothing
                loops -= uf.unite(x[0] - 1, x[3] - 1);
                loops -= uf.unite(x[1] - 1, x[2] - 1);
            } else {  // A-smoothing
                ++na;
                loops -= uf.unite(x[0] - 1, x[1] - 1);
                loops -= uf.unite(x[2] - 1, x[3] - 1);
            }
        }
        ++counts[na][static_cast<size_t>(loops)];
    }
    LaurentPoly delta = LaurentPoly::monomial(2, Rational(-1)) + LaurentPoly::monomial(-2, Rational(-1));
    std::vector<LaurentPoly> dpow(static_cast<size_t>(arcs) + 1);
    dpow[0] = LaurentPoly(Rational(1));
    for (size_t i = 1; i < dpow.size(); ++i) dpow[i] = dpow[i - 1] * delta;
    LaurentPoly result;
    for (size_t na = 0; na <= n; ++na) {
        int e = static_cast<int>(na) - static_cast<int>(n - na);
        for (size_t loops = 1; loops < counts[na].size(); ++loops) {
            if (counts[na][loops] == 0) continue;
            result += LaurentPoly::monomial(e, Rational(counts[na][loops])) * dpow[loops - 1];
        }
    }
    return result;
}

LaurentPoly jones(const PDCode& k) {
    LaurentPoly br = kauffman_bracket(k);
    int w = k.writhe();
    // (-A^3)^(-w)
    LaurentPoly f = LaurentPoly::monomial(-3 * w, Rational((w % 2 == 0) ? 1 : -1));
    LaurentPoly a = f * br;
    // A = t^(-1/4)
    return a.scale_exponents(-1).divide_exponents(4);
}

LaurentPoly alexander(const PDCode& k) {
    const size_t n = k.crossing_count();
    if (n <= 1) return LaurentPoly(Rational(1));
    const auto& xs = k.crossings();
    const int m = k.arc_count();
    // For each arc: the crossing where it ends and whether it ends under.
    std::vector<bool> ends_under(static_cast<size_t>(m) + 1, false);
    for (const auto& x : xs) ends_under[static_cast<size_t>(x[0])] = true;
    // Wirtinger generators: a new one starts after each under-passage.
    std::vector<int> gen(static_cast<size_t>(m) + 1, -1);
    int start = xs[0][2];
    int g = 0;
    int arc = start;
    for (int step = 0; step < m; ++step) {
        gen[static_cast<size_t>(arc)] = g;
        if (ends_under[static_cast<size_t>(arc)]) ++g;
        arc = arc % m + 1;
    }
    if (g != static_cast<int>(n)) throw std::logic_error("generator count mismatch");

    // Row i is linear in t: lin[i][j] + t * tc[i][j].
    std::vector<std::vector<long>> c0(n, std::vector<long>(n, 0)), c1(n, std::vector<long>(n, 0));
    for (size_t i = 0; i < n; ++i) {
        const Crossing& x = xs[i];
        size_t over = static_cast<size_t>(gen[static_cast<size_t>(x[1])]);
        size_t uin = static_cast<size_t>(gen[static_cast<size_t>(x[0])]);
        size_t uout = static_cast<size_t>(gen[static_cast<size_t>(x[2])]);
        if (k.signs()[i] > 0) {
            c0[i][over] += 1;
            c1[i][over] -= 1;
            c1[i][uin] += 1;
            c0[i][uout] -= 1;
        } else {
            c1[i][over] += 1;
            c0[i][over] -= 1;
            c0[i][uin] += 1;
            c1[i][uout] -= 1;
        }
    }
    const size_t sz = n - 1;
    auto det_at = [&](long t) {
        std::vector<std::vector<Integer>> mat(sz, std::vector<Integer>(sz));
        for (size_t i = 0; i < sz; ++i)
            for (size_t j = 0; j < sz; ++j) mat[i][j] = c0[i][j] + t * c1[i][j];
        return bareiss_det(mat);
    };
    // Degree <= sz; interpolate through sz+1 points, check one more.
    std::vector<long> xsamp;
    std::vector<Rational> ys;
    for (size_t i = 0; i <= sz; ++i) {
        xsamp.push_back(static_cast<long>(i) + 2);
        ys.push_back(Rational(det_at(xsamp.back())));
    }
    // Newton divided differences.
    std::vector<Rational> dd = ys;
    for (size_t j = 1; j < dd.size(); ++j)
        for (size_t i = dd.size() - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rational(xsamp[i] - xsamp[i - j]);
            if (i == j) break;
        }
    LaurentPoly poly;
    LaurentPoly basis(Rational(1));
    for (size_t i = 0; i < dd.size(); ++i) {
        poly += basis * dd[i];
        basis = basis * (LaurentPoly::monomial(1) - LaurentPoly(Rational(xsamp[i])));
    }
    long extra = static_cast<long>(sz) + 3;
    if (poly.eval(Rational(extra)) != Rational(det_at(extra)))
        throw std::logic_error("Alexander interpolation check failed");
    if (poly.is_zero()) throw std::invalid_argument("Alexander minor vanishes identically");
    int lo = poly.min_degree(), hi = poly.max_degree();
    if ((lo + hi) % 2 != 0) throw std::logic_error("Alexander polynomial has odd span");
    LaurentPoly sym = poly.shift(-(lo + hi) / 2);
    Rational at1 = sym.eval(Rational(1));
    if (at1 != Rational(1) && at1 != Rational(-1))
        throw std::logic_error("Alexander polynomial does not satisfy Delta(1) = +-1");
    if (at1 == Rational(-1)) sym = -sym;
    if (sym != sym.invert()) throw std::logic_error("Alexander polynomial is not symmetric");
    return sym;
}

std::vector<Rational> conway_coeffs(const LaurentPoly& delta) {
    if (delta.is_zero()) throw std::invalid_argument("zero Alexander polynomial");
    if (delta != delta.invert()) throw std::invalid_argument("Alexander polynomial is not symmetric");
    LaurentPoly r = delta;
    int top = delta.max_degree();
    if (top < 0) throw std::invalid_argument("bad Alexander polynomial");
    std::vector<Rational> a(static_cast<size_t>(top) + 1);
    for (int kdeg = top; kdeg >= 0; --kdeg) {
        Rational c = r.coeff(kdeg);
        a[static_cast<size_t>(kdeg)] = c;
        if (c.is_zero()) continue;
        // z^(2k) = sum_i C(2k,i) (-1)^i t^(k-i)
        for (int i = 0; i <= 2 * kdeg; ++i) {
            Rational b(binomial(static_cast<unsigned long>(2 * kdeg), static_cast<unsigned long>(i)));
            if (i % 2) b = -b;
            r.add_term(kdeg - i, -c * b);
        }
    }
    if (!r.is_zero()) throw std::logic_error("Conway conversion left a residual");
    return a;
}

std::vector<Rational> jones_h_coeffs(const LaurentPoly& v, int order) {
    return laurent_substitute_exp(v, +1, order).coeffs();
}

std::vector<Rational> dseries(const LaurentPoly& delta, int order) {
    TruncSeries s = laurent_substitute_exp(delta, +1, order);
    TruncSeries l = series_log(s) * Rational(-1, 2);
    for (int i = 1; i <= order; i += 2)
        if (!l[i].is_zero()) throw std::logic_error("odd dseries coefficient is nonzero");
    return l.coeffs();
}

PolySet compute_polys(const PDCode& k, int order) {
    PolySet p;
    p.jones = jones(k);
    p.alexander = alexander(k);
    p.conway = conway_coeffs(p.alexander);
    p.j = jones_h_coeffs(p.jones, order);
    p.d = dseries(p.alexander, order);
    return p;
}

}  // namespace knotsurg
