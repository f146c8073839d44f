#include "knotsurg/dioph.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace knotsurg {

namespace {

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer mod_pos(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool divides(const Integer& d, const Integer& n) { return d != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()); }

struct QuadPair {
    Integer x, y;
};

// (x1 + y1 sqrt D)(x2 + y2 sqrt D)
QuadPair qmul(const QuadPair& s, const QuadPair& t, const Integer& D) {
    return {s.x * t.x + D * s.y * t.y, s.x * t.y + s.y * t.x};
}

QuadPair qmul_mod(const QuadPair& s, const QuadPair& t, const Integer& D, const Integer& m) {
    return {mod_pos(s.x * t.x + D * s.y * t.y, m), mod_pos(s.x * t.y + s.y * t.x, m)};
}

// Primes up to `limit` dividing n (n != 0).
std::vector<long> small_prime_divisors(const Integer& n, long limit) {
    std::vector<long> ps;
    for (long p = 2; p <= limit; ++p) {
        bool prime = true;
        for (long d = 2; d * d <= p; ++d)
            if (p % d == 0) {
                prime = false;
                break;
            }
        if (prime && mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) ps.push_back(p);
    }
    return ps;
}

// True if a x^2 - b y^2 == c has a solution modulo m.
bool solvable_mod(const Integer& a, const Integer& b, const Integer& c, long m) {
    Integer M(m);
    std::vector<char> lhs(static_cast<size_t>(m), 0);
    for (long x = 0; x < m; ++x) lhs[mod_pos(a * x * x, M).get_ui()] = 1;
    for (long y = 0; y < m; ++y)
        if (lhs[mod_pos(b * y * y + c, M).get_ui()]) return true;
    return false;
}

constexpr long kSieveLimit = 1000;

// Smallest prime-power modulus <= kSieveLimit with no residue solution, or 0.
// Moduli prime to 2abc always admit residue solutions, and by CRT a
// composite modulus fails only if one of its prime-power factors does.
long sieve_modulus(const Integer& a, const Integer& b, const Integer& c) {
    Integer prod = 2 * abs(a) * abs(b) * (c == 0 ? Integer(1) : Integer(abs(c)));
    std::vector<long> moduli;
    for (long p : small_prime_divisors(prod, kSieveLimit))
        for (long q = p; q <= kSieveLimit; q *= p) moduli.push_back(q);
    std::sort(moduli.begin(), moduli.end());
    for (long m : moduli)
        if (!solvable_mod(a, b, c, m)) return m;
    return 0;
}

std::vector<Integer> positive_divisors(const Integer& n) {
    std::vector<Integer> small, large;
    Integer an = abs(n);
    for (Integer d = 1; d * d <= an; ++d) {
        if (divides(d, an)) {
            small.push_back(d);
            Integer e = an / d;
            if (e != d) large.push_back(e);
        }
    }
    std::reverse(large.begin(), large.end());
    small.insert(small.end(), large.begin(), large.end());
    return small;
}

void sort_unique(std::vector<std::pair<Integer, Integer>>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

// Continued fraction state machine for (P + sqrt D)/Q.
struct CFState {
    Integer P, Q;
    bool operator<(const CFState& o) const { return P < o.P || (P == o.P && Q < o.Q); }
};

Integer cf_digit(const Integer& P, const Integer& Q, const Integer& s) {
    // floor((P + sqrt D)/Q) for nonsquare D with s = floor(sqrt D)
    if (Q > 0) return floor_div(P + s, Q);
    return -(floor_div(P + s, -Q) + 1);
}

}  // namespace

std::string to_string(DiophVerdict v) {
    switch (v) {
        case DiophVerdict::Unsolvable: return "UNSOLVABLE";
        case DiophVerdict::Finite: return "FINITE";
        case DiophVerdict::Infinite: return "INFINITE";
    }
    return "?";
}

std::string to_string(DiophWitness::Kind k) {
    switch (k) {
        case DiophWitness::Kind::None: return "none";
        case DiophWitness::Kind::Modulus: return "modulus";
        case DiophWitness::Kind::Definite: return "definite";
        case DiophWitness::Kind::Degenerate: return "degenerate";
        case DiophWitness::Kind::Irrational: return "irrational";
        case DiophWitness::Kind::Divisors: return "divisors";
        case DiophWitness::Kind::Classes: return "classes";
    }
    return "?";
}

std::string to_string(DiophFamily::Kind k) {
    switch (k) {
        case DiophFamily::Kind::Pell: return "pell";
        case DiophFamily::Kind::Ray: return "ray";
        case DiophFamily::Kind::PFree: return "p-free";
        case DiophFamily::Kind::QFree: return "q-free";
        case DiophFamily::Kind::All: return "all";
    }
    return "?";
}

long dioph_step_budget() {
    if (const char* e = std::getenv("KNOTSURG_DIOPH_STEPS")) {
        long v = std::strtol(e, nullptr, 10);
        if (v > 0) return v;
    }
    return 2000000;
}

bool is_solution(const Integer& a, const Integer& b, const Integer& c, const Integer& p, const Integer& q) {
    return q >= 1 && a * p * p - b * q * q == c;
}

std::pair<Integer, Integer> pell_fundamental(const Integer& D) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("Pell equation needs a positive nonsquare D");
    Integer a0 = isqrt(D);
    Integer m = 0, d = 1, a = a0;
    Integer h1 = 1, h = a0, k1 = 0, k = 1;
    const long budget = dioph_step_budget();
    for (long i = 0; i < budget; ++i) {
        if (h * h - D * k * k == 1) return {h, k};
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        Integer h2 = a * h + h1, k2 = a * k + k1;
        h1 = h;
        k1 = k;
        h = h2;
        k = k2;
    }
    throw DiophBudgetExceeded("Pell continued fraction exceeded step budget");
}

std::optional<std::pair<Integer, Integer>> pell_negative(const Integer& D) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("Pell equation needs a positive nonsquare D");
    Integer a0 = isqrt(D);
    Integer m = 0, d = 1, a = a0;
    Integer h1 = 1, h = a0, k1 = 0, k = 1;
    const long budget = dioph_step_budget();
    for (long i = 0; i < budget; ++i) {
        Integer n = h * h - D * k * k;
        if (n == -1) return std::make_pair(h, k);
        if (n == 1) return std::nullopt;
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        Integer h2 = a * h + h1, k2 = a * k + k1;
        h1 = h;
        k1 = k;
        h = h2;
        k = k2;
    }
    throw DiophBudgetExceeded("Pell continued fraction exceeded step budget");
}

std::vector<std::pair<Integer, Integer>> generalized_pell_classes(const Integer& D, const Integer& N) {
    if (D <= 0 || is_square(D)) throw std::invalid_argument("need positive nonsquare D");
    if (N == 0) throw std::invalid_argument("need N != 0");
    const Integer s = isqrt(D);
    const long budget = dioph_step_budget();
    auto neg = pell_negative(D);
    std::vector<std::pair<Integer, Integer>> out;
    Integer absN = abs(N);
    for (Integer f = 1; f * f <= absN; ++f) {
        if (!divides(f * f, absN)) continue;
        Integer m = N / (f * f);
        Integer am = abs(m);
        // z in (-|m|/2, |m|/2] with z^2 = D mod |m|
        Integer zlo = -floor_div(am - 1, Integer(2));
        Integer zhi = floor_div(am, Integer(2));
        if (am > budget) throw DiophBudgetExceeded("square-root search modulus exceeds budget");
        for (Integer z = zlo; z <= zhi; ++z) {
            if (mod_pos(z * z - D, am) != 0) continue;
            Integer P = z, Q = am;
            Integer G2 = -P, G1 = Q;  // G_{-2}, G_{-1}
            Integer B2 = 1, B1 = 0;   // B_{-2}, B_{-1}
            std::set<CFState> seen;
            bool found = false;
            Integer gx, gy;
            for (long i = 0;; ++i) {
                if (i >= budget) throw DiophBudgetExceeded("continued fraction exceeded step budget");
                if (i >= 1 && (Q == 1 || Q == -1)) {
                    Integer val = G1 * G1 - D * B1 * B1;
                    if (val == m) {
                        gx = G1;
                        gy = B1;
                        found = true;
                    } else if (val == -m && neg) {
                        const auto& [r, t] = *neg;
                        gx = r * G1 + t * B1 * D;
                        gy = r * B1 + t * G1;
                        found = true;
                    }
                    break;
                }
                if (!seen.insert({P, Q}).second) break;
                Integer a = cf_digit(P, Q, s);
                Integer G = a * G1 + G2, B = a * B1 + B2;
                G2 = G1;
                G1 = G;
                B2 = B1;
                B1 = B;
                Integer Pn = a * Q - P;
                Integer Qn = (D - Pn * Pn) / Q;
                P = Pn;
                Q = Qn;
            }
            if (found) {
                gx *= f;
                gy *= f;
                if (gx * gx - D * gy * gy != N) throw std::logic_error("class representative check failed");
                out.emplace_back(gx, gy);
            }
        }
    }
    return out;
}

namespace {

DiophResult solve_reduced(DiophResult r) {
    const Integer &a = r.ra, &b = r.rb, &c = r.rc;
    // Degenerate forms.
    if (a == 0 && b == 0) {
        r.verdict = DiophVerdict::Unsolvable;
        r.witness.kind = DiophWitness::Kind::Degenerate;
        r.witness.detail = "0 = c with c != 0";
        return r;
    }
    if (a == 0) {
        // -b q^2 = c
        if (!divides(b, -c)) {
            r.verdict = DiophVerdict::Unsolvable;
            r.witness.kind = DiophWitness::Kind::Degenerate;
            r.witness.detail = "q^2 = -c/b is not an integer";
            return r;
        }
        Integer q2 = -c / b;
        if (q2 <= 0 || !is_square(q2)) {
            r.verdict = DiophVerdict::Unsolvable;
            r.witness.kind = DiophWitness::Kind::Degenerate;
            r.witness.detail = q2 == 0 ? "requires q = 0" : "q^2 = -c/b is not a positive square";
            return r;
        }
        r.verdict = DiophVerdict::Infinite;
        DiophFamily f;
        f.kind = DiophFamily::Kind::PFree;
        f.q0 = isqrt(q2);
        r.families.push_back(f);
        return r;
    }
    if (b == 0) {
        if (!divides(a, c) || c / a < 0 || !is_square(c / a)) {
            r.verdict = DiophVerdict::Unsolvable;
            r.witness.kind = DiophWitness::Kind::Degenerate;
            r.witness.detail = "p^2 = c/a is not an integer square";
            return r;
        }
        r.verdict = DiophVerdict::Infinite;
        DiophFamily f;
        f.kind = DiophFamily::Kind::QFree;
        f.p0 = isqrt(c / a);
        r.families.push_back(f);
        return r;
    }
    r.D = a * b;
    r.N = a * c;
    const Integer& D = r.D;
    const Integer& N = r.N;
    if (D < 0) {
        // a p^2 + |b| q^2 = c with a > 0.
        Integer B = -b;
        r.witness.p_bound = c >= 0 ? isqrt(c / a) : Integer(0);
        r.witness.q_bound = c >= 0 ? isqrt(c / B) : Integer(0);
        for (Integer q = 1; B * q * q <= c; ++q) {
            Integer rest = c - B * q * q;
            if (!divides(a, rest)) continue;
            Integer p2 = rest / a;
            if (!is_square(p2)) continue;
            Integer p = isqrt(p2);
            r.solutions.emplace_back(p, q);
            if (p != 0) r.solutions.emplace_back(-p, q);
        }
        sort_unique(r.solutions);
        if (r.solutions.empty()) {
            r.verdict = DiophVerdict::Unsolvable;
            r.witness.kind = DiophWitness::Kind::Definite;
            r.witness.detail = "positive definite form; bounded enumeration is empty";
        } else {
            r.verdict = DiophVerdict::Finite;
        }
        return r;
    }
    if (is_square(D)) {
        Integer s = isqrt(D);
        if (N == 0) {
            Integer g = gcd(s, a);
            DiophFamily f;
            f.kind = DiophFamily::Kind::Ray;
            f.p0 = s / g;
            f.q0 = a / g;
            f.both_signs = true;
            r.families.push_back(f);
            r.verdict = DiophVerdict::Infinite;
            return r;
        }
        // (x - s y)(x + s y) = N
        for (const Integer& d0 : positive_divisors(N)) {
            for (int sg : {1, -1}) {
                Integer d = sg * d0;
                Integer e = N / d;
                if (!divides(Integer(2), d + e) || !divides(2 * s, e - d)) continue;
                Integer x = (d + e) / 2, y = (e - d) / (2 * s);
                if (y < 1 || !divides(a, x)) continue;
                r.solutions.emplace_back(x / a, y);
            }
        }
        sort_unique(r.solutions);
        if (r.solutions.empty()) {
            r.verdict = DiophVerdict::Unsolvable;
            r.witness.kind = DiophWitness::Kind::Divisors;
            r.witness.detail = "no factorization of N = " + N.get_str() + " fits";
        } else {
            r.verdict = DiophVerdict::Finite;
        }
        return r;
    }
    if (N == 0) {
        r.verdict = DiophVerdict::Unsolvable;
        r.witness.kind = DiophWitness::Kind::Irrational;
        r.witness.detail = "p/q would equal sqrt(b/a), which is irrational";
        return r;
    }
    if (long m = sieve_modulus(a, b, c)) {
        r.verdict = DiophVerdict::Unsolvable;
        r.witness.kind = DiophWitness::Kind::Modulus;
        r.witness.modulus = m;
        r.witness.detail = "no solution modulo " + std::to_string(m);
        return r;
    }
    auto unit = pell_fundamental(D);
    r.unit = unit;
    QuadPair eps{unit.first, unit.second};
    auto classes = generalized_pell_classes(D, N);
    const long budget = dioph_step_budget();
    // Order of the unit modulo a.
    long ord = 1;
    {
        QuadPair e{mod_pos(eps.x, a), mod_pos(eps.y, a)};
        QuadPair cur = e;
        QuadPair one{mod_pos(Integer(1), a), 0};
        while (!(cur.x == one.x && cur.y == one.y)) {
            cur = qmul_mod(cur, e, D, a);
            if (++ord > budget) throw DiophBudgetExceeded("unit order search exceeded budget");
        }
    }
    std::ostringstream note;
    note << classes.size() << " class(es) of x^2 - " << D << " y^2 = " << N << "; unit order mod " << a
         << " is " << ord;
    QuadPair step = {1, 0};
    for (long i = 0; i < ord; ++i) step = qmul(step, eps, D);
    for (const auto& [cx, cy] : classes) {
        QuadPair cur{cx, cy};
        QuadPair curmod{mod_pos(cx, a), mod_pos(cy, a)};
        QuadPair emod{mod_pos(eps.x, a), mod_pos(eps.y, a)};
        std::vector<long> valid;
        for (long k = 0; k < ord; ++k) {
            if (curmod.x == 0) valid.push_back(k);
            curmod = qmul_mod(curmod, emod, D, a);
        }
        if (valid.empty()) continue;
        bool all = static_cast<long>(valid.size()) == ord;
        long kprev = 0;
        for (long k : valid) {
            for (; kprev < k; ++kprev) cur = qmul(cur, eps, D);
            Integer x = cur.x, y = cur.y;
            if (y < 0) {
                x = -x;
                y = -y;
            }
            DiophFamily f;
            f.kind = DiophFamily::Kind::Pell;
            f.p0 = x / a;
            f.q0 = y;
            f.u = all ? eps.x : step.x;
            f.v = all ? eps.y : step.y;
            r.families.push_back(f);
            if (all) break;
        }
    }
    if (r.families.empty()) {
        r.verdict = DiophVerdict::Unsolvable;
        r.witness.kind = DiophWitness::Kind::Classes;
        r.witness.detail = note.str() + "; no orbit element has x divisible by a";
    } else {
        r.verdict = DiophVerdict::Infinite;
    }
    return r;
}

}  // namespace

DiophResult solve(const Integer& a, const Integer& b, const Integer& c) {
    DiophResult r;
    r.a = a;
    r.b = b;
    r.c = c;
    if (a == 0 && b == 0 && c == 0) {
        r.verdict = DiophVerdict::Infinite;
        DiophFamily f;
        f.kind = DiophFamily::Kind::All;
        r.families.push_back(f);
        r.ra = r.rb = r.rc = 0;
        return r;
    }
    Integer g = gcd(gcd(a, b), c);
    r.ra = a / g;
    r.rb = b / g;
    r.rc = c / g;
    if (r.ra < 0 || (r.ra == 0 && r.rb < 0)) {
        r.ra = -r.ra;
        r.rb = -r.rb;
        r.rc = -r.rc;
    }
    return solve_reduced(std::move(r));
}

bool verify_witness(const Integer& a, const Integer& b, const Integer& c, const DiophWitness& w) {
    switch (w.kind) {
        case DiophWitness::Kind::Modulus: {
            if (w.modulus < 2 || !w.modulus.fits_slong_p()) return false;
            // the witness is for the equation divided by gcd(a, b, c)
            Integer g = gcd(gcd(a, b), c);
            if (g == 0) return false;
            return !solvable_mod(a / g, b / g, c / g, w.modulus.get_si());
        }
        case DiophWitness::Kind::Definite: {
            // a and -b of one strict sign: every solution lies in the box.
            if (!((a > 0 && b < 0) || (a < 0 && b > 0))) return false;
            Integer A = abs(a), B = abs(b), C = (a > 0) ? c : Integer(-c);
            for (Integer q = 1; B * q * q <= C; ++q)
                for (Integer p = 0; A * p * p <= C - B * q * q; ++p)
                    if (A * p * p + B * q * q == C) return false;
            return true;
        }
        case DiophWitness::Kind::Degenerate:
        case DiophWitness::Kind::Irrational:
        case DiophWitness::Kind::Divisors:
        case DiophWitness::Kind::Classes: {
            DiophResult r = solve(a, b, c);
            return r.verdict == DiophVerdict::Unsolvable && r.witness.kind == w.kind;
        }
        case DiophWitness::Kind::None: return false;
    }
    return false;
}

std::vector<std::pair<Integer, Integer>> family_members(const DiophResult& r, const DiophFamily& f, int count) {
    std::vector<std::pair<Integer, Integer>> out;
    switch (f.kind) {
        case DiophFamily::Kind::All:
            for (int i = 1; i <= count; ++i) out.emplace_back(i, i);
            break;
        case DiophFamily::Kind::PFree:
            for (int i = 0; i < count; ++i) out.emplace_back(i, f.q0);
            break;
        case DiophFamily::Kind::QFree:
            for (int i = 1; i <= count; ++i) out.emplace_back(f.p0, i);
            break;
        case DiophFamily::Kind::Ray:
            for (int i = 1; i <= count; ++i) out.emplace_back(f.p0 * i, f.q0 * i);
            break;
        case DiophFamily::Kind::Pell: {
            const Integer& D = r.D;
            QuadPair base{r.ra * f.p0, f.q0};
            QuadPair fw = base, bw = base;
            QuadPair u{f.u, f.v}, uinv{f.u, -f.v};
            auto emit = [&](const QuadPair& z) {
                Integer x = z.x, y = z.y;
                if (y < 0) {
                    x = -x;
                    y = -y;
                }
                if (y >= 1 && divides(r.ra, x)) out.emplace_back(x / r.ra, y);
            };
            emit(base);
            for (int i = 1; static_cast<int>(out.size()) < count && i <= 4 * count; ++i) {
                fw = qmul(fw, u, D);
                bw = qmul(bw, uinv, D);
                emit(fw);
                if (static_cast<int>(out.size()) < count) emit(bw);
            }
            break;
        }
    }
    return out;
}

FamilyCheck family_check(const Integer& a, const Integer& b, const Integer& c, const LinearForm& p,
                         const LinearForm& q, const Integer& D) {
    FamilyCheck r;
    r.uu = a * p.cu * p.cu - b * q.cu * q.cu;
    r.uv = 2 * (a * p.cu * p.cv - b * q.cu * q.cv);
    r.vv = a * p.cv * p.cv - b * q.cv * q.cv;
    r.constant = -c;
    r.k = c;
    r.identity = (r.uv == 0) && (r.uu == r.k) && (r.vv == -r.k * D);
    return r;
}

}  // namespace knotsurg
