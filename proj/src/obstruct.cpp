#include "knotsurg/obstruct.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <set>
#include <stdexcept>

namespace knotsurg {

using nlohmann::json;

namespace {

json jnum(const Rational& r) { return r.str(); }
json jnum(const Integer& z) { return z.get_str(); }

Verdict combine(const std::vector<Check>& checks) {
    bool any_pass = false;
    for (const auto& c : checks) {
        if (c.verdict == Verdict::Obstructed) return Verdict::Obstructed;
        if (c.verdict == Verdict::Passes || c.verdict == Verdict::Inconclusive) any_pass = true;
    }
    return any_pass ? Verdict::Passes : Verdict::NotApplicable;
}

Integer lcm_den(const std::vector<Rational>& xs) {
    Integer l = 1;
    for (const auto& x : xs) {
        Integer d = x.den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

Integer gcd_int(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

json slope_json(const Slope& s) { return s.str(); }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Obstructed: return "OBSTRUCTED";
        case Verdict::Passes: return "PASSES";
        case Verdict::NotApplicable: return "NOT-APPLICABLE";
        case Verdict::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

std::string EquivalenceAssumption::str() const {
    std::string s = (kind == Kind::OddCn ? "odd-C_" : "C_") + std::to_string(n);
    return s + (trivial ? "-trivial" : "-equivalent");
}

json ObstructionReport::to_json() const {
    json j;
    j["kind"] = "obstruction";
    j["knot"] = knot;
    j["question"] = question;
    j["overall"] = to_string(overall);
    j["checks"] = json::array();
    for (const auto& c : checks) {
        json cj;
        cj["statement"] = c.statement;
        cj["verdict"] = to_string(c.verdict);
        cj["evidence"] = c.evidence;
        if (!c.note.empty()) cj["note"] = c.note;
        j["checks"].push_back(cj);
    }
    return j;
}

std::vector<long> nw_admissible(long p) {
    if (p < 1) throw std::invalid_argument("nw_admissible needs p >= 1");
    if (p == 1) return {0};
    std::vector<long> out;
    for (long q = 1; q < p; ++q)
        if ((q * q + 1) % p == 0) out.push_back(q);
    return out;
}

bool nw_slope_ok(const Integer& p, const Integer& q) {
    if (p == 0 || q < 1) return false;
    if (gcd_int(p, q) != 1) return false;
    Integer ap = abs(p);
    Integer r;
    Integer t = q * q + 1;
    mpz_mod(r.get_mpz_t(), t.get_mpz_t(), ap.get_mpz_t());
    return r == 0;
}

CosmeticEquation cosmetic_equation(const InvariantSet& k) {
    // Relation: p^2 (24 w4 - 5 v4) + 5 v4 + q^2 (210 v6 + 5 v4) = 0, scaled by 4
    // (or by the coefficient denominators when that is not integral).
    Rational A = Rational(4) * (Rational(24) * k.w4 - Rational(5) * k.v4);
    Rational B = -Rational(4) * (Rational(210) * k.v6 + Rational(5) * k.v4);
    Rational C = -Rational(20) * k.v4;
    Rational L(lcm_den({A, B, C}));
    return {(A * L).num(), (B * L).num(), (C * L).num()};
}

ObstructionReport purely_cosmetic(const InvariantSet& k, int members_checked) {
    ObstructionReport rep;
    rep.knot = k.name;
    rep.question = "purely cosmetic surgery S3(K,r) = S3(K,r'), r != r'";
    {
        Check c{"T1.1.ii", Verdict::Passes, {{"a2", jnum(k.a2)}}, ""};
        if (!k.a2.is_zero()) {
            c.verdict = Verdict::Obstructed;
            c.note = "a2 != 0";
            rep.checks.push_back(c);
            rep.overall = Verdict::Obstructed;
            return rep;
        }
        rep.checks.push_back(c);
    }
    {
        Check c{"C1.4.i", Verdict::Passes, {{"v3", jnum(k.v3)}}, ""};
        if (!k.v3.is_zero()) {
            c.verdict = Verdict::Obstructed;
            c.note = "v3 != 0";
            rep.checks.push_back(c);
            rep.overall = Verdict::Obstructed;
            return rep;
        }
        rep.checks.push_back(c);
    }
    CosmeticEquation eq = cosmetic_equation(k);
    // Same relation assembled from the table quantities directly.
    Rational At = Rational(19) * k.a4 + k.j4, Bt = Rational(420) * k.a6 + Rational(80) * k.a4,
             Ct = Rational(10) * k.a4;
    DiophResult dr = solve(eq.A, eq.B, eq.C);
    Check c{"C1.6.i", Verdict::Passes, json::object(), ""};
    c.evidence["equation"] = json{{"A", jnum(eq.A)}, {"B", jnum(eq.B)}, {"C", jnum(eq.C)},
                                  {"form", "A p^2 - B q^2 = C"}};
    c.evidence["table_form"] = json{{"A", jnum(At)}, {"B", jnum(Bt)}, {"C", jnum(Ct)}};
    c.evidence["dioph"] = dioph_to_json(dr);
    if (dr.verdict == DiophVerdict::Unsolvable) {
        c.verdict = Verdict::Obstructed;
        c.note = "no integer solution with q >= 1";
        rep.checks.push_back(c);
        rep.overall = Verdict::Obstructed;
        return rep;
    }
    rep.checks.push_back(c);
    Check nw{"NW", Verdict::Passes, json::object(), ""};
    std::vector<std::pair<Integer, Integer>> candidates;
    bool exhaustive = false;
    if (dr.verdict == DiophVerdict::Finite) {
        candidates = dr.solutions;
        exhaustive = true;
    } else {
        for (const auto& f : dr.families) {
            auto ms = family_members(dr, f, members_checked);
            candidates.insert(candidates.end(), ms.begin(), ms.end());
        }
    }
    json checked = json::array(), survivors = json::array();
    for (const auto& [p, q] : candidates) {
        json e{{"p", jnum(p)}, {"q", jnum(q)}, {"ok", nw_slope_ok(p, q)}};
        checked.push_back(e);
        if (nw_slope_ok(p, q)) survivors.push_back(e);
    }
    nw.evidence["members"] = checked;
    nw.evidence["survivors"] = survivors;
    nw.evidence["exhaustive"] = exhaustive;
    if (exhaustive && survivors.empty()) {
        nw.verdict = Verdict::Obstructed;
        nw.note = "every solution fails gcd(p,q) = 1, q^2 = -1 mod p";
        rep.checks.push_back(nw);
        rep.overall = Verdict::Obstructed;
        return rep;
    }
    nw.verdict = Verdict::Inconclusive;
    nw.note = exhaustive ? "some solutions satisfy the slope filter"
                         : "infinite family; only finitely many members checked";
    rep.checks.push_back(nw);
    rep.overall = Verdict::Inconclusive;
    return rep;
}

ObstructionReport chiral_cosmetic(const InvariantSet& k, const std::optional<Slope>& r,
                                  const std::optional<Slope>& r2, int max_height) {
    ObstructionReport rep;
    rep.knot = k.name;
    Rational Aq = Rational(7) * k.a2 * k.a2 - k.a2 - Rational(10) * k.a4;
    bool distinct_pair = r && r2 && !(*r2 == *r) && !(r2->p == -r->p && r2->q == r->q);
    if (r && r2 && *r == *r2) {
        rep.question = "chirally cosmetic surgery";
        rep.checks.push_back({"C1.4.iii", Verdict::NotApplicable, {{"r", slope_json(*r)}, {"r2", slope_json(*r2)}},
                              "r = r'"});
        rep.overall = Verdict::NotApplicable;
        return rep;
    }
    if (distinct_pair) {
        rep.question = "S3(K,r) = -S3(K,r') with r' != +-r";
        Check c{"C1.4.iii", Verdict::Passes, {{"r", slope_json(*r)}, {"r2", slope_json(*r2)}}, ""};
        if (abs(r->p) != abs(r2->p)) {
            c.verdict = Verdict::NotApplicable;
            c.note = "|H1| differs: |p| != |p'|";
            rep.checks.push_back(c);
            rep.overall = Verdict::NotApplicable;
            return rep;
        }
        Rational a = r->value(), b = r2->value();
        Rational lhs = a * b / (a + b);
        c.evidence["v3"] = jnum(k.v3);
        c.evidence["rr'/(r+r')"] = jnum(lhs);
        c.evidence["lambda2_difference"] = jnum(lambda2(k, *r) - lambda2(k, *r2));
        c.evidence["branch_iii_a"] = k.v3.is_zero();
        if (k.v3.is_zero()) {
            c.evidence["branch_iii_b"] = false;
            c.note = "v3 = 0 (iii-a)";
        } else {
            Rational rhs = Aq / (Rational(8) * k.v3);
            c.evidence["required"] = jnum(rhs);
            c.evidence["branch_iii_b"] = (lhs == rhs);
            if (lhs != rhs) {
                c.verdict = Verdict::Obstructed;
                c.note = "v3 != 0 and rr'/(r+r') differs from the required ratio";
            } else {
                c.note = "(iii-b) ratio satisfied";
            }
        }
        rep.checks.push_back(c);
        rep.overall = combine(rep.checks);
        return rep;
    }
    rep.question = "S3(K,r) = -S3(K,-r)";
    Check c{"C1.4.ii", Verdict::Passes, {{"v3", jnum(k.v3)}}, ""};
    if (r) c.evidence["r"] = slope_json(*r);
    if (!k.v3.is_zero()) {
        c.verdict = Verdict::Obstructed;
        c.note = "v3 != 0";
        if (r) c.evidence["lambda2_difference"] = jnum(lambda2(k, *r) - lambda2(k, Slope::make(-r->p, r->q)));
    }
    rep.checks.push_back(c);
    Check d{"C1.6.ii", Verdict::NotApplicable, json::object(), ""};
    if (k.v3.is_zero()) {
        d.evidence["conclusion"] = "v5 = 0 is forced";
        if (k.v5) {
            d.evidence["v5"] = jnum(*k.v5);
            if (!k.v5->is_zero()) {
                d.verdict = Verdict::Obstructed;
                d.note = "v5 != 0";
            } else {
                d.verdict = Verdict::Passes;
            }
        } else {
            d.note = "v5 not supplied; conclusion recorded only";
        }
    } else {
        d.note = "hypothesis already contradicted by v3 != 0";
    }
    rep.checks.push_back(d);
    if (!k.v3.is_zero()) {
        // Pairs r != +-r' of small height with |p| = |p'| satisfying (iii-b).
        Check e{"C1.4.iii", Verdict::Passes, json::object(), "candidate pairs for S3(K,r) = -S3(K,r')"};
        Rational rhs = Aq / (Rational(8) * k.v3);
        e.evidence["required"] = jnum(rhs);
        json pairs = json::array();
        auto consider = [&](const Slope& s, const Slope& t) {
            if (s == t || (s.p == -t.p && s.q == t.q)) return;
            Rational a = s.value(), b = t.value();
            if ((a + b).is_zero()) return;
            if (a * b / (a + b) == rhs) pairs.push_back(json{slope_json(s), slope_json(t)});
        };
        std::vector<Slope> slopes;
        for (long p = -max_height; p <= max_height; ++p)
            for (long q = 1; q <= max_height; ++q)
                if (p != 0 && std::gcd(p, q) == 1) slopes.push_back(Slope::make(p, q));
        if (r) {
            for (const auto& t : slopes)
                if (abs(t.p) == abs(r->p)) consider(*r, t);
        } else {
            for (size_t i = 0; i < slopes.size(); ++i)
                for (size_t j = i + 1; j < slopes.size(); ++j)
                    if (abs(slopes[i].p) == abs(slopes[j].p)) consider(slopes[i], slopes[j]);
        }
        e.evidence["max_height"] = max_height;
        e.evidence["pairs"] = pairs;
        rep.checks.push_back(e);
    }
    rep.overall = combine({rep.checks[0], rep.checks[1]});
    return rep;
}

ObstructionReport same_slope(const InvariantSet& k, const InvariantSet& k2, const Slope& r) {
    ObstructionReport rep;
    rep.knot = k.name + (k2.name.empty() ? "" : " vs " + k2.name);
    rep.question = "S3(K,r) = S3(K',r)";
    Check t{"T1.1.i", Verdict::Passes, {{"a2", jnum(k.a2)}, {"a2'", jnum(k2.a2)}}, ""};
    if (k.a2 != k2.a2) {
        t.verdict = Verdict::Obstructed;
        t.note = "a2 differs";
        rep.checks.push_back(t);
        rep.overall = Verdict::Obstructed;
        return rep;
    }
    rep.checks.push_back(t);
    Rational da4 = k.a4 - k2.a4, dv3 = k.v3 - k2.v3;
    Check c{"C1.4.iv", Verdict::Passes,
            {{"r", slope_json(r)}, {"a4-a4'", jnum(da4)}, {"v3-v3'", jnum(dv3)}}, ""};
    if (da4.is_zero() && dv3.is_zero()) {
        c.note = "(iv-a)";
    } else if (da4.is_zero() || dv3.is_zero()) {
        c.verdict = Verdict::Obstructed;
        c.note = "exactly one of a4, v3 agrees";
    } else {
        Rational req = Rational(5) * da4 / (Rational(4) * dv3);
        c.evidence["required_r"] = jnum(req);
        if (r.value() != req) {
            c.verdict = Verdict::Obstructed;
            c.note = "r differs from 5(a4-a4')/(4(v3-v3'))";
        } else {
            c.note = "(iv-b) ratio satisfied";
        }
    }
    rep.checks.push_back(c);
    rep.overall = combine(rep.checks);
    return rep;
}

ObstructionReport lens_surgery(const InvariantSet& k, bool assume_non_torus, const std::optional<Slope>& r) {
    ObstructionReport rep;
    rep.knot = k.name;
    rep.question = "S3(K,p/q) is a lens space";
    Check c{"C1.5", Verdict::Passes, json::object(), ""};
    Rational quad = (Rational(7) * k.a2 * k.a2 - k.a2 - Rational(10) * k.a4) / Rational(8);
    if (!assume_non_torus) {
        if (!r) {
            c.verdict = Verdict::NotApplicable;
            c.note = "no slope given and the non-torus assumption is off";
        } else {
            Rational x = r->value().pow(-1);
            Rational p2inv = Rational(1) / Rational(Integer(r->p * r->p));
            Rational val = quad * x * x - k.v3 * x + k.a2 / Rational(48) * (Rational(1) - p2inv);
            c.evidence["r"] = slope_json(*r);
            c.evidence["value"] = jnum(val);
            if (!val.is_zero()) {
                c.verdict = Verdict::Obstructed;
                c.note = "lens-space relation is nonzero at this slope";
            }
        }
        rep.checks.push_back(c);
        rep.overall = c.verdict;
        return rep;
    }
    Rational A = k.a2, B = -Rational(48) * k.v3;
    Rational C0 = Rational(42) * k.a2 * k.a2 - Rational(7) * k.a2 - Rational(60) * k.a4;
    c.evidence["equation"] = json{{"p^2", jnum(A)}, {"p", jnum(B)}, {"1", jnum(C0)}};
    std::vector<Integer> roots;
    auto add_root = [&](const Rational& x) {
        if (x.is_integer() && !x.is_zero() && std::find(roots.begin(), roots.end(), x.num()) == roots.end())
            roots.push_back(x.num());
    };
    if (A.is_zero()) {
        if (B.is_zero()) {
            c.verdict = C0.is_zero() ? Verdict::NotApplicable : Verdict::Obstructed;
            c.note = C0.is_zero() ? "relation is identically satisfied" : "constant relation is nonzero";
            rep.checks.push_back(c);
            rep.overall = c.verdict;
            return rep;
        }
        add_root(-C0 / B);
    } else {
        Rational disc = B * B - Rational(4) * A * C0;
        c.evidence["discriminant"] = jnum(disc);
        Rational sq;
        if (disc.sign() >= 0 && rational_sqrt(disc, sq)) {
            add_root((-B + sq) / (Rational(2) * A));
            add_root((-B - sq) / (Rational(2) * A));
        }
        Rational quarter = Rational(576) * k.v3 * k.v3 - k.a2 * C0;
        Rational qs;
        c.evidence["square_test_value"] = jnum(quarter);
        c.evidence["square_test"] = quarter.sign() >= 0 && rational_sqrt(quarter, qs) && qs.is_integer();
    }
    std::sort(roots.begin(), roots.end());
    json cand = json::array();
    for (const auto& x : roots) cand.push_back(jnum(x));
    c.evidence["candidates"] = cand;
    bool successive = roots.size() == 2 && roots[1] - roots[0] == 1;
    c.evidence["successive_roots"] = successive;
    if (successive && (k.a2 == Rational(1) || k.a2 == Rational(-1)))
        c.evidence["multiple_lens_surgeries"] = "excluded: successive-integer slopes require a2 != +-1";
    if (roots.empty()) {
        c.verdict = Verdict::Obstructed;
        c.note = "no nonzero integer p satisfies the relation";
    } else if (r) {
        c.evidence["r"] = slope_json(*r);
        if (r->q != 1) {
            c.verdict = Verdict::Obstructed;
            c.note = "non-integral slope on a non-torus knot";
        } else if (std::find(roots.begin(), roots.end(), r->p) == roots.end()) {
            c.verdict = Verdict::Obstructed;
            c.note = "p is not a root of the relation";
        }
    }
    rep.checks.push_back(c);
    rep.overall = c.verdict;
    return rep;
}

ObstructionReport high_even(int mode, int m, const std::map<int, Rational>& coeffs,
                            const std::map<int, Rational>& coeffs2, const EquivalenceAssumption& assumption,
                            const std::string& knot) {
    if (m < 0) throw std::invalid_argument("m must be nonnegative");
    ObstructionReport rep;
    rep.knot = knot;
    auto get = [](const std::map<int, Rational>& mp, int i) {
        auto it = mp.find(i);
        if (it == mp.end()) throw std::invalid_argument("missing Conway coefficient a" + std::to_string(i));
        return it->second;
    };
    if (mode == 1) {
        int deg = 2 * m + 2;
        if (assumption.kind != EquivalenceAssumption::Kind::Cn || assumption.trivial || assumption.n != deg)
            throw std::invalid_argument("hypothesis needs C_" + std::to_string(deg) +
                                        "-equivalence, got " + assumption.str());
        rep.question = "S3(K,r) = S3(K',r)";
        Rational x = get(coeffs, deg), y = get(coeffs2, deg);
        Check c{"T1.10.i", Verdict::Passes,
                {{"assumption", assumption.str()}, {"m", m}, {"degree", deg}, {"a", jnum(x)}, {"a'", jnum(y)}}, ""};
        if (x != y) {
            c.verdict = Verdict::Obstructed;
            c.note = "a_" + std::to_string(deg) + " differs";
        }
        rep.checks.push_back(c);
    } else if (mode == 2) {
        int deg = 4 * m + 2;
        if (assumption.kind != EquivalenceAssumption::Kind::Cn || !assumption.trivial || assumption.n != deg)
            throw std::invalid_argument("hypothesis needs C_" + std::to_string(deg) +
                                        "-triviality, got " + assumption.str());
        rep.question = "S3(K,r) = S3(K,r'), r != r'";
        Rational x = get(coeffs, deg);
        Check c{"T1.10.ii", Verdict::Passes,
                {{"assumption", assumption.str()}, {"m", m}, {"degree", deg}, {"a", jnum(x)}}, ""};
        if (!x.is_zero()) {
            c.verdict = Verdict::Obstructed;
            c.note = "a_" + std::to_string(deg) + " != 0";
        }
        rep.checks.push_back(c);
    } else {
        throw std::invalid_argument("mode must be 1 or 2");
    }
    rep.overall = rep.checks.back().verdict;
    return rep;
}

json SweepSummary::to_json() const {
    json j;
    j["kind"] = "sweep";
    j["rows"] = json::array();
    for (const auto& r : rows) {
        j["rows"].push_back(json{{"name", r.name},
                                 {"A", r.eq.A.get_str()},
                                 {"B", r.eq.B.get_str()},
                                 {"C", r.eq.C.get_str()},
                                 {"dioph_verdict", to_string(r.dioph.verdict)},
                                 {"overall", to_string(r.report.overall)},
                                 {"report", r.report.to_json()}});
    }
    j["holds"] = holds;
    j["inconclusive"] = inconclusive;
    j["summary"] = std::to_string(holds) + " holds / " + std::to_string(inconclusive) + " inconclusive";
    return j;
}

SweepSummary cor17_sweep(const std::vector<SweepRow>& table) {
    std::vector<std::future<SweepEntry>> futs;
    for (const auto& row : table) {
        futs.push_back(std::async(std::launch::async, [row] {
            KnotData d;
            d.name = row.name;
            d.a2 = 0;
            d.j3 = 0;
            d.a4 = row.a4;
            d.j4 = row.j4;
            d.a6 = row.a6;
            InvariantSet inv = lift(d);
            SweepEntry e;
            e.name = row.name;
            e.eq = {(Rational(19) * row.a4 + row.j4).num(), (Rational(420) * row.a6 + Rational(80) * row.a4).num(),
                    (Rational(10) * row.a4).num()};
            CosmeticEquation ce = cosmetic_equation(inv);
            if (ce.A * e.eq.B != ce.B * e.eq.A || ce.A * e.eq.C != ce.C * e.eq.A || ce.B * e.eq.C != ce.C * e.eq.B)
                throw std::logic_error("table equation disagrees with the assembled relation for " + row.name);
            e.dioph = solve(e.eq.A, e.eq.B, e.eq.C);
            e.report = purely_cosmetic(inv);
            return e;
        }));
    }
    SweepSummary s;
    for (auto& f : futs) {
        s.rows.push_back(f.get());
        if (s.rows.back().report.overall == Verdict::Obstructed)
            ++s.holds;
        else
            ++s.inconclusive;
    }
    return s;
}

json dioph_to_json(const DiophResult& r) {
    json j;
    j["kind"] = "dioph";
    j["equation"] = json{{"a", r.a.get_str()}, {"b", r.b.get_str()}, {"c", r.c.get_str()}};
    j["reduced"] = json{{"a", r.ra.get_str()}, {"b", r.rb.get_str()}, {"c", r.rc.get_str()}};
    j["verdict"] = to_string(r.verdict);
    j["D"] = r.D.get_str();
    j["N"] = r.N.get_str();
    json sols = json::array();
    for (const auto& [p, q] : r.solutions) sols.push_back(json{{"p", p.get_str()}, {"q", q.get_str()}});
    j["solutions"] = sols;
    json fams = json::array();
    for (const auto& f : r.families)
        fams.push_back(json{{"type", to_string(f.kind)},
                            {"p0", f.p0.get_str()},
                            {"q0", f.q0.get_str()},
                            {"u", f.u.get_str()},
                            {"v", f.v.get_str()},
                            {"both_signs", f.both_signs}});
    j["families"] = fams;
    if (r.unit) j["unit"] = json{{"u", r.unit->first.get_str()}, {"v", r.unit->second.get_str()}};
    if (r.verdict == DiophVerdict::Unsolvable) {
        j["witness"] = json{{"type", to_string(r.witness.kind)},
                            {"modulus", r.witness.modulus.get_str()},
                            {"p_bound", r.witness.p_bound.get_str()},
                            {"q_bound", r.witness.q_bound.get_str()},
                            {"detail", r.witness.detail}};
    }
    return j;
}

}  // namespace knotsurg
