#include "knotsurg/cli.hpp"

#include "knotsurg/dioph.hpp"
#include "knotsurg/jacobi.hpp"
#include "knotsurg/knotpoly.hpp"
#include "knotsurg/lmo.hpp"
#include "knotsurg/obstruct.hpp"
#include "knotsurg/table.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>
#include <sstream>

namespace knotsurg::cli {

using nlohmann::json;

namespace {

struct KnotRef {
    std::string knot, pd, table;
    std::string a2, a4, a6, j3, j4, v3, v5;
};

void add_knot_options(CLI::App* app, KnotRef& k, const std::string& suffix = "") {
    app->add_option("--knot" + suffix, k.knot, "knot name (registry or --table)");
    app->add_option("--pd" + suffix, k.pd, "PD code");
    if (suffix.empty()) app->add_option("--table", k.table, "CSV table name,pd,a2,a4,a6,j3,j4,v5");
    for (auto [name, var] : {std::pair{"a2", &k.a2}, {"a4", &k.a4}, {"a6", &k.a6}, {"j3", &k.j3}, {"j4", &k.j4},
                             {"v3", &k.v3}, {"v5", &k.v5}})
        app->add_option("--" + std::string(name) + suffix, *var, std::string(name) + " (rational)");
}

struct Resolved {
    InvariantSet inv;
    std::string source;
    std::optional<PDCode> pd;
    std::vector<std::string> defaulted;
};

// required: invariant columns that must be given when no PD/table row is used.
Resolved resolve(const KnotRef& k, const std::string& table, const std::vector<std::string>& required) {
    Resolved r;
    std::optional<KnotRecord> rec;
    if (!k.pd.empty()) {
        if (!k.knot.empty()) throw std::invalid_argument("give either --knot or --pd, not both");
        rec = KnotRecord{"pd", k.pd, {}, {}, {}, {}, {}, {}};
        r.source = "pd";
    } else if (!k.knot.empty()) {
        const KnotRecord* found = nullptr;
        if (!table.empty()) {
            static std::map<std::string, std::vector<KnotRecord>> cache;
            auto it = cache.find(table);
            if (it == cache.end()) it = cache.emplace(table, read_table_file(table)).first;
            found = find_record(it->second, k.knot);
            r.source = "table";
        }
        if (!found) {
            found = find_record(registry(), k.knot);
            r.source = "registry";
        }
        if (!found) throw std::invalid_argument("unknown knot '" + k.knot + "'");
        rec = *found;
    }
    if (rec) {
        for (const auto* s : {&k.a2, &k.a4, &k.a6, &k.j3, &k.j4, &k.v3})
            if (!s->empty()) throw std::invalid_argument("invariant flags cannot be combined with --knot or --pd");
        if (rec->pd) r.pd = PDCode::parse(*rec->pd);
        KnotData d = resolve_knot_data(*rec);
        if (!k.v5.empty()) d.v5 = Rational::parse(k.v5);
        r.inv = lift(d);
        return r;
    }
    r.source = "flags";
    KnotData d;
    d.name = "input";
    if (!k.v3.empty() && !k.j3.empty()) throw std::invalid_argument("give either --j3 or --v3");
    auto take = [&](const std::string& name, const std::string& text, Rational& out) {
        if (!text.empty()) {
            out = Rational::parse(text);
            return;
        }
        bool need = std::find(required.begin(), required.end(), name) != required.end();
        if (name == "j3" && !k.v3.empty()) return;
        if (need) throw std::invalid_argument("missing --" + name + " (or --knot / --pd)");
        r.defaulted.push_back(name);
    };
    take("a2", k.a2, d.a2);
    take("a4", k.a4, d.a4);
    take("a6", k.a6, d.a6);
    take("j3", k.j3, d.j3);
    take("j4", k.j4, d.j4);
    if (!k.v3.empty()) d.j3 = -Rational(24) * Rational::parse(k.v3);
    if (!k.v5.empty()) d.v5 = Rational::parse(k.v5);
    r.inv = lift(d);
    return r;
}

const std::vector<std::string> kAll{"a2", "a4", "a6", "j3", "j4"};

json inv_json(const InvariantSet& s) {
    json j;
    for (auto [n, v] : {std::pair{"a2", &s.a2}, {"a4", &s.a4}, {"a6", &s.a6}, {"j3", &s.j3}, {"j4", &s.j4},
                        {"v2", &s.v2}, {"v3", &s.v3}, {"v4", &s.v4}, {"w4", &s.w4}, {"v6", &s.v6}})
        j[n] = v->str();
    j["v5"] = s.v5 ? s.v5->str() : "unavailable";
    return j;
}

void print_report_text(std::ostream& out, const ObstructionReport& r) {
    out << "knot: " << r.knot << "\nquestion: " << r.question << "\n";
    for (const auto& c : r.checks) {
        out << "  [" << c.statement << "] " << to_string(c.verdict);
        if (!c.note.empty()) out << " - " << c.note;
        out << "\n    " << c.evidence.dump() << "\n";
    }
    out << "overall: " << to_string(r.overall) << "\n";
}

int report_exit(const ObstructionReport& r) { return r.overall == Verdict::Obstructed ? kExitOk : kExitNotObstructed; }

std::string family_str(const DiophFamily& f) {
    std::ostringstream os;
    switch (f.kind) {
        case DiophFamily::Kind::Pell:
            os << "Pell orbit of (p,q) = (" << f.p0 << "," << f.q0 << ") under unit (" << f.u << "," << f.v << ")";
            break;
        case DiophFamily::Kind::Ray:
            os << "(p,q) = t(" << f.p0 << "," << f.q0 << "), t >= 1" << (f.both_signs ? ", p of either sign" : "");
            break;
        case DiophFamily::Kind::PFree: os << "q = " << f.q0 << ", p arbitrary"; break;
        case DiophFamily::Kind::QFree: os << "p = +-" << f.p0 << ", q >= 1 arbitrary"; break;
        case DiophFamily::Kind::All: os << "every (p,q)"; break;
    }
    return os.str();
}

// "A p^2 - B q^2 = C" with signs folded in.
std::string equation_str(const Integer& a, const Integer& b, const Integer& c) {
    std::ostringstream os;
    os << a << " p^2 " << (b < 0 ? "+ " : "- ") << Integer(abs(b)) << " q^2 = " << c;
    return os.str();
}

void print_dioph_text(std::ostream& out, const DiophResult& r) {
    out << "equation: " << equation_str(r.a, r.b, r.c) << "\n";
    out << "verdict: " << to_string(r.verdict) << "\n";
    if (r.verdict == DiophVerdict::Unsolvable) {
        out << "witness: " << to_string(r.witness.kind);
        if (r.witness.kind == DiophWitness::Kind::Modulus) out << " mod " << r.witness.modulus;
        if (!r.witness.detail.empty()) out << " (" << r.witness.detail << ")";
        out << "\n";
    }
    for (const auto& [p, q] : r.solutions) out << "solution: (" << p << ", " << q << ")\n";
    for (const auto& f : r.families) out << "family: " << family_str(f) << "\n";
    if (r.unit) out << "unit: (" << r.unit->first << ", " << r.unit->second << ")\n";
}

std::map<int, Rational> parse_coeffs(const std::vector<std::string>& items) {
    std::map<int, Rational> out;
    for (const auto& it : items) {
        auto eq = it.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("coefficient must look like 6=2, got '" + it + "'");
        out[std::stoi(it.substr(0, eq))] = Rational::parse(it.substr(eq + 1));
    }
    return out;
}

EquivalenceAssumption parse_assumption(std::string s) {
    EquivalenceAssumption a;
    auto strip = [&](const std::string& pre) {
        if (s.rfind(pre, 0) == 0) {
            s = s.substr(pre.size());
            return true;
        }
        return false;
    };
    if (strip("odd-")) a.kind = EquivalenceAssumption::Kind::OddCn;
    if (!strip("C_") && !strip("C")) throw std::invalid_argument("assumption must look like C_6-equivalent or C_6-trivial");
    size_t pos = 0;
    a.n = std::stoi(s, &pos);
    std::string rest = s.substr(pos);
    if (rest == "-trivial") a.trivial = true;
    else if (rest != "-equivalent" && !rest.empty()) throw std::invalid_argument("unknown assumption suffix '" + rest + "'");
    return a;
}

std::pair<std::string, std::string> split_pair_arg(const std::string& s) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ';' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    throw std::invalid_argument("expected 'A; B'");
}

json sum_json(const DiagramSum& s) {
    json terms = json::array();
    for (const auto& [k, t] : s.terms())
        terms.push_back({{"key", k}, {"coeff", t.coeff.str()}, {"degree", t.rep.degree()}, {"legs", t.rep.leg_count()}});
    return terms;
}

json weight_json(const WeightPoly& w) {
    json terms = json::array();
    for (const auto& [k, c] : w.terms()) terms.push_back({{"h", k.first}, {"S", k.second}, {"coeff", c.str()}});
    return {{"string", w.str()}, {"terms", terms}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact knot invariants, surgery formulas and cosmetic-surgery obstructions", "knotsurg"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "JSON output")->configurable(false);
    app.set_help_all_flag("--help-all");

    KnotRef k1, k2;
    std::string slope, slope2;
    int members = 8, max_height = 12;
    bool non_torus = false, kill_theta = false, pell = false;

    auto* inv = app.add_subcommand("invariants", "polynomials and finite-type invariants of a knot");
    add_knot_options(inv, k1);
    inv->add_flag("--json", as_json);

    auto* surg = app.add_subcommand("surgery", "lambda1, lambda2, lambda3 of S^3(K, p/q)");
    add_knot_options(surg, k1);
    surg->add_option("--slope", slope, "p/q")->required();
    surg->add_flag("--json", as_json);

    auto* obs = app.add_subcommand("obstruct", "cosmetic / chiral / same-slope / lens obstructions");
    obs->require_subcommand(1);
    auto* ob_cos = obs->add_subcommand("cosmetic", "purely cosmetic surgeries");
    add_knot_options(ob_cos, k1);
    ob_cos->add_option("--members", members, "family members checked against the slope filter");
    auto* ob_chi = obs->add_subcommand("chiral", "chirally cosmetic surgeries");
    add_knot_options(ob_chi, k1);
    ob_chi->add_option("--slope", slope, "r");
    ob_chi->add_option("--slope2", slope2, "r' (defaults to the reflection -r)");
    ob_chi->add_option("--max-height", max_height, "height bound for candidate pair enumeration");
    auto* ob_same = obs->add_subcommand("same-slope", "S^3(K,r) = S^3(K',r)");
    add_knot_options(ob_same, k1);
    add_knot_options(ob_same, k2, "2");
    ob_same->add_option("--slope", slope, "r")->required();
    auto* ob_lens = obs->add_subcommand("lens", "lens space surgeries");
    add_knot_options(ob_lens, k1);
    ob_lens->add_flag("--non-torus", non_torus, "assume K is not a torus knot (q = 1)");
    ob_lens->add_option("--slope", slope, "check a specific slope");
    auto* ob_cor = obs->add_subcommand("cor17", "sweep a table of (a4, j4, a6) rows");
    std::string cor_table;
    ob_cor->add_option("--table", cor_table, "CSV with a4, j4, a6 columns")->required();
    auto* ob_he = obs->add_subcommand("high-even", "higher Conway coefficient obstructions");
    int he_mode = 1, he_m = 1;
    std::vector<std::string> he_c1, he_c2;
    std::string he_assume, he_knot;
    ob_he->add_option("--mode", he_mode, "1: a_{2m+2}(K) = a_{2m+2}(K'); 2: a_{4m+2}(K) = 0")->required();
    ob_he->add_option("--m", he_m, "m")->required();
    ob_he->add_option("--coeff", he_c1, "Conway coefficients of K, as i=value");
    ob_he->add_option("--coeff2", he_c2, "Conway coefficients of K', as i=value");
    ob_he->add_option("--assume", he_assume, "asserted hypothesis, e.g. C_6-equivalent or C_6-trivial")->required();
    ob_he->add_option("--name", he_knot, "label for the report");
    for (auto* s : {ob_cos, ob_chi, ob_same, ob_lens, ob_cor, ob_he}) s->add_flag("--json", as_json);

    auto* dio = app.add_subcommand("dioph", "solve a p^2 - b q^2 = c");
    std::string da, db, dc;
    std::vector<std::string> verify;
    dio->add_option("--a", da)->required();
    dio->add_option("--b", db)->required();
    dio->add_option("--c", dc)->required();
    dio->add_option("--verify", verify, "substitute p q")->expected(2);
    dio->add_flag("--pell", pell, "also print the fundamental unit of u^2 - D v^2 = 1");
    dio->add_flag("--json", as_json);

    auto* jac = app.add_subcommand("jacobi", "Jacobi diagram algebra");
    jac->require_subcommand(1);
    std::string expr;
    long nval = 0;
    auto* j_w = jac->add_subcommand("weight", "sl2 weight of an expression");
    j_w->add_option("expr", expr)->required();
    j_w->add_option("--n", nval, "substitute the representation dimension n");
    auto* j_p = jac->add_subcommand("pair", "pairing <A, B> given as 'A; B'");
    j_p->add_option("expr", expr)->required();
    auto* j_r = jac->add_subcommand("reduce", "coordinates of a closed expression modulo AS/IHX");
    j_r->add_option("expr", expr)->required();
    j_r->add_flag("--kill-theta", kill_theta, "quotient by theta multiples as well");
    for (auto* s : {j_w, j_p, j_r}) s->add_flag("--json", as_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (inv->parsed()) {
            Resolved r = resolve(k1, k1.table, kAll);
            json j{{"kind", "invariants"}, {"knot", r.inv.name}, {"source", r.source}, {"invariants", inv_json(r.inv)}};
            if (r.pd) {
                PolySet ps = compute_polys(*r.pd, 4);
                j["pd"] = r.pd->str();
                j["crossings"] = r.pd->crossing_count();
                j["writhe"] = r.pd->writhe();
                j["jones"] = ps.jones.str("t");
                j["alexander"] = ps.alexander.str("t");
                json cw = json::array();
                for (const auto& c : ps.conway) cw.push_back(c.str());
                j["conway"] = cw;
            }
            if (!r.defaulted.empty()) j["defaulted"] = r.defaulted;
            if (as_json) {
                out << j.dump(2) << "\n";
            } else {
                out << "knot: " << r.inv.name << " (" << r.source << ")\n";
                for (const char* f : {"pd", "jones", "alexander"})
                    if (j.contains(f)) out << f << ": " << j[f].get<std::string>() << "\n";
                for (auto& [n, v] : j["invariants"].items()) out << n << " = " << v.get<std::string>() << "\n";
            }
            return kExitOk;
        }
        if (surg->parsed()) {
            Slope s = Slope::parse(slope);
            Resolved r = resolve(k1, k1.table, kAll);
            Rational l1 = lambda1_rel(r.inv, s);
            Rational l2 = lambda2(r.inv, s);
            Rational l2v = lambda2_v_form(r.inv, s);
            Lambda3Affine l3 = lambda3(r.inv, s);
            json j{{"kind", "surgery"},
                   {"knot", r.inv.name},
                   {"slope", s.str()},
                   {"lambda1_rel", l1.str()},
                   {"lambda2", l2.str()},
                   {"lambda2_v_form", l2v.str()},
                   {"lambda2_lens", lambda2_lens(s.p).str()},
                   {"lambda3", {{"c0", l3.c0.str()}, {"c1", l3.c1.str()}}}};
            j["lambda3"]["value"] = r.inv.v5 ? json(l3.at(*r.inv.v5).str()) : json(nullptr);
            if (!r.defaulted.empty()) j["defaulted"] = r.defaulted;
            if (as_json) {
                out << j.dump(2) << "\n";
            } else {
                out << "knot: " << r.inv.name << "\nslope: " << s.str() << "\n";
                out << "lambda1 (relative to the lens term) = " << l1 << "\n";
                out << "lambda2 = " << l2 << "\n";
                if (r.inv.v5) out << "lambda3 = " << l3.at(*r.inv.v5) << "\n";
                else out << "lambda3 = " << l3.c0 << " + (" << l3.c1 << ")*v5   (v5 unavailable)\n";
            }
            return kExitOk;
        }
        if (obs->parsed()) {
            if (ob_cor->parsed()) {
                std::vector<SweepRow> rows;
                for (const auto& rec : read_table_file(cor_table)) {
                    if (!rec.a4 || !rec.j4 || !rec.a6) throw std::invalid_argument("row " + rec.name + " lacks a4, j4 or a6");
                    rows.push_back({rec.name, *rec.a4, *rec.j4, *rec.a6});
                }
                SweepSummary sum = cor17_sweep(rows);
                if (as_json) {
                    out << sum.to_json().dump(2) << "\n";
                } else {
                    for (const auto& e : sum.rows) {
                        out << e.name << ": " << equation_str(e.eq.A, e.eq.B, e.eq.C) << "  ->  "
                            << to_string(e.dioph.verdict) << "  (" << to_string(e.report.overall) << ")\n";
                    }
                    out << "holds: " << sum.holds << ", inconclusive: " << sum.inconclusive << "\n";
                }
                return sum.inconclusive == 0 ? kExitOk : kExitNotObstructed;
            }
            ObstructionReport rep;
            if (ob_he->parsed()) {
                rep = high_even(he_mode, he_m, parse_coeffs(he_c1), parse_coeffs(he_c2), parse_assumption(he_assume),
                                he_knot);
            } else if (ob_cos->parsed()) {
                rep = purely_cosmetic(resolve(k1, k1.table, kAll).inv, members);
            } else if (ob_chi->parsed()) {
                std::optional<Slope> r, r2;
                if (!slope.empty()) r = Slope::parse(slope);
                if (!slope2.empty()) r2 = Slope::parse(slope2);
                rep = chiral_cosmetic(resolve(k1, k1.table, {"a2", "a4", "j3"}).inv, r, r2, max_height);
            } else if (ob_same->parsed()) {
                rep = same_slope(resolve(k1, k1.table, {"a2", "a4", "j3"}).inv,
                                 resolve(k2, k1.table, {"a2", "a4", "j3"}).inv, Slope::parse(slope));
            } else if (ob_lens->parsed()) {
                std::optional<Slope> r;
                if (!slope.empty()) r = Slope::parse(slope);
                rep = lens_surgery(resolve(k1, k1.table, {"a2", "a4", "j3"}).inv, non_torus, r);
            }
            if (as_json) out << rep.to_json().dump(2) << "\n";
            else print_report_text(out, rep);
            return report_exit(rep);
        }
        if (dio->parsed()) {
            Integer a(da), b(db), c(dc);
            DiophResult r = solve(a, b, c);
            json j = dioph_to_json(r);
            if (!verify.empty()) {
                Integer p(verify[0]), q(verify[1]);
                j["verify"] = {{"p", p.get_str()}, {"q", q.get_str()}, {"ok", is_solution(a, b, c, p, q)}};
            }
            if (pell) {
                if (r.D <= 0 || is_square(r.D)) throw std::invalid_argument("--pell needs a positive nonsquare D = a b");
                auto [u, v] = pell_fundamental(r.D);
                j["pell"] = {{"D", r.D.get_str()}, {"u", u.get_str()}, {"v", v.get_str()}};
            }
            if (as_json) {
                out << j.dump(2) << "\n";
            } else {
                print_dioph_text(out, r);
                if (j.contains("verify"))
                    out << "verify (" << verify[0] << ", " << verify[1] << "): "
                        << (j["verify"]["ok"].get<bool>() ? "solution" : "not a solution") << "\n";
                if (j.contains("pell"))
                    out << "fundamental unit of u^2 - " << r.D << " v^2 = 1: (" << j["pell"]["u"].get<std::string>()
                        << ", " << j["pell"]["v"].get<std::string>() << ")\n";
            }
            return kExitOk;
        }
        if (jac->parsed()) {
            json j{{"kind", "jacobi"}, {"expr", expr}};
            std::string text;
            if (j_w->parsed()) {
                DiagramSum s = parse_diagram_expr(expr);
                WeightPoly w = sl2_weight(s);
                if (nval) w = w.at_n(nval);
                j["op"] = "weight";
                j["weight"] = weight_json(w);
                text = "W = " + w.str();
            } else if (j_p->parsed()) {
                auto [a, b] = split_pair_arg(expr);
                DiagramSum s = pair(parse_diagram_expr(a), parse_diagram_expr(b));
                WeightPoly w = sl2_weight(s);
                j["op"] = "pair";
                j["result"] = sum_json(s);
                j["weight"] = weight_json(w);
                text = "<A, B> = " + s.str() + "\nW = " + w.str();
            } else {
                DiagramSum s = parse_diagram_expr(expr);
                Reduction red = aspace_reduce(s, kill_theta);
                j["op"] = "reduce";
                j["kill_theta"] = kill_theta;
                j["constant"] = red.constant.str();
                json degs = json::array();
                std::ostringstream os;
                if (!red.constant.is_zero()) os << "degree 0: " << red.constant << "\n";
                for (const auto& [deg, basis] : red.bases) {
                    json gens = json::array();
                    os << "degree " << deg << ":";
                    const auto& c = red.coords.at(deg);
                    for (size_t i = 0; i < c.size(); ++i) {
                        gens.push_back({{"name", basis.generator_names[i]}, {"key", basis.generator_keys[i]},
                                        {"coeff", c[i].str()}});
                        os << " " << c[i] << " x " << basis.generator_names[i];
                    }
                    os << "\n";
                    degs.push_back({{"degree", deg}, {"dimension", c.size()}, {"coords", gens}});
                }
                j["degrees"] = degs;
                text = os.str();
                if (!text.empty() && text.back() == '\n') text.pop_back();
                if (text.empty()) text = "0";
            }
            if (as_json) out << j.dump(2) << "\n";
            else out << text << "\n";
            return kExitOk;
        }
    } catch (const DiophBudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const JacobiBudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitUsage;
}

}  // namespace knotsurg::cli
