#include "degenpoly/serialization.hpp"

#include <algorithm>
#include <array>
#include <vector>

namespace degenpoly {

using nlohmann::json;

namespace {

unsigned require_exponent(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_unsigned()) {
        throw serialization_error(std::string("polynomial term needs a nonnegative integer \"") +
                                  key + "\"");
    }
    return j[key].get<unsigned>();
}

Rational parse_coeff(const json& j) {
    if (!j.contains("coeff") || !j["coeff"].is_string()) {
        throw serialization_error("polynomial term needs a string \"coeff\"");
    }
    Rational c;
    try {
        c = Rational::from_string(j["coeff"].get<std::string>());
    } catch (const arithmetic_error& e) {
        throw serialization_error(std::string("bad coefficient: ") + e.what());
    }
    if (c.is_zero()) {
        throw serialization_error("zero coefficient violates canonical form");
    }
    return c;
}

} // namespace

json poly_to_json(const MultiPoly& p) {
    json out = json::array();
    for (const auto& [m, c] : p.terms()) {
        out.push_back({{"coeff", c.str()}, {"dx", m.dx}, {"dy", m.dy}, {"dl", m.dl}});
    }
    return out;
}

MultiPoly poly_from_json(const json& j) {
    if (!j.is_array()) {
        throw serialization_error("polynomial must be a list of terms");
    }
    MultiPoly p;
    MultiPoly::TermMap seen;
    for (const json& term : j) {
        if (!term.is_object()) {
            throw serialization_error("polynomial term must be an object");
        }
        Monomial m{require_exponent(term, "dx"), require_exponent(term, "dy"),
                   require_exponent(term, "dl")};
        const Rational c = parse_coeff(term);
        if (!seen.emplace(m, c).second) {
            throw serialization_error("duplicate monomial in polynomial");
        }
        p += MultiPoly::monomial(c, m);
    }
    return p;
}

json table_to_json(const SequenceTable& t) {
    json entries = json::array();
    for (const MultiPoly& p : t.entries) {
        entries.push_back(poly_to_json(p));
    }
    return json{{"k", t.k}, {"order", t.order}, {"entries", std::move(entries)}};
}

SequenceTable table_from_json(const json& j) {
    if (!j.is_object() || !j.contains("k") || !j.contains("order") || !j.contains("entries")) {
        throw serialization_error("table needs keys \"k\", \"order\", \"entries\"");
    }
    if (!j["k"].is_number_integer() || !j["order"].is_number_unsigned() ||
        !j["entries"].is_array()) {
        throw serialization_error("table has wrongly typed fields");
    }
    SequenceTable t;
    t.k = j["k"].get<long>();
    t.order = j["order"].get<std::size_t>();
    for (const json& e : j["entries"]) {
        t.entries.push_back(poly_from_json(e));
    }
    if (t.order != t.entries.size()) {
        throw serialization_error("table order " + std::to_string(t.order) + " does not match " +
                                  std::to_string(t.entries.size()) + " entries");
    }
    return t;
}

namespace {

json params_to_json(const CaseParams& p) {
    json out{{"n", p.n}};
    if (p.k) {
        out["k"] = *p.k;
    }
    if (p.d) {
        out["d"] = *p.d;
    }
    return out;
}

json case_to_json(const CaseResult& r) {
    return json{{"id", identity_name(r.c.id)},
                {"params", params_to_json(r.c.params)},
                {"variant", r.c.variant.empty() ? json(nullptr) : json(r.c.variant)},
                {"verdict", r.verdict == Verdict::equal ? "equal" : "mismatch"},
                {"witness", r.verdict == Verdict::equal ? json(nullptr) : poly_to_json(r.witness)}};
}

json grid_to_json(const GridBounds& g) {
    json out{{"n_min", g.n_min}, {"n_max", g.n_max}};
    if (g.k) {
        out["k_min"] = g.k->first;
        out["k_max"] = g.k->second;
    }
    if (g.d) {
        out["d_min"] = g.d->first;
        out["d_max"] = g.d->second;
    }
    return out;
}

} // namespace

json report_to_json(const VerificationReport& r) {
    json cases = json::array();
    for (const CaseResult& c : r.cases) {
        cases.push_back(case_to_json(c));
    }
    json adjudications = json::array();
    for (const Adjudication& a : r.adjudications) {
        json evidence = json::array();
        for (const VariantEvidence& ev : a.evidence) {
            json e{{"variant", ev.variant},
                   {"case_count", ev.case_count},
                   {"mismatch_count", ev.mismatch_count}};
            if (ev.first_mismatch) {
                e["first_mismatch"] = json{{"id", identity_name(ev.first_mismatch->id)},
                                           {"params", params_to_json(ev.first_mismatch->params)}};
                e["first_witness"] = poly_to_json(ev.first_witness);
            } else {
                e["first_mismatch"] = nullptr;
                e["first_witness"] = nullptr;
            }
            evidence.push_back(std::move(e));
        }
        adjudications.push_back(json{{"id", identity_name(a.id)},
                                     {"status", adjudication_status_name(a.status)},
                                     {"winner", a.winner.empty() ? json(nullptr) : json(a.winner)},
                                     {"evidence", std::move(evidence)}});
    }
    json grid = json::object();
    for (const auto& [name, g] : r.grid) {
        grid[name] = grid_to_json(g);
    }
    return json{{"adjudications", std::move(adjudications)},
                {"cases", std::move(cases)},
                {"grid", std::move(grid)}};
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

namespace {

std::vector<Var> free_variables(const SequenceTable& t) {
    std::vector<Var> out;
    for (Var v : {Var::x, Var::y, Var::lambda}) {
        for (const MultiPoly& p : t.entries) {
            if (p.degree(v) > 0) {
                out.push_back(v);
                break;
            }
        }
    }
    return out;
}

std::string join_free(const std::vector<Var>& vars) {
    std::string s;
    for (Var v : vars) {
        s += (s.empty() ? "" : ", ") + std::string(var_name(v));
    }
    return s;
}

std::string latex_rational(const Rational& r) {
    if (r.is_integer()) {
        return r.num().get_str();
    }
    const bool neg = r.sign() < 0;
    const mpz_class mag = neg ? mpz_class(-r.num()) : r.num();
    return (neg ? std::string("-") : std::string()) + "\\frac{" + mag.get_str() + "}{" +
           r.den().get_str() + "}";
}

std::string latex_power(const char* sym, unsigned e) {
    if (e == 0) {
        return "";
    }
    if (e == 1) {
        return sym;
    }
    return std::string(sym) + "^{" + std::to_string(e) + "}";
}

/// One monomial without its sign, e.g. "\frac{3}{2} \lambda^{2}".
std::string latex_term_magnitude(const Rational& c, unsigned dl) {
    const Rational mag = c.sign() < 0 ? -c : c;
    const std::string lam = latex_power("\\lambda", dl);
    if (mag == Rational(1) && !lam.empty()) {
        return lam;
    }
    return latex_rational(mag) + (lam.empty() ? "" : " " + lam);
}

/// λ-polynomial rendered with embedded signs, terms in descending degree.
std::string latex_lambda_poly(const std::vector<std::pair<unsigned, Rational>>& terms) {
    std::string out;
    for (const auto& [dl, c] : terms) {
        if (out.empty()) {
            out = (c.sign() < 0 ? "-" : "") + latex_term_magnitude(c, dl);
        } else {
            out += (c.sign() < 0 ? " - " : " + ") + latex_term_magnitude(c, dl);
        }
    }
    return out;
}

std::string latex_poly(const MultiPoly& p) {
    if (p.is_zero()) {
        return "0";
    }
    // Group terms by x-degree, descending; each positive-degree group carries
    // its λ-coefficient (parenthesized when it has several terms), and the
    // constant group's λ-terms join the top level individually.
    std::map<unsigned, std::vector<std::pair<unsigned, Rational>>, std::greater<>> groups;
    for (const auto& [m, c] : p.terms()) {
        groups[m.dx].push_back({m.dl, c});
    }
    std::vector<std::pair<bool, std::string>> pieces; // (negative, magnitude)
    for (auto& [dx, terms] : groups) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        const std::string xpart = latex_power("x", dx);
        if (dx == 0) {
            for (const auto& [dl, c] : terms) {
                pieces.push_back({c.sign() < 0, latex_term_magnitude(c, dl)});
            }
        } else if (terms.size() == 1) {
            const auto& [dl, c] = terms[0];
            const bool unit = dl == 0 && (c == Rational(1) || c == Rational(-1));
            std::string piece = unit ? "" : latex_term_magnitude(c, dl);
            piece += (piece.empty() ? "" : " ") + xpart;
            pieces.push_back({c.sign() < 0, std::move(piece)});
        } else {
            pieces.push_back({false, "\\left(" + latex_lambda_poly(terms) + "\\right) " + xpart});
        }
    }
    std::string out;
    for (const auto& [negative, piece] : pieces) {
        if (out.empty()) {
            out = (negative ? "-" : "") + piece;
        } else {
            out += (negative ? " - " : " + ") + piece;
        }
    }
    return out;
}

} // namespace

std::string render_csv(const SequenceTable& t) {
    const std::vector<Var> vars = free_variables(t);
    if (vars.size() > 1) {
        throw serialization_error("csv output needs at most one free variable; entries use " +
                                  join_free(vars));
    }
    std::string out;
    if (vars.empty()) {
        out = "n,value\n";
        for (std::size_t n = 0; n < t.entries.size(); ++n) {
            out += std::to_string(n) + "," + t.entries[n].constant_term().str() + "\n";
        }
        return out;
    }
    const Var v = vars[0];
    unsigned max_deg = 0;
    for (const MultiPoly& p : t.entries) {
        max_deg = std::max(max_deg, p.degree(v));
    }
    out = "n";
    for (unsigned e = 0; e <= max_deg; ++e) {
        out += "," + std::string(var_name(v)) + "^" + std::to_string(e);
    }
    out += "\n";
    for (std::size_t n = 0; n < t.entries.size(); ++n) {
        out += std::to_string(n);
        for (unsigned e = 0; e <= max_deg; ++e) {
            Monomial m;
            m.set(v, e);
            out += "," + t.entries[n].coeff(m).str();
        }
        out += "\n";
    }
    return out;
}

std::string render_latex(const SequenceTable& t) {
    const std::vector<Var> vars = free_variables(t);
    if (std::find(vars.begin(), vars.end(), Var::y) != vars.end()) {
        throw serialization_error("latex output supports polynomials in x and lambda only; "
                                  "entries use " +
                                  join_free(vars));
    }
    std::string out = "\\begin{align*}\n";
    for (std::size_t n = 0; n < t.entries.size(); ++n) {
        const std::string name =
            t.k == 1 ? "\\beta_{" + std::to_string(n) + "}"
                     : "\\beta_{" + std::to_string(n) + "}^{(" + std::to_string(t.k) + ")}";
        out += name + "(x\\mid\\lambda) &= " + latex_poly(t.entries[n]);
        if (n + 1 < t.entries.size()) {
            out += " \\\\";
        }
        out += "\n";
    }
    out += "\\end{align*}\n";
    return out;
}

std::string render_report_csv(const VerificationReport& r) {
    std::string out = "id,n,k,d,variant,verdict\n";
    for (const CaseResult& c : r.cases) {
        out += identity_name(c.c.id) + "," + std::to_string(c.c.params.n) + ",";
        out += (c.c.params.k ? std::to_string(*c.c.params.k) : "") + ",";
        out += (c.c.params.d ? std::to_string(*c.c.params.d) : "") + ",";
        out += c.c.variant + ",";
        out += (c.verdict == Verdict::equal ? "equal" : "mismatch");
        out += "\n";
    }
    return out;
}

} // namespace degenpoly
