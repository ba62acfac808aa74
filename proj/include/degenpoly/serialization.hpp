#pragma once

#include "degenpoly/degenerate.hpp"
#include "degenpoly/identities.hpp"
#include "degenpoly/multipoly.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace degenpoly {

/// Thrown on malformed input documents and on format/value combinations the
/// flat renderers cannot express (e.g. csv of a two-variable polynomial).
class serialization_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// MultiPoly <-> JSON: list of {"coeff": "p/q", "dx": n, "dy": n, "dl": n},
/// sorted by (dx, dy, dl) ascending. Parsing accepts any term order but
/// rejects duplicate monomials and zero coefficients; output is always
/// canonical, so round-trips are byte-identical.
nlohmann::json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const nlohmann::json& j);

/// SequenceTable <-> JSON: {"k": int, "order": uint, "entries": [poly...]}
/// with order == entries.size().
nlohmann::json table_to_json(const SequenceTable& t);
SequenceTable table_from_json(const nlohmann::json& j);

/// VerificationReport -> JSON: {"adjudications": [...], "cases": [...],
/// "grid": {...}}, each case {"id", "params", "variant", "verdict",
/// "witness": poly or null}.
nlohmann::json report_to_json(const VerificationReport& r);

/// Canonical dump: sorted object keys (nlohmann default), two-space indent,
/// trailing newline. Identical values always produce identical bytes.
std::string dump_json(const nlohmann::json& j);

/// One row per entry. Requires at most one free variable across the table:
/// header "n,value" for constants, else "n,v^0,...,v^D" with zero fills.
std::string render_csv(const SequenceTable& t);

/// One align* line per entry, "\beta_{n}^{(k)}(x|\lambda) &= ...", terms in
/// descending x-degree with the full λ-coefficient of each power spelled
/// out. Requires free variables within {x, λ}.
std::string render_latex(const SequenceTable& t);

/// Flat per-case verdict rows: "id,n,k,d,variant,verdict" (witnesses are
/// json-only).
std::string render_report_csv(const VerificationReport& r);

} // namespace degenpoly
