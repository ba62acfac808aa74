#include "degenpoly/degenerate.hpp"
#include "degenpoly/identities.hpp"
#include "degenpoly/serialization.hpp"
#include "degenpoly/version.hpp"

#include <CLI11.hpp>

#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace degenpoly;

constexpr int kExitPass = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnresolved = 3;

/// Command-line/input problems that map to the usage exit code.
class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string iso_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

void write_output(const std::string& path, const std::string& payload) {
    if (path.empty() || path == "-") {
        std::cout << payload;
        if (!std::cout) {
            throw usage_error("failed to write to standard output");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw usage_error("cannot open output file: " + path);
    }
    out << payload;
    out.close();
    if (!out) {
        throw usage_error("failed while writing: " + path);
    }
}

Var var_from_name(const std::string& name) {
    for (Var v : {Var::x, Var::y, Var::lambda}) {
        if (name == var_name(v)) {
            return v;
        }
    }
    throw usage_error("unknown variable \"" + name + "\" (expected x, y or lambda)");
}

std::vector<std::pair<Var, Rational>> parse_evals(const std::vector<std::string>& raw) {
    std::vector<std::pair<Var, Rational>> out;
    for (const std::string& item : raw) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw usage_error("--eval expects var=value, got \"" + item + "\"");
        }
        const Var v = var_from_name(item.substr(0, eq));
        try {
            out.emplace_back(v, Rational::from_string(item.substr(eq + 1)));
        } catch (const arithmetic_error& e) {
            throw usage_error("bad --eval value in \"" + item + "\": " + e.what());
        }
    }
    return out;
}

template <typename Int>
std::pair<Int, Int> parse_range(const std::string& s, const char* flag) {
    const auto parse_one = [&](const std::string& part) {
        try {
            size_t used = 0;
            const long long v = std::stoll(part, &used);
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
            return static_cast<Int>(v);
        } catch (const std::exception&) {
            throw usage_error(std::string(flag) + " expects an integer or lo..hi, got \"" + s +
                              "\"");
        }
    };
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
        const Int v = parse_one(s);
        return {v, v};
    }
    const Int lo = parse_one(s.substr(0, dots));
    const Int hi = parse_one(s.substr(dots + 2));
    if (lo > hi) {
        throw usage_error(std::string(flag) + ": empty range \"" + s + "\"");
    }
    return {lo, hi};
}

struct ComputeArgs {
    long k = 1;
    unsigned n_max = 0;
    std::string format = "json";
    std::string out = "-";
    std::vector<std::string> eval;
    bool meta = false;
};

int run_compute(const ComputeArgs& a) {
    SequenceTable table = build_sequence_table(a.k, a.n_max);
    for (const auto& [v, value] : parse_evals(a.eval)) {
        for (MultiPoly& e : table.entries) {
            e = e.substitute(v, value);
        }
    }
    std::string payload;
    if (a.format == "json") {
        nlohmann::json j = table_to_json(table);
        if (a.meta) {
            j["meta"] = {{"generated_at", iso_timestamp()}, {"generator_version", kVersion}};
        }
        payload = dump_json(j);
    } else if (a.format == "csv") {
        payload = (a.meta ? "# generated_at " + iso_timestamp() + " version " + kVersion + "\n"
                          : std::string()) +
                  render_csv(table);
    } else {
        payload = (a.meta ? "% generated_at " + iso_timestamp() + " version " + kVersion + "\n"
                          : std::string()) +
                  render_latex(table);
    }
    write_output(a.out, payload);
    return kExitPass;
}

struct VerifyArgs {
    bool all = false;
    std::string identity;
    std::string variant;
    std::string n_max;
    std::string k_range;
    std::string d_range;
    std::string format = "json";
    std::string out = "-";
    bool meta = false;
};

struct CollapseOutcome {
    nlohmann::json json;
    bool failed = false;
};

nlohmann::json collapse_entry(const std::optional<CollapseMismatch>& m) {
    if (!m) {
        return {{"verdict", "equal"}, {"first_n", nullptr}, {"witness", nullptr}};
    }
    return {{"verdict", "mismatch"}, {"first_n", m->n}, {"witness", poly_to_json(m->witness)}};
}

/// The two table-collapse families: the order-1 member against the plain
/// polynomials for n <= 20, and λ=0 against the classical families.
CollapseOutcome run_collapse_checks() {
    CollapseOutcome out;
    const auto k1 = check_k1_collapse(20);
    nlohmann::json k1j = collapse_entry(k1);
    k1j["n_max"] = 20;
    out.failed |= k1.has_value();

    const auto plain = check_lambda0_bernoulli(12);
    nlohmann::json plainj = collapse_entry(plain);
    plainj["n_max"] = 12;
    out.failed |= plain.has_value();

    nlohmann::json poly = nlohmann::json::array();
    for (long k = -2; k <= 3; ++k) {
        const auto m = check_lambda0_poly_bernoulli(k, 10);
        nlohmann::json e = collapse_entry(m);
        e["k"] = k;
        e["n_max"] = 10;
        poly.push_back(std::move(e));
        out.failed |= m.has_value();
    }
    out.json = {{"k1", std::move(k1j)},
                {"lambda0_plain", std::move(plainj)},
                {"lambda0_poly", std::move(poly)}};
    return out;
}

int run_verify(const VerifyArgs& a) {
    if (a.all && !a.identity.empty()) {
        throw usage_error("--all and --identity are mutually exclusive");
    }
    SuiteOptions opt;
    if (!a.identity.empty()) {
        const auto id = identity_from_name(a.identity);
        if (!id) {
            std::string names;
            for (IdentityId i : kAllIdentities) {
                names += (names.empty() ? "" : ", ") + identity_name(i);
            }
            throw usage_error("unknown identity \"" + a.identity + "\"; expected one of " + names);
        }
        opt.only = *id;
    }
    if (!a.variant.empty()) {
        if (!opt.only) {
            throw usage_error("--variant requires --identity");
        }
        opt.forced_variant = a.variant;
    }
    if (!a.n_max.empty()) {
        opt.bounds.n_max = static_cast<unsigned>(parse_range<long>(a.n_max, "--n-max").second);
    }
    if (!a.k_range.empty()) {
        opt.bounds.k = parse_range<long>(a.k_range, "--k");
    }
    if (!a.d_range.empty()) {
        const auto d = parse_range<long>(a.d_range, "--d");
        if (d.first < 1) {
            throw usage_error("--d values must be >= 1");
        }
        opt.bounds.d = {static_cast<unsigned>(d.first), static_cast<unsigned>(d.second)};
    }

    VerificationReport report;
    try {
        report = run_suite(opt);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    int code = report_exit_code(report);

    nlohmann::json j = report_to_json(report);
    const bool with_collapse = !opt.only;
    if (with_collapse) {
        CollapseOutcome collapse = run_collapse_checks();
        j["collapse_checks"] = std::move(collapse.json);
        if (collapse.failed && code == kExitPass) {
            code = kExitMismatch;
        }
    }
    if (a.meta) {
        j["meta"] = {{"generated_at", iso_timestamp()}, {"generator_version", kVersion}};
    }

    std::string payload;
    if (a.format == "json") {
        payload = dump_json(j);
    } else if (a.format == "csv") {
        payload = render_report_csv(report);
    } else {
        throw usage_error("verify reports support --format json or csv");
    }
    write_output(a.out, payload);

    std::ostream& summary = (a.out.empty() || a.out == "-") ? std::cerr : std::cout;
    std::size_t mismatches = 0;
    for (const CaseResult& c : report.cases) {
        mismatches += c.verdict == Verdict::mismatch ? 1 : 0;
    }
    summary << report.cases.size() << " cases, " << mismatches << " mismatches";
    for (const Adjudication& adj : report.adjudications) {
        summary << "; " << identity_name(adj.id) << " "
                << adjudication_status_name(adj.status)
                << (adj.winner.empty() ? "" : " -> " + adj.winner);
    }
    summary << "; exit " << code << "\n";
    return code;
}

struct LimitArgs {
    unsigned n_max = 12;
    unsigned poly_n_max = 10;
    std::string k_range = "-2..3";
};

int run_limit_check(const LimitArgs& a) {
    int code = kExitPass;
    const auto report_check = [&](const std::string& label,
                                  const std::optional<CollapseMismatch>& m) {
        if (!m) {
            std::cout << label << ": ok\n";
            return;
        }
        code = kExitMismatch;
        std::cout << label << ": MISMATCH at n=" << m->n << ", witness " << m->witness.str()
                  << "\n";
    };
    report_check("plain family at lambda=0 vs classical, n<=" + std::to_string(a.n_max),
                 check_lambda0_bernoulli(a.n_max));
    const auto [k_lo, k_hi] = parse_range<long>(a.k_range, "--k");
    for (long k = k_lo; k <= k_hi; ++k) {
        report_check("order k=" + std::to_string(k) + " at lambda=0 vs classical, n<=" +
                         std::to_string(a.poly_n_max),
                     check_lambda0_poly_bernoulli(k, a.poly_n_max));
    }
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation and verification of degenerate (poly-)Bernoulli polynomials"};
    app.require_subcommand(1);

    ComputeArgs compute;
    CLI::App* c = app.add_subcommand("compute", "materialize a polynomial family table");
    c->add_option("--k", compute.k, "polylogarithm order")->required();
    c->add_option("--n-max", compute.n_max, "largest index n")->required();
    c->add_option("--format", compute.format, "output format")
        ->check(CLI::IsMember({"json", "csv", "latex"}));
    c->add_option("--out", compute.out, "output path, - for stdout");
    c->add_option("--eval", compute.eval, "substitute var=rational (repeatable)");
    c->add_flag("--meta", compute.meta, "include timestamp/version metadata");

    VerifyArgs verify;
    CLI::App* v = app.add_subcommand("verify", "run identity verification");
    v->add_flag("--all", verify.all, "run the whole default suite (the default)");
    v->add_option("--identity", verify.identity, "restrict to one identity");
    v->add_option("--variant", verify.variant, "force one reading (requires --identity)");
    v->add_option("--n-max", verify.n_max, "override largest n for every identity");
    v->add_option("--k", verify.k_range, "override k range, e.g. -2..3");
    v->add_option("--d", verify.d_range, "override modulus range, e.g. 1..3");
    v->add_option("--format", verify.format, "report format")
        ->check(CLI::IsMember({"json", "csv"}));
    v->add_option("--out", verify.out, "output path, - for stdout");
    v->add_flag("--meta", verify.meta, "include timestamp/version metadata");

    LimitArgs limit;
    CLI::App* l = app.add_subcommand("limit-check", "check the lambda->0 classical collapses");
    l->add_option("--n-max", limit.n_max, "largest n for the plain family");
    l->add_option("--poly-n-max", limit.poly_n_max, "largest n for the order-k families");
    l->add_option("--k", limit.k_range, "k range, e.g. -2..3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (c->parsed()) {
            return run_compute(compute);
        }
        if (v->parsed()) {
            return run_verify(verify);
        }
        return run_limit_check(limit);
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const serialization_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
}
