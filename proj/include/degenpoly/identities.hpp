#pragma once

#include "degenpoly/degenerate.hpp"
#include "degenpoly/multipoly.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace degenpoly {

/// The verified identities. T1a/T1b are the two printed forms of the k=2
/// expansion (full sum vs. split with the explicit -n/4 term); EQ2/EQ12 are
/// the number-times-falling-factorial expansions of the plain and order-k
/// families; REMARK is the d/dx product-sum formula.
enum class IdentityId { T1a, T1b, T2, T3, T4, T5, REMARK, EQ2, EQ12 };

inline constexpr std::array<IdentityId, 9> kAllIdentities = {
    IdentityId::T1a, IdentityId::T1b, IdentityId::T2,     IdentityId::T3,  IdentityId::T4,
    IdentityId::T5,  IdentityId::REMARK, IdentityId::EQ2, IdentityId::EQ12};

std::string identity_name(IdentityId id);
std::optional<IdentityId> identity_from_name(std::string_view name);

bool identity_uses_k(IdentityId id);
bool identity_uses_d(IdentityId id);

/// Candidate readings competing in adjudication (empty for identities whose
/// statement is unambiguous).
std::vector<std::string> adjudication_variants(IdentityId id);

/// Every variant tag evaluate() accepts for the identity, including the
/// canonical "" reading where applicable and the "perturbed" negative
/// control (canonical reading with an off-by-one binomial seeded in).
std::vector<std::string> valid_variants(IdentityId id);

inline constexpr const char* kVariantFromEq18 = "from-eq18";
inline constexpr const char* kVariantAsPrinted = "as-printed";
inline constexpr const char* kVariantAIndex = "a-index";
inline constexpr const char* kVariantPerturbed = "perturbed";

struct CaseParams {
    unsigned n = 0;
    std::optional<long> k;
    std::optional<unsigned> d;

    bool operator==(const CaseParams&) const = default;
};

struct IdentityCase {
    IdentityId id = IdentityId::T1a;
    CaseParams params;
    std::string variant; // "" = canonical; T3/T4 need an explicit reading

    bool operator==(const IdentityCase&) const = default;
};

enum class Verdict { equal, mismatch };

struct CaseResult {
    IdentityCase c;
    Verdict verdict = Verdict::equal;
    MultiPoly witness; // LHS - RHS; nonzero exactly when verdict is mismatch
};

enum class AdjudicationStatus { resolved, no_variant_matches, multiple_variants_match };

std::string adjudication_status_name(AdjudicationStatus s);

struct VariantEvidence {
    std::string variant;
    std::size_t case_count = 0;
    std::size_t mismatch_count = 0;
    std::optional<IdentityCase> first_mismatch;
    MultiPoly first_witness;
};

struct Adjudication {
    IdentityId id = IdentityId::T3;
    AdjudicationStatus status = AdjudicationStatus::no_variant_matches;
    std::string winner; // nonempty iff status == resolved
    std::vector<VariantEvidence> evidence;
};

/// Parameter ranges actually run for one identity; recorded in the report.
struct GridBounds {
    unsigned n_min = 0;
    unsigned n_max = 0;
    std::optional<std::pair<long, long>> k;
    std::optional<std::pair<unsigned, unsigned>> d;
};

/// Default grids cover the full verified ranges; the optional overrides
/// narrow or widen every identity uniformly (n_min constraints like
/// T3's n >= 1 still apply).
struct SuiteBounds {
    std::optional<unsigned> n_max;
    std::optional<std::pair<long, long>> k;
    std::optional<std::pair<unsigned, unsigned>> d;

    GridBounds grid_for(IdentityId id) const;
};

struct VerificationReport {
    std::vector<CaseResult> cases;
    std::vector<Adjudication> adjudications;
    std::map<std::string, GridBounds> grid; // identity name -> bounds run
};

/// Evaluates every case exactly as given, in the given order. threads < 0
/// reads DEGENPOLY_THREADS (0 = serial); the result is order-deterministic
/// regardless of parallelism. Mismatches are data; only malformed cases
/// (unknown variant, d = 0) throw.
VerificationReport run_verification(const std::vector<IdentityCase>& suite, int threads = -1);

struct SuiteOptions {
    std::optional<IdentityId> only;
    std::string forced_variant; // requires `only`; disables adjudication
    SuiteBounds bounds;
    int threads = -1;
};

/// Builds the grid suite, runs it, and adjudicates T3/T4 when both candidate
/// readings were in play. Grids used are recorded in the report.
VerificationReport run_suite(const SuiteOptions& opt);

/// Deterministic case list for the options (exposed for tests).
std::vector<IdentityCase> build_suite_cases(const SuiteOptions& opt);

/// 0 = all pass (losing-variant mismatches of a resolved adjudication do not
/// count), 1 = mismatch, 3 = unresolved adjudication.
int report_exit_code(const VerificationReport& report);

/// Single-case right-hand sides, built from fresh tables; convenience
/// wrappers over the batch evaluator.
MultiPoly rhs_theorem1(unsigned n, bool split_form = false);
MultiPoly rhs_theorem2(long k, unsigned n);
MultiPoly rhs_theorem3(long k, unsigned n, std::string_view variant = kVariantFromEq18);
MultiPoly rhs_theorem4(long k, unsigned n, unsigned d, std::string_view variant = kVariantAIndex);
MultiPoly rhs_theorem5(long k, unsigned n);
MultiPoly rhs_remark(long k, unsigned n);

} // namespace degenpoly
