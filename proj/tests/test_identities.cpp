#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <degenpoly/identities.hpp>

#include <algorithm>

using degenpoly::CaseParams;
using degenpoly::CaseResult;
using degenpoly::IdentityCase;
using degenpoly::IdentityId;
using degenpoly::MultiPoly;
using degenpoly::Rational;
using degenpoly::SuiteOptions;
using degenpoly::Var;
using degenpoly::Verdict;

namespace {

MultiPoly x() { return MultiPoly::variable(Var::x); }

IdentityCase make_case(IdentityId id, unsigned n, std::optional<long> k = std::nullopt,
                       std::optional<unsigned> d = std::nullopt, std::string variant = "") {
    IdentityCase c;
    c.id = id;
    c.params = CaseParams{n, k, d};
    c.variant = std::move(variant);
    return c;
}

const degenpoly::Adjudication* find_adjudication(const degenpoly::VerificationReport& report,
                                                 IdentityId id) {
    for (const auto& a : report.adjudications) {
        if (a.id == id) return &a;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("identity names round trip") {
    for (IdentityId id : degenpoly::kAllIdentities) {
        const auto back = degenpoly::identity_from_name(degenpoly::identity_name(id));
        REQUIRE(back.has_value());
        CHECK(*back == id);
    }
    CHECK_FALSE(degenpoly::identity_from_name("T9").has_value());
    CHECK(degenpoly::identity_uses_d(IdentityId::T4));
    CHECK_FALSE(degenpoly::identity_uses_d(IdentityId::T2));
    CHECK_FALSE(degenpoly::identity_uses_k(IdentityId::T1a));
    CHECK(degenpoly::identity_uses_k(IdentityId::T5));
}

TEST_CASE("variant vocabulary") {
    CHECK(degenpoly::adjudication_variants(IdentityId::T3) ==
          std::vector<std::string>{degenpoly::kVariantFromEq18, degenpoly::kVariantAsPrinted});
    CHECK(degenpoly::adjudication_variants(IdentityId::T4) ==
          std::vector<std::string>{degenpoly::kVariantAIndex, degenpoly::kVariantAsPrinted});
    CHECK(degenpoly::adjudication_variants(IdentityId::T2).empty());
    const auto t2 = degenpoly::valid_variants(IdentityId::T2);
    CHECK(std::count(t2.begin(), t2.end(), "") == 1);
    CHECK(std::count(t2.begin(), t2.end(), degenpoly::kVariantPerturbed) == 1);
    const auto t3 = degenpoly::valid_variants(IdentityId::T3);
    CHECK(std::count(t3.begin(), t3.end(), "") == 0);
}

TEST_CASE("k=2 expansion right-hand sides") {
    CHECK(degenpoly::rhs_theorem1(0) == MultiPoly(1));
    // For n >= 1 the expansion equals beta_n^{(2)}; at n = 1 that is
    // beta_1(x|lambda) - 1/4.
    CHECK(degenpoly::rhs_theorem1(1) ==
          degenpoly::degenerate_bernoulli(1) - MultiPoly(Rational(1, 4)));
    for (unsigned n = 0; n <= 8; ++n) {
        const MultiPoly full = degenpoly::rhs_theorem1(n, false);
        CHECK(full == degenpoly::degenerate_poly_bernoulli(2, n));
        if (n >= 1) CHECK(full == degenpoly::rhs_theorem1(n, true));
    }
}

TEST_CASE("order-k expansion right-hand side") {
    for (unsigned n = 0; n <= 8; ++n) {
        CHECK(degenpoly::rhs_theorem2(1, n) == degenpoly::degenerate_bernoulli(n));
        CHECK(degenpoly::rhs_theorem2(2, n) == degenpoly::rhs_theorem1(n));
        CHECK(degenpoly::rhs_theorem2(-1, n) == degenpoly::degenerate_poly_bernoulli(-1, n));
    }
    CHECK(degenpoly::rhs_theorem2(3, 0) == MultiPoly(1));
}

TEST_CASE("difference identity right-hand side and cross-checks") {
    // The shifted family equals the plain family evaluated at x+1, and the
    // two-variable family at y = 1.
    for (long k : {-2L, 1L, 3L}) {
        const auto shifted =
            degenpoly::degenerate_poly_bernoulli_table(k, 6, degenpoly::GfExponent::x_plus_one);
        const auto plain = degenpoly::degenerate_poly_bernoulli_table(k, 6);
        const auto two_var =
            degenpoly::degenerate_poly_bernoulli_table(k, 6, degenpoly::GfExponent::x_plus_y);
        for (unsigned n = 0; n <= 6; ++n) {
            CHECK(shifted[n] == plain[n].substitute(Var::x, x() + MultiPoly(1)));
            CHECK(shifted[n] == two_var[n].substitute(Var::y, Rational(1)));
            // The difference identity itself, in its adjudicated reading.
            CHECK(shifted[n] - plain[n] ==
                  (n >= 1 ? degenpoly::rhs_theorem3(k, n) : MultiPoly(0)));
        }
    }
    CHECK(degenpoly::rhs_theorem3(1, 1) == MultiPoly(1));
}

TEST_CASE("scaled-argument identity right-hand side") {
    // d = 1 collapses the adjudicated reading to the order-k expansion.
    for (long k = -2; k <= 3; ++k) {
        for (unsigned n = 0; n <= 6; ++n) {
            CHECK(degenpoly::rhs_theorem4(k, n, 1) == degenpoly::rhs_theorem2(k, n));
        }
    }
    // The rejected reading does not collapse at d = 1. (k = 2 keeps the l = 1
    // term alive; at k = 1 every l >= 1 factor coefficient vanishes and the
    // readings coincide.)
    CHECK(degenpoly::rhs_theorem4(2, 2, 1, degenpoly::kVariantAsPrinted) !=
          degenpoly::rhs_theorem2(2, 2));
}

TEST_CASE("two-variable addition formula right-hand side") {
    for (long k : {-1L, 2L}) {
        for (unsigned n = 0; n <= 6; ++n) {
            const MultiPoly rhs = degenpoly::rhs_theorem5(k, n);
            CHECK(rhs.substitute(Var::y, Rational(0)) == degenpoly::degenerate_poly_bernoulli(k, n));
            CHECK(rhs == degenpoly::degenerate_poly_bernoulli_table(k, n,
                                                                    degenpoly::GfExponent::x_plus_y)[n]);
        }
    }
}

TEST_CASE("derivative formula right-hand side") {
    CHECK(degenpoly::rhs_remark(1, 0).is_zero());
    CHECK(degenpoly::rhs_remark(1, 1) == MultiPoly(1));
    for (long k = 1; k <= 3; ++k) {
        for (unsigned n = 0; n <= 6; ++n) {
            CHECK(degenpoly::rhs_remark(k, n) ==
                  degenpoly::degenerate_poly_bernoulli(k, n).derivative(Var::x));
        }
    }
}

TEST_CASE("derivative of the degenerate falling factorial is the product-sum") {
    // d/dx (x|λ)_l = sum_j prod_{i != j} (x - iλ); independent recomputation.
    for (unsigned l = 1; l <= 8; ++l) {
        MultiPoly sum;
        for (unsigned j = 0; j < l; ++j) {
            MultiPoly prod(1);
            for (unsigned i = 0; i < l; ++i) {
                if (i == j) continue;
                prod *= x() - MultiPoly::variable(Var::lambda) * Rational(static_cast<long>(i));
            }
            sum += prod;
        }
        CHECK(sum == degenpoly::degenerate_falling(Var::x, l).derivative(Var::x));
    }
}

TEST_CASE("run_verification evaluates cases in order") {
    std::vector<IdentityCase> suite;
    suite.push_back(make_case(IdentityId::T1a, 3));
    suite.push_back(make_case(IdentityId::T2, 4, 2));
    suite.push_back(make_case(IdentityId::T5, 2, -1));
    suite.push_back(make_case(IdentityId::EQ2, 5));
    suite.push_back(make_case(IdentityId::EQ12, 5, -2));
    suite.push_back(make_case(IdentityId::REMARK, 4, 2));
    suite.push_back(make_case(IdentityId::T3, 3, 2, std::nullopt, degenpoly::kVariantFromEq18));
    suite.push_back(make_case(IdentityId::T4, 3, 2, 3, degenpoly::kVariantAIndex));
    const auto report = degenpoly::run_verification(suite);
    REQUIRE(report.cases.size() == suite.size());
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CHECK(report.cases[i].c == suite[i]);
        CHECK(report.cases[i].verdict == Verdict::equal);
        CHECK(report.cases[i].witness.is_zero());
    }
    CHECK(report.adjudications.empty());
    CHECK(degenpoly::report_exit_code(report) == 0);
}

TEST_CASE("empty suite") {
    const auto report = degenpoly::run_verification({});
    CHECK(report.cases.empty());
    CHECK(degenpoly::report_exit_code(report) == 0);
}

TEST_CASE("results are independent of thread count") {
    SuiteOptions opt;
    opt.bounds.n_max = 5;
    opt.threads = 0;
    const auto serial = degenpoly::run_suite(opt);
    opt.threads = 4;
    const auto parallel = degenpoly::run_suite(opt);
    REQUIRE(serial.cases.size() == parallel.cases.size());
    for (std::size_t i = 0; i < serial.cases.size(); ++i) {
        CHECK(serial.cases[i].c == parallel.cases[i].c);
        CHECK(serial.cases[i].verdict == parallel.cases[i].verdict);
        CHECK(serial.cases[i].witness == parallel.cases[i].witness);
    }
}

TEST_CASE("malformed cases throw") {
    CHECK_THROWS_AS(degenpoly::run_verification({make_case(IdentityId::T2, 2, 2, std::nullopt,
                                                           "bogus")}),
                    std::invalid_argument);
    CHECK_THROWS_AS(degenpoly::run_verification({make_case(IdentityId::T2, 2)}),
                    std::invalid_argument);  // missing k
    CHECK_THROWS_AS(degenpoly::run_verification({make_case(IdentityId::T4, 2, 2, 0,
                                                           degenpoly::kVariantAIndex)}),
                    std::invalid_argument);  // d = 0
    CHECK_THROWS_AS(degenpoly::run_verification({make_case(IdentityId::T3, 0, 2, std::nullopt,
                                                           degenpoly::kVariantFromEq18)}),
                    std::invalid_argument);  // difference identity needs n >= 1
    CHECK_THROWS_AS(degenpoly::run_verification({make_case(IdentityId::T3, 2, 2)}),
                    std::invalid_argument);  // reading must be explicit
    SuiteOptions opt;
    opt.forced_variant = degenpoly::kVariantAsPrinted;
    CHECK_THROWS_AS(degenpoly::build_suite_cases(opt), std::invalid_argument);  // needs `only`
}

TEST_CASE("every identity's perturbed control mismatches") {
    for (IdentityId id : degenpoly::kAllIdentities) {
        IdentityCase c = make_case(id, 3);
        if (degenpoly::identity_uses_k(id)) c.params.k = 2;
        if (degenpoly::identity_uses_d(id)) c.params.d = 2;
        c.variant = degenpoly::kVariantPerturbed;
        const auto report = degenpoly::run_verification({c});
        REQUIRE(report.cases.size() == 1);
        CHECK(report.cases[0].verdict == Verdict::mismatch);
        CHECK_FALSE(report.cases[0].witness.is_zero());
        CHECK(degenpoly::report_exit_code(report) == 1);
    }
}

TEST_CASE("suite adjudication resolves both contested identities") {
    SuiteOptions opt;
    opt.bounds.n_max = 6;
    const auto report = degenpoly::run_suite(opt);
    CHECK(report.grid.size() == degenpoly::kAllIdentities.size());
    REQUIRE(report.adjudications.size() == 2);

    const auto* t3 = find_adjudication(report, IdentityId::T3);
    REQUIRE(t3 != nullptr);
    CHECK(t3->status == degenpoly::AdjudicationStatus::resolved);
    CHECK(t3->winner == degenpoly::kVariantFromEq18);
    REQUIRE(t3->evidence.size() == 2);
    for (const auto& ev : t3->evidence) {
        if (ev.variant == degenpoly::kVariantFromEq18) {
            CHECK(ev.mismatch_count == 0);
        } else {
            CHECK(ev.variant == degenpoly::kVariantAsPrinted);
            CHECK(ev.mismatch_count > 0);
            REQUIRE(ev.first_mismatch.has_value());
            CHECK_FALSE(ev.first_witness.is_zero());
        }
    }

    const auto* t4 = find_adjudication(report, IdentityId::T4);
    REQUIRE(t4 != nullptr);
    CHECK(t4->status == degenpoly::AdjudicationStatus::resolved);
    CHECK(t4->winner == degenpoly::kVariantAIndex);

    CHECK(degenpoly::report_exit_code(report) == 0);
}

TEST_CASE("adjudication is inconclusive when both readings survive") {
    // At n = 1 the inner sum has a single term, where the two sign
    // conventions coincide for odd k.
    SuiteOptions opt;
    opt.only = IdentityId::T3;
    opt.bounds.n_max = 1;
    opt.bounds.k = {1, 1};
    const auto report = degenpoly::run_suite(opt);
    const auto* t3 = find_adjudication(report, IdentityId::T3);
    REQUIRE(t3 != nullptr);
    CHECK(t3->status == degenpoly::AdjudicationStatus::multiple_variants_match);
    CHECK(t3->winner.empty());
    CHECK(degenpoly::report_exit_code(report) == 3);
}

TEST_CASE("forcing the rejected reading yields a mismatching report") {
    SuiteOptions opt;
    opt.only = IdentityId::T3;
    opt.forced_variant = degenpoly::kVariantAsPrinted;
    opt.bounds.n_max = 3;
    opt.bounds.k = {2, 2};
    const auto report = degenpoly::run_suite(opt);
    CHECK(report.adjudications.empty());  // forced reading disables adjudication
    CHECK(degenpoly::report_exit_code(report) == 1);
    bool any_mismatch = false;
    for (const auto& r : report.cases) any_mismatch |= r.verdict == Verdict::mismatch;
    CHECK(any_mismatch);
}

TEST_CASE("suite case lists are deterministic and honor grids") {
    SuiteOptions opt;
    opt.only = IdentityId::T5;
    opt.bounds.n_max = 0;
    const auto cases = degenpoly::build_suite_cases(opt);
    CHECK(cases.size() == 6);  // k in -2..3, n = 0 only
    CHECK(cases == degenpoly::build_suite_cases(opt));
    for (const auto& c : cases) {
        CHECK(c.id == IdentityId::T5);
        CHECK(c.params.n == 0);
        REQUIRE(c.params.k.has_value());
    }

    SuiteOptions defaults;
    const auto all = degenpoly::build_suite_cases(defaults);
    // Adjudicated identities contribute every reading; canonical ones a single
    // pass each.
    std::size_t t1a = 0, t3_eq18 = 0, t3_printed = 0;
    for (const auto& c : all) {
        t1a += c.id == IdentityId::T1a;
        t3_eq18 += c.id == IdentityId::T3 && c.variant == degenpoly::kVariantFromEq18;
        t3_printed += c.id == IdentityId::T3 && c.variant == degenpoly::kVariantAsPrinted;
    }
    CHECK(t1a == 13);        // n = 0..12
    CHECK(t3_eq18 == 72);    // n = 1..12, k = -2..3
    CHECK(t3_printed == 72);
}
