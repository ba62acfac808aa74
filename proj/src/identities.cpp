#include "degenpoly/identities.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace degenpoly {

namespace {

constexpr std::pair<IdentityId, const char*> kIdentityNames[] = {
    {IdentityId::T1a, "T1a"}, {IdentityId::T1b, "T1b"},       {IdentityId::T2, "T2"},
    {IdentityId::T3, "T3"},   {IdentityId::T4, "T4"},         {IdentityId::T5, "T5"},
    {IdentityId::REMARK, "REMARK"}, {IdentityId::EQ2, "EQ2"}, {IdentityId::EQ12, "EQ12"},
};

int parity_sign(long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

Rational binom(unsigned n, unsigned l, bool perturbed) {
    return Rational(binomial_z(perturbed ? n + 1 : n, l), 1);
}

} // namespace

std::string identity_name(IdentityId id) {
    for (const auto& [i, name] : kIdentityNames) {
        if (i == id) {
            return name;
        }
    }
    return "?";
}

std::optional<IdentityId> identity_from_name(std::string_view name) {
    for (const auto& [i, n] : kIdentityNames) {
        if (name == n) {
            return i;
        }
    }
    return std::nullopt;
}

bool identity_uses_k(IdentityId id) {
    switch (id) {
    case IdentityId::T1a:
    case IdentityId::T1b:
    case IdentityId::EQ2: return false;
    default: return true;
    }
}

bool identity_uses_d(IdentityId id) { return id == IdentityId::T4; }

std::vector<std::string> adjudication_variants(IdentityId id) {
    switch (id) {
    case IdentityId::T3: return {kVariantFromEq18, kVariantAsPrinted};
    case IdentityId::T4: return {kVariantAIndex, kVariantAsPrinted};
    default: return {};
    }
}

std::vector<std::string> valid_variants(IdentityId id) {
    std::vector<std::string> v = adjudication_variants(id);
    if (v.empty()) {
        v.emplace_back();
    }
    v.emplace_back(kVariantPerturbed);
    return v;
}

std::string adjudication_status_name(AdjudicationStatus s) {
    switch (s) {
    case AdjudicationStatus::resolved: return "resolved";
    case AdjudicationStatus::no_variant_matches: return "no-variant-matches";
    case AdjudicationStatus::multiple_variants_match: return "multiple-variants-match";
    }
    return "?";
}

GridBounds SuiteBounds::grid_for(IdentityId id) const {
    GridBounds g;
    switch (id) {
    case IdentityId::T1a: g = {0, 12, {}, {}}; break;
    case IdentityId::T1b: g = {1, 12, {}, {}}; break;
    case IdentityId::T2: g = {0, 12, std::pair<long, long>{-3, 3}, {}}; break;
    case IdentityId::T3: g = {1, 12, std::pair<long, long>{-2, 3}, {}}; break;
    case IdentityId::T4:
        g = {0, 8, std::pair<long, long>{-2, 3}, std::pair<unsigned, unsigned>{1, 3}};
        break;
    case IdentityId::T5: g = {0, 10, std::pair<long, long>{-2, 3}, {}}; break;
    case IdentityId::REMARK: g = {0, 10, std::pair<long, long>{1, 3}, {}}; break;
    case IdentityId::EQ2: g = {0, 12, {}, {}}; break;
    case IdentityId::EQ12: g = {0, 12, std::pair<long, long>{-2, 3}, {}}; break;
    }
    if (n_max) {
        g.n_max = *n_max;
    }
    if (k && g.k) {
        g.k = *k;
    }
    if (d && g.d) {
        g.d = *d;
    }
    return g;
}

namespace {

/// Immutable table store for one batch of cases: everything any case could
/// read is built up front, so concurrent evaluate() calls share state
/// without synchronization.
class EvalContext {
public:
    explicit EvalContext(const std::vector<IdentityCase>& suite) : s2_(1) {
        scan(suite);
        build();
    }

    CaseResult evaluate(const IdentityCase& c) const {
        CaseResult r;
        r.c = c;
        r.witness = lhs(c) - rhs(c);
        r.verdict = r.witness.is_zero() ? Verdict::equal : Verdict::mismatch;
        return r;
    }

    MultiPoly lhs(const IdentityCase& c) const {
        const unsigned n = c.params.n;
        switch (c.id) {
        case IdentityId::T1a:
        case IdentityId::T1b: return poly_x_.at(2)[n];
        case IdentityId::T2:
        case IdentityId::T4:
        case IdentityId::EQ12: return poly_x_.at(*c.params.k)[n];
        case IdentityId::T3:
            return poly_x1_.at(*c.params.k)[n] - poly_x_.at(*c.params.k)[n];
        case IdentityId::T5: return poly_xy_.at(*c.params.k)[n];
        case IdentityId::REMARK: return poly_x_.at(*c.params.k)[n].derivative(Var::x);
        case IdentityId::EQ2: return plain_x_[n];
        }
        throw std::invalid_argument("unknown identity");
    }

    MultiPoly rhs(const IdentityCase& c) const {
        const unsigned n = c.params.n;
        const bool perturbed = c.variant == kVariantPerturbed;
        switch (c.id) {
        case IdentityId::T1a: {
            MultiPoly acc;
            for (unsigned l = 0; l <= n; ++l) {
                acc += plain_x_[n - l] *
                       (binom(n, l, perturbed) * bern_[l] / Rational(static_cast<long>(l) + 1));
            }
            return acc;
        }
        case IdentityId::T1b: {
            MultiPoly acc = plain_x_[n];
            acc -= plain_x_[n - 1] *
                   (binom(n, 1, perturbed) * Rational(1, 4)); // n/4 = C(n,1) * (-B_1/2)
            for (unsigned l = 2; l <= n; ++l) {
                acc += plain_x_[n - l] *
                       (binom(n, l, false) * bern_[l] / Rational(static_cast<long>(l) + 1));
            }
            return acc;
        }
        case IdentityId::T2: {
            const std::vector<Rational>& c_l = plf_coeff_.at(*c.params.k);
            MultiPoly acc;
            for (unsigned l = 0; l <= n; ++l) {
                acc += plain_x_[n - l] * (binom(n, l, perturbed) * c_l[l]);
            }
            return acc;
        }
        case IdentityId::T3: {
            const long k = *c.params.k;
            const bool as_printed = c.variant == kVariantAsPrinted;
            MultiPoly acc;
            for (unsigned p = 1; p <= n; ++p) {
                Rational inner;
                for (unsigned m = 0; m < p; ++m) {
                    const long sign_exp =
                        as_printed ? static_cast<long>(m) + k + 1 : static_cast<long>(m + p) + 1;
                    Rational term = Rational(factorial_z(m + 1), 1) *
                                    Rational(static_cast<long>(m) + 1).pow(-k) *
                                    Rational(s2_.second(p, m + 1));
                    inner += parity_sign(sign_exp) > 0 ? term : -term;
                }
                acc += fall_x_[n - p] * (binom(n, p, perturbed) * inner);
            }
            return acc;
        }
        case IdentityId::T4: {
            const long k = *c.params.k;
            const unsigned d = *c.params.d;
            const bool as_printed = c.variant == kVariantAsPrinted;
            const std::vector<Rational>& c_l = plf_coeff_.at(k);
            MultiPoly acc;
            for (unsigned a = 0; a < d; ++a) {
                for (unsigned l = 0; l <= n; ++l) {
                    const unsigned shift = as_printed ? l : a;
                    acc += plain_scaled_.at({d, shift})[n - l] *
                           (binom(n, l, perturbed) * c_l[l] *
                            Rational(static_cast<long>(d))
                                .pow(static_cast<long>(n) - static_cast<long>(l) - 1));
                }
            }
            return acc;
        }
        case IdentityId::T5: {
            const std::vector<MultiPoly>& beta_x = poly_x_.at(*c.params.k);
            MultiPoly acc;
            for (unsigned l = 0; l <= n; ++l) {
                acc += beta_x[l] * fall_y_[n - l] * binom(n, l, perturbed);
            }
            return acc;
        }
        case IdentityId::REMARK: {
            const std::vector<MultiPoly>& beta_num = poly_num_.at(*c.params.k);
            MultiPoly acc;
            for (unsigned l = 0; l <= n; ++l) {
                acc += beta_num[n - l] * dsum_[l] * binom(n, l, perturbed);
            }
            return acc;
        }
        case IdentityId::EQ2: {
            MultiPoly acc;
            for (unsigned l = 0; l <= n; ++l) {
                acc += fall_x_[n - l] * plain_num_[l] * binom(n, l, perturbed);
            }
            return acc;
        }
        case IdentityId::EQ12: {
            const std::vector<MultiPoly>& beta_num = poly_num_.at(*c.params.k);
            MultiPoly acc;
            for (unsigned l = 0; l <= n; ++l) {
                acc += fall_x_[n - l] * beta_num[l] * binom(n, l, perturbed);
            }
            return acc;
        }
        }
        throw std::invalid_argument("unknown identity");
    }

private:
    void require(bool ok, const std::string& what) {
        if (!ok) {
            throw std::invalid_argument(what);
        }
    }

    void scan(const std::vector<IdentityCase>& suite) {
        for (const IdentityCase& c : suite) {
            max_n_ = std::max(max_n_, c.params.n);
            const std::vector<std::string> valid = valid_variants(c.id);
            require(std::find(valid.begin(), valid.end(), c.variant) != valid.end(),
                    "unknown variant \"" + c.variant + "\" for identity " + identity_name(c.id));
            require(!identity_uses_k(c.id) || c.params.k.has_value(),
                    identity_name(c.id) + " requires parameter k");
            const unsigned n = c.params.n;
            switch (c.id) {
            case IdentityId::T1a:
            case IdentityId::T1b:
                require(c.id != IdentityId::T1b || n >= 1, "split form requires n >= 1");
                k_x_.insert(2);
                need_plain_ = need_bern_ = true;
                break;
            case IdentityId::T2:
                k_x_.insert(*c.params.k);
                k_coeff_.insert(*c.params.k);
                need_plain_ = true;
                break;
            case IdentityId::T3:
                require(n >= 1, "forward-difference identity requires n >= 1");
                k_x_.insert(*c.params.k);
                k_x1_.insert(*c.params.k);
                need_fall_x_ = true;
                break;
            case IdentityId::T4: {
                require(c.params.d.has_value() && *c.params.d >= 1, "T4 requires d >= 1");
                const unsigned d = *c.params.d;
                k_x_.insert(*c.params.k);
                k_coeff_.insert(*c.params.k);
                need_plain_ = true;
                if (c.variant == kVariantAsPrinted) {
                    for (unsigned l = 0; l <= n; ++l) {
                        scaled_keys_.insert({d, l});
                    }
                } else {
                    for (unsigned a = 0; a < d; ++a) {
                        scaled_keys_.insert({d, a});
                    }
                }
                break;
            }
            case IdentityId::T5:
                k_x_.insert(*c.params.k);
                k_xy_.insert(*c.params.k);
                need_fall_y_ = true;
                break;
            case IdentityId::REMARK:
                k_x_.insert(*c.params.k);
                k_num_.insert(*c.params.k);
                need_dsum_ = true;
                break;
            case IdentityId::EQ2:
                need_plain_ = need_plain_num_ = need_fall_x_ = true;
                break;
            case IdentityId::EQ12:
                k_x_.insert(*c.params.k);
                k_num_.insert(*c.params.k);
                need_fall_x_ = true;
                break;
            }
        }
    }

    void build() {
        s2_ = StirlingTable(max_n_ + 1);
        if (need_bern_) {
            bern_ = bernoulli_numbers(max_n_);
        }
        if (need_plain_) {
            plain_x_ = degenerate_bernoulli_table(max_n_, true);
        }
        if (need_plain_num_) {
            plain_num_ = degenerate_bernoulli_table(max_n_, false);
        }
        for (long k : k_x_) {
            poly_x_[k] = degenerate_poly_bernoulli_table(k, max_n_, GfExponent::x);
        }
        for (long k : k_num_) {
            poly_num_[k] = degenerate_poly_bernoulli_table(k, max_n_, GfExponent::zero);
        }
        for (long k : k_x1_) {
            poly_x1_[k] = degenerate_poly_bernoulli_table(k, max_n_, GfExponent::x_plus_one);
        }
        for (long k : k_xy_) {
            poly_xy_[k] = degenerate_poly_bernoulli_table(k, max_n_, GfExponent::x_plus_y);
        }
        for (long k : k_coeff_) {
            std::vector<Rational>& c_l = plf_coeff_[k];
            c_l.reserve(max_n_ + 1);
            for (unsigned l = 0; l <= max_n_; ++l) {
                c_l.push_back(polylog_factor_coeff(k, l, s2_));
            }
        }
        for (const auto& [d, shift] : scaled_keys_) {
            const MultiPoly x_image =
                (MultiPoly::variable(Var::x) + MultiPoly(static_cast<long>(shift))) /
                Rational(static_cast<long>(d));
            const MultiPoly l_image =
                MultiPoly::variable(Var::lambda) / Rational(static_cast<long>(d));
            std::vector<MultiPoly>& table = plain_scaled_[{d, shift}];
            table.reserve(plain_x_.size());
            for (const MultiPoly& p : plain_x_) {
                table.push_back(p.substitute(Var::x, x_image).substitute(Var::lambda, l_image));
            }
        }
        if (need_fall_x_ || need_fall_y_ || need_dsum_) {
            const MultiPoly x = MultiPoly::variable(Var::x);
            const MultiPoly y = MultiPoly::variable(Var::y);
            const MultiPoly lambda = MultiPoly::variable(Var::lambda);
            for (unsigned m = 0; m <= max_n_; ++m) {
                if (need_fall_x_) {
                    fall_x_.push_back(degenerate_falling(x, m));
                }
                if (need_fall_y_) {
                    fall_y_.push_back(degenerate_falling(y, m));
                }
                if (need_dsum_) {
                    // sum_{j<m} prod_{i<m, i != j} (x - i*lambda)
                    MultiPoly sum;
                    for (unsigned j = 0; j < m; ++j) {
                        MultiPoly prod(1);
                        for (unsigned i = 0; i < m; ++i) {
                            if (i != j) {
                                prod *= x - lambda * Rational(static_cast<long>(i));
                            }
                        }
                        sum += prod;
                    }
                    dsum_.push_back(sum);
                }
            }
        }
    }

    unsigned max_n_ = 0;
    std::set<long> k_x_, k_num_, k_x1_, k_xy_, k_coeff_;
    bool need_plain_ = false, need_plain_num_ = false, need_bern_ = false;
    bool need_fall_x_ = false, need_fall_y_ = false, need_dsum_ = false;
    std::set<std::pair<unsigned, unsigned>> scaled_keys_;

    StirlingTable s2_;
    std::vector<Rational> bern_;
    std::vector<MultiPoly> plain_x_, plain_num_, fall_x_, fall_y_, dsum_;
    std::map<long, std::vector<MultiPoly>> poly_x_, poly_num_, poly_x1_, poly_xy_;
    std::map<long, std::vector<Rational>> plf_coeff_;
    std::map<std::pair<unsigned, unsigned>, std::vector<MultiPoly>> plain_scaled_;
};

std::size_t resolve_thread_count(int requested, std::size_t jobs) {
    long t = -1;
    if (requested >= 0) {
        t = requested;
    } else if (const char* env = std::getenv("DEGENPOLY_THREADS")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && parsed >= 0) {
            t = parsed;
        }
    }
    if (t < 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        t = std::clamp<long>(hw == 0 ? 1 : hw, 1, 8);
    }
    if (t == 0) {
        t = 1; // 0 means serial
    }
    return std::min<std::size_t>(static_cast<std::size_t>(t), jobs);
}

} // namespace

VerificationReport run_verification(const std::vector<IdentityCase>& suite, int threads) {
    VerificationReport report;
    if (suite.empty()) {
        return report;
    }
    const EvalContext ctx(suite);
    report.cases.resize(suite.size());
    const std::size_t workers = resolve_thread_count(threads, suite.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < suite.size(); ++i) {
            report.cases[i] = ctx.evaluate(suite[i]);
        }
        return report;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < suite.size();) {
            if (failed.load()) {
                return;
            }
            try {
                report.cases[i] = ctx.evaluate(suite[i]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                failed.store(true);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) {
        pool.emplace_back(worker);
    }
    for (std::thread& th : pool) {
        th.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
    return report;
}

std::vector<IdentityCase> build_suite_cases(const SuiteOptions& opt) {
    if (!opt.forced_variant.empty() && !opt.only) {
        throw std::invalid_argument("a forced variant requires an identity filter");
    }
    std::vector<IdentityCase> out;
    for (IdentityId id : kAllIdentities) {
        if (opt.only && *opt.only != id) {
            continue;
        }
        std::vector<std::string> variants;
        if (!opt.forced_variant.empty()) {
            const std::vector<std::string> valid = valid_variants(id);
            if (std::find(valid.begin(), valid.end(), opt.forced_variant) == valid.end()) {
                std::string names;
                for (const std::string& v : valid) {
                    names += (names.empty() ? "" : ", ") + (v.empty() ? "(canonical)" : v);
                }
                throw std::invalid_argument("identity " + identity_name(id) +
                                            " has no variant \"" + opt.forced_variant +
                                            "\"; valid: " + names);
            }
            variants = {opt.forced_variant};
        } else {
            variants = adjudication_variants(id);
            if (variants.empty()) {
                variants.emplace_back();
            }
        }
        const GridBounds g = opt.bounds.grid_for(id);
        const auto [k_lo, k_hi] = g.k.value_or(std::pair<long, long>{0, 0});
        const auto [d_lo, d_hi] = g.d.value_or(std::pair<unsigned, unsigned>{1, 1});
        for (const std::string& variant : variants) {
            for (long k = k_lo; k <= k_hi; ++k) {
                for (unsigned d = d_lo; d <= d_hi; ++d) {
                    for (unsigned n = g.n_min; n <= g.n_max && g.n_max >= g.n_min; ++n) {
                        IdentityCase c;
                        c.id = id;
                        c.params.n = n;
                        if (identity_uses_k(id)) {
                            c.params.k = k;
                        }
                        if (identity_uses_d(id)) {
                            c.params.d = d;
                        }
                        c.variant = variant;
                        out.push_back(std::move(c));
                    }
                }
            }
        }
    }
    return out;
}

VerificationReport run_suite(const SuiteOptions& opt) {
    const std::vector<IdentityCase> cases = build_suite_cases(opt);
    VerificationReport report = run_verification(cases, opt.threads);
    for (IdentityId id : kAllIdentities) {
        if (opt.only && *opt.only != id) {
            continue;
        }
        report.grid[identity_name(id)] = opt.bounds.grid_for(id);
    }
    if (!opt.forced_variant.empty()) {
        return report;
    }
    for (IdentityId id : {IdentityId::T3, IdentityId::T4}) {
        const std::vector<std::string> variants = adjudication_variants(id);
        Adjudication adj;
        adj.id = id;
        std::size_t total = 0;
        for (const std::string& variant : variants) {
            VariantEvidence ev;
            ev.variant = variant;
            for (const CaseResult& r : report.cases) {
                if (r.c.id != id || r.c.variant != variant) {
                    continue;
                }
                ++ev.case_count;
                if (r.verdict == Verdict::mismatch) {
                    if (ev.mismatch_count == 0) {
                        ev.first_mismatch = r.c;
                        ev.first_witness = r.witness;
                    }
                    ++ev.mismatch_count;
                }
            }
            total += ev.case_count;
            adj.evidence.push_back(std::move(ev));
        }
        if (total == 0) {
            continue; // identity not in this run (filter or empty grid)
        }
        std::size_t winners = 0;
        for (const VariantEvidence& ev : adj.evidence) {
            if (ev.case_count > 0 && ev.mismatch_count == 0) {
                ++winners;
                adj.winner = ev.variant;
            }
        }
        if (winners == 1) {
            adj.status = AdjudicationStatus::resolved;
        } else {
            adj.status = winners == 0 ? AdjudicationStatus::no_variant_matches
                                      : AdjudicationStatus::multiple_variants_match;
            adj.winner.clear();
        }
        report.adjudications.push_back(std::move(adj));
    }
    return report;
}

int report_exit_code(const VerificationReport& report) {
    for (const Adjudication& adj : report.adjudications) {
        if (adj.status != AdjudicationStatus::resolved) {
            return 3;
        }
    }
    for (const CaseResult& r : report.cases) {
        if (r.verdict != Verdict::mismatch) {
            continue;
        }
        const auto adj = std::find_if(report.adjudications.begin(), report.adjudications.end(),
                                      [&](const Adjudication& a) { return a.id == r.c.id; });
        if (adj != report.adjudications.end() && r.c.variant != adj->winner) {
            continue; // evidence against the losing reading, not a failure
        }
        return 1;
    }
    return 0;
}

namespace {

MultiPoly rhs_single(IdentityCase c) {
    const std::vector<IdentityCase> suite{c};
    return EvalContext(suite).rhs(c);
}

} // namespace

MultiPoly rhs_theorem1(unsigned n, bool split_form) {
    IdentityCase c;
    c.id = split_form ? IdentityId::T1b : IdentityId::T1a;
    c.params.n = n;
    return rhs_single(c);
}

MultiPoly rhs_theorem2(long k, unsigned n) {
    IdentityCase c;
    c.id = IdentityId::T2;
    c.params = {n, k, {}};
    return rhs_single(c);
}

MultiPoly rhs_theorem3(long k, unsigned n, std::string_view variant) {
    IdentityCase c;
    c.id = IdentityId::T3;
    c.params = {n, k, {}};
    c.variant = std::string(variant);
    return rhs_single(c);
}

MultiPoly rhs_theorem4(long k, unsigned n, unsigned d, std::string_view variant) {
    IdentityCase c;
    c.id = IdentityId::T4;
    c.params = {n, k, d};
    c.variant = std::string(variant);
    return rhs_single(c);
}

MultiPoly rhs_theorem5(long k, unsigned n) {
    IdentityCase c;
    c.id = IdentityId::T5;
    c.params = {n, k, {}};
    return rhs_single(c);
}

MultiPoly rhs_remark(long k, unsigned n) {
    IdentityCase c;
    c.id = IdentityId::REMARK;
    c.params = {n, k, {}};
    return rhs_single(c);
}

} // namespace degenpoly
