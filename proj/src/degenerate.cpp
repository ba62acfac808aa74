#include "degenpoly/degenerate.hpp"

namespace degenpoly {

namespace {

MultiPoly lambda_multiple(unsigned i) {
    return MultiPoly::variable(Var::lambda) * Rational(static_cast<long>(i));
}

int parity_sign(long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

} // namespace

MultiPoly degenerate_falling(const MultiPoly& z, unsigned n) {
    MultiPoly out(1);
    for (unsigned i = 0; i < n; ++i) {
        out *= z - lambda_multiple(i);
    }
    return out;
}

MultiPoly degenerate_falling(Var v, unsigned n) {
    return degenerate_falling(MultiPoly::variable(v), n);
}

TruncatedSeries degenerate_exp(const MultiPoly& w, std::size_t order) {
    TruncatedSeries out(order);
    std::vector<MultiPoly> coeffs;
    coeffs.reserve(order);
    MultiPoly prod(1);
    Rational inv_fact(1);
    for (std::size_t n = 0; n < order; ++n) {
        if (n > 0) {
            prod *= w - lambda_multiple(static_cast<unsigned>(n - 1));
            inv_fact /= Rational(static_cast<long>(n));
        }
        coeffs.push_back(prod * inv_fact);
    }
    return TruncatedSeries::from_coefficients(std::move(coeffs));
}

SeriesBundle SeriesBundle::build(std::size_t order) {
    SeriesBundle b{order, TruncatedSeries(order), TruncatedSeries(order)};
    b.e_lambda = degenerate_exp(MultiPoly(1), order);
    // (1+λt)^{1/λ} - 1 = t + O(t²) since (1|λ)_0 = (1|λ)_1 = 1, so the shift
    // by t is exact and leaves constant term 1.
    const TruncatedSeries numerator_shifted =
        (degenerate_exp(MultiPoly(1), order + 1) - TruncatedSeries::constant(MultiPoly(1), order + 1))
            .shifted_down(1);
    b.carlitz_kernel = TruncatedSeries::constant(MultiPoly(1), order) / numerator_shifted;
    return b;
}

TruncatedSeries SeriesBundle::polylog_factor(long k) const {
    return polylog_factor_series(k, order);
}

TruncatedSeries SeriesBundle::exponent_factor(GfExponent e) const {
    switch (e) {
    case GfExponent::zero:
        return TruncatedSeries::constant(MultiPoly(1), order);
    case GfExponent::x:
        return degenerate_exp(MultiPoly::variable(Var::x), order);
    case GfExponent::x_plus_one:
        return e_lambda * degenerate_exp(MultiPoly::variable(Var::x), order);
    case GfExponent::x_plus_y:
        return degenerate_exp(MultiPoly::variable(Var::x), order) *
               degenerate_exp(MultiPoly::variable(Var::y), order);
    }
    throw series_error("unknown exponent factor");
}

Rational polylog_factor_coeff(long k, unsigned l, const StirlingTable& s2) {
    Rational acc;
    for (unsigned p = 1; p <= l + 1; ++p) {
        Rational term = Rational(factorial_z(p), 1) * Rational(static_cast<long>(p)).pow(-k) *
                        Rational(s2.second(l + 1, p), mpz_class(l + 1));
        acc += parity_sign(static_cast<long>(p) + l + 1) > 0 ? term : -term;
    }
    return acc;
}

namespace {

std::vector<MultiPoly> extract_table(const TruncatedSeries& gf, unsigned max_n) {
    std::vector<MultiPoly> out;
    out.reserve(max_n + 1);
    for (unsigned n = 0; n <= max_n; ++n) {
        out.push_back(gf.coefficient(n, CoeffMode::egf));
    }
    return out;
}

} // namespace

std::vector<MultiPoly> degenerate_bernoulli_table(unsigned max_n, bool with_x) {
    const SeriesBundle b = SeriesBundle::build(static_cast<std::size_t>(max_n) + 1);
    const TruncatedSeries gf =
        with_x ? b.carlitz_kernel * b.exponent_factor(GfExponent::x) : b.carlitz_kernel;
    return extract_table(gf, max_n);
}

MultiPoly degenerate_bernoulli(unsigned n, bool with_x) {
    return degenerate_bernoulli_table(n, with_x)[n];
}

std::vector<MultiPoly> degenerate_poly_bernoulli_table(long k, unsigned max_n, GfExponent e) {
    const SeriesBundle b = SeriesBundle::build(static_cast<std::size_t>(max_n) + 1);
    const TruncatedSeries gf = b.carlitz_kernel * b.polylog_factor(k) * b.exponent_factor(e);
    return extract_table(gf, max_n);
}

MultiPoly degenerate_poly_bernoulli(long k, unsigned n, bool with_x) {
    return degenerate_poly_bernoulli_table(k, n, with_x ? GfExponent::x : GfExponent::zero)[n];
}

SequenceTable build_sequence_table(long k, unsigned max_n) {
    SequenceTable t;
    t.k = k;
    t.order = static_cast<std::size_t>(max_n) + 1;
    t.entries = degenerate_poly_bernoulli_table(k, max_n, GfExponent::x);
    return t;
}

std::optional<CollapseMismatch> check_lambda0_bernoulli(unsigned max_n) {
    const std::vector<MultiPoly> table = degenerate_bernoulli_table(max_n, true);
    for (unsigned n = 0; n <= max_n; ++n) {
        const MultiPoly diff =
            table[n].substitute(Var::lambda, Rational(0)) - classical_bernoulli_poly(n);
        if (!diff.is_zero()) {
            return CollapseMismatch{n, 1, diff};
        }
    }
    return std::nullopt;
}

std::optional<CollapseMismatch> check_lambda0_poly_bernoulli(long k, unsigned max_n) {
    const std::vector<MultiPoly> degen = degenerate_poly_bernoulli_table(k, max_n, GfExponent::x);
    const std::vector<MultiPoly> classical = classical_poly_bernoulli_table(k, max_n);
    for (unsigned n = 0; n <= max_n; ++n) {
        const MultiPoly diff = degen[n].substitute(Var::lambda, Rational(0)) - classical[n];
        if (!diff.is_zero()) {
            return CollapseMismatch{n, k, diff};
        }
    }
    return std::nullopt;
}

std::optional<CollapseMismatch> check_k1_collapse(unsigned max_n) {
    const std::vector<MultiPoly> via_polylog =
        degenerate_poly_bernoulli_table(1, max_n, GfExponent::x);
    const std::vector<MultiPoly> direct = degenerate_bernoulli_table(max_n, true);
    for (unsigned n = 0; n <= max_n; ++n) {
        const MultiPoly diff = via_polylog[n] - direct[n];
        if (!diff.is_zero()) {
            return CollapseMismatch{n, 1, diff};
        }
    }
    return std::nullopt;
}

} // namespace degenpoly
