#include "degenpoly/series.hpp"

#include "degenpoly/rational.hpp"

#include <algorithm>
#include <utility>

namespace degenpoly {

MultiPoly TruncatedSeries::coefficient(std::size_t n, CoeffMode mode) const {
    const MultiPoly& raw = (*this)[n];
    if (mode == CoeffMode::ogf) {
        return raw;
    }
    return raw * Rational(factorial_z(static_cast<unsigned>(n)), 1);
}

TruncatedSeries TruncatedSeries::truncated(std::size_t new_order) const {
    if (new_order > coeffs_.size()) {
        throw series_error("cannot truncate order " + std::to_string(coeffs_.size()) +
                           " series up to order " + std::to_string(new_order));
    }
    checked_order(new_order);
    TruncatedSeries out;
    out.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(new_order));
    return out;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.coeffs_[i] = a.coeffs_[i] + b.coeffs_[i];
    }
    return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.coeffs_[i] = a.coeffs_[i] - b.coeffs_[i];
    }
    return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const std::size_t n = std::min(a.order(), b.order());
    TruncatedSeries out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j < n; ++j) {
            if (b.coeffs_[j].is_zero()) {
                continue;
            }
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

TruncatedSeries operator/(const TruncatedSeries& num, const TruncatedSeries& den) {
    const std::size_t n = std::min(num.order(), den.order());
    const MultiPoly& lead = den.coeffs_[0];
    if (!lead.is_constant() || lead.is_zero()) {
        throw series_error("series division requires a nonzero rational constant term "
                           "in the divisor; got " +
                           lead.str());
    }
    const Rational inv_lead = Rational(1) / lead.constant_term();
    // q_i = (num_i - sum_{j=1..i} den_j * q_{i-j}) / den_0
    TruncatedSeries out(n);
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly acc = num.coeffs_[i];
        for (std::size_t j = 1; j <= i; ++j) {
            if (den.coeffs_[j].is_zero()) {
                continue;
            }
            acc -= den.coeffs_[j] * out.coeffs_[i - j];
        }
        out.coeffs_[i] = acc * inv_lead;
    }
    return out;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& inner) const {
    const std::size_t n = std::min(order(), inner.order());
    if (!inner.coeffs_[0].is_zero()) {
        throw series_error("series composition requires zero constant term in the "
                           "inner series; got " +
                           inner.coeffs_[0].str());
    }
    const TruncatedSeries g = inner.truncated(n);
    // Horner: result = c_0 + g * (c_1 + g * (... + g * c_{n-1}))
    TruncatedSeries acc = TruncatedSeries::constant(coeffs_[n - 1], n);
    for (std::size_t i = n - 1; i-- > 0;) {
        acc = acc * g + TruncatedSeries::constant(coeffs_[i], n);
    }
    return acc;
}

TruncatedSeries TruncatedSeries::shifted_down(std::size_t m) const {
    if (m == 0) {
        return *this;
    }
    if (m >= coeffs_.size()) {
        throw series_error("shift by " + std::to_string(m) + " exceeds series order " +
                           std::to_string(coeffs_.size()));
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!coeffs_[i].is_zero()) {
            throw series_error("cannot divide by t^" + std::to_string(m) +
                               ": coefficient of t^" + std::to_string(i) +
                               " is nonzero: " + coeffs_[i].str());
        }
    }
    TruncatedSeries out;
    out.coeffs_.assign(coeffs_.begin() + static_cast<std::ptrdiff_t>(m), coeffs_.end());
    return out;
}

TruncatedSeries exp_series(std::size_t order, const MultiPoly& rate) {
    return TruncatedSeries::generate(order, [&](std::size_t n) {
        return rate.pow(static_cast<unsigned>(n)) *
               (Rational(1) / Rational(factorial_z(static_cast<unsigned>(n)), 1));
    });
}

TruncatedSeries polylog_series(long k, std::size_t order) {
    return TruncatedSeries::generate(order, [&](std::size_t m) {
        if (m == 0) {
            return MultiPoly();
        }
        return MultiPoly(Rational(static_cast<long>(m)).pow(-k));
    });
}

TruncatedSeries one_minus_exp_neg(std::size_t order) {
    const TruncatedSeries e = exp_series(order, MultiPoly(-1));
    return TruncatedSeries::constant(MultiPoly(1), order) - e;
}

TruncatedSeries polylog_factor_series(long k, std::size_t order) {
    // The composition loses the t^{order} coefficient to the shift, so build
    // one order higher to return a full-length result.
    const std::size_t n = order + 1;
    const TruncatedSeries li = polylog_series(k, n);
    const TruncatedSeries inner = one_minus_exp_neg(n);
    return li.compose(inner).shifted_down(1);
}

} // namespace degenpoly
