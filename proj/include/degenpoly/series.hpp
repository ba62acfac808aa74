#pragma once

#include "degenpoly/multipoly.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace degenpoly {

/// Thrown on series contract violations: non-invertible constant term in a
/// divisor, nonzero constant term in a composition inner series, coefficient
/// index out of range, invalid truncation orders.
class series_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// How sequence values are read off a series: egf returns n! * [t^n],
/// ogf returns the raw coefficient.
enum class CoeffMode { egf, ogf };

/// Formal power series in t with MultiPoly coefficients, truncated to a
/// fixed number of retained coefficients (t^0 .. t^{order-1}).
///
/// Every binary operation truncates to the minimum of the operand orders;
/// truncation is always explicit, never silent extension. Values are
/// immutable after construction and all operations are pure.
class TruncatedSeries {
public:
    /// The zero series with the given order (order >= 1).
    explicit TruncatedSeries(std::size_t order) : coeffs_(checked_order(order)) {}

    static TruncatedSeries constant(const MultiPoly& c, std::size_t order) {
        TruncatedSeries s(order);
        s.coeffs_[0] = c;
        return s;
    }

    static TruncatedSeries from_coefficients(std::vector<MultiPoly> coeffs) {
        checked_order(coeffs.size());
        TruncatedSeries s;
        s.coeffs_ = std::move(coeffs);
        return s;
    }

    /// Builds coefficients [t^n] = f(n) for n < order.
    template <typename F>
    static TruncatedSeries generate(std::size_t order, F&& f) {
        TruncatedSeries s(order);
        for (std::size_t n = 0; n < order; ++n) {
            s.coeffs_[n] = f(n);
        }
        return s;
    }

    std::size_t order() const { return coeffs_.size(); }

    /// Raw coefficient [t^n]; n >= order is an error.
    const MultiPoly& operator[](std::size_t n) const {
        if (n >= coeffs_.size()) {
            throw series_error("coefficient index " + std::to_string(n) +
                               " out of range for order " + std::to_string(coeffs_.size()));
        }
        return coeffs_[n];
    }

    /// Sequence value at index n: n! * [t^n] in egf mode, [t^n] in ogf mode.
    MultiPoly coefficient(std::size_t n, CoeffMode mode) const;

    /// Discards coefficients at and above new_order (new_order <= order).
    TruncatedSeries truncated(std::size_t new_order) const;

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);

    /// Cauchy product, truncated to the smaller operand order.
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

    /// Exact quotient: num = result * den up to the truncation order. The
    /// divisor's constant term must be a nonzero rational constant.
    friend TruncatedSeries operator/(const TruncatedSeries& num, const TruncatedSeries& den);

    /// Substitutes inner for t; inner must have zero constant term.
    TruncatedSeries compose(const TruncatedSeries& inner) const;

    /// Divides by t^m after verifying the first m coefficients vanish;
    /// the order drops by m.
    TruncatedSeries shifted_down(std::size_t m) const;

    bool operator==(const TruncatedSeries&) const = default;

private:
    TruncatedSeries() = default;

    static std::size_t checked_order(std::size_t order) {
        if (order == 0) {
            throw series_error("series order must be at least 1");
        }
        return order;
    }

    std::vector<MultiPoly> coeffs_; // size is the order
};

/// e^{rate * t}: coefficients rate^n / n!.
TruncatedSeries exp_series(std::size_t order, const MultiPoly& rate);

/// Polylogarithm series: sum_{m >= 1} t^m / m^k, any integer k (for k <= 0
/// the coefficients are the integers m^{-k}).
TruncatedSeries polylog_series(long k, std::size_t order);

/// 1 - e^{-t}.
TruncatedSeries one_minus_exp_neg(std::size_t order);

/// Li_k(1 - e^{-t}) / t, built by composing the polylogarithm series with
/// 1 - e^{-t} and shifting out the vanishing constant term.
TruncatedSeries polylog_factor_series(long k, std::size_t order);

} // namespace degenpoly
