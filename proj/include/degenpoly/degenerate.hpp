#pragma once

#include "degenpoly/combinatorics.hpp"
#include "degenpoly/multipoly.hpp"
#include "degenpoly/rational.hpp"
#include "degenpoly/series.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace degenpoly {

/// Degenerate falling factorial (z|λ)_n = z (z-λ) (z-2λ) ... (z-(n-1)λ);
/// the empty product for n = 0. Specializing λ = 1 gives the ordinary
/// falling factorial.
MultiPoly degenerate_falling(const MultiPoly& z, unsigned n);
MultiPoly degenerate_falling(Var v, unsigned n);

/// (1+λt)^{w/λ} = sum_n (w|λ)_n t^n / n!, built termwise. The exponent w may
/// be any polynomial (x, x+1, x+y, ...); the binomial-convolution identity
/// degenerate_exp(u) * degenerate_exp(v) = degenerate_exp(u+v) holds exactly.
TruncatedSeries degenerate_exp(const MultiPoly& w, std::size_t order);

/// Which (1+λt)^{·/λ} factor multiplies the kernel in a generating function.
/// x_plus_one and x_plus_y are assembled as products of single-variable
/// factors, mirroring how the shifted/added arguments arise.
enum class GfExponent { zero, x, x_plus_one, x_plus_y };

/// The shared series of the degenerate-Bernoulli generating functions at a
/// fixed truncation order.
struct SeriesBundle {
    std::size_t order;
    TruncatedSeries e_lambda;       // (1+λt)^{1/λ}; constant and linear terms are 1
    TruncatedSeries carlitz_kernel; // t / ((1+λt)^{1/λ} - 1)

    /// order must be >= 1. The kernel division is well defined because
    /// (1|λ)_0 = (1|λ)_1 = 1 forces (1+λt)^{1/λ} - 1 = t + O(t²), so the
    /// explicit shift by t leaves a unit constant term.
    static SeriesBundle build(std::size_t order);

    /// Li_k(1 - e^{-t}) / t.
    TruncatedSeries polylog_factor(long k) const;

    TruncatedSeries exponent_factor(GfExponent e) const;
};

/// Closed form for the coefficients c_l(k) with Li_k(1-e^{-t})/t =
/// sum_l c_l(k) t^l/l!:
///   c_l(k) = sum_{p=1}^{l+1} (-1)^{p+l+1} (p!/p^k) S2(l+1, p) / (l+1).
/// Must agree with the composition route in polylog_factor; c_l(1) is 1 at
/// l = 0 and 0 beyond. Requires s2.max_n() >= l+1.
Rational polylog_factor_coeff(long k, unsigned l, const StirlingTable& s2);

/// β_n(x|λ) for n = 0..max_n (or β_n(λ) when with_x is false), read off
/// kernel · (1+λt)^{x/λ}. Deliberately bypasses the polylogarithm factor so
/// the k = 1 family can be checked against it.
std::vector<MultiPoly> degenerate_bernoulli_table(unsigned max_n, bool with_x = true);
MultiPoly degenerate_bernoulli(unsigned n, bool with_x = true);

/// β_n^{(k)} for n = 0..max_n from kernel · Li_k(1-e^{-t})/t · exponent
/// factor. The exponent selects between the number (zero), polynomial (x),
/// shifted (x+1) and two-variable (x+y) families.
std::vector<MultiPoly> degenerate_poly_bernoulli_table(long k, unsigned max_n,
                                                       GfExponent e = GfExponent::x);
MultiPoly degenerate_poly_bernoulli(long k, unsigned n, bool with_x = true);

/// Materialized β^{(k)} family: entries[n] = β_n^{(k)}(x|λ), order = number
/// of entries.
struct SequenceTable {
    long k = 1;
    std::size_t order = 0;
    std::vector<MultiPoly> entries;

    bool operator==(const SequenceTable&) const = default;
};

SequenceTable build_sequence_table(long k, unsigned max_n);

/// First failure of a collapse check, if any.
struct CollapseMismatch {
    unsigned n;
    long k;
    MultiPoly witness; // nonzero difference
};

/// β_n(x|0) = B_n(x) for n <= max_n.
std::optional<CollapseMismatch> check_lambda0_bernoulli(unsigned max_n);

/// β_n^{(k)}(x|0) = B_n^{(k)}(x) for n <= max_n, classical side from the
/// exponential generating function.
std::optional<CollapseMismatch> check_lambda0_poly_bernoulli(long k, unsigned max_n);

/// β_n^{(1)}(x|λ) = β_n(x|λ) for n <= max_n; the left side goes through the
/// polylogarithm factor, the right side never builds it.
std::optional<CollapseMismatch> check_k1_collapse(unsigned max_n);

} // namespace degenpoly
