#pragma once

#include "degenpoly/multipoly.hpp"
#include "degenpoly/rational.hpp"

#include <gmpxx.h>

#include <vector>

namespace degenpoly {

/// Stirling numbers of both kinds for 0 <= l <= n <= max_n, filled once by
/// the usual triangular recurrences. Instances are immutable after
/// construction and safe to read concurrently.
class StirlingTable {
public:
    explicit StirlingTable(unsigned max_n);

    unsigned max_n() const { return max_n_; }

    /// Second kind S2(n, l): partitions of an n-set into l nonempty blocks.
    const mpz_class& second(unsigned n, unsigned l) const;

    /// First kind s1(n, l), signed: coefficients of the falling factorial,
    /// x(x-1)...(x-n+1) = sum_l s1(n, l) x^l.
    const mpz_class& first_signed(unsigned n, unsigned l) const;

private:
    const mpz_class& at(const std::vector<std::vector<mpz_class>>& tri, unsigned n,
                        unsigned l) const;

    unsigned max_n_;
    std::vector<std::vector<mpz_class>> s2_;
    std::vector<std::vector<mpz_class>> s1_;
    mpz_class zero_;
};

/// Bernoulli numbers B_0..B_max_n (B_1 = -1/2), by the defining recurrence
/// sum_{j=0}^{n} C(n+1, j) B_j = 0.
std::vector<Rational> bernoulli_numbers(unsigned max_n);

Rational bernoulli_number(unsigned n);

/// base (base-1) (base-2) ... (base-n+1); the empty product for n = 0.
MultiPoly falling_factorial(const MultiPoly& base, unsigned n);

/// Classical Bernoulli polynomial B_n(x) = sum_j C(n, j) B_j x^{n-j}.
MultiPoly classical_bernoulli_poly(unsigned n);

/// Classical poly-Bernoulli polynomials B_n^{(k)}(x) for n = 0..max_n, read
/// off the exponential generating function
///   Li_k(1 - e^{-t}) / (e^t - 1) * e^{xt}.
/// Order k = 1 recovers the classical Bernoulli polynomials.
std::vector<MultiPoly> classical_poly_bernoulli_table(long k, unsigned max_n);

MultiPoly classical_poly_bernoulli(long k, unsigned n);

} // namespace degenpoly
