#include "degenpoly/combinatorics.hpp"

#include "degenpoly/series.hpp"

#include <stdexcept>

namespace degenpoly {

StirlingTable::StirlingTable(unsigned max_n) : max_n_(max_n), zero_(0) {
    s2_.resize(max_n + 1);
    s1_.resize(max_n + 1);
    for (unsigned n = 0; n <= max_n; ++n) {
        s2_[n].assign(n + 1, mpz_class(0));
        s1_[n].assign(n + 1, mpz_class(0));
    }
    s2_[0][0] = 1;
    s1_[0][0] = 1;
    for (unsigned n = 1; n <= max_n; ++n) {
        for (unsigned l = 1; l <= n; ++l) {
            // S2(n, l) = l S2(n-1, l) + S2(n-1, l-1)
            s2_[n][l] = s2_[n - 1][l - 1];
            if (l <= n - 1) {
                s2_[n][l] += l * s2_[n - 1][l];
            }
            // s1(n, l) = s1(n-1, l-1) - (n-1) s1(n-1, l)
            s1_[n][l] = s1_[n - 1][l - 1];
            if (l <= n - 1) {
                s1_[n][l] -= (n - 1) * s1_[n - 1][l];
            }
        }
    }
}

const mpz_class& StirlingTable::at(const std::vector<std::vector<mpz_class>>& tri, unsigned n,
                                   unsigned l) const {
    if (n > max_n_) {
        throw std::out_of_range("Stirling table built up to n = " + std::to_string(max_n_) +
                                ", requested n = " + std::to_string(n));
    }
    if (l > n) {
        return zero_;
    }
    return tri[n][l];
}

const mpz_class& StirlingTable::second(unsigned n, unsigned l) const { return at(s2_, n, l); }

const mpz_class& StirlingTable::first_signed(unsigned n, unsigned l) const {
    return at(s1_, n, l);
}

std::vector<Rational> bernoulli_numbers(unsigned max_n) {
    std::vector<Rational> b(max_n + 1);
    b[0] = Rational(1);
    for (unsigned n = 1; n <= max_n; ++n) {
        Rational acc;
        for (unsigned j = 0; j < n; ++j) {
            acc += Rational(binomial_z(n + 1, j), 1) * b[j];
        }
        b[n] = -acc / Rational(static_cast<long>(n) + 1);
    }
    return b;
}

Rational bernoulli_number(unsigned n) { return bernoulli_numbers(n)[n]; }

MultiPoly falling_factorial(const MultiPoly& base, unsigned n) {
    MultiPoly out(1);
    for (unsigned i = 0; i < n; ++i) {
        out *= base - MultiPoly(static_cast<long>(i));
    }
    return out;
}

MultiPoly classical_bernoulli_poly(unsigned n) {
    const std::vector<Rational> b = bernoulli_numbers(n);
    MultiPoly out;
    const MultiPoly x = MultiPoly::variable(Var::x);
    for (unsigned j = 0; j <= n; ++j) {
        out += x.pow(n - j) * (Rational(binomial_z(n, j), 1) * b[j]);
    }
    return out;
}

std::vector<MultiPoly> classical_poly_bernoulli_table(long k, unsigned max_n) {
    const std::size_t order = static_cast<std::size_t>(max_n) + 1;
    const MultiPoly one(1);
    const TruncatedSeries et = exp_series(order + 1, one);
    const TruncatedSeries et_minus_1_over_t =
        (et - TruncatedSeries::constant(one, order + 1)).shifted_down(1);
    const TruncatedSeries kernel =
        TruncatedSeries::constant(one, order) / et_minus_1_over_t.truncated(order);
    const TruncatedSeries gf = kernel * polylog_factor_series(k, order) *
                               exp_series(order, MultiPoly::variable(Var::x));
    std::vector<MultiPoly> out;
    out.reserve(order);
    for (unsigned n = 0; n <= max_n; ++n) {
        out.push_back(gf.coefficient(n, CoeffMode::egf));
    }
    return out;
}

MultiPoly classical_poly_bernoulli(long k, unsigned n) {
    return classical_poly_bernoulli_table(k, n)[n];
}

} // namespace degenpoly
