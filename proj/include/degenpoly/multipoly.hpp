#pragma once

#include "degenpoly/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace degenpoly {

/// The closed variable set of the library. y exists only for addition-type
/// identities; keeping the set fixed keeps exponent keys fixed-width.
enum class Var : std::uint8_t { x = 0, y = 1, lambda = 2 };

std::string_view var_name(Var v);

/// Exponent triple of one monomial x^dx * y^dy * lambda^dl. The default
/// ordering (lexicographic on dx, dy, dl) is the canonical term order used
/// for storage and serialization.
struct Monomial {
    unsigned dx = 0;
    unsigned dy = 0;
    unsigned dl = 0;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    unsigned get(Var v) const {
        switch (v) {
        case Var::x: return dx;
        case Var::y: return dy;
        default: return dl;
        }
    }
    void set(Var v, unsigned e) {
        switch (v) {
        case Var::x: dx = e; break;
        case Var::y: dy = e; break;
        default: dl = e; break;
        }
    }
};

/// Exact sparse polynomial in x, y, lambda over Rational.
///
/// Canonical form invariant: no stored coefficient is zero. Equality is
/// structural equality of the term maps, which by canonicality is exact
/// polynomial equality; this is the notion of "identity holds" everywhere
/// in this library.
class MultiPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    MultiPoly() = default;
    MultiPoly(int c) : MultiPoly(Rational(c)) {}
    MultiPoly(long c) : MultiPoly(Rational(c)) {}
    MultiPoly(const Rational& c) {
        if (!c.is_zero()) {
            terms_.emplace(Monomial{}, c);
        }
    }

    static MultiPoly variable(Var v) {
        Monomial m;
        m.set(v, 1);
        return monomial(Rational(1), m);
    }

    static MultiPoly monomial(const Rational& c, const Monomial& m) {
        MultiPoly p;
        if (!c.is_zero()) {
            p.terms_.emplace(m, c);
        }
        return p;
    }

    bool is_zero() const { return terms_.empty(); }

    /// True when the polynomial is a rational constant (possibly zero).
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
    }

    /// Coefficient of the constant monomial (zero when absent).
    Rational constant_term() const { return coeff(Monomial{}); }

    /// Coefficient of an arbitrary monomial (zero when absent).
    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational() : it->second;
    }

    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    /// Largest exponent of v appearing in any term; 0 for the zero polynomial.
    unsigned degree(Var v) const;
    unsigned total_degree() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

    MultiPoly operator-() const;

    friend MultiPoly operator*(const MultiPoly& p, const Rational& c);
    friend MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }
    /// Scalar division; zero divisor is a domain error.
    friend MultiPoly operator/(const MultiPoly& p, const Rational& c);

    MultiPoly pow(unsigned e) const;

    /// Eliminates v by substituting an exact rational value.
    MultiPoly substitute(Var v, const Rational& value) const;

    /// Substitutes a polynomial image for v (used for argument rescalings
    /// such as x -> (a + x)/d). A ring homomorphism, like the scalar form.
    MultiPoly substitute(Var v, const MultiPoly& image) const;

    /// Exact formal partial derivative.
    MultiPoly derivative(Var v) const;

    bool operator==(const MultiPoly&) const = default;

    /// Deterministic human-readable rendering, e.g. "x^2 - x + 1/6".
    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);

    TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const MultiPoly& p);

} // namespace degenpoly
