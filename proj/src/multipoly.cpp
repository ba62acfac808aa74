#include "degenpoly/multipoly.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <vector>

namespace degenpoly {

std::string_view var_name(Var v) {
    switch (v) {
    case Var::x: return "x";
    case Var::y: return "y";
    default: return "lambda";
    }
}

unsigned MultiPoly::degree(Var v) const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, m.get(v));
    }
    return d;
}

unsigned MultiPoly::total_degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) {
        d = std::max(d, m.dx + m.dy + m.dl);
    }
    return d;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    for (const auto& [m, c] : o.terms_) {
        add_term(m, -c);
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly out;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m{ma.dx + mb.dx, ma.dy + mb.dy, ma.dl + mb.dl};
            out.add_term(m, ca * cb);
        }
    }
    return out;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        out.terms_.emplace(m, -c);
    }
    return out;
}

MultiPoly operator*(const MultiPoly& p, const Rational& c) {
    MultiPoly out;
    if (c.is_zero()) {
        return out;
    }
    for (const auto& [m, pc] : p.terms_) {
        out.terms_.emplace(m, pc * c);
    }
    return out;
}

MultiPoly operator/(const MultiPoly& p, const Rational& c) {
    if (c.is_zero()) {
        throw arithmetic_error("polynomial division by zero scalar");
    }
    return p * c.pow(-1);
}

MultiPoly MultiPoly::pow(unsigned e) const {
    MultiPoly out(Rational(1));
    MultiPoly base = *this;
    while (e > 0) {
        if (e & 1u) {
            out = out * base;
        }
        e >>= 1u;
        if (e > 0) {
            base = base * base;
        }
    }
    return out;
}

MultiPoly MultiPoly::substitute(Var v, const Rational& value) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest.set(v, 0);
        out.add_term(rest, c * value.pow(m.get(v)));
    }
    return out;
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& image) const {
    // Cache image powers up to the highest exponent of v.
    std::vector<MultiPoly> powers;
    powers.push_back(MultiPoly(Rational(1)));
    for (unsigned e = 1; e <= degree(v); ++e) {
        powers.push_back(powers.back() * image);
    }
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        Monomial rest = m;
        rest.set(v, 0);
        out += MultiPoly::monomial(c, rest) * powers[m.get(v)];
    }
    return out;
}

MultiPoly MultiPoly::derivative(Var v) const {
    MultiPoly out;
    for (const auto& [m, c] : terms_) {
        unsigned e = m.get(v);
        if (e == 0) {
            continue;
        }
        Monomial d = m;
        d.set(v, e - 1);
        out.add_term(d, c * Rational(static_cast<long>(e)));
    }
    return out;
}

std::string MultiPoly::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    // Descending term order reads naturally (leading x powers first).
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rational a = c;
        if (first) {
            if (a.sign() < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) {
                a = -a;
            }
        }
        first = false;
        const bool has_vars = m != Monomial{};
        if (!has_vars || a != Rational(1)) {
            os << a.str();
            if (has_vars) {
                os << "*";
            }
        }
        bool star = false;
        for (Var v : {Var::x, Var::y, Var::lambda}) {
            unsigned e = m.get(v);
            if (e == 0) {
                continue;
            }
            if (star) {
                os << "*";
            }
            os << var_name(v);
            if (e > 1) {
                os << "^" << e;
            }
            star = true;
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const MultiPoly& p) {
    return os << p.str();
}

} // namespace degenpoly
