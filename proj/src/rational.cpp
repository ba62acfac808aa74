#include "degenpoly/rational.hpp"

#include <cctype>
#include <ostream>

namespace degenpoly {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational Rational::from_string(std::string_view s) {
    std::string_view num = s;
    std::string_view den = "1";
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    std::string_view num_digits = num;
    if (!num_digits.empty() && num_digits.front() == '-') {
        num_digits.remove_prefix(1);
    }
    if (!all_digits(num_digits) || !all_digits(den)) {
        throw arithmetic_error("malformed rational literal: '" + std::string(s) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    return Rational(n, d); // rejects q = 0, canonicalizes
}

Rational Rational::pow(long e) const {
    if (e == 0) {
        return Rational(1);
    }
    mpz_class base_num = num();
    mpz_class base_den = den();
    if (e < 0) {
        if (is_zero()) {
            throw arithmetic_error("zero raised to a negative power");
        }
        std::swap(base_num, base_den);
        if (base_den < 0) { // keep denominator positive
            base_num = -base_num;
            base_den = -base_den;
        }
        e = -e;
    }
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), base_num.get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(pd.get_mpz_t(), base_den.get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(pn, pd);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

mpz_class factorial_z(unsigned n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

mpz_class binomial_z(unsigned n, unsigned k) {
    if (k > n) {
        return 0;
    }
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Rational binomial(unsigned n, unsigned k) {
    return Rational(binomial_z(n, k));
}

} // namespace degenpoly
