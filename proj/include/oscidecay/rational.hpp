// Exact rational scalars and parsing/formatting helpers.

#ifndef OSCIDECAY_RATIONAL_HPP
#define OSCIDECAY_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace oscidecay {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q{Integer(num), Integer(den)};
    q.canonicalize();
    return q;
}

/// Parses "p", "-p" or "p/q" with arbitrary-precision integer parts.
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational q{Integer(text)};
            q.canonicalize();
            return q;
        }
        Integer num(text.substr(0, slash));
        Integer den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational q(num, den);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("cannot parse rational: \"" + text + "\"");
    }
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline double to_double(const Rational& q) {
    return q.get_d();
}

/// Exact square root when the value is a perfect square of a rational.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    Integer num = q.get_num(), den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

/// Decimal rendering: exact and trimmed when the denominator is 2^a 5^b,
/// otherwise 17 significant digits of the double value.
inline std::string decimal_string(const Rational& q) {
    Integer den = q.get_den();
    int twos = 0, fives = 0;
    Integer d = den;
    while (mpz_even_p(d.get_mpz_t())) { d /= 2; ++twos; }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) { d /= 5; ++fives; }
    if (d == 1) {
        int digits = std::max(twos, fives);
        Integer scaled = q.get_num();
        for (int i = 0; i < digits - twos; ++i) scaled *= 2;
        for (int i = 0; i < digits - fives; ++i) scaled *= 5;
        std::string body = scaled.get_str();
        bool neg = !body.empty() && body[0] == '-';
        if (neg) body = body.substr(1);
        if (digits == 0) return (neg ? "-" : "") + body;
        while ((int)body.size() <= digits) body = "0" + body;
        std::string out = body.substr(0, body.size() - digits) + "." + body.substr(body.size() - digits);
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
        return (neg ? "-" : "") + out;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", q.get_d());
    return buf;
}

}  // namespace oscidecay

#endif
