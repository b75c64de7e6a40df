#pragma once

// Exact arithmetic primitives. Rationals are GMP-backed and always kept in
// lowest terms with a positive denominator.

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

#include "entgame/error.hpp"

namespace entgame {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline std::string to_string(const Rational& q) {
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational pow2(long exponent) {
    Rational r = 1;
    const Rational base = exponent >= 0 ? Rational(2) : Rational(1, 2);
    for (long i = 0; i < std::labs(exponent); ++i) r *= base;
    return r;
}

namespace detail {

inline BigInt parse_integer(std::string_view digits, std::string_view whole) {
    if (digits.empty()) throw Error(ErrorKind::parse_error, "empty number in '" + std::string(whole) + "'");
    for (char c : digits) {
        if (c < '0' || c > '9')
            throw Error(ErrorKind::parse_error, "not a rational: '" + std::string(whole) + "'");
    }
    // drop leading zeros, boost reads 0NN as octal
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return BigInt(std::string(digits));
}

}  // namespace detail

/// Parses "p/q", "-7", "0.125" or "1e-6" into an exact rational.
inline Rational parse_rational(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.empty()) throw Error(ErrorKind::parse_error, "empty rational");

    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_integer(text.substr(0, slash), whole);
        BigInt den = detail::parse_integer(text.substr(slash + 1), whole);
        if (den == 0) throw Error(ErrorKind::parse_error, "zero denominator in '" + std::string(whole) + "'");
        value = Rational(num, den);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            std::string_view exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            exponent = detail::parse_integer(exp_text, whole).convert_to<long>();
            if (exp_negative) exponent = -exponent;
            text = text.substr(0, e);
        }
        std::string digits;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
            exponent -= static_cast<long>(text.size() - dot - 1);
        } else {
            digits = std::string(text);
        }
        value = Rational(detail::parse_integer(digits, whole));
        Rational ten_power = 1;
        for (long i = 0; i < std::labs(exponent); ++i) ten_power *= 10;
        value = exponent >= 0 ? value * ten_power : value / ten_power;
    }
    return negative ? Rational(-value) : value;
}

/// Best continued-fraction convergent of `x` whose denominator does not
/// exceed `max_denominator`. Values too small for the cap fall back to the
/// exact binary value of the double so positive inputs stay positive.
inline Rational rationalize(double x, const BigInt& max_denominator = BigInt(1000000000000LL)) {
    if (!std::isfinite(x)) throw Error(ErrorKind::invalid_argument, "cannot rationalize a non-finite value");
    const Rational exact(x);
    if (x == 0.0) return exact;

    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    BigInt p = numerator(exact), q = denominator(exact);
    BigInt h_prev = 1, h = 0, k_prev = 0, k = 1;  // convergents h/k
    BigInt h_best = 0, k_best = 1;
    bool have = false;
    while (q != 0) {
        BigInt a = p / q;
        if (p < 0 && a * q != p) a -= 1;  // floor for negatives
        BigInt h_next = a * h_prev + h;
        BigInt k_next = a * k_prev + k;
        if (k_next > max_denominator) break;
        h = h_prev; k = k_prev;
        h_prev = h_next; k_prev = k_next;
        h_best = h_next; k_best = k_next;
        have = true;
        BigInt r = p - a * q;
        p = q;
        q = r;
    }
    if (!have) return exact;
    Rational approx(h_best, k_best);
    if (approx == 0 || (approx > 0) != (exact > 0)) return exact;
    return approx;
}

}  // namespace entgame
