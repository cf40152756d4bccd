#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace foboson {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

// "p/q" with q > 0, or just "p" when the value is an integer.
inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q) {
    const Integer den = denominator(q);
    if (den == 1) return numerator(q).str();
    return numerator(q).str() + "/" + den.str();
}

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed text
// or a zero denominator.
inline Rational parse_rational(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start) throw std::invalid_argument("malformed rational: '" + text + "'");
        for (std::size_t i = start; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed rational: '" + text + "'");
        }
        return Integer(s[0] == '+' ? s.substr(1) : s);
    };
    const auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(parse_int(text));
    const Integer num = parse_int(text.substr(0, slash));
    const Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
    return Rational(num, den);
}

// Narrowing for values known to be small (JSON output of counts and degrees).
inline std::int64_t to_int64(const Integer& z) {
    if (z > std::numeric_limits<std::int64_t>::max() || z < std::numeric_limits<std::int64_t>::min()) {
        throw std::overflow_error("integer does not fit in 64 bits: " + z.str());
    }
    return z.convert_to<std::int64_t>();
}

}  // namespace foboson
