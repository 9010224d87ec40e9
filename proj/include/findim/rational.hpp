#pragma once

#include <string>

#include <boost/multiprecision/gmp.hpp>

#include <findim/errors.hpp>

namespace findim {

// Exact arbitrary-precision scalars. mpq keeps values canonical: lowest
// terms, positive denominator. No floating point anywhere in the engine.
using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline std::string to_string(const Integer& z) { return z.str(); }

// Serialized form is "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) {
    Integer den = denominator(r);
    if (den == 1) return numerator(r).str();
    return numerator(r).str() + "/" + den.str();
}

inline Rational rational_from_string(const std::string& text) {
    auto fail = [&]() -> Rational {
        throw SchemaError("invalid rational literal '" + text + "'");
    };
    if (text.empty()) return fail();
    std::string::size_type slash = text.find('/');
    std::string num_part = text.substr(0, slash);
    std::string den_part = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (num_part.empty() || den_part.empty()) return fail();
    auto is_integer_literal = [](const std::string& s) {
        std::string::size_type i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (!is_integer_literal(num_part) || !is_integer_literal(den_part)) return fail();
    Integer num(num_part);
    Integer den(den_part);
    if (den == 0) throw SchemaError("zero denominator in rational literal '" + text + "'");
    return Rational(num) / Rational(den);
}

} // namespace findim
