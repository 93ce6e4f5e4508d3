#ifndef DPCOVER_RATIONAL_HPP
#define DPCOVER_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "dpcover/errors.hpp"

namespace dpcover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(int n) {
    if (n < 0) throw UsageError("factorial: negative argument");
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

inline Rational ratPow(const Rational& base, int exp) {
    if (exp < 0) {
        if (base == 0) throw UsageError("ratPow: zero to a negative power");
        Rational inv(boost::multiprecision::denominator(base),
                     boost::multiprecision::numerator(base));
        return ratPow(inv, -exp);
    }
    Rational r = 1;
    Rational b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// "p/q" in lowest terms; integers print without the "/q" part.
inline std::string ratToString(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline double ratToDouble(const Rational& r) {
    return static_cast<double>(r);
}

} // namespace dpcover

#endif // DPCOVER_RATIONAL_HPP
