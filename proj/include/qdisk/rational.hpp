#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <string>

namespace qdisk {

/// Exact rational scalar. All q-rational expressions are evaluated in this
/// type; floating views are taken explicitly via to_double().
using Rational = boost::multiprecision::cpp_rational;
using BigInt   = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid configuration (bad q, bad dimension, bad CLI input).
struct ConfigError : Error {
    using Error::Error;
};

/// Violated operation precondition (degree caps, domain restrictions, ...).
struct DomainError : Error {
    using Error::Error;
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// q^e for integer e of either sign (q != 0 required for e < 0).
inline Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    bool inv = e < 0;
    unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rational base = q, acc = 1;
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (inv) {
        if (acc == 0) throw DomainError("rational_pow: negative power of zero");
        acc = Rational(1) / acc;
    }
    return acc;
}

/// Canonical string form: "num" when the denominator is 1, else "num/den".
inline std::string rational_to_string(const Rational& r) {
    BigInt num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw ConfigError("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw ConfigError("rational literal with zero denominator: " + s);
        return Rational(num, den);
    } catch (const std::exception&) {
        throw ConfigError("cannot parse rational literal: '" + s + "' (expected p or p/q)");
    }
}

/// Gaussian rational: exact complex number with rational real/imaginary parts.
struct GaussRat {
    Rational re;
    Rational im;

    GaussRat() : re(0), im(0) {}
    GaussRat(Rational r) : re(std::move(r)), im(0) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussRat conj() const { return {re, -im}; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
    friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussRat operator*(const Rational& s, const GaussRat& a) { return {s * a.re, s * a.im}; }
    friend GaussRat operator/(const GaussRat& a, const Rational& s) {
        if (s == 0) throw DomainError("GaussRat: division by zero");
        return {a.re / s, a.im / s};
    }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

}  // namespace qdisk
