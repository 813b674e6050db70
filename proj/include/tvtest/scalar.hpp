// scalar.hpp — numeric backbone: exact rationals and IEEE doubles behind one
// set of traits. Every quantitative type in the library is a template over
// the scalar, so the same code path yields certified exact results (Rational)
// or fast approximate ones (double) with documented tolerances.
#pragma once

#include "tvtest/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace tvtest {

using Rational = boost::multiprecision::cpp_rational;

template <class S>
struct scalar_traits;

// Tolerances follow the dense-simplex conventions used throughout:
// feasibility 1e-9, pivot threshold 1e-11, pmf construction 1e-12,
// composed duality gap 1e-6.
template <>
struct scalar_traits<double> {
    static constexpr bool is_exact = false;
    static double feasibility_tol() { return 1e-9; }
    static double pivot_tol() { return 1e-11; }
    static double pmf_sum_tol() { return 1e-12; }
    static double duality_tol() { return 1e-6; }
    static double abs(double x) { return std::fabs(x); }
    static double from_fraction(long long p, long long q) {
        return static_cast<double>(p) / static_cast<double>(q);
    }
    static double to_double(double x) { return x; }
    static constexpr const char* mode_name() { return "float"; }
};

template <>
struct scalar_traits<Rational> {
    static constexpr bool is_exact = true;
    static Rational feasibility_tol() { return Rational(0); }
    static Rational pivot_tol() { return Rational(0); }
    static Rational pmf_sum_tol() { return Rational(0); }
    static Rational duality_tol() { return Rational(0); }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static Rational from_fraction(long long p, long long q) { return Rational(p, q); }
    static double to_double(const Rational& x) { return static_cast<double>(x); }
    static constexpr const char* mode_name() { return "rational"; }
};

// |a - b| <= tol, with tol = 0 for exact scalars.
template <class S>
bool within(const S& a, const S& b, const S& tol) {
    return scalar_traits<S>::abs(a - b) <= tol;
}

template <class S>
bool approx_le(const S& a, const S& b, const S& tol) {
    return a <= b + tol;
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    S acc(0);
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

// Decimal or fraction literal -> exact rational. Accepts "3/10", "0.3",
// "-1.25e-2", "7". Used by the JSON layer so that rational-mode inputs keep
// their decimal meaning instead of inheriting a binary-double approximation.
inline Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty numeric literal");
    if (text.find('/') != std::string::npos) {
        try {
            return Rational(text);  // "p/q" handled natively
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed fraction: " + text);
        }
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    boost::multiprecision::cpp_int mantissa = 0;
    long exponent10 = 0;
    bool any_digit = false;
    for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
        mantissa = mantissa * 10 + (text[pos] - '0');
        any_digit = true;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
            mantissa = mantissa * 10 + (text[pos] - '0');
            --exponent10;
            any_digit = true;
        }
    }
    if (!any_digit) throw std::invalid_argument("malformed numeric literal: " + text);
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = text[pos] == '-';
            ++pos;
        }
        if (pos == text.size()) throw std::invalid_argument("malformed exponent: " + text);
        long e = 0;
        for (; pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
            e = e * 10 + (text[pos] - '0');
        }
        exponent10 += exp_neg ? -e : e;
    }
    if (pos != text.size()) throw std::invalid_argument("malformed numeric literal: " + text);
    boost::multiprecision::cpp_int num = mantissa, den = 1;
    for (long i = 0; i < exponent10; ++i) num *= 10;
    for (long i = 0; i > exponent10; --i) den *= 10;
    Rational out(num, den);
    return negative ? Rational(-out) : out;
}

// Scalar-from-literal, dispatching on the instantiation.
template <class S>
S scalar_from_string(const std::string& text);

template <>
inline double scalar_from_string<double>(const std::string& text) {
    if (text.find('/') != std::string::npos) {
        return static_cast<double>(rational_from_string(text));
    }
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("malformed numeric literal: " + text);
    return v;
}

template <>
inline Rational scalar_from_string<Rational>(const std::string& text) {
    return rational_from_string(text);
}

inline std::string to_string(const Rational& x) { return x.str(); }

}  // namespace tvtest
