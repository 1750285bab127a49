#pragma once

#include "cyclotomic.hpp"
#include "rational.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>

namespace periodpoly {

// Double precision complex value with an absolute error bound.
struct ComplexBall {
    std::complex<double> v{0.0, 0.0};
    double err = 0.0;

    ComplexBall() = default;
    ComplexBall(double re) : v(re, 0.0) {}
    ComplexBall(int re) : v(re, 0.0) {}
    ComplexBall(std::complex<double> z, double e = 0.0) : v(z), err(e) {}

    static double ulp(double mag) { return mag * std::numeric_limits<double>::epsilon(); }

    friend ComplexBall operator+(const ComplexBall& a, const ComplexBall& b) {
        auto z = a.v + b.v;
        return {z, a.err + b.err + ulp(std::abs(z))};
    }
    friend ComplexBall operator-(const ComplexBall& a, const ComplexBall& b) {
        auto z = a.v - b.v;
        return {z, a.err + b.err + ulp(std::abs(z))};
    }
    friend ComplexBall operator*(const ComplexBall& a, const ComplexBall& b) {
        auto z = a.v * b.v;
        return {z, std::abs(a.v) * b.err + std::abs(b.v) * a.err + a.err * b.err + 2 * ulp(std::abs(z))};
    }
    friend ComplexBall operator/(const ComplexBall& a, const ComplexBall& b) {
        double m = std::abs(b.v);
        if (m <= b.err) throw std::domain_error("ComplexBall: divisor ball contains zero");
        auto z = a.v / b.v;
        double e = (a.err + std::abs(z) * b.err) / (m - b.err);
        return {z, e + 2 * ulp(std::abs(z))};
    }
    ComplexBall operator-() const { return {-v, err}; }
    ComplexBall& operator+=(const ComplexBall& o) { return *this = *this + o; }
    ComplexBall& operator-=(const ComplexBall& o) { return *this = *this - o; }
    ComplexBall& operator*=(const ComplexBall& o) { return *this = *this * o; }
    ComplexBall& operator/=(const ComplexBall& o) { return *this = *this / o; }
    friend bool operator==(const ComplexBall& a, const ComplexBall& b) { return a.v == b.v && a.err == b.err; }
};

inline bool is_zero(const ComplexBall& x) { return x.v == std::complex<double>(0.0, 0.0) && x.err == 0.0; }
inline ComplexBall conj(const ComplexBall& x) { return {std::conj(x.v), x.err}; }

inline bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }

template <class F>
struct is_exact_field : std::false_type {};
template <>
struct is_exact_field<Rational> : std::true_type {};
template <>
struct is_exact_field<Cyclotomic> : std::true_type {};

// Run-time tagged scalar.
using Scalar = std::variant<Rational, Cyclotomic, ComplexBall>;

enum class FieldKind { rational, cyclotomic, complex_float };

inline FieldKind field_of(const Scalar& s) { return static_cast<FieldKind>(s.index()); }

inline std::string to_string(const Scalar& s) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ComplexBall>) {
                return "{" + std::to_string(x.v.real()) + ", " + std::to_string(x.v.imag()) + ", " +
                       std::to_string(x.err) + "}";
            } else {
                return x.str();
            }
        },
        s);
}

inline std::complex<double> to_complex(const Rational& x) { return x.to_double(); }
inline std::complex<double> to_complex(const Cyclotomic& x) { return x.to_complex(); }
inline std::complex<double> to_complex(const ComplexBall& x) { return x.v; }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }

// Embeds a rational into the field F.
template <class F>
F from_rational(const Rational& r) {
    if constexpr (std::is_same_v<F, Rational>) {
        return r;
    } else if constexpr (std::is_same_v<F, Cyclotomic>) {
        return Cyclotomic(r);
    } else if constexpr (std::is_same_v<F, ComplexBall>) {
        double d = r.to_double();
        return ComplexBall(std::complex<double>(d, 0.0), ComplexBall::ulp(std::abs(d)));
    } else {
        return F(r.to_double());
    }
}

}  // namespace periodpoly
