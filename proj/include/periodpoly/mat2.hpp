#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>

namespace periodpoly {

using i64 = long long;

// Integer 2x2 matrix (a b; c d), row-major.
struct Mat2 {
    i64 a = 1, b = 0, c = 0, d = 1;

    constexpr Mat2() = default;
    constexpr Mat2(i64 a_, i64 b_, i64 c_, i64 d_) : a(a_), b(b_), c(c_), d(d_) {}

    constexpr i64 det() const { return a * d - b * c; }

    // g^vee = g^{-1} det g
    constexpr Mat2 vee() const { return {d, -b, -c, a}; }

    Mat2 inverse() const {
        i64 D = det();
        if (D == 1) return vee();
        if (D == -1) return {-d, b, c, -a};
        throw std::domain_error("Mat2::inverse: determinant is not +-1");
    }

    // Representative modulo +-1: first nonzero of (c,d,a,b) positive.
    Mat2 canonical() const {
        i64 key = c != 0 ? c : (d != 0 ? d : (a != 0 ? a : b));
        return key < 0 ? Mat2{-a, -b, -c, -d} : *this;
    }

    Mat2 operator-() const { return {-a, -b, -c, -d}; }
    friend constexpr Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend constexpr bool operator==(const Mat2& x, const Mat2& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend constexpr bool operator!=(const Mat2& x, const Mat2& y) { return !(x == y); }
    friend bool operator<(const Mat2& x, const Mat2& y) {
        return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    }
    std::string str() const {
        return "(" + std::to_string(a) + " " + std::to_string(b) + "; " + std::to_string(c) + " " + std::to_string(d) +
               ")";
    }
    friend std::ostream& operator<<(std::ostream& os, const Mat2& m) { return os << m.str(); }
};

namespace mats {
inline constexpr Mat2 I{1, 0, 0, 1};
inline constexpr Mat2 S{0, -1, 1, 0};
inline constexpr Mat2 T{1, 1, 0, 1};
inline constexpr Mat2 Tinv{1, -1, 0, 1};
inline constexpr Mat2 U = T * S;  // (1 -1; 1 0)
inline constexpr Mat2 U2 = U * U;
inline constexpr Mat2 J{-1, 0, 0, -1};
inline constexpr Mat2 eps{-1, 0, 0, 1};
}  // namespace mats

inline i64 mod(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

inline i64 gcd3(i64 a, i64 b, i64 c) { return std::gcd(std::gcd(a, b), c); }

// Returns (g, x, y) with x a + y b = g = gcd(a,b) >= 0.
inline std::tuple<i64, i64, i64> ext_gcd(i64 a, i64 b) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        i64 q = a / b;
        std::tie(a, b) = std::make_tuple(b, a - q * b);
        std::tie(x0, x1) = std::make_tuple(x1, x0 - q * x1);
        std::tie(y0, y1) = std::make_tuple(y1, y0 - q * y1);
    }
    if (a < 0) return {-a, -x0, -y0};
    return {a, x0, y0};
}

inline i64 inv_mod(i64 a, i64 n) {
    auto [g, x, y] = ext_gcd(mod(a, n), n);
    (void)y;
    if (g != 1) throw std::domain_error("inv_mod: not a unit");
    return mod(x, n);
}

// An SL2(Z) matrix with bottom row (c, d); requires gcd(c,d) = 1.
inline Mat2 complete_bottom_row(i64 c, i64 d) {
    auto [g, x, y] = ext_gcd(d, c);
    if (g != 1) throw std::domain_error("complete_bottom_row: row not primitive");
    return {x, -y, c, d};
}

}  // namespace periodpoly
