#pragma once

#include "mat2.hpp"
#include "matrix.hpp"
#include "rational.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace periodpoly {

// Coefficients a_0..a_w of sum a_i X^i.
template <class F>
using PolyValue = std::vector<F>;

namespace detail {

using ZPoly = std::vector<mpz_class>;

inline ZPoly zmul(const ZPoly& a, const ZPoly& b) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// (u X + v)^e
inline ZPoly linear_pow(i64 u, i64 v, int e) {
    ZPoly r{1};
    ZPoly lin{mpz_class(static_cast<long>(v)), mpz_class(static_cast<long>(u))};
    for (int i = 0; i < e; ++i) r = zmul(r, lin);
    return r;
}

}  // namespace detail

// Matrix of P -> P|g = P(gX)(cX+d)^w on coefficient vectors; column i is X^i|g.
inline const Matrix<Rational>& slash_matrix(const Mat2& g, int w) {
    static std::mutex mu;
    static std::map<std::pair<Mat2, int>, Matrix<Rational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g, w);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Matrix<Rational> m(w + 1, w + 1);
    for (int i = 0; i <= w; ++i) {
        auto p = detail::zmul(detail::linear_pow(g.a, g.b, i), detail::linear_pow(g.c, g.d, w - i));
        for (int j = 0; j <= w && j < static_cast<int>(p.size()); ++j) m(j, i) = Rational(p[j]);
    }
    return cache.emplace(key, std::move(m)).first->second;
}

template <class F>
PolyValue<F> apply_slash(const Matrix<Rational>& m, const PolyValue<F>& p) {
    PolyValue<F> out(m.rows, F(0));
    for (size_t i = 0; i < m.cols; ++i) {
        if (is_zero(p[i])) continue;
        for (size_t j = 0; j < m.rows; ++j)
            if (!m(j, i).is_zero()) out[j] += p[i] * from_rational<F>(m(j, i));
    }
    return out;
}

template <class F>
PolyValue<F> slash_poly(const PolyValue<F>& p, const Mat2& g, int w) {
    if (static_cast<int>(p.size()) != w + 1) throw std::invalid_argument("slash_poly: length is not w+1");
    return apply_slash(slash_matrix(g, w), p);
}

// <P,Q> = sum_n (-1)^{w-n} C(w,n)^{-1} a_n b_{w-n}; <(aX+b)^w,(cX+d)^w> = (ad-bc)^w.
template <class F>
F pair_vw(const PolyValue<F>& p, const PolyValue<F>& q, int w) {
    if (static_cast<int>(p.size()) != w + 1 || static_cast<int>(q.size()) != w + 1)
        throw std::invalid_argument("pair_vw: length is not w+1");
    F s(0);
    for (int n = 0; n <= w; ++n) {
        if (is_zero(p[n]) || is_zero(q[w - n])) continue;
        Rational c(mpz_class(1), binomial(w, n));
        if ((w - n) % 2) c = -c;
        s += from_rational<F>(c) * p[n] * q[w - n];
    }
    return s;
}

template <class F>
PolyValue<F> poly_add(const PolyValue<F>& a, const PolyValue<F>& b) {
    PolyValue<F> r = a;
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

template <class F>
PolyValue<F> poly_scale(const PolyValue<F>& a, const F& s) {
    PolyValue<F> r = a;
    for (auto& x : r) x *= s;
    return r;
}

// Polynomial part and residues of the rational function X^i|g for i in {-1, w+1}.
// The result is sum_j poly[j] X^j + sum residue / (X - pole).
struct PartialFraction {
    std::vector<Rational> poly;
    std::map<Rational, Rational> residues;

    void add(const PartialFraction& o, const Rational& s) {
        if (poly.size() < o.poly.size()) poly.resize(o.poly.size(), Rational(0));
        for (size_t j = 0; j < o.poly.size(); ++j) poly[j] += s * o.poly[j];
        for (auto& [x, r] : o.residues) {
            Rational& t = residues[x];
            t += s * r;
            if (t.is_zero()) residues.erase(x);
        }
    }
};

// num(X) / (u X + v) with u != 0 or v != 0, split into quotient and residue at -v/u.
inline PartialFraction divide_linear(const detail::ZPoly& num, i64 u, i64 v) {
    PartialFraction out;
    if (u == 0) {
        for (auto& c : num) out.poly.push_back(Rational(c, mpz_class(static_cast<long>(v))));
        return out;
    }
    // num / (u (X - x0)), x0 = -v/u; synthetic division.
    Rational x0(-v, u);
    size_t n = num.size();
    std::vector<Rational> q(n > 0 ? n - 1 : 0, Rational(0));
    Rational carry(0);
    for (size_t j = n; j-- > 0;) {
        Rational coeff = Rational(num[j]) + carry;
        if (j == 0) {
            if (!coeff.is_zero()) out.residues[x0] = coeff / Rational(u);
        } else {
            q[j - 1] = coeff;
            carry = coeff * x0;
        }
    }
    for (auto& c : q) c /= Rational(u);
    out.poly = std::move(q);
    return out;
}

// X^i | g for -1 <= i <= w+1 as a partial fraction.
inline PartialFraction slash_monomial_pf(int i, const Mat2& g, int w) {
    if (i >= 0 && i <= w) {
        auto p = detail::zmul(detail::linear_pow(g.a, g.b, i), detail::linear_pow(g.c, g.d, w - i));
        PartialFraction out;
        for (auto& c : p) out.poly.push_back(Rational(c));
        return out;
    }
    if (i == w + 1) return divide_linear(detail::linear_pow(g.a, g.b, w + 1), g.c, g.d);
    if (i == -1) return divide_linear(detail::linear_pow(g.c, g.d, w + 1), g.a, g.b);
    throw std::invalid_argument("slash_monomial_pf: exponent out of range");
}

// X(X-1) * (X^i | g) as a polynomial; g must only introduce the factors X and X-1.
inline std::vector<Rational> cleared_slash_monomial(int i, const Mat2& g, int w) {
    PartialFraction pf = slash_monomial_pf(i, g, w);
    std::vector<Rational> out(pf.poly.size() + 2, Rational(0));
    for (size_t j = 0; j < pf.poly.size(); ++j) {
        // multiply by X^2 - X
        out[j + 2] += pf.poly[j];
        out[j + 1] -= pf.poly[j];
    }
    if (out.size() < 2) out.resize(2, Rational(0));
    for (auto& [x0, r] : pf.residues) {
        // X(X-1)/(X - x0)
        if (x0.is_zero()) {
            out[1] += r;
            out[0] -= r;
        } else if (x0 == Rational(1)) {
            out[1] += r;
        } else {
            throw std::domain_error("cleared_slash_monomial: unexpected pole");
        }
    }
    return out;
}

}  // namespace periodpoly
