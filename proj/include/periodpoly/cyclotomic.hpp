#pragma once

#include "rational.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace periodpoly {

namespace detail {

using QPoly = std::vector<Rational>;  // little-endian coefficients

inline void trim(QPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// Quotient and remainder; divisor must be nonzero.
inline std::pair<QPoly, QPoly> poly_divmod(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    QPoly q(a.size() - b.size() + 1);
    Rational lead = b.back();
    for (size_t i = a.size(); i-- >= b.size();) {
        if (a[i].is_zero()) continue;
        Rational f = a[i] / lead;
        size_t s = i + 1 - b.size();
        q[s] = f;
        for (size_t j = 0; j < b.size(); ++j) a[s + j] -= f * b[j];
    }
    trim(a);
    trim(q);
    return {q, a};
}

inline const QPoly& cyclotomic_polynomial(int m) {
    static std::mutex mu;
    static std::map<int, QPoly> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    QPoly num(m + 1);
    num[0] = -1;
    num[m] = 1;
    QPoly den{Rational(1)};
    for (int d = 1; d < m; ++d) {
        if (m % d) continue;
        // recursion would re-lock; compute divisors' polynomials directly
        auto jt = cache.find(d);
        QPoly phid;
        if (jt != cache.end()) {
            phid = jt->second;
        } else {
            // build bottom-up: every proper divisor is handled before use
            QPoly n2(d + 1);
            n2[0] = -1;
            n2[d] = 1;
            QPoly d2{Rational(1)};
            for (int e = 1; e < d; ++e)
                if (d % e == 0) d2 = poly_mul(d2, cache.at(e));
            phid = poly_divmod(n2, d2).first;
            cache[d] = phid;
        }
        den = poly_mul(den, phid);
    }
    return cache[m] = poly_divmod(num, den).first;
}

inline int euler_phi(int m) {
    int r = m;
    for (int p = 2; p * p <= m; ++p) {
        if (m % p) continue;
        while (m % p == 0) m /= p;
        r -= r / p;
    }
    if (m > 1) r -= r / m;
    return r;
}

}  // namespace detail

// Element of Q(zeta_m), stored as a residue modulo the m-th cyclotomic polynomial.
class Cyclotomic {
public:
    Cyclotomic() : m_(1), c_{Rational(0)} {}
    Cyclotomic(int x) : m_(1), c_{Rational(x)} {}
    Cyclotomic(const Rational& x) : m_(1), c_{x} {}
    Cyclotomic(int m, std::vector<Rational> coeffs) : m_(m), c_(std::move(coeffs)) {
        if (m < 1) throw std::domain_error("cyclotomic conductor must be positive");
        normalize();
    }

    static Cyclotomic zeta(int m, long j = 1) {
        long e = ((j % m) + m) % m;
        std::vector<Rational> c(e + 1);
        c[e] = 1;
        return Cyclotomic(m, c);
    }

    int conductor() const { return m_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    Rational rational_part() const { return c_[0]; }

    Cyclotomic embed(int L) const {
        if (L % m_) throw std::domain_error("cyclotomic embedding into non-multiple conductor");
        if (L == m_) return *this;
        int step = L / m_;
        std::vector<Rational> c(static_cast<size_t>(step) * (c_.size() - 1) + 1);
        for (size_t j = 0; j < c_.size(); ++j) c[j * step] = c_[j];
        return Cyclotomic(L, c);
    }

    // zeta -> zeta^{-1}
    Cyclotomic conj() const {
        std::vector<Rational> c(m_);
        for (size_t j = 0; j < c_.size(); ++j) c[(m_ - static_cast<int>(j)) % m_] += c_[j];
        return Cyclotomic(m_, c);
    }

    std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        const double tau = 2 * std::acos(-1.0);
        for (size_t j = 0; j < c_.size(); ++j)
            z += c_[j].to_double() * std::polar(1.0, tau * static_cast<double>(j) / m_);
        return z;
    }

    std::string str() const {
        if (is_rational()) return c_[0].str();
        std::string s;
        for (size_t j = 0; j < c_.size(); ++j) {
            if (c_[j].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[j].str() + ")";
            if (j > 0) s += "*z" + std::to_string(m_) + "^" + std::to_string(j);
        }
        return s.empty() ? "0" : s;
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        int L = std::lcm(a.m_, b.m_);
        Cyclotomic x = a.embed(L), y = b.embed(L);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        int L = std::lcm(a.m_, b.m_);
        Cyclotomic x = a.embed(L), y = b.embed(L);
        return Cyclotomic(L, detail::poly_mul(x.c_, y.c_));
    }
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        int L = std::lcm(a.m_, b.m_);
        return a.embed(L).c_ == b.embed(L).c_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    // Extended Euclid against Phi_m.
    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("Cyclotomic: division by zero");
        using detail::QPoly;
        QPoly r0 = detail::cyclotomic_polynomial(m_), r1 = c_;
        detail::trim(r1);
        QPoly s0{}, s1{Rational(1)};
        while (!(r1.size() == 1)) {
            auto [q, r] = detail::poly_divmod(r0, r1);
            QPoly qs = detail::poly_mul(q, s1);
            QPoly s2(std::max(s0.size(), qs.size()));
            for (size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
            for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::trim(s2);
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
            if (r1.empty()) throw std::logic_error("Cyclotomic: non-invertible residue");
        }
        for (auto& x : s1) x /= r1[0];
        return Cyclotomic(m_, s1);
    }

private:
    void normalize() {
        const auto& phi = detail::cyclotomic_polynomial(m_);
        auto r = detail::poly_divmod(c_, phi).second;
        r.resize(phi.size() - 1);
        c_ = std::move(r);
    }
    int m_;
    std::vector<Rational> c_;
};

inline bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
inline Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }

}  // namespace periodpoly
