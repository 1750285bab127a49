#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace periodpoly {

// Arbitrary precision rational backed by GMP; always canonical.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(int x) : v_(x) {}
    Rational(long x) : v_(x) {}
    static_assert(sizeof(long) == sizeof(long long), "LP64 data model expected");
    Rational(long long x) : v_(static_cast<long>(x)) {}
    Rational(const mpz_class& z) : v_(z) {}
    Rational(const mpz_class& p, const mpz_class& q) : v_(p, q) {
        if (q == 0) throw std::domain_error("Rational: zero denominator");
        v_.canonicalize();
    }
    Rational(long long p, long long q) : Rational(mpz_class(static_cast<long>(p)), mpz_class(static_cast<long>(q))) {}
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    // Parses "p", "p/q", with optional sign.
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(mpz_class(trim(s)));
            return Rational(mpz_class(trim(s.substr(0, slash))), mpz_class(trim(s.substr(slash + 1))));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("malformed rational: '" + s + "'");
        }
    }

    const mpq_class& raw() const { return v_; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }
    double to_double() const { return v_.get_d(); }

    std::string str() const {
        if (v_.get_den() == 1) return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t");
        auto e = s.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty");
        std::string t = s.substr(b, e - b + 1);
        if (!t.empty() && t[0] == '+') t = t.substr(1);
        return t;
    }
    mpq_class v_;
};

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline Rational conj(const Rational& x) { return x; }

inline Rational pow(const Rational& x, long e) {
    if (e < 0) return pow(Rational(1) / x, -e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), x.num().get_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), x.den().get_mpz_t(), static_cast<unsigned long>(e));
    return Rational(n, d);
}

inline mpz_class binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// B_n with B_1 = -1/2, from sum_{j<=n} C(n+1,j) B_j = 0.
inline Rational bernoulli(int n) {
    if (n < 0) throw std::domain_error("bernoulli: negative index");
    thread_local std::vector<Rational> cache{Rational(1)};
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rational s = 0;
        for (int j = 0; j < m; ++j) s += Rational(binomial(m + 1, j)) * cache[j];
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[n];
}

}  // namespace periodpoly
