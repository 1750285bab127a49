#pragma once

#include "analytic.hpp"
#include "polyspace.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace periodpoly {

// Coset labels I, U, U^2 of Gamma0(2).
struct Gamma02Labels {
    int I, U, U2;
    explicit Gamma02Labels(const CosetSpace& sp) {
        if (sp.kind() != GroupKind::gamma0 || sp.level() != 2) throw std::invalid_argument("gamma02: space is not Gamma0(2)");
        I = sp.identity_label();
        U = sp.lookup(mats::U.c, mats::U.d).label;
        U2 = sp.lookup(mats::U2.c, mats::U2.d).label;
    }
};

template <class F>
struct PrincipalPoly {
    PolyValue<F> value;
};

template <class F>
PolyValue<F> poly_sub(const PolyValue<F>& a, const PolyValue<F>& b) {
    PolyValue<F> r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

template <class F>
bool poly_is_zero(const PolyValue<F>& p) {
    for (auto& x : p)
        if (!is_zero(x)) return false;
    return true;
}

// P | (ST - ST^{-1})(1 + S)
template <class F>
PolyValue<F> per2_relation(const PolyValue<F>& p, int w) {
    auto a = poly_sub(slash_poly(p, mats::S * mats::T, w), slash_poly(p, mats::S * mats::Tinv, w));
    return poly_add(a, slash_poly(a, mats::S, w));
}

template <class F>
PrincipalPoly<F> to_principal(const PolyVector<F>& P) {
    Gamma02Labels L(P.space());
    return {P.at(L.I)};
}

// P(U) = -P(I)|S, P(U^2) = -P(U)|U - P(I)|U^2; throws if the remaining relations of W fail.
template <class F>
PolyVector<F> from_principal(const CosetSpace& sp, const PrincipalPoly<F>& p) {
    Gamma02Labels L(sp);
    int w = sp.w();
    if (static_cast<int>(p.value.size()) != w + 1) throw std::invalid_argument("from_principal: degree mismatch");
    PolyVector<F> P(sp);
    auto pu = poly_scale(slash_poly(p.value, mats::S, w), F(-1));
    auto pu2 = poly_scale(poly_add(slash_poly(pu, mats::U, w), slash_poly(p.value, mats::U2, w)), F(-1));
    P.set(L.I, p.value);
    P.set(L.U, pu);
    P.set(L.U2, pu2);
    if (!poly_is_zero(poly_add(pu2, slash_poly(pu2, mats::S, w))))
        throw std::invalid_argument("from_principal: P(I) violates the relation P(U^2)|(1+S) = 0");
    if (!slash_sum(P, {{1, mats::I}, {1, mats::S}}).is_zero() ||
        !slash_sum(P, {{1, mats::I}, {1, mats::U}, {1, mats::U2}}).is_zero())
        throw std::invalid_argument("from_principal: reconstruction is not in W");
    return P;
}

// U_w: kernel of P -> P|(ST - ST^{-1})(1+S) on V_w.
inline Matrix<Rational> per2_kernel(int k) {
    int w = k - 2;
    Matrix<Rational> m(w + 1, w + 1);
    for (int j = 0; j <= w; ++j) {
        PolyValue<Rational> e(w + 1, Rational(0));
        e[j] = Rational(1);
        auto r = per2_relation(e, w);
        for (int i = 0; i <= w; ++i) m(i, j) = r[i];
    }
    return kernel_basis(m);
}

// <P(I)|T - T^{-1}, Q(I)>
template <class F>
F reduced_pairing(const PolyValue<F>& p, const PolyValue<F>& q, int w) {
    auto a = poly_sub(slash_poly(p, mats::T, w), slash_poly(p, mats::Tinv, w));
    return pair_vw(a, q, w);
}

inline cplx reduced_pairing_conj(const std::vector<cplx>& p, const std::vector<cplx>& q) {
    int w = static_cast<int>(p.size()) - 1;
    std::vector<cplx> qc(q.size());
    for (size_t i = 0; i < q.size(); ++i) qc[i] = std::conj(q[i]);
    auto a = poly_sub(slash_poly(p, mats::T, w), slash_poly(p, mats::Tinv, w));
    return pair_vw(a, qc, w);
}

// r_n from P = sum_n C(w,n) (-1)^{w-n} r_n X^{w-n}
template <class F>
std::vector<F> periods_of(const PolyValue<F>& p) {
    int w = static_cast<int>(p.size()) - 1;
    std::vector<F> r(w + 1);
    for (int n = 0; n <= w; ++n) {
        F c = from_rational<F>(Rational(binomial(w, n)) * Rational((w - n) % 2 ? -1 : 1));
        r[n] = p[w - n] / c;
    }
    return r;
}

// s_n = sum_{j <= n, n - j odd} C(n,j) r_j
template <class F>
std::vector<F> s_values(const std::vector<F>& r) {
    std::vector<F> s(r.size(), F(0));
    for (size_t n = 0; n < r.size(); ++n)
        for (size_t j = 0; j <= n; ++j)
            if ((n - j) % 2) s[n] += from_rational<F>(Rational(binomial(static_cast<long>(n), static_cast<long>(j)))) * r[j];
    return s;
}

// -2 sum_n (-1)^n C(w,n) s_n X^{w-n}, by increasing degree
template <class F>
PolyValue<F> t_minus_tinv_from_s(const std::vector<F>& s) {
    int w = static_cast<int>(s.size()) - 1;
    PolyValue<F> out(w + 1, F(0));
    for (int n = 0; n <= w; ++n)
        out[w - n] = from_rational<F>(Rational(-2 * (n % 2 ? -1 : 1)) * Rational(binomial(w, n))) * s[n];
    return out;
}

struct FYPeriods {
    Rational r0;  // (2/C_k) r_0(R_n)
    Rational rw;  // (2/C_k) r_w(R_n)
};

namespace detail {

inline Rational fy_r0(int k, int n) {
    const int N = 2;
    int w = k - 2, nt = w - n;
    Rational Nr(N);
    auto pw = [](Rational b, int e) {
        Rational r(1);
        for (int i = 0; i < std::abs(e); ++i) r *= b;
        return e < 0 ? Rational(1) / r : r;
    };
    Rational alpha = (Rational(1) - pw(Nr, -n - 1)) / (Rational(1) - pw(Nr, -k));
    Rational bn = bernoulli(n + 1) / Rational(n + 1), bnt = bernoulli(nt + 1) / Rational(nt + 1);
    Rational v = -pw(Nr, nt) * bnt + Rational(k) / bernoulli(k) * bn * bnt * alpha / Nr;
    if (w == n + 1) v += Rational(1) / Rational(w);
    return v;
}

}  // namespace detail

inline FYPeriods fy_generator_periods(int k, int n) {
    if (k <= 2 || k % 2) throw std::invalid_argument("fy_generator_periods: k must be even and > 2");
    int w = k - 2;
    if (n % 2 == 0 || n <= 0 || n >= w) throw std::invalid_argument("fy_generator_periods: n must be odd with 0 < n < w");
    Rational r0 = detail::fy_r0(k, n);
    Rational rw = -detail::fy_r0(k, w - n);
    for (int i = 0; i < n; ++i) rw /= Rational(2);
    return {r0, rw};
}

struct RelationRow {
    int a = 0;
    cplx lhs, rhs;
    double abs_residual = 0, rel_residual = 0;
};

struct ExtraRelationsReport {
    int k = 0;
    std::vector<cplx> periods;  // r_0..r_w
    double period_error = 0;
    std::vector<RelationRow> rows;

    std::string table() const;
};

// r_a = sum_{n odd} C(w,n) s_{w-n} (2/C_k) r_a(R_n), a = 0, w
inline ExtraRelationsReport extra_relations_from_periods(int k, const std::vector<cplx>& r) {
    if (k != 8 && k != 10 && k != 14) throw std::invalid_argument("extra_relations: weight must be 8, 10 or 14");
    int w = k - 2;
    if (static_cast<int>(r.size()) != w + 1) throw std::invalid_argument("extra_relations: need r_0..r_w");
    ExtraRelationsReport rep;
    rep.k = k;
    rep.periods = r;
    auto s = s_values(r);
    for (int a : {0, w}) {
        cplx rhs = 0;
        for (int n = 1; n < w; n += 2) {
            auto fy = fy_generator_periods(k, n);
            rhs += binomial(w, n).get_d() * s[w - n] * (a == 0 ? fy.r0 : fy.rw).to_double();
        }
        RelationRow row{a, r[a], rhs, 0, 0};
        row.abs_residual = std::abs(row.lhs - row.rhs);
        row.rel_residual = row.abs_residual / std::max(std::abs(row.lhs), 1e-300);
        rep.rows.push_back(row);
    }
    return rep;
}

inline ExtraRelationsReport extra_relations_check(const NewformData& f, int terms) {
    if (f.level != 2) throw std::invalid_argument("extra_relations: form is not on Gamma0(2)");
    if (f.weight != 8 && f.weight != 10 && f.weight != 14) throw std::invalid_argument("extra_relations: weight must be 8, 10 or 14");
    auto per = identity_periods(f, terms);
    std::vector<cplx> r;
    double err = 0;
    for (auto& p : per) {
        r.push_back(p.value);
        err = std::max(err, p.error);
    }
    auto rep = extra_relations_from_periods(f.weight, r);
    rep.period_error = err;
    return rep;
}

inline std::string format_complex(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.12e%+.12ei", z.real(), z.imag());
    return buf;
}

inline std::string ExtraRelationsReport::table() const {
    std::string out = "a\tLHS\tRHS\tabs_residual\trel_residual\n";
    char buf[64];
    for (auto& row : rows) {
        out += std::to_string(row.a) + "\t" + format_complex(row.lhs) + "\t" + format_complex(row.rhs) + "\t";
        std::snprintf(buf, sizeof buf, "%.3e\t%.3e\n", row.abs_residual, row.rel_residual);
        out += buf;
    }
    return out;
}

// 3 C_k (f,f) via the principal parts: <rho^+(I)|T - T^{-1}, conj rho^-(I)>
inline cplx reduced_petersson_norm(const NewformData& f, int terms) {
    auto rho = rho_identity(identity_periods(f, terms));
    int w = f.weight - 2;
    std::vector<cplx> plus(w + 1), minus(w + 1);
    for (int j = 0; j <= w; ++j) (j % 2 ? minus : plus)[j] = rho[j].value;
    return reduced_pairing_conj(plus, minus) / (3.0 * haberland_constant(f.weight));
}

}  // namespace periodpoly
