#pragma once

#include "hecke.hpp"
#include "polyspace.hpp"
#include "rational.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace periodpoly {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Truncated q-expansion a_0 + a_1 q + ... + a_order q^order.
class QSeries {
public:
    QSeries() : c_(2, Rational(0)) {}
    explicit QSeries(int order) : c_(static_cast<size_t>(order) + 1, Rational(0)) {
        if (order < 1) throw std::invalid_argument("QSeries: truncation order must be >= 1");
    }
    QSeries(Rational a0, std::vector<Rational> a) {
        if (a.empty()) throw std::invalid_argument("QSeries: need at least one coefficient");
        c_.push_back(std::move(a0));
        for (auto& x : a) c_.push_back(std::move(x));
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int m) const {
        if (m < 0 || m > order()) throw std::out_of_range("QSeries: coefficient beyond truncation order");
        return c_[m];
    }
    Rational& operator[](int m) {
        if (m < 0 || m > order()) throw std::out_of_range("QSeries: coefficient beyond truncation order");
        return c_[m];
    }
    const Rational& constant_term() const { return c_[0]; }

    QSeries truncate(int order) const {
        QSeries r(std::min(order, this->order()));
        for (int m = 0; m <= r.order(); ++m) r.c_[m] = c_[m];
        return r;
    }
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        QSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; i + j <= r.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend QSeries operator+(const QSeries& a, const QSeries& b) {
        QSeries r(std::min(a.order(), b.order()));
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }
    friend QSeries operator*(const Rational& s, QSeries a) {
        for (auto& x : a.c_) x *= s;
        return a;
    }
    friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<Rational> c_;
};

// q^{sum t r / 24} prod_{t,r} prod_n (1 - q^{t n})^r.
inline QSeries eta_product(const std::vector<std::pair<int, int>>& factors, int order) {
    if (order < 1) throw std::invalid_argument("eta_product: order must be >= 1");
    long weight24 = 0;
    for (auto [t, r] : factors) {
        if (t < 1) throw std::invalid_argument("eta_product: multiplier must be positive");
        weight24 += static_cast<long>(t) * r;
    }
    if (weight24 % 24 || weight24 <= 0) throw std::invalid_argument("eta_product: leading exponent is not a positive integer");
    int offset = static_cast<int>(weight24 / 24);
    QSeries out(order);
    if (offset > order) return out;
    int len = order - offset;
    std::vector<mpz_class> p(len + 1, 0);
    p[0] = 1;
    for (auto [t, r] : factors) {
        for (int n = 1; t * n <= len; ++n) {
            int step = t * n;
            for (int e = 0; e < std::abs(r); ++e) {
                if (r > 0) {
                    for (int i = len; i >= step; --i) p[i] -= p[i - step];
                } else {
                    for (int i = step; i <= len; ++i) p[i] += p[i - step];
                }
            }
        }
    }
    for (int i = 0; i <= len; ++i) out[i + offset] = Rational(p[i]);
    return out;
}

inline mpz_class divisor_sigma(int k, long n) {
    mpz_class s = 0;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        mpz_class x;
        mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
        s += x;
        long e = n / d;
        if (e != d) {
            mpz_ui_pow_ui(x.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
            s += x;
        }
    }
    return s;
}

// E_k(z) - c E_k(t z) with E_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n.
inline QSeries eisenstein_combination(int k, int t, const Rational& c, int order) {
    if (k < 2 || k % 2) throw std::invalid_argument("eisenstein: weight must be even and >= 2");
    QSeries e(order);
    Rational a0 = -bernoulli(k) / Rational(2 * k);
    e[0] = a0 - c * a0;
    for (int n = 1; n <= order; ++n) {
        Rational v(divisor_sigma(k - 1, n));
        if (n % t == 0) v -= c * Rational(divisor_sigma(k - 1, n / t));
        e[n] = v;
    }
    return e;
}

// t = 1: E_k. t > 1: E_2(z) - t E_2(t z) for k = 2, E_k(z) - E_k(t z) for k >= 4.
inline QSeries eisenstein_qexp(int k, int t, int order = 30) {
    if (k % 2) throw std::invalid_argument("eisenstein_qexp: odd weight");
    if (t < 1) throw std::invalid_argument("eisenstein_qexp: t must be >= 1");
    if (t == 1) return eisenstein_combination(k, 1, Rational(0), order);
    return eisenstein_combination(k, t, k == 2 ? Rational(t) : Rational(1), order);
}

// Gamma(s, x) for integer s >= 1 via Gamma(s+1,x) = s Gamma(s,x) + x^s e^{-x}.
inline double incomplete_gamma(int s, double x) {
    if (s < 1) throw std::invalid_argument("incomplete_gamma: s must be >= 1");
    if (!(x > 0)) throw std::invalid_argument("incomplete_gamma: x must be > 0");
    double ex = std::exp(-x);
    double g = ex, xp = 1.0;
    for (int j = 1; j < s; ++j) {
        xp *= x;
        g = j * g + xp * ex;
    }
    return g;
}

struct CharacterSpec {
    bool trivial = true;
    int modulus = 1;
    std::vector<int> values;  // chi(0..modulus-1) in {-1, 0, 1}
};

struct NewformData {
    int level = 1;
    int weight = 2;
    CharacterSpec character;
    std::optional<int> fricke_sign;
    QSeries q;
};

struct LValue {
    cplx value;
    double error = 0.0;
    int s = 0;
};

namespace detail {

// d(m) m^{(k-1)/2} with d(m) <= 2 sqrt(m).
inline double coefficient_bound(long m, int k) { return 2.0 * std::sqrt(static_cast<double>(m)) * std::pow(m, (k - 1) / 2.0); }

inline double lseries_term(double am, long m, int s, int k, int N, double y0, double eps) {
    double x = 2 * kPi * m;
    double t1 = std::pow(x, -s) * incomplete_gamma(s, x * y0);
    double t2 = std::pow(static_cast<double>(N), k / 2.0 - s) * std::pow(x, s - k) * incomplete_gamma(k - s, x / (N * y0));
    return am * (t1 + eps * t2);
}

}  // namespace detail

struct MissingFrickeSign : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Lambda(s) = sum a_m [(2 pi m)^{-s} Gamma(s, 2 pi m y0) + i^k eps N^{k/2-s} (2 pi m)^{s-k} Gamma(k-s, 2 pi m/(N y0))].
inline LValue completed_lvalue(const NewformData& f, int s, int terms, double y0 = 0.0,
                               std::optional<int> eps_override = std::nullopt) {
    int k = f.weight, N = f.level;
    if (s <= 0 || s >= k) throw std::invalid_argument("completed_lvalue: need 0 < s < k");
    auto epsN = eps_override ? eps_override : f.fricke_sign;
    if (!epsN) throw MissingFrickeSign("completed_lvalue: Fricke sign is required");
    if (!f.q.constant_term().is_zero()) throw std::invalid_argument("completed_lvalue: form is not cuspidal");
    if (terms < 1 || terms > f.q.order())
        throw std::invalid_argument("completed_lvalue: terms must be between 1 and the truncation order");
    if (y0 <= 0) y0 = 1.0 / std::sqrt(static_cast<double>(N));
    // i^k eps: real for even k, imaginary for odd k
    cplx ik = std::pow(cplx(0, 1), k);
    double re_eps = (ik * static_cast<double>(*epsN)).real(), im_eps = (ik * static_cast<double>(*epsN)).imag();
    double sum_re = 0, sum_im = 0, round = 0;
    for (long m = 1; m <= terms; ++m) {
        double am = f.q[static_cast<int>(m)].to_double();
        if (am == 0) continue;
        double x = 2 * kPi * m;
        double t1 = am * std::pow(x, -s) * incomplete_gamma(s, x * y0);
        double t2 = am * std::pow(static_cast<double>(N), k / 2.0 - s) * std::pow(x, s - k) *
                    incomplete_gamma(k - s, x / (N * y0));
        sum_re += t1 + re_eps * t2;
        sum_im += im_eps * t2;
        round += (std::abs(t1) + std::abs(t2)) * 8 * std::numeric_limits<double>::epsilon();
    }
    double tail = 0;
    for (long m = terms + 1; m <= terms + 200000; ++m) {
        double b = std::abs(detail::lseries_term(detail::coefficient_bound(m, k), m, s, k, N, y0, 1.0));
        tail += b;
        if (b == 0 || b < 1e-30 * (tail + 1e-300)) break;
    }
    return {cplx(sum_re, sum_im), tail + round, s};
}

// The sign for which Lambda(s) is independent of the split point.
inline int determine_fricke_sign(const NewformData& f, int terms) {
    double best = 1e300;
    int sign = 1;
    double N = f.level;
    for (int e : {1, -1}) {
        double diff = 0;
        for (int s = 1; s < f.weight; ++s) {
            auto a = completed_lvalue(f, s, terms, 1.0 / std::sqrt(N), e).value;
            auto b = completed_lvalue(f, s, terms, 1.3 / std::sqrt(N), e).value;
            diff += std::abs(a - b);
        }
        if (diff < best) best = diff, sign = e;
    }
    return sign;
}

struct ComplexVal {
    cplx value;
    double error = 0.0;
};

// r_n(f) = i^{n+1} Lambda(n+1) at the identity coset, n = 0..w.
inline std::vector<ComplexVal> identity_periods(const NewformData& f, int terms) {
    int w = f.weight - 2;
    std::vector<ComplexVal> r;
    for (int n = 0; n <= w; ++n) {
        auto L = completed_lvalue(f, n + 1, terms);
        r.push_back({std::pow(cplx(0, 1), n + 1) * L.value, L.error});
    }
    return r;
}

// rho_f(I) = sum_n C(w,n) (-1)^{w-n} r_n X^{w-n}, returned by increasing degree.
inline std::vector<ComplexVal> rho_identity(const std::vector<ComplexVal>& r) {
    int w = static_cast<int>(r.size()) - 1;
    std::vector<ComplexVal> out(w + 1);
    for (int n = 0; n <= w; ++n) {
        double c = binomial(w, n).get_d() * ((w - n) % 2 ? -1.0 : 1.0);
        out[w - n] = {c * r[n].value, std::abs(c) * r[n].error};
    }
    return out;
}

struct Omegas {
    cplx plus, minus;
    double err_plus = 0, err_minus = 0;
    // max over coordinates at I of |rho^{+-}(I)_j - omega^{+-} P^{+-}(I)_j|
    double consistency = 0;
};

// omega^{+-} with rho_f^{+-} = omega^{+-} P^{+-}, read off at the designated coordinates at I.
inline Omegas period_and_omega(const NewformData& f, const PolyVector<Rational>& Pplus,
                               const PolyVector<Rational>& Pminus, int terms) {
    const CosetSpace& sp = Pplus.space();
    int I = sp.identity_label(), w = sp.w();
    if (sp.weight() != f.weight) throw std::invalid_argument("period_and_omega: weight mismatch");
    if (!(sp.eps(I) == LabelSign{I, 1})) throw std::logic_error("period_and_omega: identity coset not eps-fixed");
    auto rho = rho_identity(identity_periods(f, terms));
    Omegas om;
    auto pick = [&](const PolyVector<Rational>& P, int parity, cplx& omega, double& err) {
        // designated coordinate X^0 (plus) or X^1 (minus), then any coordinate of the right parity
        std::vector<int> order{parity};
        for (int j = parity; j <= w; j += 2)
            if (j != parity) order.push_back(j);
        for (int j : order) {
            if (j > w || P.coeff(I, j).is_zero()) continue;
            double p = P.coeff(I, j).to_double();
            if (std::abs(rho[j].value) <= rho[j].error) continue;
            omega = rho[j].value / p;
            err = rho[j].error / std::abs(p);
            return;
        }
        throw std::domain_error("period_and_omega: designated period vanishes and no fallback coordinate exists");
    };
    pick(Pplus, 0, om.plus, om.err_plus);
    pick(Pminus, 1, om.minus, om.err_minus);
    for (int j = 0; j <= w; ++j) {
        const auto& P = j % 2 == 0 ? Pplus : Pminus;
        cplx om_j = j % 2 == 0 ? om.plus : om.minus;
        om.consistency = std::max(om.consistency, std::abs(rho[j].value - om_j * P.coeff(I, j).to_double()));
    }
    return om;
}

inline cplx haberland_constant(int k) { return -std::pow(cplx(0, 2), k - 1); }

enum class Kappa { plus_minus, minus_plus, plus_plus, minus_minus };

struct EigenPeriods {
    PolyVector<Rational> plus, minus;
    Omegas omega;
    std::shared_ptr<const CosetSpace> space;  // keeps plus/minus valid when built internally
};

// (f,g) = {rho_f^{k1}, conj rho_g^{k2}} / (3 C_k); kappas must have opposite signs for even k.
inline cplx petersson_product(const EigenPeriods& f, const EigenPeriods& g, Kappa kappa) {
    int k = f.plus.space().weight();
    bool same = kappa == Kappa::plus_plus || kappa == Kappa::minus_minus;
    if ((k % 2 == 0) == same) throw std::invalid_argument("petersson_product: kappa choice violates the parity rule");
    bool f_plus = kappa == Kappa::plus_minus || kappa == Kappa::plus_plus;
    bool g_plus = kappa == Kappa::minus_plus || kappa == Kappa::plus_plus;
    const auto& P = f_plus ? f.plus : f.minus;
    const auto& Q = g_plus ? g.plus : g.minus;
    cplx wf = f_plus ? f.omega.plus : f.omega.minus;
    cplx wg = g_plus ? g.omega.plus : g.omega.minus;
    double pq = pair_braces(P, Q).to_double();
    return wf * std::conj(wg) * pq / (3.0 * haberland_constant(k));
}

// {rho_f, conj rho_g} / (6 C_k) using the full (unsplit) period polynomials.
inline cplx petersson_full(const EigenPeriods& f, const EigenPeriods& g) {
    int k = f.plus.space().weight();
    cplx s = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto& P = a ? f.minus : f.plus;
            const auto& Q = b ? g.minus : g.plus;
            cplx wf = a ? f.omega.minus : f.omega.plus;
            cplx wg = b ? g.omega.minus : g.omega.plus;
            s += wf * std::conj(wg) * pair_braces(P, Q).to_double();
        }
    return s / (6.0 * haberland_constant(k));
}

// {rho_f, rho_g} without conjugation; vanishes by the Haberland theorem.
inline cplx unconjugated_pairing(const EigenPeriods& f, const EigenPeriods& g) {
    cplx s = 0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const auto& P = a ? f.minus : f.plus;
            const auto& Q = b ? g.minus : g.plus;
            cplx wf = a ? f.omega.minus : f.omega.plus;
            cplx wg = b ? g.omega.minus : g.omega.plus;
            s += wf * wg * pair_braces(P, Q).to_double();
        }
    return s;
}

// Eigen-polynomials P^+, P^- of a trivial-character form on Gamma0(N), cut out by the given (p, lambda_p);
// without eigenvalues, a_p from the q-expansion is used for primes p not dividing N until both parts are lines.
inline EigenPeriods form_eigen_periods(const NewformData& f, int terms,
                                       std::vector<std::pair<int, Rational>> eig = {}) {
    if (!f.character.trivial) throw std::invalid_argument("form_eigen_periods: only trivial character is supported");
    auto owner = std::make_shared<const CosetSpace>(GroupKind::gamma0, f.level, f.weight);
    const CosetSpace& sp = *owner;
    auto [Wp, Wm] = eps_split(build_W(sp));
    bool from_q = eig.empty();
    auto attempt = [&](const Subspace<Rational>& sub, Parity par) {
        std::vector<std::pair<Matrix<Rational>, Rational>> data;
        auto add = [&](int p, const Rational& lam) {
            data.emplace_back(hecke_matrix(sub, solve_universal_hecke(p, p), SigmaSpec::delta(sp, p)).matrix, lam);
        };
        for (auto& [p, lam] : eig) add(p, lam);
        if (!from_q) return common_eigen_polynomial(sub, data, par);
        for (int p = 2; p <= f.q.order(); ++p) {
            bool prime = true;
            for (int d = 2; d * d <= p; ++d) prime = prime && p % d;
            if (!prime || f.level % p == 0) continue;
            add(p, f.q[p]);
            try {
                return common_eigen_polynomial(sub, data, par);
            } catch (const EigenError& e) {
                if (std::string(e.what()).find("dimension") == std::string::npos) throw;
            }
        }
        throw EigenError("form_eigen_periods: eigenvalues from the q-expansion do not isolate the form");
    };
    auto Pp = attempt(Wp, Parity::plus);
    auto Pm = attempt(Wm, Parity::minus);
    auto om = period_and_omega(f, Pp, Pm, terms);
    return EigenPeriods{std::move(Pp), std::move(Pm), om, owner};
}

// Riemann zeta for real s != 1 via Borwein's alternating-series acceleration.
inline double zeta(double s) {
    if (s == 1.0) throw std::domain_error("zeta: pole at s = 1");
    if (s <= 0 && std::floor(s) == s) {
        long m = static_cast<long>(1 - s);  // zeta(1-m) = -B_m/m, zeta(0) = -1/2
        if (m == 1) return -0.5;
        return (-bernoulli(m) / Rational(m)).to_double();
    }
    if (s < 0.5) {
        // functional equation
        double t = 1 - s;
        return 2 * std::pow(2 * kPi, -t) * std::cos(kPi * t / 2) * std::tgamma(t) * zeta(t);
    }
    const int n = 40;
    std::vector<long double> d(n + 1);
    long double term = 1.0L / n, sum = term;
    d[0] = n * sum;
    for (int i = 1; i <= n; ++i) {
        term *= static_cast<long double>(n + i - 1) * (n - i + 1) * 4.0L / ((2.0L * i - 1) * (2.0L * i));
        sum += term;
        d[i] = n * sum;
    }
    long double acc = 0;
    for (int k = 0; k < n; ++k) {
        long double t = (d[k] - d[n]) / std::pow(static_cast<long double>(k + 1), static_cast<long double>(s));
        acc += (k % 2 ? -t : t);
    }
    long double eta = -acc / d[n];
    return static_cast<double>(eta / (1.0L - std::pow(2.0L, 1.0L - s)));
}

// zeta'(-2m) = (-1)^m (2m)! zeta(2m+1) / (2 (2 pi)^{2m}), m >= 1.
inline double zeta_prime_negative_even(int m) {
    if (m < 1) throw std::invalid_argument("zeta_prime_negative_even: m must be >= 1");
    return (m % 2 ? -1.0 : 1.0) * std::tgamma(2.0 * m + 1) * zeta(2.0 * m + 1) / (2 * std::pow(2 * kPi, 2 * m));
}

// Residual of a numeric vector against a rational subspace, using the pivot coordinates.
template <class Vec>
double membership_residual(const Subspace<Rational>& sub, const Vec& v) {
    size_t n = sub.ambient();
    std::vector<cplx> r(v.begin(), v.end());
    if (r.size() != n) throw std::invalid_argument("membership_residual: size mismatch");
    for (size_t i = 0; i < sub.dim(); ++i) {
        cplx x = v[sub.pivots()[i]];
        for (size_t j = 0; j < n; ++j)
            if (!sub.basis()[i][j].is_zero()) r[j] -= x * sub.basis()[i][j].to_double();
    }
    double m = 0;
    for (auto& z : r) m = std::max(m, std::abs(z));
    return m;
}

struct FullLevelEisensteinReport {
    int k = 0;
    std::vector<cplx> periods;  // r_0..r_w
    std::vector<cplx> ext_vector;
    double residual = 0;
    size_t ext_dim = 0;
};

// Extended period polynomial of E_k at level 1 from L(s) = zeta(s) zeta(s-k+1), checked against W~.
inline FullLevelEisensteinReport fulllevel_eisenstein_demo(int k) {
    if (k < 4 || k % 2) throw std::invalid_argument("fulllevel demo: k must be even and >= 4");
    int w = k - 2;
    CosetSpace sp(GroupKind::gamma0, 1, k);
    FullLevelEisensteinReport rep;
    rep.k = k;
    const cplx two_pi_i(0, 2 * kPi);
    for (int n = 0; n <= w; ++n) {
        double s = n + 1;
        double L = n == 0 ? zeta_prime_negative_even((k - 2) / 2) : zeta(s) * zeta(s - k + 1);
        cplx r = (n % 2 ? 1.0 : -1.0) * std::tgamma(n + 1.0) / std::pow(two_pi_i, n + 1) * L;
        rep.periods.push_back(r);
    }
    double a0 = (-bernoulli(k) / Rational(2 * k)).to_double();
    std::vector<cplx> v(w + 2);
    for (int n = 0; n <= w; ++n) v[w - n] = binomial(w, n).get_d() * ((w - n) % 2 ? -1.0 : 1.0) * rep.periods[n];
    v[w + 1] = (w % 2 ? -1.0 : 1.0) * a0 / (w + 1);
    rep.ext_vector = v;
    auto wt = build_W_extended(sp);
    rep.ext_dim = wt.dim();
    rep.residual = membership_residual(wt, v);
    return rep;
}

struct Gamma06Report {
    cplx C;
    std::vector<int> aj_to_label;   // A_j -> our label, j = 1..12 stored at j-1
    bool sigma_matches = false;
    bool tau_matches = false;
    bool basis_matches = false;
    std::array<std::array<cplx, 3>, 3> x{};   // x[t-index][i]: coordinates in P_1, P_2, P_3 for t = 2, 3, 6
    std::array<std::array<cplx, 12>, 3> d{};  // d-values where determined, else 0
    std::array<double, 3> fit_residual{};
    double d1_error = 0;           // max_t |d_1 - C ln t|
    double additivity_error = 0;   // |x(6) - x(2) - x(3)|
    double d9_error = 0;           // |d_9(E_2^6) - C (ln 3 - ln 2)|
    double decomposition_error = 0;  // |x(6) - C (ln 6, ln 3, ln 2)|
};

// Gamma0(6), k = 2: rho^+(E_2^t) for t = 2, 3, 6 from L-identities at s = 1, decomposed in {P_1, P_2, P_3}.
inline Gamma06Report gamma06_demo() {
    CosetSpace sp(GroupKind::gamma0, 6, 2);
    Gamma06Report rep;
    rep.C = -zeta(0.0) / cplx(0, 2 * kPi);
    // A_j by bottom row; S T^{-i} S {I, U^2, U} for i <= 2, the last block as ordered by sigma and tau
    const std::pair<i64, i64> rows[12] = {{0, 1}, {1, 5}, {1, 0}, {1, 1}, {1, 4}, {4, 1},
                                          {2, 1}, {1, 3}, {3, 2}, {1, 2}, {2, 3}, {3, 1}};
    for (auto [c, d] : rows) rep.aj_to_label.push_back(sp.lookup(c, d).label);
    auto aj_index = [&](int label) {
        for (int j = 0; j < 12; ++j)
            if (rep.aj_to_label[j] == label) return j;
        throw std::logic_error("gamma06: label not among A_j");
    };
    const int sigma[12] = {3, 4, 1, 2, 7, 10, 5, 12, 11, 6, 9, 8};
    const int tau[12] = {1, 4, 3, 2, 10, 7, 6, 8, 9, 5, 11, 12};
    rep.sigma_matches = rep.tau_matches = true;
    for (int j = 0; j < 12; ++j) {
        if (aj_index(sp.act(rep.aj_to_label[j], Gen::S).label) + 1 != sigma[j]) rep.sigma_matches = false;
        if (aj_index(sp.eps(rep.aj_to_label[j]).label) + 1 != tau[j]) rep.tau_matches = false;
    }
    // P_i supported at the cusps of A_1, A_9, A_6
    CuspSet cs = cusp_classes(sp);
    std::array<PolyVector<Rational>, 3> P;
    const int anchor[3] = {1, 9, 6};
    for (int i = 0; i < 3; ++i) {
        int cusp = cs.cusp_of_label[rep.aj_to_label[anchor[i] - 1]];
        P[i] = coboundary_from_constants(sp, cusp_constant_family(sp, cs, cusp));
    }
    // expected d-patterns (1-based indices)
    const std::vector<std::vector<std::pair<int, int>>> pattern{
        {{1, 1}, {3, -1}}, {{9, 1}, {12, 1}, {11, -1}, {8, -1}}, {{6, 1}, {7, 1}, {11, 1}, {10, -1}, {5, -1}, {9, -1}}};
    rep.basis_matches = true;
    for (int i = 0; i < 3; ++i) {
        std::array<int, 12> expect{};
        for (auto [j, v] : pattern[i]) expect[j - 1] = v;
        for (int j = 0; j < 12; ++j)
            if (!(P[i].coeff(rep.aj_to_label[j], 0) == Rational(expect[j]))) rep.basis_matches = false;
    }
    // L(s, E_2^t | A_j) = zeta(s) zeta(s-1) sum_c c r^{1-s}; e_j = C * (-sum c ln r)
    using Terms = std::vector<std::pair<double, double>>;
    struct Known {
        int j;
        Terms g;
    };
    auto one_minus = [](double t) { return Terms{{1, 1}, {-1, t}}; };
    const std::array<int, 3> ts{2, 3, 6};
    std::array<std::vector<Known>, 3> known{
        std::vector<Known>{{1, one_minus(2)}, {6, one_minus(2)}, {7, one_minus(2)}, {11, one_minus(2)}},
        std::vector<Known>{{1, one_minus(3)}, {9, one_minus(3)}, {12, one_minus(3)}},
        std::vector<Known>{{1, one_minus(6)}, {9, one_minus(1.5)}, {12, Terms{{1, 1}, {-3, 3}, {1, 1.5}, {1, 6}}}}};
    for (int ti = 0; ti < 3; ++ti) {
        std::array<std::optional<cplx>, 12> e{};
        for (auto& kn : known[ti]) {
            double g1 = 0, lim = 0;
            for (auto [c, r] : kn.g) {
                g1 += c;
                lim -= c * std::log(r);
            }
            if (std::abs(g1) > 1e-12) throw std::logic_error("gamma06: L-identity does not vanish at s = 1");
            e[kn.j - 1] = rep.C * lim;
        }
        // d_j = (e_j + e_{tau j}) / 2
        std::vector<std::pair<int, cplx>> dvals;
        for (int j = 0; j < 12; ++j) {
            int tj = tau[j] - 1;
            if (e[j] && e[tj]) {
                rep.d[ti][j] = (*e[j] + *e[tj]) / 2.0;
                dvals.emplace_back(j, rep.d[ti][j]);
            }
        }
        // least squares for x in sum x_i P_i(A_j) = d_j (normal equations, 3x3)
        std::array<std::array<cplx, 4>, 3> M{};
        for (auto& [j, dv] : dvals) {
            double row[3];
            for (int i = 0; i < 3; ++i) row[i] = P[i].coeff(rep.aj_to_label[j], 0).to_double();
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) M[a][b] += row[a] * row[b];
                M[a][3] += row[a] * dv;
            }
        }
        for (int c = 0; c < 3; ++c) {
            int piv = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::abs(M[r][c]) > std::abs(M[piv][c])) piv = r;
            std::swap(M[c], M[piv]);
            if (std::abs(M[c][c]) < 1e-14) throw std::logic_error("gamma06: knowns do not determine the decomposition");
            for (int r = 0; r < 3; ++r) {
                if (r == c) continue;
                cplx f = M[r][c] / M[c][c];
                for (int q = c; q < 4; ++q) M[r][q] -= f * M[c][q];
            }
        }
        for (int i = 0; i < 3; ++i) rep.x[ti][i] = M[i][3] / M[i][i];
        double res = 0;
        for (auto& [j, dv] : dvals) {
            cplx s = 0;
            for (int i = 0; i < 3; ++i) s += rep.x[ti][i] * P[i].coeff(rep.aj_to_label[j], 0).to_double();
            res = std::max(res, std::abs(s - dv));
        }
        rep.fit_residual[ti] = res;
        rep.d1_error = std::max(rep.d1_error, std::abs(rep.d[ti][0] - rep.C * std::log(static_cast<double>(ts[ti]))));
    }
    for (int i = 0; i < 3; ++i) rep.additivity_error = std::max(rep.additivity_error, std::abs(rep.x[2][i] - rep.x[0][i] - rep.x[1][i]));
    rep.d9_error = std::abs(rep.d[2][8] - rep.C * (std::log(3.0) - std::log(2.0)));
    const double lg[3] = {std::log(6.0), std::log(3.0), std::log(2.0)};
    for (int i = 0; i < 3; ++i) rep.decomposition_error = std::max(rep.decomposition_error, std::abs(rep.x[2][i] - rep.C * lg[i]));
    return rep;
}

}  // namespace periodpoly
