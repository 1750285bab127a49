#pragma once

#include "cosets.hpp"
#include "matrix.hpp"
#include "poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace periodpoly {

inline int sign_pow(int s, int w) { return (s < 0 && (w % 2)) ? -1 : 1; }

// One polynomial of degree <= w per coset label, stored flat as label*(w+1)+i.
template <class F>
class PolyVector {
public:
    PolyVector() = default;
    explicit PolyVector(const CosetSpace& sp) : sp_(&sp), w_(sp.w()), c_(sp.index() * (sp.w() + 1), F(0)) {}
    PolyVector(const CosetSpace& sp, std::vector<F> flat) : sp_(&sp), w_(sp.w()), c_(std::move(flat)) {
        if (c_.size() != static_cast<size_t>(sp.index() * (w_ + 1)))
            throw std::invalid_argument("PolyVector: flat size mismatch");
    }

    const CosetSpace& space() const { return *sp_; }
    int w() const { return w_; }
    size_t size() const { return c_.size(); }
    const std::vector<F>& flat() const { return c_; }
    std::vector<F>& flat() { return c_; }

    F& coeff(int label, int i) { return c_[static_cast<size_t>(label) * (w_ + 1) + i]; }
    const F& coeff(int label, int i) const { return c_[static_cast<size_t>(label) * (w_ + 1) + i]; }

    PolyValue<F> at(int label) const {
        auto b = c_.begin() + static_cast<long>(label) * (w_ + 1);
        return PolyValue<F>(b, b + w_ + 1);
    }
    // Value at a signed label: P(-A) = (-1)^w P(A).
    PolyValue<F> at(LabelSign ls) const {
        PolyValue<F> v = at(ls.label);
        if (sign_pow(ls.sign, w_) < 0)
            for (auto& x : v) x = -x;
        return v;
    }
    void set(int label, const PolyValue<F>& v) {
        for (int i = 0; i <= w_; ++i) coeff(label, i) = v[i];
    }

    bool is_zero() const {
        for (auto& x : c_)
            if (!periodpoly::is_zero(x)) return false;
        return true;
    }

    friend PolyVector operator+(PolyVector a, const PolyVector& b) {
        a.check(b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
        return a;
    }
    friend PolyVector operator-(PolyVector a, const PolyVector& b) {
        a.check(b);
        for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
        return a;
    }
    friend PolyVector operator*(const F& s, PolyVector a) {
        for (auto& x : a.c_) x *= s;
        return a;
    }
    friend bool operator==(const PolyVector& a, const PolyVector& b) {
        return *a.sp_ == *b.sp_ && a.c_ == b.c_;
    }

    void check(const PolyVector& o) const {
        if (!sp_ || !o.sp_ || !(*sp_ == *o.sp_) || c_.size() != o.c_.size())
            throw std::invalid_argument("PolyVector: mismatched coset spaces");
    }

private:
    const CosetSpace* sp_ = nullptr;
    int w_ = 0;
    std::vector<F> c_;
};

// A PolyVector P plus cusp constants c_A; represents P + P0|(1-S) with P0(A) = c_A X^{w+1}.
template <class F>
struct ExtPolyVector {
    PolyVector<F> P;
    std::vector<F> c;

    ExtPolyVector() = default;
    explicit ExtPolyVector(const CosetSpace& sp) : P(sp), c(sp.index(), F(0)) {}
    ExtPolyVector(PolyVector<F> p) : P(std::move(p)), c(P.space().index(), F(0)) {}
    ExtPolyVector(PolyVector<F> p, std::vector<F> cs) : P(std::move(p)), c(std::move(cs)) {
        if (c.size() != static_cast<size_t>(P.space().index()))
            throw std::invalid_argument("ExtPolyVector: constant count mismatch");
    }
    // Flat layout: all P coordinates, then the constants.
    ExtPolyVector(const CosetSpace& sp, const std::vector<F>& flat) {
        size_t n = static_cast<size_t>(sp.index()) * (sp.w() + 1);
        if (flat.size() != n + sp.index()) throw std::invalid_argument("ExtPolyVector: flat size mismatch");
        P = PolyVector<F>(sp, std::vector<F>(flat.begin(), flat.begin() + static_cast<long>(n)));
        c.assign(flat.begin() + static_cast<long>(n), flat.end());
    }

    const CosetSpace& space() const { return P.space(); }
    int w() const { return P.w(); }
    std::vector<F> flat() const {
        std::vector<F> v = P.flat();
        v.insert(v.end(), c.begin(), c.end());
        return v;
    }
    F c_at(LabelSign ls) const { return sign_pow(ls.sign, w()) < 0 ? -c[ls.label] : c[ls.label]; }

    // Coefficients of X^{-1}, X^0, ..., X^{w+1} at a label.
    std::vector<F> full_value(int label) const {
        const CosetSpace& sp = space();
        int w = this->w();
        std::vector<F> v;
        F tail = c_at(sp.act(label, mats::S.inverse()));
        v.push_back(w % 2 ? -tail : tail);
        auto p = P.at(label);
        v.insert(v.end(), p.begin(), p.end());
        v.push_back(c[label]);
        return v;
    }

    friend bool operator==(const ExtPolyVector& a, const ExtPolyVector& b) { return a.P == b.P && a.c == b.c; }
};

// P|g(A) = P(A g^{-1})|g for g in SL2(Z).
template <class F>
PolyVector<F> slash(const PolyVector<F>& P, const Mat2& g) {
    const CosetSpace& sp = P.space();
    PolyVector<F> out(sp);
    Mat2 gi = g.inverse();
    const auto& m = slash_matrix(g, P.w());
    for (int l = 0; l < sp.index(); ++l) out.set(l, apply_slash(m, P.at(sp.act(l, gi))));
    return out;
}

template <class F>
PolyVector<F> slash_sum(const PolyVector<F>& P, const std::vector<std::pair<int, Mat2>>& terms) {
    PolyVector<F> out(P.space());
    for (auto& [s, g] : terms) out = out + F(s) * slash(P, g);
    return out;
}

// P|eps(A) = P(eps A eps)(-X).
template <class F>
PolyVector<F> eps_act(const PolyVector<F>& P) {
    const CosetSpace& sp = P.space();
    PolyVector<F> out(sp);
    for (int l = 0; l < sp.index(); ++l) {
        auto v = P.at(sp.eps(l));
        for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
        out.set(l, v);
    }
    return out;
}

template <class F>
ExtPolyVector<F> eps_act(const ExtPolyVector<F>& Pt) {
    const CosetSpace& sp = Pt.space();
    std::vector<F> c(sp.index());
    for (int l = 0; l < sp.index(); ++l) {
        F x = Pt.c_at(sp.eps(l));
        c[l] = (Pt.w() + 1) % 2 ? -x : x;
    }
    return ExtPolyVector<F>(eps_act(Pt.P), std::move(c));
}

template <class G, class F, class Fn>
PolyVector<G> map_field(const PolyVector<F>& P, Fn fn) {
    std::vector<G> v;
    v.reserve(P.size());
    for (auto& x : P.flat()) v.push_back(fn(x));
    return PolyVector<G>(P.space(), std::move(v));
}

// Span of vectors in a fixed ambient coordinate space, kept in reduced row echelon form.
template <class F>
class Subspace {
public:
    Subspace() = default;
    Subspace(const CosetSpace& sp, bool extended, RowEchelon<F> e) : sp_(&sp), extended_(extended) {
        e.finalize();
        ambient_ = e.ncols();
        basis_ = e.dense_rows();
        pivots_ = e.pivots();
    }
    static Subspace span(const CosetSpace& sp, bool extended, const std::vector<std::vector<F>>& vecs) {
        RowEchelon<F> e(ambient_dim(sp, extended));
        for (auto& v : vecs) e.insert_dense(v);
        return Subspace(sp, extended, std::move(e));
    }
    static Subspace zero(const CosetSpace& sp, bool extended) {
        return Subspace(sp, extended, RowEchelon<F>(ambient_dim(sp, extended)));
    }
    static size_t ambient_dim(const CosetSpace& sp, bool extended) {
        return static_cast<size_t>(sp.index()) * (sp.w() + 1) + (extended ? sp.index() : 0);
    }

    const CosetSpace& space() const { return *sp_; }
    bool extended() const { return extended_; }
    size_t dim() const { return basis_.size(); }
    size_t ambient() const { return ambient_; }
    const std::vector<std::vector<F>>& basis() const { return basis_; }
    const std::vector<size_t>& pivots() const { return pivots_; }

    PolyVector<F> vector(size_t i) const {
        if (extended_) throw std::logic_error("Subspace::vector on an extended space");
        return PolyVector<F>(*sp_, basis_[i]);
    }
    ExtPolyVector<F> ext_vector(size_t i) const {
        if (extended_) return ExtPolyVector<F>(*sp_, basis_[i]);
        return ExtPolyVector<F>(PolyVector<F>(*sp_, basis_[i]));
    }

    // Coordinates in the basis, or nullopt when v is not in the span.
    std::optional<std::vector<F>> coordinates(const std::vector<F>& v) const {
        if (v.size() != ambient_) throw std::invalid_argument("Subspace::coordinates: size mismatch");
        std::vector<F> x(basis_.size());
        std::vector<F> r = v;
        for (size_t i = 0; i < basis_.size(); ++i) {
            x[i] = v[pivots_[i]];
            if (is_zero(x[i])) continue;
            for (size_t j = 0; j < ambient_; ++j)
                if (!is_zero(basis_[i][j])) r[j] -= x[i] * basis_[i][j];
        }
        for (auto& y : r)
            if (!is_zero(y)) return std::nullopt;
        return x;
    }
    bool contains(const std::vector<F>& v) const { return coordinates(v).has_value(); }
    bool contains(const PolyVector<F>& P) const {
        if (extended_) return contains(ExtPolyVector<F>(P).flat());
        return contains(P.flat());
    }
    bool contains(const ExtPolyVector<F>& P) const { return contains(P.flat()); }

    std::vector<F> combine(const std::vector<F>& coords) const {
        std::vector<F> v(ambient_, F(0));
        for (size_t i = 0; i < basis_.size(); ++i)
            if (!is_zero(coords[i]))
                for (size_t j = 0; j < ambient_; ++j) v[j] += coords[i] * basis_[i][j];
        return v;
    }

    // Basis vectors as columns.
    DenseMatrix basis_matrix() const { return DenseMatrix(Matrix<F>::from_columns(basis_, ambient_)); }

private:
    const CosetSpace* sp_ = nullptr;
    bool extended_ = false;
    size_t ambient_ = 0;
    std::vector<std::vector<F>> basis_;
    std::vector<size_t> pivots_;
};

namespace detail {

// Adds the rows of X^i|g coefficient-wise: row(out j) += s * M(j,i) * var(label', i).
inline void add_slash_terms(std::vector<std::map<size_t, Rational>>& rows, const CosetSpace& sp, int l,
                            const Mat2& g) {
    int w = sp.w();
    LabelSign src = sp.act(l, g.inverse());
    Rational s(sign_pow(src.sign, w));
    const auto& m = slash_matrix(g, w);
    for (int j = 0; j <= w; ++j)
        for (int i = 0; i <= w; ++i)
            if (!m(j, i).is_zero()) rows[j][static_cast<size_t>(src.label) * (w + 1) + i] += s * m(j, i);
}

inline SparseRow<Rational> finish_row(const std::map<size_t, Rational>& r) {
    SparseRow<Rational> out;
    for (auto& [k, v] : r)
        if (!v.is_zero()) out.emplace_back(k, v);
    return out;
}

}  // namespace detail

// W = { P : P|(1+S) = P|(1+U+U^2) = 0 }.
inline Subspace<Rational> build_W(const CosetSpace& sp) {
    if (sp.degenerate()) return Subspace<Rational>::zero(sp, false);
    int w = sp.w();
    RowEchelon<Rational> rel(static_cast<size_t>(sp.index()) * (w + 1));
    for (int l = 0; l < sp.index(); ++l) {
        for (auto gens : {std::vector<Mat2>{mats::I, mats::S}, std::vector<Mat2>{mats::I, mats::U, mats::U2}}) {
            std::vector<std::map<size_t, Rational>> rows(w + 1);
            for (auto& g : gens) detail::add_slash_terms(rows, sp, l, g);
            for (auto& r : rows) rel.insert(detail::finish_row(r));
        }
    }
    return Subspace<Rational>(sp, false, RowEchelon<Rational>::from_rows(rel.ncols(), rel.kernel()));
}

// Constants c'_A = sigma_j^w along the orbit of one cusp, zero elsewhere.
inline std::vector<Rational> cusp_constant_family(const CosetSpace& sp, const CuspSet& cs, int cusp) {
    std::vector<Rational> c(sp.index(), Rational(0));
    const Cusp& cu = cs.classes[cusp];
    for (size_t j = 0; j < cu.labels.size(); ++j) c[cu.labels[j]] = Rational(sign_pow(cu.signs[j], sp.w()));
    return c;
}

// (c_A - c_{AS^{-1}} X^w)_A.
template <class F>
PolyVector<F> coboundary_from_constants(const CosetSpace& sp, const std::vector<F>& c) {
    int w = sp.w();
    PolyVector<F> P(sp);
    for (int l = 0; l < sp.index(); ++l) {
        LabelSign src = sp.act(l, mats::S.inverse());
        F t = sign_pow(src.sign, w) < 0 ? -c[src.label] : c[src.label];
        P.coeff(l, 0) += c[l];
        P.coeff(l, w) -= t;
    }
    return P;
}

inline std::vector<int> constant_cusps(const CosetSpace& sp, const CuspSet& cs) {
    std::vector<int> out;
    if (sp.degenerate()) return out;
    for (int i = 0; i < cs.count(); ++i)
        if (sp.w() % 2 == 0 || cs.classes[i].regular) out.push_back(i);
    return out;
}

// Coboundary space C and the tail space D.
inline std::pair<Subspace<Rational>, Subspace<Rational>> build_coboundary_and_D(const CosetSpace& sp) {
    CuspSet cs = cusp_classes(sp);
    std::vector<std::vector<Rational>> cv, dv;
    for (int i : constant_cusps(sp, cs)) {
        auto c = cusp_constant_family(sp, cs, i);
        cv.push_back(coboundary_from_constants(sp, c).flat());
        dv.push_back(ExtPolyVector<Rational>(PolyVector<Rational>(sp), c).flat());
    }
    return {Subspace<Rational>::span(sp, false, cv), Subspace<Rational>::span(sp, true, dv)};
}

inline Subspace<Rational> build_C(const CosetSpace& sp) { return build_coboundary_and_D(sp).first; }

// Extended space: unknowns a_{-1..w+1} per label, relations cleared by X(X-1).
inline Subspace<Rational> build_W_extended(const CosetSpace& sp) {
    if (sp.degenerate()) return Subspace<Rational>::zero(sp, true);
    int w = sp.w(), n = sp.index(), stride = w + 3;
    RowEchelon<Rational> rel(static_cast<size_t>(n) * stride);
    std::vector<std::vector<std::vector<Rational>>> cleared;  // per generator, per exponent
    const std::vector<Mat2> gens{mats::I, mats::S, mats::U, mats::U2};
    for (auto& g : gens) {
        std::vector<std::vector<Rational>> per;
        for (int i = -1; i <= w + 1; ++i) per.push_back(cleared_slash_monomial(i, g, w));
        cleared.push_back(std::move(per));
    }
    for (int l = 0; l < n; ++l) {
        for (auto group : {std::vector<int>{0, 1}, std::vector<int>{0, 2, 3}}) {
            std::vector<std::map<size_t, Rational>> rows(w + 4);
            for (int gi : group) {
                LabelSign src = sp.act(l, gens[gi].inverse());
                Rational s(sign_pow(src.sign, w));
                for (int i = -1; i <= w + 1; ++i) {
                    const auto& p = cleared[gi][i + 1];
                    for (size_t j = 0; j < p.size(); ++j)
                        if (!p[j].is_zero()) rows[j][static_cast<size_t>(src.label) * stride + (i + 1)] += s * p[j];
                }
            }
            for (auto& r : rows) rel.insert(detail::finish_row(r));
        }
    }
    auto ker = rel.kernel();
    std::vector<std::vector<Rational>> vecs;
    for (auto& v : ker) {
        PolyVector<Rational> P(sp);
        std::vector<Rational> c(n);
        for (int l = 0; l < n; ++l) {
            for (int i = 0; i <= w; ++i) P.coeff(l, i) = v[static_cast<size_t>(l) * stride + 1 + i];
            c[l] = v[static_cast<size_t>(l) * stride + w + 2];
        }
        ExtPolyVector<Rational> Pt(P, c);
        for (int l = 0; l < n; ++l)
            if (!(Pt.full_value(l)[0] == v[static_cast<size_t>(l) * stride]))
                throw std::logic_error("build_W_extended: X^{-1} tail inconsistent with cusp constants");
        vecs.push_back(Pt.flat());
    }
    return Subspace<Rational>::span(sp, true, vecs);
}

// Splits a subspace preserved by eps into its +1 and -1 eigenspaces.
template <class F>
std::pair<Subspace<F>, Subspace<F>> eps_split(const Subspace<F>& sub) {
    const CosetSpace& sp = sub.space();
    std::vector<std::vector<F>> plus, minus;
    for (size_t i = 0; i < sub.dim(); ++i) {
        std::vector<F> v = sub.basis()[i], e;
        if (sub.extended())
            e = eps_act(ExtPolyVector<F>(sp, v)).flat();
        else
            e = eps_act(PolyVector<F>(sp, v)).flat();
        std::vector<F> p(v.size()), m(v.size());
        for (size_t j = 0; j < v.size(); ++j) {
            p[j] = v[j] + e[j];
            m[j] = v[j] - e[j];
        }
        plus.push_back(std::move(p));
        minus.push_back(std::move(m));
    }
    return {Subspace<F>::span(sp, sub.extended(), plus), Subspace<F>::span(sp, sub.extended(), minus)};
}

template <class F>
std::pair<PolyVector<F>, PolyVector<F>> eps_split(const PolyVector<F>& P) {
    PolyVector<F> e = eps_act(P);
    F half = from_rational<F>(Rational(1, 2));
    return {half * (P + e), half * (P - e)};
}

// <<P,Q>> = (1/index) sum_A <P(A), Q(A)>.
template <class F>
F pair_induced(const PolyVector<F>& P, const PolyVector<F>& Q) {
    P.check(Q);
    F s(0);
    for (int l = 0; l < P.space().index(); ++l) s += pair_vw(P.at(l), Q.at(l), P.w());
    return s / from_rational<F>(Rational(P.space().index()));
}

// {P,Q} = <<P|(T - T^{-1}), Q>>.
template <class F>
F pair_braces(const PolyVector<F>& P, const PolyVector<F>& Q) {
    return pair_induced(slash(P, mats::T) - slash(P, mats::Tinv), Q);
}

namespace detail {

// c_A ((X+1)^{w+1} - (X-1)^{w+1}) truncated to degree w, i.e. P0|(T - T^{-1}).
template <class F>
PolyVector<F> tail_t_minus_tinv(const ExtPolyVector<F>& Pt) {
    const CosetSpace& sp = Pt.space();
    int w = Pt.w();
    PolyVector<F> out(sp);
    auto plus = linear_pow(1, 1, w + 1), minus = linear_pow(1, -1, w + 1);
    for (int l = 0; l < sp.index(); ++l) {
        F ct = Pt.c_at(sp.act(l, mats::Tinv));
        F cti = Pt.c_at(sp.act(l, mats::T));
        if (!(ct == cti)) throw std::domain_error("extended vector: cusp constants are not T-invariant");
        for (int i = 0; i <= w; ++i)
            out.coeff(l, i) = ct * from_rational<F>(Rational(plus[i])) - cti * from_rational<F>(Rational(minus[i]));
    }
    return out;
}

}  // namespace detail

// Extended pairing; reduces to the plain one when both tails vanish.
template <class F>
F pair_braces(const ExtPolyVector<F>& Pt, const ExtPolyVector<F>& Qt) {
    const CosetSpace& sp = Pt.space();
    int k = sp.weight();
    F two = from_rational<F>(Rational(2));
    F s = pair_braces(Pt.P, Qt.P);
    s += two * pair_induced(detail::tail_t_minus_tinv(Pt), Qt.P);
    s -= two * pair_induced(Pt.P, detail::tail_t_minus_tinv(Qt));
    if (k % 2) {
        F t(0);
        for (int l = 0; l < sp.index(); ++l) t += Pt.c[l] * Qt.c[l];
        s += from_rational<F>(Rational(6 * (k - 1), static_cast<long long>(k) * sp.index())) * t;
    }
    return s;
}

// Closed form -(6/index) sum c'_A c_A for P = P'|(1-S) in C, with c the duality-normalized tail.
inline Rational duality_closed_form(const CosetSpace& sp, const std::vector<Rational>& cprime,
                                    const std::vector<Rational>& c_stored) {
    int w = sp.w();
    Rational s(0);
    Rational f = Rational(w % 2 ? -(w + 1) : (w + 1));
    for (int l = 0; l < sp.index(); ++l) s += cprime[l] * f * c_stored[l];
    return Rational(-6) / Rational(sp.index()) * s;
}

template <class F>
Matrix<F> gram_braces(const Subspace<F>& sub) {
    size_t d = sub.dim();
    Matrix<F> g(d, d);
    std::vector<ExtPolyVector<F>> v;
    for (size_t i = 0; i < d; ++i) v.push_back(sub.ext_vector(i));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) g(i, j) = pair_braces(v[i], v[j]);
    return g;
}

// Unique decomposition Pt = P + P0|(1-S); requires Pt in the extended space wt.
template <class F>
std::pair<PolyVector<F>, ExtPolyVector<F>> decompose_extended(const Subspace<F>& wt, const ExtPolyVector<F>& Pt) {
    if (!wt.extended() || !wt.contains(Pt)) throw std::invalid_argument("decompose_extended: input is outside W~");
    ExtPolyVector<F> tail(PolyVector<F>(Pt.space()), Pt.c);
    return {Pt.P, tail};
}

// Projector onto the chi-isotypic part: (1/phi(N)) sum_d conj(chi(d)) P(B_d C).
inline PolyVector<Cyclotomic> chi_project(const PolyVector<Cyclotomic>& P, const Character& chi) {
    const CosetSpace& sp = P.space();
    int N = sp.level();
    PolyVector<Cyclotomic> out(sp);
    int phi = 0;
    for (int d = 0; d < N; ++d) {
        if (std::gcd(d, N) != 1 && N > 1) continue;
        ++phi;
        Cyclotomic x = conj(chi(d));
        for (int l = 0; l < sp.index(); ++l) {
            auto [c, dd] = sp.labels()[l];
            auto v = P.at(sp.lookup(static_cast<i64>(d) * c, static_cast<i64>(d) * dd));
            for (int i = 0; i <= P.w(); ++i) out.coeff(l, i) += x * v[i];
        }
    }
    return Cyclotomic(Rational(1, phi)) * out;
}

// chi-component of a subspace of a Gamma1(N) space, over Q(zeta_ord(chi)).
inline Subspace<Cyclotomic> chi_component(const Subspace<Rational>& sub, const Character& chi,
                                          std::string* warning = nullptr) {
    const CosetSpace& sp = sub.space();
    if (sp.kind() != GroupKind::gamma1) throw std::invalid_argument("chi_component: space must be Gamma1(N)");
    if (chi.modulus() != sp.level()) throw std::invalid_argument("chi_component: character modulus != level");
    if (sub.extended()) throw std::invalid_argument("chi_component: extended subspaces are not supported");
    if (chi.parity() != (sp.weight() % 2 ? -1 : 1)) {
        if (warning) *warning = "chi(-1) != (-1)^k: component is zero";
        return Subspace<Cyclotomic>::zero(sp, false);
    }
    std::vector<std::vector<Cyclotomic>> vecs;
    for (size_t i = 0; i < sub.dim(); ++i) {
        auto P = map_field<Cyclotomic>(sub.vector(i), [](const Rational& r) { return Cyclotomic(r); });
        vecs.push_back(chi_project(P, chi).flat());
    }
    return Subspace<Cyclotomic>::span(sp, false, vecs);
}

// True iff the eps-minus part of C for Gamma0(N) vanishes.
inline bool cminus_trivial(int N) {
    CosetSpace sp(GroupKind::gamma0, N, 4);
    return eps_split(build_C(sp)).second.dim() == 0;
}

}  // namespace periodpoly
