#pragma once

#include "polyspace.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace periodpoly {

// Finite rational combination of integer matrices of determinant n, modulo +-1.
class GroupRingElement {
public:
    GroupRingElement() = default;
    explicit GroupRingElement(i64 n) : n_(n) {}

    i64 det() const { return n_; }
    const std::map<Mat2, Rational>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    void add(const Mat2& m, const Rational& c) {
        if (m.det() != n_)
            throw std::invalid_argument("GroupRingElement: determinant " + std::to_string(m.det()) + " != " +
                                        std::to_string(n_));
        if (c.is_zero()) return;
        Mat2 key = m.canonical();
        auto it = terms_.find(key);
        if (it == terms_.end()) {
            terms_.emplace(key, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    Rational coeff(const Mat2& m) const {
        auto it = terms_.find(m.canonical());
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // g * x and x * g for g in SL2(Z).
    GroupRingElement left(const Mat2& g) const {
        GroupRingElement r(n_ * g.det());
        for (auto& [m, c] : terms_) r.add(g * m, c);
        return r;
    }
    GroupRingElement right(const Mat2& g) const {
        GroupRingElement r(n_ * g.det());
        for (auto& [m, c] : terms_) r.add(m * g, c);
        return r;
    }
    GroupRingElement vee() const {
        GroupRingElement r(n_);
        for (auto& [m, c] : terms_) r.add(m.vee(), c);
        return r;
    }

    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) {
        if (a.empty() && a.n_ != b.n_) a.n_ = b.n_;
        for (auto& [m, c] : b.terms_) a.add(m, c);
        return a;
    }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) {
        if (a.empty() && a.n_ != b.n_) a.n_ = b.n_;
        for (auto& [m, c] : b.terms_) a.add(m, -c);
        return a;
    }
    friend GroupRingElement operator*(const Rational& s, const GroupRingElement& a) {
        GroupRingElement r(a.n_);
        for (auto& [m, c] : a.terms_) r.add(m, s * c);
        return r;
    }
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return a.n_ == b.n_ && a.terms_ == b.terms_;
    }

private:
    i64 n_ = 1;
    std::map<Mat2, Rational> terms_;
};

// sum of (a b; 0 d) with ad = n, 0 <= b < d.
inline GroupRingElement tn_infinity(i64 n) {
    if (n < 1) throw std::invalid_argument("tn_infinity: n must be >= 1");
    GroupRingElement t(n);
    for (i64 d = 1; d <= n; ++d) {
        if (n % d) continue;
        for (i64 b = 0; b < d; ++b) t.add({n / d, b, 0, d}, Rational(1));
    }
    return t;
}

inline GroupRingElement adjoint_vee(const GroupRingElement& x) { return x.vee(); }

// Left <+-T>-orbit of a matrix: canonical representative and position j with M = +-T^j rep.
struct OrbitPos {
    Mat2 rep;
    i64 j = 0;
};

inline OrbitPos orbit_of(const Mat2& m0) {
    Mat2 m = m0.canonical();
    if (m.c != 0) {
        i64 a0 = mod(m.a, m.c);
        i64 j = (m.a - a0) / m.c;
        return {{a0, m.b - j * m.d, m.c, m.d}, j};
    }
    i64 b0 = mod(m.b, m.d);
    i64 j = (m.b - b0) / m.d;
    return {{m.a, b0, 0, m.d}, j};
}

inline Mat2 t_power(i64 j) { return {1, j, 0, 1}; }

struct HeckeVerification {
    bool ok = false;
    GroupRingElement delta;    // T_n^inf (1-S) - (1-S) cand
    GroupRingElement witness;  // Y with (1-T) Y = delta, when ok
    std::optional<Mat2> bad_orbit;
    Rational bad_sum;
};

// Telescoping witness for an element whose orbit sums vanish.
inline GroupRingElement telescoping_witness(const GroupRingElement& delta) {
    std::map<Mat2, std::map<i64, Rational>> orbits;
    for (auto& [m, c] : delta.terms()) {
        auto op = orbit_of(m);
        Mat2 cm = m.canonical();
        // sign of cm relative to T^j rep
        Mat2 tj = t_power(op.j) * op.rep;
        Rational s = (tj == cm) ? c : -c;
        orbits[op.rep][op.j] += s;
    }
    GroupRingElement y(delta.det());
    for (auto& [rep, seq] : orbits) {
        Rational run(0);
        i64 lo = seq.begin()->first, hi = seq.rbegin()->first;
        for (i64 j = lo; j < hi; ++j) {
            auto it = seq.find(j);
            if (it != seq.end()) run += it->second;
            if (!run.is_zero()) y.add(t_power(j) * rep, run);
        }
    }
    return y;
}

inline HeckeVerification verify_hecke_property(const GroupRingElement& cand, i64 n) {
    HeckeVerification out;
    if (cand.det() != n && !cand.empty()) throw std::invalid_argument("verify_hecke_property: determinant mismatch");
    GroupRingElement tinf = tn_infinity(n);
    GroupRingElement cn = cand;
    if (cn.empty()) cn = GroupRingElement(n);
    out.delta = (tinf - tinf.right(mats::S)) - (cn - cn.left(mats::S));
    std::map<Mat2, Rational> sums;
    for (auto& [m, c] : out.delta.terms()) {
        auto op = orbit_of(m);
        Rational s = (t_power(op.j) * op.rep == m.canonical()) ? c : -c;
        sums[op.rep] += s;
    }
    for (auto& [rep, s] : sums)
        if (!s.is_zero()) {
            out.ok = false;
            out.bad_orbit = rep;
            out.bad_sum = s;
            return out;
        }
    out.witness = telescoping_witness(out.delta);
    GroupRingElement check = out.witness - out.witness.left(mats::T);
    out.ok = (check == out.delta) || (check.empty() && out.delta.empty());
    if (!out.ok) throw std::logic_error("verify_hecke_property: witness recheck failed");
    return out;
}

// All canonical matrices of determinant n with entries in [-B, B], in lexicographic order.
inline std::vector<Mat2> bounded_matrices(i64 n, i64 B) {
    std::vector<Mat2> out;
    for (i64 a = -B; a <= B; ++a)
        for (i64 b = -B; b <= B; ++b)
            for (i64 c = -B; c <= B; ++c) {
                // a d - b c = n
                if (a == 0) {
                    if (b * c != -n) continue;
                    for (i64 d = -B; d <= B; ++d) {
                        Mat2 m{a, b, c, d};
                        if (m.canonical() == m) out.push_back(m);
                    }
                } else {
                    i64 num = n + b * c;
                    if (num % a) continue;
                    i64 d = num / a;
                    if (d < -B || d > B) continue;
                    Mat2 m{a, b, c, d};
                    if (m.canonical() == m) out.push_back(m);
                }
            }
    return out;
}

struct InfeasibleHecke : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solves for T~_n on the orbit graph: each unknown x_M is an edge orb(M) -> orb(SM).
inline GroupRingElement solve_universal_hecke(i64 n, i64 entry_bound) {
    if (n < 1) throw std::invalid_argument("solve_universal_hecke: n must be >= 1");
    if (entry_bound < n) throw std::invalid_argument("solve_universal_hecke: entry_bound must be >= n");
    if (n == 1) {
        GroupRingElement id(1);
        id.add(mats::I, Rational(1));
        return id;
    }
    std::map<Mat2, int> node;
    std::vector<Mat2> reps;
    auto node_of = [&](const Mat2& m, Rational& sgn) {
        auto op = orbit_of(m);
        sgn = (t_power(op.j) * op.rep == m.canonical()) ? Rational(1) : Rational(-1);
        auto it = node.find(op.rep);
        if (it != node.end()) return it->second;
        int id = static_cast<int>(reps.size());
        node.emplace(op.rep, id);
        reps.push_back(op.rep);
        return id;
    };
    // demand: orbit sums of T^inf - T^inf S
    GroupRingElement tinf = tn_infinity(n);
    GroupRingElement target = tinf - tinf.right(mats::S);
    std::map<int, Rational> demand;
    for (auto& [m, c] : target.terms()) {
        Rational s;
        int id = node_of(m, s);
        demand[id] += s * c;
    }
    // (1-S) x_M M contributes +x at orb(M) (sign s1) and -x at orb(SM) (sign s2).
    struct Edge {
        Mat2 m;
        int u, v;
        Rational su, sv;
    };
    std::vector<Edge> edges;
    for (auto& m : bounded_matrices(n, entry_bound)) {
        Rational su, sv;
        int u = node_of(m, su);
        int v = node_of(mats::S * m, sv);
        if (u == v) continue;
        edges.push_back({m, u, v, su, sv});
    }
    size_t V = reps.size();
    std::vector<std::vector<int>> adj(V);
    for (size_t e = 0; e < edges.size(); ++e) {
        adj[edges[e].u].push_back(static_cast<int>(e));
        adj[edges[e].v].push_back(static_cast<int>(e));
    }
    // need[v]: remaining amount that edges must contribute at v so that contributions equal demand
    std::vector<Rational> need(V, Rational(0));
    for (auto& [id, d] : demand) need[id] = d;
    std::vector<int> parent_edge(V, -1), order;
    std::vector<char> seen(V, 0);
    GroupRingElement sol(n);
    for (auto& [root, d] : demand) {
        if (seen[root]) continue;
        std::deque<int> q{root};
        seen[root] = 1;
        std::vector<int> comp;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            comp.push_back(x);
            for (int e : adj[x]) {
                int y = edges[e].u == x ? edges[e].v : edges[e].u;
                if (seen[y]) continue;
                seen[y] = 1;
                parent_edge[y] = e;
                q.push_back(y);
            }
        }
        for (size_t i = comp.size(); i-- > 1;) {
            int x = comp[i];
            if (need[x].is_zero()) continue;
            const Edge& e = edges[parent_edge[x]];
            bool at_u = e.u == x;
            Rational coef_here = at_u ? e.su : -e.sv;
            Rational coef_other = at_u ? -e.sv : e.su;
            Rational val = need[x] / coef_here;
            sol.add(e.m, val);
            int other = at_u ? e.v : e.u;
            need[other] -= val * coef_other;
            need[x] = Rational(0);
        }
        if (!need[root].is_zero())
            throw InfeasibleHecke("solve_universal_hecke: infeasible for n=" + std::to_string(n) +
                                  " with entry_bound=" + std::to_string(entry_bound) +
                                  "; retry with a larger entry_bound");
    }
    auto ver = verify_hecke_property(sol, n);
    if (!ver.ok) throw std::logic_error("solve_universal_hecke: solution failed verification");
    return sol;
}

// Merel's set {(a b; c d): ad - bc = n, a > b >= 0, d > c >= 0}, adjoined.
inline GroupRingElement merel_hecke(i64 n) {
    GroupRingElement t(n);
    for (i64 a = 1; a <= n; ++a)
        for (i64 b = 0; b < a; ++b)
            for (i64 c = 0; c <= n; ++c) {
                i64 num = n + b * c;
                if (num % a) continue;
                i64 d = num / a;
                if (d > c) t.add(Mat2{a, b, c, d}.vee(), Rational(1));
            }
    return t;
}

enum class MembershipResult { verified_within_bound, inconclusive };

inline std::string to_string(MembershipResult r) {
    return r == MembershipResult::verified_within_bound ? "verified within bound" : "inconclusive";
}

// Bounded search for T(T - T^{-1}) + (T^{-1} - T)T^vee in (1+S)R + (1+U+U^2)R + R(1+S) + R(1+U+U^2),
// with the four cofactors supported on matrices with entries in [-B, B]. Never a refutation.
inline MembershipResult adjointness_membership(const GroupRingElement& t, i64 B) {
    i64 n = t.det();
    GroupRingElement x = t.right(mats::T) - t.right(mats::Tinv) + t.vee().left(mats::Tinv) - t.vee().left(mats::T);
    if (x.empty()) return MembershipResult::verified_within_bound;
    std::vector<GroupRingElement> gens;
    for (const Mat2& m : bounded_matrices(n, B)) {
        GroupRingElement e(n);
        e.add(m, Rational(1));
        gens.push_back(e + e.left(mats::S));
        gens.push_back(e + e.left(mats::U) + e.left(mats::U2));
        gens.push_back(e + e.right(mats::S));
        gens.push_back(e + e.right(mats::U) + e.right(mats::U2));
    }
    std::map<Mat2, size_t> index;
    auto col = [&](const Mat2& m) { return index.emplace(m, index.size()).first->second; };
    auto to_row = [&](const GroupRingElement& g) {
        SparseRow<Rational> r;
        for (auto& [m, c] : g.terms()) r.emplace_back(col(m), c);
        std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return r;
    };
    std::vector<SparseRow<Rational>> rows;
    for (auto& g : gens) rows.push_back(to_row(g));
    SparseRow<Rational> target = to_row(x);
    RowEchelon<Rational> e(index.size());
    for (auto& r : rows) e.insert(r);
    return e.residual(target).empty() ? MembershipResult::verified_within_bound : MembershipResult::inconclusive;
}

enum class SigmaKind { Delta, DeltaVee, Theta, Diamond };

struct SigmaSpec {
    SigmaKind kind = SigmaKind::Delta;
    GroupKind group = GroupKind::gamma0;
    int N = 1;
    i64 n = 1;
    int diamond = 1;
    Mat2 wn;  // Theta only

    static SigmaSpec delta(const CosetSpace& sp, i64 n) {
        SigmaSpec s;
        s.kind = SigmaKind::Delta;
        s.group = sp.kind();
        s.N = sp.level();
        s.n = n;
        return s;
    }
    static SigmaSpec delta_vee(const CosetSpace& sp, i64 n) {
        if (std::gcd<i64, i64>(n, sp.level()) != 1)
            throw std::invalid_argument("SigmaSpec: DeltaVee requires gcd(n, N) = 1");
        SigmaSpec s = delta(sp, n);
        s.kind = SigmaKind::DeltaVee;
        return s;
    }
    static SigmaSpec diamond_op(const CosetSpace& sp, int d) {
        if (std::gcd(d, sp.level()) != 1) throw std::invalid_argument("SigmaSpec: diamond needs a unit");
        SigmaSpec s = delta(sp, 1);
        s.kind = SigmaKind::Diamond;
        s.diamond = static_cast<int>(mod(d, sp.level()));
        return s;
    }
    // w_n = (n x, y; N z, n t) with N = n n', gcd(n, n') = 1.
    static SigmaSpec theta(const CosetSpace& sp, i64 n) {
        int N = sp.level();
        if (N % n || std::gcd<i64, i64>(n, N / n) != 1) throw std::invalid_argument("SigmaSpec: Theta requires n || N");
        i64 np = N / n;
        SigmaSpec s = delta(sp, n);
        s.kind = SigmaKind::Theta;
        // y = 1, t = 1: n x - n' z = 1; for Gamma1 also n x = 1 mod n' holds automatically.
        auto [g, x, z] = ext_gcd(n, -np);
        if (g != 1) throw std::logic_error("SigmaSpec: Theta gcd failure");
        s.wn = {n * x, 1, N * z, n};
        if (s.wn.det() != n) throw std::logic_error("SigmaSpec: w_n has wrong determinant");
        return s;
    }

    // Congruence membership of m in Sigma_n.
    bool contains(const Mat2& m) const {
        if (m.det() != n) return false;
        auto unit = [&](i64 x) { return std::gcd<i64, i64>(mod(x, N), N) == 1; };
        bool g1 = group == GroupKind::gamma1 && N > 2;
        switch (kind) {
            case SigmaKind::Delta:
                return mod(m.c, N) == 0 && (g1 ? mod(m.a, N) == 1 % N : unit(m.a));
            case SigmaKind::DeltaVee:
                return mod(m.c, N) == 0 && (g1 ? mod(m.d, N) == 1 % N : unit(m.d));
            case SigmaKind::Theta: {
                i64 np = N / n;
                if (mod(m.a, n) || mod(m.c, N) || mod(m.d, n)) return false;
                if (!g1) return true;
                return mod(m.a, np) == 1 % np && mod(m.b, n) == 1 % n;
            }
            case SigmaKind::Diamond:
                return mod(m.c, N) == 0 && (g1 ? mod(m.d, N) == diamond : true);
        }
        return false;
    }
};

// Coset of A_M with M A^{-1} = A_M^{-1} M_A, M_A in Sigma; nullopt if M A^{-1} is not in SL2 Sigma.
inline std::optional<LabelSign> resolve_sigma_coset(const CosetSpace& sp, int label, const Mat2& M,
                                                    const SigmaSpec& spec) {
    if (spec.N != sp.level() || spec.group != sp.kind()) throw std::invalid_argument("resolve_sigma_coset: level mismatch");
    if (M.det() != spec.n) throw std::invalid_argument("resolve_sigma_coset: det M != n");
    int N = sp.level();
    const Mat2& A = sp.lift(label);
    if (spec.kind == SigmaKind::Delta) {
        Mat2 r = A * M.vee();
        if (gcd3(r.c, r.d, N) != 1) return std::nullopt;
        return sp.lookup(r.c, r.d);
    }
    if (spec.kind == SigmaKind::Theta) {
        Mat2 r = A * M.vee();
        i64 n = spec.n, np = N / n;
        if (mod(r.c, n) || mod(r.d, n)) return std::nullopt;
        // c' = -a, d' = -b mod n; c' = c/n, d' = d/n mod n'
        auto crt = [&](i64 x_n, i64 x_np) {
            for (i64 t = 0; t < N; ++t)
                if (mod(t - x_n, n) == 0 && mod(t - x_np, np) == 0) return t;
            throw std::logic_error("resolve_sigma_coset: CRT failure");
        };
        i64 cp = crt(-r.a, r.c / n), dp = crt(-r.b, r.d / n);
        // recover the exact sign by testing membership of A_M M A^{-1}
        auto ls = sp.try_lookup(cp, dp);
        if (!ls) return std::nullopt;
        Mat2 B = sp.lift(ls->label);
        Mat2 prod = B * M * A.inverse();
        if (spec.contains(prod)) return LabelSign{ls->label, 1};
        if (spec.contains(-prod)) return LabelSign{ls->label, -1};
        throw std::logic_error("resolve_sigma_coset: Theta congruence resolution failed");
    }
    // generic search over labels
    Mat2 MAi = M * A.inverse();
    for (int l = 0; l < sp.index(); ++l) {
        Mat2 prod = sp.lift(l) * MAi;
        if (spec.contains(prod)) return LabelSign{l, 1};
        if (spec.contains(-prod)) return LabelSign{l, -1};
    }
    return std::nullopt;
}

// Generic-search resolution for any spec kind (used to cross-check the congruence formulas).
inline std::optional<LabelSign> resolve_sigma_coset_search(const CosetSpace& sp, int label, const Mat2& M,
                                                           const SigmaSpec& spec) {
    Mat2 MAi = M * sp.lift(label).inverse();
    for (int l = 0; l < sp.index(); ++l) {
        Mat2 prod = sp.lift(l) * MAi;
        if (spec.contains(prod)) return LabelSign{l, 1};
        if (spec.contains(-prod)) return LabelSign{l, -1};
    }
    return std::nullopt;
}

namespace detail {

struct ResolvedTerm {
    int src;
    int sign;
    const Matrix<Rational>* slash;
    Rational coeff;
    Mat2 m;
};

inline std::vector<std::vector<ResolvedTerm>> resolve_all(const CosetSpace& sp, const GroupRingElement& t,
                                                          const SigmaSpec& spec) {
    if (t.det() != spec.n) throw std::invalid_argument("hecke_action: det of element != spec.n");
    std::vector<std::vector<ResolvedTerm>> out(sp.index());
    for (int l = 0; l < sp.index(); ++l)
        for (auto& [m, c] : t.terms()) {
            auto r = resolve_sigma_coset(sp, l, m, spec);
            if (!r) continue;
            out[l].push_back({r->label, sign_pow(r->sign, sp.w()), &slash_matrix(m, sp.w()), c, m});
        }
    return out;
}

}  // namespace detail

// (P|t)(A) = sum alpha(M) P(A_M)|M.
template <class F>
PolyVector<F> hecke_action(const PolyVector<F>& P, const GroupRingElement& t, const SigmaSpec& spec) {
    const CosetSpace& sp = P.space();
    auto terms = detail::resolve_all(sp, t, spec);
    PolyVector<F> out(sp);
    for (int l = 0; l < sp.index(); ++l) {
        PolyValue<F> acc(P.w() + 1, F(0));
        for (auto& term : terms[l]) {
            F s = from_rational<F>(term.sign < 0 ? -term.coeff : term.coeff);
            acc = poly_add(acc, poly_scale(apply_slash(*term.slash, P.at(term.src)), s));
        }
        out.set(l, acc);
    }
    return out;
}

// Extended action in the rational-function model; nonzero poles must cancel.
inline ExtPolyVector<Rational> hecke_action(const ExtPolyVector<Rational>& Pt, const GroupRingElement& t,
                                            const SigmaSpec& spec) {
    const CosetSpace& sp = Pt.space();
    int w = sp.w();
    auto terms = detail::resolve_all(sp, t, spec);
    std::vector<std::vector<Rational>> full(sp.index());
    for (int l = 0; l < sp.index(); ++l) full[l] = Pt.full_value(l);
    PolyVector<Rational> P(sp);
    std::vector<Rational> c(sp.index()), tails(sp.index());
    for (int l = 0; l < sp.index(); ++l) {
        PartialFraction acc;
        acc.poly.assign(w + 2, Rational(0));
        for (auto& term : terms[l]) {
            Rational s = term.sign < 0 ? -term.coeff : term.coeff;
            const auto& v = full[term.src];
            for (int i = -1; i <= w + 1; ++i) {
                const Rational& a = v[i + 1];
                if (a.is_zero()) continue;
                acc.add(slash_monomial_pf(i, term.m, w), s * a);
            }
        }
        Rational xm1(0);
        for (auto& [x0, r] : acc.residues) {
            if (!x0.is_zero()) throw std::domain_error("hecke_action: unresolvable extended value (pole at " + x0.str() + ")");
            xm1 = r;
        }
        for (size_t j = w + 2; j < acc.poly.size(); ++j)
            if (!acc.poly[j].is_zero()) throw std::domain_error("hecke_action: extended value has degree > w+1");
        for (int i = 0; i <= w; ++i) P.coeff(l, i) = acc.poly[i];
        c[l] = acc.poly[w + 1];
        tails[l] = xm1;
    }
    ExtPolyVector<Rational> out(P, c);
    for (int l = 0; l < sp.index(); ++l)
        if (!(out.full_value(l)[0] == tails[l]))
            throw std::domain_error("hecke_action: X^{-1} tail inconsistent with image cusp constants");
    return out;
}

struct HeckeMatrix {
    Matrix<Rational> matrix;
    Rational trace;
};

struct UnstableSubspace : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Matrix of the action in the basis of sub (columns are images).
inline HeckeMatrix hecke_matrix(const Subspace<Rational>& sub, const GroupRingElement& t, const SigmaSpec& spec) {
    size_t d = sub.dim();
    HeckeMatrix hm{Matrix<Rational>(d, d), Rational(0)};
    for (size_t j = 0; j < d; ++j) {
        std::vector<Rational> img;
        if (sub.extended())
            img = hecke_action(sub.ext_vector(j), t, spec).flat();
        else
            img = hecke_action(sub.vector(j), t, spec).flat();
        auto x = sub.coordinates(img);
        if (!x) throw UnstableSubspace("hecke_matrix: image of basis vector " + std::to_string(j) + " leaves the subspace");
        for (size_t i = 0; i < d; ++i) hm.matrix(i, j) = (*x)[i];
    }
    hm.trace = hm.matrix.trace();
    return hm;
}

struct EigenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Parity { plus, minus, none };

// Index of the coordinate used for normalization: (I, X^0) for plus, (I, X^1) for minus.
inline size_t designated_coordinate(const CosetSpace& sp, Parity par) {
    size_t base = static_cast<size_t>(sp.identity_label()) * (sp.w() + 1);
    if (par == Parity::minus && sp.w() >= 1) return base + 1;
    return base;
}

// Generator of the intersection of eigenspaces, scaled so the designated coordinate is 1.
inline PolyVector<Rational> common_eigen_polynomial(const Subspace<Rational>& sub,
                                                    const std::vector<std::pair<Matrix<Rational>, Rational>>& data,
                                                    Parity par) {
    size_t d = sub.dim();
    if (d == 0) throw EigenError("common_eigen_polynomial: subspace is zero");
    RowEchelon<Rational> e(d);
    for (auto& [m, lam] : data) {
        for (size_t i = 0; i < d; ++i) {
            std::vector<Rational> row(d);
            for (size_t j = 0; j < d; ++j) row[j] = m(i, j) - (i == j ? lam : Rational(0));
            e.insert_dense(row);
        }
    }
    auto ker = e.kernel();
    if (ker.empty()) throw EigenError("common_eigen_polynomial: empty intersection (eigenvalues inconsistent)");
    if (ker.size() > 1)
        throw EigenError("common_eigen_polynomial: intersection has dimension " + std::to_string(ker.size()) +
                         "; supply eigenvalues for more primes");
    std::vector<Rational> v = sub.combine(ker[0]);
    size_t idx = designated_coordinate(sub.space(), par);
    if (par == Parity::none || v[idx].is_zero()) {
        idx = v.size();
        for (size_t i = 0; i < v.size(); ++i)
            if (!v[i].is_zero()) {
                idx = i;
                break;
            }
    }
    Rational s = Rational(1) / v[idx];
    for (auto& x : v) x *= s;
    return PolyVector<Rational>(sub.space(), v);
}

// Hecke eigenvalue from the designated coordinate of P|t at the identity coset.
inline Rational manin_coefficient(const PolyVector<Rational>& P, const GroupRingElement& t, const SigmaSpec& spec,
                                  Parity par = Parity::plus) {
    const CosetSpace& sp = P.space();
    int w = sp.w();
    int I = sp.identity_label();
    int j = (par == Parity::minus && w >= 1) ? 1 : 0;
    if (P.coeff(I, j).is_zero()) {
        auto img = hecke_action(P, t, spec);
        for (size_t i = 0; i < P.size(); ++i)
            if (!P.flat()[i].is_zero()) return img.flat()[i] / P.flat()[i];
        throw std::domain_error("manin_coefficient: zero polynomial");
    }
    Rational acc(0);
    for (auto& [m, c] : t.terms()) {
        auto r = resolve_sigma_coset(sp, I, m, spec);
        if (!r) continue;
        auto v = P.at(*r);
        const auto& sm = slash_matrix(m, w);
        Rational s(0);
        for (int i = 0; i <= w; ++i)
            if (!v[i].is_zero()) s += sm(j, i) * v[i];
        acc += c * s;
    }
    return acc / P.coeff(I, j);
}

}  // namespace periodpoly
