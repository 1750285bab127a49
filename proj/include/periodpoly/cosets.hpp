#pragma once

#include "cyclotomic.hpp"
#include "mat2.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace periodpoly {

enum class GroupKind { gamma0, gamma1 };

inline std::string to_string(GroupKind g) { return g == GroupKind::gamma0 ? "gamma0" : "gamma1"; }

struct LabelSign {
    int label = -1;
    int sign = 1;
    friend bool operator==(const LabelSign&, const LabelSign&) = default;
};

enum class Gen { S, T, Tinv, U, U2, J };

inline Mat2 gen_matrix(Gen g) {
    switch (g) {
        case Gen::S: return mats::S;
        case Gen::T: return mats::T;
        case Gen::Tinv: return mats::Tinv;
        case Gen::U: return mats::U;
        case Gen::U2: return mats::U2;
        case Gen::J: return mats::J;
    }
    return mats::I;
}

// Right cosets Gamma\SL2(Z) for Gamma = Gamma0(N) or Gamma1(N), projectivized.
class CosetSpace {
public:
    CosetSpace(GroupKind kind, int N, int k) : kind_(kind), N_(N), k_(k) {
        if (N < 1) throw std::invalid_argument("CosetSpace: level must be >= 1");
        if (k < 2) throw std::invalid_argument("CosetSpace: weight must be >= 2");
        minus_one_ = kind == GroupKind::gamma0 || N <= 2;
        lookup_.assign(static_cast<size_t>(N) * N, LabelSign{});
        if (kind == GroupKind::gamma0)
            build_gamma0();
        else
            build_gamma1();
        for (auto [c, d] : labels_) lifts_.push_back(lift_row(c, d));
        for (int g = 0; g < 6; ++g) {
            auto& tab = tables_[g];
            for (int l = 0; l < index(); ++l) tab.push_back(act(l, gen_matrix(static_cast<Gen>(g))));
        }
        for (int l = 0; l < index(); ++l) {
            auto [c, d] = labels_[l];
            eps_.push_back(lookup(-c, d));
        }
        identity_ = lookup(0, 1).label;
    }

    GroupKind kind() const { return kind_; }
    int level() const { return N_; }
    int weight() const { return k_; }
    int w() const { return k_ - 2; }
    int index() const { return static_cast<int>(labels_.size()); }
    bool contains_minus_one() const { return minus_one_; }
    // -1 in Gamma with odd weight forces every space to vanish.
    bool degenerate() const { return minus_one_ && (k_ % 2 != 0); }
    int identity_label() const { return identity_; }

    const std::vector<std::pair<int, int>>& labels() const { return labels_; }
    const Mat2& lift(int label) const { return lifts_[label]; }

    // Label of the coset whose lift has bottom row congruent to (c, d).
    LabelSign lookup(i64 c, i64 d) const {
        LabelSign r = lookup_[static_cast<size_t>(mod(c, N_)) * N_ + mod(d, N_)];
        if (r.label < 0) throw std::domain_error("CosetSpace::lookup: row not primitive mod N");
        return r;
    }
    std::optional<LabelSign> try_lookup(i64 c, i64 d) const {
        LabelSign r = lookup_[static_cast<size_t>(mod(c, N_)) * N_ + mod(d, N_)];
        if (r.label < 0) return std::nullopt;
        return r;
    }

    // Coset of lift(label) * g, with the sign relative to the fixed section.
    LabelSign act(int label, const Mat2& g) const {
        if (g.det() != 1 && g.det() != -1) throw std::invalid_argument("act_coset: |det g| != 1");
        auto [c, d] = labels_[label];
        return lookup(c * g.a + d * g.c, c * g.b + d * g.d);
    }
    LabelSign act(int label, Gen g) const { return tables_[static_cast<int>(g)][label]; }
    const std::vector<LabelSign>& table(Gen g) const { return tables_[static_cast<int>(g)]; }

    // Label of eps * A * eps.
    LabelSign eps(int label) const { return eps_[label]; }
    const std::vector<LabelSign>& eps_table() const { return eps_; }

    std::string label_string(int label) const {
        auto [c, d] = labels_[label];
        if (kind_ == GroupKind::gamma0) return "(" + std::to_string(c) + ":" + std::to_string(d) + ")";
        return "(" + std::to_string(c) + "," + std::to_string(d) + ")";
    }
    std::optional<int> find_label(const std::string& s) const {
        for (int l = 0; l < index(); ++l)
            if (label_string(l) == s) return l;
        return std::nullopt;
    }

    friend bool operator==(const CosetSpace& a, const CosetSpace& b) {
        return a.kind_ == b.kind_ && a.N_ == b.N_ && a.k_ == b.k_;
    }

private:
    void add_label(int c, int d, int sign_class) {
        (void)sign_class;
        labels_.emplace_back(c, d);
    }

    std::pair<int, int> p1_normalize(int c, int d) const {
        int N = N_;
        if (std::gcd(c, N) == 1) {
            i64 u = inv_mod(c, N);
            return {1 % N, static_cast<int>(mod(u * d, N))};
        }
        if (std::gcd(d, N) == 1) {
            i64 u = inv_mod(d, N);
            return {static_cast<int>(mod(u * c, N)), 1 % N};
        }
        std::pair<int, int> best{N, N};
        for (int u = 1; u < N; ++u) {
            if (std::gcd(u, N) != 1) continue;
            std::pair<int, int> cand{static_cast<int>(mod(static_cast<i64>(u) * c, N)),
                                     static_cast<int>(mod(static_cast<i64>(u) * d, N))};
            best = std::min(best, cand);
        }
        return best;
    }

    void build_gamma0() {
        int N = N_;
        std::map<std::pair<int, int>, int> idx;
        auto visit = [&](int c, int d) {
            if (gcd3(c, d, N) != 1) return;
            auto key = p1_normalize(c, d);
            if (idx.count(key)) return;
            idx[key] = static_cast<int>(labels_.size());
            labels_.push_back(key);
        };
        for (int c = 0; c < N; ++c) visit(c, 1 % N);
        for (int c = 0; c < N; ++c)
            for (int d = 0; d < N; ++d) visit(c, d);
        for (int c = 0; c < N; ++c)
            for (int d = 0; d < N; ++d)
                if (gcd3(c, d, N) == 1) lookup_[static_cast<size_t>(c) * N + d] = {idx.at(p1_normalize(c, d)), 1};
        if (N == 1) labels_[0] = {0, 1};
    }

    void build_gamma1() {
        int N = N_;
        std::map<std::pair<int, int>, int> idx;
        for (int c = 0; c < N; ++c)
            for (int d = 0; d < N; ++d) {
                if (gcd3(c, d, N) != 1) continue;
                std::pair<int, int> neg{static_cast<int>(mod(-c, N)), static_cast<int>(mod(-d, N))};
                if (std::pair<int, int>{c, d} <= neg) {
                    idx[{c, d}] = static_cast<int>(labels_.size());
                    labels_.emplace_back(c, d);
                }
            }
        for (int c = 0; c < N; ++c)
            for (int d = 0; d < N; ++d) {
                if (gcd3(c, d, N) != 1) continue;
                std::pair<int, int> neg{static_cast<int>(mod(-c, N)), static_cast<int>(mod(-d, N))};
                if (idx.count({c, d}))
                    lookup_[static_cast<size_t>(c) * N + d] = {idx.at({c, d}), 1};
                else
                    lookup_[static_cast<size_t>(c) * N + d] = {idx.at(neg), minus_one_ ? 1 : -1};
            }
        if (N == 1) labels_[0] = {0, 1};
    }

    // SL2(Z) matrix whose bottom row is congruent to (c, d) mod N.
    Mat2 lift_row(int c, int d) const {
        if (N_ == 1) return mats::I;
        for (i64 s = 0;; ++s) {
            i64 cc = c + s * N_;
            for (i64 t = 0; t <= 4 * N_ + 4; ++t) {
                for (i64 dd : {static_cast<i64>(d) + t * N_, static_cast<i64>(d) - t * N_}) {
                    if (cc == 0 && dd != 1) continue;
                    if (std::gcd(cc, dd) == 1) return complete_bottom_row(cc, dd);
                }
            }
        }
    }

    GroupKind kind_;
    int N_, k_;
    bool minus_one_ = true;
    int identity_ = 0;
    std::vector<std::pair<int, int>> labels_;
    std::vector<Mat2> lifts_;
    std::vector<LabelSign> lookup_;
    std::array<std::vector<LabelSign>, 6> tables_;
    std::vector<LabelSign> eps_;
};

struct Cusp {
    int representative = 0;
    int width = 0;
    bool regular = true;
    std::vector<int> labels;
    std::vector<int> signs;  // sigma_j with lift(labels[j]) = +-lift(rep) T^j in Gamma\SL2
};

struct CuspSet {
    std::vector<Cusp> classes;
    std::vector<int> cusp_of_label;
    std::vector<int> position_in_cusp;

    int count() const { return static_cast<int>(classes.size()); }
    int regular_count() const {
        int r = 0;
        for (auto& c : classes) r += c.regular;
        return r;
    }
};

// Cusps as T-orbits on labels; regular iff the accumulated sign around the orbit is +1.
inline CuspSet cusp_classes(const CosetSpace& sp) {
    CuspSet out;
    int n = sp.index();
    out.cusp_of_label.assign(n, -1);
    out.position_in_cusp.assign(n, -1);
    for (int l = 0; l < n; ++l) {
        if (out.cusp_of_label[l] >= 0) continue;
        Cusp cu;
        cu.representative = l;
        int cur = l, sigma = 1;
        int id = out.count();
        while (true) {
            out.cusp_of_label[cur] = id;
            out.position_in_cusp[cur] = static_cast<int>(cu.labels.size());
            cu.labels.push_back(cur);
            cu.signs.push_back(sigma);
            LabelSign nx = sp.act(cur, Gen::T);
            sigma *= nx.sign;
            cur = nx.label;
            if (cur == l) break;
        }
        cu.width = static_cast<int>(cu.labels.size());
        cu.regular = sp.contains_minus_one() || sigma == 1;
        out.classes.push_back(std::move(cu));
    }
    return out;
}

// Dirichlet character with values in Q(zeta_order).
class Character {
public:
    Character() = default;
    Character(int N, int order, std::vector<std::optional<Cyclotomic>> values)
        : N_(N), order_(order), values_(std::move(values)) {}

    static Character trivial(int N) {
        std::vector<std::optional<Cyclotomic>> v(N);
        for (int a = 0; a < N; ++a)
            if (std::gcd(a, N) == 1) v[a] = Cyclotomic(1);
        if (N == 1) v[0] = Cyclotomic(1);
        return Character(N, 1, std::move(v));
    }

    int modulus() const { return N_; }
    int order() const { return order_; }
    bool is_trivial() const { return order_ == 1; }
    // Zero when gcd(a, N) > 1.
    Cyclotomic operator()(i64 a) const {
        auto& v = values_[mod(a, N_)];
        return v ? *v : Cyclotomic(0);
    }
    int parity() const { return (*this)(-1) == Cyclotomic(1) ? 1 : -1; }
    Character conj() const {
        auto v = values_;
        for (auto& x : v)
            if (x) x = periodpoly::conj(*x);
        return Character(N_, order_, std::move(v));
    }
    std::string str() const {
        std::string s = "chi mod " + std::to_string(N_) + " order " + std::to_string(order_) + ": [";
        bool first = true;
        for (int a = 0; a < N_; ++a) {
            if (!values_[a] || N_ == 1) continue;
            s += (first ? "" : ", ") + std::to_string(a) + "->" + values_[a]->str();
            first = false;
        }
        return s + "]";
    }
    bool multiplicative() const {
        for (int a = 0; a < N_; ++a)
            for (int b = 0; b < N_; ++b)
                if (!((*this)(static_cast<i64>(a) * b) == (*this)(a) * (*this)(b))) return false;
        return true;
    }

private:
    int N_ = 1, order_ = 1;
    std::vector<std::optional<Cyclotomic>> values_;
};

namespace detail {

inline std::vector<std::pair<int, int>> factorize(int n) {
    std::vector<std::pair<int, int>> f;
    for (int p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline int mult_order(i64 a, i64 n) {
    i64 x = mod(a, n);
    int o = 1;
    while (x != 1 % n) x = mod(x * a, n), ++o;
    return o;
}

// Generators (with orders) of (Z/N)^* as a product of cyclic groups.
inline std::vector<std::pair<i64, int>> unit_group_generators(int N) {
    std::vector<std::pair<i64, int>> gens;
    for (auto [p, e] : factorize(N)) {
        i64 q = 1;
        for (int i = 0; i < e; ++i) q *= p;
        i64 rest = N / q;
        auto crt = [&](i64 g) {
            // x = g mod q, x = 1 mod rest
            if (rest == 1) return mod(g, q);
            for (i64 t = 0;; ++t) {
                i64 x = 1 + t * rest;
                if (mod(x - g, q) == 0) return x;
            }
        };
        std::vector<i64> local;
        if (p == 2) {
            if (e >= 2) local.push_back(q - 1);
            if (e >= 3) local.push_back(5);
        } else {
            i64 phi = q / p * (p - 1);
            for (i64 g = 2;; ++g) {
                if (g % p == 0) continue;
                if (mult_order(g, q) == phi) {
                    local.push_back(g);
                    break;
                }
            }
        }
        for (i64 g : local) {
            i64 x = crt(g);
            gens.emplace_back(x, mult_order(x, N));
        }
    }
    return gens;
}

}  // namespace detail

// All Dirichlet characters modulo N, in a fixed deterministic order.
inline std::vector<Character> dirichlet_characters(int N) {
    if (N <= 2) return {Character::trivial(N)};
    auto gens = detail::unit_group_generators(N);
    size_t r = gens.size();
    // discrete logs of every unit w.r.t. the generators
    std::vector<std::vector<int>> dlog(N);
    {
        std::vector<int> e(r, 0);
        while (true) {
            i64 x = 1;
            for (size_t i = 0; i < r; ++i)
                for (int j = 0; j < e[i]; ++j) x = mod(x * gens[i].first, N);
            dlog[x] = e;
            size_t i = 0;
            while (i < r && ++e[i] == gens[i].second) e[i++] = 0;
            if (i == r) break;
        }
    }
    std::vector<Character> out;
    std::vector<int> j(r, 0);
    while (true) {
        int order = 1;
        for (size_t i = 0; i < r; ++i) {
            int oi = gens[i].second / std::gcd(j[i], gens[i].second);
            order = std::lcm(order, oi);
        }
        std::vector<std::optional<Cyclotomic>> vals(N);
        for (int a = 0; a < N; ++a) {
            if (std::gcd(a, N) != 1) continue;
            // exponent of zeta_order
            i64 ex = 0;
            for (size_t i = 0; i < r; ++i) ex += static_cast<i64>(j[i]) * dlog[a][i] * order / gens[i].second;
            vals[a] = Cyclotomic::zeta(order, static_cast<int>(mod(ex, order)));
        }
        out.emplace_back(N, order, std::move(vals));
        size_t i = 0;
        while (i < r && ++j[i] == gens[i].second) j[i++] = 0;
        if (i == r) break;
    }
    return out;
}

}  // namespace periodpoly
