#include "acceptance_suite.hpp"
#include "periodpoly/periodpoly.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace periodpoly;

namespace {

enum Exit { ok = 0, verification_failed = 1, usage = 2, format = 3, infeasible = 4, eigen = 5, domain = 6, internal = 7 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpaceOpts {
    std::string group = "gamma0";
    int level = 1;
    int weight = 2;

    CosetSpace make() const {
        if (group != "gamma0" && group != "gamma1") throw UsageError("--group must be gamma0 or gamma1");
        if (level < 1 || weight < 2) throw UsageError("--level must be >= 1 and --weight >= 2");
        return CosetSpace(group == "gamma0" ? GroupKind::gamma0 : GroupKind::gamma1, level, weight);
    }
};

void add_space_opts(CLI::App* c, SpaceOpts& s, bool required = true) {
    c->add_option("--group", s.group, "gamma0 or gamma1")->check(CLI::IsMember({"gamma0", "gamma1"}));
    auto l = c->add_option("--level", s.level, "level N");
    auto w = c->add_option("--weight", s.weight, "weight k");
    if (required) {
        l->required();
        w->required();
    }
}

std::vector<std::pair<int, Rational>> parse_eigs(const std::vector<std::string>& items) {
    std::vector<std::pair<int, Rational>> out;
    for (auto& s : items) {
        auto pos = s.find(':');
        if (pos == std::string::npos) throw UsageError("--eig expects p:lambda, got " + s);
        try {
            out.emplace_back(std::stoi(s.substr(0, pos)), Rational::parse(s.substr(pos + 1)));
        } catch (const std::exception&) {
            throw UsageError("--eig expects p:lambda, got " + s);
        }
    }
    return out;
}

GroupRingElement hecke_element(i64 n, const std::string& method, i64 bound) {
    if (n < 1) throw UsageError("--n must be positive");
    if (method == "merel") return merel_hecke(n);
    return solve_universal_hecke(n, bound > 0 ? bound : n);
}

Subspace<Rational> choose_space(const CosetSpace& sp, const std::string& name) {
    if (name == "W") return build_W(sp);
    if (name == "W+") return eps_split(build_W(sp)).first;
    if (name == "W-") return eps_split(build_W(sp)).second;
    if (name == "C") return build_C(sp);
    if (name == "D") return build_coboundary_and_D(sp).second;
    if (name == "Wext") return build_W_extended(sp);
    throw UsageError("unknown space " + name);
}

SigmaSpec choose_sigma(const CosetSpace& sp, const std::string& kind, i64 n, int d) {
    if (kind == "delta") return SigmaSpec::delta(sp, n);
    if (kind == "delta-vee") return SigmaSpec::delta_vee(sp, n);
    if (kind == "theta") return SigmaSpec::theta(sp, n);
    if (kind == "diamond") return SigmaSpec::diamond_op(sp, d);
    throw UsageError("unknown sigma " + kind);
}

void emit(const json& j, const std::string& out) {
    if (out.empty())
        std::cout << j.dump(1) << "\n";
    else
        write_json_file(out, j);
}

NewformData load_form(const std::string& path, int level, int weight) {
    auto f = newform_from_json(read_json_file(path));
    if (level && f.level != level) throw FormatError("form file level does not match --level");
    if (weight && f.weight != weight) throw FormatError("form file weight does not match --weight");
    return f;
}

std::string fmt_double(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"period polynomials of modular forms on congruence subgroups"};
    app.require_subcommand(1);

    SpaceOpts so;
    std::string out, form, method = "graph", space = "W", sigma = "delta";
    std::vector<std::string> eig_items;
    i64 n = 2, bound = 0;
    int d = 1, terms = 200, s_value = 0, fulllevel = 12;
    double tol = 1e-6;

    auto* dims = app.add_subcommand("dims", "dimensions of W, W+-, C, D, W~ and S");
    add_space_opts(dims, so);

    auto* cusps = app.add_subcommand("cusps", "cusp classes as T-orbits on coset labels");
    add_space_opts(cusps, so);

    auto* helem = app.add_subcommand("hecke-element", "solve and verify a universal Hecke element");
    helem->add_option("--n", n, "determinant")->required();
    helem->add_option("--entry-bound", bound, "matrix entry bound (default n)");
    helem->add_option("--method", method, "graph or merel")->check(CLI::IsMember({"graph", "merel"}));
    helem->add_option("--out", out, "output file");

    auto* hmat = app.add_subcommand("hecke-matrix", "exact matrix and trace of a Hecke action");
    add_space_opts(hmat, so);
    hmat->add_option("--n", n, "determinant")->required();
    hmat->add_option("--space", space, "W, W+, W-, C, D or Wext");
    hmat->add_option("--sigma", sigma, "delta, delta-vee, theta or diamond");
    hmat->add_option("--d", d, "diamond unit");
    hmat->add_option("--method", method, "graph or merel")->check(CLI::IsMember({"graph", "merel"}));
    hmat->add_option("--entry-bound", bound, "matrix entry bound (default n)");

    auto* epoly = app.add_subcommand("eigenpoly", "common eigen-polynomial for given Hecke eigenvalues");
    add_space_opts(epoly, so);
    epoly->add_option("--space", space, "W, W+ or W-");
    epoly->add_option("--eig", eig_items, "eigenvalue p:lambda (repeatable)");
    epoly->add_option("--out", out, "output file");

    auto* lval = app.add_subcommand("lvalue", "completed L-values Lambda(s) at integers 1..k-1");
    lval->add_option("--form", form, "NewformData file")->required();
    lval->add_option("--s", s_value, "single point s (default all critical integers)");
    lval->add_option("--terms", terms, "q-expansion terms");

    auto* pet = app.add_subcommand("petersson", "Petersson norm from periods and the Haberland pairing");
    pet->add_option("--form", form, "NewformData file")->required();
    pet->add_option("--level", so.level, "expected level");
    pet->add_option("--weight", so.weight, "expected weight");
    pet->add_option("--terms", terms, "q-expansion terms");
    pet->add_option("--eig", eig_items, "eigenvalue p:lambda (default from q-expansion)");

    auto* evl = app.add_subcommand("eigenvalue", "Hecke eigenvalue from the eigen-polynomial");
    evl->add_option("--level", so.level, "level N")->required();
    evl->add_option("--weight", so.weight, "weight k")->required();
    evl->add_option("--n", n, "index of the eigenvalue")->required();
    evl->add_option("--eig", eig_items, "eigenvalue p:lambda isolating the form (repeatable)");
    evl->add_option("--space", space, "W+ (default) or W-");
    evl->add_option("--method", method, "graph or merel")->check(CLI::IsMember({"graph", "merel"}));

    auto* ver = app.add_subcommand("verify", "run the acceptance and invariant suite");

    auto* g02 = app.add_subcommand("gamma02-relations", "extra period relations on Gamma0(2)");
    g02->add_option("--form", form, "NewformData file (default: eta product of weight 8)");
    g02->add_option("--terms", terms, "q-expansion terms");
    g02->add_option("--tolerance", tol, "relative residual tolerance");

    auto* g06 = app.add_subcommand("gamma06-demo", "Eisenstein periods on Gamma0(6) and full level");
    g06->add_option("--fulllevel", fulllevel, "weight of the full-level Eisenstein check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (dims->parsed()) {
            CosetSpace sp = so.make();
            std::cerr << "building W for index " << sp.index() << "\n";
            auto W = build_W(sp);
            std::cerr << "splitting W\n";
            auto [Wp, Wm] = eps_split(W);
            std::cerr << "building C and D\n";
            auto [C, D] = build_coboundary_and_D(sp);
            std::cerr << "building W~\n";
            auto Wt = build_W_extended(sp);
            std::cout << "group " << so.group << "\nlevel " << sp.level() << "\nweight " << sp.weight() << "\n";
            std::cout << "index " << sp.index() << "\ndim_W " << W.dim() << "\ndim_W_plus " << Wp.dim() << "\ndim_W_minus "
                      << Wm.dim() << "\ndim_S " << (W.dim() - C.dim()) / 2 << "\ndim_C " << C.dim() << "\ndim_D "
                      << D.dim() << "\ndim_W_ext " << Wt.dim() << "\n";
        } else if (cusps->parsed()) {
            CosetSpace sp = so.make();
            auto cs = cusp_classes(sp);
            std::cout << "cusps " << cs.count() << "\nregular " << cs.regular_count() << "\n";
            for (auto& c : cs.classes) {
                std::cout << sp.label_string(c.representative) << " width " << c.width << (c.regular ? " regular" : " irregular")
                          << " :";
                for (int l : c.labels) std::cout << " " << sp.label_string(l);
                std::cout << "\n";
            }
        } else if (helem->parsed()) {
            auto t = hecke_element(n, method, bound);
            auto v = verify_hecke_property(t, n);
            json j{{"n", n}, {"method", method}, {"verified", v.ok}, {"element", to_json(t)}};
            if (v.ok) j["witness"] = to_json(v.witness);
            emit(j, out);
            if (!v.ok) return verification_failed;
        } else if (hmat->parsed()) {
            CosetSpace sp = so.make();
            auto sub = choose_space(sp, space);
            auto spec = choose_sigma(sp, sigma, n, d);
            auto hm = hecke_matrix(sub, hecke_element(spec.n, method, bound), spec);
            std::cout << "dim " << sub.dim() << "\ntrace " << hm.trace.str() << "\n";
            for (size_t i = 0; i < hm.matrix.rows; ++i) {
                for (size_t j = 0; j < hm.matrix.cols; ++j) std::cout << (j ? " " : "") << hm.matrix(i, j).str();
                std::cout << "\n";
            }
        } else if (epoly->parsed()) {
            CosetSpace sp = so.make();
            if (space != "W" && space != "W+" && space != "W-") throw UsageError("--space must be W, W+ or W-");
            auto sub = choose_space(sp, space);
            std::vector<std::pair<Matrix<Rational>, Rational>> data;
            for (auto& [p, lam] : parse_eigs(eig_items)) {
                std::cerr << "Hecke matrix for p = " << p << "\n";
                data.emplace_back(hecke_matrix(sub, solve_universal_hecke(p, p), SigmaSpec::delta(sp, p)).matrix, lam);
            }
            Parity par = space == "W+" ? Parity::plus : space == "W-" ? Parity::minus : Parity::none;
            emit(to_json(common_eigen_polynomial(sub, data, par)), out);
        } else if (lval->parsed()) {
            auto f = load_form(form, 0, 0);
            if (!f.fricke_sign) f.fricke_sign = determine_fricke_sign(f, terms);
            json vals = json::array();
            for (int s = 1; s < f.weight; ++s) {
                if (s_value && s != s_value) continue;
                auto L = completed_lvalue(f, s, terms);
                json e = complex_to_json(L.value, L.error);
                e["s"] = s;
                vals.push_back(e);
            }
            if (vals.empty()) throw UsageError("--s must lie in 1..k-1");
            std::cout << json{{"fricke_sign", *f.fricke_sign}, {"terms", terms}, {"values", vals}}.dump(1) << "\n";
        } else if (pet->parsed()) {
            auto f = load_form(form, so.level == 1 ? 0 : so.level, so.weight == 2 ? 0 : so.weight);
            if (!f.fricke_sign) f.fricke_sign = determine_fricke_sign(f, terms);
            auto e = form_eigen_periods(f, terms, parse_eigs(eig_items));
            cplx a = petersson_product(e, e, Kappa::plus_minus), b = petersson_product(e, e, Kappa::minus_plus);
            std::cout << "petersson_norm " << fmt_double("%.12e", a.real()) << "\n";
            std::cout << "petersson_kappa_gap " << fmt_double("%.3e", std::abs(a - b)) << "\n";
            std::cout << "omega_plus " << format_complex(e.omega.plus) << "\nomega_minus " << format_complex(e.omega.minus)
                      << "\n";
        } else if (evl->parsed()) {
            so.group = "gamma0";
            CosetSpace sp = so.make();
            if (space == "W") space = "W+";
            if (space != "W+" && space != "W-") throw UsageError("--space must be W+ or W-");
            auto sub = choose_space(sp, space);
            Parity par = space == "W+" ? Parity::plus : Parity::minus;
            std::vector<std::pair<Matrix<Rational>, Rational>> data;
            for (auto& [p, lam] : parse_eigs(eig_items))
                data.emplace_back(hecke_matrix(sub, solve_universal_hecke(p, p), SigmaSpec::delta(sp, p)).matrix, lam);
            auto P = common_eigen_polynomial(sub, data, par);
            auto lam = manin_coefficient(P, hecke_element(n, method, 0), SigmaSpec::delta(sp, n), par);
            std::cout << "lambda_" << n << " " << lam.str() << "\n";
        } else if (ver->parsed()) {
            auto results = acceptance::run_all(std::cerr);
            int failed = 0;
            for (auto& r : results) {
                std::cout << acceptance::line(r) << "\n";
                failed += !r.pass;
            }
            return failed ? verification_failed : ok;
        } else if (g02->parsed()) {
            auto f = form.empty() ? acceptance::level2_k8_form(terms) : load_form(form, 2, 0);
            auto rep = extra_relations_check(f, terms);
            std::cout << "weight " << rep.k << "\nperiod_error " << fmt_double("%.3e", rep.period_error) << "\n"
                      << rep.table();
            for (auto& row : rep.rows)
                if (!(row.rel_residual < tol)) return verification_failed;
        } else if (g06->parsed()) {
            auto g = gamma06_demo();
            std::cout << "C " << format_complex(g.C) << "\n";
            std::cout << "sigma_table " << (g.sigma_matches ? "match" : "mismatch") << "\ntau_table "
                      << (g.tau_matches ? "match" : "mismatch") << "\nbasis " << (g.basis_matches ? "match" : "mismatch")
                      << "\n";
            const int ts[3] = {2, 3, 6};
            for (int t = 0; t < 3; ++t) {
                std::cout << "t " << ts[t] << " coordinates";
                for (int i = 0; i < 3; ++i) std::cout << " " << format_complex(g.x[t][i]);
                std::cout << " fit_residual " << fmt_double("%.3e", g.fit_residual[t]) << "\n";
            }
            std::cout << "d1_error " << fmt_double("%.3e", g.d1_error) << "\nadditivity_error "
                      << fmt_double("%.3e", g.additivity_error) << "\nd9_error " << fmt_double("%.3e", g.d9_error)
                      << "\ndecomposition_error " << fmt_double("%.3e", g.decomposition_error) << "\n";
            auto e = fulllevel_eisenstein_demo(fulllevel);
            std::cout << "fulllevel_weight " << e.k << "\nfulllevel_ext_dim " << e.ext_dim << "\nfulllevel_residual "
                      << fmt_double("%.3e", e.residual) << "\n";
            bool pass = g.sigma_matches && g.tau_matches && g.basis_matches && g.d1_error < 1e-10 &&
                        g.additivity_error < 1e-10 && g.d9_error < 1e-10 && e.residual < 1e-8;
            if (!pass) return verification_failed;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return format;
    } catch (const json::exception& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return format;
    } catch (const InfeasibleHecke& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return infeasible;
    } catch (const EigenError& e) {
        std::cerr << "eigen error: " << e.what() << "\n";
        return eigen;
    } catch (const std::invalid_argument& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return domain;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return domain;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
    return ok;
}
