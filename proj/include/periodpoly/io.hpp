#pragma once

#include "analytic.hpp"
#include "hecke.hpp"
#include "polyspace.hpp"

#include "json.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace periodpoly {

using json = nlohmann::ordered_json;

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << j.dump(1) << "\n";
}

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) throw FormatError("expected a \"p/q\" string");
    return Rational::parse(j.get<std::string>());
}

inline json complex_to_json(cplx z, double err) { return json{{"re", z.real()}, {"im", z.imag()}, {"err", err}}; }

inline json space_header(const CosetSpace& sp) {
    return json{{"group", to_string(sp.kind())}, {"level", sp.level()}, {"weight", sp.weight()}};
}

inline void check_space_header(const json& j, const CosetSpace& sp) {
    if (j.at("group").get<std::string>() != to_string(sp.kind()) || j.at("level").get<int>() != sp.level() ||
        j.at("weight").get<int>() != sp.weight())
        throw FormatError("polynomial file does not match the requested space");
}

inline CosetSpace space_from_header(const json& j) {
    std::string g = j.at("group").get<std::string>();
    GroupKind kind;
    if (g == to_string(GroupKind::gamma0))
        kind = GroupKind::gamma0;
    else if (g == to_string(GroupKind::gamma1))
        kind = GroupKind::gamma1;
    else
        throw FormatError("unknown group " + g);
    return CosetSpace(kind, j.at("level").get<int>(), j.at("weight").get<int>());
}

inline json to_json(const PolyVector<Rational>& P) {
    const CosetSpace& sp = P.space();
    json j = space_header(sp);
    json vals = json::object();
    for (int l = 0; l < sp.index(); ++l) {
        json a = json::array();
        for (int i = 0; i <= sp.w(); ++i) a.push_back(P.coeff(l, i).str());
        vals[sp.label_string(l)] = a;
    }
    j["values"] = vals;
    return j;
}

inline json to_json(const ExtPolyVector<Rational>& Pt) {
    json j = to_json(Pt.P);
    const CosetSpace& sp = Pt.P.space();
    json cs = json::object();
    for (int l = 0; l < sp.index(); ++l) cs[sp.label_string(l)] = Pt.c[l].str();
    j["constants"] = cs;
    return j;
}

inline PolyVector<Rational> polyvector_from_json(const json& j, const CosetSpace& sp) {
    check_space_header(j, sp);
    PolyVector<Rational> P(sp);
    const json& vals = j.at("values");
    if (static_cast<int>(vals.size()) != sp.index()) throw FormatError("wrong number of cosets");
    for (auto it = vals.begin(); it != vals.end(); ++it) {
        auto l = sp.find_label(it.key());
        if (!l) throw FormatError("unknown coset label " + it.key());
        if (static_cast<int>(it.value().size()) != sp.w() + 1) throw FormatError("wrong polynomial length at " + it.key());
        PolyValue<Rational> v;
        for (auto& x : it.value()) v.push_back(rational_from_json(x));
        P.set(*l, v);
    }
    return P;
}

inline ExtPolyVector<Rational> ext_polyvector_from_json(const json& j, const CosetSpace& sp) {
    ExtPolyVector<Rational> Pt(polyvector_from_json(j, sp));
    if (j.contains("constants")) {
        for (auto it = j["constants"].begin(); it != j["constants"].end(); ++it) {
            auto l = sp.find_label(it.key());
            if (!l) throw FormatError("unknown coset label " + it.key());
            Pt.c[*l] = rational_from_json(it.value());
        }
    }
    return Pt;
}

inline json to_json(const GroupRingElement& x) {
    json terms = json::array();
    for (auto& [m, c] : x.terms()) terms.push_back(json{{"matrix", {m.a, m.b, m.c, m.d}}, {"coeff", c.str()}});
    return json{{"det", x.det()}, {"terms", terms}};
}

inline GroupRingElement group_ring_from_json(const json& j) {
    GroupRingElement x(j.at("det").get<i64>());
    for (auto& t : j.at("terms")) {
        auto m = t.at("matrix");
        if (m.size() != 4) throw FormatError("matrix must have four entries");
        x.add(Mat2{m[0].get<i64>(), m[1].get<i64>(), m[2].get<i64>(), m[3].get<i64>()}, rational_from_json(t.at("coeff")));
    }
    return x;
}

inline json to_json(const NewformData& f) {
    json j{{"level", f.level}, {"weight", f.weight}};
    if (f.character.trivial)
        j["character"] = "trivial";
    else
        j["character"] = json{{"modulus", f.character.modulus}, {"values", f.character.values}};
    if (f.fricke_sign) j["fricke_sign"] = *f.fricke_sign;
    j["constant_term"] = f.q.constant_term().str();
    json a = json::array();
    for (int m = 1; m <= f.q.order(); ++m) a.push_back(f.q[m].str());
    j["coefficients"] = a;
    return j;
}

inline NewformData newform_from_json(const json& j) {
    NewformData f;
    f.level = j.at("level").get<int>();
    f.weight = j.at("weight").get<int>();
    if (f.level < 1 || f.weight < 2) throw FormatError("invalid level or weight");
    if (j.contains("character") && !(j["character"].is_string() && j["character"] == "trivial")) {
        const json& c = j["character"];
        f.character.trivial = false;
        f.character.modulus = c.at("modulus").get<int>();
        f.character.values = c.at("values").get<std::vector<int>>();
        if (static_cast<int>(f.character.values.size()) != f.character.modulus) throw FormatError("character table size mismatch");
        if (f.level % f.character.modulus) throw FormatError("character modulus must divide the level");
    }
    if (j.contains("fricke_sign") && !j["fricke_sign"].is_null()) {
        int e = j["fricke_sign"].get<int>();
        if (e != 1 && e != -1) throw FormatError("fricke_sign must be +1 or -1");
        f.fricke_sign = e;
    }
    std::vector<Rational> a;
    for (auto& x : j.at("coefficients")) a.push_back(rational_from_json(x));
    Rational a0 = j.contains("constant_term") ? rational_from_json(j["constant_term"]) : Rational(0);
    f.q = QSeries(a0, a);
    return f;
}

}  // namespace periodpoly
