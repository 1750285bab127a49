#include "acceptance_suite.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace periodpoly;

namespace {

std::string temp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("periodpoly_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Io, NewformRoundTripIsBitExact) {
    auto path = acceptance::data_path("level5_k4.json");
    auto f = newform_from_json(read_json_file(path));
    EXPECT_EQ(f.level, 5);
    EXPECT_EQ(f.weight, 4);
    EXPECT_EQ(f.fricke_sign, 1);
    auto out = temp_file("level5.json");
    write_json_file(out, to_json(f));
    EXPECT_EQ(slurp(out), slurp(path));
    auto g = newform_from_json(read_json_file(out));
    EXPECT_EQ(g.q, f.q);
    std::remove(out.c_str());
}

TEST(Io, NewformDataMatchesTheEtaProduct) {
    auto f = newform_from_json(read_json_file(acceptance::data_path("level5_k4.json")));
    auto q = eta_product({{1, 4}, {5, 4}}, f.q.order());
    EXPECT_EQ(f.q, q);
}

TEST(Io, CharacterFields) {
    json j{{"level", 5}, {"weight", 3}, {"character", {{"modulus", 5}, {"values", {0, 1, -1, -1, 1}}}},
           {"coefficients", {"1", "0"}}};
    auto f = newform_from_json(j);
    EXPECT_FALSE(f.character.trivial);
    EXPECT_EQ(to_json(f)["character"]["values"], j["character"]["values"]);
    j["character"]["modulus"] = 3;
    EXPECT_THROW(newform_from_json(j), FormatError);
}

TEST(Io, MalformedInputs) {
    auto bad = temp_file("bad.json");
    {
        std::ofstream o(bad);
        o << "{ \"level\": ";
    }
    EXPECT_THROW(read_json_file(bad), FormatError);
    std::remove(bad.c_str());
    EXPECT_THROW(read_json_file(temp_file("does_not_exist.json")), FormatError);
    EXPECT_THROW(newform_from_json(json{{"level", 0}, {"weight", 4}, {"coefficients", {"1"}}}), FormatError);
    EXPECT_THROW(newform_from_json(json{{"level", 5}, {"weight", 4}, {"fricke_sign", 2}, {"coefficients", {"1"}}}),
                 FormatError);
    EXPECT_THROW(rational_from_json(json(1.5)), FormatError);
}

TEST(Io, PolyVectorRoundTrip) {
    CosetSpace sp(GroupKind::gamma0, 5, 4);
    auto W = build_W(sp);
    for (size_t i = 0; i < W.dim(); ++i) {
        auto P = W.vector(i);
        EXPECT_EQ(polyvector_from_json(to_json(P), sp), P);
    }
    CosetSpace other(GroupKind::gamma0, 7, 4);
    EXPECT_THROW(polyvector_from_json(to_json(W.vector(0)), other), FormatError);
    auto j = to_json(W.vector(0));
    j["values"].erase("(0:1)");
    EXPECT_THROW(polyvector_from_json(j, sp), FormatError);
}

TEST(Io, ExtPolyVectorRoundTrip) {
    CosetSpace sp(GroupKind::gamma0, 6, 2);
    auto Wt = build_W_extended(sp);
    for (size_t i = 0; i < Wt.dim(); ++i) {
        auto P = Wt.ext_vector(i);
        EXPECT_EQ(ext_polyvector_from_json(to_json(P), sp), P);
    }
}

TEST(Io, GroupRingElementRoundTrip) {
    for (int n : {2, 5, 12}) {
        auto t = solve_universal_hecke(n, n);
        EXPECT_EQ(group_ring_from_json(to_json(t)), t);
    }
    json bad{{"det", 2}, {"terms", {{{"matrix", {1, 0, 0, 3}}, {"coeff", "1"}}}}};
    EXPECT_THROW(group_ring_from_json(bad), std::invalid_argument);
}

TEST(Io, SpaceHeader) {
    CosetSpace sp(GroupKind::gamma1, 7, 3);
    auto back = space_from_header(space_header(sp));
    EXPECT_EQ(back, sp);
    EXPECT_THROW(space_from_header(json{{"group", "gamma2"}, {"level", 3}, {"weight", 2}}), FormatError);
}
