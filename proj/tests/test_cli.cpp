#include <doctest.h>

#include <map>
#include <set>

#include "gradekit_cli/commands.hpp"
#include "support/generators.hpp"

using namespace gradekit;
using namespace gradekit::cli;

namespace {

std::string text(const AnySpec& s) { return to_json(s).dump(); }

// to_json -> parse -> to_json is the identity on canonical output
void round_trip(const AnySpec& s) {
    std::string once = text(s);
    std::string twice = text(spec_from_json(parse_text(once)));
    CHECK(once == twice);
}

std::vector<AnySpec> sample(std::mt19937& rng) {
    std::vector<AnySpec> out;
    for (int i = 0; i < 6; ++i) {
        out.emplace_back(gen::random_even(rng, 6));
        auto o = gen::random_odd(rng, 6);
        out.emplace_back(o);
        out.emplace_back(gen::g_variant(o));
        out.emplace_back(gen::random_p(rng));
    }
    return out;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("specs round-trip through JSON") {
    std::mt19937 rng(60);
    for (const auto& s : sample(rng)) round_trip(s);
}

TEST_CASE("exponents") {
    CHECK(root_from_json(json::array({0, 1})).is_one());
    CHECK(root_from_json(json::array({1, 2})) == RootOfUnity::minus_one());
    CHECK(root_from_json(json::array({5, 4})) == RootOfUnity(1, 4));
    CHECK(root_from_json(json::array({-1, 4})) == RootOfUnity(3, 4));
    CHECK(to_json(RootOfUnity(3, 4)) == json::array({3, 4}));
    CHECK(to_json(RootOfUnity(6, 8)) == json::array({3, 4}));
    CHECK(to_json(RootOfUnity(0, 1)) == json::array({0, 1}));
    CHECK_THROWS_AS(root_from_json(json::array({1, 0})), ParseError);
    CHECK_THROWS_AS(root_from_json(json("1/2")), ParseError);
    CHECK_THROWS_AS(root_from_json(json(0)), ParseError);
    CHECK_THROWS_AS(root_from_json(json::array({1})), ParseError);
}

TEST_CASE("verify passes on every constructed spec") {
    std::mt19937 rng(61);
    for (const auto& s : sample(rng)) {
        auto r = cmd_verify(text(s));
        CHECK(r.exit_code == 0);
        CHECK(r.out["verdict"] == "pass");
    }
    for (const auto& d : enumerate_even_fine(2, 2)) CHECK(cmd_verify(to_json(*d.even).dump()).exit_code == 0);
    for (const auto& d : enumerate_odd_fine(2)) CHECK(cmd_verify(to_json(*d.odd).dump()).exit_code == 0);
    for (const auto& d : enumerate_P_fine(3)) CHECK(cmd_verify(to_json(*d.p).dump()).exit_code == 0);
}

TEST_CASE("model export matches the component dimensions") {
    std::mt19937 rng(64);
    for (const auto& s : sample(rng)) {
        auto r = cmd_verify(text(s), true);
        REQUIRE(r.exit_code == 0);
        std::map<json, std::size_t> seen, listed;
        for (const auto& c : r.out["components"]) listed[c["degree"]] += c["dim"].get<std::size_t>();
        if (r.out["kind"] == "p") {
            std::size_t total = 0;
            for (const auto& c : r.out["model"]) {
                seen[c["degree"]] += c["basis"].size();
                total += c["basis"].size();
                for (const auto& X : c["basis"]) CHECK_FALSE(X.empty());
            }
            CHECK(total == r.out["dim"].get<std::size_t>());
        } else {
            std::size_t d = r.out["sizes"][0].get<std::size_t>() + r.out["sizes"][1].get<std::size_t>();
            CHECK(r.out["model"].size() == d * d);
            std::set<json> even(r.out["support_even"].begin(), r.out["support_even"].end());
            std::set<json> odd(r.out["support_odd"].begin(), r.out["support_odd"].end());
            for (const auto& b : r.out["model"]) {
                ++seen[b["degree"]];
                CHECK((b["parity"] == 0 ? even : odd).count(b["degree"]) == 1);
            }
        }
        CHECK(seen == listed);
        CHECK_FALSE(cmd_verify(text(s)).out.contains("model"));
    }
}

TEST_CASE("commands are deterministic") {
    std::mt19937 rng(62);
    for (const auto& s : sample(rng)) {
        std::string t = text(s);
        CHECK(cmd_verify(t).out.dump() == cmd_verify(t).out.dump());
        CHECK(cmd_ugroup(t).out.dump() == cmd_ugroup(t).out.dump());
    }
    CHECK(cmd_fine("odd", 2).out.dump() == cmd_fine("odd", 2).out.dump());
}

TEST_CASE("exit codes") {
    CHECK(cmd_verify("{").exit_code == 2);
    CHECK(cmd_verify(R"({"kind": "even"})").exit_code == 2);
    CHECK(cmd_verify(R"({"kind": "lie", "group": {"free": 1, "torsion": []}})").exit_code == 2);
    CHECK(cmd_verify(R"({"kind": "even", "group": {"free": 1, "torsion": []}, "T": [], "q": [],
                         "gamma0": [[0, 1]], "gamma1": []})")
              .exit_code == 2);
    auto bad = cmd_verify(R"({"kind": "even", "group": {"free": 0, "torsion": [2]}, "T": [[1]], "q": [[[0, 1]]],
                              "gamma0": [[0]], "gamma1": []})");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out["verdict"] == "invalid");
    CHECK(cmd_fine("p", 1).exit_code == 1);
    CHECK(cmd_fine("q", 1).exit_code == 2);
    std::string a = R"({"kind": "p", "group": {"free": 1, "torsion": []}, "T": [], "q": [], "gamma": [[0], [0], [0]], "g0": [0]})";
    std::string b = R"({"kind": "p", "group": {"free": 1, "torsion": []}, "T": [], "q": [], "gamma": [[1], [1], [1]], "g0": [3]})";
    auto r = cmd_iso(a, b, "p");
    CHECK(r.exit_code == 1);
    CHECK(r.out["verdict"] == "non-isomorphic");
    CHECK(cmd_iso(a, a, "assoc").exit_code == 1);
    CHECK(cmd_iso(a, a, "other").exit_code == 2);
}

TEST_CASE("verify reports the Z-graded M(1,1)") {
    auto r = cmd_verify(R"({"kind": "even", "group": {"free": 1, "torsion": []}, "T": [], "q": [],
                            "gamma0": [[0]], "gamma1": [[1]]})");
    CHECK(r.exit_code == 0);
    CHECK(r.out["support"] == json::parse("[[-1], [0], [1]]"));
}

}
