#include <doctest.h>

#include <random>

#include "gradekit/abgroup.hpp"
#include "support/oracles.hpp"

using namespace gradekit;

namespace {

BigInt entry(const IntMatrix& M, std::size_t i, std::size_t j) { return M.at(i).at(j); }

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix c(a.size(), std::vector<BigInt>(b[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

} // namespace

TEST_SUITE("abgroup") {

TEST_CASE("compose reduces torsion coordinates") {
    CHECK(compose_elements(FinGenAbGroup::cyclic(4), {3}, {2}) == GroupElement{1});
    CHECK(compose_elements(FinGenAbGroup(1, {2}), {1, 1}, {-1, 1}) == GroupElement{0, 0});
    CHECK(compose_elements(FinGenAbGroup(0, {2, 4}), {1, 3}, {1, 2}) == GroupElement{0, 1});
    CHECK_THROWS(compose_elements(FinGenAbGroup::cyclic(4), {1, 0}, {1}));
}

TEST_CASE("element orders") {
    CHECK(FinGenAbGroup::cyclic(4).element_order({2}) == 2);
    CHECK(FinGenAbGroup(0, {2, 4}).element_order({1, 1}) == 4);
    CHECK_FALSE(FinGenAbGroup::integers().element_order({1}).has_value());
    CHECK(FinGenAbGroup::integers().element_order({0}) == 1);
}

TEST_CASE("square roots") {
    auto x = solve_square(FinGenAbGroup::cyclic(4), {2});
    REQUIRE(x);
    CHECK(FinGenAbGroup::cyclic(4).scale(2, *x) == GroupElement{2});
    CHECK_FALSE(solve_square(FinGenAbGroup::cyclic(2), {1}));
    FinGenAbGroup G(1, {3});
    auto y = solve_square(G, {2, 1});
    REQUIRE(y);
    CHECK(*y == GroupElement{1, 2});
    CHECK_FALSE(solve_square(G, {1, 0}));
}

TEST_CASE("square roots agree with exhaustive search") {
    for (const auto& tors : std::vector<std::vector<std::int64_t>>{{2}, {4}, {2, 4}, {3, 6}, {2, 2, 4}, {8}, {4, 8}, {2, 2, 2, 2}}) {
        FinGenAbGroup G(0, tors);
        auto elts = oracle::box(tors);
        for (const auto& a : elts) {
            bool exists = false;
            for (const auto& x : elts) exists = exists || G.scale(2, x) == a;
            auto r = solve_square(G, a);
            CHECK(r.has_value() == exists);
            if (r) CHECK(G.scale(2, *r) == a);
        }
    }
}

TEST_CASE("smith normal form examples") {
    auto check = [](const IntMatrix& M, const std::vector<BigInt>& diag) {
        SmithForm f = smith_normal_form(M);
        CHECK(mat_mul(mat_mul(f.U, M), f.V) == f.S);
        for (std::size_t i = 0; i < f.S.size(); ++i)
            for (std::size_t j = 0; j < f.S[0].size(); ++j)
                CHECK(entry(f.S, i, j) == (i == j && i < diag.size() ? diag[i] : BigInt(0)));
    };
    check(to_int_matrix({{2, -2}}), {2});
    check(to_int_matrix({{1, 0}, {0, 1}}), {1, 1});
    check(to_int_matrix({{2, 0}, {0, 3}}), {1, 6});
}

TEST_CASE("smith normal form on random matrices") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> d(-6, 6), sz(1, 4);
    for (int it = 0; it < 60; ++it) {
        int r = sz(rng), c = sz(rng);
        std::vector<std::vector<std::int64_t>> rows(r, std::vector<std::int64_t>(c));
        for (auto& row : rows)
            for (auto& v : row) v = d(rng);
        IntMatrix M = to_int_matrix(rows);
        SmithForm f = smith_normal_form(M);
        CHECK(mat_mul(mat_mul(f.U, M), f.V) == f.S);
        for (std::size_t i = 0; i + 1 < f.rank; ++i) CHECK(f.S[i + 1][i + 1] % f.S[i][i] == 0);
        CHECK(mat_mul(f.V, f.V_inv) == to_int_matrix([&] {
                  std::vector<std::vector<std::int64_t>> I(c, std::vector<std::int64_t>(c, 0));
                  for (int i = 0; i < c; ++i) I[i][i] = 1;
                  return I;
              }()));
    }
}

TEST_CASE("finitely presented quotients") {
    auto a = finitely_presented_quotient(2, {{2, -2}});
    CHECK(a.group == FinGenAbGroup(1, {2}));
    CHECK(finitely_presented_quotient(1, {}).group == FinGenAbGroup::integers());
    CHECK(finitely_presented_quotient(3, {{1, 1, -1}}).group == FinGenAbGroup::integers(2));
}

TEST_CASE("quotient projection kills exactly the relations") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int it = 0; it < 40; ++it) {
        std::vector<std::vector<std::int64_t>> rels(3, std::vector<std::int64_t>(3));
        for (auto& r : rels)
            for (auto& v : r) v = d(rng);
        auto P = finitely_presented_quotient(3, rels);
        for (const auto& r : rels) CHECK(P.projection.apply(r) == P.group.zero());
        for (std::size_t k = 0; k < P.section.size(); ++k) CHECK(P.projection.apply(P.section[k]) == P.group.generator(k));
    }
}

TEST_CASE("subgroups and quotients") {
    auto a = subgroup_and_quotient(FinGenAbGroup::cyclic(4), {{2}});
    CHECK(a.subgroup.structure() == FinGenAbGroup::cyclic(2));
    CHECK(a.quotient == FinGenAbGroup::cyclic(2));
    auto b = subgroup_and_quotient(FinGenAbGroup::integers(), {});
    CHECK(b.subgroup.order() == 1);
    CHECK(b.quotient == FinGenAbGroup::integers());
    auto c = subgroup_and_quotient(FinGenAbGroup(0, {2, 4}), {{1, 2}});
    CHECK(c.quotient == FinGenAbGroup::cyclic(4));
    CHECK(c.subgroup.order() * c.quotient.order() == 8);
}

TEST_CASE("membership matches the enumerated span") {
    FinGenAbGroup G(0, {2, 4, 8});
    std::mt19937 rng(3);
    auto elts = G.elements();
    std::uniform_int_distribution<std::size_t> pick(0, elts.size() - 1);
    for (int it = 0; it < 20; ++it) {
        std::vector<GroupElement> gens{elts[pick(rng)], elts[pick(rng)]};
        std::set<GroupElement> span{G.zero()};
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto x : std::set<GroupElement>(span))
                for (const auto& g : gens)
                    if (span.insert(G.add(x, g)).second) grew = true;
        }
        Subgroup S(G, gens);
        CHECK(static_cast<std::size_t>(S.order()) == span.size());
        for (const auto& x : elts) CHECK(S.contains(x) == (span.count(x) == 1));
        for (const auto& x : span) CHECK(S.from_coordinates(S.coordinates(x)) == x);
    }
}

TEST_CASE("squares and two-torsion") {
    auto [s4, t4] = squares_and_two_torsion(FinGenAbGroup::cyclic(4));
    CHECK(s4.elements() == std::vector<GroupElement>{{0}, {2}});
    CHECK(t4.elements() == std::vector<GroupElement>{{0}, {2}});
    auto [s, t] = squares_and_two_torsion(FinGenAbGroup(0, {2, 4}));
    CHECK(s.elements() == std::vector<GroupElement>{{0, 0}, {0, 2}});
    CHECK(t.elements() == std::vector<GroupElement>{{0, 0}, {0, 2}, {1, 0}, {1, 2}});
    auto [sz, tz] = squares_and_two_torsion(FinGenAbGroup::integers());
    CHECK(sz.contains({2}));
    CHECK_FALSE(sz.contains({1}));
    CHECK(tz.order() == 1);
}

TEST_CASE("coset representatives") {
    FinGenAbGroup Z4 = FinGenAbGroup::cyclic(4);
    CHECK(coset_canonical_rep(Z4, Subgroup(Z4, {{2}}), {3}) == GroupElement{1});
    FinGenAbGroup Z = FinGenAbGroup::integers();
    CHECK(coset_canonical_rep(Z, Subgroup::trivial(Z), {-5}) == GroupElement{-5});
    FinGenAbGroup V(0, {2, 2});
    CHECK(coset_canonical_rep(V, Subgroup(V, {{1, 1}}), {1, 0}) == GroupElement{0, 1});
    CHECK_THROWS(coset_canonical_rep(Z, Subgroup(Z, {{2}}), {1}));
}

TEST_CASE("equal representatives exactly for congruent elements") {
    for (const auto& tors : std::vector<std::vector<std::int64_t>>{{2, 4}, {4, 4}, {2, 2, 2}, {8}, {2, 8}}) {
        FinGenAbGroup G(0, tors);
        auto elts = G.elements();
        for (std::size_t gi = 0; gi < elts.size(); gi += 3) {
            Subgroup T(G, {elts[gi]});
            for (const auto& x : elts)
                for (const auto& y : elts)
                    CHECK((coset_canonical_rep(G, T, x) == coset_canonical_rep(G, T, y)) == T.contains(G.sub(x, y)));
        }
    }
}

TEST_CASE("group axioms on random elements") {
    FinGenAbGroup G(2, {2, 6});
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-9, 9);
    auto rnd = [&] { return G.reduce({d(rng), d(rng), d(rng), d(rng)}); };
    for (int it = 0; it < 50; ++it) {
        auto x = rnd(), y = rnd(), z = rnd();
        CHECK(G.add(G.add(x, y), z) == G.add(x, G.add(y, z)));
        CHECK(G.add(x, y) == G.add(y, x));
        CHECK(G.add(x, G.neg(x)) == G.zero());
    }
}

TEST_CASE("preimage and intersection") {
    FinGenAbGroup G(0, {2, 4});
    GroupHom f(G, FinGenAbGroup::cyclic(4), {{2}, {1}});
    Subgroup K = kernel(f);
    for (const auto& x : G.elements()) CHECK(K.contains(x) == (f.apply(x) == GroupElement{0}));
    Subgroup pre = preimage(f, Subgroup(FinGenAbGroup::cyclic(4), {{2}}));
    for (const auto& x : G.elements()) CHECK(pre.contains(x) == (f.apply(x)[0] % 2 == 0));
    Subgroup A(G, {{1, 0}}), B(G, {{1, 2}, {0, 2}});
    Subgroup I = intersect(A, B);
    for (const auto& x : G.elements()) CHECK(I.contains(x) == (A.contains(x) && B.contains(x)));
}

TEST_CASE("canonical generators depend only on the subgroup") {
    std::mt19937 rng(77);
    for (const FinGenAbGroup& G : {FinGenAbGroup(0, {2, 4}), FinGenAbGroup(0, {6, 6}), FinGenAbGroup(1, {2, 4}),
                                   FinGenAbGroup(2, {})}) {
        for (int it = 0; it < 20; ++it) {
            std::uniform_int_distribution<std::int64_t> d(-6, 6);
            auto rnd = [&] {
                GroupElement x;
                for (std::size_t i = 0; i < G.rank(); ++i) x.push_back(d(rng));
                return G.reduce(x);
            };
            std::vector<GroupElement> gens{rnd(), rnd()};
            Subgroup A(G, gens);
            // the same subgroup from a different generating set
            std::vector<GroupElement> other{G.add(gens[0], G.scale(d(rng), gens[1])), gens[1], G.scale(d(rng), gens[0])};
            std::shuffle(other.begin(), other.end(), rng);
            Subgroup B(G, other);
            REQUIRE(A == B);
            auto ca = canonical_generators(A);
            CHECK(ca == canonical_generators(B));
            CHECK(Subgroup(G, ca) == A);
            CHECK(canonical_generators(Subgroup(G, ca)) == ca);
        }
    }
}

}
