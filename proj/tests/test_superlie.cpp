#include <doctest.h>

#include "gradekit/superlie.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace gradekit;

namespace {

const FinGenAbGroup Z = FinGenAbGroup::integers();

BlockMatrix random_block(std::size_t m, std::size_t n, std::mt19937& rng, int parity = -1) {
    BlockMatrix X(m, n);
    std::uniform_int_distribution<int> d(-4, 4);
    for (std::size_t i = 0; i < m + n; ++i)
        for (std::size_t j = 0; j < m + n; ++j)
            if (parity < 0 || X.entry_parity(i, j) == parity) X(i, j) = Rational(d(rng), 1 + (d(rng) + 4) % 3);
    return X;
}

oracle::CMat cm(const BlockMatrix& X) {
    oracle::CMat out = oracle::zeros(X.size());
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < X.size(); ++j) out[i][j] = static_cast<double>(X(i, j));
    return out;
}

std::size_t total(const std::map<GroupElement, std::size_t>& d) {
    std::size_t s = 0;
    for (const auto& [g, v] : d) s += v;
    return s;
}

const PComponent* find(const PGradedModel& P, const GroupElement& g, int z) {
    for (const auto& c : P.components)
        if (c.degree == g && c.z == z) return &c;
    return nullptr;
}

} // namespace

TEST_SUITE("superlie") {

TEST_CASE("supertrace") {
    BlockMatrix I(1, 1, {{1, 0}, {0, 1}});
    CHECK(supertrace(I) == 0);
    BlockMatrix E(1, 1, {{1, 0}, {0, 0}});
    CHECK(supertrace(E) == 1);
    CHECK_THROWS(I + BlockMatrix(2, 1));
}

TEST_CASE("supertrace vanishes on supercommutators") {
    std::mt19937 rng(2);
    for (int it = 0; it < 60; ++it) {
        std::size_t m = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
        auto X = random_block(m, n, rng, it % 2), Y = random_block(m, n, rng, (it / 2) % 2);
        CHECK(supertrace(supercommutator(X, Y)) == 0);
        CHECK(supertrace(supercommutator(random_block(m, n, rng), random_block(m, n, rng))) == 0);
    }
}

TEST_CASE("supertranspose") {
    std::mt19937 rng(4);
    for (int it = 0; it < 40; ++it) {
        std::size_t m = 1 + it % 3, n = 1 + (it / 3) % 3;
        auto E = random_block(m, n, rng, 0);
        CHECK(supertranspose(E) == E.transpose());
        auto M = random_block(m, n, rng);
        CHECK(supertranspose(supertranspose(M)) == parity_automorphism(M));
        CHECK(supertranspose(supertranspose(supertranspose(supertranspose(M)))) == M);
        auto X = random_block(m, n, rng, 1), Y = random_block(m, n, rng, 1);
        CHECK(supertranspose(X * Y) == (supertranspose(Y) * supertranspose(X)).scaled(-1));
        auto A = random_block(m, n, rng, 0);
        CHECK(supertranspose(A * X) == supertranspose(X) * supertranspose(A));
    }
    BlockMatrix M(1, 1, {{1, 2}, {3, 4}});
    CHECK(supertranspose(M) == BlockMatrix(1, 1, {{1, -3}, {2, 4}}));
}

TEST_CASE("parity parts") {
    BlockMatrix M(1, 1, {{1, 2}, {3, 4}});
    CHECK(M.parity_part(0) == BlockMatrix(1, 1, {{1, 0}, {0, 4}}));
    CHECK(M.parity_part(1) == BlockMatrix(1, 1, {{0, 2}, {3, 0}}));
    CHECK_FALSE(M.parity());
    CHECK(*M.parity_part(1).parity() == 1);
}

TEST_CASE("superadjoint spec") {
    auto s = superadjoint_spec(make_even_spec(Z, {}, {}, {{0}}, {{1}}));
    CHECK(s.gamma0 == std::vector<GroupElement>{{0}});
    CHECK(s.gamma1 == std::vector<GroupElement>{{-1}});

    FinGenAbGroup V4(0, {2, 2});
    auto k = make_even_spec(V4, {{1, 0}, {0, 1}}, beta_ell(1).q(), {{1, 0}}, {{0, 1}, {1, 1}});
    auto ks = superadjoint_spec(k);
    CHECK(ks.beta == k.beta);
    CHECK(ks.gamma0 == k.gamma0);
    CHECK(ks.gamma1 == k.gamma1);

    FinGenAbGroup Z44(0, {4, 4});
    Bicharacter c = symplectic_cyclic(4);
    auto z = make_even_spec(Z44, {{1, 0}, {0, 1}}, c.q(), {{1, 2}}, {});
    auto zs = superadjoint_spec(z);
    CHECK(zs.beta == z.beta.inverse());
    CHECK(value_on(zs.T, zs.beta, {1, 0}, {0, 1}) == value_on(z.T, z.beta, {1, 0}, {0, 1}).inverse());
    CHECK(zs.gamma0 == std::vector<GroupElement>{{3, 2}});
}

TEST_CASE("superadjoint model realizes the image grading") {
    FinGenAbGroup V4(0, {2, 2});
    FinGenAbGroup Z44(0, {4, 4});
    std::vector<EvenAssoc> specs{
        make_even_spec(Z, {}, {}, {{0}, {2}}, {{1}}),
        make_even_spec(V4, {{1, 0}, {0, 1}}, beta_ell(1).q(), {{0, 0}}, {{1, 0}}),
        make_even_spec(Z44, {{1, 0}, {0, 1}}, symplectic_cyclic(4).q(), {{0, 0}}, {{1, 3}}),
    };
    std::mt19937 rng(8);
    for (int it = 0; it < 10; ++it) specs.push_back(gen::random_even(rng, 6));
    for (const auto& e : specs) {
        auto M = build_matrix_model(e);
        auto S = superadjoint_model(M);
        CHECK(verify_grading(S).pass);
        // components of S are the images of the components of M
        auto cs = oracle::components(S);
        std::map<GroupElement, std::vector<oracle::CMat>> img;
        for (std::size_t k = 0; k < M.basis.size(); ++k) {
            auto X = oracle::to_complex(M.matrix(k));
            img[M.basis[k].degree].push_back(oracle::scale(-1.0, oracle::supertranspose(X, M.m)));
        }
        REQUIRE(cs.size() == img.size());
        for (const auto& [g, v] : img) CHECK(oracle::same_span(v, cs[g]));
        CHECK(iso_even_assoc(extract_even_spec(S), superadjoint_spec(e)).has_value());
    }
}

TEST_CASE("type I restriction") {
    auto triv = [](std::size_t m, std::size_t n) {
        std::vector<GroupElement> g0(m, GroupElement{0}), g1(n, GroupElement{0});
        return AssocSpec(make_even_spec(Z, {}, {}, g0, g1));
    };
    CHECK(restrict_type_I(triv(2, 1)) == std::map<GroupElement, std::size_t>{{{0}, 8}});
    CHECK(restrict_type_I(triv(2, 2)) == std::map<GroupElement, std::size_t>{{{0}, 14}});
    // the diagonal of M(1,1) is spanned by the identity once the supertrace is imposed
    auto d = restrict_type_I(AssocSpec(make_even_spec(Z, {}, {}, {{0}}, {{1}})));
    CHECK(d == std::map<GroupElement, std::size_t>{{{-1}, 1}, {{1}, 1}});
    auto d2 = restrict_type_I(AssocSpec(make_even_spec(Z, {}, {}, {{0}, {0}}, {{1}})));
    CHECK(d2 == std::map<GroupElement, std::size_t>{{{-1}, 2}, {{0}, 4}, {{1}, 2}});
}

TEST_CASE("type I restriction dimensions") {
    std::mt19937 rng(10);
    for (int it = 0; it < 30; ++it) {
        AssocSpec s = it % 2 ? AssocSpec(gen::random_even(rng, 7)) : AssocSpec(gen::random_odd(rng, 6));
        auto [m, n] = spec_sizes(s);
        std::size_t expect = (m + n) * (m + n) - 1 - (m == n ? 1 : 0);
        CHECK(total(restrict_type_I(s)) == expect);
    }
}

TEST_CASE("P model with trivial T") {
    auto all0 = build_P_model(make_p_spec(Z, {}, {}, {{0}, {0}, {0}}, {0}));
    REQUIRE(all0.components.size() == 3);
    CHECK(all0.dims() == std::map<GroupElement, std::size_t>{{{0}, 17}});
    CHECK(all0.z_dims() == std::map<int, std::size_t>{{-1, 6}, {0, 8}, {1, 3}});
    CHECK(verify_P_graded(all0).pass);

    auto P = build_P_model(make_p_spec(Z, {}, {}, {{0}, {1}, {2}}, {0}));
    CHECK(P.dim() == 17);
    auto rep = verify_P_graded(P);
    CHECK(rep.pass);
    CHECK(rep.z_dims == std::map<int, std::size_t>{{-1, 6}, {0, 8}, {1, 3}});
    // E_13 + E_31 in the upper right corner has degree g1 + g3 - g0
    BlockMatrix b(3, 3);
    b(0, 5) = 1;
    b(2, 3) = 1;
    const PComponent* c = find(P, {2}, -1);
    REQUIRE(c);
    std::vector<oracle::CMat> span, with;
    for (const auto& x : c->basis) span.push_back(cm(x));
    with = span;
    with.push_back(cm(b));
    CHECK(oracle::rank(std::vector<std::vector<oracle::cplx>>{}) == 0);
    std::vector<std::vector<oracle::cplx>> r1, r2;
    for (const auto& x : span) r1.push_back(oracle::flat(x));
    for (const auto& x : with) r2.push_back(oracle::flat(x));
    CHECK(oracle::rank(r1) == oracle::rank(r2));
}

TEST_CASE("P model with T = Z/2^2") {
    FinGenAbGroup V4(0, {2, 2});
    auto s = make_p_spec(V4, {{1, 0}, {0, 1}}, beta_ell(1).q(), {{0, 0}, {0, 0}}, {0, 0});
    CHECK(s.n == 3);
    auto P = build_P_model(s);
    CHECK(P.dim() == 31);
    auto rep = verify_P_graded(P);
    CHECK(rep.pass);
    CHECK(rep.z_dims == std::map<int, std::size_t>{{-1, 10}, {0, 15}, {1, 6}});
}

TEST_CASE("P spec validation") {
    CHECK(make_p_spec(Z, {}, {}, {{0}, {0}}, {0}).n == 1);
    CHECK_THROWS_AS(make_p_spec(Z, {}, {}, {}, {0}), SpecError);
    FinGenAbGroup Z44(0, {4, 4});
    CHECK_THROWS_AS(make_p_spec(Z44, {{1, 0}, {0, 1}}, symplectic_cyclic(4).q(), {{0, 0}}, {0, 0}), SpecError);
}

TEST_CASE("restriction condition") {
    auto e = make_even_spec(Z, {}, {}, {{0}, {1}, {2}}, {{5}, {4}, {3}});
    CHECK(P_restriction_condition(e) == GroupElement{5});
    FinGenAbGroup Z44(0, {4, 4});
    auto z = make_even_spec(Z44, {{1, 0}, {0, 1}}, symplectic_cyclic(4).q(), {{0, 0}}, {{0, 0}});
    CHECK_FALSE(P_restriction_condition(z));
    CHECK_FALSE(P_restriction_condition(make_even_spec(Z, {}, {}, {{0}, {0}}, {{0}, {1}})));
}

TEST_CASE("failing condition loses dimension") {
    auto bad = make_even_spec(Z, {}, {}, {{0}, {0}, {0}}, {{0}, {0}, {1}});
    REQUIRE_FALSE(P_restriction_condition(bad));
    CHECK(intersect_with_P(bad).dim() < 17);
    auto good = make_even_spec(Z, {}, {}, {{0}, {1}, {2}}, {{5}, {4}, {3}});
    CHECK(intersect_with_P(good).dim() == 17);
}

TEST_CASE("random P specs are graded") {
    std::mt19937 rng(12);
    for (int it = 0; it < 15; ++it) {
        PSpec s = gen::random_p(rng);
        auto P = build_P_model(s);
        auto rep = verify_P_graded(P);
        CHECK(rep.pass);
        CHECK(rep.dim == 2 * (s.n + 1) * (s.n + 1) - 1);
        auto e = p_ambient_spec(s);
        REQUIRE(P_restriction_condition(e));
        CHECK(intersect_with_P(e).dim() == rep.dim);
    }
}

TEST_CASE("restriction condition decides gradedness") {
    std::mt19937 rng(13);
    for (int it = 0; it < 10; ++it) {
        EvenAssoc e = gen::random_even_failing_P(rng);
        std::size_t N = e.gamma0.size() * static_cast<std::size_t>(std::llround(std::sqrt(double(e.T.order()))));
        CHECK(intersect_with_P(e).dim() < 2 * N * N - 1);
    }
}

TEST_CASE("universal group of the P-fine grading for n = 2") {
    FinGenAbGroup Z4g = FinGenAbGroup::integers(4);
    auto s = make_p_spec(Z4g, {}, {}, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, {1, 0, 0, 0});
    auto u = universal_group(build_P_model(s));
    CHECK(u.group == FinGenAbGroup::integers(3));
}

}
