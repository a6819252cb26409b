#include <doctest.h>

#include "gradekit/graddiv.hpp"
#include "support/oracles.hpp"

using namespace gradekit;

namespace {

Bicharacter standard_z2() { return Bicharacter(FinGenAbGroup(0, {2, 2}), {{{}, {1, 2}}, {{1, 2}, {}}}); }
Bicharacter canonical_z4() { return Bicharacter(FinGenAbGroup(0, {4, 4}), {{{}, {1, 4}}, {{3, 4}, {}}}); }

MonomialMatrix dense2(int a, int b, int c, int d) {
    // exactly one nonzero per column
    std::vector<std::size_t> p(2);
    std::vector<Scalar> s(2);
    p[0] = a ? 0 : 1;
    s[0] = Scalar(Rational(a ? a : c));
    p[1] = b ? 0 : 1;
    s[1] = Scalar(Rational(b ? b : d));
    return {p, s};
}

std::vector<Bicharacter> realization_betas() {
    std::vector<Bicharacter> out{Bicharacter(), standard_z2(), canonical_z4(), beta_ell(2), beta_ell(3)};
    out.push_back(standard_pair(FinGenAbGroup(0, {2, 4})).beta);
    out.push_back(standard_pair(FinGenAbGroup::cyclic(8)).beta);
    return out;
}

} // namespace

TEST_SUITE("graddiv") {

TEST_CASE("realization of the Klein four-group") {
    StandardRealization R(standard_z2());
    CHECK(R.size() == 2);
    CHECK(R.X({1, 0}) == dense2(1, 0, 0, -1));
    CHECK(R.X({0, 1}) == dense2(0, 1, 1, 0));
    CHECK(R.X({1, 1}) == dense2(0, 1, -1, 0));
    CHECK(R.X({0, 0}).is_identity());
    auto rep = verify_realization(R);
    CHECK(rep.pass());
    CHECK(R.X({1, 1}).transpose() == R.X({1, 1}).scaled(-Scalar()));
}

TEST_CASE("trivial group realization") {
    StandardRealization R{Bicharacter()};
    CHECK(R.size() == 1);
    CHECK(R.X({}).is_identity());
    CHECK(verify_realization(R).pass());
}

TEST_CASE("clock and shift for Z/4 x Z/4") {
    StandardRealization R(canonical_z4());
    CHECK(R.size() == 4);
    const auto& Xa = R.X({1, 0});
    const auto& Xb = R.X({0, 1});
    for (std::size_t c = 0; c < 4; ++c) CHECK(Xa.perm()[c] == c);
    CHECK((Xa * Xb) == R.X({1, 1}));
    auto r = (Xa * Xb).ratio_to(Xb * Xa);
    REQUIRE(r);
    CHECK(r->root() == RootOfUnity(1, 4));
    CHECK(verify_realization(R).pass());
}

TEST_CASE("monomial products") {
    CHECK(monomial_mul(dense2(1, 0, 0, -1), dense2(0, 1, 1, 0)) == dense2(0, 1, -1, 0));
    StandardRealization R(canonical_z4());
    for (std::size_t i = 0; i < R.elements().size(); ++i) CHECK((R.X(i) * R.X(i).inverse()).is_identity());
    CHECK_THROWS(monomial_mul(MonomialMatrix::identity(2), MonomialMatrix::identity(3)));
}

TEST_CASE("commutation identity against complex matrices") {
    for (const auto& b : realization_betas()) {
        StandardRealization R(b);
        const auto& T = b.domain();
        for (const auto& u : T.elements())
            for (const auto& v : T.elements()) {
                auto lhs = oracle::mul(oracle::to_complex(R.X(u)), oracle::to_complex(R.X(v)));
                auto rhs = oracle::scale(oracle::root(b.value(u, v)),
                                         oracle::mul(oracle::to_complex(R.X(v)), oracle::to_complex(R.X(u))));
                CHECK(oracle::close(lhs, rhs));
            }
        CHECK(verify_realization(R).pass());
    }
}

TEST_CASE("inverse is a multiple of the opposite degree") {
    for (const auto& b : realization_betas()) {
        StandardRealization R(b);
        for (const auto& t : b.domain().elements())
            CHECK(R.X(t).inverse().ratio_to(R.X(b.domain().neg(t))).has_value());
    }
}

TEST_CASE("transposition preserves degrees for elementary 2-groups") {
    for (int l = 1; l <= 3; ++l) {
        StandardRealization R(beta_ell(l));
        for (const auto& t : R.elements()) CHECK(R.X(t).transpose().ratio_to(R.X(t)).has_value());
        CHECK(verify_realization(R).transpose_preserves_degree);
    }
}

TEST_CASE("cocycle identity") {
    for (const auto& b : {standard_z2(), canonical_z4(), beta_ell(2)}) {
        StandardRealization R(b);
        const auto& T = b.domain();
        for (const auto& s : T.elements())
            for (const auto& t : T.elements())
                for (const auto& r : T.elements())
                    CHECK(R.cocycle(s, t) * R.cocycle(T.add(s, t), r) == R.cocycle(t, r) * R.cocycle(s, T.add(t, r)));
    }
}

TEST_CASE("scalars fold signs into the root") {
    Scalar a(Rational(-2));
    CHECK(a.coeff() == 2);
    CHECK(a.root() == RootOfUnity::minus_one());
    CHECK(a * a.inverse() == Scalar());
    CHECK(Scalar(RootOfUnity(1, 4)).pow(4) == Scalar());
    CHECK_THROWS(Scalar(Rational(0)));
}

}
