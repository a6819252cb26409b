#pragma once

// Random grading parameters for property tests. T_H (or T_(l)) is embedded
// in G = C x T_H through an explicit presentation, so the generated specs
// are valid by construction.

#include <random>
#include <stdexcept>
#include <vector>

#include "gradekit/classify.hpp"
#include "gradekit/matgrade.hpp"
#include "gradekit/superlie.hpp"

namespace gen {

using namespace gradekit;

struct Ambient {
    FinGenAbGroup G;
    GroupHom proj;                     // Z^{c + t} -> G
    std::size_t c_rank = 0;            // coordinates belonging to C
    std::vector<std::int64_t> c_orders; // 0 for Z
};

// G = C x Tor with C given by cyclic orders (0 = infinite).
inline Ambient ambient(const std::vector<std::int64_t>& c_orders, const std::vector<std::int64_t>& tor) {
    std::vector<std::int64_t> orders = c_orders;
    orders.insert(orders.end(), tor.begin(), tor.end());
    std::vector<std::vector<std::int64_t>> rels;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] == 0) continue;
        std::vector<std::int64_t> r(orders.size(), 0);
        r[i] = orders[i];
        rels.push_back(r);
    }
    auto P = finitely_presented_quotient(orders.size(), rels);
    return {P.group, P.projection, c_orders.size(), c_orders};
}

inline GroupElement embed_t(const Ambient& a, const GroupElement& t) {
    std::vector<std::int64_t> v(a.c_rank, 0);
    v.insert(v.end(), t.begin(), t.end());
    return a.proj.apply(v);
}

inline GroupElement random_element(const Ambient& a, std::mt19937& rng) {
    std::vector<std::int64_t> v;
    for (std::size_t i = 0; i < a.proj.source().rank(); ++i) {
        std::int64_t d = i < a.c_rank ? a.c_orders[i] : 0;
        if (i >= a.c_rank || d != 0) {
            std::int64_t mod = i < a.c_rank ? d : 64;
            v.push_back(std::uniform_int_distribution<std::int64_t>(0, mod - 1)(rng));
        } else {
            v.push_back(std::uniform_int_distribution<std::int64_t>(-3, 3)(rng));
        }
    }
    return a.proj.apply(v);
}

inline std::vector<GroupElement> random_tuple(const Ambient& a, std::size_t k, std::mt19937& rng) {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < k; ++i) out.push_back(random_element(a, rng));
    return out;
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937& rng) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

// C with |C| * |T| <= 64 (or C infinite cyclic)
inline std::vector<std::int64_t> random_c(std::int64_t t_order, std::mt19937& rng) {
    std::vector<std::vector<std::int64_t>> options{{}, {0}};
    for (std::int64_t d : {2, 3, 4})
        if (d * t_order <= 64) options.push_back({d});
    if (4 * t_order <= 64) options.push_back({2, 2});
    return pick(options, rng);
}

inline std::vector<GroupElement> t_generators(const Ambient& a, const FinGenAbGroup& T) {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < T.rank(); ++i) out.push_back(embed_t(a, T.generator(i)));
    return out;
}

// Even spec with m + n <= max_size.
inline EvenAssoc random_even(std::mt19937& rng, std::size_t max_size = 8) {
    std::vector<FinGenAbGroup> hs;
    for (std::int64_t l = 1; l <= 4; ++l)
        if (static_cast<std::size_t>(l) <= max_size)
            for (const auto& H : abelian_groups(l)) hs.push_back(H);
    FinGenAbGroup H = pick(hs, rng);
    StandardPair sp = standard_pair(H);
    std::size_t s = static_cast<std::size_t>(H.order());
    std::size_t kmax = max_size / s;
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, kmax)(rng);
    std::size_t k0 = std::uniform_int_distribution<std::size_t>(0, k)(rng);
    Ambient a = ambient(random_c(sp.T.order(), rng), sp.T.torsion());
    return make_even_spec(a.G, t_generators(a, sp.T), sp.beta.q(), random_tuple(a, k0, rng),
                          random_tuple(a, k - k0, rng));
}

inline OddAssocT odd_from(const Ambient& a, const StandardPair& sp, const GroupElement& t0,
                          std::vector<GroupElement> gamma) {
    std::vector<std::pair<GroupElement, int>> gens;
    for (std::size_t i = 0; i < sp.T.rank(); ++i) {
        GroupElement t = sp.T.generator(i);
        gens.emplace_back(embed_t(a, t), sp.beta.value(t0, t) == RootOfUnity::minus_one() ? 1 : 0);
    }
    return make_odd_spec(a.G, gens, sp.beta.q(), std::move(gamma));
}

// Odd spec on M(n, n) with 2n <= max_size and |T| <= 64.
inline OddAssocT random_odd(std::mt19937& rng, std::size_t max_size = 8) {
    std::vector<FinGenAbGroup> hs;
    for (std::int64_t l = 1; l <= 4; ++l)
        if (static_cast<std::size_t>(2 * l) <= max_size)
            for (const auto& H : abelian_groups(2 * l)) hs.push_back(H);
    FinGenAbGroup H = pick(hs, rng);
    StandardPair sp = standard_pair(H);
    std::vector<GroupElement> inv;
    for (const auto& t : sp.T.elements())
        if (sp.T.element_order(t) == 2) inv.push_back(t);
    GroupElement t0 = pick(inv, rng);
    std::size_t s = static_cast<std::size_t>(H.order());
    std::size_t k = std::uniform_int_distribution<std::size_t>(1, max_size / s)(rng);
    Ambient a = ambient(random_c(sp.T.order(), rng), sp.T.torsion());
    return odd_from(a, sp, t0, random_tuple(a, k, rng));
}

// The same grading described through (t0, Tbar, beta_bar, u); u is a square root of a.
inline OddAssocG g_variant(const OddAssocT& s) {
    GroupElement t0 = parity_element(s);
    EvenAssoc fe = finest_even_coarsening(s);
    auto d = odd_character_data(s.G, t0, fe.T, fe.beta);
    auto u = solve_square(s.G, d.a);
    if (!u) throw std::logic_error("no square root of a");
    return validate_spec(OddAssocG{s.G, t0, fe.T, fe.beta, *u, s.gamma});
}

// P(n) spec with n in `ns`.
inline PSpec random_p(std::mt19937& rng, const std::vector<std::size_t>& ns = {2, 3}) {
    std::size_t n = pick(ns, rng);
    std::vector<int> ls;
    for (int l = 0; (std::size_t{1} << l) <= n + 1; ++l)
        if ((n + 1) % (std::size_t{1} << l) == 0) ls.push_back(l);
    int l = pick(ls, rng);
    Bicharacter b = beta_ell(l);
    std::size_t k = (n + 1) >> l;
    Ambient a = ambient(random_c(b.domain().order() > 4 ? 4 : b.domain().order(), rng), b.domain().torsion());
    return make_p_spec(a.G, t_generators(a, b.domain()), b.q(), random_tuple(a, k, rng), random_element(a, rng));
}

// Even spec on M(N, N) with T elementary 2 whose P(n)-restriction condition fails.
inline EvenAssoc random_even_failing_P(std::mt19937& rng) {
    for (;;) {
        std::size_t N = pick(std::vector<std::size_t>{3, 4}, rng);
        int l = N == 4 ? pick(std::vector<int>{0, 1}, rng) : 0;
        Bicharacter b = beta_ell(l);
        std::size_t k = N >> l;
        Ambient a = ambient(random_c(b.domain().order(), rng), b.domain().torsion());
        EvenAssoc e = make_even_spec(a.G, t_generators(a, b.domain()), b.q(), random_tuple(a, k, rng),
                                     random_tuple(a, k, rng));
        if (!P_restriction_condition(e)) return e;
    }
}

} // namespace gen
