#include "gradekit/classify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace gradekit {

namespace {

void require_same_group(const FinGenAbGroup& a, const FinGenAbGroup& b) {
    if (!(a == b)) throw std::invalid_argument("gradings are over different groups");
}

/**
 * g with Xi_k shifted by g equal to Xi'_k for every pair k. Any such g sends the
 * first coset of the first nonempty Xi_k to a coset of Xi'_k, so those differences
 * are the only candidates.
 */
std::optional<GroupElement> common_shift(const std::vector<std::pair<CosetMultiset, CosetMultiset>>& pairs) {
    for (const auto& [a, b] : pairs)
        if (a.total() != b.total()) return std::nullopt;
    auto lead = std::find_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.first.total() > 0; });
    if (lead == pairs.end()) return pairs.empty() ? std::nullopt : std::optional(pairs.front().first.G.zero());
    const FinGenAbGroup& G = lead->first.G;
    const GroupElement& c = lead->first.counts.begin()->first;
    for (const auto& [y, cnt] : lead->second.counts) {
        GroupElement g = G.sub(y, c);
        bool ok = std::all_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first.shifted(g) == p.second; });
        if (ok) return coset_canonical_rep(G, lead->first.T, g);
    }
    return std::nullopt;
}

} // namespace

std::optional<IsoWitness> iso_even_assoc(const EvenAssoc& a_in, const EvenAssoc& b_in) {
    EvenAssoc a = validate_spec(a_in), b = validate_spec(b_in);
    require_same_group(a.G, b.G);
    if (spec_sizes(a) != spec_sizes(b)) return std::nullopt;
    if (!same_bicharacter(a.T, a.beta, b.T, b.beta)) return std::nullopt;
    const FinGenAbGroup& G = a.G;
    auto X0 = xi_multiset(G, a.T, a.gamma0), X1 = xi_multiset(G, a.T, a.gamma1);
    auto Y0 = xi_multiset(G, b.T, b.gamma0), Y1 = xi_multiset(G, b.T, b.gamma1);
    if (auto g = common_shift({{X0, Y0}, {X1, Y1}})) return IsoWitness{*g, false, 1};
    auto [m, n] = spec_sizes(a);
    if (m == n)
        if (auto g = common_shift({{X0, Y1}, {X1, Y0}})) return IsoWitness{*g, true, 1};
    return std::nullopt;
}

std::optional<IsoWitness> iso_odd_assoc(const OddAssocT& a_in, const OddAssocT& b_in) {
    OddAssocT a = validate_spec(a_in), b = validate_spec(b_in);
    require_same_group(a.G, b.G);
    if (spec_sizes(a) != spec_sizes(b)) return std::nullopt;
    if (!same_bicharacter(a.T, a.beta, b.T, b.beta)) return std::nullopt;
    ParityExtension ext = make_parity_extension(a.G);
    Subgroup Tplus = preimage(ext.embedding, a.T);
    auto g = common_shift({{xi_multiset(a.G, Tplus, a.gamma), xi_multiset(a.G, Tplus, b.gamma)}});
    if (!g) return std::nullopt;
    return IsoWitness{*g, false, 1};
}

std::optional<IsoWitness> iso_odd_assoc(const OddAssocG& a_in, const OddAssocG& b_in) {
    OddAssocG a = validate_spec(a_in), b = validate_spec(b_in);
    require_same_group(a.G, b.G);
    if (a.gamma.size() * static_cast<std::size_t>(a.Tbar.order()) !=
        b.gamma.size() * static_cast<std::size_t>(b.Tbar.order()))
        return std::nullopt;
    if (a.t0 != b.t0) return std::nullopt;
    if (!same_bicharacter(a.Tbar, a.beta_bar, b.Tbar, b.beta_bar)) return std::nullopt;
    GroupElement du = a.G.sub(a.u, b.u);
    if (du != a.G.zero() && du != a.t0) return std::nullopt;
    ParityQuotient pq = parity_quotient(a.G, a.t0);
    Subgroup Tplus = preimage(pq.theta, a.Tbar);
    auto g = common_shift({{xi_multiset(a.G, Tplus, a.gamma), xi_multiset(a.G, Tplus, b.gamma)}});
    if (!g) return std::nullopt;
    return IsoWitness{*g, false, 1};
}

std::optional<IsoWitness> iso_assoc(const AssocSpec& a, const AssocSpec& b) {
    if (auto ea = std::get_if<EvenAssoc>(&a)) {
        if (auto eb = std::get_if<EvenAssoc>(&b)) return iso_even_assoc(*ea, *eb);
        require_same_group(ea->G, std::visit([](const auto& s) { return s.G; }, b));
        return std::nullopt; // even and odd gradings are never isomorphic
    }
    if (std::holds_alternative<EvenAssoc>(b)) {
        require_same_group(std::visit([](const auto& s) { return s.G; }, a), std::get<EvenAssoc>(b).G);
        return std::nullopt;
    }
    auto ga = std::get_if<OddAssocG>(&a), gb = std::get_if<OddAssocG>(&b);
    if (ga && gb) return iso_odd_assoc(*ga, *gb);
    auto to_t = [](const AssocSpec& s) {
        if (auto g = std::get_if<OddAssocG>(&s)) return build_odd_from_G(*g);
        return std::get<OddAssocT>(s);
    };
    return iso_odd_assoc(to_t(a), to_t(b));
}

std::optional<IsoWitness> iso_lie_typeI(const AssocSpec& a, const AssocSpec& b) {
    if (auto w = iso_assoc(a, b)) return w;
    if (auto w = iso_assoc(superadjoint_spec(a), b)) {
        w->delta = -1;
        return w;
    }
    return std::nullopt;
}

std::optional<IsoWitness> iso_P(const PSpec& a_in, const PSpec& b_in) {
    PSpec a = validate_p_spec(a_in), b = validate_p_spec(b_in);
    require_same_group(a.G, b.G);
    if (a.n != b.n) return std::nullopt;
    if (!same_bicharacter(a.T, a.beta, b.T, b.beta)) return std::nullopt;
    const FinGenAbGroup& G = a.G;
    auto X = xi_multiset(G, a.T, a.gamma), Y = xi_multiset(G, b.T, b.gamma);
    const GroupElement& c = X.counts.begin()->first;
    for (const auto& [y, cnt] : Y.counts) {
        GroupElement g = G.sub(y, c);
        if (!(X.shifted(g) == Y)) continue;
        // squares are constant on T-cosets because T is elementary 2
        for (const auto& t : a.T.elements())
            if (G.scale(2, G.add(g, t)) != G.scale(2, g)) throw std::logic_error("iso_P: square not constant on a coset");
        if (G.add(G.scale(2, g), a.g0) == b.g0) return IsoWitness{coset_canonical_rep(G, a.T, g), false, 1};
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- fine gradings

namespace {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t l) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= l; ++p) {
        int e = 0;
        while (l % p == 0) {
            l /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (l > 1) out.emplace_back(l, 1);
    return out;
}

// partitions of e, parts in nonincreasing order, the coarsest first
std::vector<std::vector<int>> partitions(int e, int max_part) {
    if (e == 0) return {{}};
    std::vector<std::vector<int>> out;
    for (int p = std::min(e, max_part); p >= 1; --p)
        for (auto rest : partitions(e - p, p)) {
            rest.insert(rest.begin(), p);
            out.push_back(std::move(rest));
        }
    return out;
}

std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

FinGenAbGroup normalized(const FinGenAbGroup& G) {
    std::vector<std::int64_t> orders(static_cast<std::size_t>(G.free_rank()), 0);
    orders.insert(orders.end(), G.torsion().begin(), G.torsion().end());
    return FinGenAbGroup::from_cyclic_orders(orders);
}

void check_universal(const FineGradingDescriptor& d, const UniversalGroup& u) {
    if (!(normalized(u.group) == d.universal))
        throw std::logic_error("universal group of the built model differs from the closed form");
}

std::vector<GroupElement> unit_vectors(const FinGenAbGroup& G, std::size_t first, std::size_t count) {
    std::vector<GroupElement> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(G.generator(first + i));
    return out;
}

// T_H's generators placed after `free` free coordinates
std::vector<GroupElement> embedded_torsion_gens(const FinGenAbGroup& G, std::size_t free, std::size_t count) {
    return unit_vectors(G, free, count);
}

GroupElement embed(const FinGenAbGroup& G, std::size_t free, const GroupElement& t) {
    GroupElement g = G.zero();
    for (std::size_t i = 0; i < t.size(); ++i) g[free + i] = t[i];
    return g;
}

std::vector<std::size_t> divisors(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

} // namespace

std::vector<FinGenAbGroup> abelian_groups(std::int64_t l) {
    if (l < 1) throw std::invalid_argument("abelian_groups: order must be positive");
    std::vector<std::vector<std::int64_t>> acc{{}};
    for (auto [p, e] : factorize(l)) {
        std::vector<std::vector<std::int64_t>> next;
        for (const auto& base : acc)
            for (const auto& part : partitions(e, e)) {
                auto v = base;
                for (int x : part) v.push_back(ipow(p, x));
                next.push_back(std::move(v));
            }
        acc = std::move(next);
    }
    std::vector<FinGenAbGroup> out;
    for (const auto& v : acc) out.push_back(FinGenAbGroup::from_cyclic_orders(v));
    return out;
}

std::string family_name(FineGradingDescriptor::Family f) {
    switch (f) {
    case FineGradingDescriptor::Family::Even: return "even";
    case FineGradingDescriptor::Family::Odd: return "odd";
    case FineGradingDescriptor::Family::P: return "p";
    }
    return "?";
}

std::vector<FineGradingDescriptor> enumerate_even_fine(std::size_t m, std::size_t n) {
    if (m < 1 || n < 1) throw std::invalid_argument("enumerate_even_fine: sizes must be positive");
    std::vector<FineGradingDescriptor> out;
    for (std::size_t l : divisors(std::gcd(m, n)))
        for (const auto& H : abelian_groups(static_cast<std::int64_t>(l))) {
            StandardPair sp = standard_pair(H);
            FineGradingDescriptor d;
            d.family = FineGradingDescriptor::Family::Even;
            d.ell = static_cast<std::int64_t>(l);
            d.H = H;
            d.k0 = m / l;
            d.k1 = n / l;
            std::size_t k = d.k0 + d.k1;
            FinGenAbGroup G(static_cast<int>(k), sp.T.torsion());
            auto e = unit_vectors(G, 0, k);
            d.even = make_even_spec(G, embedded_torsion_gens(G, k, sp.T.rank()), sp.beta.q(),
                                    {e.begin(), e.begin() + static_cast<std::ptrdiff_t>(d.k0)},
                                    {e.begin() + static_cast<std::ptrdiff_t>(d.k0), e.end()});
            d.universal = normalized(FinGenAbGroup(static_cast<int>(k) - 1, sp.T.torsion()));
            check_universal(d, universal_group(build_matrix_model(*d.even)));
            out.push_back(std::move(d));
        }
    return out;
}

std::vector<FineGradingDescriptor> enumerate_odd_fine(std::size_t n) {
    if (n < 1) throw std::invalid_argument("enumerate_odd_fine: size must be positive");
    std::vector<FineGradingDescriptor> out;
    for (std::size_t l : divisors(n))
        for (const auto& H : abelian_groups(2 * static_cast<std::int64_t>(l))) {
            StandardPair sp = standard_pair(H);
            const FinGenAbGroup& TH = sp.T;
            std::vector<GroupElement> inv;
            for (const auto& t : TH.elements())
                if (TH.element_order(t) == 2) inv.push_back(t);
            // orbits of Aut(T_H, beta_H) on the involutions
            std::vector<std::size_t> parent(inv.size());
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
                return parent[x] == x ? x : parent[x] = find(parent[x]);
            };
            for (std::size_t i = 0; i < inv.size(); ++i)
                for (std::size_t j = i + 1; j < inv.size(); ++j) {
                    if (find(i) == find(j)) continue;
                    if (beta_automorphism_exists(sp.beta, inv[i], inv[j])) parent[find(j)] = find(i);
                }
            std::size_t k = n / l;
            FinGenAbGroup G(static_cast<int>(k), TH.torsion());
            for (std::size_t i = 0; i < inv.size(); ++i) {
                if (find(i) != i) continue;
                FineGradingDescriptor d;
                d.family = FineGradingDescriptor::Family::Odd;
                d.ell = static_cast<std::int64_t>(l);
                d.H = H;
                d.t0 = inv[i];
                d.k = k;
                std::vector<std::pair<GroupElement, int>> gens;
                for (std::size_t r = 0; r < TH.rank(); ++r) {
                    GroupElement t = TH.generator(r);
                    int p = sp.beta.value(inv[i], t) == RootOfUnity::minus_one() ? 1 : 0;
                    gens.emplace_back(embed(G, k, t), p);
                }
                d.odd = make_odd_spec(G, gens, sp.beta.q(), unit_vectors(G, 0, k));
                d.universal = normalized(FinGenAbGroup(static_cast<int>(k) - 1, TH.torsion()));
                check_universal(d, universal_group(build_matrix_model(*d.odd)));
                out.push_back(std::move(d));
            }
        }
    return out;
}

std::vector<FineGradingDescriptor> enumerate_P_fine(std::size_t n) {
    if (n < 2) throw std::invalid_argument("enumerate_P_fine: n must be at least 2");
    std::vector<FineGradingDescriptor> out;
    for (int l = 0; (std::size_t{1} << l) <= n + 1; ++l) {
        std::size_t q = std::size_t{1} << l;
        if ((n + 1) % q != 0) continue;
        FineGradingDescriptor d;
        d.family = FineGradingDescriptor::Family::P;
        d.ell = l;
        d.k = (n + 1) / q;
        Bicharacter b = beta_ell(l);
        // free coordinates e_0, e_1, ..., e_k, then T_(l)
        FinGenAbGroup G(static_cast<int>(d.k) + 1, b.domain().torsion());
        auto e = unit_vectors(G, 0, d.k + 1);
        d.p = make_p_spec(G, embedded_torsion_gens(G, d.k + 1, b.domain().rank()), b.q(),
                          {e.begin() + 1, e.end()}, e[0]);
        d.universal = normalized(FinGenAbGroup(static_cast<int>(d.k), b.domain().torsion()));
        check_universal(d, universal_group(build_P_model(*d.p)));
        out.push_back(std::move(d));
    }
    return out;
}

} // namespace gradekit
