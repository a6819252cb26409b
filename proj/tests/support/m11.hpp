#pragma once

// Every grading of M(1,1) by G = Z/2 x Z/2 with |T| <= 4: 16 even ones with T
// trivial and 24 odd ones (T of order 4 in G x Z/2 not contained in G).

#include <set>
#include <vector>

#include "gradekit/matgrade.hpp"

namespace m11 {

using namespace gradekit;

inline const FinGenAbGroup& group() {
    static const FinGenAbGroup G(0, {2, 2});
    return G;
}

inline std::vector<AssocSpec> all_specs() {
    const FinGenAbGroup& G = group();
    std::vector<AssocSpec> out;
    for (const auto& a : G.elements())
        for (const auto& b : G.elements()) out.emplace_back(make_even_spec(G, {}, {}, {a}, {b}));
    ParityExtension ext = make_parity_extension(G);
    std::set<std::vector<GroupElement>> seen;
    for (const auto& x : ext.sharp.elements())
        for (const auto& y : ext.sharp.elements()) {
            Subgroup T(ext.sharp, {x, y});
            if (T.order() != 4) continue;
            bool has_odd = false;
            for (const auto& t : T.elements()) has_odd = has_odd || ext.split(t).second == 1;
            if (!has_odd || !seen.insert(T.elements()).second) continue;
            std::vector<std::pair<GroupElement, int>> gens;
            for (const auto& b : T.basis()) gens.push_back(ext.split(b));
            ExponentMatrix q{{RootOfUnity::one(), RootOfUnity::minus_one()},
                             {RootOfUnity::minus_one(), RootOfUnity::one()}};
            for (const auto& g : G.elements()) out.emplace_back(make_odd_spec(G, gens, q, {g}));
        }
    return out;
}

} // namespace m11
