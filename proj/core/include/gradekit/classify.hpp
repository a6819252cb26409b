#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gradekit/matgrade.hpp"
#include "gradekit/superlie.hpp"

namespace gradekit {

struct IsoWitness {
    GroupElement g;
    bool swap = false; // gamma0 and gamma1 exchange roles (m = n only)
    int delta = 1;     // -1: composed with L -> -L^{s-transpose} (Lie only)
};

// Isomorphism of gradings on the associative superalgebra M(m, n).
std::optional<IsoWitness> iso_even_assoc(const EvenAssoc& s1, const EvenAssoc& s2);
std::optional<IsoWitness> iso_odd_assoc(const OddAssocT& s1, const OddAssocT& s2);
std::optional<IsoWitness> iso_odd_assoc(const OddAssocG& s1, const OddAssocG& s2);
// Dispatches on the variants; mixed odd variants are compared after build_odd_from_G.
std::optional<IsoWitness> iso_assoc(const AssocSpec& s1, const AssocSpec& s2);

// Isomorphism of the induced Type I gradings on sl(m|n) / psl(n|n).
std::optional<IsoWitness> iso_lie_typeI(const AssocSpec& s1, const AssocSpec& s2);

std::optional<IsoWitness> iso_P(const PSpec& s1, const PSpec& s2);

// Representatives of the abelian groups of order l, as products of prime-power cyclic groups.
std::vector<FinGenAbGroup> abelian_groups(std::int64_t l);

struct FineGradingDescriptor {
    enum class Family { Even, Odd, P };
    Family family = Family::Even;
    std::int64_t ell = 1;
    FinGenAbGroup H;          // even / odd families
    GroupElement t0;          // odd family, coordinates in T_H
    std::size_t k0 = 0, k1 = 0; // even family
    std::size_t k = 0;        // odd and P families
    FinGenAbGroup universal;  // invariant-factor form

    std::optional<EvenAssoc> even;
    std::optional<OddAssocT> odd;
    std::optional<PSpec> p;
};

std::string family_name(FineGradingDescriptor::Family f);

std::vector<FineGradingDescriptor> enumerate_even_fine(std::size_t m, std::size_t n);
std::vector<FineGradingDescriptor> enumerate_odd_fine(std::size_t n);
std::vector<FineGradingDescriptor> enumerate_P_fine(std::size_t n);

} // namespace gradekit
