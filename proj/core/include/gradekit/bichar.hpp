#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gradekit/abgroup.hpp"
#include "gradekit/numeric.hpp"

namespace gradekit {

using ExponentMatrix = std::vector<std::vector<RootOfUnity>>;

/**
 * beta(t_i, t_j) = e(Q_ij) on the standard generators of a finite group in
 * invariant-factor form.
 */
class Bicharacter {
public:
    Bicharacter() = default;
    Bicharacter(FinGenAbGroup domain, ExponentMatrix q);

    const FinGenAbGroup& domain() const { return domain_; }
    const ExponentMatrix& q() const { return q_; }

    RootOfUnity value(const GroupElement& s, const GroupElement& t) const;
    Bicharacter inverse() const;

    bool operator==(const Bicharacter&) const = default;

private:
    FinGenAbGroup domain_;
    ExponentMatrix q_;
};

RootOfUnity bichar_value(const Bicharacter& beta, const GroupElement& s, const GroupElement& t);

struct BicharacterReport {
    bool well_defined = false;
    bool alternating = false;
};

BicharacterReport validate_bicharacter(const Bicharacter& beta);

struct RadicalResult {
    Subgroup radical;
    bool nondegenerate = false;
};

RadicalResult radical(const Bicharacter& beta);
bool is_nondegenerate_alternating(const Bicharacter& beta);

// A' = {t : beta(t, A) = 1}, as a subgroup of beta.domain().
Subgroup orthogonal_complement(const Bicharacter& beta, const Subgroup& A);

struct DualPairDecomposition {
    std::vector<std::pair<GroupElement, GroupElement>> pairs;
    Subgroup A, B;
};

DualPairDecomposition symplectic_decomposition(const Bicharacter& beta);
bool check_dual_pairs(const Bicharacter& beta, const DualPairDecomposition& d);

struct StandardPair {
    FinGenAbGroup T;
    Bicharacter beta;
};

// T_H = H x dual(H), generators interleaved (h_1, chi_1, h_2, chi_2, ...), beta(h_i, chi_i) = e(1/d_i).
StandardPair standard_pair(const FinGenAbGroup& H);

// beta_(l) on Z_2^{2l}: (-1)^{sum x_i y_{2l-i+1}}.
Bicharacter beta_ell(int l);

// Standard alternating form on Z/d x Z/d with beta(t_1, t_2) = e(1/d).
Bicharacter symplectic_cyclic(std::int64_t d);

std::optional<GroupHom> beta_automorphism_exists(const Bicharacter& beta, const GroupElement& t0,
                                                 const GroupElement& t0p);

} // namespace gradekit
