#pragma once

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gradekit/abgroup.hpp"
#include "gradekit/bichar.hpp"
#include "gradekit/graddiv.hpp"

namespace gradekit {

// Raised for malformed or inconsistent grading parameters.
class SpecError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * G# = G x Z_2, kept in invariant-factor form together with the maps
 * relating it to G and Z_2.
 */
struct ParityExtension {
    FinGenAbGroup base;
    FinGenAbGroup sharp;
    GroupHom embedding; // G -> G#, g -> (g, 0)
    GroupHom parity;    // G# -> Z_2
    GroupHom to_base;   // G# -> G
    GroupElement odd;   // (0, 1)

    GroupElement lift(const GroupElement& g, int p) const;
    std::pair<GroupElement, int> split(const GroupElement& x) const;
};

ParityExtension make_parity_extension(const FinGenAbGroup& G);

// Bicharacter of a subgroup, always stored on T.basis().
RootOfUnity value_on(const Subgroup& T, const Bicharacter& beta, const GroupElement& x, const GroupElement& y);

// Canonicalizes beta given by its values q on arbitrary generators of T; throws SpecError if inconsistent.
Bicharacter bichar_on_generators(const Subgroup& T, const std::vector<GroupElement>& gens, const ExponentMatrix& q);

// Equality of (T, beta) and (T', beta') as subgroups with bicharacters.
bool same_bicharacter(const Subgroup& T1, const Bicharacter& b1, const Subgroup& T2, const Bicharacter& b2);

struct EvenAssoc {
    FinGenAbGroup G;
    Subgroup T;
    Bicharacter beta;
    std::vector<GroupElement> gamma0, gamma1;
};

// T lives in make_parity_extension(G).sharp; gamma entries in G.
struct OddAssocT {
    FinGenAbGroup G;
    Subgroup T;
    Bicharacter beta;
    std::vector<GroupElement> gamma;
};

// Tbar lives in G / <t0>.
struct OddAssocG {
    FinGenAbGroup G;
    GroupElement t0;
    Subgroup Tbar;
    Bicharacter beta_bar;
    GroupElement u;
    std::vector<GroupElement> gamma;
};

using AssocSpec = std::variant<EvenAssoc, OddAssocT, OddAssocG>;

EvenAssoc make_even_spec(const FinGenAbGroup& G, const std::vector<GroupElement>& T_gens, const ExponentMatrix& q,
                         std::vector<GroupElement> gamma0, std::vector<GroupElement> gamma1);
// T_gens are elements of G# written as lift(g, p).
OddAssocT make_odd_spec(const FinGenAbGroup& G, const std::vector<std::pair<GroupElement, int>>& T_gens,
                        const ExponentMatrix& q, std::vector<GroupElement> gamma);
// Tbar_gens are representatives in G of generators of Tbar.
OddAssocG make_odd_g_spec(const FinGenAbGroup& G, const GroupElement& t0, const std::vector<GroupElement>& Tbar_gens,
                          const ExponentMatrix& q, const GroupElement& u, std::vector<GroupElement> gamma);

// Sizes (m, n) of the superalgebra M(m, n) graded by the spec.
std::pair<std::size_t, std::size_t> spec_sizes(const AssocSpec& spec);

EvenAssoc validate_spec(const EvenAssoc& spec);
OddAssocT validate_spec(const OddAssocT& spec);
OddAssocG validate_spec(const OddAssocG& spec);
AssocSpec validate_spec(const AssocSpec& spec);

struct CosetMultiset {
    FinGenAbGroup G;
    Subgroup T;
    std::map<GroupElement, std::size_t> counts;

    std::size_t total() const;
    CosetMultiset shifted(const GroupElement& g) const;
    bool operator==(const CosetMultiset& o) const { return counts == o.counts; }
};

CosetMultiset xi_multiset(const FinGenAbGroup& G, const Subgroup& T, const std::vector<GroupElement>& gamma);

struct ParityQuotient {
    GroupElement t0;
    FinGenAbGroup Gbar;
    GroupHom theta; // G -> Gbar
};

ParityQuotient parity_quotient(const FinGenAbGroup& G, const GroupElement& t0);

struct ModelBasisElement {
    std::size_t bi = 0, bj = 0; // block position
    std::size_t t = 0;          // index into GradedMatrixModel::division
    Scalar coeff;
    GroupElement degree;
    int parity = 0;
};

/**
 * Homogeneous basis of M(m, n) made of the matrices coeff * E_{bi,bj} (x) D_t.
 * Parity is the eigenvalue sign of the involution `upsilon` (its +1 eigenspace is U_0).
 */
struct GradedMatrixModel {
    FinGenAbGroup group;
    std::size_t m = 0, n = 0;
    std::size_t blocks = 0, s = 0;
    FinGenAbGroup division_group;                // abstract T
    std::vector<GroupElement> division_elements; // coordinates in division_group
    std::vector<MonomialMatrix> division;        // D_t
    std::vector<ModelBasisElement> basis;
    MonomialMatrix upsilon;

    std::size_t dim() const { return m + n; }
    PartialMonomial matrix(std::size_t k) const;
};

GradedMatrixModel build_matrix_model(const EvenAssoc& spec);
GradedMatrixModel build_matrix_model(const OddAssocT& spec);
GradedMatrixModel build_matrix_model(const OddAssocG& spec);
GradedMatrixModel build_matrix_model(const AssocSpec& spec);

struct GradingReport {
    bool pass = true;
    std::vector<std::string> failures;
    std::vector<std::pair<std::size_t, std::size_t>> offending_pairs;
    std::set<GroupElement> support;
    std::set<GroupElement> support_even, support_odd;
};

GradingReport verify_grading(const GradedMatrixModel& model);

GradedMatrixModel coarsen(const GradedMatrixModel& model, const GroupHom& alpha);

// The G-component of the parity element t0 (its parity component is 0).
GroupElement parity_element(const OddAssocT& spec);

bool odd_existence_check(const FinGenAbGroup& G, const GroupElement& t0, const Subgroup& Tbar,
                         const Bicharacter& beta_bar);

// Pieces of the G-description: T+ = theta^{-1}(Tbar), the fixed character chi and the element a.
struct OddCharacterData {
    ParityQuotient pq;
    Subgroup Tplus;                 // in G
    std::vector<std::int64_t> chi;  // chi(basis_i) = e(chi_i / d_i) on Tplus.basis()
    GroupElement a;
};

OddCharacterData odd_character_data(const FinGenAbGroup& G, const GroupElement& t0, const Subgroup& Tbar,
                                    const Bicharacter& beta_bar);
RootOfUnity character_value(const OddCharacterData& d, const GroupElement& x);

OddAssocT build_odd_from_G(const OddAssocG& spec);

EvenAssoc finest_even_coarsening(const OddAssocT& spec);
ParityQuotient parity_quotient(const OddAssocT& spec);

// theta(T^[2]) and (theta(T+_[2]))' inside Gbar, computed independently.
std::pair<Subgroup, Subgroup> square_complement_sides(const OddAssocT& spec);

bool is_even_grading(const GradedMatrixModel& model);

struct UniversalGroup {
    FinGenAbGroup group;
    std::vector<GroupElement> support; // sorted
    std::vector<GroupElement> images;  // image of each support element
};

UniversalGroup universal_group(const GradedMatrixModel& model);

// Recovers parameters (T, beta, gamma0, gamma1) of an even model over its grading group.
EvenAssoc extract_even_spec(const GradedMatrixModel& model);

} // namespace gradekit
