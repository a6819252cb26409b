#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradekit/matgrade.hpp"

namespace gradekit {

using RationalMatrix = std::vector<std::vector<Rational>>;

/**
 * (a b; c d) with a of size m x m and d of size n x n, stored densely.
 * Diagonal blocks are even, off-diagonal blocks odd.
 */
class BlockMatrix {
public:
    BlockMatrix() = default;
    BlockMatrix(std::size_t m, std::size_t n);
    BlockMatrix(std::size_t m, std::size_t n, RationalMatrix data);

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t size() const { return m_ + n_; }
    const RationalMatrix& data() const { return data_; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i][j]; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i][j]; }

    // parity of the block containing (i, j)
    int entry_parity(std::size_t i, std::size_t j) const { return (i < m_) != (j < m_) ? 1 : 0; }
    BlockMatrix parity_part(int p) const;
    // 0 or 1 for homogeneous nonzero matrices, nullopt otherwise
    std::optional<int> parity() const;

    BlockMatrix operator+(const BlockMatrix& o) const;
    BlockMatrix operator-(const BlockMatrix& o) const;
    BlockMatrix operator*(const BlockMatrix& o) const;
    BlockMatrix scaled(const Rational& c) const;
    BlockMatrix transpose() const;

    bool is_zero() const;
    bool operator==(const BlockMatrix& o) const = default;

private:
    void check_shape(const BlockMatrix& o) const;

    std::size_t m_ = 0, n_ = 0;
    RationalMatrix data_;
};

// tr a - tr d
Rational supertrace(const BlockMatrix& M);
// (a b; c d) -> (a^T -c^T; b^T d^T)
BlockMatrix supertranspose(const BlockMatrix& M);
// negates the odd blocks
BlockMatrix parity_automorphism(const BlockMatrix& M);
// [X, Y] = XY - (-1)^{|X||Y|} YX, extended bilinearly
BlockMatrix supercommutator(const BlockMatrix& X, const BlockMatrix& Y);

// Parameters of the image of a grading under L -> -L^{s-transpose}: (T, beta^{-1}, gamma^{-1}).
EvenAssoc superadjoint_spec(const EvenAssoc& spec);
OddAssocT superadjoint_spec(const OddAssocT& spec);
OddAssocT superadjoint_spec(const OddAssocG& spec);
AssocSpec superadjoint_spec(const AssocSpec& spec);

// The matrix model transported by X -> -X^{s-transpose}, degrees kept. Even models only.
GradedMatrixModel superadjoint_model(const GradedMatrixModel& model);

/**
 * Component dimensions of the induced grading on sl(m|n), or on psl(n|n) when m = n
 * (the identity line is dropped from the identity component).
 */
std::map<GroupElement, std::size_t> restrict_type_I(const GradedMatrixModel& model);
std::map<GroupElement, std::size_t> restrict_type_I(const AssocSpec& spec);

struct PSpec {
    FinGenAbGroup G;
    Subgroup T; // elementary 2-group
    Bicharacter beta;
    std::vector<GroupElement> gamma;
    GroupElement g0;
    std::size_t n = 0; // P(n), n + 1 = |gamma| sqrt|T|
};

PSpec make_p_spec(const FinGenAbGroup& G, const std::vector<GroupElement>& T_gens, const ExponentMatrix& q,
                  std::vector<GroupElement> gamma, const GroupElement& g0);
PSpec validate_p_spec(const PSpec& spec);
// Gamma(T, beta, gamma, g0 gamma^{-1}) on M(n+1, n+1)
EvenAssoc p_ambient_spec(const PSpec& spec);

// One homogeneous piece P(n)^z cap A_g; z = -1, 0, 1 is the canonical Z-degree.
struct PComponent {
    GroupElement degree;
    int z = 0;
    std::vector<BlockMatrix> basis;
};

struct PGradedModel {
    FinGenAbGroup group;
    std::size_t n = 0;
    std::vector<PComponent> components; // sorted by (degree, z)

    std::size_t dim() const;
    std::map<GroupElement, std::size_t> dims() const;
    std::map<int, std::size_t> z_dims() const;
};

// P(n) cap A_g for every g, P(n) = {(a b; c -a^T) : tr a = 0, b = b^T, c = -c^T}.
PGradedModel intersect_with_P(const GradedMatrixModel& ambient);
PGradedModel build_P_model(const PSpec& spec);

struct PReport {
    bool pass = true;
    std::size_t dim = 0;
    std::map<int, std::size_t> z_dims;
    std::vector<std::string> failures;
};

PReport verify_P_graded(const PGradedModel& model);

UniversalGroup universal_group(const PGradedModel& model);

// g0 with Xi(gamma1) = g0 Xi(gamma0^{-1}), when T is elementary 2; nullopt otherwise.
std::optional<GroupElement> P_restriction_condition(const EvenAssoc& spec);

/**
 * The P(n)-restriction of an even grading on M(n+1, n+1). When the restriction
 * condition holds, gamma1 is first replaced by g0 gamma0^{-1} (an isomorphic grading
 * whose blocks pair up under the form); otherwise the blocks are taken as given.
 */
PGradedModel intersect_with_P(const EvenAssoc& spec);

} // namespace gradekit
