#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradekit/bichar.hpp"
#include "gradekit/cyclotomic.hpp"

namespace gradekit {

/**
 * Nonzero scalar c * e(q) with c a positive rational; signs are folded into
 * the root of unity so equal scalars have equal representations.
 */
class Scalar {
public:
    Scalar() = default;
    Scalar(Rational coeff, RootOfUnity root = {});
    Scalar(const RootOfUnity& root) : Scalar(Rational(1), root) {}

    const Rational& coeff() const { return coeff_; }
    const RootOfUnity& root() const { return root_; }
    bool is_one() const { return coeff_ == 1 && root_.is_one(); }

    Scalar operator*(const Scalar& o) const { return {coeff_ * o.coeff_, root_ * o.root_}; }
    Scalar inverse() const { return {Rational(1) / coeff_, root_.inverse()}; }
    Scalar pow(std::int64_t k) const;
    Scalar operator-() const { return {coeff_, root_ * RootOfUnity::minus_one()}; }

    Cyclotomic to_cyclotomic() const { return {coeff_, root_}; }

    bool operator==(const Scalar&) const = default;

private:
    Rational coeff_{1};
    RootOfUnity root_;
};

std::string to_string(const Scalar& s);

/**
 * Generalized permutation matrix: column j has its single nonzero entry
 * scalars[j] in row perm[j].
 */
class MonomialMatrix {
public:
    MonomialMatrix() = default;
    MonomialMatrix(std::vector<std::size_t> perm, std::vector<Scalar> scalars);

    static MonomialMatrix identity(std::size_t n);
    static MonomialMatrix diagonal(std::vector<Scalar> d);

    std::size_t size() const { return perm_.size(); }
    const std::vector<std::size_t>& perm() const { return perm_; }
    const std::vector<Scalar>& scalars() const { return scalars_; }

    // nullopt for a zero entry
    std::optional<Scalar> entry(std::size_t row, std::size_t col) const;

    MonomialMatrix operator*(const MonomialMatrix& o) const;
    MonomialMatrix scaled(const Scalar& s) const;
    MonomialMatrix inverse() const;
    MonomialMatrix transpose() const;

    bool is_identity() const;
    // lambda with *this == lambda * other
    std::optional<Scalar> ratio_to(const MonomialMatrix& other) const;

    CycloMatrix to_cyclo() const;

    bool operator==(const MonomialMatrix&) const = default;

private:
    std::vector<std::size_t> perm_;
    std::vector<Scalar> scalars_;
};

MonomialMatrix monomial_mul(const MonomialMatrix& x, const MonomialMatrix& y);

/**
 * At most one nonzero entry per row and per column; rows()[j] < 0 marks a zero column.
 * Matrix units tensored with monomial matrices live here.
 */
class PartialMonomial {
public:
    PartialMonomial() = default;
    explicit PartialMonomial(std::size_t n) : rows_(n, -1), scalars_(n) {}
    PartialMonomial(const MonomialMatrix& m);

    // E_{bi,bj} (blocks x blocks) tensor D, scaled by c
    static PartialMonomial block(std::size_t blocks, std::size_t bi, std::size_t bj, const MonomialMatrix& D,
                                 const Scalar& c = {});

    std::size_t size() const { return rows_.size(); }
    const std::vector<std::ptrdiff_t>& rows() const { return rows_; }
    const std::vector<Scalar>& scalars() const { return scalars_; }
    void set(std::size_t row, std::size_t col, const Scalar& s);

    bool is_zero() const;
    PartialMonomial operator*(const PartialMonomial& o) const;
    PartialMonomial scaled(const Scalar& s) const;
    PartialMonomial transpose() const;
    std::optional<Scalar> ratio_to(const PartialMonomial& other) const;
    // sum of diagonal entries
    Cyclotomic trace() const;
    CycloMatrix to_cyclo() const;

    bool operator==(const PartialMonomial& o) const;

private:
    std::vector<std::ptrdiff_t> rows_;
    std::vector<Scalar> scalars_;
};

/**
 * Matrix model of the graded division algebra with parameters (T, beta):
 * rows and columns are labelled by B in T = A x B, and
 * X_{ab} = sum_{b'} beta(a, b + b') E_{b+b', b'}.
 */
class StandardRealization {
public:
    StandardRealization() = default;
    explicit StandardRealization(Bicharacter beta);

    const Bicharacter& beta() const { return beta_; }
    const FinGenAbGroup& group() const { return beta_.domain(); }
    const DualPairDecomposition& pairs() const { return pairs_; }
    const std::vector<GroupElement>& labels() const { return labels_; }
    std::size_t size() const { return labels_.size(); }

    // Elements of T in lexicographic order; X(i) realizes elements()[i].
    const std::vector<GroupElement>& elements() const { return elements_; }
    std::size_t index_of(const GroupElement& t) const;
    const MonomialMatrix& X(std::size_t i) const { return X_.at(i); }
    const MonomialMatrix& X(const GroupElement& t) const { return X_.at(index_of(t)); }

    // X_s X_t = sigma(s, t) X_{s+t}
    Scalar cocycle(const GroupElement& s, const GroupElement& t) const;

private:
    Bicharacter beta_;
    DualPairDecomposition pairs_;
    std::vector<GroupElement> labels_;
    std::vector<GroupElement> elements_;
    std::map<GroupElement, std::size_t> index_;
    std::vector<MonomialMatrix> X_;
};

StandardRealization build_standard_realization(const Bicharacter& beta);

struct RealizationReport {
    bool commutation = true;
    bool invertible = true;
    bool multiplicative = true;
    bool identity = true;
    bool transpose_formula = true;
    // Only evaluated for elementary 2-groups: X_t^T is a multiple of X_t.
    bool transpose_preserves_degree = true;
    std::vector<std::string> failures;

    bool pass() const {
        return commutation && invertible && multiplicative && identity && transpose_formula &&
               transpose_preserves_degree;
    }
};

RealizationReport verify_realization(const StandardRealization& R);

} // namespace gradekit
