#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gradekit/numeric.hpp"

namespace gradekit {

// Coordinates: free part first, then one coordinate per invariant factor.
using GroupElement = std::vector<std::int64_t>;
using IntMatrix = std::vector<std::vector<BigInt>>;

/**
 * Z^r x Z/d_1 x ... x Z/d_s with d_1 | d_2 | ... | d_s, every d_i >= 2.
 */
class FinGenAbGroup {
public:
    FinGenAbGroup() = default;
    FinGenAbGroup(int free_rank, std::vector<std::int64_t> torsion);

    static FinGenAbGroup trivial() { return {}; }
    static FinGenAbGroup integers(int r = 1) { return {r, {}}; }
    static FinGenAbGroup cyclic(std::int64_t d);
    // Normalizes an arbitrary list of cyclic orders (0 = infinite cyclic) to invariant factors.
    static FinGenAbGroup from_cyclic_orders(const std::vector<std::int64_t>& orders);

    int free_rank() const { return free_rank_; }
    const std::vector<std::int64_t>& torsion() const { return torsion_; }
    std::size_t rank() const { return static_cast<std::size_t>(free_rank_) + torsion_.size(); }
    bool is_finite() const { return free_rank_ == 0; }
    bool is_trivial() const { return rank() == 0; }
    std::int64_t order() const;
    // 0 for a free coordinate
    std::int64_t modulus(std::size_t i) const;

    GroupElement zero() const { return GroupElement(rank(), 0); }
    GroupElement generator(std::size_t i) const;
    GroupElement reduce(GroupElement x) const;
    bool is_valid(const GroupElement& x) const;

    GroupElement add(const GroupElement& x, const GroupElement& y) const;
    GroupElement neg(const GroupElement& x) const;
    GroupElement sub(const GroupElement& x, const GroupElement& y) const;
    GroupElement scale(std::int64_t k, const GroupElement& x) const;

    std::optional<std::int64_t> element_order(const GroupElement& x) const;
    // Finite groups only; lexicographic order.
    std::vector<GroupElement> elements() const;
    std::int64_t exponent() const;
    bool is_elementary_two() const;

    bool operator==(const FinGenAbGroup&) const = default;

private:
    void check(const GroupElement& x) const;

    int free_rank_ = 0;
    std::vector<std::int64_t> torsion_;
};

FinGenAbGroup direct_product(const FinGenAbGroup& a, const FinGenAbGroup& b);

GroupElement compose_elements(const FinGenAbGroup& G, const GroupElement& x, const GroupElement& y);
std::optional<GroupElement> solve_square(const FinGenAbGroup& G, const GroupElement& a);

struct SmithForm {
    IntMatrix U, S, V;
    IntMatrix V_inv;
    std::size_t rank = 0;
};

// S = U * M * V, S diagonal with a nonnegative divisibility chain on the first `rank` entries.
SmithForm smith_normal_form(const IntMatrix& M);

IntMatrix to_int_matrix(const std::vector<std::vector<std::int64_t>>& rows);

class GroupHom {
public:
    GroupHom() = default;
    GroupHom(FinGenAbGroup source, FinGenAbGroup target, std::vector<GroupElement> images);

    static GroupHom identity(const FinGenAbGroup& G);
    static GroupHom zero(const FinGenAbGroup& source, const FinGenAbGroup& target);

    const FinGenAbGroup& source() const { return source_; }
    const FinGenAbGroup& target() const { return target_; }
    const std::vector<GroupElement>& images() const { return images_; }

    GroupElement apply(const GroupElement& x) const;
    // (*this) after `first`
    GroupHom after(const GroupHom& first) const;

    bool operator==(const GroupHom&) const = default;

private:
    FinGenAbGroup source_, target_;
    std::vector<GroupElement> images_;
};

struct Presentation {
    FinGenAbGroup group;
    GroupHom projection; // from Z^n
    // section[k]: a vector of Z^n projecting onto the k-th generator of `group`
    std::vector<std::vector<std::int64_t>> section;
};

Presentation finitely_presented_quotient(std::size_t num_gens,
                                         const std::vector<std::vector<std::int64_t>>& relations);

class Subgroup {
public:
    Subgroup() = default;
    Subgroup(FinGenAbGroup parent, std::vector<GroupElement> gens);

    static Subgroup trivial(const FinGenAbGroup& G) { return {G, {}}; }
    static Subgroup whole(const FinGenAbGroup& G);

    const FinGenAbGroup& parent() const { return parent_; }
    const std::vector<GroupElement>& generators() const { return gens_; }

    bool contains(const GroupElement& x) const;
    bool is_subgroup_of(const Subgroup& other) const;
    bool operator==(const Subgroup& other) const;

    // Isomorphism type and an invariant-factor basis (elements of the parent) realizing it.
    const FinGenAbGroup& structure() const { return data_->structure; }
    const std::vector<GroupElement>& basis() const { return data_->basis; }
    GroupElement coordinates(const GroupElement& x) const;
    GroupElement from_coordinates(const GroupElement& c) const;

    bool is_finite() const { return structure().is_finite(); }
    std::int64_t order() const { return structure().order(); }
    // Finite subgroups only; sorted lexicographically.
    const std::vector<GroupElement>& elements() const;

    const FinGenAbGroup& quotient() const { return data_->quotient; }
    const GroupHom& projection() const { return data_->projection; }

private:
    struct Data {
        SmithForm snf;
        FinGenAbGroup structure;
        std::vector<GroupElement> basis;
        // coordinate change from lattice coordinates to structure coordinates
        IntMatrix V2;
        std::vector<std::size_t> kept;
        FinGenAbGroup quotient;
        GroupHom projection;
        std::vector<GroupElement> elements;
    };

    FinGenAbGroup parent_;
    std::vector<GroupElement> gens_;
    std::shared_ptr<const Data> data_;
};

struct SubgroupQuotient {
    Subgroup subgroup;
    FinGenAbGroup quotient;
    GroupHom projection;
};

SubgroupQuotient subgroup_and_quotient(const FinGenAbGroup& G, const std::vector<GroupElement>& gens);

Subgroup kernel(const GroupHom& f);
Subgroup preimage(const GroupHom& f, const Subgroup& H);
Subgroup image(const GroupHom& f, const Subgroup& H);
Subgroup intersect(const Subgroup& A, const Subgroup& B);

// (A^[2], A_[2]) as subgroups of the parent.
std::pair<Subgroup, Subgroup> squares_and_two_torsion(const FinGenAbGroup& G);
std::pair<Subgroup, Subgroup> squares_and_two_torsion(const Subgroup& A);

// Generators depending only on the subgroup (Hermite normal form of its lattice).
std::vector<GroupElement> canonical_generators(const Subgroup& H);

GroupElement coset_canonical_rep(const FinGenAbGroup& G, const Subgroup& T, const GroupElement& x);

} // namespace gradekit
