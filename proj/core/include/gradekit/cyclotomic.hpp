#pragma once

#include <cstdint>
#include <vector>

#include "gradekit/numeric.hpp"

namespace gradekit {

/**
 * Element of Q(zeta_L) in the power basis 1, zeta_L, ..., zeta_L^{phi(L)-1}.
 * Used where sums of roots of unity must be compared exactly
 * (Morita idempotents, spans of homogeneous components).
 */
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(const Rational& r);
    Cyclotomic(std::int64_t v) : Cyclotomic(Rational(v)) {}
    Cyclotomic(const Rational& coeff, const RootOfUnity& root);

    std::int64_t conductor() const { return L_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic inverse() const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    bool operator==(const Cyclotomic& o) const { return (*this - o).is_zero(); }

    // Same element written over a multiple of the conductor.
    Cyclotomic embed(std::int64_t L) const;

private:
    Cyclotomic(std::int64_t L, std::vector<Rational> c) : L_(L), c_(std::move(c)) {}
    static Cyclotomic from_poly(std::int64_t L, std::vector<Rational> p);

    std::int64_t L_ = 1;
    std::vector<Rational> c_{Rational(0)};
};

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t L);

using CycloVector = std::vector<Cyclotomic>;
using CycloMatrix = std::vector<CycloVector>;

// Rank of a family of vectors (rows) over Q(zeta).
std::size_t cyclo_rank(std::vector<CycloVector> rows);
// Whether v lies in the span of rows.
bool cyclo_in_span(const std::vector<CycloVector>& rows, const CycloVector& v);

CycloMatrix cyclo_identity(std::size_t n);
CycloMatrix cyclo_zero(std::size_t n);
CycloMatrix cyclo_mul(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix cyclo_add(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix cyclo_sub(const CycloMatrix& a, const CycloMatrix& b);
CycloMatrix cyclo_scale(const Cyclotomic& s, const CycloMatrix& a);
CycloVector cyclo_flatten(const CycloMatrix& a);
bool cyclo_is_zero(const CycloMatrix& a);

} // namespace gradekit
