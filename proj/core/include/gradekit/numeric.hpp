#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace gradekit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::int64_t to_int64(const BigInt& v);

inline std::int64_t mod_floor(std::int64_t a, std::int64_t d) {
    std::int64_t r = a % d;
    return r < 0 ? r + d : r;
}

std::string to_string(const Rational& q);

/**
 * e(q) for q in Q/Z, kept as a reduced fraction num/den with 0 <= num < den.
 * Multiplication of roots is addition of exponents.
 */
class RootOfUnity {
public:
    RootOfUnity() = default;
    RootOfUnity(std::int64_t num, std::int64_t den);

    static RootOfUnity one() { return {}; }
    static RootOfUnity minus_one() { return {1, 2}; }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }
    // multiplicative order, i.e. the reduced denominator
    std::int64_t order() const { return den_; }
    bool is_one() const { return num_ == 0; }

    RootOfUnity operator*(const RootOfUnity& o) const;
    RootOfUnity inverse() const { return {den_ - num_, den_}; }
    RootOfUnity pow(std::int64_t k) const;

    bool operator==(const RootOfUnity&) const = default;
    auto operator<=>(const RootOfUnity&) const = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

std::string to_string(const RootOfUnity& r);

} // namespace gradekit
