#include "gradekit/numeric.hpp"

namespace gradekit {

std::int64_t to_int64(const BigInt& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits");
    return v.convert_to<std::int64_t>();
}

std::string to_string(const Rational& q) {
    return q.str();
}

RootOfUnity::RootOfUnity(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw std::invalid_argument("root of unity: denominator must be positive");
    std::int64_t n = mod_floor(num, den);
    std::int64_t g = std::gcd(n, den);
    if (n == 0) {
        num_ = 0;
        den_ = 1;
    } else {
        num_ = n / g;
        den_ = den / g;
    }
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
    std::int64_t l = std::lcm(den_, o.den_);
    return {num_ * (l / den_) + o.num_ * (l / o.den_), l};
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
    // reduce k first so the product stays small
    std::int64_t kk = mod_floor(k, den_);
    return {num_ * kk, den_};
}

std::string to_string(const RootOfUnity& r) {
    return "e(" + std::to_string(r.num()) + "/" + std::to_string(r.den()) + ")";
}

} // namespace gradekit
