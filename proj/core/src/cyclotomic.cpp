#include "gradekit/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace gradekit {

namespace {

using IntPoly = std::vector<std::int64_t>;

IntPoly poly_divide_exact(IntPoly num, const IntPoly& den) {
    // den monic
    std::size_t dn = den.size() - 1;
    if (num.size() < den.size()) return {0};
    IntPoly q(num.size() - dn, 0);
    for (std::size_t k = num.size(); k-- > dn;) {
        std::int64_t c = num[k];
        q[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
    }
    return q;
}

} // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t L) {
    static std::mutex mu;
    static std::map<std::int64_t, IntPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(L);
        if (it != cache.end()) return it->second;
    }
    if (L < 1) throw std::invalid_argument("cyclotomic polynomial: bad conductor");
    IntPoly p(static_cast<std::size_t>(L) + 1, 0);
    p[0] = -1;
    p[L] = 1;
    for (std::int64_t d = 1; d < L; ++d)
        if (L % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(L, std::move(p)).first->second;
}

Cyclotomic Cyclotomic::from_poly(std::int64_t L, std::vector<Rational> p) {
    const auto& phi = cyclotomic_polynomial(L);
    std::size_t deg = phi.size() - 1;
    for (std::size_t k = p.size(); k-- > deg;) {
        if (p[k] == 0) continue;
        Rational c = p[k];
        for (std::size_t j = 0; j <= deg; ++j)
            if (phi[j] != 0) p[k - deg + j] -= c * phi[j];
    }
    p.resize(deg, Rational(0));
    return {L, std::move(p)};
}

Cyclotomic::Cyclotomic(const Rational& r) : L_(1), c_{r} {}

Cyclotomic::Cyclotomic(const Rational& coeff, const RootOfUnity& root) {
    std::vector<Rational> p(static_cast<std::size_t>(root.num()) + 1, Rational(0));
    p[root.num()] = coeff;
    *this = from_poly(root.den(), std::move(p));
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic number is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::embed(std::int64_t L) const {
    if (L == L_) return *this;
    if (L % L_ != 0) throw std::invalid_argument("cyclotomic embed: conductor does not divide");
    std::int64_t f = L / L_;
    std::vector<Rational> p(c_.empty() ? 1 : (c_.size() - 1) * f + 1, Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) p[k * f] = c_[k];
    return from_poly(L, std::move(p));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    std::int64_t L = std::lcm(L_, o.L_);
    Cyclotomic a = embed(L), b = o.embed(L);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic a = *this;
    for (auto& x : a.c_) x = -x;
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (L_ == 1) {
        Cyclotomic b = o;
        for (auto& x : b.c_) x *= c_[0];
        return b;
    }
    if (o.L_ == 1) {
        Cyclotomic a = *this;
        for (auto& x : a.c_) x *= o.c_[0];
        return a;
    }
    std::int64_t L = std::lcm(L_, o.L_);
    Cyclotomic a = embed(L), b = o.embed(L);
    std::vector<Rational> p(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            if (b.c_[j] != 0) p[i + j] += a.c_[i] * b.c_[j];
    }
    return from_poly(L, std::move(p));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw std::domain_error("cyclotomic inverse of zero");
    std::size_t n = c_.size();
    if (L_ == 1) return Cyclotomic(Rational(1) / c_[0]);
    // Solve (multiplication by *this) y = 1 over Q.
    std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> basis(n, Rational(0));
        basis[j] = 1;
        Cyclotomic col = *this * Cyclotomic(L_, basis);
        for (std::size_t i = 0; i < n; ++i) M[i][j] = col.c_[i];
    }
    M[0][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && M[p][c] == 0) ++p;
        if (p == n) throw std::logic_error("cyclotomic inverse: singular multiplication map");
        std::swap(M[p], M[c]);
        Rational inv = Rational(1) / M[c][c];
        for (auto& x : M[c]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || M[r][c] == 0) continue;
            Rational f = M[r][c];
            for (std::size_t k = c; k <= n; ++k) M[r][k] -= f * M[c][k];
        }
    }
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = M[i][n];
    return {L_, y};
}

namespace {

// Reduce rows to echelon form in place; returns rank.
std::size_t eliminate(std::vector<CycloVector>& rows) {
    std::size_t rank = 0;
    if (rows.empty()) return 0;
    std::size_t width = rows[0].size();
    for (std::size_t c = 0; c < width && rank < rows.size(); ++c) {
        std::size_t p = rank;
        while (p < rows.size() && rows[p][c].is_zero()) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        Cyclotomic inv = rows[rank][c].inverse();
        for (std::size_t k = c; k < width; ++k)
            if (!rows[rank][k].is_zero()) rows[rank][k] = rows[rank][k] * inv;
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][c].is_zero()) continue;
            Cyclotomic f = rows[r][c];
            for (std::size_t k = c; k < width; ++k)
                if (!rows[rank][k].is_zero()) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace

std::size_t cyclo_rank(std::vector<CycloVector> rows) { return eliminate(rows); }

bool cyclo_in_span(const std::vector<CycloVector>& rows, const CycloVector& v) {
    std::vector<CycloVector> a = rows;
    std::size_t r = eliminate(a);
    a.resize(r);
    a.push_back(v);
    return eliminate(a) == r;
}

CycloMatrix cyclo_identity(std::size_t n) {
    CycloMatrix m = cyclo_zero(n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = Cyclotomic(1);
    return m;
}

CycloMatrix cyclo_zero(std::size_t n) { return CycloMatrix(n, CycloVector(n, Cyclotomic(0))); }

CycloMatrix cyclo_mul(const CycloMatrix& a, const CycloMatrix& b) {
    std::size_t n = a.size();
    CycloMatrix c = cyclo_zero(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

CycloMatrix cyclo_add(const CycloMatrix& a, const CycloMatrix& b) {
    CycloMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += b[i][j];
    return c;
}

CycloMatrix cyclo_sub(const CycloMatrix& a, const CycloMatrix& b) {
    CycloMatrix c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c[i][j] -= b[i][j];
    return c;
}

CycloMatrix cyclo_scale(const Cyclotomic& s, const CycloMatrix& a) {
    CycloMatrix c = a;
    for (auto& row : c)
        for (auto& x : row)
            if (!x.is_zero()) x = s * x;
    return c;
}

CycloVector cyclo_flatten(const CycloMatrix& a) {
    CycloVector v;
    for (const auto& row : a) v.insert(v.end(), row.begin(), row.end());
    return v;
}

bool cyclo_is_zero(const CycloMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

} // namespace gradekit
