#include "gradekit/graddiv.hpp"

#include <stdexcept>

namespace gradekit {

Scalar::Scalar(Rational coeff, RootOfUnity root) : coeff_(std::move(coeff)), root_(root) {
    if (coeff_ == 0) throw std::invalid_argument("scalar must be nonzero");
    if (coeff_ < 0) {
        coeff_ = -coeff_;
        root_ = root_ * RootOfUnity::minus_one();
    }
}

Scalar Scalar::pow(std::int64_t k) const {
    if (k < 0) return inverse().pow(-k);
    Rational c = 1;
    for (std::int64_t i = 0; i < k; ++i) c *= coeff_;
    return {c, root_.pow(k)};
}

std::string to_string(const Scalar& s) {
    if (s.root().is_one()) return to_string(s.coeff());
    std::string r = to_string(s.root());
    return s.coeff() == 1 ? r : to_string(s.coeff()) + "*" + r;
}

// ---------------------------------------------------------------- MonomialMatrix

MonomialMatrix::MonomialMatrix(std::vector<std::size_t> perm, std::vector<Scalar> scalars)
    : perm_(std::move(perm)), scalars_(std::move(scalars)) {
    if (perm_.size() != scalars_.size()) throw std::invalid_argument("monomial matrix: size mismatch");
    std::vector<bool> seen(perm_.size(), false);
    for (auto r : perm_) {
        if (r >= perm_.size() || seen[r]) throw std::invalid_argument("monomial matrix: not a permutation");
        seen[r] = true;
    }
}

MonomialMatrix MonomialMatrix::identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return {p, std::vector<Scalar>(n)};
}

MonomialMatrix MonomialMatrix::diagonal(std::vector<Scalar> d) {
    std::vector<std::size_t> p(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) p[i] = i;
    return {p, std::move(d)};
}

std::optional<Scalar> MonomialMatrix::entry(std::size_t row, std::size_t col) const {
    if (perm_.at(col) != row) return std::nullopt;
    return scalars_[col];
}

MonomialMatrix MonomialMatrix::operator*(const MonomialMatrix& o) const {
    if (size() != o.size()) throw std::invalid_argument("monomial product: size mismatch");
    std::size_t n = size();
    std::vector<std::size_t> p(n);
    std::vector<Scalar> s(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t k = o.perm_[j];
        p[j] = perm_[k];
        s[j] = scalars_[k] * o.scalars_[j];
    }
    return {p, s};
}

MonomialMatrix MonomialMatrix::scaled(const Scalar& c) const {
    MonomialMatrix m = *this;
    for (auto& s : m.scalars_) s = c * s;
    return m;
}

MonomialMatrix MonomialMatrix::transpose() const {
    std::size_t n = size();
    std::vector<std::size_t> p(n);
    std::vector<Scalar> s(n);
    for (std::size_t j = 0; j < n; ++j) {
        p[perm_[j]] = j;
        s[perm_[j]] = scalars_[j];
    }
    return {p, s};
}

MonomialMatrix MonomialMatrix::inverse() const {
    MonomialMatrix t = transpose();
    for (auto& s : t.scalars_) s = s.inverse();
    return t;
}

bool MonomialMatrix::is_identity() const {
    for (std::size_t j = 0; j < size(); ++j)
        if (perm_[j] != j || !scalars_[j].is_one()) return false;
    return true;
}

std::optional<Scalar> MonomialMatrix::ratio_to(const MonomialMatrix& other) const {
    if (size() != other.size() || perm_ != other.perm_) return std::nullopt;
    if (size() == 0) return Scalar();
    Scalar lambda = scalars_[0] * other.scalars_[0].inverse();
    for (std::size_t j = 1; j < size(); ++j)
        if (!(scalars_[j] == lambda * other.scalars_[j])) return std::nullopt;
    return lambda;
}

CycloMatrix MonomialMatrix::to_cyclo() const {
    CycloMatrix m = cyclo_zero(size());
    for (std::size_t j = 0; j < size(); ++j) m[perm_[j]][j] = scalars_[j].to_cyclotomic();
    return m;
}

MonomialMatrix monomial_mul(const MonomialMatrix& x, const MonomialMatrix& y) { return x * y; }

// ---------------------------------------------------------------- PartialMonomial

PartialMonomial::PartialMonomial(const MonomialMatrix& m) : rows_(m.size()), scalars_(m.scalars()) {
    for (std::size_t j = 0; j < m.size(); ++j) rows_[j] = static_cast<std::ptrdiff_t>(m.perm()[j]);
}

PartialMonomial PartialMonomial::block(std::size_t blocks, std::size_t bi, std::size_t bj, const MonomialMatrix& D,
                                       const Scalar& c) {
    std::size_t s = D.size();
    PartialMonomial p(blocks * s);
    for (std::size_t col = 0; col < s; ++col)
        p.set(bi * s + D.perm()[col], bj * s + col, c * D.scalars()[col]);
    return p;
}

void PartialMonomial::set(std::size_t row, std::size_t col, const Scalar& s) {
    rows_.at(col) = static_cast<std::ptrdiff_t>(row);
    scalars_[col] = s;
}

bool PartialMonomial::is_zero() const {
    for (auto r : rows_)
        if (r >= 0) return false;
    return true;
}

PartialMonomial PartialMonomial::operator*(const PartialMonomial& o) const {
    if (size() != o.size()) throw std::invalid_argument("partial monomial product: size mismatch");
    PartialMonomial p(size());
    for (std::size_t j = 0; j < size(); ++j) {
        auto k = o.rows_[j];
        if (k < 0) continue;
        auto r = rows_[static_cast<std::size_t>(k)];
        if (r < 0) continue;
        p.rows_[j] = r;
        p.scalars_[j] = scalars_[static_cast<std::size_t>(k)] * o.scalars_[j];
    }
    return p;
}

PartialMonomial PartialMonomial::scaled(const Scalar& c) const {
    PartialMonomial p = *this;
    for (std::size_t j = 0; j < size(); ++j)
        if (p.rows_[j] >= 0) p.scalars_[j] = c * p.scalars_[j];
    return p;
}

PartialMonomial PartialMonomial::transpose() const {
    PartialMonomial p(size());
    for (std::size_t j = 0; j < size(); ++j)
        if (rows_[j] >= 0) p.set(j, static_cast<std::size_t>(rows_[j]), scalars_[j]);
    return p;
}

std::optional<Scalar> PartialMonomial::ratio_to(const PartialMonomial& other) const {
    if (rows_ != other.rows_) return std::nullopt;
    std::optional<Scalar> lambda;
    for (std::size_t j = 0; j < size(); ++j) {
        if (rows_[j] < 0) continue;
        Scalar r = scalars_[j] * other.scalars_[j].inverse();
        if (!lambda)
            lambda = r;
        else if (!(r == *lambda))
            return std::nullopt;
    }
    return lambda ? lambda : Scalar();
}

Cyclotomic PartialMonomial::trace() const {
    Cyclotomic t(0);
    for (std::size_t j = 0; j < size(); ++j)
        if (rows_[j] == static_cast<std::ptrdiff_t>(j)) t += scalars_[j].to_cyclotomic();
    return t;
}

CycloMatrix PartialMonomial::to_cyclo() const {
    CycloMatrix m = cyclo_zero(size());
    for (std::size_t j = 0; j < size(); ++j)
        if (rows_[j] >= 0) m[static_cast<std::size_t>(rows_[j])][j] = scalars_[j].to_cyclotomic();
    return m;
}

bool PartialMonomial::operator==(const PartialMonomial& o) const {
    if (rows_ != o.rows_) return false;
    for (std::size_t j = 0; j < size(); ++j)
        if (rows_[j] >= 0 && !(scalars_[j] == o.scalars_[j])) return false;
    return true;
}

// ---------------------------------------------------------------- StandardRealization

StandardRealization::StandardRealization(Bicharacter beta) : beta_(std::move(beta)) {
    pairs_ = symplectic_decomposition(beta_);
    const FinGenAbGroup& T = beta_.domain();
    labels_ = pairs_.B.elements();
    elements_ = T.elements();
    for (std::size_t i = 0; i < elements_.size(); ++i) index_[elements_[i]] = i;

    std::map<GroupElement, std::size_t> label_index;
    for (std::size_t i = 0; i < labels_.size(); ++i) label_index[labels_[i]] = i;

    std::size_t s = labels_.size();
    X_.resize(elements_.size());
    for (const auto& a : pairs_.A.elements())
        for (const auto& b : pairs_.B.elements()) {
            std::vector<std::size_t> p(s);
            std::vector<Scalar> sc(s);
            for (std::size_t c = 0; c < s; ++c) {
                GroupElement row = T.add(b, labels_[c]);
                p[c] = label_index.at(row);
                sc[c] = Scalar(beta_.value(a, row));
            }
            X_[index_of(T.add(a, b))] = MonomialMatrix(p, sc);
        }
}

std::size_t StandardRealization::index_of(const GroupElement& t) const {
    auto it = index_.find(group().reduce(t));
    if (it == index_.end()) throw std::invalid_argument("element outside the realization's group");
    return it->second;
}

Scalar StandardRealization::cocycle(const GroupElement& s, const GroupElement& t) const {
    auto r = (X(s) * X(t)).ratio_to(X(group().add(s, t)));
    if (!r) throw std::logic_error("realization is not degree-multiplicative");
    return *r;
}

StandardRealization build_standard_realization(const Bicharacter& beta) { return StandardRealization(beta); }

RealizationReport verify_realization(const StandardRealization& R) {
    RealizationReport rep;
    const FinGenAbGroup& T = R.group();
    const auto& elts = R.elements();
    const auto& beta = R.beta();
    std::size_t s = R.size();
    if (s * s != elts.size()) {
        rep.identity = false;
        rep.failures.push_back("matrix size is not the square root of |T|");
    }
    if (!R.X(T.zero()).is_identity()) {
        rep.identity = false;
        rep.failures.push_back("X_e is not the identity");
    }
    for (const auto& u : elts) {
        const auto& Xu = R.X(u);
        auto inv = (Xu * Xu.inverse());
        if (!inv.is_identity() || !(Xu.inverse() * Xu).is_identity()) {
            rep.invertible = false;
            rep.failures.push_back("X_t not invertible");
        }
        for (const auto& v : elts) {
            const auto& Xv = R.X(v);
            if (!(Xu * Xv == (Xv * Xu).scaled(Scalar(beta.value(u, v))))) {
                rep.commutation = false;
                rep.failures.push_back("commutation identity fails");
            }
            if (!(Xu * Xv).ratio_to(R.X(T.add(u, v)))) {
                rep.multiplicative = false;
                rep.failures.push_back("X_u X_v is not a multiple of X_{u+v}");
            }
        }
    }
    // X_{a+b}^T = beta(a, b) X_{a-b}
    for (const auto& a : R.pairs().A.elements())
        for (const auto& b : R.pairs().B.elements()) {
            auto lhs = R.X(T.add(a, b)).transpose();
            auto rhs = R.X(T.sub(a, b)).scaled(Scalar(beta.value(a, b)));
            if (!(lhs == rhs)) {
                rep.transpose_formula = false;
                rep.failures.push_back("transpose formula fails");
            }
        }
    if (T.is_elementary_two() || T.is_trivial())
        for (const auto& t : elts)
            if (!R.X(t).transpose().ratio_to(R.X(t))) {
                rep.transpose_preserves_degree = false;
                rep.failures.push_back("transposition changes the degree");
            }
    return rep;
}

} // namespace gradekit
