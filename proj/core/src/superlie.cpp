#include "gradekit/superlie.hpp"

#include <algorithm>
#include <stdexcept>

namespace gradekit {

// ---------------------------------------------------------------- BlockMatrix

BlockMatrix::BlockMatrix(std::size_t m, std::size_t n)
    : m_(m), n_(n), data_(m + n, std::vector<Rational>(m + n, Rational(0))) {}

BlockMatrix::BlockMatrix(std::size_t m, std::size_t n, RationalMatrix data) : m_(m), n_(n), data_(std::move(data)) {
    if (data_.size() != m + n) throw std::invalid_argument("block matrix: wrong number of rows");
    for (const auto& r : data_)
        if (r.size() != m + n) throw std::invalid_argument("block matrix: wrong row length");
}

void BlockMatrix::check_shape(const BlockMatrix& o) const {
    if (m_ != o.m_ || n_ != o.n_) throw std::invalid_argument("block matrix: block sizes differ");
}

BlockMatrix BlockMatrix::parity_part(int p) const {
    BlockMatrix out(m_, n_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
            if (entry_parity(i, j) == p) out.data_[i][j] = data_[i][j];
    return out;
}

std::optional<int> BlockMatrix::parity() const {
    bool even = !parity_part(0).is_zero(), odd = !parity_part(1).is_zero();
    if (even == odd) return std::nullopt;
    return odd ? 1 : 0;
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& o) const {
    check_shape(o);
    BlockMatrix out = *this;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out.data_[i][j] += o.data_[i][j];
    return out;
}

BlockMatrix BlockMatrix::operator-(const BlockMatrix& o) const {
    check_shape(o);
    BlockMatrix out = *this;
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out.data_[i][j] -= o.data_[i][j];
    return out;
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& o) const {
    check_shape(o);
    std::size_t N = size();
    BlockMatrix out(m_, n_);
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t k = 0; k < N; ++k) {
            if (data_[i][k] == 0) continue;
            for (std::size_t j = 0; j < N; ++j)
                if (o.data_[k][j] != 0) out.data_[i][j] += data_[i][k] * o.data_[k][j];
        }
    return out;
}

BlockMatrix BlockMatrix::scaled(const Rational& c) const {
    BlockMatrix out = *this;
    for (auto& r : out.data_)
        for (auto& v : r) v *= c;
    return out;
}

BlockMatrix BlockMatrix::transpose() const {
    BlockMatrix out(m_, n_);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out.data_[j][i] = data_[i][j];
    return out;
}

bool BlockMatrix::is_zero() const {
    for (const auto& r : data_)
        for (const auto& v : r)
            if (v != 0) return false;
    return true;
}

Rational supertrace(const BlockMatrix& M) {
    Rational t = 0;
    for (std::size_t i = 0; i < M.size(); ++i) t += i < M.m() ? M(i, i) : -M(i, i);
    return t;
}

BlockMatrix supertranspose(const BlockMatrix& M) {
    BlockMatrix out(M.m(), M.n());
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j) {
            // entry (i, j) moves to (j, i); the c block (i >= m > j) picks up a sign
            bool c_block = i >= M.m() && j < M.m();
            out(j, i) = c_block ? Rational(-M(i, j)) : M(i, j);
        }
    return out;
}

BlockMatrix parity_automorphism(const BlockMatrix& M) { return M.parity_part(0) - M.parity_part(1); }

BlockMatrix supercommutator(const BlockMatrix& X, const BlockMatrix& Y) {
    BlockMatrix out(X.m(), X.n());
    for (int p = 0; p < 2; ++p) {
        BlockMatrix Xp = X.parity_part(p);
        if (Xp.is_zero()) continue;
        for (int q = 0; q < 2; ++q) {
            BlockMatrix Yq = Y.parity_part(q);
            if (Yq.is_zero()) continue;
            BlockMatrix yx = Yq * Xp;
            out = out + Xp * Yq - (p && q ? yx.scaled(Rational(-1)) : yx);
        }
    }
    return out;
}

// ---------------------------------------------------------------- superadjoint

namespace {

std::vector<GroupElement> negated(const FinGenAbGroup& G, const std::vector<GroupElement>& v) {
    std::vector<GroupElement> out;
    for (const auto& g : v) out.push_back(G.neg(g));
    return out;
}

} // namespace

EvenAssoc superadjoint_spec(const EvenAssoc& spec_in) {
    EvenAssoc spec = validate_spec(spec_in);
    return validate_spec(
        EvenAssoc{spec.G, spec.T, spec.beta.inverse(), negated(spec.G, spec.gamma0), negated(spec.G, spec.gamma1)});
}

OddAssocT superadjoint_spec(const OddAssocT& spec_in) {
    OddAssocT spec = validate_spec(spec_in);
    return validate_spec(OddAssocT{spec.G, spec.T, spec.beta.inverse(), negated(spec.G, spec.gamma)});
}

OddAssocT superadjoint_spec(const OddAssocG& spec) { return superadjoint_spec(build_odd_from_G(spec)); }

AssocSpec superadjoint_spec(const AssocSpec& spec) {
    return std::visit([](const auto& s) -> AssocSpec { return superadjoint_spec(s); }, spec);
}

GradedMatrixModel superadjoint_model(const GradedMatrixModel& M) {
    if (M.s == 0 || M.m % M.s != 0) throw std::invalid_argument("superadjoint_model: malformed model");
    std::size_t k0 = M.m / M.s;
    // an even model has upsilon = diag(I_m, -I_n)
    for (std::size_t r = 0; r < M.dim(); ++r) {
        auto e = M.upsilon.entry(r, r);
        if (!e || !(*e == (r < M.m ? Scalar() : -Scalar())))
            throw std::invalid_argument("superadjoint_model: only models with block-diagonal parity are supported");
    }
    GradedMatrixModel out = M;
    for (auto& b : out.basis) {
        MonomialMatrix Dt = M.division[b.t].transpose();
        std::optional<std::pair<std::size_t, Scalar>> hit;
        for (std::size_t t = 0; t < M.division.size() && !hit; ++t)
            if (auto l = Dt.ratio_to(M.division[t])) hit = std::make_pair(t, *l);
        if (!hit) throw std::logic_error("superadjoint_model: transpose leaves the division algebra");
        bool ur = b.bi < k0 && b.bj >= k0;
        Scalar sign = ur || (b.bi < k0) == (b.bj < k0) ? -Scalar() : Scalar();
        std::swap(b.bi, b.bj);
        b.t = hit->first;
        b.coeff = sign * b.coeff * hit->second;
    }
    return out;
}

// ---------------------------------------------------------------- Type I restriction

std::map<GroupElement, std::size_t> restrict_type_I(const GradedMatrixModel& M) {
    std::map<GroupElement, std::size_t> dims;
    std::map<GroupElement, bool> str_nonzero;
    PartialMonomial ups(M.upsilon);
    for (std::size_t k = 0; k < M.basis.size(); ++k) {
        const auto& deg = M.basis[k].degree;
        dims[deg] += 1;
        // str X = tr(upsilon X) since upsilon = P_0 - P_1
        if (!(ups * M.matrix(k)).trace().is_zero()) str_nonzero[deg] = true;
    }
    for (const auto& [deg, nz] : str_nonzero)
        if (nz) dims[deg] -= 1;
    if (M.m == M.n) dims[M.group.zero()] -= 1;
    for (auto it = dims.begin(); it != dims.end();) it = it->second == 0 ? dims.erase(it) : std::next(it);
    return dims;
}

std::map<GroupElement, std::size_t> restrict_type_I(const AssocSpec& spec) {
    return restrict_type_I(build_matrix_model(spec));
}

// ---------------------------------------------------------------- P(n) specs

PSpec validate_p_spec(const PSpec& spec) {
    PSpec out = spec;
    if (!(out.T.parent() == out.G)) throw SpecError("T is not a subgroup of G");
    if (!out.T.is_finite() || !(out.T.structure().is_trivial() || out.T.structure().is_elementary_two()))
        throw SpecError("T must be an elementary 2-group");
    if (!out.G.is_valid(out.g0)) throw SpecError("g0 is not a valid element");
    out.g0 = out.G.reduce(out.g0);
    EvenAssoc amb = p_ambient_spec(out); // validates beta and gamma
    out.gamma = amb.gamma0;
    std::size_t s = 1;
    while (static_cast<std::int64_t>(s * s) < out.T.order()) ++s;
    std::size_t N = out.gamma.size() * s;
    if (out.n + 1 != N)
        throw SpecError("size equation fails: k sqrt|T| = " + std::to_string(N) + " but n + 1 = " +
                        std::to_string(out.n + 1));
    if (out.n < 1) throw SpecError("P(n) needs n >= 1");
    return out;
}

PSpec make_p_spec(const FinGenAbGroup& G, const std::vector<GroupElement>& T_gens, const ExponentMatrix& q,
                  std::vector<GroupElement> gamma, const GroupElement& g0) {
    EvenAssoc e = make_even_spec(G, T_gens, q, gamma, {});
    std::size_t s = 1;
    while (static_cast<std::int64_t>(s * s) < e.T.order()) ++s;
    std::size_t N = e.gamma0.size() * s;
    if (N < 2) throw SpecError("P(n) needs n >= 1");
    return validate_p_spec(PSpec{G, e.T, e.beta, e.gamma0, g0, N - 1});
}

EvenAssoc p_ambient_spec(const PSpec& spec) {
    std::vector<GroupElement> g1;
    for (const auto& g : spec.gamma) {
        if (g.size() != spec.G.rank()) throw SpecError("gamma: entry has the wrong length");
        g1.push_back(spec.G.sub(spec.g0, g));
    }
    return validate_spec(EvenAssoc{spec.G, spec.T, spec.beta, spec.gamma, g1});
}

// ---------------------------------------------------------------- rational linear algebra

namespace {

using RVec = std::vector<Rational>;

// Incrementally built echelon basis; vectors are reduced in insertion order.
struct Echelon {
    std::vector<RVec> rows;
    std::vector<std::size_t> pivots;

    RVec reduce(RVec v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational c = v[pivots[i]];
            if (c == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (rows[i][j] != 0) v[j] -= c * rows[i][j];
        }
        return v;
    }
    bool add(const RVec& v) {
        RVec r = reduce(v);
        auto it = std::find_if(r.begin(), r.end(), [](const Rational& x) { return x != 0; });
        if (it == r.end()) return false;
        std::size_t p = static_cast<std::size_t>(it - r.begin());
        Rational inv = Rational(1) / r[p];
        for (auto& x : r) x *= inv;
        rows.push_back(std::move(r));
        pivots.push_back(p);
        return true;
    }
    bool contains(const RVec& v) const {
        RVec r = reduce(v);
        return std::all_of(r.begin(), r.end(), [](const Rational& x) { return x == 0; });
    }
};

// Basis of {x : C x = 0}, each vector scaled to primitive integers.
std::vector<RVec> rational_kernel(std::vector<RVec> C, std::size_t ncols) {
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < C.size(); ++c) {
        std::size_t p = r;
        while (p < C.size() && C[p][c] == 0) ++p;
        if (p == C.size()) continue;
        std::swap(C[p], C[r]);
        Rational inv = Rational(1) / C[r][c];
        for (auto& x : C[r]) x *= inv;
        for (std::size_t i = 0; i < C.size(); ++i) {
            if (i == r || C[i][c] == 0) continue;
            Rational f = C[i][c];
            for (std::size_t j = 0; j < ncols; ++j) C[i][j] -= f * C[r][j];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivot_cols) is_pivot[c] = true;
    std::vector<RVec> out;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_pivot[f]) continue;
        RVec v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = -C[i][f];
        BigInt den = 1, num = 0;
        for (const auto& x : v) {
            if (x == 0) continue;
            den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(x));
        }
        for (auto& x : v) x *= den;
        for (const auto& x : v)
            if (x != 0) num = boost::multiprecision::gcd(num, boost::multiprecision::numerator(x));
        if (num > 1)
            for (auto& x : v) x /= Rational(num);
        out.push_back(std::move(v));
    }
    return out;
}

RVec flatten(const BlockMatrix& X) {
    RVec v;
    v.reserve(X.size() * X.size());
    for (const auto& r : X.data()) v.insert(v.end(), r.begin(), r.end());
    return v;
}

Rational to_rational(const Scalar& s) {
    if (s.root().is_one()) return s.coeff();
    if (s.root() == RootOfUnity::minus_one()) return -s.coeff();
    throw SpecError("entries are not rational: T must be an elementary 2-group");
}

BlockMatrix model_matrix(const GradedMatrixModel& M, std::size_t k) {
    PartialMonomial P = M.matrix(k);
    BlockMatrix X(M.m, M.n);
    for (std::size_t j = 0; j < P.size(); ++j)
        if (P.rows()[j] >= 0) X(static_cast<std::size_t>(P.rows()[j]), j) = to_rational(P.scalars()[j]);
    return X;
}

// Nonzero entries of a P(n) basis element; these have at most two.
using SparseMatrix = std::map<std::pair<std::size_t, std::size_t>, Rational>;

SparseMatrix sparse(const BlockMatrix& X) {
    SparseMatrix out;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < X.size(); ++j)
            if (X(i, j) != 0) out[{i, j}] = X(i, j);
    return out;
}

void accumulate_product(SparseMatrix& out, const SparseMatrix& X, const SparseMatrix& Y, const Rational& c) {
    for (const auto& [a, x] : X)
        for (auto it = Y.lower_bound({a.second, 0}); it != Y.end() && it->first.first == a.second; ++it) {
            Rational& e = out[{a.first, it->first.second}];
            e += c * x * it->second;
        }
}

// [X, Y] for homogeneous X, Y of parities p, q
SparseMatrix sparse_bracket(const SparseMatrix& X, int p, const SparseMatrix& Y, int q) {
    SparseMatrix out;
    accumulate_product(out, X, Y, Rational(1));
    accumulate_product(out, Y, X, Rational(p && q ? 1 : -1));
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

RVec flatten(const SparseMatrix& X, std::size_t W) {
    RVec v(W * W, Rational(0));
    for (const auto& [ij, x] : X) v[ij.first * W + ij.second] = x;
    return v;
}

int z_degree(std::size_t i, std::size_t j, std::size_t N) {
    if ((i < N) == (j < N)) return 0;
    return i < N ? -1 : 1;
}

// Linear functionals (on (2N)^2 coordinates) cutting P(n)^z out of its block.
std::vector<std::vector<std::pair<std::size_t, int>>> p_constraints(std::size_t N, int z) {
    std::size_t W = 2 * N;
    auto at = [W](std::size_t i, std::size_t j) { return i * W + j; };
    std::vector<std::vector<std::pair<std::size_t, int>>> out;
    if (z == 0) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) out.push_back({{at(i, j), 1}, {at(N + j, N + i), 1}}); // d = -a^T
        std::vector<std::pair<std::size_t, int>> tr;
        for (std::size_t i = 0; i < N; ++i) tr.emplace_back(at(i, i), 1);
        out.push_back(tr);
    } else if (z == -1) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i + 1; j < N; ++j) out.push_back({{at(i, N + j), 1}, {at(j, N + i), -1}}); // b = b^T
    } else {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = i; j < N; ++j) {
                if (i == j)
                    out.push_back({{at(N + i, i), 1}});
                else
                    out.push_back({{at(N + i, j), 1}, {at(N + j, i), 1}}); // c = -c^T
            }
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------- P(n) models

std::size_t PGradedModel::dim() const {
    std::size_t d = 0;
    for (const auto& c : components) d += c.basis.size();
    return d;
}

std::map<GroupElement, std::size_t> PGradedModel::dims() const {
    std::map<GroupElement, std::size_t> out;
    for (const auto& c : components) out[c.degree] += c.basis.size();
    return out;
}

std::map<int, std::size_t> PGradedModel::z_dims() const {
    std::map<int, std::size_t> out{{-1, 0}, {0, 0}, {1, 0}};
    for (const auto& c : components) out[c.z] += c.basis.size();
    return out;
}

PGradedModel intersect_with_P(const GradedMatrixModel& M) {
    if (M.m != M.n) throw std::invalid_argument("P(n) lives in M(n+1, n+1): block sizes differ");
    std::size_t N = M.m, W = 2 * N;
    std::map<std::pair<GroupElement, int>, std::vector<BlockMatrix>> groups;
    for (std::size_t k = 0; k < M.basis.size(); ++k) {
        BlockMatrix X = model_matrix(M, k);
        // basis elements sit inside one block, so their Z-degree is that of any nonzero entry
        std::optional<int> z;
        for (std::size_t i = 0; i < W && !z; ++i)
            for (std::size_t j = 0; j < W && !z; ++j)
                if (X(i, j) != 0) z = z_degree(i, j, N);
        if (!z) throw std::logic_error("intersect_with_P: zero basis element");
        groups[{M.basis[k].degree, *z}].push_back(std::move(X));
    }
    PGradedModel out;
    out.group = M.group;
    out.n = N - 1;
    std::map<int, std::vector<std::vector<std::pair<std::size_t, int>>>> cons;
    for (int z : {-1, 0, 1}) cons[z] = p_constraints(N, z);
    for (const auto& [key, mats] : groups) {
        std::vector<RVec> flat;
        for (const auto& X : mats) flat.push_back(flatten(X));
        std::vector<RVec> C;
        for (const auto& f : cons[key.second]) {
            RVec row(mats.size(), Rational(0));
            bool any = false;
            for (std::size_t e = 0; e < mats.size(); ++e)
                for (const auto& [pos, c] : f)
                    if (flat[e][pos] != 0) {
                        row[e] += c * flat[e][pos];
                        any = true;
                    }
            if (any) C.push_back(std::move(row));
        }
        auto ker = rational_kernel(C, mats.size());
        if (ker.empty()) continue;
        PComponent comp{key.first, key.second, {}};
        for (const auto& v : ker) {
            BlockMatrix X(N, N);
            for (std::size_t e = 0; e < mats.size(); ++e)
                if (v[e] != 0) X = X + mats[e].scaled(v[e]);
            comp.basis.push_back(std::move(X));
        }
        out.components.push_back(std::move(comp));
    }
    return out;
}

PGradedModel build_P_model(const PSpec& spec_in) {
    PSpec spec = validate_p_spec(spec_in);
    return intersect_with_P(build_matrix_model(p_ambient_spec(spec)));
}

std::optional<GroupElement> P_restriction_condition(const EvenAssoc& spec_in) {
    EvenAssoc spec = validate_spec(spec_in);
    if (spec.gamma0.size() != spec.gamma1.size()) return std::nullopt;
    if (!(spec.T.structure().is_trivial() || spec.T.structure().is_elementary_two())) return std::nullopt;
    const FinGenAbGroup& G = spec.G;
    CosetMultiset lhs = xi_multiset(G, spec.T, negated(G, spec.gamma0));
    CosetMultiset rhs = xi_multiset(G, spec.T, spec.gamma1);
    const GroupElement& c0 = lhs.counts.begin()->first;
    for (const auto& [y, cnt] : rhs.counts) {
        GroupElement g0 = G.sub(y, c0);
        if (lhs.shifted(g0) == rhs) return coset_canonical_rep(G, spec.T, g0);
    }
    return std::nullopt;
}

PGradedModel intersect_with_P(const EvenAssoc& spec_in) {
    EvenAssoc spec = validate_spec(spec_in);
    if (spec.gamma0.size() != spec.gamma1.size())
        throw SpecError("P(n) needs equal block sizes: |gamma0| != |gamma1|");
    if (!(spec.T.structure().is_trivial() || spec.T.structure().is_elementary_two()))
        throw SpecError("T must be an elementary 2-group");
    if (auto g0 = P_restriction_condition(spec)) {
        spec.gamma1.clear();
        for (const auto& g : spec.gamma0) spec.gamma1.push_back(spec.G.sub(*g0, g));
    }
    return intersect_with_P(build_matrix_model(spec));
}

namespace {

std::vector<std::vector<SparseMatrix>> sparse_components(const PGradedModel& model) {
    std::vector<std::vector<SparseMatrix>> out;
    for (const auto& c : model.components) {
        out.emplace_back();
        for (const auto& X : c.basis) out.back().push_back(sparse(X));
    }
    return out;
}

} // namespace

PReport verify_P_graded(const PGradedModel& model) {
    PReport rep;
    auto fail = [&](const std::string& msg) {
        rep.pass = false;
        if (rep.failures.size() < 20) rep.failures.push_back(msg);
    };
    std::size_t N = model.n + 1;
    rep.dim = model.dim();
    rep.z_dims = model.z_dims();
    if (rep.dim != 2 * N * N - 1)
        fail("dimension sum is " + std::to_string(rep.dim) + ", expected " + std::to_string(2 * N * N - 1));
    if (rep.z_dims[0] != N * N - 1) fail("P^0 has dimension " + std::to_string(rep.z_dims[0]));
    if (rep.z_dims[-1] != N * (N + 1) / 2) fail("P^-1 has dimension " + std::to_string(rep.z_dims[-1]));
    if (rep.z_dims[1] != N * (N - 1) / 2) fail("P^1 has dimension " + std::to_string(rep.z_dims[1]));

    std::map<std::pair<GroupElement, int>, Echelon> span;
    Echelon all;
    for (const auto& c : model.components) {
        auto& e = span[{c.degree, c.z}];
        for (const auto& X : c.basis) {
            auto v = flatten(X);
            if (!e.add(v) || !all.add(v)) fail("component basis is linearly dependent");
            if (c.z == 0 && supertrace(X) != 0) fail("element with nonzero trace in P^0");
        }
    }
    auto sp = sparse_components(model);
    for (std::size_t a = 0; a < model.components.size(); ++a)
        for (std::size_t b = 0; b < model.components.size(); ++b) {
            const auto& c1 = model.components[a];
            const auto& c2 = model.components[b];
            GroupElement deg = model.group.add(c1.degree, c2.degree);
            int z = c1.z + c2.z;
            auto it = span.find({deg, z});
            bool ok = true;
            for (std::size_t x = 0; x < sp[a].size() && ok; ++x)
                for (std::size_t y = 0; y < sp[b].size() && ok; ++y) {
                    SparseMatrix B = sparse_bracket(sp[a][x], c1.z != 0, sp[b][y], c2.z != 0);
                    if (B.empty()) continue;
                    ok = it != span.end() && it->second.contains(flatten(B, 2 * N));
                }
            if (!ok) fail("bracket of components leaves the expected component");
        }
    return rep;
}

UniversalGroup universal_group(const PGradedModel& model) {
    std::set<GroupElement> supp;
    for (const auto& c : model.components) supp.insert(c.degree);
    UniversalGroup out;
    out.support.assign(supp.begin(), supp.end());
    std::map<GroupElement, std::size_t> pos;
    for (std::size_t i = 0; i < out.support.size(); ++i) pos[out.support[i]] = i;
    std::size_t n = out.support.size();
    std::set<std::vector<std::int64_t>> rels;
    auto sp = sparse_components(model);
    for (std::size_t i = 0; i < model.components.size(); ++i)
        for (std::size_t j = 0; j < model.components.size(); ++j) {
            const auto& c1 = model.components[i];
            const auto& c2 = model.components[j];
            GroupElement deg = model.group.add(c1.degree, c2.degree);
            bool nonzero = false;
            for (std::size_t a = 0; a < sp[i].size() && !nonzero; ++a)
                for (std::size_t b = 0; b < sp[j].size() && !nonzero; ++b)
                    nonzero = !sparse_bracket(sp[i][a], c1.z != 0, sp[j][b], c2.z != 0).empty();
            if (!nonzero) continue;
            auto it = pos.find(deg);
            if (it == pos.end()) throw std::logic_error("universal_group: bracket lands outside the support");
            std::vector<std::int64_t> r(n, 0);
            r[pos[c1.degree]] += 1;
            r[pos[c2.degree]] += 1;
            r[it->second] -= 1;
            rels.insert(r);
        }
    Presentation P = finitely_presented_quotient(n, {rels.begin(), rels.end()});
    out.group = P.group;
    for (std::size_t i = 0; i < n; ++i) out.images.push_back(P.projection.images()[i]);
    return out;
}

} // namespace gradekit
