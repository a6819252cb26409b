#include "gradekit/abgroup.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace gradekit {

namespace {

IntMatrix identity_matrix(std::size_t n) {
    IntMatrix I(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) I[i][i] = 1;
    return I;
}

BigInt abs_big(const BigInt& v) { return v < 0 ? BigInt(-v) : v; }

// Extended gcd: g = x*a + y*b, g >= 0.
BigInt ext_gcd(const BigInt& a, const BigInt& b, BigInt& x, BigInt& y) {
    BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    x = old_s;
    y = old_t;
    return old_r;
}

SmithForm snf_dims(IntMatrix A, std::size_t rows, std::size_t cols) {
    SmithForm out;
    out.U = identity_matrix(rows);
    out.V = identity_matrix(cols);
    out.V_inv = identity_matrix(cols);

    auto row_add = [&](std::size_t i, std::size_t j, const BigInt& k) { // row_i += k*row_j
        if (k == 0) return;
        for (std::size_t c = 0; c < cols; ++c) A[i][c] += k * A[j][c];
        for (std::size_t c = 0; c < rows; ++c) out.U[i][c] += k * out.U[j][c];
    };
    auto col_add = [&](std::size_t i, std::size_t j, const BigInt& k) { // col_i += k*col_j
        if (k == 0) return;
        for (std::size_t r = 0; r < rows; ++r) A[r][i] += k * A[r][j];
        for (std::size_t r = 0; r < cols; ++r) out.V[r][i] += k * out.V[r][j];
        for (std::size_t c = 0; c < cols; ++c) out.V_inv[j][c] -= k * out.V_inv[i][c];
    };
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        std::swap(A[i], A[j]);
        std::swap(out.U[i], out.U[j]);
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < rows; ++r) std::swap(A[r][i], A[r][j]);
        for (std::size_t r = 0; r < cols; ++r) std::swap(out.V[r][i], out.V[r][j]);
        std::swap(out.V_inv[i], out.V_inv[j]);
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero absolute value in the trailing block
        bool found = false;
        std::size_t pi = t, pj = t;
        BigInt best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (A[i][j] != 0 && (!found || abs_big(A[i][j]) < best)) {
                    found = true;
                    best = abs_big(A[i][j]);
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        row_swap(t, pi);
        col_swap(t, pj);

        // nearest-integer quotient keeps remainders within half the pivot
        auto nearest = [](const BigInt& a, const BigInt& p) {
            BigInt q = a / p, r = a - q * p;
            if (2 * abs_big(r) > abs_big(p)) q += ((r < 0) == (p < 0)) ? 1 : -1;
            return q;
        };
        for (;;) {
            bool dirty = false;
            // clear column t below the pivot, moving the smallest entry up each round
            for (;;) {
                std::optional<std::size_t> best_i;
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (A[i][t] != 0 && (!best_i || abs_big(A[i][t]) < abs_big(A[*best_i][t]))) best_i = i;
                if (!best_i) break;
                if (abs_big(A[*best_i][t]) < abs_big(A[t][t])) row_swap(t, *best_i);
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (A[i][t] != 0) row_add(i, t, -nearest(A[i][t], A[t][t]));
            }
            // then row t to the right of it
            for (;;) {
                std::optional<std::size_t> best_j;
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (A[t][j] != 0 && (!best_j || abs_big(A[t][j]) < abs_big(A[t][*best_j]))) best_j = j;
                if (!best_j) break;
                if (abs_big(A[t][*best_j]) < abs_big(A[t][t])) {
                    col_swap(t, *best_j);
                    dirty = true;
                }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (A[t][j] != 0) col_add(j, t, -nearest(A[t][j], A[t][t]));
            }
            // a column swap can refill column t
            for (std::size_t i = t + 1; i < rows && !dirty; ++i) dirty = A[i][t] != 0;
            if (dirty) continue;
            // divisibility of the trailing block
            bool fixed = true;
            for (std::size_t i = t + 1; i < rows && fixed; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (A[i][j] % A[t][t] != 0) {
                        row_add(t, i, 1);
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (A[t][t] < 0) {
            for (std::size_t c = 0; c < cols; ++c) A[t][c] = -A[t][c];
            for (std::size_t c = 0; c < rows; ++c) out.U[t][c] = -out.U[t][c];
        }
        ++t;
    }
    out.rank = t;
    out.S = std::move(A);
    return out;
}

// Row vector times matrix.
std::vector<BigInt> vec_mul(const std::vector<BigInt>& x, const IntMatrix& M, std::size_t cols) {
    std::vector<BigInt> y(cols, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j) y[j] += x[i] * M[i][j];
    }
    return y;
}

std::vector<BigInt> to_big(const GroupElement& x) {
    return std::vector<BigInt>(x.begin(), x.end());
}

// Rows generating the relation lattice of G inside Z^{rank}.
std::vector<std::vector<BigInt>> relation_rows(const FinGenAbGroup& G) {
    std::vector<std::vector<BigInt>> rows;
    std::size_t n = G.rank();
    for (std::size_t k = 0; k < G.torsion().size(); ++k) {
        std::vector<BigInt> r(n, 0);
        r[G.free_rank() + k] = G.torsion()[k];
        rows.push_back(std::move(r));
    }
    return rows;
}

// Echelon basis of the row lattice (gcd elimination); keeps SNF inputs small.
std::vector<std::vector<BigInt>> lattice_echelon(const std::vector<std::vector<BigInt>>& rows, std::size_t n) {
    std::vector<std::vector<BigInt>> piv(n);
    for (auto v : rows) {
        for (std::size_t c = 0; c < n; ++c) {
            if (v[c] == 0) continue;
            if (piv[c].empty()) {
                if (v[c] < 0)
                    for (auto& e : v) e = -e;
                piv[c] = std::move(v);
                break;
            }
            auto& p = piv[c];
            BigInt x, y;
            BigInt g = ext_gcd(p[c], v[c], x, y);
            BigInt a = p[c] / g, b = v[c] / g;
            std::vector<BigInt> np(n), nv(n);
            for (std::size_t j = 0; j < n; ++j) {
                np[j] = x * p[j] + y * v[j];
                nv[j] = a * v[j] - b * p[j];
            }
            p = std::move(np);
            v = std::move(nv);
        }
    }
    std::vector<std::vector<BigInt>> out;
    for (auto& p : piv)
        if (!p.empty()) out.push_back(std::move(p));
    return out;
}

// Quotient Z^n / rowspace(S-decomposed matrix): group and images of the unit vectors.
void quotient_from_snf(const SmithForm& snf, std::size_t n, FinGenAbGroup& group,
                       std::vector<GroupElement>& unit_images) {
    std::vector<std::int64_t> tors;
    std::vector<std::size_t> tpos;
    for (std::size_t i = 0; i < snf.rank; ++i) {
        if (snf.S[i][i] > 1) {
            tors.push_back(to_int64(snf.S[i][i]));
            tpos.push_back(i);
        }
    }
    int free = static_cast<int>(n - snf.rank);
    group = FinGenAbGroup(free, tors);
    unit_images.assign(n, GroupElement{});
    for (std::size_t j = 0; j < n; ++j) {
        GroupElement img;
        for (std::size_t i = snf.rank; i < n; ++i) img.push_back(to_int64(snf.V[j][i]));
        for (std::size_t k = 0; k < tpos.size(); ++k) {
            BigInt v = snf.V[j][tpos[k]] % snf.S[tpos[k]][tpos[k]];
            img.push_back(to_int64(v));
        }
        unit_images[j] = group.reduce(img);
    }
}

} // namespace

// ---------------------------------------------------------------- FinGenAbGroup

FinGenAbGroup::FinGenAbGroup(int free_rank, std::vector<std::int64_t> torsion)
    : free_rank_(free_rank), torsion_(std::move(torsion)) {
    if (free_rank_ < 0) throw std::invalid_argument("free rank must be nonnegative");
    for (std::size_t i = 0; i < torsion_.size(); ++i) {
        if (torsion_[i] < 2) throw std::invalid_argument("invariant factors must be >= 2");
        if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
            throw std::invalid_argument("invariant factors must form a divisibility chain");
    }
}

FinGenAbGroup FinGenAbGroup::cyclic(std::int64_t d) {
    if (d == 1) return {};
    return {0, {d}};
}

FinGenAbGroup FinGenAbGroup::from_cyclic_orders(const std::vector<std::int64_t>& orders) {
    std::vector<std::vector<std::int64_t>> rels;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0) throw std::invalid_argument("negative cyclic order");
        if (orders[i] == 0) continue;
        std::vector<std::int64_t> r(orders.size(), 0);
        r[i] = orders[i];
        rels.push_back(r);
    }
    return finitely_presented_quotient(orders.size(), rels).group;
}

std::int64_t FinGenAbGroup::order() const {
    if (!is_finite()) throw std::domain_error("group is infinite");
    std::int64_t o = 1;
    for (auto d : torsion_) o *= d;
    return o;
}

std::int64_t FinGenAbGroup::modulus(std::size_t i) const {
    if (i < static_cast<std::size_t>(free_rank_)) return 0;
    return torsion_.at(i - free_rank_);
}

GroupElement FinGenAbGroup::generator(std::size_t i) const {
    GroupElement g = zero();
    g.at(i) = 1;
    return g;
}

void FinGenAbGroup::check(const GroupElement& x) const {
    if (x.size() != rank()) throw std::invalid_argument("element dimension mismatch");
}

GroupElement FinGenAbGroup::reduce(GroupElement x) const {
    check(x);
    for (std::size_t k = 0; k < torsion_.size(); ++k) {
        auto& c = x[free_rank_ + k];
        c = mod_floor(c, torsion_[k]);
    }
    return x;
}

bool FinGenAbGroup::is_valid(const GroupElement& x) const {
    if (x.size() != rank()) return false;
    for (std::size_t k = 0; k < torsion_.size(); ++k) {
        auto c = x[free_rank_ + k];
        if (c < 0 || c >= torsion_[k]) return false;
    }
    return true;
}

GroupElement FinGenAbGroup::add(const GroupElement& x, const GroupElement& y) const {
    check(x);
    check(y);
    GroupElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = x[i] + y[i];
    return reduce(std::move(z));
}

GroupElement FinGenAbGroup::neg(const GroupElement& x) const {
    check(x);
    GroupElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = -x[i];
    return reduce(std::move(z));
}

GroupElement FinGenAbGroup::sub(const GroupElement& x, const GroupElement& y) const {
    return add(x, neg(y));
}

GroupElement FinGenAbGroup::scale(std::int64_t k, const GroupElement& x) const {
    check(x);
    GroupElement z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t m = modulus(i);
        z[i] = m ? mod_floor(mod_floor(k, m) * mod_floor(x[i], m), m) : k * x[i];
    }
    return reduce(std::move(z));
}

std::optional<std::int64_t> FinGenAbGroup::element_order(const GroupElement& x) const {
    GroupElement y = reduce(x);
    for (int i = 0; i < free_rank_; ++i)
        if (y[i] != 0) return std::nullopt;
    std::int64_t o = 1;
    for (std::size_t k = 0; k < torsion_.size(); ++k) {
        std::int64_t d = torsion_[k];
        o = std::lcm(o, d / std::gcd(d, y[free_rank_ + k]));
    }
    return o;
}

std::vector<GroupElement> FinGenAbGroup::elements() const {
    std::int64_t total = order();
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(total));
    GroupElement cur = zero();
    for (std::int64_t c = 0; c < total; ++c) {
        out.push_back(cur);
        for (std::size_t k = torsion_.size(); k-- > 0;) {
            if (++cur[k] < torsion_[k]) break;
            cur[k] = 0;
        }
    }
    return out;
}

std::int64_t FinGenAbGroup::exponent() const {
    if (!is_finite()) throw std::domain_error("group is infinite");
    return torsion_.empty() ? 1 : torsion_.back();
}

bool FinGenAbGroup::is_elementary_two() const {
    if (!is_finite()) return false;
    for (auto d : torsion_)
        if (d != 2) return false;
    return true;
}

FinGenAbGroup direct_product(const FinGenAbGroup& a, const FinGenAbGroup& b) {
    std::vector<std::int64_t> orders;
    for (int i = 0; i < a.free_rank() + b.free_rank(); ++i) orders.push_back(0);
    for (auto d : a.torsion()) orders.push_back(d);
    for (auto d : b.torsion()) orders.push_back(d);
    return FinGenAbGroup::from_cyclic_orders(orders);
}

GroupElement compose_elements(const FinGenAbGroup& G, const GroupElement& x, const GroupElement& y) {
    return G.add(x, y);
}

std::optional<GroupElement> solve_square(const FinGenAbGroup& G, const GroupElement& a) {
    GroupElement x = G.reduce(a);
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::int64_t m = G.modulus(i);
        if (m == 0) {
            if (x[i] % 2 != 0) return std::nullopt;
            x[i] /= 2;
        } else if (m % 2 == 1) {
            // 2 is invertible mod m
            x[i] = mod_floor(x[i] * ((m + 1) / 2), m);
        } else {
            if (x[i] % 2 != 0) return std::nullopt;
            x[i] /= 2;
        }
    }
    return G.reduce(x);
}

SmithForm smith_normal_form(const IntMatrix& M) {
    std::size_t rows = M.size();
    std::size_t cols = rows ? M[0].size() : 0;
    return snf_dims(M, rows, cols);
}

IntMatrix to_int_matrix(const std::vector<std::vector<std::int64_t>>& rows) {
    IntMatrix M;
    for (const auto& r : rows) M.emplace_back(r.begin(), r.end());
    return M;
}

// ---------------------------------------------------------------- GroupHom

GroupHom::GroupHom(FinGenAbGroup source, FinGenAbGroup target, std::vector<GroupElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.rank()) throw std::invalid_argument("hom: wrong number of images");
    for (std::size_t j = 0; j < images_.size(); ++j) {
        images_[j] = target_.reduce(images_[j]);
        std::int64_t d = source_.modulus(j);
        if (d != 0 && target_.scale(d, images_[j]) != target_.zero())
            throw std::invalid_argument("hom: image of a torsion generator has the wrong order");
    }
}

GroupHom GroupHom::identity(const FinGenAbGroup& G) {
    std::vector<GroupElement> im;
    for (std::size_t i = 0; i < G.rank(); ++i) im.push_back(G.generator(i));
    return {G, G, im};
}

GroupHom GroupHom::zero(const FinGenAbGroup& source, const FinGenAbGroup& target) {
    return {source, target, std::vector<GroupElement>(source.rank(), target.zero())};
}

GroupElement GroupHom::apply(const GroupElement& x) const {
    GroupElement y = source_.reduce(x);
    GroupElement out = target_.zero();
    for (std::size_t j = 0; j < y.size(); ++j)
        if (y[j] != 0) out = target_.add(out, target_.scale(y[j], images_[j]));
    return out;
}

GroupHom GroupHom::after(const GroupHom& first) const {
    if (!(first.target() == source_)) throw std::invalid_argument("hom composition: group mismatch");
    std::vector<GroupElement> im;
    for (const auto& g : first.images()) im.push_back(apply(g));
    return {first.source(), target_, im};
}

Presentation finitely_presented_quotient(std::size_t num_gens,
                                         const std::vector<std::vector<std::int64_t>>& relations) {
    std::vector<std::vector<BigInt>> rows;
    for (const auto& r : relations) {
        if (r.size() != num_gens) throw std::invalid_argument("relation length mismatch");
        rows.emplace_back(r.begin(), r.end());
    }
    auto ech = lattice_echelon(rows, num_gens);
    SmithForm snf = snf_dims(ech, ech.size(), num_gens);
    Presentation p;
    std::vector<GroupElement> im;
    quotient_from_snf(snf, num_gens, p.group, im);
    p.projection = GroupHom(FinGenAbGroup::integers(static_cast<int>(num_gens)), p.group, im);
    // generator order of the quotient: free positions, then torsion positions
    std::vector<std::size_t> pos;
    for (std::size_t i = snf.rank; i < num_gens; ++i) pos.push_back(i);
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.S[i][i] > 1) pos.push_back(i);
    for (std::size_t i : pos) {
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < num_gens; ++c) row.push_back(to_int64(snf.V_inv[i][c]));
        p.section.push_back(row);
    }
    return p;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(FinGenAbGroup parent, std::vector<GroupElement> gens)
    : parent_(std::move(parent)), gens_(std::move(gens)) {
    auto data = std::make_shared<Data>();
    std::size_t n = parent_.rank();
    for (auto& g : gens_) g = parent_.reduce(g);

    std::vector<std::vector<BigInt>> rows;
    for (const auto& g : gens_) rows.push_back(to_big(g));
    for (auto& r : relation_rows(parent_)) rows.push_back(std::move(r));
    auto ech = lattice_echelon(rows, n);
    data->snf = snf_dims(ech, ech.size(), n);
    const SmithForm& snf = data->snf;
    std::size_t rk = snf.rank;

    // quotient G/H
    std::vector<GroupElement> im;
    quotient_from_snf(snf, n, data->quotient, im);
    data->projection = GroupHom(parent_, data->quotient, im);

    // structure of H = L_H / L_G in the lattice basis b_i = s_i * (row i of V^-1)
    IntMatrix R;
    for (const auto& rel : relation_rows(parent_)) {
        auto y = vec_mul(rel, snf.V, n);
        std::vector<BigInt> c(rk);
        for (std::size_t i = 0; i < rk; ++i) c[i] = y[i] / snf.S[i][i];
        R.push_back(std::move(c));
    }
    SmithForm snf2 = snf_dims(R, R.size(), rk);
    std::size_t rk2 = snf2.rank;
    std::vector<std::int64_t> tors;
    std::vector<std::size_t> free_pos, tors_pos;
    for (std::size_t j = rk2; j < rk; ++j) free_pos.push_back(j);
    for (std::size_t j = 0; j < rk2; ++j)
        if (snf2.S[j][j] > 1) {
            tors_pos.push_back(j);
            tors.push_back(to_int64(snf2.S[j][j]));
        }
    data->structure = FinGenAbGroup(static_cast<int>(free_pos.size()), tors);
    data->kept = free_pos;
    data->kept.insert(data->kept.end(), tors_pos.begin(), tors_pos.end());
    data->V2 = snf2.V;

    for (std::size_t j : data->kept) {
        std::vector<BigInt> elt(n, 0);
        for (std::size_t i = 0; i < rk; ++i) {
            const BigInt& w = snf2.V_inv[j][i];
            if (w == 0) continue;
            for (std::size_t c = 0; c < n; ++c) elt[c] += w * snf.S[i][i] * snf.V_inv[i][c];
        }
        GroupElement e(n);
        for (std::size_t c = 0; c < n; ++c) {
            std::int64_t m = parent_.modulus(c);
            e[c] = to_int64(m ? BigInt(elt[c] % m) : elt[c]);
        }
        data->basis.push_back(parent_.reduce(e));
    }

    if (data->structure.is_finite()) {
        for (const auto& c : data->structure.elements()) {
            GroupElement x = parent_.zero();
            for (std::size_t k = 0; k < c.size(); ++k)
                if (c[k]) x = parent_.add(x, parent_.scale(c[k], data->basis[k]));
            data->elements.push_back(x);
        }
        std::sort(data->elements.begin(), data->elements.end());
    }
    data_ = std::move(data);
}

Subgroup Subgroup::whole(const FinGenAbGroup& G) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < G.rank(); ++i) gens.push_back(G.generator(i));
    return {G, gens};
}

bool Subgroup::contains(const GroupElement& x) const {
    if (x.size() != parent_.rank()) return false;
    return data_->projection.apply(x) == data_->quotient.zero();
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
    if (!(parent_ == other.parent_)) return false;
    for (const auto& g : gens_)
        if (!other.contains(g)) return false;
    return true;
}

bool Subgroup::operator==(const Subgroup& other) const {
    return is_subgroup_of(other) && other.is_subgroup_of(*this);
}

GroupElement Subgroup::coordinates(const GroupElement& x) const {
    if (!contains(x)) throw std::invalid_argument("element is not in the subgroup");
    const SmithForm& snf = data_->snf;
    std::size_t n = parent_.rank(), rk = snf.rank;
    auto y = vec_mul(to_big(parent_.reduce(x)), snf.V, n);
    std::vector<BigInt> c(rk);
    for (std::size_t i = 0; i < rk; ++i) c[i] = y[i] / snf.S[i][i];
    auto z = vec_mul(c, data_->V2, rk);
    GroupElement out;
    for (std::size_t k = 0; k < data_->kept.size(); ++k) {
        std::int64_t m = structure().modulus(k);
        const BigInt& v = z[data_->kept[k]];
        out.push_back(to_int64(m ? BigInt(v % m) : v));
    }
    return structure().reduce(out);
}

GroupElement Subgroup::from_coordinates(const GroupElement& c) const {
    GroupElement cc = structure().reduce(c);
    GroupElement x = parent_.zero();
    for (std::size_t k = 0; k < cc.size(); ++k)
        if (cc[k]) x = parent_.add(x, parent_.scale(cc[k], data_->basis[k]));
    return x;
}

const std::vector<GroupElement>& Subgroup::elements() const {
    if (!is_finite()) throw std::domain_error("subgroup is infinite");
    return data_->elements;
}

SubgroupQuotient subgroup_and_quotient(const FinGenAbGroup& G, const std::vector<GroupElement>& gens) {
    Subgroup H(G, gens);
    return {H, H.quotient(), H.projection()};
}

Subgroup kernel(const GroupHom& f) {
    const FinGenAbGroup& G = f.source();
    const FinGenAbGroup& K = f.target();
    std::size_t n = G.rank(), p = K.rank();
    IntMatrix A;
    for (const auto& im : f.images()) A.push_back(to_big(im));
    for (auto& r : relation_rows(K)) A.push_back(std::move(r));
    SmithForm snf = snf_dims(A, A.size(), p);
    std::vector<GroupElement> gens;
    for (std::size_t i = snf.rank; i < A.size(); ++i) {
        GroupElement g(n);
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t m = G.modulus(j);
            g[j] = to_int64(m ? BigInt(snf.U[i][j] % m) : snf.U[i][j]);
        }
        g = G.reduce(g);
        if (g != G.zero()) gens.push_back(g);
    }
    return {G, gens};
}

Subgroup preimage(const GroupHom& f, const Subgroup& H) {
    if (!(H.parent() == f.target())) throw std::invalid_argument("preimage: group mismatch");
    return kernel(H.projection().after(f));
}

Subgroup image(const GroupHom& f, const Subgroup& H) {
    if (!(H.parent() == f.source())) throw std::invalid_argument("image: group mismatch");
    std::vector<GroupElement> gens;
    for (const auto& g : H.generators()) gens.push_back(f.apply(g));
    return {f.target(), gens};
}

Subgroup intersect(const Subgroup& A, const Subgroup& B) {
    if (!(A.parent() == B.parent())) throw std::invalid_argument("intersect: group mismatch");
    const auto& gens = A.generators();
    FinGenAbGroup Zk = FinGenAbGroup::integers(static_cast<int>(gens.size()));
    GroupHom incl(Zk, A.parent(), gens);
    Subgroup coeffs = kernel(B.projection().after(incl));
    std::vector<GroupElement> out;
    for (const auto& c : coeffs.generators()) out.push_back(incl.apply(c));
    return {A.parent(), out};
}

std::pair<Subgroup, Subgroup> squares_and_two_torsion(const FinGenAbGroup& G) {
    std::vector<GroupElement> doubled, im;
    for (std::size_t i = 0; i < G.rank(); ++i) {
        doubled.push_back(G.scale(2, G.generator(i)));
        im.push_back(doubled.back());
    }
    return {Subgroup(G, doubled), kernel(GroupHom(G, G, im))};
}

std::pair<Subgroup, Subgroup> squares_and_two_torsion(const Subgroup& A) {
    const FinGenAbGroup& G = A.parent();
    std::vector<GroupElement> doubled;
    for (const auto& g : A.generators()) doubled.push_back(G.scale(2, g));
    auto two_torsion = squares_and_two_torsion(G).second;
    return {Subgroup(G, doubled), intersect(A, two_torsion)};
}

std::vector<GroupElement> canonical_generators(const Subgroup& H) {
    const FinGenAbGroup& G = H.parent();
    std::size_t n = G.rank();
    IntMatrix rows;
    for (const auto& g : H.generators()) rows.push_back(to_big(G.reduce(g)));
    for (std::size_t i = 0; i < n; ++i)
        if (G.modulus(i) != 0) {
            std::vector<BigInt> r(n, 0);
            r[i] = G.modulus(i);
            rows.push_back(r);
        }
    // row Hermite normal form: positive pivots, entries above a pivot reduced into [0, pivot)
    std::size_t top = 0;
    for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][c] != 0 && (!best || abs(rows[r][c]) < abs(rows[*best][c]))) best = r;
            if (!best) break;
            std::swap(rows[top], rows[*best]);
            bool done = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][c] == 0) continue;
                BigInt q = rows[r][c] / rows[top][c];
                for (std::size_t k = c; k < n; ++k) rows[r][k] -= q * rows[top][k];
                done = done && rows[r][c] == 0;
            }
            if (done) break;
        }
        if (rows[top][c] == 0) continue;
        if (rows[top][c] < 0)
            for (auto& v : rows[top]) v = -v;
        for (std::size_t r = 0; r < top; ++r) {
            BigInt q = rows[r][c] / rows[top][c];
            if (rows[r][c] - q * rows[top][c] < 0) q -= 1;
            for (std::size_t k = c; k < n; ++k) rows[r][k] -= q * rows[top][k];
        }
        ++top;
    }
    std::vector<GroupElement> out;
    for (std::size_t r = 0; r < top; ++r) {
        GroupElement x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = to_int64(rows[r][k]);
        x = G.reduce(x);
        if (x != G.zero()) out.push_back(x);
    }
    return out;
}

GroupElement coset_canonical_rep(const FinGenAbGroup& G, const Subgroup& T, const GroupElement& x) {
    if (!T.is_finite()) throw std::domain_error("coset representative: subgroup is infinite");
    GroupElement xr = G.reduce(x);
    GroupElement best;
    bool first = true;
    for (const auto& t : T.elements()) {
        GroupElement y = G.add(xr, t);
        if (first || y < best) {
            best = std::move(y);
            first = false;
        }
    }
    return best;
}

} // namespace gradekit
