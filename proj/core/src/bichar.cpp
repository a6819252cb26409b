#include "gradekit/bichar.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace gradekit {

namespace {

std::int64_t common_denominator(const ExponentMatrix& q) {
    std::int64_t N = 1;
    for (const auto& row : q)
        for (const auto& r : row) N = std::lcm(N, r.den());
    return N;
}

// Exponent scaled to Z/N.
std::int64_t scaled(const RootOfUnity& r, std::int64_t N) { return r.num() * (N / r.den()); }

} // namespace

Bicharacter::Bicharacter(FinGenAbGroup domain, ExponentMatrix q) : domain_(std::move(domain)), q_(std::move(q)) {
    if (!domain_.is_finite()) throw std::invalid_argument("bicharacter domain must be finite");
    std::size_t s = domain_.rank();
    if (q_.size() != s) throw std::invalid_argument("bicharacter matrix has the wrong size");
    for (const auto& row : q_)
        if (row.size() != s) throw std::invalid_argument("bicharacter matrix has the wrong size");
}

RootOfUnity Bicharacter::value(const GroupElement& s, const GroupElement& t) const {
    if (!domain_.is_valid(s) || !domain_.is_valid(t)) throw std::invalid_argument("element outside the bicharacter domain");
    RootOfUnity r;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == 0) continue;
        for (std::size_t j = 0; j < t.size(); ++j)
            if (t[j] != 0) r = r * q_[i][j].pow(s[i] * t[j]);
    }
    return r;
}

Bicharacter Bicharacter::inverse() const {
    ExponentMatrix q = q_;
    for (auto& row : q)
        for (auto& r : row) r = r.inverse();
    return {domain_, q};
}

RootOfUnity bichar_value(const Bicharacter& beta, const GroupElement& s, const GroupElement& t) {
    return beta.value(s, t);
}

BicharacterReport validate_bicharacter(const Bicharacter& beta) {
    BicharacterReport rep{true, true};
    const auto& q = beta.q();
    const auto& D = beta.domain();
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
            if (!q[i][j].pow(D.modulus(i)).is_one() || !q[i][j].pow(D.modulus(j)).is_one()) rep.well_defined = false;
            if (!(q[i][j] * q[j][i]).is_one()) rep.alternating = false;
        }
    for (std::size_t i = 0; i < q.size(); ++i)
        if (!q[i][i].is_one()) rep.alternating = false;
    return rep;
}

RadicalResult radical(const Bicharacter& beta) {
    const auto& T = beta.domain();
    std::int64_t N = common_denominator(beta.q());
    std::size_t s = T.rank();
    FinGenAbGroup target = N == 1 ? FinGenAbGroup() : FinGenAbGroup(0, std::vector<std::int64_t>(s, N));
    std::vector<GroupElement> im;
    for (std::size_t i = 0; i < s; ++i) {
        GroupElement v;
        if (N > 1)
            for (std::size_t j = 0; j < s; ++j) v.push_back(scaled(beta.q()[i][j], N));
        im.push_back(v);
    }
    Subgroup rad = kernel(GroupHom(T, target, im));
    bool nondeg = rad.order() == 1;
    return {rad, nondeg};
}

bool is_nondegenerate_alternating(const Bicharacter& beta) {
    auto rep = validate_bicharacter(beta);
    return rep.well_defined && rep.alternating && radical(beta).nondegenerate;
}

Subgroup orthogonal_complement(const Bicharacter& beta, const Subgroup& A) {
    const auto& T = beta.domain();
    if (!(A.parent() == T)) throw std::invalid_argument("orthogonal complement: subgroup of a different group");
    const auto& gens = A.generators();
    std::int64_t N = common_denominator(beta.q());
    if (N == 1 || gens.empty()) return Subgroup::whole(T);
    FinGenAbGroup target(0, std::vector<std::int64_t>(gens.size(), N));
    std::vector<GroupElement> im;
    for (std::size_t i = 0; i < T.rank(); ++i) {
        GroupElement v;
        for (const auto& a : gens) v.push_back(scaled(beta.value(T.generator(i), a), N));
        im.push_back(v);
    }
    return kernel(GroupHom(T, target, im));
}

DualPairDecomposition symplectic_decomposition(const Bicharacter& beta) {
    if (!is_nondegenerate_alternating(beta)) throw std::invalid_argument("symplectic decomposition needs a nondegenerate alternating bicharacter");
    const auto& T = beta.domain();
    DualPairDecomposition out;
    Subgroup W = Subgroup::whole(T);
    std::vector<GroupElement> as, bs;
    // Low-index generators win ties: scan elements colexicographically.
    auto colex = [](const GroupElement& x, const GroupElement& y) {
        return std::lexicographical_compare(x.rbegin(), x.rend(), y.rbegin(), y.rend());
    };
    while (W.order() > 1) {
        auto elts = W.elements();
        std::sort(elts.begin(), elts.end(), colex);
        GroupElement a;
        std::int64_t best = 0;
        for (const auto& x : elts) {
            std::int64_t o = *T.element_order(x);
            if (o > best) {
                best = o;
                a = x;
            }
        }
        GroupElement b;
        bool found = false;
        for (const auto& y : elts)
            if (beta.value(a, y).order() == best) {
                b = y;
                found = true;
                break;
            }
        if (!found) throw std::logic_error("symplectic decomposition: no partner found");
        out.pairs.emplace_back(a, b);
        as.push_back(a);
        bs.push_back(b);
        W = intersect(W, orthogonal_complement(beta, Subgroup(T, {a, b})));
    }
    out.A = Subgroup(T, as);
    out.B = Subgroup(T, bs);
    return out;
}

bool check_dual_pairs(const Bicharacter& beta, const DualPairDecomposition& d) {
    const auto& T = beta.domain();
    if (d.A.order() * d.B.order() != T.order()) return false;
    if (intersect(d.A, d.B).order() != 1) return false;
    for (const auto& x : d.A.elements())
        for (const auto& y : d.A.elements())
            if (!beta.value(x, y).is_one()) return false;
    for (const auto& x : d.B.elements())
        for (const auto& y : d.B.elements())
            if (!beta.value(x, y).is_one()) return false;
    for (std::size_t i = 0; i < d.pairs.size(); ++i)
        for (std::size_t j = 0; j < d.pairs.size(); ++j) {
            auto v = beta.value(d.pairs[i].first, d.pairs[j].second);
            if (i == j) {
                auto oa = *T.element_order(d.pairs[i].first);
                auto ob = *T.element_order(d.pairs[i].second);
                if (v.order() != oa || oa != ob) return false;
            } else if (!v.is_one()) {
                return false;
            }
        }
    return true;
}

StandardPair standard_pair(const FinGenAbGroup& H) {
    if (!H.is_finite()) throw std::invalid_argument("standard pair: H must be finite");
    std::vector<std::int64_t> tors;
    for (auto d : H.torsion()) {
        tors.push_back(d);
        tors.push_back(d);
    }
    FinGenAbGroup T(0, tors);
    std::size_t s = tors.size();
    ExponentMatrix q(s, std::vector<RootOfUnity>(s));
    for (std::size_t i = 0; i < H.torsion().size(); ++i) {
        std::int64_t d = H.torsion()[i];
        q[2 * i][2 * i + 1] = RootOfUnity(1, d);
        q[2 * i + 1][2 * i] = RootOfUnity(-1, d);
    }
    return {T, Bicharacter(T, q)};
}

Bicharacter beta_ell(int l) {
    std::size_t s = static_cast<std::size_t>(2 * l);
    FinGenAbGroup T(0, std::vector<std::int64_t>(s, 2));
    ExponentMatrix q(s, std::vector<RootOfUnity>(s));
    for (std::size_t i = 0; i < s; ++i) q[i][s - 1 - i] = RootOfUnity::minus_one();
    return {T, q};
}

Bicharacter symplectic_cyclic(std::int64_t d) {
    FinGenAbGroup T(0, {d, d});
    ExponentMatrix q(2, std::vector<RootOfUnity>(2));
    q[0][1] = RootOfUnity(1, d);
    q[1][0] = RootOfUnity(-1, d);
    return {T, q};
}

std::optional<GroupHom> beta_automorphism_exists(const Bicharacter& beta, const GroupElement& t0,
                                                 const GroupElement& t0p) {
    const auto& T = beta.domain();
    if (T.element_order(t0) != 2 || T.element_order(t0p) != 2)
        throw std::invalid_argument("automorphism search: t0 must have order 2");
    if (!is_nondegenerate_alternating(beta)) throw std::invalid_argument("automorphism search: degenerate bicharacter");
    std::size_t s = T.rank();
    auto elts = T.elements();

    // Generators that t0 involves come first so the target condition prunes early.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < s; ++i)
        if (t0[i] != 0) order.push_back(i);
    std::size_t decisive = order.size();
    for (std::size_t i = 0; i < s; ++i)
        if (t0[i] == 0) order.push_back(i);

    std::vector<std::vector<std::size_t>> candidates(s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t k = 0; k < elts.size(); ++k)
            if (T.scale(T.modulus(i), elts[k]) == T.zero()) candidates[i].push_back(k);

    std::vector<GroupElement> img(s);
    std::vector<bool> assigned(s, false);

    auto consistent = [&](std::size_t i) {
        for (std::size_t j = 0; j < s; ++j) {
            if (!assigned[j] || j == i) continue;
            if (!(beta.value(img[i], img[j]) == beta.q()[i][j])) return false;
        }
        return true;
    };
    auto image_of_t0 = [&]() {
        GroupElement y = T.zero();
        for (std::size_t i = 0; i < s; ++i)
            if (t0[i]) y = T.add(y, T.scale(t0[i], img[i]));
        return y;
    };

    auto search = [&](auto&& self, std::size_t depth) -> bool {
        if (depth == decisive && image_of_t0() != t0p) return false;
        if (depth == s) return true;
        std::size_t i = order[depth];
        for (std::size_t k : candidates[i]) {
            img[i] = elts[k];
            assigned[i] = true;
            if (consistent(i) && self(self, depth + 1)) return true;
            assigned[i] = false;
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    return GroupHom(T, T, img);
}

} // namespace gradekit
