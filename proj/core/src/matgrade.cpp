#include "gradekit/matgrade.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace gradekit {

namespace {

std::int64_t isqrt_exact(std::int64_t v) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v ? r : -1;
}

std::string show(const GroupElement& g) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ")";
    return os.str();
}

void check_elements(const FinGenAbGroup& G, std::vector<GroupElement>& v, const char* what) {
    for (auto& g : v) {
        if (g.size() != G.rank()) throw SpecError(std::string(what) + ": entry has the wrong length");
        g = G.reduce(g);
    }
}

// Y with Y^o = I, obtained by rescaling a monomial matrix whose o-th power is scalar.
MonomialMatrix normalize_power(const MonomialMatrix& D, std::int64_t o) {
    MonomialMatrix P = MonomialMatrix::identity(D.size());
    for (std::int64_t i = 0; i < o; ++i) P = P * D;
    auto lambda = P.ratio_to(MonomialMatrix::identity(D.size()));
    if (!lambda || lambda->coeff() != 1) throw std::logic_error("normalization: power is not a root of unity times I");
    const RootOfUnity& r = lambda->root();
    return D.scaled(Scalar(RootOfUnity(-r.num(), r.den() * o)));
}

} // namespace

// ---------------------------------------------------------------- parity extension

ParityExtension make_parity_extension(const FinGenAbGroup& G) {
    std::size_t n = G.rank();
    std::vector<std::vector<std::int64_t>> rels;
    for (std::size_t k = 0; k < G.torsion().size(); ++k) {
        std::vector<std::int64_t> r(n + 1, 0);
        r[G.free_rank() + k] = G.torsion()[k];
        rels.push_back(r);
    }
    std::vector<std::int64_t> two(n + 1, 0);
    two[n] = 2;
    rels.push_back(two);
    Presentation P = finitely_presented_quotient(n + 1, rels);

    ParityExtension ext;
    ext.base = G;
    ext.sharp = P.group;
    std::vector<GroupElement> emb(P.projection.images().begin(), P.projection.images().begin() + n);
    ext.embedding = GroupHom(G, ext.sharp, emb);
    ext.odd = P.projection.images()[n];
    std::vector<GroupElement> base_im, par_im;
    for (const auto& v : P.section) {
        base_im.push_back(G.reduce(GroupElement(v.begin(), v.begin() + n)));
        par_im.push_back({mod_floor(v[n], 2)});
    }
    ext.to_base = GroupHom(ext.sharp, G, base_im);
    ext.parity = GroupHom(ext.sharp, FinGenAbGroup::cyclic(2), par_im);
    return ext;
}

GroupElement ParityExtension::lift(const GroupElement& g, int p) const {
    GroupElement x = embedding.apply(g);
    return (p & 1) ? sharp.add(x, odd) : x;
}

std::pair<GroupElement, int> ParityExtension::split(const GroupElement& x) const {
    return {to_base.apply(x), static_cast<int>(parity.apply(x)[0])};
}

// ---------------------------------------------------------------- bicharacters on subgroups

RootOfUnity value_on(const Subgroup& T, const Bicharacter& beta, const GroupElement& x, const GroupElement& y) {
    return beta.value(T.coordinates(x), T.coordinates(y));
}

Bicharacter bichar_on_generators(const Subgroup& T, const std::vector<GroupElement>& gens, const ExponentMatrix& q) {
    if (!T.is_finite()) throw SpecError("T must be finite");
    std::size_t k = gens.size();
    if (q.size() != k) throw SpecError("beta matrix size does not match the generators of T");
    for (const auto& row : q)
        if (row.size() != k) throw SpecError("beta matrix size does not match the generators of T");
    const FinGenAbGroup& G = T.parent();

    // integer coefficients expressing every element of T in the given generators
    std::map<GroupElement, std::vector<std::int64_t>> coeff;
    std::deque<GroupElement> queue;
    coeff[G.zero()] = std::vector<std::int64_t>(k, 0);
    queue.push_back(G.zero());
    while (!queue.empty()) {
        GroupElement x = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < k; ++i) {
            GroupElement y = G.add(x, G.reduce(gens[i]));
            if (coeff.count(y)) continue;
            auto c = coeff[x];
            c[i] += 1;
            coeff[y] = c;
            queue.push_back(y);
        }
    }
    const auto& basis = T.basis();
    std::size_t s = basis.size();
    ExponentMatrix Q(s, std::vector<RootOfUnity>(s));
    for (std::size_t a = 0; a < s; ++a)
        for (std::size_t b = 0; b < s; ++b) {
            const auto& wa = coeff.at(basis[a]);
            const auto& wb = coeff.at(basis[b]);
            RootOfUnity r;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (wa[i] && wb[j]) r = r * q[i][j].pow(wa[i] * wb[j]);
            Q[a][b] = r;
        }
    Bicharacter beta(T.structure(), Q);
    if (!validate_bicharacter(beta).well_defined) throw SpecError("beta is not well defined on T");
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (!(value_on(T, beta, gens[i], gens[j]) == q[i][j]))
                throw SpecError("beta is not well defined on T (inconsistent with the relations of T)");
    return beta;
}

bool same_bicharacter(const Subgroup& T1, const Bicharacter& b1, const Subgroup& T2, const Bicharacter& b2) {
    if (!(T1.parent() == T2.parent()) || !(T1 == T2)) return false;
    for (const auto& x : T1.basis())
        for (const auto& y : T1.basis())
            if (!(value_on(T1, b1, x, y) == value_on(T2, b2, x, y))) return false;
    return true;
}

// ---------------------------------------------------------------- specs

ParityQuotient parity_quotient(const FinGenAbGroup& G, const GroupElement& t0) {
    if (!G.is_valid(t0) || G.element_order(t0) != 2) throw SpecError("t0 must be an element of order 2");
    auto sq = subgroup_and_quotient(G, {t0});
    return {t0, sq.quotient, sq.projection};
}

EvenAssoc make_even_spec(const FinGenAbGroup& G, const std::vector<GroupElement>& T_gens, const ExponentMatrix& q,
                         std::vector<GroupElement> gamma0, std::vector<GroupElement> gamma1) {
    auto gens = T_gens;
    check_elements(G, gens, "T");
    Subgroup T(G, gens);
    Bicharacter beta = bichar_on_generators(T, gens, q);
    return validate_spec(EvenAssoc{G, T, beta, std::move(gamma0), std::move(gamma1)});
}

OddAssocT make_odd_spec(const FinGenAbGroup& G, const std::vector<std::pair<GroupElement, int>>& T_gens,
                        const ExponentMatrix& q, std::vector<GroupElement> gamma) {
    ParityExtension ext = make_parity_extension(G);
    std::vector<GroupElement> gens;
    for (const auto& [g, p] : T_gens) {
        if (g.size() != G.rank()) throw SpecError("T: entry has the wrong length");
        gens.push_back(ext.lift(g, p));
    }
    Subgroup T(ext.sharp, gens);
    Bicharacter beta = bichar_on_generators(T, gens, q);
    return validate_spec(OddAssocT{G, T, beta, std::move(gamma)});
}

OddAssocG make_odd_g_spec(const FinGenAbGroup& G, const GroupElement& t0, const std::vector<GroupElement>& Tbar_gens,
                          const ExponentMatrix& q, const GroupElement& u, std::vector<GroupElement> gamma) {
    if (t0.size() != G.rank() || u.size() != G.rank()) throw SpecError("t0/u have the wrong length");
    ParityQuotient pq = parity_quotient(G, G.reduce(t0));
    std::vector<GroupElement> gens;
    for (const auto& g : Tbar_gens) {
        if (g.size() != G.rank()) throw SpecError("Tbar: entry has the wrong length");
        gens.push_back(pq.theta.apply(g));
    }
    Subgroup Tbar(pq.Gbar, gens);
    Bicharacter beta_bar = bichar_on_generators(Tbar, gens, q);
    return validate_spec(OddAssocG{G, G.reduce(t0), Tbar, beta_bar, G.reduce(u), std::move(gamma)});
}

namespace {

std::size_t checked_sqrt_order(const Subgroup& T) {
    if (!T.is_finite()) throw SpecError("T must be finite");
    std::int64_t s = isqrt_exact(T.order());
    if (s < 0) throw SpecError("|T| = " + std::to_string(T.order()) + " is not a perfect square");
    return static_cast<std::size_t>(s);
}

void check_beta(const Subgroup& T, const Bicharacter& beta) {
    if (!(beta.domain() == T.structure())) throw SpecError("beta is not defined on T");
    auto rep = validate_bicharacter(beta);
    if (!rep.well_defined) throw SpecError("beta is not well defined");
    if (!rep.alternating) throw SpecError("beta is not alternating");
    if (!radical(beta).nondegenerate) throw SpecError("beta is degenerate");
}

} // namespace

EvenAssoc validate_spec(const EvenAssoc& spec) {
    EvenAssoc out = spec;
    if (!(out.T.parent() == out.G)) throw SpecError("T is not a subgroup of G");
    checked_sqrt_order(out.T);
    check_beta(out.T, out.beta);
    if (out.gamma0.empty() && out.gamma1.empty()) throw SpecError("empty gamma: zero-dimensional algebra");
    check_elements(out.G, out.gamma0, "gamma0");
    check_elements(out.G, out.gamma1, "gamma1");
    return out;
}

OddAssocT validate_spec(const OddAssocT& spec) {
    OddAssocT out = spec;
    ParityExtension ext = make_parity_extension(out.G);
    if (!(out.T.parent() == ext.sharp)) throw SpecError("T is not a subgroup of G x Z2");
    checked_sqrt_order(out.T);
    bool has_odd = false;
    for (const auto& g : out.T.generators())
        if (ext.split(g).second == 1) has_odd = true;
    if (!has_odd) throw SpecError("T has no element of odd parity");
    check_beta(out.T, out.beta);
    if (out.gamma.empty()) throw SpecError("empty gamma: zero-dimensional algebra");
    check_elements(out.G, out.gamma, "gamma");
    parity_element(out);
    return out;
}

OddAssocG validate_spec(const OddAssocG& spec) {
    OddAssocG out = spec;
    ParityQuotient pq = parity_quotient(out.G, out.t0);
    if (!(out.Tbar.parent() == pq.Gbar)) throw SpecError("Tbar is not a subgroup of G/<t0>");
    checked_sqrt_order(out.Tbar);
    check_beta(out.Tbar, out.beta_bar);
    if (!odd_existence_check(out.G, out.t0, out.Tbar, out.beta_bar))
        throw SpecError("no odd grading with these t0 and (Tbar, beta_bar): existence condition fails");
    if (!out.G.is_valid(out.u)) throw SpecError("u is not a valid element");
    auto d = odd_character_data(out.G, out.t0, out.Tbar, out.beta_bar);
    if (out.G.scale(2, out.u) != d.a) throw SpecError("u^2 != a (a = " + show(d.a) + ")");
    if (out.gamma.empty()) throw SpecError("empty gamma: zero-dimensional algebra");
    check_elements(out.G, out.gamma, "gamma");
    return out;
}

AssocSpec validate_spec(const AssocSpec& spec) {
    return std::visit([](const auto& s) -> AssocSpec { return validate_spec(s); }, spec);
}

std::pair<std::size_t, std::size_t> spec_sizes(const AssocSpec& spec) {
    if (auto e = std::get_if<EvenAssoc>(&spec)) {
        std::size_t s = checked_sqrt_order(e->T);
        return {e->gamma0.size() * s, e->gamma1.size() * s};
    }
    if (auto o = std::get_if<OddAssocT>(&spec)) {
        std::size_t s = checked_sqrt_order(o->T);
        return {o->gamma.size() * s / 2, o->gamma.size() * s / 2};
    }
    const auto& g = std::get<OddAssocG>(spec);
    std::size_t s = checked_sqrt_order(g.Tbar);
    return {g.gamma.size() * s, g.gamma.size() * s};
}

// ---------------------------------------------------------------- Xi

std::size_t CosetMultiset::total() const {
    std::size_t t = 0;
    for (const auto& [k, v] : counts) t += v;
    return t;
}

CosetMultiset CosetMultiset::shifted(const GroupElement& g) const {
    CosetMultiset out{G, T, {}};
    for (const auto& [rep, c] : counts) out.counts[coset_canonical_rep(G, T, G.add(rep, g))] += c;
    return out;
}

CosetMultiset xi_multiset(const FinGenAbGroup& G, const Subgroup& T, const std::vector<GroupElement>& gamma) {
    CosetMultiset out{G, T, {}};
    for (const auto& g : gamma) out.counts[coset_canonical_rep(G, T, g)] += 1;
    return out;
}

// ---------------------------------------------------------------- models

PartialMonomial GradedMatrixModel::matrix(std::size_t k) const {
    const auto& b = basis.at(k);
    return PartialMonomial::block(blocks, b.bi, b.bj, division.at(b.t), b.coeff);
}

GradedMatrixModel build_matrix_model(const EvenAssoc& spec_in) {
    EvenAssoc spec = validate_spec(spec_in);
    StandardRealization R(spec.beta);
    GradedMatrixModel M;
    M.group = spec.G;
    M.s = R.size();
    std::size_t k0 = spec.gamma0.size();
    std::vector<GroupElement> g = spec.gamma0;
    g.insert(g.end(), spec.gamma1.begin(), spec.gamma1.end());
    M.blocks = g.size();
    M.m = k0 * M.s;
    M.n = spec.gamma1.size() * M.s;
    M.division_group = spec.beta.domain();
    M.division_elements = R.elements();
    for (std::size_t t = 0; t < R.elements().size(); ++t) M.division.push_back(R.X(t));
    for (std::size_t bi = 0; bi < M.blocks; ++bi)
        for (std::size_t bj = 0; bj < M.blocks; ++bj)
            for (std::size_t t = 0; t < M.division.size(); ++t) {
                ModelBasisElement b;
                b.bi = bi;
                b.bj = bj;
                b.t = t;
                GroupElement tg = spec.T.from_coordinates(M.division_elements[t]);
                b.degree = spec.G.sub(spec.G.add(g[bi], tg), g[bj]);
                b.parity = static_cast<int>(bi >= k0) ^ static_cast<int>(bj >= k0);
                M.basis.push_back(std::move(b));
            }
    std::vector<Scalar> diag;
    for (std::size_t r = 0; r < M.dim(); ++r) diag.push_back(r < M.m ? Scalar() : -Scalar());
    M.upsilon = MonomialMatrix::diagonal(diag);
    return M;
}

GradedMatrixModel build_matrix_model(const OddAssocT& spec_in) {
    OddAssocT spec = validate_spec(spec_in);
    ParityExtension ext = make_parity_extension(spec.G);
    StandardRealization R(spec.beta);
    GradedMatrixModel M;
    M.group = spec.G;
    M.s = R.size();
    M.blocks = spec.gamma.size();
    M.m = M.n = M.blocks * M.s / 2;
    M.division_group = spec.beta.domain();
    M.division_elements = R.elements();
    for (std::size_t t = 0; t < R.elements().size(); ++t) M.division.push_back(R.X(t));
    for (std::size_t bi = 0; bi < M.blocks; ++bi)
        for (std::size_t bj = 0; bj < M.blocks; ++bj)
            for (std::size_t t = 0; t < M.division.size(); ++t) {
                ModelBasisElement b;
                b.bi = bi;
                b.bj = bj;
                b.t = t;
                GroupElement x = ext.sharp.add(ext.lift(spec.gamma[bi], 0), spec.T.from_coordinates(M.division_elements[t]));
                x = ext.sharp.sub(x, ext.lift(spec.gamma[bj], 0));
                auto [deg, p] = ext.split(x);
                b.degree = deg;
                b.parity = p;
                M.basis.push_back(std::move(b));
            }
    // upsilon = I_k (x) d0, d0 the normalized X_{t0}
    GroupElement t0c = spec.T.coordinates(ext.lift(parity_element(spec), 0));
    MonomialMatrix d0 = normalize_power(R.X(t0c), 2);
    std::size_t N = M.dim();
    std::vector<std::size_t> perm(N);
    std::vector<Scalar> sc(N);
    for (std::size_t b = 0; b < M.blocks; ++b)
        for (std::size_t c = 0; c < M.s; ++c) {
            perm[b * M.s + c] = b * M.s + d0.perm()[c];
            sc[b * M.s + c] = d0.scalars()[c];
        }
    M.upsilon = MonomialMatrix(perm, sc);
    return M;
}

GradedMatrixModel build_matrix_model(const OddAssocG& spec) { return build_matrix_model(build_odd_from_G(spec)); }

GradedMatrixModel build_matrix_model(const AssocSpec& spec) {
    return std::visit([](const auto& s) { return build_matrix_model(s); }, spec);
}

namespace {

struct SupportIndex {
    std::map<std::vector<std::ptrdiff_t>, std::vector<std::size_t>> by_support;
    std::vector<PartialMonomial> mats;

    explicit SupportIndex(const GradedMatrixModel& M) {
        for (std::size_t k = 0; k < M.basis.size(); ++k) {
            mats.push_back(M.matrix(k));
            by_support[mats.back().rows()].push_back(k);
        }
    }

    // basis index r and lambda with P = lambda * basis[r]
    std::optional<std::pair<std::size_t, Scalar>> find(const PartialMonomial& P) const {
        auto it = by_support.find(P.rows());
        if (it == by_support.end()) return std::nullopt;
        for (std::size_t r : it->second)
            if (auto l = P.ratio_to(mats[r])) return std::make_pair(r, *l);
        return std::nullopt;
    }
};

} // namespace

GradingReport verify_grading(const GradedMatrixModel& M) {
    GradingReport rep;
    auto fail = [&](const std::string& msg) {
        rep.pass = false;
        if (rep.failures.size() < 20) rep.failures.push_back(msg);
    };
    std::size_t N = M.dim();
    if (M.basis.size() != N * N) fail("basis has " + std::to_string(M.basis.size()) + " elements, expected " + std::to_string(N * N));
    SupportIndex idx(M);
    PartialMonomial ups(M.upsilon);

    for (std::size_t k = 0; k < M.basis.size(); ++k) {
        const auto& b = M.basis[k];
        if (!M.group.is_valid(b.degree)) fail("basis element " + std::to_string(k) + " has an invalid degree");
        rep.support.insert(b.degree);
        (b.parity ? rep.support_odd : rep.support_even).insert(b.degree);
        PartialMonomial conj = ups * idx.mats[k] * ups;
        PartialMonomial expect = b.parity ? idx.mats[k].scaled(-Scalar()) : idx.mats[k];
        if (!(conj == expect)) fail("basis element " + std::to_string(k) + " is not homogeneous of its stated parity");
    }
    // linear independence within each support class
    for (const auto& [rows, ks] : idx.by_support) {
        if (ks.size() == 1) continue;
        std::vector<CycloVector> vecs;
        for (std::size_t k : ks) {
            CycloVector v;
            for (std::size_t j = 0; j < rows.size(); ++j)
                if (rows[j] >= 0) v.push_back(idx.mats[k].scalars()[j].to_cyclotomic());
            vecs.push_back(v);
        }
        if (cyclo_rank(vecs) != ks.size()) fail("basis elements are linearly dependent");
    }
    for (std::size_t k = 0; k < M.basis.size(); ++k)
        for (std::size_t l = 0; l < M.basis.size(); ++l) {
            PartialMonomial P = idx.mats[k] * idx.mats[l];
            if (P.is_zero()) continue;
            auto hit = idx.find(P);
            const auto& a = M.basis[k];
            const auto& b = M.basis[l];
            GroupElement deg = M.group.add(a.degree, b.degree);
            if (!hit) {
                fail("product of basis elements " + std::to_string(k) + ", " + std::to_string(l) + " is not homogeneous");
                rep.offending_pairs.emplace_back(k, l);
                continue;
            }
            const auto& c = M.basis[hit->first];
            if (c.degree != deg || c.parity != ((a.parity + b.parity) & 1)) {
                fail("A_" + show(a.degree) + " A_" + show(b.degree) + " is not contained in A_" + show(deg) +
                     " (basis elements " + std::to_string(k) + ", " + std::to_string(l) + ")");
                rep.offending_pairs.emplace_back(k, l);
            }
        }
    return rep;
}

GradedMatrixModel coarsen(const GradedMatrixModel& model, const GroupHom& alpha) {
    if (!(alpha.source() == model.group)) throw std::invalid_argument("coarsen: homomorphism is not defined on the grading group");
    GradedMatrixModel out = model;
    out.group = alpha.target();
    for (auto& b : out.basis) b.degree = alpha.apply(b.degree);
    return out;
}

// ---------------------------------------------------------------- odd gradings

GroupElement parity_element(const OddAssocT& spec) {
    ParityExtension ext = make_parity_extension(spec.G);
    const auto& S = spec.beta.domain();
    std::vector<GroupElement> even_coords;
    for (const auto& x : spec.T.elements())
        if (ext.split(x).second == 0) even_coords.push_back(spec.T.coordinates(x));
    Subgroup Tplus(S, even_coords);
    Subgroup C = orthogonal_complement(spec.beta, Tplus);
    if (C.order() != 2) throw SpecError("(T+)' does not have order 2");
    GroupElement c = C.elements()[0] == S.zero() ? C.elements()[1] : C.elements()[0];
    auto [g, p] = ext.split(spec.T.from_coordinates(c));
    if (p != 0) throw SpecError("parity element is not even");
    return g;
}

OddCharacterData odd_character_data(const FinGenAbGroup& G, const GroupElement& t0, const Subgroup& Tbar,
                                    const Bicharacter& beta_bar) {
    OddCharacterData d;
    d.pq = parity_quotient(G, t0);
    d.Tplus = preimage(d.pq.theta, Tbar);
    const FinGenAbGroup& S = d.Tplus.structure();
    GroupElement w = d.Tplus.coordinates(t0);
    // lexicographically least character vector with chi(t0) = -1
    std::vector<std::int64_t> c(S.rank(), 0);
    bool found = false;
    for (const auto& cand : S.elements()) {
        RootOfUnity r;
        for (std::size_t i = 0; i < cand.size(); ++i) r = r * RootOfUnity(cand[i] * w[i], S.modulus(i));
        if (r == RootOfUnity::minus_one()) {
            c = cand;
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("no character of T+ takes -1 at t0");
    d.chi = c;
    for (const auto& x : d.Tplus.elements()) {
        if (!character_value(d, x).is_one()) continue;
        bool ok = true;
        for (const auto& y : d.Tplus.basis()) {
            RootOfUnity chi2 = character_value(d, y).pow(2);
            if (!(chi2 == value_on(Tbar, beta_bar, d.pq.theta.apply(x), d.pq.theta.apply(y)))) {
                ok = false;
                break;
            }
        }
        if (ok) {
            d.a = x;
            return d;
        }
    }
    throw std::logic_error("no element a with chi(a) = 1 and chi^2 = beta_bar(a, .)");
}

RootOfUnity character_value(const OddCharacterData& d, const GroupElement& x) {
    GroupElement c = d.Tplus.coordinates(x);
    const FinGenAbGroup& S = d.Tplus.structure();
    RootOfUnity r;
    for (std::size_t i = 0; i < c.size(); ++i) r = r * RootOfUnity(d.chi[i] * c[i], S.modulus(i));
    return r;
}

bool odd_existence_check(const FinGenAbGroup& G, const GroupElement& t0, const Subgroup& Tbar,
                         const Bicharacter& beta_bar) {
    ParityQuotient pq = parity_quotient(G, t0);
    if (!(Tbar.parent() == pq.Gbar)) throw SpecError("Tbar is not a subgroup of G/<t0>");
    Subgroup Tplus = preimage(pq.theta, Tbar);
    Subgroup R = image(pq.theta, squares_and_two_torsion(Tplus).second);
    std::vector<GroupElement> rc;
    for (const auto& g : R.generators()) rc.push_back(Tbar.coordinates(g));
    Subgroup C = orthogonal_complement(beta_bar, Subgroup(Tbar.structure(), rc));
    Subgroup squares = squares_and_two_torsion(pq.Gbar).first;
    for (const auto& g : C.generators())
        if (!squares.contains(Tbar.from_coordinates(g))) return false;
    return true;
}

OddAssocT build_odd_from_G(const OddAssocG& spec_in) {
    OddAssocG spec = validate_spec(spec_in);
    const FinGenAbGroup& G = spec.G;
    OddCharacterData d = odd_character_data(G, spec.t0, spec.Tbar, spec.beta_bar);
    ParityExtension ext = make_parity_extension(G);
    std::vector<GroupElement> gens;
    for (const auto& b : d.Tplus.basis()) gens.push_back(ext.lift(b, 0));
    gens.push_back(ext.lift(spec.u, 1));
    Subgroup T(ext.sharp, gens);

    auto beta_plus = [&](const GroupElement& x, const GroupElement& y) {
        return value_on(spec.Tbar, spec.beta_bar, d.pq.theta.apply(x), d.pq.theta.apply(y));
    };
    auto beta_u = [&](const GroupElement& X, const GroupElement& Y) {
        auto [gx, px] = ext.split(X);
        auto [gy, py] = ext.split(Y);
        GroupElement xp = px ? G.sub(gx, spec.u) : gx;
        GroupElement yp = py ? G.sub(gy, spec.u) : gy;
        RootOfUnity r = beta_plus(xp, yp);
        if (px) r = r * character_value(d, yp);
        if (py) r = r * character_value(d, xp).inverse();
        return r;
    };
    const auto& basis = T.basis();
    ExponentMatrix Q(basis.size(), std::vector<RootOfUnity>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) Q[i][j] = beta_u(basis[i], basis[j]);
    Bicharacter beta(T.structure(), Q);
    if (!is_nondegenerate_alternating(beta)) throw std::logic_error("beta_u is not nondegenerate alternating");
    if (T.order() <= 64) {
        for (const auto& x : T.elements())
            for (const auto& y : T.elements())
                if (!(beta.value(T.coordinates(x), T.coordinates(y)) == beta_u(x, y)))
                    throw std::logic_error("beta_u is not bilinear");
    }
    return validate_spec(OddAssocT{G, T, beta, spec.gamma});
}

ParityQuotient parity_quotient(const OddAssocT& spec) { return parity_quotient(spec.G, parity_element(spec)); }

namespace {

struct EvenPart {
    ParityExtension ext;
    ParityQuotient pq;
    Subgroup Tplus; // in G
    Subgroup Tbar;  // in Gbar
    Bicharacter beta_bar;
};

EvenPart even_part(const OddAssocT& spec) {
    EvenPart e;
    e.ext = make_parity_extension(spec.G);
    e.pq = parity_quotient(spec);
    e.Tplus = preimage(e.ext.embedding, spec.T);
    std::vector<GroupElement> gens;
    for (const auto& g : e.Tplus.generators()) gens.push_back(e.pq.theta.apply(g));
    e.Tbar = Subgroup(e.pq.Gbar, gens);
    std::map<GroupElement, GroupElement> lift;
    for (const auto& x : e.Tplus.elements()) lift.emplace(e.pq.theta.apply(x), x);
    const auto& basis = e.Tbar.basis();
    ExponentMatrix Q(basis.size(), std::vector<RootOfUnity>(basis.size()));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j)
            Q[i][j] = value_on(spec.T, spec.beta, e.ext.lift(lift.at(basis[i]), 0), e.ext.lift(lift.at(basis[j]), 0));
    e.beta_bar = Bicharacter(e.Tbar.structure(), Q);
    return e;
}

} // namespace

EvenAssoc finest_even_coarsening(const OddAssocT& spec_in) {
    OddAssocT spec = validate_spec(spec_in);
    EvenPart e = even_part(spec);
    std::optional<GroupElement> u;
    for (const auto& x : spec.T.elements()) {
        auto [g, p] = e.ext.split(x);
        if (p == 1 && (!u || g < *u)) u = g;
    }
    GroupElement ubar = e.pq.theta.apply(*u);
    std::vector<GroupElement> g0, g1;
    for (const auto& g : spec.gamma) {
        g0.push_back(e.pq.theta.apply(g));
        g1.push_back(e.pq.Gbar.add(ubar, g0.back()));
    }
    return validate_spec(EvenAssoc{e.pq.Gbar, e.Tbar, e.beta_bar, g0, g1});
}

std::pair<Subgroup, Subgroup> square_complement_sides(const OddAssocT& spec_in) {
    OddAssocT spec = validate_spec(spec_in);
    EvenPart e = even_part(spec);
    std::vector<GroupElement> sq;
    for (const auto& x : spec.T.generators()) {
        auto [g, p] = e.ext.split(spec.T.parent().scale(2, x));
        if (p != 0) throw std::logic_error("square of an element of T is odd");
        sq.push_back(e.pq.theta.apply(g));
    }
    Subgroup S(e.pq.Gbar, sq);
    Subgroup R = image(e.pq.theta, squares_and_two_torsion(e.Tplus).second);
    std::vector<GroupElement> rc;
    for (const auto& g : R.generators()) rc.push_back(e.Tbar.coordinates(g));
    Subgroup C = orthogonal_complement(e.beta_bar, Subgroup(e.Tbar.structure(), rc));
    std::vector<GroupElement> cg;
    for (const auto& g : C.generators()) cg.push_back(e.Tbar.from_coordinates(g));
    return {S, Subgroup(e.pq.Gbar, cg)};
}

// ---------------------------------------------------------------- even test, universal group

namespace {

// Whether the partial monomial P lies in the span of the basis elements of degree deg.
bool in_component(const GradedMatrixModel& M, const SupportIndex& idx, const PartialMonomial& P,
                  const GroupElement& deg) {
    if (P.is_zero()) return true;
    if (auto hit = idx.find(P)) return M.basis[hit->first].degree == deg;
    // general case: span membership among the basis elements with the same support
    auto it = idx.by_support.find(P.rows());
    if (it == idx.by_support.end()) return false;
    std::vector<CycloVector> rows;
    for (std::size_t k : it->second) {
        if (M.basis[k].degree != deg) continue;
        CycloVector v;
        for (std::size_t j = 0; j < P.size(); ++j)
            if (P.rows()[j] >= 0) v.push_back(idx.mats[k].scalars()[j].to_cyclotomic());
        rows.push_back(v);
    }
    CycloVector target;
    for (std::size_t j = 0; j < P.size(); ++j)
        if (P.rows()[j] >= 0) target.push_back(P.scalars()[j].to_cyclotomic());
    return !rows.empty() && cyclo_in_span(rows, target);
}

} // namespace

bool is_even_grading(const GradedMatrixModel& M) {
    SupportIndex idx(M);
    PartialMonomial ups(M.upsilon);
    // (a) compatibility with the canonical Z-grading: for odd X in A_g, the
    // component P_0 X P_1 = (X - X upsilon)/2 must stay in A_g, i.e. X upsilon in A_g.
    bool z_compatible = true;
    for (std::size_t k = 0; k < M.basis.size() && z_compatible; ++k)
        if (M.basis[k].parity == 1 && !in_component(M, idx, idx.mats[k] * ups, M.basis[k].degree)) z_compatible = false;
    // (b) the idempotent projecting onto U_0, (I + upsilon)/2, is homogeneous (of degree e);
    // since I is in A_e this means every block piece of upsilon lies in A_e.
    bool morita = true;
    std::size_t s = M.s;
    for (std::size_t bi = 0; bi < M.blocks && morita; ++bi)
        for (std::size_t bj = 0; bj < M.blocks && morita; ++bj) {
            PartialMonomial piece(M.dim());
            for (std::size_t c = 0; c < s; ++c) {
                std::size_t col = bj * s + c;
                std::size_t row = M.upsilon.perm()[col];
                if (row / s == bi) piece.set(row, col, M.upsilon.scalars()[col]);
            }
            if (!in_component(M, idx, piece, M.group.zero())) morita = false;
        }
    if (z_compatible != morita) throw std::logic_error("is_even_grading: the two characterizations disagree");
    return morita;
}

UniversalGroup universal_group(const GradedMatrixModel& M) {
    SupportIndex idx(M);
    std::set<GroupElement> supp;
    for (const auto& b : M.basis) supp.insert(b.degree);
    UniversalGroup out;
    out.support.assign(supp.begin(), supp.end());
    std::map<GroupElement, std::size_t> pos;
    for (std::size_t i = 0; i < out.support.size(); ++i) pos[out.support[i]] = i;
    std::set<std::vector<std::int64_t>> rels;
    std::size_t n = out.support.size();
    for (std::size_t k = 0; k < M.basis.size(); ++k)
        for (std::size_t l = 0; l < M.basis.size(); ++l) {
            PartialMonomial P = idx.mats[k] * idx.mats[l];
            if (P.is_zero()) continue;
            auto hit = idx.find(P);
            if (!hit) throw std::logic_error("universal_group: product is not a multiple of a basis element");
            std::vector<std::int64_t> r(n, 0);
            r[pos[M.basis[k].degree]] += 1;
            r[pos[M.basis[l].degree]] += 1;
            r[pos[M.basis[hit->first].degree]] -= 1;
            rels.insert(r);
        }
    Presentation P = finitely_presented_quotient(n, {rels.begin(), rels.end()});
    out.group = P.group;
    for (std::size_t i = 0; i < n; ++i) out.images.push_back(P.projection.images()[i]);
    return out;
}

// ---------------------------------------------------------------- extraction

namespace {

CycloMatrix mono_cyclo(const MonomialMatrix& D) { return D.to_cyclo(); }

// first nonzero entry position
std::optional<std::pair<std::size_t, std::size_t>> first_nonzero(const CycloMatrix& A) {
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A[i].size(); ++j)
            if (!A[i][j].is_zero()) return std::make_pair(i, j);
    return std::nullopt;
}

std::vector<CycloVector> as_rows(const std::vector<CycloMatrix>& ms) {
    std::vector<CycloVector> out;
    for (const auto& m : ms) out.push_back(cyclo_flatten(m));
    return out;
}

} // namespace

EvenAssoc extract_even_spec(const GradedMatrixModel& M) {
    const FinGenAbGroup& G = M.group;
    std::size_t s = M.s, N = M.dim();
    std::map<GroupElement, std::size_t> didx;
    for (std::size_t t = 0; t < M.division_elements.size(); ++t) didx[M.division_elements[t]] = t;

    // degree of E_00 (x) D_t and the subgroup K of t with degree e
    std::vector<GroupElement> K;
    std::map<std::size_t, GroupElement> deg00;
    for (const auto& b : M.basis)
        if (b.bi == 0 && b.bj == 0) {
            deg00[b.t] = b.degree;
            if (b.degree == G.zero()) K.push_back(M.division_elements[b.t]);
        }
    Subgroup Ksub(M.division_group, K);
    if (static_cast<std::size_t>(Ksub.order()) != K.size()) throw std::logic_error("extraction: degree-e part is not a subgroup");
    // a maximal subgroup L of K whose D_l commute; its averaged idempotent is primitive in the e-component
    std::vector<GroupElement> Lgens;
    for (const auto& k : Ksub.elements()) {
        const MonomialMatrix& Dk = M.division[didx.at(k)];
        bool commutes = true;
        for (const auto& l : Lgens) {
            const MonomialMatrix& Dl = M.division[didx.at(l)];
            commutes = commutes && Dk * Dl == Dl * Dk;
        }
        if (commutes) Lgens.push_back(k);
    }
    Subgroup Lsub(M.division_group, Lgens);
    std::vector<MonomialMatrix> Ygen;
    for (const auto& l : Lsub.basis())
        Ygen.push_back(normalize_power(M.division[didx.at(l)], *M.division_group.element_order(l)));
    CycloMatrix eps = cyclo_zero(s);
    for (const auto& l : Lsub.elements()) {
        GroupElement c = Lsub.coordinates(l);
        MonomialMatrix Y = MonomialMatrix::identity(s);
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::int64_t r = 0; r < c[i]; ++r) Y = Y * Ygen[i];
        eps = cyclo_add(eps, Y.to_cyclo());
    }
    eps = cyclo_scale(Cyclotomic(Rational(1, static_cast<long>(Lsub.order()))), eps);
    if (!(cyclo_mul(eps, eps) == eps)) throw std::logic_error("extraction: epsilon is not idempotent");

    // f A f: one-dimensional components indexed by Tbar
    std::map<GroupElement, std::vector<CycloMatrix>> comp;
    for (const auto& [t, deg] : deg00) {
        CycloMatrix Z = cyclo_mul(cyclo_mul(eps, mono_cyclo(M.division[t])), eps);
        if (!cyclo_is_zero(Z)) comp[deg].push_back(Z);
    }
    std::map<GroupElement, CycloMatrix> rep;
    std::vector<GroupElement> supp;
    for (auto& [deg, zs] : comp) {
        if (cyclo_rank(as_rows(zs)) != 1) throw std::logic_error("extraction: component of fAf is not one-dimensional");
        rep[deg] = zs.front();
        supp.push_back(deg);
    }
    Subgroup Tbar(G, supp);
    if (static_cast<std::size_t>(Tbar.order()) != supp.size()) throw std::logic_error("extraction: support of fAf is not a group");
    std::int64_t E = Tbar.structure().exponent();
    auto commutation = [&](const GroupElement& h1, const GroupElement& h2) {
        CycloMatrix A = cyclo_mul(rep.at(h1), rep.at(h2)), B = cyclo_mul(rep.at(h2), rep.at(h1));
        auto p = first_nonzero(B);
        if (!p) throw std::logic_error("extraction: zero product in fAf");
        Cyclotomic lambda = A[p->first][p->second] * B[p->first][p->second].inverse();
        if (!(cyclo_scale(lambda, B) == A)) throw std::logic_error("extraction: elements do not commute up to a scalar");
        for (std::int64_t j = 0; j < E; ++j)
            if (Cyclotomic(Rational(1), RootOfUnity(j, E)) == lambda) return RootOfUnity(j, E);
        throw std::logic_error("extraction: commutation scalar is not a root of unity");
    };
    const auto& tb = Tbar.basis();
    ExponentMatrix Q(tb.size(), std::vector<RootOfUnity>(tb.size()));
    for (std::size_t i = 0; i < tb.size(); ++i)
        for (std::size_t j = 0; j < tb.size(); ++j) Q[i][j] = commutation(tb[i], tb[j]);
    Bicharacter beta(Tbar.structure(), Q);

    // A f split by upsilon: multiplicities of cosets in gamma0, gamma1
    std::map<GroupElement, std::vector<CycloMatrix>> even_parts, odd_parts;
    for (std::size_t k = 0; k < M.basis.size(); ++k) {
        const auto& b = M.basis[k];
        if (b.bj != 0) continue;
        CycloMatrix De = cyclo_mul(mono_cyclo(M.division[b.t]), eps);
        Cyclotomic c = b.coeff.to_cyclotomic();
        CycloMatrix V(N, CycloVector(s, Cyclotomic(0)));
        for (std::size_t r = 0; r < s; ++r)
            for (std::size_t col = 0; col < s; ++col)
                if (!De[r][col].is_zero()) V[b.bi * s + r][col] = c * De[r][col];
        CycloMatrix UV(N, CycloVector(s, Cyclotomic(0)));
        for (std::size_t r = 0; r < N; ++r) {
            std::size_t to = M.upsilon.perm()[r];
            Cyclotomic sc = M.upsilon.scalars()[r].to_cyclotomic();
            for (std::size_t col = 0; col < s; ++col)
                if (!V[r][col].is_zero()) UV[to][col] = sc * V[r][col];
        }
        CycloMatrix P0(N, CycloVector(s)), P1(N, CycloVector(s));
        Cyclotomic half(Rational(1, 2));
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t col = 0; col < s; ++col) {
                P0[r][col] = half * (V[r][col] + UV[r][col]);
                P1[r][col] = half * (V[r][col] - UV[r][col]);
            }
        even_parts[b.degree].push_back(P0);
        odd_parts[b.degree].push_back(P1);
    }
    auto multiplicities = [&](const std::map<GroupElement, std::vector<CycloMatrix>>& parts) {
        std::map<GroupElement, std::size_t> mult;
        for (const auto& [deg, vs] : parts) {
            std::size_t r = cyclo_rank(as_rows(vs));
            if (r == 0) continue;
            GroupElement c = coset_canonical_rep(G, Tbar, deg);
            auto it = mult.find(c);
            if (it != mult.end() && it->second != r) throw std::logic_error("extraction: multiplicity not constant on a coset");
            mult[c] = r;
        }
        std::vector<GroupElement> gamma;
        for (const auto& [c, r] : mult)
            for (std::size_t i = 0; i < r; ++i) gamma.push_back(c);
        return gamma;
    };
    EvenAssoc out{G, Tbar, beta, multiplicities(even_parts), multiplicities(odd_parts)};
    std::size_t sb = static_cast<std::size_t>(isqrt_exact(Tbar.order()));
    if ((out.gamma0.size() + out.gamma1.size()) * sb != N) throw std::logic_error("extraction: sizes do not add up");
    return validate_spec(out);
}

} // namespace gradekit
