#include "gradekit_cli/serialize.hpp"


namespace gradekit::cli {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ParseError("expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

std::int64_t integer(const json& j, const char* what) {
    if (!j.is_number_integer()) throw ParseError(std::string(what) + ": expected an integer");
    return j.get<std::int64_t>();
}

const json& array(const json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
    return j;
}

std::vector<GroupElement> elements(const FinGenAbGroup& G, const json& j, const char* what) {
    std::vector<GroupElement> out;
    for (const auto& x : array(j, what)) out.push_back(element_from_json(G, x));
    return out;
}

ExponentMatrix exponents(const json& j, std::size_t r) {
    array(j, "q");
    if (j.size() != r) throw ParseError("q: expected " + std::to_string(r) + " rows");
    ExponentMatrix q;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != r) throw ParseError("q: rows must have " + std::to_string(r) + " entries");
        q.emplace_back();
        for (const auto& x : row) q.back().push_back(root_from_json(x));
    }
    return q;
}

json elements_json(const std::vector<GroupElement>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

json q_json(const ExponentMatrix& q) {
    json a = json::array();
    for (const auto& row : q) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        a.push_back(r);
    }
    return a;
}

// beta on arbitrary generators of its subgroup
ExponentMatrix values_on(const Subgroup& T, const Bicharacter& beta, const std::vector<GroupElement>& gens) {
    ExponentMatrix q(gens.size(), std::vector<RootOfUnity>(gens.size()));
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < gens.size(); ++j) q[i][j] = value_on(T, beta, gens[i], gens[j]);
    return q;
}

} // namespace

json to_json(const FinGenAbGroup& G) { return {{"free", G.free_rank()}, {"torsion", G.torsion()}}; }

json to_json(const GroupElement& x) { return json(x); }

json to_json(const RootOfUnity& r) { return json::array({r.num(), r.den()}); }

json to_json(const EvenAssoc& s) {
    auto gens = canonical_generators(s.T);
    return {{"kind", "even"},
            {"group", to_json(s.G)},
            {"T", elements_json(gens)},
            {"q", q_json(values_on(s.T, s.beta, gens))},
            {"gamma0", elements_json(s.gamma0)},
            {"gamma1", elements_json(s.gamma1)}};
}

json to_json(const OddAssocT& s) {
    ParityExtension ext = make_parity_extension(s.G);
    auto gens = canonical_generators(s.T);
    json T = json::array();
    for (const auto& b : gens) {
        auto [g, p] = ext.split(b);
        T.push_back({{"g", to_json(g)}, {"parity", p}});
    }
    return {{"kind", "odd"},
            {"group", to_json(s.G)},
            {"T", T},
            {"q", q_json(values_on(s.T, s.beta, gens))},
            {"gamma", elements_json(s.gamma)}};
}

json to_json(const OddAssocG& s) {
    ParityQuotient pq = parity_quotient(s.G, s.t0);
    // generators of Tbar written through representatives in G
    std::vector<GroupElement> reps;
    Subgroup Tplus = preimage(pq.theta, s.Tbar);
    for (const auto& b : canonical_generators(Tplus))
        if (pq.theta.apply(b) != pq.Gbar.zero()) reps.push_back(b);
    std::vector<GroupElement> images;
    for (const auto& r : reps) images.push_back(pq.theta.apply(r));
    return {{"kind", "odd_g"},  {"group", to_json(s.G)},
            {"t0", to_json(s.t0)}, {"Tbar", elements_json(reps)},
            {"q", q_json(values_on(s.Tbar, s.beta_bar, images))},
            {"u", to_json(s.u)},   {"gamma", elements_json(s.gamma)}};
}

json to_json(const PSpec& s) {
    auto gens = canonical_generators(s.T);
    return {{"kind", "p"},
            {"group", to_json(s.G)},
            {"T", elements_json(gens)},
            {"q", q_json(values_on(s.T, s.beta, gens))},
            {"gamma", elements_json(s.gamma)},
            {"g0", to_json(s.g0)}};
}

json to_json(const AnySpec& s) {
    return std::visit([](const auto& x) { return to_json(x); }, s);
}

json to_json(const IsoWitness& w) { return {{"g", to_json(w.g)}, {"swap", w.swap}, {"delta", w.delta}}; }

json to_json(const FineGradingDescriptor& d) {
    json j{{"family", family_name(d.family)}, {"ell", d.ell}};
    switch (d.family) {
    case FineGradingDescriptor::Family::Even:
        j["H"] = to_json(d.H);
        j["k0"] = d.k0;
        j["k1"] = d.k1;
        j["spec"] = to_json(*d.even);
        break;
    case FineGradingDescriptor::Family::Odd:
        j["H"] = to_json(d.H);
        j["t0"] = to_json(d.t0);
        j["k"] = d.k;
        j["spec"] = to_json(*d.odd);
        break;
    case FineGradingDescriptor::Family::P:
        j["k"] = d.k;
        j["spec"] = to_json(*d.p);
        break;
    }
    j["universal"] = to_json(d.universal);
    return j;
}

FinGenAbGroup group_from_json(const json& j) {
    std::int64_t r = integer(field(j, "free"), "free");
    if (r < 0) throw ParseError("free must be nonnegative");
    std::vector<std::int64_t> tor;
    for (const auto& d : array(field(j, "torsion"), "torsion")) {
        std::int64_t v = integer(d, "torsion");
        if (v < 1) throw ParseError("torsion orders must be positive");
        tor.push_back(v);
    }
    try {
        return FinGenAbGroup(static_cast<int>(r), tor);
    } catch (const std::invalid_argument& e) {
        throw SpecError(std::string("group: ") + e.what());
    }
}

GroupElement element_from_json(const FinGenAbGroup& G, const json& j) {
    array(j, "element");
    if (j.size() != G.rank())
        throw ParseError("element has " + std::to_string(j.size()) + " coordinates, group has rank " + std::to_string(G.rank()));
    GroupElement x;
    for (const auto& c : j) x.push_back(integer(c, "element coordinate"));
    return G.reduce(x);
}

RootOfUnity root_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw ParseError("exponent: expected [num, den]");
    std::int64_t num = j[0].get<std::int64_t>(), den = j[1].get<std::int64_t>();
    if (den <= 0) throw ParseError("exponent: denominator must be positive");
    return RootOfUnity(num, den);
}

AnySpec spec_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw ParseError("kind: expected a string");
    const std::string k = kind.get<std::string>();
    FinGenAbGroup G = group_from_json(field(j, "group"));
    if (k == "even") {
        auto T = elements(G, field(j, "T"), "T");
        return make_even_spec(G, T, exponents(field(j, "q"), T.size()), elements(G, field(j, "gamma0"), "gamma0"),
                              elements(G, field(j, "gamma1"), "gamma1"));
    }
    if (k == "odd") {
        std::vector<std::pair<GroupElement, int>> T;
        for (const auto& t : array(field(j, "T"), "T")) {
            std::int64_t p = integer(field(t, "parity"), "parity");
            if (p != 0 && p != 1) throw ParseError("parity must be 0 or 1");
            T.emplace_back(element_from_json(G, field(t, "g")), static_cast<int>(p));
        }
        return make_odd_spec(G, T, exponents(field(j, "q"), T.size()), elements(G, field(j, "gamma"), "gamma"));
    }
    if (k == "odd_g") {
        auto T = elements(G, field(j, "Tbar"), "Tbar");
        return make_odd_g_spec(G, element_from_json(G, field(j, "t0")), T, exponents(field(j, "q"), T.size()),
                               element_from_json(G, field(j, "u")), elements(G, field(j, "gamma"), "gamma"));
    }
    if (k == "p") {
        auto T = elements(G, field(j, "T"), "T");
        return make_p_spec(G, T, exponents(field(j, "q"), T.size()), elements(G, field(j, "gamma"), "gamma"),
                           element_from_json(G, field(j, "g0")));
    }
    throw ParseError("unknown kind \"" + k + "\"");
}

json parse_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
}

std::string kind_of(const AnySpec& s) {
    static const char* names[] = {"even", "odd", "odd_g", "p"};
    return names[s.index()];
}

} // namespace gradekit::cli
