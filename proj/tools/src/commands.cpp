#include "gradekit_cli/commands.hpp"

#include <map>

namespace gradekit::cli {

namespace {

CommandResult parse_failure(const std::string& command, const std::string& msg) {
    return {{{"command", command}, {"verdict", "parse-error"}, {"error", msg}}, 2};
}

CommandResult domain_failure(const std::string& command, const std::string& verdict, const std::string& msg) {
    return {{{"command", command}, {"verdict", verdict}, {"error", msg}}, 1};
}

// Runs f, mapping parse problems to exit 2 and invalid parameters to exit 1.
template <class F>
CommandResult guarded(const std::string& command, F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        return parse_failure(command, e.what());
    } catch (const SpecError& e) {
        return domain_failure(command, "invalid", e.what());
    } catch (const std::invalid_argument& e) {
        return domain_failure(command, "invalid", e.what());
    }
}

json element_list(const std::set<GroupElement>& s) {
    json a = json::array();
    for (const auto& x : s) a.push_back(to_json(x));
    return a;
}

json dims_json(const std::map<GroupElement, std::size_t>& d) {
    json a = json::array();
    for (const auto& [g, n] : d) a.push_back({{"degree", to_json(g)}, {"dim", n}});
    return a;
}

AssocSpec as_assoc(const AnySpec& s) {
    switch (s.index()) {
    case 0: return std::get<EvenAssoc>(s);
    case 1: return std::get<OddAssocT>(s);
    case 2: return std::get<OddAssocG>(s);
    default: throw SpecError("expected an associative spec (even, odd or odd_g)");
    }
}

json rational_json(const Rational& r) {
    return json::array({numerator(r).convert_to<std::int64_t>(), denominator(r).convert_to<std::int64_t>()});
}

// one entry per basis matrix coeff * E_{bi,bj} (x) D_t
json assoc_model_json(const GradedMatrixModel& M) {
    json a = json::array();
    for (const auto& b : M.basis)
        a.push_back({{"block", {b.bi, b.bj}},
                     {"t", to_json(M.division_elements[b.t])},
                     {"degree", to_json(b.degree)},
                     {"parity", b.parity}});
    return a;
}

// nonzero entries [i, j, [num, den]] of each basis matrix, per component
json p_model_json(const PGradedModel& P) {
    json a = json::array();
    for (const auto& c : P.components) {
        json basis = json::array();
        for (const auto& X : c.basis) {
            json entries = json::array();
            for (std::size_t i = 0; i < X.size(); ++i)
                for (std::size_t j = 0; j < X.size(); ++j)
                    if (X(i, j) != 0) entries.push_back({i, j, rational_json(X(i, j))});
            basis.push_back(entries);
        }
        a.push_back({{"degree", to_json(c.degree)}, {"z", c.z}, {"basis", basis}});
    }
    return a;
}

json verify_assoc(const AssocSpec& spec, bool emit_model) {
    GradedMatrixModel M = build_matrix_model(spec);
    GradingReport rep = verify_grading(M);
    std::map<GroupElement, std::size_t> dims;
    for (const auto& b : M.basis) ++dims[b.degree];
    auto [m, n] = spec_sizes(spec);
    json j{{"sizes", {m, n}},
           {"pass", rep.pass},
           {"support", element_list(rep.support)},
           {"support_even", element_list(rep.support_even)},
           {"support_odd", element_list(rep.support_odd)},
           {"components", dims_json(dims)},
           {"lie_components", dims_json(restrict_type_I(M))},
           {"failures", rep.failures}};
    if (emit_model) j["model"] = assoc_model_json(M);
    return j;
}

json verify_p(const PSpec& spec, bool emit_model) {
    PGradedModel P = build_P_model(spec);
    PReport rep = verify_P_graded(P);
    json comps = json::array();
    for (const auto& c : P.components) comps.push_back({{"degree", to_json(c.degree)}, {"z", c.z}, {"dim", c.basis.size()}});
    json z = json::object();
    for (const auto& [k, v] : rep.z_dims) z[std::to_string(k)] = v;
    json j{{"n", spec.n}, {"pass", rep.pass}, {"dim", rep.dim}, {"z_dims", z}, {"components", comps}, {"failures", rep.failures}};
    if (emit_model) j["model"] = p_model_json(P);
    return j;
}

} // namespace

CommandResult cmd_verify(const std::string& text, bool emit_model) {
    return guarded("verify", [&]() -> CommandResult {
        AnySpec spec = spec_from_json(parse_text(text));
        json body = std::holds_alternative<PSpec>(spec) ? verify_p(std::get<PSpec>(spec), emit_model)
                                                           : verify_assoc(as_assoc(spec), emit_model);
        bool pass = body["pass"].get<bool>();
        json out{{"command", "verify"}, {"verdict", pass ? "pass" : "fail"}, {"kind", kind_of(spec)}, {"spec", to_json(spec)}};
        out.update(body);
        return {out, pass ? 0 : 1};
    });
}

CommandResult cmd_iso(const std::string& a_text, const std::string& b_text, const std::string& mode) {
    return guarded("iso", [&]() -> CommandResult {
        if (mode != "assoc" && mode != "lie" && mode != "p") throw ParseError("mode must be assoc, lie or p");
        AnySpec a = spec_from_json(parse_text(a_text));
        AnySpec b = spec_from_json(parse_text(b_text));
        std::optional<IsoWitness> w;
        if (mode == "p") {
            if (!std::holds_alternative<PSpec>(a) || !std::holds_alternative<PSpec>(b))
                throw SpecError("mode p expects two P(n) specs");
            w = iso_P(std::get<PSpec>(a), std::get<PSpec>(b));
        } else if (mode == "assoc") {
            w = iso_assoc(as_assoc(a), as_assoc(b));
        } else {
            w = iso_lie_typeI(as_assoc(a), as_assoc(b));
        }
        json out{{"command", "iso"}, {"mode", mode}, {"verdict", w ? "isomorphic" : "non-isomorphic"}};
        if (w) out["witness"] = to_json(*w);
        return {out, w ? 0 : 1};
    });
}

CommandResult cmd_fine(const std::string& family, std::size_t a, std::size_t b) {
    return guarded("fine", [&]() -> CommandResult {
        std::vector<FineGradingDescriptor> ds;
        json size;
        if (family == "even") {
            ds = enumerate_even_fine(a, b);
            size = {a, b};
        } else if (family == "odd") {
            ds = enumerate_odd_fine(a);
            size = {a};
        } else if (family == "p") {
            ds = enumerate_P_fine(a);
            size = {a};
        } else {
            throw ParseError("family must be even, odd or p");
        }
        json list = json::array();
        for (const auto& d : ds) list.push_back(to_json(d));
        return {{{"command", "fine"}, {"verdict", "ok"}, {"family", family}, {"size", size}, {"count", ds.size()},
                 {"descriptors", list}},
                0};
    });
}

CommandResult cmd_ugroup(const std::string& text) {
    return guarded("ugroup", [&]() -> CommandResult {
        AnySpec spec = spec_from_json(parse_text(text));
        UniversalGroup u = std::holds_alternative<PSpec>(spec) ? universal_group(build_P_model(std::get<PSpec>(spec)))
                                                               : universal_group(build_matrix_model(as_assoc(spec)));
        json support = json::array(), images = json::array();
        for (const auto& x : u.support) support.push_back(to_json(x));
        for (const auto& x : u.images) images.push_back(to_json(x));
        return {{{"command", "ugroup"}, {"verdict", "ok"}, {"kind", kind_of(spec)}, {"universal", to_json(u.group)},
                 {"support", support}, {"images", images}},
                0};
    });
}

} // namespace gradekit::cli
