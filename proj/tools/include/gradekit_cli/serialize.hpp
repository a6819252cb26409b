#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "gradekit/classify.hpp"

namespace gradekit::cli {

using json = nlohmann::ordered_json;

// Malformed JSON or a payload of the wrong shape.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using AnySpec = std::variant<EvenAssoc, OddAssocT, OddAssocG, PSpec>;

json to_json(const FinGenAbGroup& G);
json to_json(const GroupElement& x);
json to_json(const RootOfUnity& r);
json to_json(const EvenAssoc& s);
json to_json(const OddAssocT& s);
json to_json(const OddAssocG& s);
json to_json(const PSpec& s);
json to_json(const AnySpec& s);
json to_json(const IsoWitness& w);
json to_json(const FineGradingDescriptor& d);

FinGenAbGroup group_from_json(const json& j);
GroupElement element_from_json(const FinGenAbGroup& G, const json& j);
RootOfUnity root_from_json(const json& j);

// ParseError for shape problems, SpecError for well-formed but invalid parameters.
AnySpec spec_from_json(const json& j);
json parse_text(const std::string& text);

std::string kind_of(const AnySpec& s);

} // namespace gradekit::cli
