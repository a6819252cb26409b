#pragma once

#include <string>

#include "gradekit_cli/serialize.hpp"

namespace gradekit::cli {

// Exit codes: 0 pass / isomorphic, 1 domain failure / non-isomorphic, 2 parse error.
struct CommandResult {
    json out;
    int exit_code = 0;
};

// emit_model adds the homogeneous basis of the model to the report
CommandResult cmd_verify(const std::string& spec_text, bool emit_model = false);
CommandResult cmd_iso(const std::string& a_text, const std::string& b_text, const std::string& mode);
CommandResult cmd_fine(const std::string& family, std::size_t a, std::size_t b = 0);
CommandResult cmd_ugroup(const std::string& spec_text);

} // namespace gradekit::cli
