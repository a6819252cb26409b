#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gradekit_cli/commands.hpp"

using namespace gradekit::cli;

namespace {

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int emit(const CommandResult& r) {
    std::cout << r.out.dump(2) << "\n";
    return r.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Group gradings on matrix superalgebras and the Lie superalgebras A(m,n), P(n)"};
    app.require_subcommand(1);

    std::string file, a, b, mode = "assoc";
    auto* verify = app.add_subcommand("verify", "validate a spec and verify the grading it builds");
    verify->add_option("-f,--file", file, "spec JSON ('-' for stdin)")->required();
    bool model = false;
    verify->add_flag("--model", model, "include the homogeneous basis of the model");

    auto* iso = app.add_subcommand("iso", "decide whether two gradings are isomorphic");
    iso->add_option("-a", a, "first spec JSON")->required();
    iso->add_option("-b", b, "second spec JSON")->required();
    iso->add_option("--mode", mode, "assoc, lie or p")->check(CLI::IsMember({"assoc", "lie", "p"}));

    std::string family;
    std::vector<std::size_t> sizes;
    auto* fine = app.add_subcommand("fine", "list fine gradings: 'even m n', 'odd n' or 'p n'");
    fine->add_option("family", family, "even, odd or p")->required()->check(CLI::IsMember({"even", "odd", "p"}));
    fine->add_option("sizes", sizes, "sizes")->required();

    auto* ugroup = app.add_subcommand("ugroup", "universal group of the grading a spec builds");
    ugroup->add_option("-f,--file", file, "spec JSON ('-' for stdin)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return emit(cmd_verify(slurp(file), model));
        if (*iso) return emit(cmd_iso(slurp(a), slurp(b), mode));
        if (*fine) {
            std::size_t want = family == "even" ? 2 : 1;
            if (sizes.size() != want) {
                std::cerr << "fine " << family << " takes " << want << " size argument(s)\n";
                return 2;
            }
            return emit(cmd_fine(family, sizes[0], want == 2 ? sizes[1] : 0));
        }
        if (*ugroup) return emit(cmd_ugroup(slurp(file)));
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 2;
}
