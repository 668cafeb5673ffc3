#include "gkz/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

namespace {

std::optional<std::vector<std::vector<std::size_t>>> parse_simplices(const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    std::vector<std::vector<std::size_t>> out;
    std::stringstream groups(spec);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<std::size_t> simplex;
        std::stringstream items(group);
        std::string item;
        while (std::getline(items, item, ',')) {
            if (item.empty()) continue;
            simplex.push_back(std::stoul(item));
        }
        if (!simplex.empty()) out.push_back(simplex);
    }
    if (out.empty()) return std::nullopt;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"gkzkit - exact GKZ hypergeometric toolkit"};
    app.footer("commands: check, normalize, box-ops, series, rank, verify-main");

    std::string command, input_path, simplices_spec;
    gkz::JobSpec job;
    app.add_option("command", command, "check | normalize | box-ops | series | rank | verify-main")
        ->required();
    app.add_option("input", input_path, "input file (matrix or polytope grammar)")->required();
    app.add_option("--order", job.order, "series truncation order (default 6)");
    app.add_option("--degree-bound", job.degree_bound, "box operator degree bound (default 6)");
    app.add_option("--simplices", simplices_spec,
                   "explicit triangulation, e.g. '2,3,4' or '1,2,3;1,3,4' (1-based columns)");
    app.add_option("--format", job.format, "text | json (default text)")
        ->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);

    std::ifstream in(input_path, std::ios::binary);
    if (!in) {
        std::cerr << "input error: cannot open '" << input_path << "'\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    job.command = command;
    try {
        job.simplices = parse_simplices(simplices_spec);
    } catch (const std::exception&) {
        std::cerr << "input error: malformed --simplices\n";
        return 2;
    }
    job.color = job.format == "text" && isatty(fileno(stdout)) &&
                std::getenv("NO_COLOR") == nullptr;

    gkz::RunResult res = gkz::run(job, buf.str());
    std::cout << res.output;
    return res.exit_code;
}
