#pragma once

#include "gkz/gkz.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkz {

struct ParseError : std::runtime_error {
    std::string code;
    std::size_t line = 0;
    std::size_t column = 0;

    ParseError(std::string code_, std::size_t line_, std::size_t column_, const std::string& msg);
};

struct ParsedInput {
    AConfig config;
    bool polytope_mode = false;
};

// Text input grammar:
//   matrix mode:   "A r=<r> n=<n> blocks=<N1,...,Nr>" then r+n integer rows
//   polytope mode: "DELTA <n>" followed by one lattice point per line,
//                  one section per block
// Comments start with '#'. Throws ParseError with a diagnostic code.
ParsedInput parse_input(const std::string& text);

// Canonical matrix-mode rendering; parse_input(serialize(c)).config == c.
std::string serialize(const AConfig& c);

struct JobSpec {
    std::string command;  // check | normalize | box-ops | series | rank | verify-main
    unsigned order = 6;
    unsigned degree_bound = 6;
    // 1-based column index sets; when absent the vertex triangulation of
    // the column polytope is used.
    std::optional<std::vector<std::vector<std::size_t>>> simplices;
    std::string format = "text";  // text | json
    bool color = false;           // text mode only
};

struct RunResult {
    int exit_code = 0;  // 0 ok/verified, 1 verification failure, 2 input error
    std::string output;
};

RunResult run(const JobSpec& job, const std::string& input_text);

// FNV-1a 64-bit digest, for stable report fingerprints.
std::string digest_hex(const std::string& bytes);

std::string format_rat(const Rat& q);

}  // namespace gkz
