#pragma once

#include <iosfwd>

#include <nlohmann/json_fwd.hpp>

#include "twistk/catalog.hpp"

namespace twistk {

struct ParseError : Error {
    int line = 0, col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_),
          col(col_) {}
};

// Parsed job file: sections [field], [algebra A], [algebra B], [twist], [run].
struct JobSpec {
    FieldSpec field = FieldSpec::Q();
    std::optional<Presentation> presA, presB;
    std::string fixture;                 // [twist] fixture = <name>
    bool seed_mode = false;              // [twist] mode = seed
    std::vector<std::pair<int, std::string>> twist_lines;  // (line number, text)
    int degree = 8;
    bool degree_explicit = false;
    int tor_degree = 6;
    ExtendPolicy policy = ExtendPolicy::take_canonical;
    std::vector<std::string> split_names;  // primed B generators
};

JobSpec parse_job(std::istream& in);

// expression parsing helpers (shared with twist lines and fixtures)
NcPoly parse_relation(const std::string& text, const GeneratorSet& gens, const FieldSpec& f,
                      int line_no = 0);

struct ResolvedJob {
    AlgebraPtr A, B;
    std::optional<TwistingMap> table;
    bool is_seed = false;
    std::optional<SeparableSplit> split;
};

// Builds algebras and the twisting table described by the job (fixture or
// explicit sections).
ResolvedJob resolve_job(const JobSpec& job);

// serialize a table in the [twist] line format; parse is its inverse
std::vector<std::string> table_lines(const TwistingMap& tw);
TwistingMap parse_table_lines(const std::vector<std::pair<int, std::string>>& lines, const AlgebraPtr& A,
                              const AlgebraPtr& B, int bound);

// Runs one CLI command and returns the full report document
// {"schema": "twistk/1", "command": ..., "payload": ...}.
nlohmann::json run_command(const std::string& command, const JobSpec& job);

}  // namespace twistk
