#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gecsyn/core.hpp"

namespace gecsyn {

/// One line of a parallel TSV file: `incorrect<TAB>correct`.
struct RawPair {
    std::string incorrect;
    std::string correct;
};

/// Parses one TSV line. Throws ParseError (byte offset) on a missing or extra tab.
RawPair parse_tsv_line(const std::string &line);

/// Reads all non-blank lines; ParseError carries the 1-based line number.
std::vector<RawPair> read_parallel_tsv(std::istream &in);

/// Edit as stored in a JSON-lines record: surfaces only.
struct EditRecord {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string replacement; // space-joined surfaces, may be empty
    std::string tag;
};

/// JSON-lines pair record: `src` (incorrect), `tgt` (correct), `tags`, and
/// optionally `realized`, `edits` and `prefix`.
struct PairRecord {
    std::string src;
    std::string tgt;
    std::vector<std::string> tags;
    std::optional<std::vector<std::string>> realized;
    std::optional<std::vector<EditRecord>> edits;
    std::optional<std::string> prefix;
};

std::string to_json_line(const PairRecord &record);
/// Throws ParseError on malformed JSON or missing required fields.
PairRecord parse_json_line(const std::string &line);

std::vector<PairRecord> read_json_lines(std::istream &in);

EditRecord to_record(const Edit &edit);

} // namespace gecsyn
