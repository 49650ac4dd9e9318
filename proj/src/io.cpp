#include "gecsyn/io.hpp"

#include <istream>

#include "gecsyn/error.hpp"
#include "json.hpp"

namespace gecsyn {

using nlohmann::json;

namespace {

bool is_blank(const std::string &line) {
    return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

void strip_cr(std::string &line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

} // namespace

RawPair parse_tsv_line(const std::string &line) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError("expected incorrect<TAB>correct", line.size());
    auto extra = line.find('\t', tab + 1);
    if (extra != std::string::npos) throw ParseError("more than one tab", extra);
    return {line.substr(0, tab), line.substr(tab + 1)};
}

std::vector<RawPair> read_parallel_tsv(std::istream &in) {
    std::vector<RawPair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (is_blank(line)) continue;
        try {
            out.push_back(parse_tsv_line(line));
        } catch (const ParseError &e) {
            throw ParseError("malformed parallel TSV", lineno, true);
        }
    }
    return out;
}

EditRecord to_record(const Edit &edit) {
    return {edit.start, edit.end, join_surfaces(edit.replacement),
            edit.tag ? std::string(tag_name(*edit.tag)) : std::string()};
}

std::string to_json_line(const PairRecord &r) {
    json j;
    j["src"] = r.src;
    j["tgt"] = r.tgt;
    j["tags"] = r.tags;
    if (r.realized) j["realized"] = *r.realized;
    if (r.edits) {
        json edits = json::array();
        for (const auto &e : *r.edits) {
            edits.push_back({{"start", e.start}, {"end", e.end}, {"replacement", e.replacement}, {"tag", e.tag}});
        }
        j["edits"] = std::move(edits);
    }
    if (r.prefix) j["prefix"] = *r.prefix;
    return j.dump();
}

PairRecord parse_json_line(const std::string &line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw ParseError("record is not a JSON object", 0);
    PairRecord r;
    try {
        r.src = j.at("src").get<std::string>();
        r.tgt = j.at("tgt").get<std::string>();
        r.tags = j.value("tags", std::vector<std::string>{});
        if (j.contains("realized")) r.realized = j.at("realized").get<std::vector<std::string>>();
        if (j.contains("edits")) {
            std::vector<EditRecord> edits;
            for (const auto &e : j.at("edits")) {
                edits.push_back({e.at("start").get<std::size_t>(), e.at("end").get<std::size_t>(),
                                 e.value("replacement", std::string()), e.value("tag", std::string())});
            }
            r.edits = std::move(edits);
        }
        if (j.contains("prefix")) r.prefix = j.at("prefix").get<std::string>();
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad pair record: ") + e.what(), 0);
    }
    return r;
}

std::vector<PairRecord> read_json_lines(std::istream &in) {
    std::vector<PairRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        strip_cr(line);
        if (is_blank(line)) continue;
        try {
            out.push_back(parse_json_line(line));
        } catch (const ParseError &e) {
            throw ParseError(std::string("malformed JSON-lines record: ") + e.what(), lineno, true);
        }
    }
    return out;
}

} // namespace gecsyn
