#include "gecsyn/corruptor.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "gecsyn/error.hpp"
#include "gecsyn/rng.hpp"
#include "json.hpp"

namespace gecsyn {

using nlohmann::json;

namespace {

constexpr std::string_view kPrefixHead = "grammar_error: (";
constexpr const char *kInventoryFormat = "gecsyn-inventory";
constexpr int kInventoryVersion = 1;

bool is_capitalized(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

std::string capitalize(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

// Sentence-initial capital removed unless the word looks like a name or "I".
std::string decapitalize(const std::string &s, const Lexicon &lexicon) {
    if (s == "I" || !is_capitalized(s) || !lexicon.contains(s)) return s;
    std::string out = s;
    out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
    return out;
}

bool same_text(std::string_view a, std::string_view b) { return to_lower(a) == to_lower(b); }

// A replacement that only changes letter case is applied verbatim.
bool case_only(const std::vector<std::string> &from, const std::vector<std::string> &to) {
    if (from.size() != to.size() || from.empty()) return false;
    for (std::size_t k = 0; k < from.size(); ++k) {
        if (!same_text(from[k], to[k])) return false;
    }
    return true;
}

std::vector<std::string> surfaces_of(std::span<const AnnotatedToken> tokens) {
    std::vector<std::string> out;
    for (const auto &t : tokens) out.push_back(t.surface);
    return out;
}

std::optional<Pos> parse_pos(const json &j) {
    if (j.is_null()) return std::nullopt;
    auto p = pos_from_name(j.get<std::string>());
    if (!p) throw ParseError("unknown pos '" + j.get<std::string>() + "' in inventory", 0);
    return p;
}

Inflection parse_form(const json &j) {
    auto f = inflection_from_name(j.get<std::string>());
    if (!f) throw ParseError("unknown inflection '" + j.get<std::string>() + "' in inventory", 0);
    return *f;
}

json pattern_to_json(const WeightedPattern &wp) {
    const Pattern &p = wp.pattern;
    json j;
    j["kind"] = pattern_kind_name(p.kind);
    j["weight"] = wp.weight;
    auto pos_or_null = [](std::optional<Pos> pos) { return pos ? json(pos_name(*pos)) : json(nullptr); };
    switch (p.kind) {
    case PatternKind::Replace:
        j["from"] = p.from;
        j["to"] = p.to;
        break;
    case PatternKind::Insert:
        j["to"] = p.to;
        j["left"] = pos_or_null(p.left);
        j["right"] = pos_or_null(p.right);
        break;
    case PatternKind::Inflect:
        j["pos"] = pos_name(p.pos);
        j["from"] = inflection_name(p.from_form);
        j["to"] = inflection_name(p.to_form);
        break;
    case PatternKind::Reorder: {
        json seq = json::array();
        for (Pos pos : p.pos_sequence) seq.push_back(pos_name(pos));
        j["pos"] = std::move(seq);
        j["order"] = p.order;
        break;
    }
    }
    return j;
}

WeightedPattern pattern_from_json(const json &j) {
    WeightedPattern wp;
    Pattern &p = wp.pattern;
    const auto kind = j.at("kind").get<std::string>();
    wp.weight = j.at("weight").get<std::size_t>();
    if (wp.weight < 1) throw ParseError("pattern weight must be at least 1", 0);
    if (kind == "replace") {
        p.kind = PatternKind::Replace;
        p.from = j.at("from").get<std::vector<std::string>>();
        p.to = j.at("to").get<std::vector<std::string>>();
        if (p.from.empty()) throw ParseError("replace pattern needs a non-empty 'from'", 0);
    } else if (kind == "insert") {
        p.kind = PatternKind::Insert;
        p.to = j.at("to").get<std::vector<std::string>>();
        p.left = parse_pos(j.at("left"));
        p.right = parse_pos(j.at("right"));
        if (p.to.empty()) throw ParseError("insert pattern needs tokens", 0);
    } else if (kind == "inflect") {
        p.kind = PatternKind::Inflect;
        p.pos = *parse_pos(j.at("pos"));
        p.from_form = parse_form(j.at("from"));
        p.to_form = parse_form(j.at("to"));
    } else if (kind == "reorder") {
        p.kind = PatternKind::Reorder;
        for (const auto &name : j.at("pos")) p.pos_sequence.push_back(*parse_pos(name));
        p.order = j.at("order").get<std::vector<std::size_t>>();
        auto sorted = p.order;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (sorted[i] != i) throw ParseError("reorder pattern order is not a permutation", 0);
        }
        if (p.order.size() != p.pos_sequence.size() || p.order.size() < 2) {
            throw ParseError("reorder pattern needs matching pos and order of length >= 2", 0);
        }
    } else {
        throw ParseError("unknown pattern kind '" + kind + "'", 0);
    }
    return wp;
}

// Output order of a transposition: incorrect[k] = correct[order[k]].
std::optional<std::vector<std::size_t>> permutation(std::span<const AnnotatedToken> correct,
                                                    std::span<const AnnotatedToken> incorrect) {
    if (correct.size() != incorrect.size()) return std::nullopt;
    std::vector<bool> used(correct.size(), false);
    std::vector<std::size_t> order;
    for (const auto &tok : incorrect) {
        bool found = false;
        for (std::size_t i = 0; i < correct.size(); ++i) {
            if (!used[i] && same_text(correct[i].surface, tok.surface)) {
                used[i] = true;
                order.push_back(i);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return order;
}

} // namespace

std::string encode_prefix(const TagSet &tags, std::string_view text, const TagInventory &inventory) {
    std::string out(kPrefixHead);
    for (std::size_t i = 0; i < kNumTags; ++i) out += tags.contains(inventory.at(i)) ? 'b' : 'a';
    out += ") ";
    out += text;
    return out;
}

std::string encode_prefix(const TagSet &tags, const Sentence &sentence, const TagInventory &inventory) {
    return encode_prefix(tags, sentence.text(), inventory);
}

DecodedPrefix decode_prefix(std::string_view line, const TagInventory &inventory) {
    for (std::size_t i = 0; i < kPrefixHead.size(); ++i) {
        if (i >= line.size() || line[i] != kPrefixHead[i]) throw ParseError("expected 'grammar_error: ('", i);
    }
    DecodedPrefix out;
    std::size_t pos = kPrefixHead.size();
    std::size_t n = 0;
    while (pos < line.size() && line[pos] != ')') {
        const char c = line[pos];
        if (c != 'a' && c != 'b') throw ParseError("tag characters must be 'a' or 'b'", pos);
        if (n == kNumTags) throw ParseError("more than 24 tag characters", pos);
        if (c == 'b') out.tags.insert(inventory.at(n));
        ++n;
        ++pos;
    }
    if (pos >= line.size()) throw ParseError("missing ')'", pos);
    if (n != kNumTags) {
        throw ParseError("expected 24 tag characters, found " + std::to_string(n), pos);
    }
    ++pos;
    if (pos >= line.size() || line[pos] != ' ') throw ParseError("expected a space after ')'", pos);
    out.text = std::string(line.substr(pos + 1));
    return out;
}

std::string_view pattern_kind_name(PatternKind kind) {
    switch (kind) {
    case PatternKind::Replace: return "replace";
    case PatternKind::Insert: return "insert";
    case PatternKind::Inflect: return "inflect";
    case PatternKind::Reorder: return "reorder";
    }
    return "replace";
}

std::string Pattern::key() const { return pattern_to_json({*this, 1}).dump(); }

void EditInventory::add(ErrorTag tag, const Pattern &pattern, std::size_t count) {
    if (count == 0) return;
    auto &table = tables_[tag_index(tag)];
    for (auto &wp : table) {
        if (wp.pattern == pattern) {
            wp.weight += count;
            return;
        }
    }
    table.push_back({pattern, count});
}

std::size_t EditInventory::pattern_count() const {
    std::size_t n = 0;
    for (const auto &t : tables_) n += t.size();
    return n;
}

std::size_t EditInventory::total_weight(ErrorTag tag) const {
    std::size_t n = 0;
    for (const auto &wp : tables_[tag_index(tag)]) n += wp.weight;
    return n;
}

std::string EditInventory::to_json() const {
    json tables = json::array();
    for (std::size_t t = 0; t < kNumTags; ++t) {
        if (tables_[t].empty()) continue;
        json patterns = json::array();
        for (const auto &wp : tables_[t]) patterns.push_back(pattern_to_json(wp));
        tables.push_back({{"tag", tag_name(tag_at(t))}, {"patterns", std::move(patterns)}});
    }
    json j;
    j["format"] = kInventoryFormat;
    j["version"] = kInventoryVersion;
    j["tables"] = std::move(tables);
    return j.dump(1);
}

void EditInventory::save(const std::filesystem::path &path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write inventory file " + path.string());
    out << to_json() << '\n';
}

EditInventory EditInventory::from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("inventory is not valid JSON: ") + e.what(), e.byte);
    }
    try {
        if (j.at("format").get<std::string>() != kInventoryFormat) throw ParseError("not an inventory file", 0);
        if (j.at("version").get<int>() != kInventoryVersion) throw ParseError("unsupported inventory version", 0);
        EditInventory inv;
        for (const auto &table : j.at("tables")) {
            const auto name = table.at("tag").get<std::string>();
            const auto tag = tag_from_name(name);
            if (!tag) throw ParseError("unknown tag '" + name + "' in inventory", 0);
            for (const auto &p : table.at("patterns")) {
                auto wp = pattern_from_json(p);
                inv.add(*tag, wp.pattern, wp.weight);
            }
        }
        return inv;
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed inventory: ") + e.what(), 0);
    }
}

EditInventory EditInventory::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open inventory file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

Corruptor::Corruptor(std::shared_ptr<const EditInventory> inventory, std::shared_ptr<const Lexicon> lexicon)
    : inventory_(std::move(inventory)), tokenizer_(std::move(lexicon)) {}

std::optional<Candidate> Corruptor::match(const Sentence &s, const Pattern &p, std::size_t start) const {
    const Lexicon &lex = tokenizer_.lexicon();
    Candidate c;
    c.start = start;
    switch (p.kind) {
    case PatternKind::Replace: {
        if (start + p.from.size() > s.size()) return std::nullopt;
        if (start == 0 && p.to.empty()) return std::nullopt;
        for (std::size_t k = 0; k < p.from.size(); ++k) {
            if (to_lower(s[start + k].surface) != p.from[k]) return std::nullopt;
        }
        c.end = start + p.from.size();
        c.tokens = p.to;
        if (case_only(p.from, p.to)) {
            bool changed = false;
            for (std::size_t k = 0; k < p.to.size(); ++k) changed = changed || s[start + k].surface != p.to[k];
            if (!changed) return std::nullopt;
        } else if (start == 0 && is_capitalized(s[0].surface)) {
            c.tokens[0] = capitalize(c.tokens[0]);
        }
        break;
    }
    case PatternKind::Insert: {
        if (start == 0 || start > s.size()) return std::nullopt;
        if (!p.left || s[start - 1].pos != *p.left) return std::nullopt;
        const std::optional<Pos> right = start < s.size() ? std::optional<Pos>(s[start].pos) : std::nullopt;
        if (right != p.right) return std::nullopt;
        c.end = start;
        c.tokens = p.to;
        break;
    }
    case PatternKind::Inflect: {
        if (start >= s.size()) return std::nullopt;
        const auto &tok = s[start];
        if (tok.pos != p.pos) return std::nullopt;
        if (lex.form_of(tok.surface, tok.lemma, tok.pos) != p.from_form) return std::nullopt;
        auto word = lex.inflect(tok.lemma, tok.pos, p.to_form);
        if (!word || same_text(*word, tok.surface)) return std::nullopt;
        c.end = start + 1;
        c.tokens = {is_capitalized(tok.surface) ? capitalize(*word) : *word};
        break;
    }
    case PatternKind::Reorder: {
        const std::size_t n = p.pos_sequence.size();
        if (start == 0 || start + n > s.size()) return std::nullopt;
        for (std::size_t k = 0; k < n; ++k) {
            if (s[start + k].pos != p.pos_sequence[k]) return std::nullopt;
        }
        bool changed = false;
        for (std::size_t k = 0; k < n; ++k) {
            c.tokens.push_back(s[start + p.order[k]].surface);
            changed = changed || !same_text(c.tokens.back(), s[start + k].surface);
        }
        if (!changed) return std::nullopt;
        c.end = start + n;
        break;
    }
    }
    return c;
}

std::vector<Candidate> Corruptor::candidates(const Sentence &sentence, ErrorTag tag) const {
    std::vector<Candidate> out;
    const auto patterns = inventory_->patterns(tag);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        for (std::size_t start = 0; start <= sentence.size(); ++start) {
            auto c = match(sentence, patterns[i].pattern, start);
            if (!c) continue;
            c->tag = tag;
            c->pattern_index = i;
            c->weight = patterns[i].weight;
            out.push_back(std::move(*c));
        }
    }
    return out;
}

Sentence Corruptor::apply(const Sentence &sentence, const Candidate &c) const {
    std::vector<std::string> words;
    const auto all = sentence.surfaces();
    words.insert(words.end(), all.begin(), all.begin() + static_cast<std::ptrdiff_t>(c.start));
    words.insert(words.end(), c.tokens.begin(), c.tokens.end());
    words.insert(words.end(), all.begin() + static_cast<std::ptrdiff_t>(c.end), all.end());
    return tokenizer_.annotate_tokens(words);
}

CorruptionResult Corruptor::corrupt(const Sentence &sentence, const TagSet &tags, std::size_t top_k,
                                    std::uint64_t seed) const {
    if (top_k == 0) throw InputError("top_k must be at least 1");
    CorruptionResult result;
    result.output = sentence;
    result.requested = tags;
    if (tags.empty()) return result;

    Rng rng(seed);
    auto order = tags.tags();
    rng.shuffle(std::span<ErrorTag>(order));

    auto &applied = result.applied_edits;
    for (ErrorTag tag : order) {
        auto cands = candidates(result.output, tag);
        std::erase_if(cands, [&](const Candidate &c) {
            return std::any_of(applied.begin(), applied.end(),
                               [&](const Edit &e) { return c.start <= e.end && e.start <= c.end; });
        });
        if (cands.empty()) continue;
        std::stable_sort(cands.begin(), cands.end(), [](const Candidate &a, const Candidate &b) {
            if (a.weight != b.weight) return a.weight > b.weight;
            if (a.pattern_index != b.pattern_index) return a.pattern_index < b.pattern_index;
            return a.start < b.start;
        });
        if (cands.size() > top_k) cands.resize(top_k);

        std::size_t total = 0;
        for (const auto &c : cands) total += c.weight;
        double r = rng.unit() * static_cast<double>(total);
        std::size_t pick = cands.size() - 1;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            r -= static_cast<double>(cands[i].weight);
            if (r < 0) {
                pick = i;
                break;
            }
        }
        const Candidate &c = cands[pick];

        const auto &toks = result.output.tokens();
        Edit edit;
        edit.start = c.start;
        edit.end = c.start + c.tokens.size();
        edit.replacement.assign(toks.begin() + static_cast<std::ptrdiff_t>(c.start),
                                toks.begin() + static_cast<std::ptrdiff_t>(c.end));
        edit.tag = tag;
        const auto shift = static_cast<std::ptrdiff_t>(c.tokens.size()) - static_cast<std::ptrdiff_t>(c.end - c.start);
        for (auto &e : applied) {
            if (e.start >= c.end) {
                e.start = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(e.start) + shift);
                e.end = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(e.end) + shift);
            }
        }
        applied.push_back(std::move(edit));
        result.output = apply(result.output, c);
        result.realized.insert(tag);
    }
    std::sort(applied.begin(), applied.end(), [](const Edit &a, const Edit &b) { return a.start < b.start; });
    return result;
}

CorruptionResult corrupt(const Sentence &sentence, const TagSet &tags, const EditInventory &inventory,
                         std::size_t top_k, std::uint64_t seed) {
    const Corruptor corruptor(std::shared_ptr<const EditInventory>(std::shared_ptr<void>(), &inventory));
    return corruptor.corrupt(sentence, tags, top_k, seed);
}

TagSet verify_realized(const CorruptionResult &result, const Sentence &original, const Classifier &classifier) {
    if (result.output == original) return {};
    if (result.output.empty() || original.empty()) return {};
    return tagset_from_edits(classifier.edits(result.output, original));
}

EditInventory mine_inventory(std::span<const ParallelPair> pairs, const Classifier &classifier, MiningReport *report) {
    const Lexicon &lex = classifier.lexicon();
    const EditInventory empty;
    const Corruptor probe(std::shared_ptr<const EditInventory>(std::shared_ptr<void>(), &empty),
                          std::shared_ptr<const Lexicon>(std::shared_ptr<void>(), &lex));
    MiningReport rep;
    EditInventory inv;

    // Applying `p` at `start` of the correct sentence must give back exactly
    // one edit of the same tag.
    auto reproduces = [&](const Pattern &p, ErrorTag tag, const Sentence &target, std::size_t start,
                          std::size_t length) {
        auto c = probe.match(target, p, start);
        if (!c || c->end != start + length) return false;
        const Sentence corrupted = probe.apply(target, *c);
        if (corrupted.empty()) return false;
        const auto found = classifier.edits(corrupted, target);
        return found.size() == 1 && found[0].tag == tag;
    };

    for (const auto &input : pairs) {
        ++rep.pairs;
        if (input.source.empty() || input.target.empty()) continue;
        const ParallelPair pair = input.edits ? input : classifier.annotate_pair(input);
        const Sentence &src = pair.source;
        const Sentence &tgt = pair.target;
        std::ptrdiff_t offset = 0; // target index minus source index
        for (const auto &edit : *pair.edits) {
            const auto tstart = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(edit.start) + offset);
            offset += static_cast<std::ptrdiff_t>(edit.replacement.size()) -
                      static_cast<std::ptrdiff_t>(edit.end - edit.start);
            if (!edit.tag) continue;
            ++rep.edits;
            const ErrorTag tag = *edit.tag;
            const std::span<const AnnotatedToken> correct(edit.replacement);
            const std::span<const AnnotatedToken> incorrect(src.tokens().data() + edit.start, edit.end - edit.start);

            std::vector<Pattern> tries;
            if (correct.empty()) {
                Pattern p;
                p.kind = PatternKind::Insert;
                p.to = surfaces_of(incorrect);
                if (tstart > 0) p.left = tgt[tstart - 1].pos;
                if (tstart < tgt.size()) p.right = tgt[tstart].pos;
                tries.push_back(std::move(p));
            } else {
                if (tag == ErrorTag::WordOrder && correct.size() >= 2) {
                    if (auto order = permutation(correct, incorrect)) {
                        Pattern p;
                        p.kind = PatternKind::Reorder;
                        for (const auto &t : correct) p.pos_sequence.push_back(t.pos);
                        p.order = *order;
                        tries.push_back(std::move(p));
                    }
                }
                if (correct.size() == 1 && incorrect.size() == 1 && correct[0].pos == incorrect[0].pos &&
                    correct[0].lemma == incorrect[0].lemma) {
                    const auto &c = correct[0];
                    const Inflection from = lex.form_of(c.surface, c.lemma, c.pos);
                    const Inflection to = lex.form_of(incorrect[0].surface, c.lemma, c.pos);
                    const auto word = lex.inflect(c.lemma, c.pos, to);
                    if (from != Inflection::None && to != Inflection::None && from != to && word &&
                        same_text(*word, incorrect[0].surface)) {
                        Pattern p;
                        p.kind = PatternKind::Inflect;
                        p.pos = c.pos;
                        p.from_form = from;
                        p.to_form = to;
                        tries.push_back(std::move(p));
                    }
                }
                Pattern exact;
                exact.kind = PatternKind::Replace;
                for (const auto &t : correct) exact.from.push_back(to_lower(t.surface));
                exact.to = surfaces_of(incorrect);
                if (tstart == 0 && !exact.to.empty() && !case_only(exact.from, exact.to)) {
                    exact.to[0] = decapitalize(exact.to[0], lex);
                }
                tries.push_back(std::move(exact));
            }

            bool kept = false;
            for (std::size_t i = 0; i < tries.size(); ++i) {
                if (!reproduces(tries[i], tag, tgt, tstart, correct.size())) continue;
                inv.add(tag, tries[i]);
                if (i > 0) ++rep.fallbacks;
                kept = true;
                break;
            }
            if (kept) {
                ++rep.kept;
                ++rep.kept_per_tag[tag_index(tag)];
            } else {
                ++rep.dropped;
                ++rep.dropped_per_tag[tag_index(tag)];
            }
        }
    }
    if (report) *report = rep;
    if (inv.empty()) throw EmptyInventoryError("no usable edits to mine an inventory from");
    return inv;
}

} // namespace gecsyn
