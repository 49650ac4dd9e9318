#include "gecsyn/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include "builtin_data.hpp"
#include "gecsyn/error.hpp"

namespace gecsyn {

namespace {

constexpr std::array<std::string_view, 11> kInflectionNames = {
    "none", "singular", "plural", "base", "3sg", "past", "participle", "gerund", "positive", "comparative",
    "superlative",
};

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

std::vector<std::string> split_tabs(const std::string &line) {
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
        auto tab = line.find('\t', start);
        cols.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return cols;
}

bool skip_line(std::string &line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line.empty() || line[0] == '#';
}

std::string key_of(std::string_view lemma, Pos pos) {
    std::string k(lemma);
    k += '|';
    k += pos_name(pos);
    return k;
}

// Words ending in -s that are not plurals or third-person forms.
bool s_exception(std::string_view w) {
    return ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || w.size() <= 3;
}

// Undo consonant doubling: "stopp" -> "stop". Keeps ll/ss/zz/ff which are usually part of the stem.
std::string undouble(std::string stem) {
    const auto n = stem.size();
    if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        std::string_view("lsfz").find(stem[n - 1]) == std::string_view::npos) {
        stem.pop_back();
    }
    return stem;
}

} // namespace

std::string_view inflection_name(Inflection form) { return kInflectionNames[static_cast<std::size_t>(form)]; }

std::optional<Inflection> inflection_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kInflectionNames.size(); ++i) {
        if (kInflectionNames[i] == name) return static_cast<Inflection>(i);
    }
    return std::nullopt;
}

std::string regular_plural(std::string_view noun) {
    std::string w(noun);
    if (ends_with(w, "s") || ends_with(w, "x") || ends_with(w, "z") || ends_with(w, "ch") || ends_with(w, "sh")) {
        return w + "es";
    }
    if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) return w.substr(0, w.size() - 1) + "ies";
    return w + "s";
}

std::string regular_third_person(std::string_view verb) {
    if (verb == "go" || verb == "do") return std::string(verb) + "es";
    if (verb == "have") return "has";
    return regular_plural(verb);
}

// One vowel group ending consonant-vowel-consonant: stop, swim, plan.
bool doubles_final(const std::string &w) {
    const std::size_t n = w.size();
    if (n < 3 || is_vowel(w[n - 3]) || !is_vowel(w[n - 2]) || is_vowel(w[n - 1])) return false;
    if (w[n - 1] == 'w' || w[n - 1] == 'x' || w[n - 1] == 'y') return false;
    std::size_t groups = 0;
    for (std::size_t i = 0; i < n; ++i) groups += is_vowel(w[i]) && (i == 0 || !is_vowel(w[i - 1]));
    return groups == 1;
}

std::string regular_past(std::string_view verb) {
    std::string w(verb);
    if (ends_with(w, "e")) return w + "d";
    if (doubles_final(w)) return w + w.back() + "ed";
    if (w.size() > 1 && w.back() == 'y' && !is_vowel(w[w.size() - 2])) return w.substr(0, w.size() - 1) + "ied";
    return w + "ed";
}

std::string regular_gerund(std::string_view verb) {
    std::string w(verb);
    if (ends_with(w, "ie")) return w.substr(0, w.size() - 2) + "ying";
    if (ends_with(w, "e") && !ends_with(w, "ee") && !ends_with(w, "ye") && !ends_with(w, "oe") && w != "be") {
        return w.substr(0, w.size() - 1) + "ing";
    }
    if (doubles_final(w)) return w + w.back() + "ing";
    return w + "ing";
}

Lexicon Lexicon::parse(std::istream &lexicon, std::istream &irregular) {
    Lexicon lex;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lexicon, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        auto cols = split_tabs(line);
        if (cols.size() != 3 || cols[0].empty()) throw ParseError("lexicon: expected word<TAB>POS<TAB>lemma", lineno, true);
        auto pos = pos_from_name(cols[1]);
        if (!pos) throw ParseError("lexicon: unknown POS '" + cols[1] + "'", lineno, true);
        std::string word = to_lower(cols[0]);
        std::string lemma = to_lower(cols[2].empty() ? cols[0] : cols[2]);
        auto &readings = lex.entries_[word];
        if (readings.empty()) lex.words_.push_back(word);
        bool dup = std::any_of(readings.begin(), readings.end(), [&](const LexEntry &e) { return e.pos == *pos; });
        if (dup) continue;
        readings.push_back({*pos, lemma});
        lex.forms_[key_of(lemma, *pos)].push_back(word);
    }

    lineno = 0;
    while (std::getline(irregular, line)) {
        ++lineno;
        if (skip_line(line)) continue;
        auto cols = split_tabs(line);
        for (auto &c : cols) c = to_lower(c);
        if (cols[0] == "verb" && cols.size() == 4) {
            lex.irregular_verbs_[cols[1]] = {cols[1], cols[2], cols[3]};
            lex.verb_base_of_.emplace(cols[2], cols[1]);
            lex.verb_base_of_.emplace(cols[3], cols[1]);
        } else if (cols[0] == "noun" && cols.size() == 3) {
            lex.irregular_nouns_[cols[1]] = {cols[1], cols[2], {}};
            lex.noun_base_of_.emplace(cols[2], cols[1]);
        } else if (cols[0] == "adj" && cols.size() == 4) {
            lex.irregular_adjs_[cols[1]] = {cols[1], cols[2], cols[3]};
            lex.adj_base_of_.emplace(cols[2], cols[1]);
            lex.adj_base_of_.emplace(cols[3], cols[1]);
        } else {
            throw ParseError("irregular table: malformed row", lineno, true);
        }
    }
    return lex;
}

Lexicon Lexicon::load(const std::filesystem::path &lexicon, const std::filesystem::path &irregular) {
    std::ifstream lex(lexicon);
    if (!lex) throw InputError("cannot open lexicon " + lexicon.string());
    std::ifstream irr(irregular);
    if (!irr) throw InputError("cannot open irregular table " + irregular.string());
    return parse(lex, irr);
}

std::shared_ptr<const Lexicon> Lexicon::builtin() {
    static const std::shared_ptr<const Lexicon> lex = [] {
        std::istringstream lexicon{std::string(detail::kBuiltinLexicon)};
        std::istringstream irregular{std::string(detail::kBuiltinIrregular)};
        return std::make_shared<const Lexicon>(parse(lexicon, irregular));
    }();
    return lex;
}

std::span<const LexEntry> Lexicon::lookup(std::string_view word) const {
    auto it = entries_.find(to_lower(word));
    if (it == entries_.end()) return {};
    return it->second;
}

Inflection Lexicon::form_of(std::string_view surface, std::string_view lemma_in, Pos pos) const {
    const std::string s = to_lower(surface);
    const std::string lemma = to_lower(lemma_in);
    switch (pos) {
    case Pos::Verb: {
        if (lemma == "be") {
            if (s == "be" || s == "am" || s == "are" || s == "'m" || s == "'re") return Inflection::Base;
            if (s == "is" || s == "'s") return Inflection::Present3sg;
            if (s == "was" || s == "were") return Inflection::Past;
            if (s == "been") return Inflection::PastParticiple;
            if (s == "being") return Inflection::Gerund;
            return Inflection::None;
        }
        if (s == lemma || (lemma == "have" && s == "'ve")) return Inflection::Base;
        if (s == regular_third_person(lemma)) return Inflection::Present3sg;
        if (auto it = irregular_verbs_.find(lemma); it != irregular_verbs_.end()) {
            if (s == it->second.second) return Inflection::Past;
            if (s == it->second.third) return Inflection::PastParticiple;
        }
        if (ends_with(s, "ing")) return Inflection::Gerund;
        if (ends_with(s, "ed")) return Inflection::Past;
        return Inflection::None;
    }
    case Pos::Noun: {
        if (auto it = irregular_nouns_.find(lemma); it != irregular_nouns_.end()) {
            if (s == it->second.base) return Inflection::Singular;
            if (s == it->second.second) return Inflection::Plural;
        }
        if (s == lemma) return Inflection::Singular;
        if (ends_with(s, "s")) return Inflection::Plural;
        return Inflection::None;
    }
    case Pos::Adj: {
        if (auto it = irregular_adjs_.find(lemma); it != irregular_adjs_.end()) {
            if (s == it->second.base) return Inflection::Positive;
            if (s == it->second.second) return Inflection::Comparative;
            if (s == it->second.third) return Inflection::Superlative;
        }
        if (s == lemma) return Inflection::Positive;
        if (ends_with(s, "est")) return Inflection::Superlative;
        if (ends_with(s, "er")) return Inflection::Comparative;
        return Inflection::None;
    }
    default:
        return Inflection::None;
    }
}

std::optional<std::string> Lexicon::inflect(std::string_view lemma_in, Pos pos, Inflection form) const {
    const std::string lemma = to_lower(lemma_in);
    if (auto it = forms_.find(key_of(lemma, pos)); it != forms_.end()) {
        for (const auto &s : it->second) {
            if (form_of(s, lemma, pos) == form && s.find('\'') == std::string::npos) return s;
        }
    }
    switch (pos) {
    case Pos::Noun:
        if (form == Inflection::Singular) return lemma;
        if (form == Inflection::Plural) {
            if (auto it = irregular_nouns_.find(lemma); it != irregular_nouns_.end()) return it->second.second;
            return regular_plural(lemma);
        }
        break;
    case Pos::Verb: {
        auto irr = irregular_verbs_.find(lemma);
        if (form == Inflection::Base) return lemma;
        if (form == Inflection::Present3sg) return regular_third_person(lemma);
        if (form == Inflection::Past) return irr != irregular_verbs_.end() ? irr->second.second : regular_past(lemma);
        if (form == Inflection::PastParticiple) {
            return irr != irregular_verbs_.end() ? irr->second.third : regular_past(lemma);
        }
        if (form == Inflection::Gerund) return regular_gerund(lemma);
        break;
    }
    case Pos::Adj: {
        auto irr = irregular_adjs_.find(lemma);
        if (form == Inflection::Positive) return lemma;
        if (irr != irregular_adjs_.end()) {
            if (form == Inflection::Comparative) return irr->second.second;
            if (form == Inflection::Superlative) return irr->second.third;
        }
        std::string stem = lemma;
        if (stem.size() > 1 && stem.back() == 'y' && !is_vowel(stem[stem.size() - 2])) stem.back() = 'i';
        if (ends_with(stem, "e")) stem.pop_back();
        if (form == Inflection::Comparative) return stem + "er";
        if (form == Inflection::Superlative) return stem + "est";
        break;
    }
    default:
        break;
    }
    return std::nullopt;
}

std::string Lexicon::guess_lemma(std::string_view word, Pos pos) const {
    const std::string w = to_lower(word);
    const std::unordered_map<std::string, std::string> *table = nullptr;
    if (pos == Pos::Verb) table = &verb_base_of_;
    if (pos == Pos::Noun) table = &noun_base_of_;
    if (pos == Pos::Adj) table = &adj_base_of_;
    if (table) {
        if (auto it = table->find(w); it != table->end()) return it->second;
    }
    for (const auto &e : lookup(w)) {
        if (e.pos == pos) return e.lemma;
    }

    auto known = [&](const std::string &stem) {
        return std::any_of(lookup(stem).begin(), lookup(stem).end(),
                           [&](const LexEntry &e) { return e.pos == pos && e.lemma == stem; });
    };
    // Picks the first candidate the lexicon knows, else the first candidate.
    auto pick = [&](std::initializer_list<std::string> candidates) {
        for (const auto &c : candidates) {
            if (known(c)) return c;
        }
        return *candidates.begin();
    };
    auto drop = [&](std::size_t n) { return w.substr(0, w.size() - n); };

    if (pos == Pos::Noun || pos == Pos::Verb) {
        if (ends_with(w, "ies") && w.size() > 4) return drop(3) + "y";
        if (pos == Pos::Verb && ends_with(w, "ied") && w.size() > 4) return drop(3) + "y";
        if (ends_with(w, "ches") || ends_with(w, "shes") || ends_with(w, "xes") || ends_with(w, "sses") ||
            ends_with(w, "zes") || (pos == Pos::Verb && ends_with(w, "oes"))) {
            return pick({drop(2), drop(1)});
        }
        if (ends_with(w, "s") && !s_exception(w)) return pick({drop(1), w});
    }
    if (pos == Pos::Verb) {
        if (ends_with(w, "ing") && w.size() > 4) {
            std::string stem = drop(3);
            return pick({stem, stem + "e", undouble(stem)});
        }
        if (ends_with(w, "ed") && w.size() > 3) {
            std::string stem = drop(2);
            return pick({stem, drop(1), undouble(stem)});
        }
    }
    if (pos == Pos::Adj) {
        if (ends_with(w, "iest") && w.size() > 5) return drop(4) + "y";
        if (ends_with(w, "ier") && w.size() > 4) return drop(3) + "y";
        if (ends_with(w, "est") && w.size() > 4) return pick({drop(3), drop(2), undouble(drop(3))});
        if (ends_with(w, "er") && w.size() > 3) return pick({drop(2), drop(1), undouble(drop(2))});
    }
    return w;
}

bool is_punctuation(std::string_view token) {
    if (token.empty()) return false;
    return std::all_of(token.begin(), token.end(),
                       [](char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; });
}

namespace {

constexpr std::array<std::string_view, 7> kClitics = {"n't", "'s", "'m", "'re", "'ve", "'ll", "'d"};
constexpr std::array<std::string_view, 4> kMultiPunct = {"...", "--", "``", "''"};
constexpr std::array<std::string_view, 16> kAbbreviations = {
    "mr.", "mrs.", "ms.", "dr.", "st.", "e.g.", "i.e.", "etc.", "vs.", "u.s.", "a.m.", "p.m.", "jr.", "sr.", "prof.", "inc.",
};
constexpr std::string_view kLeading = "\"'([{";
constexpr std::string_view kTrailing = ".,!?;:)]}\"'";

template <std::size_t N>
bool one_of(std::string_view s, const std::array<std::string_view, N> &set) {
    return std::find(set.begin(), set.end(), s) != set.end();
}

bool is_clitic(std::string_view lower) { return one_of(lower, kClitics); }

std::string normalize_quotes(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        // U+2019 / U+2018 -> apostrophe
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x80 &&
            (static_cast<unsigned char>(text[i + 2]) == 0x99 || static_cast<unsigned char>(text[i + 2]) == 0x98)) {
            out += '\'';
            i += 2;
        } else {
            out += text[i];
        }
    }
    return out;
}

void split_chunk(std::string chunk, std::vector<std::string> &out) {
    {
        const std::string lower = to_lower(chunk);
        if (is_clitic(lower) || one_of(std::string_view(chunk), kMultiPunct) || chunk.size() == 1) {
            out.push_back(chunk);
            return;
        }
    }

    while (!chunk.empty()) {
        if (chunk.rfind("``", 0) == 0) {
            out.emplace_back("``");
            chunk.erase(0, 2);
            continue;
        }
        if (kLeading.find(chunk[0]) == std::string_view::npos) break;
        if (chunk[0] == '\'' && is_clitic(to_lower(chunk))) break;
        out.emplace_back(1, chunk[0]);
        chunk.erase(0, 1);
    }

    std::vector<std::string> trailing;
    while (!chunk.empty()) {
        const std::string lower = to_lower(chunk);
        if (is_clitic(lower)) break;
        if (chunk.size() > 3 && ends_with(chunk, "...")) {
            trailing.emplace_back("...");
            chunk.resize(chunk.size() - 3);
            continue;
        }
        if (chunk.size() > 2 && ends_with(chunk, "''")) {
            trailing.emplace_back("''");
            chunk.resize(chunk.size() - 2);
            continue;
        }
        if (kTrailing.find(chunk.back()) == std::string_view::npos) break;
        if (chunk.back() == '.' && one_of(std::string_view(lower), kAbbreviations)) break;
        trailing.emplace_back(1, chunk.back());
        chunk.pop_back();
    }

    if (!chunk.empty()) {
        const std::string lower = to_lower(chunk);
        bool split = false;
        for (auto clitic : kClitics) {
            if (lower.size() > clitic.size() && ends_with(lower, clitic)) {
                out.push_back(chunk.substr(0, chunk.size() - clitic.size()));
                out.push_back(chunk.substr(chunk.size() - clitic.size()));
                split = true;
                break;
            }
        }
        if (!split) out.push_back(chunk);
    }
    out.insert(out.end(), trailing.rbegin(), trailing.rend());
}

bool is_capitalized(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

bool is_numeric(std::string_view s) {
    bool digit = false;
    for (char c : s) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digit = true;
        } else if (c != ',' && c != '.' && c != '-' && c != '%') {
            return false;
        }
    }
    return digit;
}

bool is_possessive_determiner(std::string_view lower) {
    return lower == "my" || lower == "your" || lower == "his" || lower == "her" || lower == "its" ||
           lower == "our" || lower == "their";
}

bool is_modal_lemma(std::string_view lemma) {
    return lemma == "can" || lemma == "could" || lemma == "will" || lemma == "would" || lemma == "shall" ||
           lemma == "should" || lemma == "may" || lemma == "might" || lemma == "must" || lemma == "do";
}

struct SuffixRule {
    std::string_view suffix;
    Pos pos;
};

// Applied to unknown words, longest suffixes first.
constexpr std::array<SuffixRule, 20> kSuffixRules = {{
    {"ation", Pos::Noun}, {"tion", Pos::Noun}, {"sion", Pos::Noun}, {"ment", Pos::Noun}, {"ness", Pos::Noun},
    {"ible", Pos::Adj},   {"able", Pos::Adj},  {"less", Pos::Adj},  {"ity", Pos::Noun},  {"ism", Pos::Noun},
    {"ist", Pos::Noun},   {"ous", Pos::Adj},   {"ful", Pos::Adj},   {"ive", Pos::Adj},   {"ing", Pos::Verb},
    {"ly", Pos::Adv},     {"ed", Pos::Verb},   {"ic", Pos::Adj},    {"al", Pos::Adj},    {"er", Pos::Noun},
}};

} // namespace

Tokenizer::Tokenizer(std::shared_ptr<const Lexicon> lexicon) : lexicon_(std::move(lexicon)) {}

std::vector<std::string> Tokenizer::split(std::string_view text) const {
    const std::string normalized = normalize_quotes(text);
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < normalized.size()) {
        while (i < normalized.size() && std::isspace(static_cast<unsigned char>(normalized[i]))) ++i;
        std::size_t j = i;
        while (j < normalized.size() && !std::isspace(static_cast<unsigned char>(normalized[j]))) ++j;
        if (j > i) split_chunk(normalized.substr(i, j - i), out);
        i = j;
    }
    return out;
}

Sentence Tokenizer::tokenize(std::string_view text) const {
    auto tokens = split(text);
    if (tokens.empty()) throw EmptyInputError("cannot tokenize empty text");
    return annotate_tokens(tokens);
}

Sentence Tokenizer::annotate_tokens(std::span<const std::string> tokens) const {
    std::vector<AnnotatedToken> out;
    out.reserve(tokens.size());
    bool clause_verb = false;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        TokenContext ctx;
        ctx.previous = out.empty() ? nullptr : &out.back();
        ctx.next = i + 1 < tokens.size() ? std::string_view(tokens[i + 1]) : std::string_view();
        ctx.sentence_initial = i == 0;
        ctx.clause_has_verb = clause_verb;
        out.push_back(annotate(tokens[i], ctx));
        const Pos p = out.back().pos;
        if (p == Pos::Verb) clause_verb = true;
        if (p == Pos::Punct || p == Pos::Conj) clause_verb = false;
    }
    return Sentence(std::move(out));
}

AnnotatedToken Tokenizer::annotate(std::string_view token, const TokenContext &ctx) const {
    const Lexicon &lex = *lexicon_;
    const std::string lower = to_lower(token);
    AnnotatedToken out{std::string(token), Pos::Other, lower};
    const AnnotatedToken *prev = ctx.previous;

    if (lower == "'s") {
        if (prev && prev->pos == Pos::Noun) {
            out.pos = Pos::Part;
        } else {
            out.pos = Pos::Verb;
            out.lemma = "be";
        }
        return out;
    }
    if (lower == "'") {
        out.pos = (prev && prev->pos == Pos::Noun && ends_with(prev->surface, "s")) ? Pos::Part : Pos::Punct;
        return out;
    }
    if (lower == "to") {
        auto next = lex.lookup(ctx.next);
        bool verb_base = std::any_of(next.begin(), next.end(), [&](const LexEntry &e) {
            return e.pos == Pos::Verb && e.lemma == to_lower(ctx.next);
        });
        bool nominal = std::any_of(next.begin(), next.end(),
                                   [](const LexEntry &e) { return e.pos == Pos::Noun || e.pos == Pos::Det; });
        out.pos = (verb_base && (!nominal || next.front().pos == Pos::Verb)) ? Pos::Part : Pos::Prep;
        return out;
    }

    auto readings = lex.lookup(lower);
    if (!readings.empty()) {
        auto find = [&](Pos p) -> const LexEntry * {
            for (const auto &e : readings) {
                if (e.pos == p) return &e;
            }
            return nullptr;
        };
        const LexEntry *chosen = &readings.front();
        if (readings.size() > 1 && prev) {
            const std::string prev_lower = to_lower(prev->surface);
            const bool nominal_slot = prev->pos == Pos::Det || prev->pos == Pos::Adj || prev->pos == Pos::Num ||
                                      prev->pos == Pos::Prep || is_possessive_determiner(prev_lower);
            const bool verbal_slot = (prev->pos == Pos::Pron && !is_possessive_determiner(prev_lower)) ||
                                     (prev->pos == Pos::Verb && is_modal_lemma(prev->lemma)) ||
                                     prev->pos == Pos::Part ||
                                     ((prev->pos == Pos::Noun || prev->pos == Pos::Adv) && !ctx.clause_has_verb);
            if (nominal_slot) {
                auto next = lex.lookup(ctx.next);
                bool next_noun = !next.empty() && next.front().pos == Pos::Noun;
                if (next_noun && find(Pos::Adj)) {
                    chosen = find(Pos::Adj);
                } else if (find(Pos::Noun)) {
                    chosen = find(Pos::Noun);
                } else if (find(Pos::Adj)) {
                    chosen = find(Pos::Adj);
                }
            } else if (verbal_slot && find(Pos::Verb)) {
                chosen = find(Pos::Verb);
            } else if (prev->pos == Pos::Verb && prev->lemma == "be" && find(Pos::Adj)) {
                chosen = find(Pos::Adj);
            }
        }
        out.pos = chosen->pos;
        out.lemma = chosen->lemma;
        return out;
    }

    if (is_punctuation(token)) {
        out.pos = Pos::Punct;
        return out;
    }
    if (is_numeric(token)) {
        out.pos = Pos::Num;
        return out;
    }
    if (is_capitalized(token) && !ctx.sentence_initial) {
        out.pos = Pos::Noun;
        return out;
    }
    // Inflected forms of known stems, including nonword inflections (childs, goed).
    for (Pos p : {Pos::Noun, Pos::Verb, Pos::Adj}) {
        const bool inflected = (p == Pos::Noun && ends_with(lower, "s")) ||
                               (p == Pos::Verb && (ends_with(lower, "s") || ends_with(lower, "ed") ||
                                                   ends_with(lower, "ing"))) ||
                               (p == Pos::Adj && (ends_with(lower, "er") || ends_with(lower, "est")));
        if (!inflected) continue;
        std::string lemma = lex.guess_lemma(lower, p);
        if (lemma == lower) continue;
        auto stem_readings = lex.lookup(lemma);
        if (std::any_of(stem_readings.begin(), stem_readings.end(),
                        [&](const LexEntry &e) { return e.pos == p && e.lemma == lemma; })) {
            out.pos = p;
            out.lemma = lemma;
            return out;
        }
    }
    for (const auto &rule : kSuffixRules) {
        if (lower.size() >= rule.suffix.size() + 3 && ends_with(lower, rule.suffix)) {
            out.pos = rule.pos;
            out.lemma = lex.guess_lemma(lower, rule.pos);
            return out;
        }
    }
    if (is_capitalized(token)) out.pos = Pos::Noun;
    return out;
}

} // namespace gecsyn
