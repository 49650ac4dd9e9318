#include "gecsyn/classifier.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <utility>

#include "gecsyn/error.hpp"

namespace gecsyn {

namespace {

using Tokens = std::span<const AnnotatedToken>;

std::string lower_join(Tokens tokens, bool drop_hyphens) {
    std::string out;
    for (const auto &t : tokens) {
        for (char c : t.surface) {
            if (drop_hyphens && c == '-') continue;
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    return out;
}

std::vector<std::string> lower_surfaces(Tokens tokens) {
    std::vector<std::string> out;
    for (const auto &t : tokens) out.push_back(to_lower(t.surface));
    return out;
}

bool single(const EditView &v) { return v.original.size() == 1 && v.corrected.size() == 1; }

bool is_capitalized(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

/// Unknown to the lexicon and not a name, number or punctuation.
bool is_nonword(const AnnotatedToken &t, const Lexicon &lex) {
    if (lex.contains(t.surface) || t.pos == Pos::Punct || t.pos == Pos::Num) return false;
    if (is_capitalized(t.surface) && t.pos == Pos::Noun) return false;
    return std::any_of(t.surface.begin(), t.surface.end(),
                       [](char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; });
}

bool is_known(const AnnotatedToken &t, const Lexicon &lex) { return lex.contains(t.surface); }

bool is_possessive_marker(std::string_view lower) { return lower == "'s" || lower == "'"; }

bool is_possessive_determiner(std::string_view lower) {
    return lower == "my" || lower == "your" || lower == "his" || lower == "her" || lower == "its" ||
           lower == "our" || lower == "their";
}

bool open_class(Pos p) { return p == Pos::Noun || p == Pos::Verb || p == Pos::Adj || p == Pos::Adv; }

std::optional<ErrorTag> tag_for_pos(Pos p) {
    switch (p) {
    case Pos::Noun:
        return ErrorTag::Noun;
    case Pos::Verb:
        return ErrorTag::Verb;
    case Pos::Adj:
        return ErrorTag::Adj;
    case Pos::Adv:
        return ErrorTag::Adv;
    case Pos::Pron:
        return ErrorTag::Pron;
    case Pos::Det:
        return ErrorTag::Det;
    case Pos::Prep:
        return ErrorTag::Prep;
    case Pos::Conj:
        return ErrorTag::Conj;
    case Pos::Part:
        return ErrorTag::Part;
    case Pos::Punct:
        return ErrorTag::Punct;
    default:
        return std::nullopt;
    }
}

constexpr std::array<std::pair<std::string_view, std::string_view>, 11> kContractions = {{
    {"n't", "not"},
    {"'s", "is"},
    {"'s", "has"},
    {"'m", "am"},
    {"'re", "are"},
    {"'ve", "have"},
    {"'ll", "will"},
    {"'d", "would"},
    {"'d", "had"},
    {"ca", "can"},
    {"wo", "will"},
}};

std::size_t common_prefix(std::string_view a, std::string_view b) {
    std::size_t n = 0;
    while (n < a.size() && n < b.size() && a[n] == b[n]) ++n;
    return n;
}

// Rules ---------------------------------------------------------------------

std::optional<ErrorTag> word_order(const EditView &v) {
    if (v.original.size() < 2 || v.original.size() != v.corrected.size()) return std::nullopt;
    auto a = lower_surfaces(v.original);
    auto b = lower_surfaces(v.corrected);
    if (a == b) return std::nullopt;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) return ErrorTag::WordOrder;
    return std::nullopt;
}

std::optional<ErrorTag> punctuation(const EditView &v) {
    if (v.original.empty() && v.corrected.empty()) return std::nullopt;
    auto all_punct = [](Tokens ts) {
        return std::all_of(ts.begin(), ts.end(), [](const AnnotatedToken &t) { return t.pos == Pos::Punct; });
    };
    if (all_punct(v.original) && all_punct(v.corrected)) return ErrorTag::Punct;
    return std::nullopt;
}

std::optional<ErrorTag> orthography(const EditView &v) {
    if (v.original.empty() || v.corrected.empty()) return std::nullopt;
    if (join_surfaces(v.original) == join_surfaces(v.corrected)) return std::nullopt;
    if (lower_join(v.original, true) == lower_join(v.corrected, true)) return ErrorTag::Orth;
    return std::nullopt;
}

std::optional<ErrorTag> contraction(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto a = to_lower(v.original[0].surface), b = to_lower(v.corrected[0].surface);
    for (const auto &[short_form, long_form] : kContractions) {
        if ((a == short_form && b == long_form) || (a == long_form && b == short_form)) return ErrorTag::Contr;
    }
    return std::nullopt;
}

std::optional<ErrorTag> possessive(const EditView &v) {
    // Bare insertion or deletion of 's / ' after a noun.
    Tokens marker_side = v.original.empty() ? v.corrected : v.original;
    if ((v.original.empty() || v.corrected.empty()) && marker_side.size() == 1 &&
        is_possessive_marker(to_lower(marker_side[0].surface))) {
        if (v.edit.start > 0 && v.source[v.edit.start - 1].pos == Pos::Noun) return ErrorTag::NounPoss;
        return std::nullopt;
    }
    if (single(v) && is_possessive_marker(to_lower(v.original[0].surface)) &&
        is_possessive_marker(to_lower(v.corrected[0].surface))) {
        return ErrorTag::NounPoss;
    }
    // [noun] <-> [noun 's]
    Tokens longer = v.original.size() > v.corrected.size() ? v.original : v.corrected;
    Tokens shorter = v.original.size() > v.corrected.size() ? v.corrected : v.original;
    if (!shorter.empty() && longer.size() == shorter.size() + 1 &&
        is_possessive_marker(to_lower(longer.back().surface))) {
        bool aligned = true;
        for (std::size_t i = 0; i < shorter.size(); ++i) {
            aligned = aligned && longer[i].lemma == shorter[i].lemma;
        }
        if (aligned && longer[shorter.size() - 1].pos == Pos::Noun) return ErrorTag::NounPoss;
    }
    return std::nullopt;
}

std::optional<ErrorTag> nonword_inflection(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto &a = v.original[0];
    const auto &b = v.corrected[0];
    const bool a_non = is_nonword(a, v.lexicon), b_non = is_nonword(b, v.lexicon);
    if (a_non == b_non) return std::nullopt;
    const auto &word = a_non ? b : a;
    const auto &non = a_non ? a : b;
    if (!open_class(word.pos) || word.pos == Pos::Adv) return std::nullopt;
    const bool same_stem = non.lemma == word.lemma || v.lexicon.guess_lemma(non.surface, word.pos) == word.lemma;
    if (!same_stem) return std::nullopt;
    if (word.pos == Pos::Noun) return ErrorTag::NounInfl;
    if (word.pos == Pos::Verb) return ErrorTag::VerbInfl;
    return ErrorTag::AdjForm;
}

std::optional<ErrorTag> noun_number(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto &a = v.original[0];
    const auto &b = v.corrected[0];
    if (a.pos != Pos::Noun || b.pos != Pos::Noun || a.lemma != b.lemma) return std::nullopt;
    auto fa = v.lexicon.form_of(a.surface, a.lemma, Pos::Noun);
    auto fb = v.lexicon.form_of(b.surface, b.lemma, Pos::Noun);
    if (fa != fb && fa != Inflection::None && fb != Inflection::None) return ErrorTag::NounNum;
    return std::nullopt;
}

std::optional<ErrorTag> verb_form(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto &a = v.original[0];
    const auto &b = v.corrected[0];
    if (a.pos != Pos::Verb || b.pos != Pos::Verb || a.lemma != b.lemma) return std::nullopt;
    const auto fa = v.lexicon.form_of(a.surface, a.lemma, Pos::Verb);
    const auto fb = v.lexicon.form_of(b.surface, b.lemma, Pos::Verb);
    auto present = [](Inflection f) { return f == Inflection::Base || f == Inflection::Present3sg; };
    if (present(fa) && present(fb) && fa != fb) return ErrorTag::VerbSva;
    if (a.lemma == "be" && fa == Inflection::Past && fb == Inflection::Past) return ErrorTag::VerbSva;
    if ((fa == Inflection::Past && present(fb)) || (fb == Inflection::Past && present(fa))) return ErrorTag::VerbTense;
    return ErrorTag::VerbForm;
}

std::optional<ErrorTag> adjective_form(const EditView &v) {
    if (single(v)) {
        const auto &a = v.original[0];
        const auto &b = v.corrected[0];
        if (a.pos == Pos::Adj && b.pos == Pos::Adj && a.lemma == b.lemma && a.surface != b.surface) {
            return ErrorTag::AdjForm;
        }
        return std::nullopt;
    }
    // more/most + adjective <-> inflected adjective
    Tokens two = v.original.size() == 2 ? v.original : v.corrected;
    Tokens one = v.original.size() == 2 ? v.corrected : v.original;
    if (two.size() != 2 || one.size() != 1) return std::nullopt;
    const auto degree = to_lower(two[0].surface);
    if ((degree == "more" || degree == "most") && two[1].pos == Pos::Adj && one[0].pos == Pos::Adj &&
        two[1].lemma == one[0].lemma) {
        return ErrorTag::AdjForm;
    }
    return std::nullopt;
}

std::optional<ErrorTag> morphology(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto &a = v.original[0];
    const auto &b = v.corrected[0];
    if (a.pos == b.pos || !open_class(a.pos) || !open_class(b.pos)) return std::nullopt;
    if (!is_known(a, v.lexicon) || !is_known(b, v.lexicon)) return std::nullopt;
    if (a.lemma == b.lemma) return ErrorTag::Morph;
    const auto la = to_lower(a.surface), lb = to_lower(b.surface);
    const auto p = common_prefix(la, lb);
    const std::size_t shorter = std::min(la.size(), lb.size());
    if ((p >= 4 && p + 2 >= shorter) || (p >= 3 && p == shorter)) return ErrorTag::Morph;
    return std::nullopt;
}

std::optional<ErrorTag> spelling(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto &a = v.original[0];
    const auto &b = v.corrected[0];
    for (const auto *non : {&a, &b}) {
        if (!is_nonword(*non, v.lexicon)) continue;
        const auto &other = non == &a ? b : a;
        const auto lw = to_lower(non->surface);
        if (is_known(other, v.lexicon) && char_edit_distance(lw, to_lower(other.surface)) <= 2) return ErrorTag::Spell;
        for (const auto &w : v.lexicon.words()) {
            const auto diff = w.size() > lw.size() ? w.size() - lw.size() : lw.size() - w.size();
            if (diff <= 2 && char_edit_distance(lw, w) <= 2) return ErrorTag::Spell;
        }
    }
    return std::nullopt;
}

std::optional<ErrorTag> same_pos(const EditView &v) {
    if (!single(v)) return std::nullopt;
    const auto &a = v.original[0];
    const auto &b = v.corrected[0];
    if (a.pos == b.pos) return tag_for_pos(a.pos);
    auto det_like = [](const AnnotatedToken &t) {
        return t.pos == Pos::Det || (t.pos == Pos::Pron && is_possessive_determiner(to_lower(t.surface)));
    };
    if (det_like(a) && det_like(b)) return ErrorTag::Det;
    auto prep_like = [](const AnnotatedToken &t) { return t.pos == Pos::Prep || to_lower(t.surface) == "to"; };
    if (prep_like(a) && prep_like(b)) return ErrorTag::Prep;
    return std::nullopt;
}

std::optional<ErrorTag> insertion_deletion(const EditView &v) {
    if (!v.original.empty() && !v.corrected.empty()) return std::nullopt;
    Tokens side = v.original.empty() ? v.corrected : v.original;
    if (side.empty()) return std::nullopt;
    const Pos p = side[0].pos;
    if (!std::all_of(side.begin(), side.end(), [&](const AnnotatedToken &t) { return t.pos == p; })) {
        return std::nullopt;
    }
    return tag_for_pos(p);
}

} // namespace

RuleTable::RuleTable(std::vector<Rule> rules) : rules_(std::move(rules)) {
    if (rules_.empty()) throw InputError("rule table must not be empty");
}

ErrorTag RuleTable::classify(const EditView &view) const {
    for (const auto &rule : rules_) {
        if (auto tag = rule.apply(view)) return *tag;
    }
    return ErrorTag::Other;
}

const std::string &RuleTable::deciding_rule(const EditView &view) const {
    for (const auto &rule : rules_) {
        if (rule.apply(view)) return rule.name;
    }
    return rules_.back().name;
}

RuleTable RuleTable::standard() {
    std::vector<Rule> rules = {
        {"word-order", word_order},
        {"punctuation", punctuation},
        {"orthography", orthography},
        {"contraction", contraction},
        {"possessive", possessive},
        {"nonword-inflection", nonword_inflection},
        {"noun-number", noun_number},
        {"verb-form", verb_form},
        {"adjective-form", adjective_form},
        {"morphology", morphology},
        {"spelling", spelling},
        {"same-pos", same_pos},
        {"insertion-deletion", insertion_deletion},
    };
    // Multi-token edits: drop tokens common to both sides and classify the
    // remainder, or the single same-lemma pair inside it.
    rules.push_back({"residual", [](const EditView &v) -> std::optional<ErrorTag> {
                         if (v.original.empty() || v.corrected.empty()) return std::nullopt;
                         if (v.original.size() == 1 && v.corrected.size() == 1) return std::nullopt;
                         std::vector<AnnotatedToken> a(v.original.begin(), v.original.end());
                         std::vector<AnnotatedToken> b(v.corrected.begin(), v.corrected.end());
                         for (auto it = a.begin(); it != a.end();) {
                             auto match = std::find_if(b.begin(), b.end(), [&](const AnnotatedToken &t) {
                                 return to_lower(t.surface) == to_lower(it->surface);
                             });
                             if (match != b.end()) {
                                 b.erase(match);
                                 it = a.erase(it);
                             } else {
                                 ++it;
                             }
                         }
                         if (a.size() + b.size() == v.original.size() + v.corrected.size()) {
                             std::vector<std::pair<std::size_t, std::size_t>> pairs;
                             for (std::size_t i = 0; i < a.size(); ++i) {
                                 for (std::size_t j = 0; j < b.size(); ++j) {
                                     if (a[i].lemma == b[j].lemma && a[i].pos != Pos::Punct) pairs.emplace_back(i, j);
                                 }
                             }
                             if (pairs.size() != 1) return std::nullopt;
                             a = {a[pairs[0].first]};
                             b = {b[pairs[0].second]};
                         }
                         if (a.empty() && b.empty()) return std::nullopt;
                         Edit sub = v.edit;
                         EditView reduced{a, b, sub, v.source, v.target, v.lexicon};
                         static const RuleTable table = RuleTable::standard();
                         return table.classify(reduced);
                     }});
    rules.push_back({"fallback", [](const EditView &) -> std::optional<ErrorTag> { return ErrorTag::Other; }});
    return RuleTable(std::move(rules));
}

Classifier::Classifier(std::shared_ptr<const Lexicon> lexicon, RuleTable rules, AlignmentCosts costs)
    : lexicon_(std::move(lexicon)), rules_(std::move(rules)), costs_(costs) {}

ErrorTag Classifier::classify_edit(const Edit &edit, const Sentence &source, const Sentence &target) const {
    if (!edit.valid(source.size())) throw InputError("edit span out of range");
    Tokens original(source.tokens().data() + edit.start, edit.end - edit.start);
    EditView view{original, edit.replacement, edit, source, target, *lexicon_};
    return rules_.classify(view);
}

std::vector<Edit> Classifier::edits(const Sentence &source, const Sentence &target) const {
    auto alignment = align(source, target, costs_);
    auto edits = extract_edits(alignment.ops, source, target);
    for (auto &e : edits) e.tag = classify_edit(e, source, target);
    return edits;
}

ParallelPair Classifier::annotate_pair(ParallelPair pair) const {
    pair.edits = edits(pair.source, pair.target);
    return pair;
}

std::size_t char_edit_distance(std::string_view a, std::string_view b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::vector<std::size_t>> d(n + 1, std::vector<std::size_t>(m + 1));
    for (std::size_t i = 0; i <= n; ++i) d[i][0] = i;
    for (std::size_t j = 0; j <= m; ++j) d[0][j] = j;
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
            d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, d[i - 1][j - 1] + cost});
            if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) {
                d[i][j] = std::min(d[i][j], d[i - 2][j - 2] + 1);
            }
        }
    }
    return d[n][m];
}

} // namespace gecsyn
