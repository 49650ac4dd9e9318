#pragma once

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gecsyn/core.hpp"

namespace gecsyn {

/// Inflectional form of a noun, verb or adjective relative to its lemma.
enum class Inflection : std::uint8_t {
    None,
    Singular,
    Plural,
    Base,           // verb base / non-3sg present
    Present3sg,
    Past,
    PastParticiple,
    Gerund,
    Positive,
    Comparative,
    Superlative,
};

std::string_view inflection_name(Inflection form);
std::optional<Inflection> inflection_from_name(std::string_view name);

struct LexEntry {
    Pos pos;
    std::string lemma;
};

/// Word list with part-of-speech and lemma readings plus irregular
/// inflection tables. Immutable after construction.
class Lexicon {
  public:
    /// `lexicon`: `word<TAB>POS<TAB>lemma` lines. `irregular`: lines
    /// `VERB base past participle`, `NOUN singular plural` or
    /// `ADJ base comparative superlative`, tab separated. `#` starts a comment.
    /// Throws ParseError with a line number on malformed input.
    static Lexicon parse(std::istream &lexicon, std::istream &irregular);
    static Lexicon load(const std::filesystem::path &lexicon, const std::filesystem::path &irregular);
    /// The lexicon compiled into the library.
    static std::shared_ptr<const Lexicon> builtin();

    /// All readings, first is the default. Case-insensitive.
    std::span<const LexEntry> lookup(std::string_view word) const;
    bool contains(std::string_view word) const { return !lookup(word).empty(); }
    std::size_t size() const { return entries_.size(); }
    const std::vector<std::string> &words() const { return words_; }

    /// Form of `surface` given its lemma and pos; None when undetermined.
    Inflection form_of(std::string_view surface, std::string_view lemma, Pos pos) const;
    /// Surface of `lemma` in `form`; lexicon first, then regular rules.
    std::optional<std::string> inflect(std::string_view lemma, Pos pos, Inflection form) const;
    /// Lemma by irregular tables, then suffix stripping; lowercase surface otherwise.
    std::string guess_lemma(std::string_view word, Pos pos) const;

  private:
    struct Irregular {
        std::string base, second, third; // verb: past, participle; noun: plural; adj: comparative, superlative
    };

    std::unordered_map<std::string, std::vector<LexEntry>> entries_;
    std::vector<std::string> words_;
    std::unordered_map<std::string, Irregular> irregular_verbs_, irregular_nouns_, irregular_adjs_;
    // inflected surface -> base, per pos
    std::unordered_map<std::string, std::string> verb_base_of_, noun_base_of_, adj_base_of_;
    // lemma|pos -> surfaces in file order
    std::unordered_map<std::string, std::vector<std::string>> forms_;
};

/// Regular inflection rules, shared by the lexicon and its tests.
std::string regular_plural(std::string_view noun);
std::string regular_third_person(std::string_view verb);
std::string regular_past(std::string_view verb);
std::string regular_gerund(std::string_view verb);

/// Neighborhood used to disambiguate a token's reading.
struct TokenContext {
    const AnnotatedToken *previous = nullptr;
    std::string_view next;
    bool sentence_initial = false;
    /// A verb has already been seen since the last clause boundary.
    bool clause_has_verb = false;
};

/// Rule-based tokenizer and annotator.
class Tokenizer {
  public:
    explicit Tokenizer(std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin());

    /// Splits raw text into tokens and annotates them. Throws EmptyInputError
    /// on empty or whitespace-only text.
    Sentence tokenize(std::string_view text) const;
    /// Splits only; no annotation. Empty result for blank text.
    std::vector<std::string> split(std::string_view text) const;

    AnnotatedToken annotate(std::string_view token, const TokenContext &context) const;
    /// Annotates pre-split tokens left to right.
    Sentence annotate_tokens(std::span<const std::string> tokens) const;

    const Lexicon &lexicon() const { return *lexicon_; }
    std::shared_ptr<const Lexicon> lexicon_ptr() const { return lexicon_; }

  private:
    std::shared_ptr<const Lexicon> lexicon_;
};

bool is_punctuation(std::string_view token);

} // namespace gecsyn
