#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gecsyn/classifier.hpp"
#include "gecsyn/core.hpp"
#include "gecsyn/tokenizer.hpp"

namespace gecsyn {

/// `grammar_error: (<24 a/b>) <sentence>`; character i is `b` iff the tag at
/// inventory position i is present.
std::string encode_prefix(const TagSet &tags, const Sentence &sentence,
                          const TagInventory &inventory = TagInventory::standard());
std::string encode_prefix(const TagSet &tags, std::string_view text,
                          const TagInventory &inventory = TagInventory::standard());

struct DecodedPrefix {
    TagSet tags;
    std::string text; // sentence part, as written
};

/// Throws ParseError with the byte offset of the first offending character.
DecodedPrefix decode_prefix(std::string_view line, const TagInventory &inventory = TagInventory::standard());

enum class PatternKind : std::uint8_t { Replace, Insert, Inflect, Reorder };

std::string_view pattern_kind_name(PatternKind kind);

/// One corruption pattern. Which fields are used depends on `kind`:
///  Replace  `from` (lowercased correct surfaces) -> `to` (incorrect surfaces, may be empty)
///  Insert   `to` inserted between tokens whose pos are `left` / `right`
///           (nullopt right = end of sentence)
///  Inflect  a `pos` token in form `from_form` re-inflected to `to_form`
///  Reorder  a run of tokens with pos sequence `pos_sequence`, permuted so
///           that output token k is input token `order[k]`
struct Pattern {
    PatternKind kind = PatternKind::Replace;
    std::vector<std::string> from;
    std::vector<std::string> to;
    std::optional<Pos> left;
    std::optional<Pos> right;
    Pos pos = Pos::Other;
    Inflection from_form = Inflection::None;
    Inflection to_form = Inflection::None;
    std::vector<Pos> pos_sequence;
    std::vector<std::size_t> order;

    /// Identity used to aggregate counts.
    std::string key() const;
    bool operator==(const Pattern &) const = default;
};

struct WeightedPattern {
    Pattern pattern;
    std::size_t weight = 1;

    bool operator==(const WeightedPattern &) const = default;
};

/// Per-tag pattern tables, patterns in first-seen order, weights = counts.
class EditInventory {
  public:
    /// Adds `count` occurrences of `pattern` under `tag`.
    void add(ErrorTag tag, const Pattern &pattern, std::size_t count = 1);

    std::span<const WeightedPattern> patterns(ErrorTag tag) const { return tables_[tag_index(tag)]; }
    std::size_t pattern_count() const;
    std::size_t total_weight(ErrorTag tag) const;
    bool empty() const { return pattern_count() == 0; }

    std::string to_json() const;
    void save(const std::filesystem::path &path) const;
    /// Throws ParseError on malformed content.
    static EditInventory from_json(const std::string &text);
    static EditInventory load(const std::filesystem::path &path);

    bool operator==(const EditInventory &) const = default;

  private:
    std::array<std::vector<WeightedPattern>, kNumTags> tables_;
};

struct MiningReport {
    std::size_t pairs = 0;
    std::size_t edits = 0;
    std::size_t kept = 0;
    std::size_t fallbacks = 0; // generalized pattern failed, exact replacement kept
    std::size_t dropped = 0;
    std::array<std::size_t, kNumTags> kept_per_tag{};
    std::array<std::size_t, kNumTags> dropped_per_tag{};
};

/// Turns every typed edit of `pairs` into a pattern under its tag. Each
/// pattern is applied back to its own pair's correct sentence and must be
/// classified as its tag again; a generalized pattern that fails falls back
/// to an exact replacement, and one that still fails is dropped.
/// Pairs without edits are annotated with `classifier` first.
/// Throws EmptyInventoryError when nothing survives.
EditInventory mine_inventory(std::span<const ParallelPair> pairs, const Classifier &classifier,
                             MiningReport *report = nullptr);

/// A place where a pattern applies: tokens [start, end) of the current
/// sentence become `tokens`.
struct Candidate {
    ErrorTag tag;
    std::size_t pattern_index = 0;
    std::size_t weight = 1;
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<std::string> tokens;
};

struct CorruptionResult {
    Sentence output;
    TagSet requested;
    TagSet realized;
    /// Edits over `output` that restore the original; tagged, sorted.
    std::vector<Edit> applied_edits;
};

/// Inventory-driven corruption.
class Corruptor {
  public:
    explicit Corruptor(std::shared_ptr<const EditInventory> inventory,
                       std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin());

    /// For each requested tag, in seed-shuffled order: gather candidates
    /// disjoint from (and not touching) earlier edits, keep the top_k by
    /// weight (then pattern order, then position), and sample one
    /// proportionally to weight. Tags without candidates stay unrealized.
    CorruptionResult corrupt(const Sentence &sentence, const TagSet &tags, std::size_t top_k,
                             std::uint64_t seed) const;

    /// Every applicable (site, pattern) pair for `tag`, in pattern order.
    std::vector<Candidate> candidates(const Sentence &sentence, ErrorTag tag) const;
    /// Applies one candidate and re-annotates.
    Sentence apply(const Sentence &sentence, const Candidate &candidate) const;
    /// Where `pattern` would apply at `start`, the replacement tokens and end.
    std::optional<Candidate> match(const Sentence &sentence, const Pattern &pattern, std::size_t start) const;

    const EditInventory &inventory() const { return *inventory_; }
    const Tokenizer &tokenizer() const { return tokenizer_; }

  private:
    std::shared_ptr<const EditInventory> inventory_;
    Tokenizer tokenizer_;
};

CorruptionResult corrupt(const Sentence &sentence, const TagSet &tags, const EditInventory &inventory,
                         std::size_t top_k = 50, std::uint64_t seed = 0);

/// Tags of the edits the classifier finds between `result.output` and `original`.
TagSet verify_realized(const CorruptionResult &result, const Sentence &original, const Classifier &classifier);

} // namespace gecsyn
