#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gecsyn {

inline constexpr std::size_t kNumTags = 24;

/// The 24 main error categories. Enumerator order is the alphabetical order
/// of the category names, which is also the default prefix-codec order.
enum class ErrorTag : std::uint8_t {
    Adj,
    AdjForm,
    Adv,
    Conj,
    Contr,
    Det,
    Morph,
    Noun,
    NounInfl,
    NounNum,
    NounPoss,
    Orth,
    Other,
    Part,
    Prep,
    Pron,
    Punct,
    Spell,
    Verb,
    VerbForm,
    VerbInfl,
    VerbSva,
    VerbTense,
    WordOrder,
};

std::string_view tag_name(ErrorTag tag);
std::optional<ErrorTag> tag_from_name(std::string_view name);
constexpr std::size_t tag_index(ErrorTag tag) { return static_cast<std::size_t>(tag); }
constexpr ErrorTag tag_at(std::size_t index) { return static_cast<ErrorTag>(index); }

/// Ordering of the 24 tags used when encoding a TagSet as a/b characters and
/// when naming tags in model files. Any permutation of the categories is a
/// valid inventory; the default is alphabetical.
class TagInventory {
  public:
    TagInventory();

    /// Throws InputError unless `names` is a permutation of the 24 category names.
    static TagInventory from_names(std::span<const std::string> names);
    static const TagInventory &standard();

    ErrorTag at(std::size_t position) const { return order_[position]; }
    std::size_t position(ErrorTag tag) const { return positions_[tag_index(tag)]; }
    std::vector<std::string> names() const;

    bool operator==(const TagInventory &other) const { return order_ == other.order_; }

  private:
    std::array<ErrorTag, kNumTags> order_;
    std::array<std::size_t, kNumTags> positions_;
};

/// Set of error tags attached to a sentence. Empty means noop.
class TagSet {
  public:
    TagSet() = default;
    TagSet(std::initializer_list<ErrorTag> tags) {
        for (ErrorTag t : tags) insert(t);
    }

    void insert(ErrorTag tag) { bits_.set(tag_index(tag)); }
    void erase(ErrorTag tag) { bits_.reset(tag_index(tag)); }
    bool contains(ErrorTag tag) const { return bits_.test(tag_index(tag)); }
    std::size_t size() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }

    /// Members in canonical (enumerator) order.
    std::vector<ErrorTag> tags() const;
    std::vector<std::string> names() const;

    bool is_subset_of(const TagSet &other) const { return (bits_ & ~other.bits_).none(); }
    TagSet operator|(const TagSet &o) const { return TagSet(bits_ | o.bits_); }
    TagSet operator&(const TagSet &o) const { return TagSet(bits_ & o.bits_); }
    bool operator==(const TagSet &o) const = default;

    std::uint32_t to_bits() const { return static_cast<std::uint32_t>(bits_.to_ulong()); }
    static TagSet from_bits(std::uint32_t bits) { return TagSet(std::bitset<kNumTags>(bits)); }

  private:
    explicit TagSet(std::bitset<kNumTags> bits) : bits_(bits) {}
    std::bitset<kNumTags> bits_;
};

/// Throws InputError on an unknown name.
TagSet tagset_from_names(std::span<const std::string> names);

/// Coarse part-of-speech labels assigned by the annotator.
enum class Pos : std::uint8_t { Noun, Verb, Adj, Adv, Pron, Det, Prep, Conj, Part, Punct, Num, Other };

inline constexpr std::size_t kNumPos = 12;

std::string_view pos_name(Pos pos);
std::optional<Pos> pos_from_name(std::string_view name);

struct AnnotatedToken {
    std::string surface;
    Pos pos = Pos::Other;
    std::string lemma;

    bool operator==(const AnnotatedToken &) const = default;
};

/// A tokenized, annotated sentence.
class Sentence {
  public:
    Sentence() = default;
    explicit Sentence(std::vector<AnnotatedToken> tokens) : tokens_(std::move(tokens)) {}

    const std::vector<AnnotatedToken> &tokens() const { return tokens_; }
    std::size_t size() const { return tokens_.size(); }
    bool empty() const { return tokens_.empty(); }
    const AnnotatedToken &operator[](std::size_t i) const { return tokens_[i]; }

    std::vector<std::string> surfaces() const;
    /// Space-joined surfaces; a single line.
    std::string text() const;

    bool operator==(const Sentence &) const = default;

  private:
    std::vector<AnnotatedToken> tokens_;
};

std::string join_surfaces(std::span<const AnnotatedToken> tokens);

/// Span-level transformation of a source sentence. `start`/`end` index the
/// source tokens (half-open); `replacement` comes from the target sentence.
struct Edit {
    std::size_t start = 0;
    std::size_t end = 0;
    std::vector<AnnotatedToken> replacement;
    std::optional<ErrorTag> tag;

    bool is_insertion() const { return start == end && !replacement.empty(); }
    bool is_deletion() const { return start < end && replacement.empty(); }
    /// Checks the span bounds against a source of `source_length` tokens.
    bool valid(std::size_t source_length) const {
        return start <= end && end <= source_length && !(start == end && replacement.empty());
    }

    bool operator==(const Edit &) const = default;
};

/// Applies non-overlapping `edits` to `source` and returns the resulting
/// surfaces. Throws InputError on invalid or overlapping edits.
std::vector<std::string> apply_edits(const Sentence &source, std::span<const Edit> edits);

/// A sentence pair; `source` is the incorrect side, `target` the correct one.
struct ParallelPair {
    Sentence source;
    Sentence target;
    std::optional<std::vector<Edit>> edits;
};

/// (sentence, gold tags) items with per-label occurrence counts kept in sync.
class TaggedDataset {
  public:
    using Item = std::pair<Sentence, TagSet>;

    TaggedDataset() = default;
    explicit TaggedDataset(std::vector<Item> items);

    void add(Sentence sentence, TagSet tags);
    void add(Item item) { add(std::move(item.first), item.second); }

    const std::vector<Item> &items() const { return items_; }
    const Item &operator[](std::size_t i) const { return items_[i]; }
    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const std::array<std::size_t, kNumTags> &label_counts() const { return counts_; }

  private:
    std::vector<Item> items_;
    std::array<std::size_t, kNumTags> counts_{};
};

/// Distinct tags of the (typed) edits. Untyped edits are ignored.
TagSet tagset_from_edits(std::span<const Edit> edits);

/// Keeps pairs with a non-empty edit list, in input order.
std::vector<ParallelPair> filter_noop(std::vector<ParallelPair> pairs);

std::string to_lower(std::string_view s);

} // namespace gecsyn
