#include "gecsyn/core.hpp"

#include <algorithm>
#include <cctype>

#include "gecsyn/error.hpp"

namespace gecsyn {

namespace {

constexpr std::array<std::string_view, kNumTags> kTagNames = {
    "ADJ",   "ADJ:FORM", "ADV",   "CONJ",      "CONTR",     "DET",       "MORPH",     "NOUN",
    "NOUN:INFL", "NOUN:NUM", "NOUN:POSS", "ORTH", "OTHER",     "PART",      "PREP",      "PRON",
    "PUNCT", "SPELL",    "VERB",  "VERB:FORM", "VERB:INFL", "VERB:SVA", "VERB:TENSE", "WO",
};

constexpr std::array<std::string_view, kNumPos> kPosNames = {
    "NOUN", "VERB", "ADJ", "ADV", "PRON", "DET", "PREP", "CONJ", "PART", "PUNCT", "NUM", "OTHER",
};

} // namespace

std::string_view tag_name(ErrorTag tag) { return kTagNames[tag_index(tag)]; }

std::optional<ErrorTag> tag_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNumTags; ++i) {
        if (kTagNames[i] == name) return tag_at(i);
    }
    return std::nullopt;
}

std::string_view pos_name(Pos pos) { return kPosNames[static_cast<std::size_t>(pos)]; }

std::optional<Pos> pos_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNumPos; ++i) {
        if (kPosNames[i] == name) return static_cast<Pos>(i);
    }
    return std::nullopt;
}

TagInventory::TagInventory() {
    for (std::size_t i = 0; i < kNumTags; ++i) {
        order_[i] = tag_at(i);
        positions_[i] = i;
    }
}

TagInventory TagInventory::from_names(std::span<const std::string> names) {
    if (names.size() != kNumTags) {
        throw InputError("tag inventory must list exactly 24 tags, got " + std::to_string(names.size()));
    }
    TagInventory inv;
    std::array<bool, kNumTags> seen{};
    for (std::size_t i = 0; i < names.size(); ++i) {
        auto tag = tag_from_name(names[i]);
        if (!tag) throw InputError("unknown tag in inventory: " + names[i]);
        if (seen[tag_index(*tag)]) throw InputError("duplicate tag in inventory: " + names[i]);
        seen[tag_index(*tag)] = true;
        inv.order_[i] = *tag;
        inv.positions_[tag_index(*tag)] = i;
    }
    return inv;
}

const TagInventory &TagInventory::standard() {
    static const TagInventory inv;
    return inv;
}

std::vector<std::string> TagInventory::names() const {
    std::vector<std::string> out;
    out.reserve(kNumTags);
    for (ErrorTag t : order_) out.emplace_back(tag_name(t));
    return out;
}

std::vector<ErrorTag> TagSet::tags() const {
    std::vector<ErrorTag> out;
    for (std::size_t i = 0; i < kNumTags; ++i) {
        if (bits_.test(i)) out.push_back(tag_at(i));
    }
    return out;
}

std::vector<std::string> TagSet::names() const {
    std::vector<std::string> out;
    for (ErrorTag t : tags()) out.emplace_back(tag_name(t));
    return out;
}

TagSet tagset_from_names(std::span<const std::string> names) {
    TagSet set;
    for (const auto &n : names) {
        auto tag = tag_from_name(n);
        if (!tag) throw InputError("unknown error tag: " + n);
        set.insert(*tag);
    }
    return set;
}

std::vector<std::string> Sentence::surfaces() const {
    std::vector<std::string> out;
    out.reserve(tokens_.size());
    for (const auto &t : tokens_) out.push_back(t.surface);
    return out;
}

std::string Sentence::text() const { return join_surfaces(tokens_); }

std::string join_surfaces(std::span<const AnnotatedToken> tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i].surface;
    }
    return out;
}

std::vector<std::string> apply_edits(const Sentence &source, std::span<const Edit> edits) {
    std::vector<const Edit *> sorted;
    for (const auto &e : edits) {
        if (!e.valid(source.size())) throw InputError("invalid edit span");
        sorted.push_back(&e);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Edit *a, const Edit *b) { return a->start < b->start; });

    std::vector<std::string> out;
    std::size_t cursor = 0;
    for (const Edit *e : sorted) {
        if (e->start < cursor) throw InputError("overlapping edits");
        for (; cursor < e->start; ++cursor) out.push_back(source[cursor].surface);
        for (const auto &t : e->replacement) out.push_back(t.surface);
        cursor = e->end;
    }
    for (; cursor < source.size(); ++cursor) out.push_back(source[cursor].surface);
    return out;
}

TaggedDataset::TaggedDataset(std::vector<Item> items) {
    items_.reserve(items.size());
    for (auto &item : items) add(std::move(item));
}

void TaggedDataset::add(Sentence sentence, TagSet tags) {
    for (ErrorTag t : tags.tags()) ++counts_[tag_index(t)];
    items_.emplace_back(std::move(sentence), tags);
}

TagSet tagset_from_edits(std::span<const Edit> edits) {
    TagSet set;
    for (const auto &e : edits) {
        if (e.tag) set.insert(*e.tag);
    }
    return set;
}

std::vector<ParallelPair> filter_noop(std::vector<ParallelPair> pairs) {
    std::vector<ParallelPair> out;
    out.reserve(pairs.size());
    for (auto &p : pairs) {
        if (p.edits && !p.edits->empty()) out.push_back(std::move(p));
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace gecsyn
