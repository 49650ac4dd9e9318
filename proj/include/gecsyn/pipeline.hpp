#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gecsyn/backend.hpp"
#include "gecsyn/classifier.hpp"
#include "gecsyn/io.hpp"
#include "gecsyn/tagger.hpp"

namespace gecsyn {

/// Run settings; every field has a default and the JSON form round-trips.
struct PipelineConfig {
    std::string input;
    std::string lexicon;   // empty: built-in lexicon
    std::string irregular; // used together with `lexicon`
    std::string model;
    std::string inventory;
    std::string output;
    std::uint64_t seed = 0;
    std::size_t top_k = 50;
    std::optional<double> threshold; // overrides the model's threshold
    double growth_budget = 0.10;
    double dev_fraction = 0.10;
    std::size_t workers = 1;
    std::size_t chunk_size = 512;
    std::string backend = "reference"; // or "external"
    std::string external_command;
    TrainConfig train;

    std::string to_json() const;
    /// Unknown keys are rejected. Throws ParseError.
    static PipelineConfig from_json(const std::string &text);
    static PipelineConfig load(const std::filesystem::path &path);
    bool operator==(const PipelineConfig &) const = default;
};

/// Lexicon named by the config, or the built-in one.
std::shared_ptr<const Lexicon> load_lexicon(const PipelineConfig &config);

struct BuildReport {
    std::size_t pairs = 0;
    std::size_t skipped = 0; // a side was empty
    std::size_t noop = 0;
    std::size_t items = 0;
};

/// Tokenizes and annotates raw pairs. Pairs with an empty side are skipped.
std::vector<ParallelPair> annotate_corpus(std::span<const RawPair> raw, const Tokenizer &tokenizer,
                                          const Classifier &classifier, BuildReport *report = nullptr);

/// Reads `incorrect<TAB>correct` lines, or JSON-lines pair records when
/// `json_lines` is set.
std::vector<RawPair> read_raw_pairs(std::istream &in, bool json_lines);

/// Dataset file: one JSON object per line, `{"text": ..., "tags": [...]}`.
void write_dataset(std::ostream &out, const TaggedDataset &data);
/// Throws ParseError with the line number on malformed lines.
TaggedDataset read_dataset(std::istream &in, const Tokenizer &tokenizer);

/// Drops noop pairs and keeps (correct sentence, tags of its edits).
TaggedDataset build_training_data(std::span<const ParallelPair> annotated, BuildReport *report = nullptr);

struct GenerationRecord {
    std::size_t index = 0; // input line, 0-based
    Sentence source;       // the correct input
    Sentence corrupted;
    TagSet requested;
    TagSet realized;
    std::vector<Edit> edits; // over `corrupted`, restoring `source`
    std::string prefix;

    /// `src` is the corrupted side, `tgt` the correct one.
    PairRecord to_record() const;
};

struct GenerationSummary {
    std::size_t input = 0;
    std::size_t emitted = 0;
    std::size_t skipped = 0;
    std::size_t noop_output = 0;
    std::size_t requested_nonempty = 0;
    std::size_t realized_nonempty = 0; // among records with requested tags
    std::array<std::size_t, kNumTags> requested_counts{};
    std::array<std::size_t, kNumTags> realized_counts{};
};

struct GenerateOptions {
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::size_t chunk_size = 512;
    std::optional<double> threshold;
    double max_failure_rate = 0.10;
};

/// Streams `input` line by line: tokenize, predict tags, encode the prefix,
/// corrupt with seed (seed XOR line index), and hand records to `sink` in input
/// order. Lines that fail (blank, backend error) are skipped and counted.
/// Throws BackendError after the run when more than max_failure_rate of the
/// lines failed.
GenerationSummary generate(std::istream &input, const Tokenizer &tokenizer, const TaggerModel &model,
                           const CorruptionBackend &backend, const GenerateOptions &options,
                           const std::function<void(const GenerationRecord &)> &sink);

/// Tag distribution of a dataset.
struct StatsReport {
    std::size_t items = 0;
    std::size_t tagged_items = 0;
    ImbalanceReport imbalance;

    std::string to_json() const;
    std::string to_table() const;
};

/// Throws InputError on an empty dataset.
StatsReport dataset_stats(const TaggedDataset &data);
/// From label counts alone.
StatsReport label_stats(const std::array<std::size_t, kNumTags> &counts, std::size_t items,
                        std::size_t tagged_items);

/// Realization statistics of generated records.
struct GenerationStats {
    std::size_t records = 0;
    std::size_t requested_nonempty = 0;
    std::size_t realized_nonempty = 0;
    std::size_t noop_output = 0;
    std::array<std::size_t, kNumTags> requested{};
    std::array<std::size_t, kNumTags> realized{};
    /// Records whose re-annotated tags cover the reported realized tags.
    std::optional<std::size_t> verified_agreement;

    double realized_rate() const;
    std::string to_json() const;
    std::string to_table() const;
};

/// With a classifier, each record is re-annotated to measure agreement.
GenerationStats generation_stats(std::span<const PairRecord> records, const Tokenizer &tokenizer,
                                 const Classifier *classifier = nullptr);

} // namespace gecsyn
