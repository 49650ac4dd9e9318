#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gecsyn/core.hpp"
#include "gecsyn/tokenizer.hpp"

namespace gecsyn {

/// Sparse hashed feature vector: sorted unique indices with their values.
struct FeatureVector {
    std::vector<std::uint32_t> indices;
    std::vector<float> values;

    std::size_t size() const { return indices.size(); }
};

/// Deterministic feature extraction into a hash space of 2^hash_bits slots.
/// Features: lowercased token unigrams and bigrams, pos unigrams and
/// bigrams, a sentence-length bucket, and presence flags (has-noun,
/// has-verb, has-3sg-verb, has-plural-noun, has-punct, has-preposition,
/// has-determiner).
class FeatureExtractor {
  public:
    explicit FeatureExtractor(unsigned hash_bits = 18, std::shared_ptr<const Lexicon> lexicon = Lexicon::builtin());

    FeatureVector extract(const Sentence &sentence) const;
    /// Readable feature strings before hashing; useful for debugging.
    std::vector<std::string> feature_names(const Sentence &sentence) const;

    unsigned hash_bits() const { return hash_bits_; }
    std::size_t dimension() const { return std::size_t{1} << hash_bits_; }

  private:
    unsigned hash_bits_;
    std::shared_ptr<const Lexicon> lexicon_;
};

std::uint64_t fnv1a(std::string_view s);

/// Per-label imbalance: IRLbl(l) = max label count / count(l); MeanIR is the
/// mean IRLbl over labels with a non-zero count. Labels that never occur
/// have no IRLbl.
struct ImbalanceReport {
    std::array<std::size_t, kNumTags> counts{};
    std::array<std::optional<double>, kNumTags> irlbl{};
    double mean_ir = 1.0;
};

ImbalanceReport imbalance(const std::array<std::size_t, kNumTags> &counts);
inline ImbalanceReport imbalance(const TaggedDataset &data) { return imbalance(data.label_counts()); }

/// Multi-label random oversampling. Clones random instances bearing a
/// minority label (IRLbl > MeanIR of the input) round-robin until every such
/// label reaches MeanIR or growth_budget * |data| clones have been made.
/// If co-occurring labels push the final MeanIR above the input MeanIR, the
/// clone sequence is cut back to its longest prefix that does not.
/// Throws EmptyInputError on an empty dataset and InputError on a budget
/// outside (0, 1].
TaggedDataset oversample(const TaggedDataset &data, double growth_budget, std::uint64_t seed);

struct TrainConfig {
    std::size_t epochs = 5;
    double learning_rate = 0.5;
    std::size_t batch_size = 16;
    std::uint64_t seed = 0;

    bool operator==(const TrainConfig &) const = default;
};

/// 24 independent logistic scorers over hashed features plus a global threshold.
class TaggerModel {
  public:
    TaggerModel(unsigned hash_bits = 18, TagInventory inventory = TagInventory::standard());

    /// Sigmoid scores in [0, 1], indexed by canonical tag index.
    std::array<double, kNumTags> scores(const FeatureVector &features) const;
    std::array<double, kNumTags> scores(const Sentence &sentence) const;

    TagSet predict(const Sentence &sentence) const { return predict_scores(scores(sentence), threshold_); }
    static TagSet predict_scores(const std::array<double, kNumTags> &scores, double threshold);

    double threshold() const { return threshold_; }
    /// Throws InputError unless 0 < t < 1.
    void set_threshold(double t);

    unsigned hash_bits() const { return extractor_.hash_bits(); }
    const FeatureExtractor &extractor() const { return extractor_; }
    const TagInventory &inventory() const { return inventory_; }

    std::span<float> weights(ErrorTag tag) { return weights_[tag_index(tag)]; }
    std::span<const float> weights(ErrorTag tag) const { return weights_[tag_index(tag)]; }
    double &bias(ErrorTag tag) { return biases_[tag_index(tag)]; }
    double bias(ErrorTag tag) const { return biases_[tag_index(tag)]; }

    /// JSON model file; weights stored sparsely.
    void save(const std::filesystem::path &path) const;
    std::string to_json() const;
    /// Throws ParseError on malformed files and InputError when
    /// `expected_inventory` is given and differs from the file's.
    static TaggerModel load(const std::filesystem::path &path,
                            const std::optional<TagInventory> &expected_inventory = std::nullopt);
    static TaggerModel from_json(const std::string &text,
                                 const std::optional<TagInventory> &expected_inventory = std::nullopt);

  private:
    FeatureExtractor extractor_;
    TagInventory inventory_;
    std::vector<std::vector<float>> weights_;
    std::array<double, kNumTags> biases_{};
    double threshold_ = 0.5;
};

struct TrainingReport {
    std::vector<double> epoch_loss; // mean per-label binary cross-entropy
};

/// Mini-batch gradient descent on mean per-label binary cross-entropy.
/// Deterministic under config.seed. Returns a model with threshold 0.5.
/// Throws EmptyInputError on empty data and InputError when no item carries
/// any tag.
TaggerModel train(const TaggedDataset &data, const TrainConfig &config, unsigned hash_bits = 18,
                  TrainingReport *report = nullptr);

/// The threshold grid 0.05, 0.10, ..., 0.95.
std::vector<double> threshold_grid();

/// Grid search for the threshold maximizing micro-averaged F0.5 of
/// predicted tag sets against `gold`; ties go to the lower threshold.
/// Throws TuningError when gold has no positive labels or sizes differ.
double tune_threshold(std::span<const std::array<double, kNumTags>> scores, std::span<const TagSet> gold);
double tune_threshold(const TaggerModel &model, const TaggedDataset &dev);

/// Seeded shuffle, then the last `dev_fraction` of items become the dev set.
std::pair<TaggedDataset, TaggedDataset> split_dev(const TaggedDataset &data, double dev_fraction, std::uint64_t seed);

} // namespace gecsyn
