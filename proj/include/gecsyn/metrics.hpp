#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gecsyn/core.hpp"

namespace gecsyn {

class Classifier;

struct ConfusionCounts {
    std::size_t true_positive = 0;
    std::size_t false_positive = 0;
    std::size_t false_negative = 0;

    ConfusionCounts &operator+=(const ConfusionCounts &o) {
        true_positive += o.true_positive;
        false_positive += o.false_positive;
        false_negative += o.false_negative;
        return *this;
    }
    bool operator==(const ConfusionCounts &) const = default;
};

/// Percentages.
struct Score {
    double precision = 0.0;
    double recall = 0.0;
    double f05 = 0.0;
};

/// F-beta of percentages: (1 + b^2) P R / (b^2 P + R); 0 when P = R = 0.
double f_beta(double precision, double recall, double beta);

/// Micro scores from counts. An undefined precision or recall counts as 0,
/// except that all-zero counts (nothing expected, nothing proposed) score
/// 100 across the board.
Score score_counts(const ConfusionCounts &counts, double beta = 0.5);

struct MultilabelReport {
    Score score;
    ConfusionCounts counts;
    std::array<ConfusionCounts, kNumTags> per_tag{};
};

/// Micro-averaged P/R/F0.5 over all (instance, tag) decisions.
/// Throws InputError on a length mismatch.
MultilabelReport multilabel_score(std::span<const TagSet> gold, std::span<const TagSet> predicted);

struct GecReport {
    Score score;
    ConfusionCounts counts;
};

/// Counts for one sentence: an edit matches when span, replacement surfaces
/// and tag are all equal.
ConfusionCounts edit_counts(std::span<const Edit> gold, std::span<const Edit> system);

/// Edit-level scoring: gold edits from source -> reference, system edits
/// from source -> system output, both produced by `classifier`.
/// Throws InputError on a length mismatch.
GecReport gec_score(const Classifier &classifier, std::span<const Sentence> system, std::span<const Sentence> sources,
                    std::span<const Sentence> references);

/// Clipped n-gram matches and totals for n = 1..4, plus lengths.
struct NgramStats {
    std::array<std::size_t, 4> matches{};
    std::array<std::size_t, 4> totals{};
    std::size_t hypothesis_length = 0;
    std::size_t reference_length = 0;

    NgramStats &operator+=(const NgramStats &o);
};

NgramStats ngram_stats(std::span<const std::string> hypothesis, std::span<const std::string> reference);

/// BLEU-4 from accumulated statistics: unigram precision unsmoothed,
/// add-one smoothing for n >= 2, brevity penalty when the hypothesis is shorter.
double bleu_from_stats(const NgramStats &stats);

/// Corpus BLEU in [0, 100]. Throws InputError on empty or mismatched corpora.
double bleu(std::span<const Sentence> hypotheses, std::span<const Sentence> references);

} // namespace gecsyn
