#include "gecsyn/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "gecsyn/classifier.hpp"
#include "gecsyn/error.hpp"

namespace gecsyn {

double f_beta(double precision, double recall, double beta) {
    if (precision <= 0.0 && recall <= 0.0) return 0.0;
    const double b2 = beta * beta;
    return (1.0 + b2) * precision * recall / (b2 * precision + recall);
}

Score score_counts(const ConfusionCounts &c, double beta) {
    if (c.true_positive == 0 && c.false_positive == 0 && c.false_negative == 0) return {100.0, 100.0, 100.0};
    const auto tp = static_cast<double>(c.true_positive);
    Score s;
    const auto proposed = c.true_positive + c.false_positive;
    const auto expected = c.true_positive + c.false_negative;
    s.precision = proposed ? 100.0 * tp / static_cast<double>(proposed) : 0.0;
    s.recall = expected ? 100.0 * tp / static_cast<double>(expected) : 0.0;
    s.f05 = f_beta(s.precision, s.recall, beta);
    return s;
}

MultilabelReport multilabel_score(std::span<const TagSet> gold, std::span<const TagSet> predicted) {
    if (gold.size() != predicted.size()) throw InputError("gold and predicted tag lists differ in length");
    MultilabelReport r;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        for (std::size_t t = 0; t < kNumTags; ++t) {
            const bool g = gold[i].contains(tag_at(t)), p = predicted[i].contains(tag_at(t));
            auto &c = r.per_tag[t];
            if (g && p) ++c.true_positive;
            if (!g && p) ++c.false_positive;
            if (g && !p) ++c.false_negative;
        }
    }
    for (const auto &c : r.per_tag) r.counts += c;
    r.score = score_counts(r.counts);
    return r;
}

ConfusionCounts edit_counts(std::span<const Edit> gold, std::span<const Edit> system) {
    using Key = std::tuple<std::size_t, std::size_t, std::string, std::optional<ErrorTag>>;
    auto key = [](const Edit &e) -> Key { return {e.start, e.end, join_surfaces(e.replacement), e.tag}; };
    std::map<Key, std::size_t> remaining;
    for (const auto &e : gold) ++remaining[key(e)];
    ConfusionCounts c;
    for (const auto &e : system) {
        auto it = remaining.find(key(e));
        if (it != remaining.end() && it->second > 0) {
            --it->second;
            ++c.true_positive;
        } else {
            ++c.false_positive;
        }
    }
    for (const auto &[k, n] : remaining) c.false_negative += n;
    return c;
}

GecReport gec_score(const Classifier &classifier, std::span<const Sentence> system, std::span<const Sentence> sources,
                    std::span<const Sentence> references) {
    if (system.size() != sources.size() || sources.size() != references.size()) {
        throw InputError("system, source and reference corpora differ in length");
    }
    GecReport r;
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const auto gold = classifier.edits(sources[i], references[i]);
        const auto hyp = classifier.edits(sources[i], system[i]);
        r.counts += edit_counts(gold, hyp);
    }
    r.score = score_counts(r.counts);
    return r;
}

NgramStats &NgramStats::operator+=(const NgramStats &o) {
    for (std::size_t n = 0; n < 4; ++n) {
        matches[n] += o.matches[n];
        totals[n] += o.totals[n];
    }
    hypothesis_length += o.hypothesis_length;
    reference_length += o.reference_length;
    return *this;
}

NgramStats ngram_stats(std::span<const std::string> hypothesis, std::span<const std::string> reference) {
    NgramStats s;
    s.hypothesis_length = hypothesis.size();
    s.reference_length = reference.size();
    auto count = [](std::span<const std::string> words, std::size_t n) {
        std::map<std::vector<std::string>, std::size_t> out;
        for (std::size_t i = 0; i + n <= words.size(); ++i) {
            ++out[std::vector<std::string>(words.begin() + static_cast<std::ptrdiff_t>(i),
                                           words.begin() + static_cast<std::ptrdiff_t>(i + n))];
        }
        return out;
    };
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto hyp = count(hypothesis, n);
        const auto ref = count(reference, n);
        for (const auto &[gram, c] : hyp) {
            s.totals[n - 1] += c;
            auto it = ref.find(gram);
            if (it != ref.end()) s.matches[n - 1] += std::min(c, it->second);
        }
    }
    return s;
}

double bleu_from_stats(const NgramStats &s) {
    if (s.hypothesis_length == 0 || s.matches[0] == 0) return 0.0;
    double log_sum = std::log(static_cast<double>(s.matches[0]) / static_cast<double>(s.totals[0]));
    for (std::size_t n = 1; n < 4; ++n) {
        log_sum += std::log((static_cast<double>(s.matches[n]) + 1.0) / (static_cast<double>(s.totals[n]) + 1.0));
    }
    double bp = 1.0;
    if (s.hypothesis_length < s.reference_length) {
        bp = std::exp(1.0 - static_cast<double>(s.reference_length) / static_cast<double>(s.hypothesis_length));
    }
    return std::min(100.0, 100.0 * bp * std::exp(log_sum / 4.0));
}

double bleu(std::span<const Sentence> hypotheses, std::span<const Sentence> references) {
    if (hypotheses.empty()) throw InputError("BLEU needs a non-empty corpus");
    if (hypotheses.size() != references.size()) throw InputError("hypotheses and references differ in length");
    NgramStats total;
    for (std::size_t i = 0; i < hypotheses.size(); ++i) {
        total += ngram_stats(hypotheses[i].surfaces(), references[i].surfaces());
    }
    return bleu_from_stats(total);
}

} // namespace gecsyn
