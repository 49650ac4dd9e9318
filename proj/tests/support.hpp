#pragma once

// Shared fixtures and independent reference computations for the tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "gecsyn/aligner.hpp"
#include "gecsyn/core.hpp"
#include "gecsyn/io.hpp"
#include "gecsyn/tokenizer.hpp"

namespace testing {

inline std::string data_path(const std::string &name) { return std::string(GECSYN_DATA_DIR) + "/" + name; }
inline std::string test_data_path(const std::string &name) { return std::string(GECSYN_TEST_DATA_DIR) + "/" + name; }

inline const gecsyn::Tokenizer &tokenizer() {
    static const gecsyn::Tokenizer tok;
    return tok;
}

inline gecsyn::Sentence sent(const std::string &text) { return tokenizer().tokenize(text); }

inline std::vector<std::string> read_lines(const std::string &path) {
    std::ifstream in(path);
    std::vector<std::string> out;
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

inline std::vector<gecsyn::RawPair> read_pairs(const std::string &path) {
    std::ifstream in(path);
    return gecsyn::read_parallel_tsv(in);
}

/// Minimum alignment cost by exhaustive recursion over every operation
/// sequence, without memoization.
class BruteForceAligner {
  public:
    BruteForceAligner(const gecsyn::Sentence &a, const gecsyn::Sentence &b, gecsyn::AlignmentCosts costs = {})
        : a_(a), b_(b), c_(costs) {}

    double min_cost() { return best(0, 0); }

  private:
    double sub(const gecsyn::AnnotatedToken &x, const gecsyn::AnnotatedToken &y) const {
        double v = c_.substitute;
        if (x.lemma == y.lemma) v -= c_.same_lemma_discount;
        if (x.pos == y.pos) v -= c_.same_pos_discount;
        return std::max(v, c_.substitute_floor);
    }

    bool swappable(std::size_t i, std::size_t j, std::size_t k) const {
        std::vector<std::string> x, y;
        for (std::size_t t = 0; t < k; ++t) {
            x.push_back(a_[i + t].surface);
            y.push_back(b_[j + t].surface);
        }
        if (x == y) return false;
        std::sort(x.begin(), x.end());
        std::sort(y.begin(), y.end());
        return x == y;
    }

    double best(std::size_t i, std::size_t j) const {
        const std::size_t n = a_.size(), m = b_.size();
        if (i == n && j == m) return 0.0;
        double out = 1e300;
        if (i < n) out = std::min(out, c_.indel + best(i + 1, j));
        if (j < m) out = std::min(out, c_.indel + best(i, j + 1));
        if (i < n && j < m) {
            const double step = a_[i].surface == b_[j].surface ? 0.0 : sub(a_[i], b_[j]);
            out = std::min(out, step + best(i + 1, j + 1));
        }
        for (std::size_t k = 2; k <= c_.max_transpose && i + k <= n && j + k <= m; ++k) {
            if (swappable(i, j, k)) out = std::min(out, double(k) - c_.transpose_discount + best(i + k, j + k));
        }
        return out;
    }

    const gecsyn::Sentence &a_;
    const gecsyn::Sentence &b_;
    gecsyn::AlignmentCosts c_;
};

/// Clipped unigram precision, counted by hand.
inline double clipped_unigram_precision(const std::vector<std::string> &hyp, const std::vector<std::string> &ref) {
    std::map<std::string, int> ref_counts, used;
    for (const auto &w : ref) ++ref_counts[w];
    int matched = 0;
    for (const auto &w : hyp) {
        if (used[w] < ref_counts[w]) {
            ++used[w];
            ++matched;
        }
    }
    return hyp.empty() ? 0.0 : double(matched) / double(hyp.size());
}

/// Micro P/R/F0.5 (percent) by direct counting over (instance, tag) decisions.
inline std::array<double, 3> micro_prf(const std::vector<gecsyn::TagSet> &gold, const std::vector<gecsyn::TagSet> &pred) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        for (std::size_t t = 0; t < gecsyn::kNumTags; ++t) {
            const auto tag = gecsyn::tag_at(t);
            const bool g = gold[i].contains(tag), p = pred[i].contains(tag);
            tp += g && p;
            fp += !g && p;
            fn += g && !p;
        }
    }
    if (tp + fp + fn == 0) return {100.0, 100.0, 100.0};
    const double p = tp + fp > 0 ? 100.0 * tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? 100.0 * tp / (tp + fn) : 0.0;
    const double f = p + r > 0 ? 1.25 * p * r / (0.25 * p + r) : 0.0;
    return {p, r, f};
}

} // namespace testing
