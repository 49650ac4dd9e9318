#include "gecsyn/tagger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>

#include "gecsyn/error.hpp"
#include "gecsyn/metrics.hpp"
#include "gecsyn/rng.hpp"
#include "json.hpp"

namespace gecsyn {

using nlohmann::json;

namespace {

constexpr const char *kModelFormat = "gecsyn-tagger";
constexpr int kModelVersion = 1;

// F0.5 = 5tp / (5tp + fn + 4fp); compared by cross-multiplication so exact ties stay ties.
bool f05_greater(const ConfusionCounts &a, const ConfusionCounts &b) {
    const auto denom = [](const ConfusionCounts &c) {
        return 5 * c.true_positive + c.false_negative + 4 * c.false_positive;
    };
    const auto da = denom(a), db = denom(b);
    if (da == 0 || db == 0) return da == 0 && db != 0 && b.true_positive * 5 < db;
    return 5 * a.true_positive * db > 5 * b.true_positive * da;
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

std::string length_bucket(std::size_t n) {
    if (n <= 5) return "1-5";
    if (n <= 10) return "6-10";
    if (n <= 15) return "11-15";
    if (n <= 20) return "16-20";
    if (n <= 30) return "21-30";
    return "31+";
}

} // namespace

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

FeatureExtractor::FeatureExtractor(unsigned hash_bits, std::shared_ptr<const Lexicon> lexicon)
    : hash_bits_(hash_bits), lexicon_(std::move(lexicon)) {
    if (hash_bits_ < 1 || hash_bits_ > 30) throw InputError("hash_bits must be in [1, 30]");
}

std::vector<std::string> FeatureExtractor::feature_names(const Sentence &sentence) const {
    std::vector<std::string> f;
    std::string prev_word = "<s>";
    std::string prev_pos = "<s>";
    bool noun = false, verb = false, verb3sg = false, plural = false, punct = false, prep = false, det = false;
    for (const auto &t : sentence.tokens()) {
        const std::string w = to_lower(t.surface);
        const std::string p(pos_name(t.pos));
        f.push_back("w:" + w);
        f.push_back("b:" + prev_word + "|" + w);
        f.push_back("p:" + p);
        f.push_back("pb:" + prev_pos + "|" + p);
        prev_word = w;
        prev_pos = p;
        switch (t.pos) {
        case Pos::Noun:
            noun = true;
            plural = plural || lexicon_->form_of(t.surface, t.lemma, Pos::Noun) == Inflection::Plural;
            break;
        case Pos::Verb:
            verb = true;
            verb3sg = verb3sg || lexicon_->form_of(t.surface, t.lemma, Pos::Verb) == Inflection::Present3sg;
            break;
        case Pos::Punct:
            punct = true;
            break;
        case Pos::Prep:
            prep = true;
            break;
        case Pos::Det:
            det = true;
            break;
        default:
            break;
        }
    }
    f.push_back("b:" + prev_word + "|</s>");
    f.push_back("pb:" + prev_pos + "|</s>");
    f.push_back("len:" + length_bucket(sentence.size()));
    if (noun) f.emplace_back("f:has-noun");
    if (verb) f.emplace_back("f:has-verb");
    if (verb3sg) f.emplace_back("f:has-3sg-verb");
    if (plural) f.emplace_back("f:has-plural-noun");
    if (punct) f.emplace_back("f:has-punct");
    if (prep) f.emplace_back("f:has-preposition");
    if (det) f.emplace_back("f:has-determiner");
    return f;
}

FeatureVector FeatureExtractor::extract(const Sentence &sentence) const {
    const std::uint64_t mask = dimension() - 1;
    std::vector<std::uint32_t> raw;
    for (const auto &name : feature_names(sentence)) raw.push_back(static_cast<std::uint32_t>(fnv1a(name) & mask));
    std::sort(raw.begin(), raw.end());
    FeatureVector fv;
    for (std::size_t i = 0; i < raw.size();) {
        std::size_t j = i;
        while (j < raw.size() && raw[j] == raw[i]) ++j;
        fv.indices.push_back(raw[i]);
        fv.values.push_back(static_cast<float>(j - i));
        i = j;
    }
    return fv;
}

ImbalanceReport imbalance(const std::array<std::size_t, kNumTags> &counts) {
    ImbalanceReport r;
    r.counts = counts;
    const std::size_t max_count = *std::max_element(counts.begin(), counts.end());
    double sum = 0.0;
    std::size_t present = 0;
    for (std::size_t t = 0; t < kNumTags; ++t) {
        if (counts[t] == 0) continue;
        r.irlbl[t] = static_cast<double>(max_count) / static_cast<double>(counts[t]);
        sum += *r.irlbl[t];
        ++present;
    }
    r.mean_ir = present ? sum / static_cast<double>(present) : 1.0;
    return r;
}

TaggedDataset oversample(const TaggedDataset &data, double growth_budget, std::uint64_t seed) {
    if (data.empty()) throw EmptyInputError("cannot oversample an empty dataset");
    if (!(growth_budget > 0.0 && growth_budget <= 1.0)) throw InputError("growth_budget must be in (0, 1]");

    const auto initial = imbalance(data);
    const double mean_ir = initial.mean_ir;
    const auto budget = static_cast<std::size_t>(std::floor(growth_budget * static_cast<double>(data.size())));

    std::array<std::vector<std::size_t>, kNumTags> bags;
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (ErrorTag t : data[i].second.tags()) bags[tag_index(t)].push_back(i);
    }
    std::vector<std::size_t> minority;
    for (std::size_t t = 0; t < kNumTags; ++t) {
        if (initial.irlbl[t] && *initial.irlbl[t] > mean_ir) minority.push_back(t);
    }

    Rng rng(seed);
    auto counts = data.label_counts();
    std::vector<std::size_t> clones;
    std::vector<double> mean_ir_after; // MeanIR after each clone
    auto irlbl = [&](std::size_t t) {
        return static_cast<double>(*std::max_element(counts.begin(), counts.end())) / static_cast<double>(counts[t]);
    };

    while (clones.size() < budget && !minority.empty()) {
        std::vector<std::size_t> still;
        for (std::size_t t : minority) {
            if (clones.size() >= budget) {
                still.push_back(t);
                continue;
            }
            const auto &bag = bags[t];
            const std::size_t pick = bag[rng.uniform(bag.size())];
            clones.push_back(pick);
            for (ErrorTag l : data[pick].second.tags()) ++counts[tag_index(l)];
            mean_ir_after.push_back(imbalance(counts).mean_ir);
            if (irlbl(t) > mean_ir) still.push_back(t);
        }
        minority = std::move(still);
    }

    std::size_t keep = clones.size();
    if (keep > 0 && mean_ir_after.back() > mean_ir) {
        keep = 0;
        for (std::size_t k = clones.size(); k > 0; --k) {
            if (mean_ir_after[k - 1] <= mean_ir) {
                keep = k;
                break;
            }
        }
    }

    TaggedDataset out(data.items());
    for (std::size_t k = 0; k < keep; ++k) out.add(data[clones[k]]);
    return out;
}

TaggerModel::TaggerModel(unsigned hash_bits, TagInventory inventory)
    : extractor_(hash_bits), inventory_(inventory),
      weights_(kNumTags, std::vector<float>(std::size_t{1} << hash_bits, 0.0f)) {}

std::array<double, kNumTags> TaggerModel::scores(const FeatureVector &fv) const {
    std::array<double, kNumTags> out{};
    for (std::size_t t = 0; t < kNumTags; ++t) {
        double z = biases_[t];
        const auto &w = weights_[t];
        for (std::size_t k = 0; k < fv.size(); ++k) z += static_cast<double>(w[fv.indices[k]]) * fv.values[k];
        out[t] = sigmoid(z);
    }
    return out;
}

std::array<double, kNumTags> TaggerModel::scores(const Sentence &sentence) const {
    return scores(extractor_.extract(sentence));
}

TagSet TaggerModel::predict_scores(const std::array<double, kNumTags> &scores, double threshold) {
    TagSet out;
    for (std::size_t t = 0; t < kNumTags; ++t) {
        if (scores[t] >= threshold) out.insert(tag_at(t));
    }
    return out;
}

void TaggerModel::set_threshold(double t) {
    if (!(t > 0.0 && t < 1.0)) throw InputError("threshold must be strictly between 0 and 1");
    threshold_ = t;
}

std::string TaggerModel::to_json() const {
    json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["hash_bits"] = hash_bits();
    j["threshold"] = threshold_;
    j["inventory"] = inventory_.names();
    json labels = json::array();
    for (std::size_t pos = 0; pos < kNumTags; ++pos) {
        const ErrorTag tag = inventory_.at(pos);
        json weights = json::array();
        const auto &w = weights_[tag_index(tag)];
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] != 0.0f) weights.push_back({i, w[i]});
        }
        labels.push_back({{"tag", tag_name(tag)}, {"bias", biases_[tag_index(tag)]}, {"weights", std::move(weights)}});
    }
    j["labels"] = std::move(labels);
    return j.dump();
}

void TaggerModel::save(const std::filesystem::path &path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write model file " + path.string());
    out << to_json() << '\n';
}

TaggerModel TaggerModel::from_json(const std::string &text, const std::optional<TagInventory> &expected) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what(), e.byte);
    }
    try {
        if (j.at("format").get<std::string>() != kModelFormat) throw ParseError("not a tagger model file", 0);
        if (j.at("version").get<int>() != kModelVersion) throw ParseError("unsupported model version", 0);
        const auto bits = j.at("hash_bits").get<unsigned>();
        const auto inventory = TagInventory::from_names(j.at("inventory").get<std::vector<std::string>>());
        if (expected && !(*expected == inventory)) throw InputError("model tag inventory does not match");
        TaggerModel model(bits, inventory);
        model.set_threshold(j.at("threshold").get<double>());
        const auto &labels = j.at("labels");
        if (labels.size() != kNumTags) throw ParseError("model must have 24 labels", 0);
        for (const auto &label : labels) {
            auto tag = tag_from_name(label.at("tag").get<std::string>());
            if (!tag) throw ParseError("unknown tag in model file", 0);
            model.bias(*tag) = label.at("bias").get<double>();
            auto w = model.weights(*tag);
            for (const auto &pair : label.at("weights")) {
                const auto idx = pair.at(0).get<std::size_t>();
                if (idx >= w.size()) throw ParseError("weight index out of range", 0);
                w[idx] = pair.at(1).get<float>();
            }
        }
        return model;
    } catch (const json::exception &e) {
        throw ParseError(std::string("malformed model file: ") + e.what(), 0);
    }
}

TaggerModel TaggerModel::load(const std::filesystem::path &path, const std::optional<TagInventory> &expected) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str(), expected);
}

TaggerModel train(const TaggedDataset &data, const TrainConfig &config, unsigned hash_bits, TrainingReport *report) {
    if (data.empty()) throw EmptyInputError("cannot train on an empty dataset");
    const auto &counts = data.label_counts();
    if (std::all_of(counts.begin(), counts.end(), [](std::size_t c) { return c == 0; })) {
        throw InputError("training data has no positive labels");
    }
    if (config.batch_size == 0) throw InputError("batch_size must be positive");

    TaggerModel model(hash_bits);
    std::vector<FeatureVector> features;
    features.reserve(data.size());
    for (const auto &item : data.items()) features.push_back(model.extractor().extract(item.first));

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(config.seed);

    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        double loss = 0.0;
        for (std::size_t start = 0; start < order.size(); start += config.batch_size) {
            const std::size_t end = std::min(order.size(), start + config.batch_size);
            const double step = config.learning_rate / static_cast<double>(end - start);
            // Forward pass for the whole batch before any update.
            std::vector<std::array<double, kNumTags>> errors;
            errors.reserve(end - start);
            for (std::size_t b = start; b < end; ++b) {
                const std::size_t i = order[b];
                const auto s = model.scores(features[i]);
                std::array<double, kNumTags> err{};
                for (std::size_t t = 0; t < kNumTags; ++t) {
                    const double y = data[i].second.contains(tag_at(t)) ? 1.0 : 0.0;
                    const double p = std::clamp(s[t], 1e-12, 1.0 - 1e-12);
                    loss -= y * std::log(p) + (1.0 - y) * std::log(1.0 - p);
                    err[t] = s[t] - y;
                }
                errors.push_back(err);
            }
            for (std::size_t b = start; b < end; ++b) {
                const auto &fv = features[order[b]];
                const auto &err = errors[b - start];
                for (std::size_t t = 0; t < kNumTags; ++t) {
                    const ErrorTag tag = tag_at(t);
                    auto w = model.weights(tag);
                    const double g = step * err[t];
                    for (std::size_t k = 0; k < fv.size(); ++k) {
                        w[fv.indices[k]] = static_cast<float>(w[fv.indices[k]] - g * fv.values[k]);
                    }
                    model.bias(tag) -= g;
                }
            }
        }
        if (report) report->epoch_loss.push_back(loss / static_cast<double>(data.size() * kNumTags));
    }
    return model;
}

std::vector<double> threshold_grid() {
    std::vector<double> grid;
    for (int k = 1; k <= 19; ++k) grid.push_back(k / 20.0);
    return grid;
}

double tune_threshold(std::span<const std::array<double, kNumTags>> scores, std::span<const TagSet> gold) {
    if (scores.size() != gold.size()) throw TuningError("score and gold lists differ in length");
    if (std::all_of(gold.begin(), gold.end(), [](const TagSet &g) { return g.empty(); })) {
        throw TuningError("dev set has no positive labels");
    }
    double best_threshold = 0.0;
    std::optional<ConfusionCounts> best;
    for (double t : threshold_grid()) {
        std::vector<TagSet> predicted;
        predicted.reserve(scores.size());
        for (const auto &s : scores) predicted.push_back(TaggerModel::predict_scores(s, t));
        const auto counts = multilabel_score(gold, predicted).counts;
        if (!best || f05_greater(counts, *best)) {
            best = counts;
            best_threshold = t;
        }
    }
    return best_threshold;
}

double tune_threshold(const TaggerModel &model, const TaggedDataset &dev) {
    if (dev.empty()) throw TuningError("dev set is empty");
    std::vector<std::array<double, kNumTags>> scores;
    std::vector<TagSet> gold;
    for (const auto &[sentence, tags] : dev.items()) {
        scores.push_back(model.scores(sentence));
        gold.push_back(tags);
    }
    return tune_threshold(scores, gold);
}

std::pair<TaggedDataset, TaggedDataset> split_dev(const TaggedDataset &data, double dev_fraction, std::uint64_t seed) {
    if (!(dev_fraction >= 0.0 && dev_fraction < 1.0)) throw InputError("dev_fraction must be in [0, 1)");
    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(std::span<std::size_t>(order));
    const auto dev_size = static_cast<std::size_t>(std::lround(dev_fraction * static_cast<double>(data.size())));
    TaggedDataset train_set, dev_set;
    for (std::size_t k = 0; k < order.size(); ++k) {
        (k + dev_size >= order.size() ? dev_set : train_set).add(data[order[k]]);
    }
    return {std::move(train_set), std::move(dev_set)};
}

} // namespace gecsyn
