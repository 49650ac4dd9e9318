#include <cmath>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "gecsyn/classifier.hpp"
#include "gecsyn/error.hpp"
#include "gecsyn/metrics.hpp"
#include "gecsyn/pipeline.hpp"
#include "gecsyn/rng.hpp"
#include "gecsyn/tagger.hpp"
#include "support.hpp"

using namespace gecsyn;
using testing::sent;

namespace {

// Labels A, B, C stand for three arbitrary tags.
constexpr ErrorTag A = ErrorTag::Adj, B = ErrorTag::Adv, C = ErrorTag::Conj;

TaggedDataset counts_fixture(std::size_t a, std::size_t b, std::size_t c) {
    TaggedDataset d;
    for (std::size_t i = 0; i < a; ++i) d.add(sent("a" + std::to_string(i)), TagSet{A});
    for (std::size_t i = 0; i < b; ++i) d.add(sent("b" + std::to_string(i)), TagSet{B});
    for (std::size_t i = 0; i < c; ++i) d.add(sent("c" + std::to_string(i)), TagSet{C});
    return d;
}

} // namespace

TEST_CASE("imbalance of the A:100/B:50/C:10 fixture") {
    const auto rep = imbalance(counts_fixture(100, 50, 10));
    CHECK(rep.irlbl[tag_index(A)] == 1.0);
    CHECK(rep.irlbl[tag_index(B)] == 2.0);
    CHECK(rep.irlbl[tag_index(C)] == 10.0);
    CHECK(rep.mean_ir == doctest::Approx(13.0 / 3.0).epsilon(1e-12));
    CHECK_FALSE(rep.irlbl[tag_index(ErrorTag::Det)].has_value());
}

TEST_CASE("oversampling clones only the minority label") {
    const auto data = counts_fixture(100, 50, 10);
    const auto out = oversample(data, 0.10, 5);
    // C needs 100 / c <= 13/3, i.e. c >= 24: fourteen clones, within the 16 allowed.
    CHECK(out.size() == 174);
    CHECK(out.label_counts()[tag_index(A)] == 100);
    CHECK(out.label_counts()[tag_index(B)] == 50);
    CHECK(out.label_counts()[tag_index(C)] == 24);
    CHECK(imbalance(out).mean_ir <= imbalance(data).mean_ir);

    std::set<std::string> before, after;
    for (const auto &[s, t] : data.items()) before.insert(s.text());
    for (const auto &[s, t] : out.items()) after.insert(s.text());
    CHECK(before == after);

    const auto again = oversample(data, 0.10, 5);
    REQUIRE(again.size() == out.size());
    for (std::size_t i = 0; i < out.size(); ++i) CHECK(again[i].first == out[i].first);
}

TEST_CASE("oversampling respects the growth budget") {
    const auto data = counts_fixture(590, 0, 10);
    const auto out = oversample(data, 0.10, 1);
    CHECK(out.size() <= 660);
    // MeanIR is (1 + 59) / 2 = 30, so C stops at ceil(590 / 30) = 20.
    CHECK(out.size() == 610);
    CHECK(imbalance(out).mean_ir <= imbalance(data).mean_ir);

    // A budget of 1% allows 6 of the 10 clones C would need.
    const auto capped = oversample(data, 0.01, 1);
    CHECK(capped.size() == 606);
    CHECK(capped.label_counts()[tag_index(C)] == 16);

    const auto balanced = counts_fixture(20, 20, 20);
    CHECK(oversample(balanced, 0.5, 1).size() == balanced.size());

    CHECK_THROWS_AS(oversample(TaggedDataset{}, 0.1, 0), EmptyInputError);
    CHECK_THROWS_AS(oversample(data, 0.0, 0), InputError);
    CHECK_THROWS_AS(oversample(data, 1.5, 0), InputError);
}

TEST_CASE("features are deterministic and hashed into range") {
    const FeatureExtractor fx(12);
    const auto s = sent("The dogs eat bones .");
    const auto a = fx.extract(s), b = fx.extract(s);
    CHECK(a.indices == b.indices);
    CHECK(a.values == b.values);
    for (auto i : a.indices) CHECK(i < fx.dimension());
    for (std::size_t k = 1; k < a.size(); ++k) CHECK(a.indices[k - 1] < a.indices[k]);

    const auto names = fx.feature_names(s);
    auto has = [&](const std::string &f) { return std::find(names.begin(), names.end(), f) != names.end(); };
    CHECK(has("f:has-plural-noun"));
    CHECK(has("f:has-determiner"));
    CHECK_FALSE(has("f:has-3sg-verb"));
    CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
}

namespace {

std::vector<std::string> nouns() {
    return {"dog", "cat", "book", "car", "house", "friend", "teacher", "apple", "bird", "song",
            "chair", "table", "phone", "city", "student", "letter", "shoe", "flower", "window", "bottle"};
}

// NOUN:NUM iff the sentence contains a plural noun.
TaggedDataset separable(std::size_t n, std::uint64_t seed) {
    const std::vector<std::string> verbs{"see", "like", "want", "find", "need"};
    const auto ns = nouns();
    Rng rng(seed);
    TaggedDataset d;
    for (std::size_t i = 0; i < n; ++i) {
        const bool plural = rng.uniform(2) == 1;
        const auto &noun = ns[rng.uniform(ns.size())];
        const auto &verb = verbs[rng.uniform(verbs.size())];
        const std::string obj = plural ? regular_plural(noun) : "the " + noun;
        d.add(sent("We " + verb + " " + obj + " ."), plural ? TagSet{ErrorTag::NounNum} : TagSet{});
    }
    return d;
}

} // namespace

TEST_CASE("separable toy data is learned") {
    TrainConfig cfg;
    cfg.epochs = 40;
    const auto model = train(separable(400, 1), cfg, 16);
    const auto held_out = separable(200, 2);
    for (const auto &[s, tags] : held_out.items()) {
        const double p = model.scores(s)[tag_index(ErrorTag::NounNum)];
        if (tags.empty()) {
            CHECK(p <= 0.1);
        } else {
            CHECK(p >= 0.9);
        }
        CHECK(model.scores(s)[tag_index(ErrorTag::Det)] < 0.5);
    }
    CHECK(model.predict(sent("We like bottles .")) == TagSet{ErrorTag::NounNum});
    CHECK(model.predict(sent("We like the bottle .")).empty());
}

TEST_CASE("training is deterministic and loss decreases on the bundled fixture") {
    const Classifier classifier;
    const auto raw = testing::read_pairs(testing::data_path("fixtures/parallel.tsv"));
    const auto data = build_training_data(annotate_corpus(raw, testing::tokenizer(), classifier));
    TrainingReport r1, r2;
    TrainConfig cfg;
    const auto m1 = train(data, cfg, 14, &r1);
    const auto m2 = train(data, cfg, 14, &r2);
    REQUIRE(r1.epoch_loss.size() == cfg.epochs);
    CHECK(r1.epoch_loss.back() < r1.epoch_loss.front());
    CHECK(r1.epoch_loss == r2.epoch_loss);
    CHECK(m1.to_json() == m2.to_json());
    CHECK(m1.threshold() == 0.5);
}

TEST_CASE("training input errors") {
    CHECK_THROWS_AS(train(TaggedDataset{}, {}, 10), EmptyInputError);
    TaggedDataset no_tags;
    no_tags.add(sent("nothing here"), TagSet{});
    CHECK_THROWS_AS(train(no_tags, {}, 10), InputError);
}

TEST_CASE("threshold grid") {
    const auto grid = threshold_grid();
    REQUIRE(grid.size() == 19);
    CHECK(grid.front() == doctest::Approx(0.05));
    CHECK(grid.back() == doctest::Approx(0.95));
}

TEST_CASE("tuning finds the unique best threshold") {
    // Positives score 0.32, negatives 0.27: only thresholds in (0.27, 0.32] are perfect.
    std::vector<std::array<double, kNumTags>> scores;
    std::vector<TagSet> gold;
    for (int i = 0; i < 10; ++i) {
        std::array<double, kNumTags> s{};
        s.fill(0.01);
        s[tag_index(ErrorTag::Prep)] = 0.32;
        s[tag_index(ErrorTag::Det)] = 0.27;
        scores.push_back(s);
        gold.push_back(TagSet{ErrorTag::Prep});
    }
    double best_f = -1, best_t = 0;
    for (double t : threshold_grid()) {
        std::vector<TagSet> pred;
        for (const auto &s : scores) pred.push_back(TaggerModel::predict_scores(s, t));
        const double f = testing::micro_prf(gold, pred)[2];
        if (f > best_f + 1e-12) {
            best_f = f;
            best_t = t;
        }
    }
    CHECK(best_t == doctest::Approx(0.30));
    CHECK(tune_threshold(scores, gold) == doctest::Approx(0.30));
}

TEST_CASE("tuning ties go to the lowest threshold") {
    std::vector<std::array<double, kNumTags>> scores(4);
    std::vector<TagSet> gold(4);
    for (std::size_t i = 0; i < 4; ++i) {
        gold[i] = TagSet{tag_at(i)};
        scores[i][i] = 1.0;
    }
    CHECK(tune_threshold(scores, gold) == doctest::Approx(0.05));

    CHECK_THROWS_AS(tune_threshold(scores, std::vector<TagSet>(4)), TuningError);
    CHECK_THROWS_AS(tune_threshold(scores, std::vector<TagSet>(3, TagSet{ErrorTag::Det})), TuningError);
}

TEST_CASE("tuning treats equal F0.5 from different counts as a tie") {
    // Up to 0.50: tp 38, fp 8, fn 6. From 0.55 to 0.90: tp 26, fp 2, fn 18. Both give F0.5 = 250/3.
    std::vector<std::array<double, kNumTags>> scores;
    std::vector<TagSet> gold;
    auto add = [&](std::size_t n, double score, bool positive) {
        for (std::size_t i = 0; i < n; ++i) {
            std::array<double, kNumTags> s{};
            s[0] = score;
            scores.push_back(s);
            gold.push_back(positive ? TagSet{tag_at(0)} : TagSet{});
        }
    };
    add(26, 0.92, true);
    add(12, 0.52, true);
    add(6, 0.01, true);
    add(2, 0.92, false);
    add(6, 0.52, false);
    CHECK(tune_threshold(scores, gold) == doctest::Approx(0.05));
}

TEST_CASE("predictions nest across thresholds") {
    Rng rng(11);
    const auto grid = threshold_grid();
    for (int n = 0; n < 1000; ++n) {
        std::array<double, kNumTags> s;
        for (auto &v : s) v = rng.unit();
        for (std::size_t k = 1; k < grid.size(); ++k) {
            REQUIRE(TaggerModel::predict_scores(s, grid[k]).is_subset_of(TaggerModel::predict_scores(s, grid[k - 1])));
        }
    }
}

TEST_CASE("model file round-trip") {
    TrainConfig cfg;
    cfg.epochs = 2;
    auto model = train(separable(50, 3), cfg, 10);
    model.set_threshold(0.3);
    const auto path = std::filesystem::temp_directory_path() / "gecsyn_test_model.json";
    model.save(path);
    const auto back = TaggerModel::load(path);
    std::filesystem::remove(path);
    CHECK(back.threshold() == 0.3);
    CHECK(back.hash_bits() == 10);
    const auto s = sent("We find cats .");
    const auto a = model.scores(s), b = back.scores(s);
    for (std::size_t i = 0; i < kNumTags; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-6));

    auto names = TagInventory::standard().names();
    std::swap(names[0], names[1]);
    CHECK_THROWS_AS(TaggerModel::from_json(model.to_json(), TagInventory::from_names(names)), InputError);
    CHECK_THROWS_AS(TaggerModel::from_json("{\"format\": \"other\"}"), ParseError);
    CHECK_THROWS_AS(model.set_threshold(1.0), InputError);
    CHECK_THROWS_AS(model.set_threshold(0.0), InputError);
}

TEST_CASE("dev split") {
    const auto data = counts_fixture(60, 30, 10);
    const auto [train_set, dev] = split_dev(data, 0.10, 4);
    CHECK(dev.size() == 10);
    CHECK(train_set.size() == 90);
    const auto [t2, d2] = split_dev(data, 0.10, 4);
    for (std::size_t i = 0; i < dev.size(); ++i) CHECK(dev[i].first == d2[i].first);
}
