// Acceptance checks: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "gecsyn/backend.hpp"
#include "gecsyn/classifier.hpp"
#include "gecsyn/corruptor.hpp"
#include "gecsyn/metrics.hpp"
#include "gecsyn/pipeline.hpp"
#include "gecsyn/rng.hpp"
#include "gecsyn/tagger.hpp"
#include "support.hpp"

using namespace gecsyn;
using testing::sent;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            notes.push_back("failed: " + what);
        }
    }
    void note(const std::string &s) { notes.push_back(s); }
};

std::string fmt(const char *f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

const Classifier &classifier() {
    static const Classifier c;
    return c;
}

std::shared_ptr<const EditInventory> bundled_inventory() {
    static const auto inv =
        std::make_shared<const EditInventory>(EditInventory::load(testing::data_path("inventory.json")));
    return inv;
}

Outcome fscore_arithmetic() {
    Outcome o;
    struct Cell {
        double p, r, f;
    };
    const Cell cells[] = {{39.49, 42.27, 40.02}, {50.25, 14.72, 33.89}, {46.01, 25.66, 39.71},
                          {46.15, 25.84, 39.88}, {40.72, 14.93, 30.29}};
    int ok = 0;
    for (const auto &c : cells) {
        const double f = f_beta(c.p, c.r, 0.5);
        const bool good = std::abs(f - c.f) <= 0.01;
        ok += good;
        o.check(good, fmt("%.2f", c.p) + "/" + fmt("%.2f", c.r) + " -> " + fmt("%.4f", f) + ", expected " +
                          fmt("%.2f", c.f) + " +/- 0.01");
    }
    o.note(std::to_string(ok) + "/5 cells within tolerance");
    return o;
}

Outcome prefix_codec() {
    Outcome o;
    const std::string row1 = "grammar_error: (aaaaaaaaabaabbaaaaaaaaaa) And he took in my favorite subjects like soccer .";
    const std::string row2 = "grammar_error: (aaaaaaaaaababaabaaaaaaaa) His Kanji 's ability is better than mine .";
    const auto d1 = decode_prefix(row1), d2 = decode_prefix(row2);
    o.check(d1.tags == TagSet{ErrorTag::NounNum, ErrorTag::Other, ErrorTag::Part}, "first row tags");
    o.check(d2.tags == TagSet{ErrorTag::NounPoss, ErrorTag::Other, ErrorTag::Pron}, "second row tags");
    o.check(encode_prefix(d1.tags, sent(d1.text)) == row1, "first row re-encoding");
    o.check(encode_prefix(d2.tags, sent(d2.text)) == row2, "second row re-encoding");
    Rng rng(1000);
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
        const auto tags = TagSet::from_bits(static_cast<std::uint32_t>(rng.uniform(1u << kNumTags)));
        const std::string text = "s " + std::to_string(i);
        const auto d = decode_prefix(encode_prefix(tags, text));
        ok += d.tags == tags && d.text == text;
    }
    o.check(ok == 1000, "random round-trips");
    o.note(std::to_string(ok) + "/1000 random round-trips");
    return o;
}

Sentence random_sentence(Rng &rng, const std::vector<std::string> &vocab, std::size_t max_len) {
    std::vector<std::string> toks(1 + rng.uniform(max_len));
    for (auto &t : toks) t = vocab[rng.uniform(vocab.size())];
    return testing::tokenizer().annotate_tokens(toks);
}

Outcome alignment_oracle() {
    Outcome o;
    const std::vector<std::string> vocab{"the", "cat", "cats", "sat", "."};
    Rng rng(3);
    int agree = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto s = random_sentence(rng, vocab, 6), t = random_sentence(rng, vocab, 6);
        agree += std::abs(align(s, t).cost - testing::BruteForceAligner(s, t).min_cost()) < 1e-9;
    }
    o.check(agree == 10000, "dynamic program vs brute force");
    const std::vector<std::string> wide{"he", "has", "have", "a", "dog", "dogs", "the", ",", ".", "runs"};
    int rebuilt = 0;
    for (int i = 0; i < 500; ++i) {
        const auto s = random_sentence(rng, wide, 10), t = random_sentence(rng, wide, 10);
        rebuilt += apply_edits(s, extract_edits(align(s, t).ops, s, t)) == t.surfaces();
    }
    o.check(rebuilt == 500, "apply-edits reconstruction");
    o.note(std::to_string(agree) + "/10000 optimal, " + std::to_string(rebuilt) + "/500 reconstructed");
    return o;
}

std::vector<ErrorTag> tags_of(const std::string &incorrect, const std::string &correct) {
    std::vector<ErrorTag> out;
    for (const auto &e : classifier().edits(sent(incorrect), sent(correct))) out.push_back(*e.tag);
    return out;
}

Outcome classifier_fixtures() {
    Outcome o;
    using V = std::vector<ErrorTag>;
    o.check(tags_of("He have bought many shoes .", "He has bought many shoes .") == V{ErrorTag::VerbSva}, "have/has");
    o.check(tags_of("He has bought many shoe .", "He has bought many shoes .") == V{ErrorTag::NounNum}, "shoe/shoes");
    o.check(tags_of("And he took in my favorite subject like soccer .",
                    "And he took in my favorite subjects like soccer .") == V{ErrorTag::NounNum},
            "subject/subjects");
    o.check(tags_of("His Kanji ability", "His Kanji 's ability") == V{ErrorTag::NounPoss}, "'s insertion");
    o.check(tags_of("than me .", "than mine .") == V{ErrorTag::Pron}, "mine/me");

    std::size_t total = 0, right = 0;
    for (const auto &line : testing::read_lines(testing::test_data_path("classifier_edits.tsv"))) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string inc, cor, tag;
        std::getline(ss, inc, '\t');
        std::getline(ss, cor, '\t');
        std::getline(ss, tag, '\t');
        const auto tags = tags_of(inc, cor);
        ++total;
        right += tags.size() == 1 && tag_name(tags[0]) == tag;
    }
    const double accuracy = total ? double(right) / double(total) : 0.0;
    o.check(total >= 50, "at least 50 hand-labeled edits");
    o.check(accuracy >= 0.90, "fixture accuracy >= 90%");

    // Round-trip coherence: each pattern at its first site in the clean fixture
    // sentences must re-annotate as exactly one edit of its own tag.
    const Corruptor corruptor(bundled_inventory());
    std::vector<Sentence> clean;
    for (const auto &line : testing::read_lines(testing::data_path("fixtures/correct_1k.txt"))) clean.push_back(sent(line));
    std::size_t patterns = 0, sited = 0, coherent = 0;
    for (std::size_t t = 0; t < kNumTags; ++t) {
        const auto tag = tag_at(t);
        const auto table = bundled_inventory()->patterns(tag);
        for (const auto &wp : table) {
            ++patterns;
            bool found = false;
            for (const auto &s : clean) {
                for (std::size_t start = 0; start <= s.size() && !found; ++start) {
                    const auto m = corruptor.match(s, wp.pattern, start);
                    if (!m) continue;
                    Candidate c = *m;
                    c.tag = tag;
                    const auto corrupted = corruptor.apply(s, c);
                    const auto edits = classifier().edits(corrupted, s);
                    coherent += edits.size() == 1 && edits[0].tag == tag;
                    found = true;
                }
                if (found) break;
            }
            sited += found;
        }
    }
    const double coherence = sited ? double(coherent) / double(sited) : 0.0;
    o.check(coherence >= 0.90, "round-trip coherence >= 90%");
    o.note("fixture accuracy " + std::to_string(right) + "/" + std::to_string(total) + " (" +
           fmt("%.1f", 100 * accuracy) + "%), coherence " + std::to_string(coherent) + "/" + std::to_string(sited) +
           " (" + fmt("%.1f", 100 * coherence) + "%) of patterns with a site; " + std::to_string(patterns - sited) +
           " of " + std::to_string(patterns) + " patterns had no site");
    return o;
}

TaggedDataset counts_fixture(std::size_t a, std::size_t b, std::size_t c) {
    TaggedDataset d;
    for (std::size_t i = 0; i < a; ++i) d.add(sent("a" + std::to_string(i)), TagSet{ErrorTag::Adj});
    for (std::size_t i = 0; i < b; ++i) d.add(sent("b" + std::to_string(i)), TagSet{ErrorTag::Adv});
    for (std::size_t i = 0; i < c; ++i) d.add(sent("c" + std::to_string(i)), TagSet{ErrorTag::Conj});
    return d;
}

Outcome oversampling() {
    Outcome o;
    const auto d = counts_fixture(100, 50, 10);
    const auto rep = imbalance(d);
    o.check(rep.irlbl[tag_index(ErrorTag::Adj)] == 1.0 && rep.irlbl[tag_index(ErrorTag::Adv)] == 2.0 &&
                rep.irlbl[tag_index(ErrorTag::Conj)] == 10.0,
            "IRLbl = (1, 2, 10)");
    o.check(std::abs(rep.mean_ir - 13.0 / 3.0) < 1e-12, "MeanIR = 13/3");

    // MeanIR never increases, on random multi-label fixtures.
    Rng rng(5);
    int monotone = 0;
    for (int round = 0; round < 50; ++round) {
        TaggedDataset r;
        const std::size_t n = 50 + rng.uniform(200);
        for (std::size_t i = 0; i < n; ++i) {
            TagSet tags;
            tags.insert(tag_at(rng.uniform(3)));
            if (rng.uniform(4) == 0) tags.insert(tag_at(3 + rng.uniform(5)));
            if (rng.uniform(10) == 0) tags.insert(tag_at(8 + rng.uniform(3)));
            r.add(sent("x" + std::to_string(i)), tags);
        }
        const auto out = oversample(r, 0.10, round);
        monotone += imbalance(out).mean_ir <= imbalance(r).mean_ir + 1e-12 &&
                    out.size() <= r.size() + static_cast<std::size_t>(0.10 * double(r.size()));
    }
    o.check(monotone == 50, "MeanIR non-increasing within budget");

    const auto big = counts_fixture(590, 0, 10);
    const auto grown = oversample(big, 0.10, 1);
    o.check(grown.size() <= 660, "600 items grow to at most 660");
    o.note("MeanIR " + fmt("%.4f", rep.mean_ir) + "; 600 -> " + std::to_string(grown.size()) + "; " +
           std::to_string(monotone) + "/50 random fixtures monotone");
    return o;
}

TaggedDataset separable(std::size_t n, std::uint64_t seed) {
    const std::vector<std::string> nouns{"dog", "cat", "book", "car", "house", "friend", "teacher", "apple",
                                         "bird", "song", "chair", "table", "phone", "city", "student"};
    const std::vector<std::string> verbs{"see", "like", "want", "find", "need"};
    Rng rng(seed);
    TaggedDataset d;
    for (std::size_t i = 0; i < n; ++i) {
        const bool plural = rng.uniform(2) == 1;
        const auto &noun = nouns[rng.uniform(nouns.size())];
        const std::string obj = plural ? regular_plural(noun) : "the " + noun;
        d.add(sent("We " + verbs[rng.uniform(verbs.size())] + " " + obj + " ."),
              plural ? TagSet{ErrorTag::NounNum} : TagSet{});
    }
    return d;
}

Outcome tagger_learnability() {
    Outcome o;
    TrainConfig cfg;
    cfg.epochs = 40;
    auto model = train(separable(400, 1), cfg, 16);
    model.set_threshold(tune_threshold(model, separable(100, 2)));
    const auto test = separable(300, 3);
    std::vector<TagSet> gold, pred;
    for (const auto &[s, t] : test.items()) {
        gold.push_back(t);
        pred.push_back(model.predict(s));
    }
    const double f = multilabel_score(gold, pred).score.f05 / 100.0;
    o.check(f >= 0.95, "held-out F0.5 >= 0.95");

    Rng rng(6);
    int argmax_ok = 0;
    for (int round = 0; round < 100; ++round) {
        std::vector<std::array<double, kNumTags>> scores(20);
        std::vector<TagSet> g(20);
        for (std::size_t i = 0; i < 20; ++i) {
            for (std::size_t t = 0; t < 4; ++t) {
                scores[i][t] = rng.unit();
                if (rng.unit() < scores[i][t]) g[i].insert(tag_at(t));
            }
            if (i == 0) g[i].insert(ErrorTag::Adj);
        }
        double best_f = -1, best_t = 0;
        for (double t : threshold_grid()) {
            std::vector<TagSet> p;
            for (const auto &s : scores) p.push_back(TaggerModel::predict_scores(s, t));
            const double ft = testing::micro_prf(g, p)[2];
            if (ft > best_f + 1e-12) {
                best_f = ft;
                best_t = t;
            }
        }
        argmax_ok += std::abs(tune_threshold(scores, g) - best_t) < 1e-9;
    }
    o.check(argmax_ok == 100, "grid search equals exhaustive argmax");

    int nested = 0;
    const auto grid = threshold_grid();
    for (int i = 0; i < 1000; ++i) {
        std::array<double, kNumTags> s;
        for (auto &v : s) v = rng.unit();
        bool ok = true;
        for (std::size_t k = 1; k < grid.size(); ++k) {
            ok = ok && TaggerModel::predict_scores(s, grid[k]).is_subset_of(TaggerModel::predict_scores(s, grid[k - 1]));
        }
        nested += ok;
    }
    o.check(nested == 1000, "prediction sets nest");
    o.note("F0.5 " + fmt("%.4f", f) + " at threshold " + fmt("%.2f", model.threshold()) + "; argmax " +
           std::to_string(argmax_ok) + "/100; nesting " + std::to_string(nested) + "/1000");
    return o;
}

Outcome end_to_end() {
    Outcome o;
    // Model as the CLI builds it: annotate, oversample, split, train, tune.
    const auto raw = testing::read_pairs(testing::data_path("fixtures/parallel.tsv"));
    const auto data = build_training_data(annotate_corpus(raw, testing::tokenizer(), classifier()));
    const auto [train_set, dev] = split_dev(oversample(data, 0.10, 0), 0.10, 0);
    auto model = train(train_set, TrainConfig{});
    model.set_threshold(tune_threshold(model, dev));

    const InventoryBackend backend(bundled_inventory());
    std::string text;
    for (const auto &line : testing::read_lines(testing::data_path("fixtures/correct_1k.txt"))) text += line + "\n";
    auto run = [&](std::size_t workers, GenerationSummary *summary) {
        GenerateOptions opts;
        opts.seed = 2024;
        opts.workers = workers;
        std::istringstream in(text);
        std::ostringstream out;
        const auto s = generate(in, testing::tokenizer(), model, backend, opts,
                                [&](const GenerationRecord &r) { out << to_json_line(r.to_record()) << '\n'; });
        if (summary) *summary = s;
        return out.str();
    };
    GenerationSummary summary;
    const auto first = run(1, &summary);
    o.check(run(1, nullptr) == first, "byte-identical rerun");
    o.check(run(4, nullptr) == first, "byte-identical with 4 workers");

    std::istringstream in(first);
    const auto records = read_json_lines(in);
    o.check(summary.input == 1000, "1000 input lines");
    o.check(records.size() + summary.skipped == summary.input, "records + skipped = input");
    const auto stats = generation_stats(records, testing::tokenizer(), &classifier());
    o.check(stats.realized_rate() >= 0.60, "realized rate >= 60%");
    o.note(std::to_string(records.size()) + " records, " + std::to_string(summary.skipped) + " skipped; realized " +
           std::to_string(stats.realized_nonempty) + "/" + std::to_string(stats.requested_nonempty) + " (" +
           fmt("%.1f", 100 * stats.realized_rate()) + "%); re-annotation agrees on " +
           std::to_string(stats.verified_agreement.value_or(0)) + "/" + std::to_string(stats.records));
    return o;
}

Outcome metrics_sanity() {
    Outcome o;
    const std::vector<TagSet> gold{TagSet{ErrorTag::Adj}, TagSet{ErrorTag::Adv, ErrorTag::Det}, TagSet{}};
    const auto same = multilabel_score(gold, gold).score;
    o.check(same.precision == 100 && same.recall == 100 && same.f05 == 100, "multilabel(gold, gold) = 100");

    auto ss = [](std::initializer_list<const char *> xs) {
        std::vector<Sentence> out;
        for (const char *x : xs) out.push_back(sent(x));
        return out;
    };
    const auto g = gec_score(classifier(), ss({"He has a dog .", "I likes tea .", "We went at the park ."}),
                             ss({"He have a dog .", "I like tea .", "We went at the park ."}),
                             ss({"He has a dog .", "I like tea .", "We went to the park ."}));
    o.check(g.counts == ConfusionCounts{1, 1, 1}, "gec fixture TP=FP=FN=1");
    o.check(std::abs(g.score.precision - 50) < 1e-9 && std::abs(g.score.recall - 50) < 1e-9 &&
                std::abs(g.score.f05 - 50) < 1e-9,
            "gec fixture (50, 50, 50)");

    const auto h = ss({"the cat sat on the mat .", "a dog barks loudly ."});
    o.check(std::abs(bleu(h, h) - 100) < 1e-9, "bleu(h, h) = 100");
    const std::vector<std::string> hyp{"the", "the", "the"}, ref{"the", "cat", "sat"};
    const auto st = ngram_stats(hyp, ref);
    o.check(st.matches[0] == 1 && st.totals[0] == 3 &&
                std::abs(testing::clipped_unigram_precision(hyp, ref) - 1.0 / 3.0) < 1e-12,
            "clipped unigram precision 1/3");
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char *name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"F-score arithmetic", fscore_arithmetic},
        {"prefix codec", prefix_codec},
        {"alignment oracle", alignment_oracle},
        {"classifier fixtures", classifier_fixtures},
        {"oversampling", oversampling},
        {"tagger learnability", tagger_learnability},
        {"end-to-end determinism", end_to_end},
        {"metrics sanity", metrics_sanity},
    };
    int failures = 0;
    int n = 0;
    for (const auto &c : criteria) {
        ++n;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.pass;
        std::printf("criterion %d %-24s %s  (%.2fs)", n, c.name, o.pass ? "PASS" : "FAIL", secs);
        for (const auto &note : o.notes) std::printf("; %s", note.c_str());
        std::printf("\n");
    }
    std::printf("%d of %d criteria passed\n", n - failures, n);
    return failures == 0 ? 0 : 1;
}
