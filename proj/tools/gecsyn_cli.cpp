// gecsyn command-line tool.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gecsyn/backend.hpp"
#include "gecsyn/classifier.hpp"
#include "gecsyn/corruptor.hpp"
#include "gecsyn/error.hpp"
#include "gecsyn/io.hpp"
#include "gecsyn/metrics.hpp"
#include "gecsyn/pipeline.hpp"
#include "gecsyn/tagger.hpp"
#include "json.hpp"

using namespace gecsyn;
using nlohmann::json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBackend = 3;

struct Common {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::string output;
};

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool is_json_lines(const std::string &path) { return ends_with(path, ".jsonl") || ends_with(path, ".json"); }

std::ifstream open_in(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

// Writes to --output when given, otherwise stdout.
class Output {
  public:
    explicit Output(const std::string &path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw InputError("cannot write " + path);
        }
    }
    std::ostream &stream() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }

  private:
    std::ofstream file_;
};

std::vector<Sentence> read_sentences(const std::string &path, const Tokenizer &tokenizer) {
    auto in = open_in(path);
    std::vector<Sentence> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        try {
            out.push_back(tokenizer.tokenize(line));
        } catch (const EmptyInputError &) {
            throw ParseError(path + ": empty sentence", lineno, true);
        }
    }
    return out;
}

std::string score_json(const Score &s) {
    json j;
    j["precision"] = std::round(s.precision * 100.0) / 100.0;
    j["recall"] = std::round(s.recall * 100.0) / 100.0;
    j["f05"] = std::round(s.f05 * 100.0) / 100.0;
    return j.dump();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Tag-conditioned synthesis of grammatical error correction data"};
    app.require_subcommand(1);
    Common common;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", common.config, "JSON config file");
        sub->add_option("--seed", common.seed, "Random seed");
        sub->add_option("--workers", common.workers, "Worker threads");
        sub->add_option("--output,-o", common.output, "Output file (default: stdout)");
    };

    std::string input, model_path, inventory_path, dev_path, tags_arg, prefix_arg, text_arg;
    std::string sources_path, system_path, references_path, format = "table";
    std::optional<double> budget, threshold, dev_fraction, lr;
    std::optional<std::size_t> top_k, epochs, batch;
    std::string backend_command;
    bool verify = false;

    auto *build = app.add_subcommand("build-data", "Annotate a parallel corpus into a tagged dataset");
    build->add_option("--input,-i", input, "Parallel TSV or JSON-lines pairs");
    add_common(build);

    auto *over = app.add_subcommand("oversample", "Multi-label random oversampling of a dataset");
    over->add_option("--input,-i", input, "Dataset (JSON lines)");
    over->add_option("--budget", budget, "Growth budget in (0, 1]");
    add_common(over);

    auto *train_cmd = app.add_subcommand("train-tagger", "Train the error tagger and tune its threshold");
    train_cmd->add_option("--input,-i", input, "Dataset (JSON lines)");
    train_cmd->add_option("--dev-fraction", dev_fraction, "Held-out fraction for threshold tuning");
    train_cmd->add_option("--epochs", epochs);
    train_cmd->add_option("--learning-rate", lr);
    train_cmd->add_option("--batch-size", batch);
    add_common(train_cmd);

    auto *tune = app.add_subcommand("tune-threshold", "Re-tune a model's threshold on a dev set");
    tune->add_option("--model,-m", model_path)->required();
    tune->add_option("--input,-i", input, "Dev dataset (JSON lines)")->required();
    add_common(tune);

    auto *mine = app.add_subcommand("mine-inventory", "Mine corruption patterns from a parallel corpus");
    mine->add_option("--input,-i", input, "Parallel TSV or JSON-lines pairs");
    add_common(mine);

    auto *gen = app.add_subcommand("generate", "Corrupt correct sentences into synthetic pairs");
    gen->add_option("--input,-i", input, "Correct sentences, one per line");
    gen->add_option("--model,-m", model_path);
    gen->add_option("--inventory", inventory_path);
    gen->add_option("--top-k", top_k);
    gen->add_option("--threshold", threshold);
    gen->add_option("--backend-command", backend_command, "Use an external corruption process");
    add_common(gen);

    auto *one = app.add_subcommand("corrupt-one", "Corrupt one sentence");
    one->add_option("--inventory", inventory_path);
    one->add_option("--tags", tags_arg, "Comma-separated tags");
    one->add_option("--prefix", prefix_arg, "A full 'grammar_error: (...) sentence' line");
    one->add_option("text", text_arg, "Sentence (with --tags)");
    one->add_option("--top-k", top_k);
    add_common(one);

    auto *tag_one = app.add_subcommand("tag-one", "Predict error tags for one sentence");
    tag_one->add_option("--model,-m", model_path);
    tag_one->add_option("text", text_arg)->required();
    tag_one->add_option("--threshold", threshold);
    add_common(tag_one);

    auto *score_tagger = app.add_subcommand("score-tagger", "Score a model on a dataset");
    score_tagger->add_option("--model,-m", model_path);
    score_tagger->add_option("--input,-i", input, "Dataset (JSON lines)")->required();
    score_tagger->add_option("--threshold", threshold);
    add_common(score_tagger);

    auto *score_gec = app.add_subcommand("score-gec", "Edit-level P/R/F0.5 of corrected output");
    score_gec->add_option("--sources", sources_path)->required();
    score_gec->add_option("--system", system_path)->required();
    score_gec->add_option("--references", references_path)->required();
    add_common(score_gec);

    auto *bleu_cmd = app.add_subcommand("bleu", "Corpus BLEU-4");
    bleu_cmd->add_option("--system", system_path)->required();
    bleu_cmd->add_option("--references", references_path)->required();
    add_common(bleu_cmd);

    auto *stats_cmd = app.add_subcommand("stats", "Tag distribution of a dataset or generated records");
    stats_cmd->add_option("--input,-i", input, "Dataset or generation records (JSON lines)");
    stats_cmd->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));
    stats_cmd->add_flag("--verify", verify, "Re-annotate generated pairs to audit realized tags");
    add_common(stats_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        PipelineConfig cfg = common.config.empty() ? PipelineConfig{} : PipelineConfig::load(common.config);
        if (common.seed) cfg.seed = *common.seed;
        if (common.workers) cfg.workers = *common.workers;
        if (!common.output.empty()) cfg.output = common.output;
        if (!input.empty()) cfg.input = input;
        if (!model_path.empty()) cfg.model = model_path;
        if (!inventory_path.empty()) cfg.inventory = inventory_path;
        if (budget) cfg.growth_budget = *budget;
        if (threshold) cfg.threshold = *threshold;
        if (dev_fraction) cfg.dev_fraction = *dev_fraction;
        if (top_k) cfg.top_k = *top_k;
        if (epochs) cfg.train.epochs = *epochs;
        if (lr) cfg.train.learning_rate = *lr;
        if (batch) cfg.train.batch_size = *batch;
        if (common.seed) cfg.train.seed = *common.seed;
        if (!backend_command.empty()) {
            cfg.backend = "external";
            cfg.external_command = backend_command;
        }
        auto need = [](const std::string &value, const char *what) {
            if (value.empty()) throw CLI::RequiredError(what);
        };

        const auto lexicon = load_lexicon(cfg);
        const Tokenizer tokenizer(lexicon);
        const Classifier classifier(lexicon);

        if (*build) {
            need(cfg.input, "--input");
            auto in = open_in(cfg.input);
            BuildReport report;
            const auto annotated = annotate_corpus(read_raw_pairs(in, is_json_lines(cfg.input)), tokenizer,
                                                   classifier, &report);
            const auto data = build_training_data(annotated, &report);
            Output out(cfg.output);
            write_dataset(out.stream(), data);
            std::cerr << "pairs " << report.pairs << ", skipped " << report.skipped << ", noop " << report.noop
                      << ", items " << report.items << '\n';
            if (data.empty()) std::cerr << "warning: no pair carries an edit; the dataset is empty\n";
        } else if (*over) {
            need(cfg.input, "--input");
            auto in = open_in(cfg.input);
            const auto data = read_dataset(in, tokenizer);
            const auto before = imbalance(data);
            const auto grown = oversample(data, cfg.growth_budget, cfg.seed);
            const auto after = imbalance(grown);
            Output out(cfg.output);
            write_dataset(out.stream(), grown);
            std::cerr << "items " << data.size() << " -> " << grown.size() << ", MeanIR " << before.mean_ir << " -> "
                      << after.mean_ir << '\n';
        } else if (*train_cmd) {
            need(cfg.input, "--input");
            auto in = open_in(cfg.input);
            const auto data = read_dataset(in, tokenizer);
            auto [train_set, dev_set] = split_dev(data, cfg.dev_fraction, cfg.seed);
            TrainingReport report;
            auto model = train(train_set, cfg.train, 18, &report);
            for (std::size_t e = 0; e < report.epoch_loss.size(); ++e) {
                std::cerr << "epoch " << e + 1 << " loss " << report.epoch_loss[e] << '\n';
            }
            if (!dev_set.empty()) {
                model.set_threshold(tune_threshold(model, dev_set));
                std::vector<TagSet> gold, pred;
                for (const auto &[s, t] : dev_set.items()) {
                    gold.push_back(t);
                    pred.push_back(model.predict(s));
                }
                const auto r = multilabel_score(gold, pred);
                std::cerr << "threshold " << model.threshold() << ", dev " << score_json(r.score) << '\n';
            }
            if (cfg.output.empty()) {
                std::cout << model.to_json() << '\n';
            } else {
                model.save(cfg.output);
            }
        } else if (*tune) {
            auto model = TaggerModel::load(cfg.model);
            auto in = open_in(cfg.input);
            const auto dev = read_dataset(in, tokenizer);
            model.set_threshold(tune_threshold(model, dev));
            std::cerr << "threshold " << model.threshold() << '\n';
            model.save(cfg.output.empty() ? cfg.model : cfg.output);
        } else if (*mine) {
            need(cfg.input, "--input");
            auto in = open_in(cfg.input);
            const auto annotated = annotate_corpus(read_raw_pairs(in, is_json_lines(cfg.input)), tokenizer, classifier);
            MiningReport report;
            const auto inventory = mine_inventory(annotated, classifier, &report);
            if (cfg.output.empty()) {
                std::cout << inventory.to_json() << '\n';
            } else {
                inventory.save(cfg.output);
            }
            std::cerr << "edits " << report.edits << ", kept " << report.kept << " (" << report.fallbacks
                      << " via a fallback pattern), dropped " << report.dropped << ", patterns "
                      << inventory.pattern_count() << '\n';
        } else if (*gen) {
            need(cfg.input, "--input");
            need(cfg.model, "--model");
            const auto model = TaggerModel::load(cfg.model);
            std::unique_ptr<CorruptionBackend> backend;
            if (cfg.backend == "external") {
                backend = std::make_unique<ExternalBackend>(cfg.external_command, lexicon, model.inventory());
            } else {
                need(cfg.inventory, "--inventory");
                backend = std::make_unique<InventoryBackend>(
                    std::make_shared<const EditInventory>(EditInventory::load(cfg.inventory)), cfg.top_k, lexicon);
            }
            GenerateOptions opts;
            opts.seed = cfg.seed;
            opts.workers = cfg.workers;
            opts.chunk_size = cfg.chunk_size;
            opts.threshold = cfg.threshold;
            auto in = open_in(cfg.input);
            Output out(cfg.output);
            auto &os = out.stream();
            const auto summary = generate(in, tokenizer, model, *backend, opts, [&](const GenerationRecord &r) {
                os << to_json_line(r.to_record()) << '\n';
            });
            std::cerr << "input " << summary.input << ", emitted " << summary.emitted << ", skipped "
                      << summary.skipped << ", unchanged " << summary.noop_output << ", realized "
                      << summary.realized_nonempty << " of " << summary.requested_nonempty << '\n';
        } else if (*one) {
            need(cfg.inventory, "--inventory");
            const auto inventory = std::make_shared<const EditInventory>(EditInventory::load(cfg.inventory));
            TagSet tags;
            std::string text = text_arg;
            if (!prefix_arg.empty()) {
                auto decoded = decode_prefix(prefix_arg);
                tags = decoded.tags;
                text = decoded.text;
            } else {
                std::vector<std::string> names;
                std::stringstream ss(tags_arg);
                for (std::string item; std::getline(ss, item, ',');) {
                    if (!item.empty()) names.push_back(item);
                }
                tags = tagset_from_names(names);
            }
            const Corruptor corruptor(inventory, lexicon);
            const auto sentence = tokenizer.tokenize(text);
            const auto result = corruptor.corrupt(sentence, tags, cfg.top_k, cfg.seed);
            Output out(cfg.output);
            json j;
            j["prefix"] = encode_prefix(tags, sentence);
            j["output"] = result.output.text();
            j["realized"] = result.realized.names();
            j["verified"] = verify_realized(result, sentence, classifier).names();
            out.stream() << j.dump() << '\n';
        } else if (*tag_one) {
            need(cfg.model, "--model");
            const auto model = TaggerModel::load(cfg.model);
            const auto sentence = tokenizer.tokenize(text_arg);
            const auto tags = TaggerModel::predict_scores(model.scores(sentence), cfg.threshold.value_or(model.threshold()));
            Output out(cfg.output);
            json j;
            j["tags"] = tags.names();
            j["prefix"] = encode_prefix(tags, sentence, model.inventory());
            out.stream() << j.dump() << '\n';
        } else if (*score_tagger) {
            need(cfg.model, "--model");
            const auto model = TaggerModel::load(cfg.model);
            auto in = open_in(cfg.input);
            const auto data = read_dataset(in, tokenizer);
            const double t = cfg.threshold.value_or(model.threshold());
            std::vector<TagSet> gold, pred;
            for (const auto &[s, tags] : data.items()) {
                gold.push_back(tags);
                pred.push_back(TaggerModel::predict_scores(model.scores(s), t));
            }
            const auto r = multilabel_score(gold, pred);
            json j = json::parse(score_json(r.score));
            json per_tag = json::object();
            for (std::size_t i = 0; i < kNumTags; ++i) {
                per_tag[std::string(tag_name(tag_at(i)))] = json::parse(score_json(score_counts(r.per_tag[i])));
            }
            j["per_tag"] = std::move(per_tag);
            Output out(cfg.output);
            out.stream() << j.dump(2) << '\n';
        } else if (*score_gec) {
            const auto sources = read_sentences(sources_path, tokenizer);
            const auto system = read_sentences(system_path, tokenizer);
            const auto refs = read_sentences(references_path, tokenizer);
            const auto r = gec_score(classifier, system, sources, refs);
            Output out(cfg.output);
            out.stream() << score_json(r.score) << '\n';
        } else if (*bleu_cmd) {
            const auto system = read_sentences(system_path, tokenizer);
            const auto refs = read_sentences(references_path, tokenizer);
            json j;
            j["bleu"] = std::round(bleu(system, refs) * 100.0) / 100.0;
            Output out(cfg.output);
            out.stream() << j.dump() << '\n';
        } else if (*stats_cmd) {
            need(cfg.input, "--input");
            std::string first;
            {
                auto probe = open_in(cfg.input);
                while (std::getline(probe, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
                }
            }
            auto in = open_in(cfg.input);
            Output out(cfg.output);
            if (first.find("\"src\"") != std::string::npos) {
                const auto records = read_json_lines(in);
                const auto s = generation_stats(records, tokenizer, verify ? &classifier : nullptr);
                out.stream() << (format == "json" ? s.to_json() + "\n" : s.to_table());
            } else {
                const auto s = dataset_stats(read_dataset(in, tokenizer));
                out.stream() << (format == "json" ? s.to_json() + "\n" : s.to_table());
            }
        }
    } catch (const CLI::Error &e) {
        std::cerr << "error: missing " << e.what() << '\n';
        return kExitUsage;
    } catch (const BackendError &e) {
        std::cerr << "backend error: " << e.what() << '\n';
        return kExitBackend;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitData;
    }
    return 0;
}
