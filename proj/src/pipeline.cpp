#include "gecsyn/pipeline.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>
#include <thread>

#include "gecsyn/corruptor.hpp"
#include "gecsyn/error.hpp"
#include "json.hpp"

namespace gecsyn {

using nlohmann::json;

std::string PipelineConfig::to_json() const {
    json j;
    j["input"] = input;
    j["lexicon"] = lexicon;
    j["irregular"] = irregular;
    j["model"] = model;
    j["inventory"] = inventory;
    j["output"] = output;
    j["seed"] = seed;
    j["top_k"] = top_k;
    j["threshold"] = threshold ? json(*threshold) : json(nullptr);
    j["growth_budget"] = growth_budget;
    j["dev_fraction"] = dev_fraction;
    j["workers"] = workers;
    j["chunk_size"] = chunk_size;
    j["backend"] = backend;
    j["external_command"] = external_command;
    j["train"] = {{"epochs", train.epochs},
                  {"learning_rate", train.learning_rate},
                  {"batch_size", train.batch_size},
                  {"seed", train.seed}};
    return j.dump(2);
}

PipelineConfig PipelineConfig::from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what(), e.byte);
    }
    if (!j.is_object()) throw ParseError("config must be a JSON object", 0);
    PipelineConfig c;
    try {
        for (const auto &[key, value] : j.items()) {
            if (key == "input") c.input = value.get<std::string>();
            else if (key == "lexicon") c.lexicon = value.get<std::string>();
            else if (key == "irregular") c.irregular = value.get<std::string>();
            else if (key == "model") c.model = value.get<std::string>();
            else if (key == "inventory") c.inventory = value.get<std::string>();
            else if (key == "output") c.output = value.get<std::string>();
            else if (key == "seed") c.seed = value.get<std::uint64_t>();
            else if (key == "top_k") c.top_k = value.get<std::size_t>();
            else if (key == "threshold") c.threshold = value.is_null() ? std::nullopt : std::optional(value.get<double>());
            else if (key == "growth_budget") c.growth_budget = value.get<double>();
            else if (key == "dev_fraction") c.dev_fraction = value.get<double>();
            else if (key == "workers") c.workers = value.get<std::size_t>();
            else if (key == "chunk_size") c.chunk_size = value.get<std::size_t>();
            else if (key == "backend") c.backend = value.get<std::string>();
            else if (key == "external_command") c.external_command = value.get<std::string>();
            else if (key == "train") {
                for (const auto &[k, v] : value.items()) {
                    if (k == "epochs") c.train.epochs = v.get<std::size_t>();
                    else if (k == "learning_rate") c.train.learning_rate = v.get<double>();
                    else if (k == "batch_size") c.train.batch_size = v.get<std::size_t>();
                    else if (k == "seed") c.train.seed = v.get<std::uint64_t>();
                    else throw ParseError("unknown config key 'train." + k + "'", 0);
                }
            } else {
                throw ParseError("unknown config key '" + key + "'", 0);
            }
        }
    } catch (const json::exception &e) {
        throw ParseError(std::string("bad config value: ") + e.what(), 0);
    }
    if (c.backend != "reference" && c.backend != "external") throw ParseError("backend must be 'reference' or 'external'", 0);
    if (c.top_k == 0) throw ParseError("top_k must be at least 1", 0);
    if (c.workers == 0) throw ParseError("workers must be at least 1", 0);
    if (c.chunk_size == 0) throw ParseError("chunk_size must be at least 1", 0);
    if (!(c.growth_budget > 0.0 && c.growth_budget <= 1.0)) throw ParseError("growth_budget must be in (0, 1]", 0);
    if (!(c.dev_fraction >= 0.0 && c.dev_fraction < 1.0)) throw ParseError("dev_fraction must be in [0, 1)", 0);
    if (c.threshold && !(*c.threshold > 0.0 && *c.threshold < 1.0)) throw ParseError("threshold must be in (0, 1)", 0);
    return c;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::shared_ptr<const Lexicon> load_lexicon(const PipelineConfig &config) {
    if (config.lexicon.empty()) return Lexicon::builtin();
    if (config.irregular.empty()) throw InputError("a custom lexicon needs an irregular-forms file as well");
    return std::make_shared<const Lexicon>(Lexicon::load(config.lexicon, config.irregular));
}

std::vector<ParallelPair> annotate_corpus(std::span<const RawPair> raw, const Tokenizer &tokenizer,
                                          const Classifier &classifier, BuildReport *report) {
    BuildReport rep;
    std::vector<ParallelPair> out;
    for (const auto &r : raw) {
        ++rep.pairs;
        const auto src = tokenizer.split(r.incorrect);
        const auto tgt = tokenizer.split(r.correct);
        if (src.empty() || tgt.empty()) {
            ++rep.skipped;
            continue;
        }
        ParallelPair pair{tokenizer.annotate_tokens(src), tokenizer.annotate_tokens(tgt), std::nullopt};
        out.push_back(classifier.annotate_pair(std::move(pair)));
    }
    if (report) *report = rep;
    return out;
}

std::vector<RawPair> read_raw_pairs(std::istream &in, bool json_lines) {
    if (!json_lines) return read_parallel_tsv(in);
    std::vector<RawPair> out;
    for (auto &r : read_json_lines(in)) out.push_back({std::move(r.src), std::move(r.tgt)});
    return out;
}

void write_dataset(std::ostream &out, const TaggedDataset &data) {
    for (const auto &[sentence, tags] : data.items()) {
        json j;
        j["text"] = sentence.text();
        j["tags"] = tags.names();
        out << j.dump() << '\n';
    }
}

TaggedDataset read_dataset(std::istream &in, const Tokenizer &tokenizer) {
    TaggedDataset data;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const json j = json::parse(line);
            const auto names = j.at("tags").get<std::vector<std::string>>();
            data.add(tokenizer.tokenize(j.at("text").get<std::string>()), tagset_from_names(names));
        } catch (const json::exception &e) {
            throw ParseError(std::string("bad dataset line: ") + e.what(), lineno, true);
        } catch (const Error &e) {
            throw ParseError(std::string("bad dataset line: ") + e.what(), lineno, true);
        }
    }
    return data;
}

TaggedDataset build_training_data(std::span<const ParallelPair> annotated, BuildReport *report) {
    TaggedDataset data;
    std::size_t noop = 0;
    for (const auto &pair : annotated) {
        if (!pair.edits || pair.edits->empty()) {
            ++noop;
            continue;
        }
        data.add(pair.target, tagset_from_edits(*pair.edits));
    }
    if (report) {
        report->noop = noop;
        report->items = data.size();
    }
    return data;
}

PairRecord GenerationRecord::to_record() const {
    PairRecord r;
    r.src = corrupted.text();
    r.tgt = source.text();
    r.tags = requested.names();
    r.realized = realized.names();
    std::vector<EditRecord> er;
    for (const auto &e : edits) er.push_back(gecsyn::to_record(e));
    r.edits = std::move(er);
    r.prefix = prefix;
    return r;
}

GenerationSummary generate(std::istream &input, const Tokenizer &tokenizer, const TaggerModel &model,
                           const CorruptionBackend &backend, const GenerateOptions &options,
                           const std::function<void(const GenerationRecord &)> &sink) {
    if (options.workers == 0) throw InputError("workers must be at least 1");
    if (options.chunk_size == 0) throw InputError("chunk_size must be at least 1");
    const double threshold = options.threshold.value_or(model.threshold());
    if (!(threshold > 0.0 && threshold < 1.0)) throw InputError("threshold must be strictly between 0 and 1");

    GenerationSummary summary;
    auto process = [&](std::size_t index, const std::string &line) {
        GenerationRecord rec;
        rec.index = index;
        rec.source = tokenizer.tokenize(line);
        rec.requested = TaggerModel::predict_scores(model.scores(rec.source), threshold);
        rec.prefix = encode_prefix(rec.requested, rec.source, model.inventory());
        auto result = backend.corrupt(rec.source, rec.requested, options.seed ^ static_cast<std::uint64_t>(index));
        rec.corrupted = std::move(result.output);
        rec.realized = result.realized;
        rec.edits = std::move(result.applied_edits);
        return rec;
    };

    std::vector<std::string> lines;
    std::size_t next_index = 0;
    bool done = false;
    while (!done) {
        lines.clear();
        std::string line;
        while (lines.size() < options.chunk_size && std::getline(input, line)) lines.push_back(line);
        done = lines.size() < options.chunk_size;
        if (lines.empty()) break;

        std::vector<std::optional<GenerationRecord>> results(lines.size());
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            for (std::size_t i = cursor++; i < lines.size(); i = cursor++) {
                try {
                    results[i] = process(next_index + i, lines[i]);
                } catch (const Error &) {
                    results[i].reset();
                }
            }
        };
        const std::size_t n_threads = std::min(options.workers, lines.size());
        if (n_threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> threads;
            for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
            for (auto &t : threads) t.join();
        }

        for (auto &r : results) {
            ++summary.input;
            if (!r) {
                ++summary.skipped;
                continue;
            }
            ++summary.emitted;
            if (r->corrupted == r->source) ++summary.noop_output;
            if (!r->requested.empty()) {
                ++summary.requested_nonempty;
                if (!r->realized.empty()) ++summary.realized_nonempty;
            }
            for (ErrorTag t : r->requested.tags()) ++summary.requested_counts[tag_index(t)];
            for (ErrorTag t : r->realized.tags()) ++summary.realized_counts[tag_index(t)];
            sink(*r);
        }
        next_index += lines.size();
    }

    if (summary.input > 0 &&
        static_cast<double>(summary.skipped) > options.max_failure_rate * static_cast<double>(summary.input)) {
        throw BackendError(std::to_string(summary.skipped) + " of " + std::to_string(summary.input) +
                           " sentences failed");
    }
    return summary;
}

namespace {

json counts_json(const std::array<std::size_t, kNumTags> &counts) {
    json j = json::object();
    for (std::size_t t = 0; t < kNumTags; ++t) j[std::string(tag_name(tag_at(t)))] = counts[t];
    return j;
}

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

} // namespace

StatsReport label_stats(const std::array<std::size_t, kNumTags> &counts, std::size_t items, std::size_t tagged_items) {
    StatsReport r;
    r.items = items;
    r.tagged_items = tagged_items;
    r.imbalance = imbalance(counts);
    return r;
}

StatsReport dataset_stats(const TaggedDataset &data) {
    if (data.empty()) throw InputError("stats needs a non-empty dataset");
    std::size_t tagged = 0;
    for (const auto &item : data.items()) tagged += item.second.empty() ? 0 : 1;
    return label_stats(data.label_counts(), data.size(), tagged);
}

std::string StatsReport::to_json() const {
    std::size_t total = 0;
    for (auto c : imbalance.counts) total += c;
    json tags = json::array();
    for (std::size_t t = 0; t < kNumTags; ++t) {
        json row;
        row["tag"] = tag_name(tag_at(t));
        row["count"] = imbalance.counts[t];
        row["fraction"] = total ? static_cast<double>(imbalance.counts[t]) / static_cast<double>(total) : 0.0;
        row["irlbl"] = imbalance.irlbl[t] ? json(*imbalance.irlbl[t]) : json(nullptr);
        tags.push_back(std::move(row));
    }
    json j;
    j["items"] = items;
    j["tagged_items"] = tagged_items;
    j["label_occurrences"] = total;
    j["mean_ir"] = imbalance.mean_ir;
    j["tags"] = std::move(tags);
    return j.dump(2);
}

std::string StatsReport::to_table() const {
    std::size_t total = 0;
    for (auto c : imbalance.counts) total += c;
    std::ostringstream os;
    os << std::left << std::setw(12) << "tag" << std::right << std::setw(10) << "count" << std::setw(10) << "fraction"
       << std::setw(10) << "IRLbl" << '\n';
    for (std::size_t t = 0; t < kNumTags; ++t) {
        const double frac = total ? static_cast<double>(imbalance.counts[t]) / static_cast<double>(total) : 0.0;
        os << std::left << std::setw(12) << tag_name(tag_at(t)) << std::right << std::setw(10) << imbalance.counts[t]
           << std::setw(10) << fixed(frac, 4) << std::setw(10)
           << (imbalance.irlbl[t] ? fixed(*imbalance.irlbl[t], 2) : std::string("-")) << '\n';
    }
    os << "items " << items << ", tagged " << tagged_items << ", MeanIR " << fixed(imbalance.mean_ir, 4) << '\n';
    return os.str();
}

double GenerationStats::realized_rate() const {
    return requested_nonempty ? static_cast<double>(realized_nonempty) / static_cast<double>(requested_nonempty) : 0.0;
}

GenerationStats generation_stats(std::span<const PairRecord> records, const Tokenizer &tokenizer,
                                 const Classifier *classifier) {
    if (records.empty()) throw InputError("stats needs at least one record");
    GenerationStats s;
    if (classifier) s.verified_agreement = 0;
    for (const auto &r : records) {
        ++s.records;
        const TagSet requested = tagset_from_names(r.tags);
        const TagSet realized = r.realized ? tagset_from_names(*r.realized) : TagSet{};
        if (r.src == r.tgt) ++s.noop_output;
        if (!requested.empty()) {
            ++s.requested_nonempty;
            if (!realized.empty()) ++s.realized_nonempty;
        }
        for (ErrorTag t : requested.tags()) ++s.requested[tag_index(t)];
        for (ErrorTag t : realized.tags()) ++s.realized[tag_index(t)];
        if (classifier) {
            TagSet found;
            const auto src = tokenizer.split(r.src);
            const auto tgt = tokenizer.split(r.tgt);
            if (!src.empty() && !tgt.empty() && src != tgt) {
                found = tagset_from_edits(
                    classifier->edits(tokenizer.annotate_tokens(src), tokenizer.annotate_tokens(tgt)));
            }
            if (realized.is_subset_of(found)) ++*s.verified_agreement;
        }
    }
    return s;
}

std::string GenerationStats::to_json() const {
    json j;
    j["records"] = records;
    j["requested_nonempty"] = requested_nonempty;
    j["realized_nonempty"] = realized_nonempty;
    j["realized_rate"] = realized_rate();
    j["noop_output"] = noop_output;
    j["requested"] = counts_json(requested);
    j["realized"] = counts_json(realized);
    if (verified_agreement) {
        j["verified_agreement"] = *verified_agreement;
        j["verified_agreement_rate"] = static_cast<double>(*verified_agreement) / static_cast<double>(records);
    }
    return j.dump(2);
}

std::string GenerationStats::to_table() const {
    std::ostringstream os;
    os << std::left << std::setw(12) << "tag" << std::right << std::setw(11) << "requested" << std::setw(10)
       << "realized" << std::setw(8) << "rate" << '\n';
    for (std::size_t t = 0; t < kNumTags; ++t) {
        const double rate = requested[t] ? static_cast<double>(realized[t]) / static_cast<double>(requested[t]) : 0.0;
        os << std::left << std::setw(12) << tag_name(tag_at(t)) << std::right << std::setw(11) << requested[t]
           << std::setw(10) << realized[t] << std::setw(8) << (requested[t] ? fixed(rate, 3) : std::string("-"))
           << '\n';
    }
    os << "records " << records << ", with requested tags " << requested_nonempty << ", realized "
       << realized_nonempty << " (" << fixed(100.0 * realized_rate(), 2) << "%), unchanged " << noop_output << '\n';
    if (verified_agreement) {
        os << "re-annotation covers realized tags in " << *verified_agreement << " of " << records << " records\n";
    }
    return os.str();
}

} // namespace gecsyn
