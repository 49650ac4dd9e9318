#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "gecsyn/classifier.hpp"
#include "gecsyn/corruptor.hpp"
#include "gecsyn/error.hpp"
#include "gecsyn/metrics.hpp"
#include "gecsyn/tagger.hpp"
#include "gecsyn/tokenizer.hpp"

namespace py = pybind11;
using namespace gecsyn;

namespace {

const Tokenizer &tokenizer() {
    static const Tokenizer t;
    return t;
}

const Classifier &classifier() {
    static const Classifier c;
    return c;
}

Sentence tok(const std::string &text) { return tokenizer().tokenize(text); }

std::vector<Sentence> toks(const std::vector<std::string> &texts) {
    std::vector<Sentence> out;
    out.reserve(texts.size());
    for (const auto &t : texts) out.push_back(tok(t));
    return out;
}

TagSet tags_of(const std::vector<std::string> &names) { return tagset_from_names(names); }

std::vector<TagSet> tag_lists(const std::vector<std::vector<std::string>> &lists) {
    std::vector<TagSet> out;
    for (const auto &l : lists) out.push_back(tags_of(l));
    return out;
}

TaggedDataset dataset(const std::vector<std::string> &texts, const std::vector<std::vector<std::string>> &tags) {
    if (texts.size() != tags.size()) throw InputError("texts and tags differ in length");
    TaggedDataset d;
    for (std::size_t i = 0; i < texts.size(); ++i) d.add(tok(texts[i]), tags_of(tags[i]));
    return d;
}

py::dict edit_dict(const Edit &e) {
    py::dict d;
    d["start"] = e.start;
    d["end"] = e.end;
    d["replacement"] = join_surfaces(e.replacement);
    d["tag"] = e.tag ? py::cast(std::string(tag_name(*e.tag))) : py::none();
    return d;
}

py::dict score_dict(const Score &s, const ConfusionCounts &c) {
    py::dict d;
    d["precision"] = s.precision;
    d["recall"] = s.recall;
    d["f05"] = s.f05;
    d["tp"] = c.true_positive;
    d["fp"] = c.false_positive;
    d["fn"] = c.false_negative;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Grammatical error annotation, tagging and synthetic corruption";

    auto base = py::register_exception<Error>(m, "GecsynError");
    py::register_exception<EmptyInputError>(m, "EmptyInputError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<InputError>(m, "InputError", base.ptr());
    py::register_exception<TuningError>(m, "TuningError", base.ptr());
    py::register_exception<EmptyInventoryError>(m, "EmptyInventoryError", base.ptr());
    py::register_exception<BackendError>(m, "BackendError", base.ptr());

    m.def("tag_names", [] { return TagInventory::standard().names(); });

    m.def("tokenize", [](const std::string &text) {
        std::vector<py::tuple> out;
        const auto sentence = tok(text);
        for (const auto &t : sentence.tokens()) out.push_back(py::make_tuple(t.surface, t.lemma, std::string(pos_name(t.pos))));
        return out;
    }, py::arg("text"), "Tokens as (surface, lemma, pos) tuples.");

    m.def("annotate", [](const std::string &incorrect, const std::string &correct) {
        py::list out;
        for (const auto &e : classifier().edits(tok(incorrect), tok(correct))) out.append(edit_dict(e));
        return out;
    }, py::arg("incorrect"), py::arg("correct"), "Typed edits that turn `incorrect` into `correct`.");

    m.def("encode_prefix", [](const std::vector<std::string> &tags, const std::string &text) {
        return encode_prefix(tags_of(tags), text);
    }, py::arg("tags"), py::arg("text"));
    m.def("decode_prefix", [](const std::string &line) {
        const auto d = decode_prefix(line);
        return py::make_tuple(d.tags.names(), d.text);
    }, py::arg("line"));

    m.def("f_beta", &f_beta, py::arg("precision"), py::arg("recall"), py::arg("beta") = 0.5);
    m.def("bleu", [](const std::vector<std::string> &hyp, const std::vector<std::string> &ref) {
        return bleu(toks(hyp), toks(ref));
    }, py::arg("hypotheses"), py::arg("references"));
    m.def("gec_score", [](const std::vector<std::string> &system, const std::vector<std::string> &sources,
                          const std::vector<std::string> &refs) {
        const auto r = gec_score(classifier(), toks(system), toks(sources), toks(refs));
        return score_dict(r.score, r.counts);
    }, py::arg("system"), py::arg("sources"), py::arg("references"));
    m.def("multilabel_score", [](const std::vector<std::vector<std::string>> &gold,
                                 const std::vector<std::vector<std::string>> &pred) {
        const auto r = multilabel_score(tag_lists(gold), tag_lists(pred));
        return score_dict(r.score, r.counts);
    }, py::arg("gold"), py::arg("predicted"));

    m.def("imbalance", [](const std::vector<std::vector<std::string>> &tags) {
        TaggedDataset d;
        for (const auto &t : tags) d.add(Sentence{}, tags_of(t));
        const auto r = imbalance(d);
        py::dict irlbl;
        for (std::size_t i = 0; i < kNumTags; ++i) {
            if (r.irlbl[i]) irlbl[py::str(std::string(tag_name(tag_at(i))))] = *r.irlbl[i];
        }
        return py::make_tuple(irlbl, r.mean_ir);
    }, py::arg("tags"), "Per-label IRLbl and MeanIR.");
    m.def("oversample", [](const std::vector<std::string> &texts, const std::vector<std::vector<std::string>> &tags,
                           double budget, std::uint64_t seed) {
        const auto out = oversample(dataset(texts, tags), budget, seed);
        std::vector<std::string> t;
        std::vector<std::vector<std::string>> g;
        for (const auto &[s, ts] : out.items()) {
            t.push_back(s.text());
            g.push_back(ts.names());
        }
        return py::make_tuple(t, g);
    }, py::arg("texts"), py::arg("tags"), py::arg("growth_budget") = 0.10, py::arg("seed") = 0);

    py::class_<TaggerModel>(m, "TaggerModel")
        .def_static("load", [](const std::filesystem::path &p) { return TaggerModel::load(p); })
        .def_static("train", [](const std::vector<std::string> &texts, const std::vector<std::vector<std::string>> &tags,
                                std::size_t epochs, double lr, std::size_t batch, std::uint64_t seed, unsigned bits) {
            TrainConfig cfg{epochs, lr, batch, seed};
            return train(dataset(texts, tags), cfg, bits);
        }, py::arg("texts"), py::arg("tags"), py::arg("epochs") = 5, py::arg("learning_rate") = 0.5,
           py::arg("batch_size") = 16, py::arg("seed") = 0, py::arg("hash_bits") = 18)
        .def("save", &TaggerModel::save)
        .def_property("threshold", &TaggerModel::threshold, &TaggerModel::set_threshold)
        .def("scores", [](const TaggerModel &mdl, const std::string &text) {
            const auto s = mdl.scores(tok(text));
            py::dict d;
            for (std::size_t i = 0; i < kNumTags; ++i) d[py::str(std::string(tag_name(tag_at(i))))] = s[i];
            return d;
        })
        .def("predict", [](const TaggerModel &mdl, const std::string &text) { return mdl.predict(tok(text)).names(); })
        .def("tune_threshold", [](TaggerModel &mdl, const std::vector<std::string> &texts,
                                  const std::vector<std::vector<std::string>> &tags) {
            const double t = tune_threshold(mdl, dataset(texts, tags));
            mdl.set_threshold(t);
            return t;
        }, py::arg("texts"), py::arg("tags"), "Sets and returns the best grid threshold.");

    py::class_<Corruptor>(m, "Corruptor")
        .def(py::init([](const std::filesystem::path &inventory) {
            return Corruptor(std::make_shared<const EditInventory>(EditInventory::load(inventory)));
        }), py::arg("inventory"))
        .def("corrupt", [](const Corruptor &c, const std::string &text, const std::vector<std::string> &tags,
                           std::size_t top_k, std::uint64_t seed) {
            const auto r = c.corrupt(tok(text), tags_of(tags), top_k, seed);
            py::dict d;
            d["src"] = r.output.text();
            d["requested"] = r.requested.names();
            d["realized"] = r.realized.names();
            py::list edits;
            for (const auto &e : r.applied_edits) edits.append(edit_dict(e));
            d["edits"] = edits;
            return d;
        }, py::arg("text"), py::arg("tags"), py::arg("top_k") = 50, py::arg("seed") = 0)
        .def_property_readonly("pattern_count", [](const Corruptor &c) { return c.inventory().pattern_count(); });
}
