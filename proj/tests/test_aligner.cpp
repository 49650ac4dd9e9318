#include <cmath>

#include "doctest.h"
#include "gecsyn/aligner.hpp"
#include "gecsyn/error.hpp"
#include "gecsyn/rng.hpp"
#include "support.hpp"

using namespace gecsyn;
using testing::sent;

namespace {

std::vector<OpKind> kinds(const Alignment &a) {
    std::vector<OpKind> out;
    for (const auto &op : a.ops) out.push_back(op.kind);
    return out;
}

// Ops must tile both sentences in order.
void check_tiling(const Alignment &a, const Sentence &s, const Sentence &t) {
    std::size_t i = 0, j = 0;
    for (const auto &op : a.ops) {
        REQUIRE(op.src.begin == i);
        REQUIRE(op.tgt.begin == j);
        i = op.src.end;
        j = op.tgt.end;
        if (op.kind == OpKind::Transpose) {
            REQUIRE(op.src.size() == op.tgt.size());
            REQUIRE(op.src.size() >= 2);
        }
    }
    REQUIRE(i == s.size());
    REQUIRE(j == t.size());
}

Sentence random_sentence(Rng &rng, const std::vector<std::string> &vocab, std::size_t max_len) {
    std::vector<std::string> toks(1 + rng.uniform(max_len));
    for (auto &t : toks) t = vocab[rng.uniform(vocab.size())];
    return testing::tokenizer().annotate_tokens(toks);
}

} // namespace

TEST_CASE("identical sentences align with matches only") {
    const auto s = sent("the cat sat down");
    const auto a = align(s, s);
    CHECK(kinds(a) == std::vector<OpKind>(4, OpKind::Match));
    CHECK(a.cost == 0.0);
    CHECK(extract_edits(a.ops, s, s).empty());
}

TEST_CASE("agreement substitution") {
    const auto s = sent("He have a dog");
    const auto t = sent("He has a dog");
    const auto a = align(s, t);
    CHECK(kinds(a) == std::vector<OpKind>{OpKind::Match, OpKind::Substitute, OpKind::Match, OpKind::Match});
    CHECK(a.ops[1].src == TokenSpan{1, 2});
    CHECK(a.ops[1].tgt == TokenSpan{1, 2});
    CHECK(a.cost == doctest::Approx(0.4));
    CHECK(testing::BruteForceAligner(s, t).min_cost() == doctest::Approx(a.cost));

    const auto edits = extract_edits(a.ops, s, t);
    REQUIRE(edits.size() == 1);
    CHECK(edits[0].start == 1);
    CHECK(edits[0].end == 2);
    REQUIRE(edits[0].replacement.size() == 1);
    CHECK(edits[0].replacement[0].surface == "has");
}

TEST_CASE("adjacent swap is a transposition") {
    const auto s = sent("only can do");
    const auto t = sent("can only do");
    const auto a = align(s, t);
    CHECK(kinds(a) == std::vector<OpKind>{OpKind::Transpose, OpKind::Match});
    CHECK(a.cost == doctest::Approx(1.5));
    const auto edits = extract_edits(a.ops, s, t);
    REQUIRE(edits.size() == 1);
    CHECK(edits[0].start == 0);
    CHECK(edits[0].end == 2);
}

TEST_CASE("substitution costs") {
    const auto s = sent("has shoes big");
    const auto t = sent("have shoe small");
    CHECK(substitution_cost(s[0], t[0]) == doctest::Approx(0.4));
    CHECK(substitution_cost(s[1], t[1]) == doctest::Approx(0.4));
    CHECK(substitution_cost(s[2], t[2]) == doctest::Approx(0.8));
    CHECK(substitution_cost(s[0], s[0]) == 0.0);
    CHECK(substitution_cost(s[0], t[2]) == doctest::Approx(1.0));
    AlignmentCosts steep;
    steep.same_lemma_discount = 0.9;
    CHECK(substitution_cost(s[0], t[0], steep) == doctest::Approx(0.2));
}

TEST_CASE("deletion next to a same-lemma substitution merges") {
    const auto s = sent("a informations");
    const auto t = sent("information");
    const auto a = align(s, t);
    const auto edits = extract_edits(a.ops, s, t);
    REQUIRE(edits.size() == 1);
    CHECK(edits[0].start == 0);
    CHECK(edits[0].end == 2);
    REQUIRE(edits[0].replacement.size() == 1);
    CHECK(edits[0].replacement[0].surface == "information");
}

TEST_CASE("punctuation neighbours merge, unrelated neighbours do not") {
    const auto s = sent("Hello , world !");
    const auto t = sent("Hello world .");
    const auto edits = extract_edits(align(s, t).ops, s, t);
    CHECK(edits.size() == 2);

    const auto s2 = sent("I eat big apples");
    const auto t2 = sent("We eat red apples");
    CHECK(extract_edits(align(s2, t2).ops, s2, t2).size() == 2);
}

TEST_CASE("empty sentences are rejected") {
    CHECK_THROWS_AS(align(Sentence{}, sent("a")), EmptyInputError);
    CHECK_THROWS_AS(align(sent("a"), Sentence{}), EmptyInputError);
}

TEST_CASE("dynamic program matches brute force on small random pairs") {
    const std::vector<std::string> vocab{"the", "cat", "cats", "sat", "."};
    Rng rng(2024);
    for (int n = 0; n < 2000; ++n) {
        const auto s = random_sentence(rng, vocab, 6);
        const auto t = random_sentence(rng, vocab, 6);
        const auto a = align(s, t);
        check_tiling(a, s, t);
        REQUIRE(a.cost == doctest::Approx(testing::BruteForceAligner(s, t).min_cost()));
        REQUIRE(alignment_cost(a.ops, s, t) == doctest::Approx(a.cost));
    }
}

TEST_CASE("edits reconstruct the target") {
    const std::vector<std::string> vocab{"he", "has", "have", "a", "dog", "dogs", "the", ",", ".", "runs"};
    Rng rng(99);
    for (int n = 0; n < 500; ++n) {
        const auto s = random_sentence(rng, vocab, 9);
        const auto t = random_sentence(rng, vocab, 9);
        const auto edits = extract_edits(align(s, t).ops, s, t);
        for (std::size_t k = 1; k < edits.size(); ++k) REQUIRE(edits[k - 1].end <= edits[k].start);
        REQUIRE(apply_edits(s, edits) == t.surfaces());
    }
}

TEST_CASE("ties prefer fewer operations") {
    // One substitution (cost 1) beats delete + insert (cost 2); equal-cost
    // alternatives with more ops are not chosen.
    const auto s = sent("cat");
    const auto t = sent("ran");
    const auto a = align(s, t);
    CHECK(kinds(a) == std::vector<OpKind>{OpKind::Substitute});
}
