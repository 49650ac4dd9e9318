#include <filesystem>
#include <map>

#include "doctest.h"
#include "gecsyn/backend.hpp"
#include "gecsyn/classifier.hpp"
#include "gecsyn/corruptor.hpp"
#include "gecsyn/error.hpp"
#include "gecsyn/pipeline.hpp"
#include "gecsyn/rng.hpp"
#include "support.hpp"

using namespace gecsyn;
using testing::sent;

namespace {

const std::string kRow1 = "And he took in my favorite subjects like soccer .";
const std::string kRow1Corrupt = "And he took in my favorite subject like soccer .";
const TagSet kRow1Tags{ErrorTag::NounNum, ErrorTag::Other, ErrorTag::Part};
const TagSet kRow2Tags{ErrorTag::NounPoss, ErrorTag::Other, ErrorTag::Pron};

const Classifier &classifier() {
    static const Classifier c;
    return c;
}

std::vector<ParallelPair> annotate(const std::vector<RawPair> &raw) {
    return annotate_corpus(raw, testing::tokenizer(), classifier());
}

std::vector<ParallelPair> table_pairs() {
    return annotate({{kRow1Corrupt, kRow1},
                     {"His Kanji ability is better than me .", "His Kanji 's ability is better than mine ."}});
}

std::shared_ptr<const EditInventory> bundled_inventory() {
    static const auto inv =
        std::make_shared<const EditInventory>(EditInventory::load(testing::data_path("inventory.json")));
    return inv;
}

TagSet random_tags(Rng &rng) {
    TagSet s;
    for (std::size_t i = 0; i < kNumTags; ++i) {
        if (rng.uniform(6) == 0) s.insert(tag_at(i));
    }
    return s;
}

} // namespace

TEST_CASE("prefix encoding of the tagged examples") {
    CHECK(encode_prefix(kRow1Tags, sent(kRow1)) ==
          "grammar_error: (aaaaaaaaabaabbaaaaaaaaaa) And he took in my favorite subjects like soccer .");
    const auto row2 = encode_prefix(kRow2Tags, "His Kanji 's ability is better than mine .");
    CHECK(row2.substr(0, 42) == "grammar_error: (aaaaaaaaaababaabaaaaaaaa) ");
    CHECK(encode_prefix(TagSet{}, "x") == "grammar_error: (aaaaaaaaaaaaaaaaaaaaaaaa) x");
}

TEST_CASE("prefix decoding") {
    const auto d1 = decode_prefix("grammar_error: (aaaaaaaaabaabbaaaaaaaaaa) " + kRow1);
    CHECK(d1.tags == kRow1Tags);
    CHECK(d1.text == kRow1);
    CHECK(decode_prefix("grammar_error: (aaaaaaaaaababaabaaaaaaaa) His Kanji").tags == kRow2Tags);

    auto offset_of = [](const std::string &line) -> std::size_t {
        try {
            decode_prefix(line);
        } catch (const ParseError &e) {
            CHECK_FALSE(e.is_line());
            return e.offset();
        }
        FAIL("expected a parse error");
        return 0;
    };
    CHECK(offset_of("grammar_error: (aaa) x") == 19);
    CHECK(offset_of("grammar-error: (aaaaaaaaaaaaaaaaaaaaaaaa) x") == 7);
    CHECK(offset_of("grammar_error: (aaaaaaaaaacaaaaaaaaaaaaa) x") == 26);
    CHECK(offset_of("grammar_error: (aaaaaaaaaaaaaaaaaaaaaaaaa) x") == 40);
    CHECK(offset_of("grammar_error: (aaaaaaaaaaaaaaaaaaaaaaaa)x") == 41);
}

TEST_CASE("prefix round-trip over random tag sets and inventories") {
    Rng rng(17);
    auto names = TagInventory::standard().names();
    for (int n = 0; n < 1000; ++n) {
        const auto tags = TagSet::from_bits(static_cast<std::uint32_t>(rng.uniform(1u << kNumTags)));
        const std::string text = "sentence number " + std::to_string(n) + " .";
        const auto d = decode_prefix(encode_prefix(tags, text));
        REQUIRE(d.tags == tags);
        REQUIRE(d.text == text);

        rng.shuffle(std::span(names));
        const auto inv = TagInventory::from_names(names);
        REQUIRE(decode_prefix(encode_prefix(tags, text, inv), inv).tags == tags);
    }
}

TEST_CASE("mining the tagged examples") {
    MiningReport report;
    const auto inv = mine_inventory(table_pairs(), classifier(), &report);
    CHECK(report.pairs == 2);

    const auto num = inv.patterns(ErrorTag::NounNum);
    REQUIRE(num.size() == 1);
    CHECK(num[0].pattern.kind == PatternKind::Inflect);
    CHECK(num[0].pattern.pos == Pos::Noun);
    CHECK(num[0].pattern.from_form == Inflection::Plural);
    CHECK(num[0].pattern.to_form == Inflection::Singular);

    const auto pron = inv.patterns(ErrorTag::Pron);
    REQUIRE(pron.size() == 1);
    CHECK(pron[0].pattern.kind == PatternKind::Replace);
    CHECK(pron[0].pattern.from == std::vector<std::string>{"mine"});
    CHECK(pron[0].pattern.to == std::vector<std::string>{"me"});

    CHECK(inv.patterns(ErrorTag::NounPoss).size() == 1);
}

TEST_CASE("mining with nothing to mine") {
    CHECK_THROWS_AS(mine_inventory(annotate({{"a b .", "a b ."}}), classifier()), EmptyInventoryError);
    CHECK_THROWS_AS(mine_inventory({}, classifier()), EmptyInventoryError);
}

TEST_CASE("mining tallies match annotated edit counts on the fifty-pair fixture") {
    const auto pairs = annotate(testing::read_pairs(testing::test_data_path("fifty_pairs.tsv")));
    REQUIRE(pairs.size() == 50);
    std::map<ErrorTag, std::size_t> tally;
    std::size_t total = 0;
    for (const auto &p : pairs) {
        for (const auto &e : *p.edits) {
            ++tally[*e.tag];
            ++total;
        }
    }
    MiningReport report;
    const auto inv = mine_inventory(pairs, classifier(), &report);
    CHECK(report.edits == total);
    CHECK(report.kept + report.dropped == total);
    for (std::size_t i = 0; i < kNumTags; ++i) {
        const auto tag = tag_at(i);
        const std::size_t expected = tally.count(tag) ? tally[tag] : 0;
        CHECK(report.kept_per_tag[i] + report.dropped_per_tag[i] == expected);
        CHECK(inv.total_weight(tag) == report.kept_per_tag[i]);
    }
}

TEST_CASE("inventory file round-trip") {
    const auto inv = mine_inventory(table_pairs(), classifier());
    CHECK(EditInventory::from_json(inv.to_json()) == inv);
    const auto path = std::filesystem::temp_directory_path() / "gecsyn_test_inventory.json";
    inv.save(path);
    CHECK(EditInventory::load(path) == inv);
    std::filesystem::remove(path);
    CHECK(EditInventory::from_json(bundled_inventory()->to_json()) == *bundled_inventory());

    CHECK_THROWS_AS(EditInventory::from_json("{}"), ParseError);
    CHECK_THROWS_AS(EditInventory::from_json("[1, 2"), ParseError);

    EditInventory agg;
    Pattern p;
    p.from = {"a"};
    p.to = {"an"};
    agg.add(ErrorTag::Det, p);
    agg.add(ErrorTag::Det, p, 2);
    REQUIRE(agg.patterns(ErrorTag::Det).size() == 1);
    CHECK(agg.patterns(ErrorTag::Det)[0].weight == 3);
}

TEST_CASE("corrupting the tagged example") {
    const auto inv = mine_inventory(table_pairs(), classifier());
    const auto s = sent(kRow1);
    const auto r = corrupt(s, kRow1Tags, inv, 50, 0);
    CHECK(r.output.text() == kRow1Corrupt);
    CHECK(r.requested == kRow1Tags);
    CHECK(r.realized == TagSet{ErrorTag::NounNum});
    REQUIRE(r.applied_edits.size() == 1);
    CHECK(verify_realized(r, s, classifier()) == TagSet{ErrorTag::NounNum});
}

TEST_CASE("identity cases") {
    const auto inv = mine_inventory(table_pairs(), classifier());
    const auto s = sent(kRow1);
    const auto r = corrupt(s, TagSet{}, inv);
    CHECK(r.output == s);
    CHECK(r.realized.empty());
    CHECK(r.applied_edits.empty());
    CHECK(verify_realized(r, s, classifier()).empty());

    const auto no_nouns = sent("He runs quickly .");
    const auto r2 = corrupt(no_nouns, TagSet{ErrorTag::NounNum}, inv);
    CHECK(r2.output == no_nouns);
    CHECK(r2.realized.empty());
}

TEST_CASE("top-k of one takes the heaviest candidate") {
    EditInventory inv;
    Pattern light, heavy;
    light.from = {"a"};
    light.to = {"the"};
    heavy.from = {"a"};
    heavy.to = {"an"};
    inv.add(ErrorTag::Det, light, 1);
    inv.add(ErrorTag::Det, heavy, 5);
    const auto s = sent("I saw a dog .");
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        CHECK(corrupt(s, TagSet{ErrorTag::Det}, inv, 1, seed).output.text() == "I saw an dog .");
    }
    std::size_t light_hits = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        light_hits += corrupt(s, TagSet{ErrorTag::Det}, inv, 2, seed).output.text() == "I saw the dog .";
    }
    CHECK(light_hits > 10);
    CHECK(light_hits < 80);
    CHECK_THROWS_AS(corrupt(s, TagSet{ErrorTag::Det}, inv, 0, 0), InputError);
}

TEST_CASE("candidate matching") {
    const Corruptor c(bundled_inventory());
    Pattern ins;
    ins.kind = PatternKind::Insert;
    ins.to = {"the"};
    ins.left = Pos::Verb;
    ins.right = Pos::Noun;
    const auto s = sent("I like music .");
    const auto m = c.match(s, ins, 2);
    REQUIRE(m.has_value());
    CHECK(m->start == 2);
    CHECK(m->end == 2);
    CHECK(c.apply(s, *m).text() == "I like the music .");
    CHECK_FALSE(c.match(s, ins, 0).has_value());
    CHECK_FALSE(c.match(s, ins, 3).has_value());

    Pattern cap;
    cap.from = {"the"};
    cap.to = {"a"};
    const auto t = sent("The cat sleeps .");
    const auto mc = c.match(t, cap, 0);
    REQUIRE(mc.has_value());
    CHECK(mc->tokens == std::vector<std::string>{"A"});

    Pattern orth;
    orth.from = {"the"};
    orth.to = {"the"};
    REQUIRE(c.match(t, orth, 0).has_value());
    CHECK(c.match(t, orth, 0)->tokens == std::vector<std::string>{"the"});
    CHECK_FALSE(c.match(sent("So the cat ."), orth, 1).has_value());
}

TEST_CASE("corruption invariants over the fixture corpus") {
    const Corruptor c(bundled_inventory());
    const auto lines = testing::read_lines(testing::data_path("fixtures/correct_1k.txt"));
    Rng rng(8);
    for (std::size_t i = 0; i < 400; ++i) {
        const auto s = sent(lines[i]);
        const auto tags = random_tags(rng);
        const auto r = c.corrupt(s, tags, 50, i);
        REQUIRE(r.realized.is_subset_of(tags));
        REQUIRE(r.applied_edits.size() == r.realized.size());
        REQUIRE((r.output == s) == r.realized.empty());
        REQUIRE(apply_edits(r.output, r.applied_edits) == s.surfaces());
        for (std::size_t k = 1; k < r.applied_edits.size(); ++k) {
            REQUIRE(r.applied_edits[k - 1].end <= r.applied_edits[k].start);
        }
        const auto again = c.corrupt(s, tags, 50, i);
        REQUIRE(again.output == r.output);
        REQUIRE(again.realized == r.realized);
    }
}

TEST_CASE("inventory backend") {
    const InventoryBackend backend(bundled_inventory());
    const auto s = sent(kRow1);
    const auto a = backend.corrupt(s, TagSet{ErrorTag::NounNum}, 3);
    const auto b = corrupt(s, TagSet{ErrorTag::NounNum}, *bundled_inventory(), 50, 3);
    CHECK(a.output == b.output);
    CHECK(a.realized == b.realized);
}

TEST_CASE("external backend over a subprocess") {
    // Strips the prefix and singularizes one word.
    const ExternalBackend backend("sed -u -e 's/^grammar_error: ([ab]*) //' -e 's/subjects/subject/'");
    const auto s = sent(kRow1);
    const auto r = backend.corrupt(s, kRow1Tags, 0);
    CHECK(r.output.text() == kRow1Corrupt);
    CHECK(r.realized == TagSet{ErrorTag::NounNum});
    const auto r2 = backend.corrupt(s, TagSet{ErrorTag::Pron}, 0);
    CHECK(r2.realized.empty());

    const ExternalBackend dead("true");
    CHECK_THROWS_AS(dead.corrupt(s, kRow1Tags, 0), BackendError);
}
