#include <sstream>

#include "doctest.h"
#include "gecsyn/error.hpp"
#include "gecsyn/tokenizer.hpp"
#include "support.hpp"

using namespace gecsyn;
using testing::sent;
using testing::tokenizer;

using Words = std::vector<std::string>;

TEST_CASE("tokenize splits punctuation and clitics") {
    CHECK(sent("He has bought many shoes.").surfaces() == Words{"He", "has", "bought", "many", "shoes", "."});
    CHECK(sent("word").surfaces() == Words{"word"});
    CHECK(sent("I don't know.").surfaces() == Words{"I", "do", "n't", "know", "."});
    CHECK(sent("She's here, isn't she?").surfaces() ==
          Words{"She", "'s", "here", ",", "is", "n't", "she", "?"});
    CHECK(sent("(They'll come)").surfaces() == Words{"(", "They", "'ll", "come", ")"});
    CHECK(sent("  spaced   out  ").surfaces() == Words{"spaced", "out"});
    CHECK(sent("We've, I'm, you're, he'd").surfaces() ==
          Words{"We", "'ve", ",", "I", "'m", ",", "you", "'re", ",", "he", "'d"});
}

TEST_CASE("tokenize rejects blank input") {
    CHECK_THROWS_AS(tokenizer().tokenize(""), EmptyInputError);
    CHECK_THROWS_AS(tokenizer().tokenize("  \t "), EmptyInputError);
    CHECK(tokenizer().split("   ").empty());
}

TEST_CASE("tokenized text is a fixed point") {
    for (const char *text : {"His Kanji 's ability is better than mine .", "His Kanji 's ability",
                             "And he took in my favorite subjects like soccer .",
                             "And he took in my favorite subject like soccer ."}) {
        const auto once = sent(text);
        CHECK(once.text() == text);
        CHECK(sent(once.text()) == once);
    }
}

TEST_CASE("tokenize is idempotent over the fixture corpus") {
    const auto lines = testing::read_lines(testing::data_path("fixtures/correct_1k.txt"));
    REQUIRE(lines.size() >= 1000);
    for (const auto &line : lines) {
        const auto once = sent(line);
        REQUIRE(sent(once.text()).surfaces() == once.surfaces());
    }
    CHECK(sent("Hello, world!").text() == sent(sent("Hello, world!").text()).text());
}

TEST_CASE("annotation of known words") {
    const auto s = sent("He has bought many shoes .");
    CHECK(s[1].pos == Pos::Verb);
    CHECK(s[1].lemma == "have");
    CHECK(s[2].lemma == "buy");
    CHECK(s[4].pos == Pos::Noun);
    CHECK(s[4].lemma == "shoe");
    CHECK(s[5].pos == Pos::Punct);
    CHECK(s[5].lemma == ".");
    CHECK(s[0].pos == Pos::Pron);
}

TEST_CASE("annotation is total and context sensitive") {
    const auto unknown = tokenizer().annotate("Zorblax", {});
    CHECK_FALSE(unknown.lemma.empty());
    CHECK(unknown.lemma == "zorblax");

    const auto s = sent("The cats are running quickly .");
    CHECK(s[1].pos == Pos::Noun);
    CHECK(s[1].lemma == "cat");
    CHECK(s[3].pos == Pos::Verb);
    CHECK(s[3].lemma == "run");
    CHECK(s[4].pos == Pos::Adv);

    // "like" as a verb after a subject, as a preposition after a verb phrase.
    const auto a = sent("My friends like soccer .");
    CHECK(a[2].pos == Pos::Verb);
    const auto b = sent("He took subjects like soccer .");
    CHECK(b[3].pos == Pos::Prep);
}

TEST_CASE("regular inflection rules") {
    CHECK(regular_plural("box") == "boxes");
    CHECK(regular_plural("city") == "cities");
    CHECK(regular_plural("day") == "days");
    CHECK(regular_third_person("go") == "goes");
    CHECK(regular_third_person("try") == "tries");
    CHECK(regular_past("stop") == "stopped");
    CHECK(regular_past("like") == "liked");
    CHECK(regular_gerund("make") == "making");
    CHECK(regular_gerund("swim") == "swimming");
}

TEST_CASE("lexicon forms") {
    const Lexicon &lex = tokenizer().lexicon();
    CHECK(lex.size() >= 5000);
    CHECK(lex.form_of("has", "have", Pos::Verb) == Inflection::Present3sg);
    CHECK(lex.form_of("went", "go", Pos::Verb) == Inflection::Past);
    CHECK(lex.form_of("gone", "go", Pos::Verb) == Inflection::PastParticiple);
    CHECK(lex.form_of("shoes", "shoe", Pos::Noun) == Inflection::Plural);
    CHECK(lex.form_of("children", "child", Pos::Noun) == Inflection::Plural);
    CHECK(lex.inflect("child", Pos::Noun, Inflection::Plural) == "children");
    CHECK(lex.inflect("good", Pos::Adj, Inflection::Comparative) == "better");
    CHECK(lex.inflect("walk", Pos::Verb, Inflection::Gerund) == "walking");
    CHECK(lex.guess_lemma("walked", Pos::Verb) == "walk");
    CHECK(lex.lookup("SHOES").size() >= 1);
}

TEST_CASE("lexicon parsing reports line numbers") {
    std::istringstream lex("# comment\ncat\tNOUN\tcat\ndog\tNOUN\n");
    std::istringstream irr("");
    try {
        Lexicon::parse(lex, irr);
        FAIL("expected a parse error");
    } catch (const ParseError &e) {
        CHECK(e.is_line());
        CHECK(e.offset() == 3);
    }
    std::istringstream lex2("cat\tNOUN\tcat\n");
    std::istringstream irr2("NOUN\tmouse\tmice\n");
    const auto parsed = Lexicon::parse(lex2, irr2);
    CHECK(parsed.contains("cat"));
    CHECK(parsed.inflect("mouse", Pos::Noun, Inflection::Plural) == "mice");
}

TEST_CASE("punctuation detection") {
    CHECK(is_punctuation("."));
    CHECK(is_punctuation("?!"));
    CHECK_FALSE(is_punctuation("a."));
    CHECK_FALSE(is_punctuation("'s"));
}
