#include <doctest.h>

#include "tss3/tokenizer.hpp"

using namespace tss3;

namespace {

LexicalUnit word(const char* text) { return {LexicalKind::word, text}; }
LexicalUnit punct(const char* text) { return {LexicalKind::non_word, text}; }

}  // namespace

TEST_CASE("tokenize splits words and punctuation") {
    const auto units = tokenize("Mobile APIs,");
    REQUIRE(units.size() == 3);
    CHECK(units[0] == word("mobile"));
    CHECK(units[1] == word("apis"));
    CHECK(units[2] == punct(","));
}

TEST_CASE("tokenize of empty text is empty") {
    CHECK(tokenize("").empty());
    CHECK(tokenize("   \t \n ").empty());
}

TEST_CASE("accents fold and hyphens separate") {
    const auto units = tokenize("Café-level");
    REQUIRE(units.size() == 3);
    CHECK(units[0] == word("cafe"));
    CHECK(units[1] == punct("-"));
    CHECK(units[2] == word("level"));
}

TEST_CASE("latin folding covers common accented letters") {
    CHECK(word_tokens("ÀÉÎñÜß") == std::vector<std::string>{"aeinuss"});
    CHECK(word_tokens("Łódź œuf") == std::vector<std::string>{"lodz", "oeuf"});
    // combining acute after 'e' is stripped
    CHECK(word_tokens("cafe\xCC\x81") == std::vector<std::string>{"cafe"});
}

TEST_CASE("digits are word characters") {
    const auto units = tokenize("abc123 x9 42");
    REQUIRE(units.size() == 3);
    CHECK(units[0] == word("abc123"));
    CHECK(units[1] == word("x9"));
    CHECK(units[2] == word("42"));
}

TEST_CASE("runs of punctuation form one non-word unit") {
    const auto units = tokenize("a,,b ?! c");
    REQUIRE(units.size() == 5);
    CHECK(units[0] == word("a"));
    CHECK(units[1] == punct(",,"));
    CHECK(units[2] == word("b"));
    CHECK(units[3] == punct("?!"));
    CHECK(units[4] == word("c"));
}

TEST_CASE("invalid utf-8 bytes become non-word units without crashing") {
    const std::string bad = std::string("ok ") + '\xFF' + '\xC3' + " go";
    const auto units = tokenize(bad);
    REQUIRE(units.size() == 3);
    CHECK(units[0] == word("ok"));
    CHECK(units[1].kind == LexicalKind::non_word);
    CHECK(units[2] == word("go"));
}

TEST_CASE("non-latin scripts are treated as non-word runs") {
    const auto units = tokenize("a Ω b");
    REQUIRE(units.size() == 3);
    CHECK(units[0] == word("a"));
    CHECK(units[1].kind == LexicalKind::non_word);
    CHECK(units[2] == word("b"));
}

TEST_CASE("word_tokens keeps order and drops punctuation") {
    CHECK(word_tokens("Mobile APIs, for mobile developers") ==
          std::vector<std::string>{"mobile", "apis", "for", "mobile", "developers"});
}
