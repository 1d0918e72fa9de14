#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace tss3 {

enum class LexicalKind { word, non_word };

// A normalized token. Word units are maximal alphanumeric runs after accent
// folding and lowercasing; every other run of printable characters is one
// non-word unit. Whitespace separates units and never appears in either.
struct LexicalUnit {
    LexicalKind kind = LexicalKind::word;
    std::string text;

    bool is_word() const { return kind == LexicalKind::word; }

    bool operator==(const LexicalUnit&) const = default;
};

// Splits raw UTF-8 text into lexical units. Latin accented letters fold to
// their ASCII base ("Café" -> "cafe"), combining marks are stripped, ASCII
// uppercase is lowered. Characters outside those ranges count as non-word.
// Invalid UTF-8 bytes are consumed one at a time as non-word characters.
std::vector<LexicalUnit> tokenize(std::string_view raw);

// The word units only, in order. Convenience for sentence-level callers.
std::vector<std::string> word_tokens(std::string_view raw);

}  // namespace tss3
