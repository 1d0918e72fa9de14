#include "tss3/tokenizer.hpp"

namespace tss3 {
namespace {

// Decodes one UTF-8 code point starting at i and advances i. Malformed
// bytes are consumed one at a time and decode to U+FFFD.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + len > s.size()) {
        ++i;
        return 0xFFFD;
    }
    for (int k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    i += len;
    return cp;
}

// ASCII replacement for a foldable Latin letter, nullptr otherwise.
// Covers Latin-1 Supplement and Latin Extended-A plus the Romanian
// comma-below letters.
const char* latin_fold(char32_t cp) {
    if (cp >= 0x00C0 && cp <= 0x00FF) {
        switch (cp) {
            case 0x00C6: case 0x00E6: return "ae";
            case 0x00C7: case 0x00E7: return "c";
            case 0x00D0: case 0x00F0: return "d";
            case 0x00D1: case 0x00F1: return "n";
            case 0x00D7: case 0x00F7: return nullptr;  // multiply / divide signs
            case 0x00DD: case 0x00FD: case 0x00FF: return "y";
            case 0x00DE: case 0x00FE: return "th";
            case 0x00DF: return "ss";
            default: break;
        }
        if (cp <= 0x00C5 || (cp >= 0x00E0 && cp <= 0x00E5)) return "a";
        if ((cp >= 0x00C8 && cp <= 0x00CB) || (cp >= 0x00E8 && cp <= 0x00EB)) return "e";
        if ((cp >= 0x00CC && cp <= 0x00CF) || (cp >= 0x00EC && cp <= 0x00EF)) return "i";
        if ((cp >= 0x00D2 && cp <= 0x00D8) || (cp >= 0x00F2 && cp <= 0x00F8)) return "o";
        if ((cp >= 0x00D9 && cp <= 0x00DC) || (cp >= 0x00F9 && cp <= 0x00FC)) return "u";
        return nullptr;
    }
    if (cp >= 0x0100 && cp <= 0x017F) {
        if (cp <= 0x0105) return "a";
        if (cp <= 0x010D) return "c";
        if (cp <= 0x0111) return "d";
        if (cp <= 0x011B) return "e";
        if (cp <= 0x0123) return "g";
        if (cp <= 0x0127) return "h";
        if (cp <= 0x0131) return "i";
        if (cp <= 0x0133) return "ij";
        if (cp <= 0x0135) return "j";
        if (cp <= 0x0138) return "k";
        if (cp <= 0x0142) return "l";
        if (cp <= 0x014B) return "n";
        if (cp <= 0x0151) return "o";
        if (cp <= 0x0153) return "oe";
        if (cp <= 0x0159) return "r";
        if (cp <= 0x0161) return "s";
        if (cp <= 0x0167) return "t";
        if (cp <= 0x0173) return "u";
        if (cp <= 0x0175) return "w";
        if (cp <= 0x0178) return "y";
        if (cp <= 0x017E) return "z";
        return "s";  // U+017F long s
    }
    if (cp == 0x0218 || cp == 0x0219) return "s";
    if (cp == 0x021A || cp == 0x021B) return "t";
    return nullptr;
}

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case ' ': case '\t': case '\n': case '\r': case '\f': case '\v':
        case 0x00A0: case 0x2028: case 0x2029:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200B;
    }
}

bool is_combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

// Appends the normalized word characters for cp; false when cp is not a
// word character.
bool append_word_char(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        if (cp >= '0' && cp <= '9') {
            out.push_back(static_cast<char>(cp));
            return true;
        }
        if (cp >= 'a' && cp <= 'z') {
            out.push_back(static_cast<char>(cp));
            return true;
        }
        if (cp >= 'A' && cp <= 'Z') {
            out.push_back(static_cast<char>(cp - 'A' + 'a'));
            return true;
        }
        return false;
    }
    if (const char* folded = latin_fold(cp)) {
        out.append(folded);
        return true;
    }
    return false;
}

}  // namespace

std::vector<LexicalUnit> tokenize(std::string_view raw) {
    std::vector<LexicalUnit> units;
    std::string word;
    std::string other;

    auto flush_word = [&] {
        if (!word.empty()) units.push_back({LexicalKind::word, std::move(word)});
        word.clear();
    };
    auto flush_other = [&] {
        if (!other.empty()) units.push_back({LexicalKind::non_word, std::move(other)});
        other.clear();
    };

    std::size_t i = 0;
    while (i < raw.size()) {
        const std::size_t start = i;
        const char32_t cp = next_codepoint(raw, i);
        if (is_combining_mark(cp)) continue;
        if (is_space_cp(cp)) {
            flush_word();
            flush_other();
            continue;
        }
        std::string folded;
        if (append_word_char(cp, folded)) {
            flush_other();
            word += folded;
        } else {
            flush_word();
            other.append(raw.substr(start, i - start));
        }
    }
    flush_word();
    flush_other();
    return units;
}

std::vector<std::string> word_tokens(std::string_view raw) {
    std::vector<std::string> words;
    for (auto& unit : tokenize(raw)) {
        if (unit.is_word()) words.push_back(std::move(unit.text));
    }
    return words;
}

}  // namespace tss3
