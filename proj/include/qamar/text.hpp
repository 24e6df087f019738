#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qamar/utf8.hpp"

namespace qamar {

// fathatan .. sukun, plus tatweel
inline bool is_diacritic(char32_t c) { return (c >= 0x064B && c <= 0x0652) || c == 0x0640; }

inline bool is_arabic_letter(char32_t c) {
    return (c >= 0x0621 && c <= 0x063A) || (c >= 0x0641 && c <= 0x064A) || (c >= 0x0671 && c <= 0x06D3);
}

inline bool is_alef(char32_t c) { return c == U'ا' || c == U'أ' || c == U'إ' || c == U'آ' || c == U'ٱ'; }

inline bool is_digit(char32_t c) {
    return (c >= U'0' && c <= U'9') || (c >= 0x0660 && c <= 0x0669) || (c >= 0x06F0 && c <= 0x06F9);
}

inline bool is_space(char32_t c) {
    return (c >= 0x09 && c <= 0x0D) || c == 0x20 || c == 0x85 || c == 0xA0 || c == 0x1680 ||
           (c >= 0x2000 && c <= 0x200B) || c == 0x2028 || c == 0x2029 || c == 0x202F || c == 0x205F ||
           c == 0x3000 || c == 0xFEFF;
}

inline bool is_punct(char32_t c) {
    if (c < 0x80)
        return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
               (c >= 0x7B && c <= 0x7E);
    switch (c) {
    case 0x060C: // comma
    case 0x061B: // semicolon
    case 0x061F: // question mark
    case 0x066A: case 0x066B: case 0x066C: case 0x066D: case 0x06D4:
    case 0x00AB: case 0x00BB:
    case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:
    case 0x2018: case 0x2019: case 0x201C: case 0x201D: case 0x2026:
    case 0xFD3E: case 0xFD3F:
        return true;
    default:
        return false;
    }
}

inline std::u32string normalize(std::u32string_view raw) {
    std::u32string out;
    out.reserve(raw.size());
    for (char32_t c : raw)
        if (!is_diacritic(c))
            out.push_back(c);
    return out;
}

inline std::string normalize(std::string_view raw) { return utf8::encode(normalize(utf8::decode(raw))); }

inline std::u32string fold_alef(std::u32string_view s) {
    std::u32string out(s);
    for (auto& c : out)
        if (is_alef(c))
            c = U'ا';
    return out;
}

// hamza carriers and alef maqsura collapsed for root comparison
inline char32_t fold_hamza(char32_t c) {
    switch (c) {
    case U'أ': case U'إ': case U'ؤ': case U'ئ': case U'آ':
        return U'ء';
    default:
        return c;
    }
}

enum class TokenKind { Word, Number, Punct };

struct Token {
    std::u32string surface;
    std::u32string original;
    std::size_t begin = 0;
    std::size_t end = 0;
    TokenKind kind = TokenKind::Word;

    bool operator==(const Token&) const = default;
};

struct TokenizeOptions {
    bool fold_alef = false;
};

// Offsets are code-point indices into the decoded input.
inline std::vector<Token> tokenize(std::u32string_view text, TokenizeOptions opt = {}) {
    std::vector<Token> out;
    auto emit = [&](std::size_t b, std::size_t e, TokenKind kind) {
        Token t;
        t.original = std::u32string(text.substr(b, e - b));
        t.surface = normalize(t.original);
        if (t.surface.empty())
            return;
        if (opt.fold_alef)
            t.surface = fold_alef(t.surface);
        t.begin = b;
        t.end = e;
        t.kind = kind;
        out.push_back(std::move(t));
    };
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        char32_t c = text[i];
        if (is_space(c)) {
            ++i;
            continue;
        }
        if (is_punct(c)) {
            emit(i, i + 1, TokenKind::Punct);
            ++i;
            continue;
        }
        std::size_t j = i;
        bool number = is_digit(c);
        while (j < n && !is_space(text[j])) {
            if (is_punct(text[j])) {
                // 3.5 and 1,000 stay whole inside numbers
                bool joiner = text[j] == U'.' || text[j] == U',' || text[j] == 0x066B || text[j] == 0x066C;
                if (number && joiner && j + 1 < n && is_digit(text[j + 1]) && j > i && is_digit(text[j - 1])) {
                    ++j;
                    continue;
                }
                break;
            }
            ++j;
        }
        emit(i, j, number ? TokenKind::Number : TokenKind::Word);
        i = j;
    }
    return out;
}

inline std::vector<Token> tokenize(std::string_view utf8_text, TokenizeOptions opt = {}) {
    return tokenize(std::u32string_view(utf8::decode(utf8_text)), opt);
}

} // namespace qamar
