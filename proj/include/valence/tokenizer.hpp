/// @file tokenizer.hpp
/// @brief Word tokenization for short informal text.
///
/// Token grammar: a maximal run of letters and digits (combining marks may
/// continue a run), with at most one internal apostrophe ("can't"). Before
/// tokenizing, URLs (http://, https://, www.) are removed up to the next
/// whitespace, and @mentions are dropped. A '#' is an ordinary separator, so
/// "#cool" yields "cool". Tokens are case-folded; U+2019 is written as '.

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "valence/text.hpp"

namespace valence {

struct Token {
    std::string text;
    std::size_t start = 0; ///< code point offset of the first character
    std::size_t end = 0;   ///< one past the last code point

    friend bool operator==(const Token&, const Token&) = default;
};

namespace detail {

struct CodePoint {
    UChar32 cp;
    std::size_t byte;   // offset into the source
    std::size_t length; // UTF-8 byte length
};

inline std::vector<CodePoint> decode_utf8(std::string_view s)
{
    std::vector<CodePoint> out;
    out.reserve(s.size());
    const auto* p = reinterpret_cast<const uint8_t*>(s.data());
    const auto n = static_cast<int32_t>(s.size());
    int32_t i = 0;
    while (i < n) {
        const int32_t begin = i;
        UChar32 c;
        U8_NEXT(p, i, n, c);
        if (c < 0)
            c = 0xFFFD;
        out.push_back({c, static_cast<std::size_t>(begin), static_cast<std::size_t>(i - begin)});
    }
    return out;
}

inline bool is_word_start(UChar32 c)
{
    return u_isalpha(c) || u_isdigit(c);
}

inline bool is_word_continue(UChar32 c)
{
    return is_word_start(c) || (U_GET_GC_MASK(c) & U_GC_M_MASK) != 0;
}

inline bool is_apostrophe(UChar32 c)
{
    return c == '\'' || c == 0x2019;
}

inline bool is_whitespace(UChar32 c)
{
    return u_isUWhiteSpace(c) != 0;
}

inline UChar32 ascii_lower(UChar32 c)
{
    return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c;
}

inline bool starts_with_ci(const std::vector<CodePoint>& cps, std::size_t at, std::string_view prefix)
{
    if (at + prefix.size() > cps.size())
        return false;
    for (std::size_t k = 0; k < prefix.size(); ++k)
        if (ascii_lower(cps[at + k].cp) != static_cast<UChar32>(prefix[k]))
            return false;
    return true;
}

inline bool starts_url(const std::vector<CodePoint>& cps, std::size_t at)
{
    return starts_with_ci(cps, at, "http://") || starts_with_ci(cps, at, "https://") ||
           starts_with_ci(cps, at, "www.");
}

} // namespace detail

inline std::vector<Token> tokenize(std::string_view raw)
{
    using namespace detail;
    const auto cps = decode_utf8(raw);
    const std::size_t n = cps.size();
    std::vector<Token> tokens;

    std::size_t i = 0;
    while (i < n) {
        const UChar32 c = cps[i].cp;
        const bool at_boundary = i == 0 || !is_word_continue(cps[i - 1].cp);

        if (at_boundary && starts_url(cps, i)) {
            while (i < n && !is_whitespace(cps[i].cp))
                ++i;
            continue;
        }

        if (c == '@' && i + 1 < n && (is_word_start(cps[i + 1].cp) || cps[i + 1].cp == '_')) {
            ++i;
            while (i < n) {
                const UChar32 d = cps[i].cp;
                if (is_word_continue(d) || d == '_')
                    ++i;
                else if (is_apostrophe(d) && i + 1 < n && is_word_continue(cps[i + 1].cp))
                    ++i;
                else
                    break;
            }
            continue;
        }

        if (!is_word_start(c)) {
            ++i;
            continue;
        }

        const std::size_t start = i;
        bool apostrophe_used = false;
        std::string word;
        while (i < n) {
            const UChar32 d = cps[i].cp;
            if (is_word_continue(d)) {
                word.append(raw.substr(cps[i].byte, cps[i].length));
                ++i;
            } else if (!apostrophe_used && is_apostrophe(d) && i + 1 < n && is_word_start(cps[i + 1].cp)) {
                apostrophe_used = true;
                word.push_back('\'');
                ++i;
            } else {
                break;
            }
        }
        tokens.push_back({text::fold_case(word), start, i});
    }
    return tokens;
}

inline std::set<std::string> unique_tokens(std::span<const Token> tokens)
{
    std::set<std::string> out;
    for (const auto& t : tokens)
        out.insert(t.text);
    return out;
}

/// Token texts only, in order.
inline std::vector<std::string> token_texts(std::span<const Token> tokens)
{
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        out.push_back(t.text);
    return out;
}

} // namespace valence
