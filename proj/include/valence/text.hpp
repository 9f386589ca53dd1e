/// @file text.hpp
/// @brief Error types and small string utilities shared by the loaders and
/// report writers.

#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace valence {

/// Malformed input, located by source name and 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
          source_(std::move(source)),
          line_(line)
    {
    }

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// A file could not be opened or written.
class IoError : public std::runtime_error {
public:
    IoError(std::string path, const std::string& message)
        : std::runtime_error(path + ": " + message), path_(std::move(path))
    {
    }

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

namespace text {

inline bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t begin = 0;
    for (;;) {
        const auto pos = s.find(sep, begin);
        if (pos == std::string_view::npos) {
            parts.push_back(s.substr(begin));
            return parts;
        }
        parts.push_back(s.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

/// True when the (already trimmed) term contains whitespace, i.e. is a phrase.
inline bool has_internal_space(std::string_view term)
{
    for (char c : trim(term))
        if (is_space(c))
            return true;
    return false;
}

/// Full Unicode case folding of a UTF-8 string.
inline std::string fold_case(std::string_view utf8)
{
    bool ascii = true;
    for (unsigned char c : utf8)
        if (c >= 0x80) {
            ascii = false;
            break;
        }
    std::string out;
    if (ascii) {
        out.reserve(utf8.size());
        for (char c : utf8)
            out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
        return out;
    }
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
    u.foldCase(U_FOLD_CASE_DEFAULT);
    u.toUTF8String(out);
    return out;
}

/// Strict parse of a finite real; rejects trailing garbage.
inline std::optional<double> parse_real(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return std::nullopt;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

inline std::optional<long long> parse_int(std::string_view s)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    if (s.empty())
        return std::nullopt;
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        return std::nullopt;
    return value;
}

/// Shortest round-trip decimal form; integral values keep a ".0" suffix.
inline std::string format_real(double value)
{
    if (value == 0.0)
        value = 0.0; // drop the sign of negative zero
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    std::string out(buf, ptr);
    if (out.find_first_of(".eEn") == std::string::npos)
        out += ".0";
    return out;
}

/// Valence as written in word-list files: integers without a fraction.
inline std::string format_valence(double value)
{
    if (value == 0.0)
        value = 0.0;
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

/// Quote a CSV field when it contains a separator, quote or line break.
inline std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::ifstream open_input(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(path, "cannot open for reading");
    return in;
}

/// getline that also strips a trailing CR.
inline bool read_line(std::istream& in, std::string& line)
{
    if (!std::getline(in, line))
        return false;
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return true;
}

} // namespace text
} // namespace valence
