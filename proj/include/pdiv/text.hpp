#pragma once

#include <charconv>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pdiv {

// Error raised by the text-format parsers (.dgm, .fn, .flt, point-cloud CSV).
// Line numbers are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Shortest decimal string that parses back to the same double (at most 17
// significant digits). Finite input only; callers render infinity as "inf".
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline bool is_infinity_token(std::string_view tok) {
    if (tok.size() != 3) return false;
    auto lower = [](char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c); };
    return lower(tok[0]) == 'i' && lower(tok[1]) == 'n' && lower(tok[2]) == 'f';
}

// Strict double parse: the whole token must be consumed and the result must
// be a finite number. "inf"/"nan" spellings are rejected here; callers that
// accept infinity check is_infinity_token first.
inline std::optional<double> parse_finite_double(std::string_view tok) {
    double value = 0.0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
    if (!std::isfinite(value)) return std::nullopt;  // from_chars accepts inf/nan spellings
    return value;
}

inline std::optional<long long> parse_integer(std::string_view tok) {
    long long value = 0;
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) return std::nullopt;
    return value;
}

// Splits text into lines; keeps empty lines so indices stay 1-based.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            if (start < text.size()) lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

// Whitespace-separated tokens of a line, with everything after '#' dropped.
inline std::vector<std::string_view> tokenize_line(std::string_view line) {
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

}  // namespace pdiv
