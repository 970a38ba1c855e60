#pragma once

// Small line/field helpers shared by the text codecs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexicluster {

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    /// Next line without its terminator, or nullopt at end of input.
    std::optional<std::string_view> next();
    /// 1-based number of the line last returned.
    std::size_t line_number() const { return line_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 0;
};

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_fields(std::string_view line);
std::vector<std::string_view> split_on(std::string_view s, char sep);

/// Parses a decimal count. Zero is rejected unless allow_zero; negative
/// values raise Errc::non_positive_integer, anything else non-numeric
/// raises Errc::malformed_line.
std::uint64_t parse_count(std::string_view field, std::size_t line, bool allow_zero);
double parse_real(std::string_view field, std::size_t line);
std::pair<std::string_view, std::string_view> split_pair(std::string_view field, char sep, std::size_t line);

/// Shortest text that parses back to the same double.
std::string format_real(double value);

}  // namespace lexicluster
