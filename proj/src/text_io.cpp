#include "lexicluster/text_io.hpp"

#include "lexicluster/error.hpp"

#include <charconv>
#include <cmath>

namespace lexicluster {

std::optional<std::string_view> LineReader::next() {
    if (pos_ >= text_.size()) return std::nullopt;
    auto end = text_.find('\n', pos_);
    if (end == std::string_view::npos) end = text_.size();
    auto line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    ++line_;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::string_view trim(std::string_view s) {
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        auto start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::vector<std::string_view> split_on(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::uint64_t parse_count(std::string_view field, std::size_t line, bool allow_zero) {
    auto where = "line " + std::to_string(line) + ": ";
    if (!field.empty() && field.front() == '-') {
        std::int64_t v = 0;
        auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec == std::errc() && p == field.data() + field.size()) {
            throw Error(Errc::non_positive_integer, where + "negative value '" + std::string(field) + "'");
        }
        throw Error(Errc::malformed_line, where + "not an integer: '" + std::string(field) + "'");
    }
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || p != field.data() + field.size()) {
        throw Error(Errc::malformed_line, where + "not an integer: '" + std::string(field) + "'");
    }
    if (v == 0 && !allow_zero) throw Error(Errc::non_positive_integer, where + "zero where a positive value is required");
    return v;
}

double parse_real(std::string_view field, std::size_t line) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || p != field.data() + field.size() || !std::isfinite(v)) {
        throw Error(Errc::malformed_line, "line " + std::to_string(line) + ": not a real: '" + std::string(field) + "'");
    }
    return v;
}

std::pair<std::string_view, std::string_view> split_pair(std::string_view field, char sep, std::size_t line) {
    auto pos = field.find(sep);
    if (pos == std::string_view::npos || pos == 0 || pos + 1 == field.size()) {
        throw Error(Errc::malformed_line,
                    "line " + std::to_string(line) + ": expected 'a" + sep + "b', got '" + std::string(field) + "'");
    }
    return {field.substr(0, pos), field.substr(pos + 1)};
}

std::string format_real(double value) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, p);
}

}  // namespace lexicluster
