#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tsclust/series.hpp"

namespace tsclust {

// Parse failure carrying 1-based line and field coordinates.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::filesystem::path& path, std::size_t line, std::size_t field,
               const std::string& message)
        : std::runtime_error(path.string() + ":" + std::to_string(line) + ": field " +
                             std::to_string(field) + ": " + message) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

inline double parse_number(std::string_view field, const std::filesystem::path& path,
                           std::size_t line, std::size_t column) {
    field = trim(field);
    if (field.empty()) throw ParseError(path, line, column, "empty field");
    if (field.front() == '+') field.remove_prefix(1);  // from_chars rejects a leading '+'
    double value = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(path, line, column,
                         "not a number: '" + std::string(field) + "'");
    return value;
}

}  // namespace detail

// Reads a UCR-style text file: one series per non-empty line, first field the
// integer class label, remaining fields the sampled values. The delimiter
// (comma or tab) is detected from the first data line; LF and CRLF endings
// are both accepted.
inline std::vector<RawSeries> load_ucr(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path.string());

    std::vector<RawSeries> out;
    std::string line;
    std::size_t line_no = 0;
    char delim = '\0';
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view record = detail::trim(line);
        if (record.empty()) continue;

        if (delim == '\0') {
            if (record.find(',') != std::string_view::npos)
                delim = ',';
            else if (record.find('\t') != std::string_view::npos)
                delim = '\t';
            else
                throw ParseError(path, line_no, 1,
                                 "cannot detect delimiter (expected comma or tab)");
        }

        RawSeries series;
        series.id = out.size();
        std::size_t field_no = 0;
        std::size_t start = 0;
        while (start <= record.size()) {
            std::size_t end = record.find(delim, start);
            if (end == std::string_view::npos) end = record.size();
            ++field_no;
            const double value = detail::parse_number(record.substr(start, end - start), path,
                                                      line_no, field_no);
            if (field_no == 1)
                series.label = static_cast<int>(std::llround(value));
            else
                series.values.push_back(value);
            start = end + 1;
            if (end == record.size()) break;
        }
        if (series.values.size() < 2)
            throw ParseError(path, line_no, field_no,
                             "a series needs at least 2 values");
        out.push_back(std::move(series));
    }
    if (out.empty()) throw ParseError(path, line_no == 0 ? 1 : line_no, 1, "file contains no data");
    return out;
}

}  // namespace tsclust
