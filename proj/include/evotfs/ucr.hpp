#pragma once

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "evotfs/errors.hpp"
#include "evotfs/series.hpp"

namespace evotfs {

// UCR text format: one series per line, first field = label, remaining T
// fields = values. TAB- or comma-separated (plain whitespace accepted),
// '.' decimal point, scientific notation allowed.

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    auto is_sep = [](char c) { return c == '\t' || c == ',' || c == ' ' || c == '\r'; };
    while (i < line.size()) {
        while (i < line.size() && is_sep(line[i])) ++i;
        std::size_t start = i;
        while (i < line.size() && !is_sep(line[i])) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

inline bool parse_double(std::string_view s, double& out) {
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (first != last && *first == '+') ++first;  // from_chars rejects a leading '+'
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace detail

inline Dataset load_ucr(std::istream& in, const std::string& origin = "<stream>") {
    Dataset d;
    std::map<std::string, int, std::less<>> label_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto fields = detail::split_fields(line);
        if (fields.empty()) continue;  // skip blank lines
        if (fields.size() < 2)
            throw FormatError(origin + ": row " + std::to_string(line_no) + " has no values");
        std::size_t t = fields.size() - 1;
        if (d.series.empty()) {
            d.length = t;
        } else if (t != d.length) {
            throw FormatError(origin + ": row " + std::to_string(line_no) + " has " + std::to_string(t) +
                              " values, expected " + std::to_string(d.length));
        }
        std::string token(fields[0]);
        auto it = label_ids.find(token);
        int id;
        if (it == label_ids.end()) {
            id = static_cast<int>(label_ids.size());
            label_ids.emplace(token, id);
            d.label_names.push_back(token);
        } else {
            id = it->second;
        }
        LabeledSeries s;
        s.label = id;
        s.values.resize(t);
        for (std::size_t j = 0; j < t; ++j) {
            if (!detail::parse_double(fields[j + 1], s.values[j]))
                throw ParseError(origin + ": row " + std::to_string(line_no) + ", col " + std::to_string(j + 2) +
                                 ": not a number: '" + std::string(fields[j + 1]) + "'");
            // missing values must be imputed before loading
            if (!std::isfinite(s.values[j]))
                throw ParseError(origin + ": row " + std::to_string(line_no) + ", col " + std::to_string(j + 2) +
                                 ": non-finite value '" + std::string(fields[j + 1]) + "'");
        }
        d.series.push_back(std::move(s));
    }
    if (d.series.empty()) throw EmptyDataset(origin + ": no data rows");
    return d;
}

inline Dataset load_ucr(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    return load_ucr(in, path.string());
}

/// Shortest representation that round-trips the double exactly.
inline std::string format_value(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

inline void save_ucr(const Dataset& d, std::ostream& os) {
    for (const auto& s : d.series) {
        os << d.label_name(s.label);
        for (double v : s.values) os << '\t' << format_value(v);
        os << '\n';
    }
}

inline void save_ucr(const Dataset& d, const std::filesystem::path& path) {
    std::ofstream os(path);
    if (!os) throw FormatError("cannot write '" + path.string() + "'");
    save_ucr(d, os);
}

inline std::string to_ucr_string(const Dataset& d) {
    std::ostringstream os;
    save_ucr(d, os);
    return os.str();
}

}  // namespace evotfs
