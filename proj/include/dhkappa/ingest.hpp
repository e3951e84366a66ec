#pragma once

// Readers for the two CSV dataset layouts.
//
//   counts:  item_id,label,<cat1>,...,<catm>
//            one row per item: id, proposed label name, m non-negative counts
//   raw:     item_id,label,annotator_1,...,annotator_N
//            one row per item: id, proposed label name, N category names
//
// Comma separated, UTF-8, no quoting. Surrounding spaces/tabs in a cell and a
// trailing '\r' are ignored, as are blank lines. Errors carry the 1-based
// line number of the offending line.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dhkappa/error.hpp"
#include "dhkappa/oracle.hpp"
#include "dhkappa/types.hpp"

namespace dhkappa {

enum class Layout { Counts, Raw };

struct CountsDataset {
    CategorySet categories;
    std::vector<std::string> item_ids;
    AnnotationCounts counts;
    ProposedLabels labels;
    std::vector<std::string> warnings;
};

struct RawDataset {
    CategorySet categories;
    std::vector<std::string> item_ids;
    RawAssignments raw;
    ProposedLabels labels;
    std::vector<std::string> warnings;

    AnnotationCounts counts() const { return aggregate(raw, categories.size()); }
};

namespace detail {

struct CsvLine {
    std::size_t number;  // 1-based
    std::vector<std::string> cells;
};

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

inline std::vector<CsvLine> split_lines(std::string_view text) {
    std::vector<CsvLine> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++number;
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        CsvLine parsed{number, {}};
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            auto cell = line.substr(start, comma == std::string_view::npos ? line.size() - start : comma - start);
            parsed.cells.emplace_back(trim(cell));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        out.push_back(std::move(parsed));
    }
    return out;
}

inline void require_leading_columns(const CsvLine& header) {
    if (header.cells.size() < 2 || header.cells[0] != "item_id" || header.cells[1] != "label")
        throw Error(ErrorKind::MalformedRow, "header must start with 'item_id,label'", header.number);
}

inline void require_width(const CsvLine& line, std::size_t width) {
    if (line.cells.size() != width)
        throw Error(ErrorKind::MalformedRow,
                    "expected " + std::to_string(width) + " cells, found " + std::to_string(line.cells.size()),
                    line.number);
}

inline void require_value(const CsvLine& line, std::size_t cell, const char* what) {
    if (line.cells[cell].empty())
        throw Error(ErrorKind::MalformedValue, std::string("empty ") + what, line.number);
}

inline Count parse_count(const std::string& cell, std::size_t line) {
    Count value = 0;
    const char* first = cell.data();
    const char* last = first + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (cell.empty() || ec != std::errc() || ptr != last)
        throw Error(ErrorKind::MalformedValue, "'" + cell + "' is not a non-negative integer count", line);
    return value;
}

// Duplicate ids are legal (each row is its own item) but worth flagging.
inline void note_duplicate(std::unordered_map<std::string, std::size_t>& seen, const CsvLine& line,
                           std::vector<std::string>& warnings) {
    auto [it, inserted] = seen.emplace(line.cells[0], line.number);
    if (!inserted)
        warnings.push_back("line " + std::to_string(line.number) + ": duplicate item_id '" + line.cells[0] +
                           "' (first seen on line " + std::to_string(it->second) + ")");
}

inline CategorySet categories_at(std::vector<std::string> names, std::size_t line) {
    try {
        return CategorySet(std::move(names));
    } catch (const Error& e) {
        throw Error(ErrorKind::MalformedRow, e.what(), line);
    }
}

}  // namespace detail

inline CountsDataset parse_counts(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::EmptyDataset, "input has no header row");
    const auto& header = lines.front();
    detail::require_leading_columns(header);
    if (header.cells.size() < 3)
        throw Error(ErrorKind::MalformedRow, "header names no categories", header.number);
    CategorySet categories = detail::categories_at(
        std::vector<std::string>(header.cells.begin() + 2, header.cells.end()), header.number);
    if (lines.size() == 1) throw Error(ErrorKind::EmptyDataset, "input has no data rows");

    const std::size_t m = categories.size();
    std::vector<std::string> ids;
    std::vector<std::size_t> labels;
    std::vector<Count> flat;
    std::vector<std::string> warnings;
    std::unordered_map<std::string, std::size_t> seen;
    std::uint64_t annotators = 0;

    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& line = lines[r];
        detail::require_width(line, m + 2);
        detail::require_value(line, 0, "item_id");
        detail::require_value(line, 1, "label");
        auto label = categories.find(line.cells[1]);
        if (!label) throw Error(ErrorKind::UnknownCategory, "'" + line.cells[1] + "'", line.number);

        std::uint64_t total = 0;
        for (std::size_t j = 0; j < m; ++j) {
            const Count c = detail::parse_count(line.cells[j + 2], line.number);
            flat.push_back(c);
            total += c;
        }
        if (r == 1) {
            annotators = total;
            if (annotators < 2)
                throw Error(ErrorKind::InsufficientAnnotators,
                            "row sums to " + std::to_string(total) + "; at least 2 annotators are required",
                            line.number);
        } else if (total != annotators) {
            throw Error(ErrorKind::InconsistentAnnotatorCount,
                        "row sums to " + std::to_string(total) + ", expected " + std::to_string(annotators),
                        line.number);
        }
        detail::note_duplicate(seen, line, warnings);
        ids.push_back(line.cells[0]);
        labels.push_back(*label);
    }

    const std::size_t n = ids.size();
    return CountsDataset{std::move(categories), std::move(ids), AnnotationCounts(n, m, std::move(flat)),
                         ProposedLabels(std::move(labels), m), std::move(warnings)};
}

inline RawDataset parse_raw(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.empty()) throw Error(ErrorKind::EmptyDataset, "input has no header row");
    const auto& header = lines.front();
    detail::require_leading_columns(header);
    const std::size_t big_n = header.cells.size() - 2;
    if (big_n == 0) throw Error(ErrorKind::InsufficientAnnotators, "header names no annotators", header.number);
    for (std::size_t k = 0; k < big_n; ++k)
        if (header.cells[k + 2] != "annotator_" + std::to_string(k + 1))
            throw Error(ErrorKind::MalformedRow,
                        "expected column 'annotator_" + std::to_string(k + 1) + "', found '" +
                            header.cells[k + 2] + "'",
                        header.number);
    if (big_n < 2)
        throw Error(ErrorKind::InsufficientAnnotators, "at least 2 annotators are required", header.number);
    if (lines.size() == 1) throw Error(ErrorKind::EmptyDataset, "input has no data rows");

    std::vector<std::string> names;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& line = lines[r];
        detail::require_width(line, big_n + 2);
        detail::require_value(line, 0, "item_id");
        for (std::size_t c = 1; c < line.cells.size(); ++c) {
            detail::require_value(line, c, c == 1 ? "label" : "annotator choice");
            names.push_back(line.cells[c]);
        }
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    CategorySet categories(std::move(names));

    std::vector<std::string> ids;
    std::vector<std::size_t> labels;
    std::vector<std::size_t> choices;
    std::vector<std::string> warnings;
    std::unordered_map<std::string, std::size_t> seen;
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto& line = lines[r];
        detail::note_duplicate(seen, line, warnings);
        ids.push_back(line.cells[0]);
        labels.push_back(*categories.find(line.cells[1]));
        for (std::size_t k = 0; k < big_n; ++k) choices.push_back(*categories.find(line.cells[k + 2]));
    }

    const std::size_t n = ids.size();
    const std::size_t m = categories.size();
    return RawDataset{std::move(categories), std::move(ids), RawAssignments(n, big_n, std::move(choices)),
                      ProposedLabels(std::move(labels), m), std::move(warnings)};
}

/// Counts-layout text for a dataset; parse_counts() reads it back unchanged.
inline std::string serialize_counts(const CategorySet& categories, const std::vector<std::string>& item_ids,
                                    const AnnotationCounts& counts, const ProposedLabels& labels) {
    std::string out = "item_id,label";
    for (const auto& name : categories.names()) out += "," + name;
    out += '\n';
    for (std::size_t i = 0; i < counts.items(); ++i) {
        out += item_ids.at(i);
        out += ',';
        out += categories.name(labels[i]);
        for (Count c : counts.row(i)) {
            out += ',';
            out += std::to_string(c);
        }
        out += '\n';
    }
    return out;
}

inline std::string serialize_counts(const CountsDataset& d) {
    return serialize_counts(d.categories, d.item_ids, d.counts, d.labels);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw Error(ErrorKind::Io, "failed reading '" + path + "'");
    return std::move(buffer).str();
}

}  // namespace dhkappa
