#pragma once

// Flat result tables and their CSV / JSON encodings.
//
// Numbers are rounded to 12 significant digits when they enter a table, so
// the CSV text carries the stored value exactly and parse(serialize(t)) == t.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qcovert::cli {

inline constexpr int kSignificantDigits = 12;

/// Empty cell, number, flag or text.
using Cell = std::variant<std::monostate, double, bool, std::string>;

/// "%.12g", with "inf", "-inf" and "nan" for non-finite values.
std::string format_number(double x);
/// x rounded to kSignificantDigits, i.e. the value format_number prints.
double round_significant(double x);

class Table {
public:
    Table() = default;
    explicit Table(std::vector<std::string> header);

    /// Throws std::invalid_argument on a column-count mismatch. Doubles are
    /// rounded to kSignificantDigits.
    void add_row(std::vector<Cell> row);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    std::size_t column(std::string_view name) const;

    bool operator==(const Table&) const = default;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// RFC-4180 style: comma separated, '\n' line ends, header row first. Text
/// that would read back as another type (empty, numeric, true/false) is quoted.
std::string to_csv(const Table& t);

/// Inverse of to_csv. Accepts '\n' or "\r\n" line ends. Quoted fields are
/// text; unquoted fields are typed as empty, bool, number or text in that
/// order. Throws std::invalid_argument on malformed input.
Table parse_csv(std::string_view text);

/// Key/value pairs echoed under "config" in JSON output, in insertion order.
using ConfigEntries = std::vector<std::pair<std::string, Cell>>;

/// {"config": {...}, "rows": [{column: value, ...}, ...]}, pretty printed.
/// Non-finite numbers are written as the strings "inf", "-inf", "nan".
std::string to_json(const Table& t, const ConfigEntries& config);

}  // namespace qcovert::cli
