#include "cli/table.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace qcovert::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

bool needs_quotes(const std::string& s) {
    if (s.empty() || s == "true" || s == "false") return true;
    double ignored;
    if (parse_number(s, ignored)) return true;
    return s.find_first_of(",\"\r\n") != std::string::npos;
}

void append_field(std::string& out, const std::string& s, bool quote) {
    if (!quote) {
        out += s;
        return;
    }
    out += '"';
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_cell(std::string& out, const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return;
    if (const auto* d = std::get_if<double>(&c)) {
        out += format_number(*d);
    } else if (const auto* b = std::get_if<bool>(&c)) {
        out += *b ? "true" : "false";
    } else {
        const auto& s = std::get<std::string>(c);
        append_field(out, s, needs_quotes(s));
    }
}

Cell type_unquoted(const std::string& s) {
    if (s.empty()) return std::monostate{};
    if (s == "true") return true;
    if (s == "false") return false;
    double d;
    if (parse_number(s, d)) return d;
    return s;
}

ordered_json cell_to_json(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return nullptr;
    if (const auto* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d)) return format_number(*d);
        return *d;
    }
    if (const auto* b = std::get_if<bool>(&c)) return *b;
    return std::get<std::string>(c);
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, x);
    return buf;
}

double round_significant(double x) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_number(x).c_str(), nullptr);
}

Table::Table(std::vector<std::string> header) : header_(std::move(header)) {}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) {
        throw std::invalid_argument("table row has " + std::to_string(row.size()) + " cells, expected " +
                                    std::to_string(header_.size()));
    }
    for (Cell& c : row)
        if (auto* d = std::get_if<double>(&c)) *d = round_significant(*d);
    rows_.push_back(std::move(row));
}

std::size_t Table::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i)
        if (header_[i] == name) return i;
    throw std::out_of_range("no column named " + std::string(name));
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t i = 0; i < t.header().size(); ++i) {
        if (i) out += ',';
        append_field(out, t.header()[i], t.header()[i].find_first_of(",\"\r\n") != std::string::npos);
    }
    out += '\n';
    for (const auto& row : t.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            append_cell(out, row[i]);
        }
        out += '\n';
    }
    return out;
}

Table parse_csv(std::string_view text) {
    std::vector<std::vector<Cell>> records;
    std::vector<Cell> record;
    std::string field;
    bool quoted = false;
    std::size_t i = 0;

    auto end_field = [&] {
        record.push_back(quoted ? Cell{field} : type_unquoted(field));
        field.clear();
        quoted = false;
    };
    auto end_record = [&] {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    while (i < text.size()) {
        const char c = text[i];
        if (c == '"' && field.empty() && !quoted) {
            quoted = true;
            ++i;
            for (;;) {
                if (i >= text.size()) throw std::invalid_argument("csv: unterminated quoted field");
                if (text[i] == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        field += '"';
                        i += 2;
                        continue;
                    }
                    ++i;
                    break;
                }
                field += text[i++];
            }
            if (i < text.size() && text[i] != ',' && text[i] != '\n' && text[i] != '\r') {
                throw std::invalid_argument("csv: text after closing quote");
            }
        } else if (c == ',') {
            end_field();
            ++i;
        } else if (c == '\r' || c == '\n') {
            end_record();
            i += (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ? 2 : 1;
        } else {
            if (quoted) throw std::invalid_argument("csv: text after closing quote");
            field += c;
            ++i;
        }
    }
    if (!field.empty() || quoted || !record.empty()) end_record();
    if (records.empty()) throw std::invalid_argument("csv: missing header row");

    std::vector<std::string> header;
    for (const Cell& c : records.front()) {
        if (const auto* s = std::get_if<std::string>(&c)) {
            header.push_back(*s);
        } else {
            throw std::invalid_argument("csv: header fields must be text");
        }
    }
    Table t(std::move(header));
    for (std::size_t r = 1; r < records.size(); ++r) t.add_row(std::move(records[r]));
    return t;
}

std::string to_json(const Table& t, const ConfigEntries& config) {
    ordered_json doc;
    ordered_json cfg = ordered_json::object();
    for (const auto& [key, value] : config) cfg[key] = cell_to_json(value);
    doc["config"] = std::move(cfg);
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows()) {
        ordered_json obj = ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.header()[i]] = cell_to_json(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

}  // namespace qcovert::cli
