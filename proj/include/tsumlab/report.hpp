#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "tsumlab/error.hpp"
#include "tsumlab/io.hpp"

namespace tsumlab {

inline constexpr int kSchemaVersion = 1;

/// Report skeleton with the schema version and report kind.
inline Json make_report(const std::string& kind) { return Json{{"schema_version", kSchemaVersion}, {"report", kind}}; }

/// Fixed-column CSV. An empty table still prints its header.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add(std::vector<std::string> row) {
        if (row.size() != header_.size()) throw Error(Errc::InvalidParameters, "csv row width differs from header");
        rows_.push_back(std::move(row));
    }

    std::size_t size() const noexcept { return rows_.size(); }
    const std::vector<std::string>& header() const noexcept { return header_; }

    std::string str() const {
        std::string out;
        append_line(out, header_);
        for (const auto& r : rows_) append_line(out, r);
        return out;
    }

private:
    static std::string quote(const std::string& cell) {
        if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
        std::string q = "\"";
        for (char c : cell) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }

    static void append_line(std::string& out, const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += quote(cells[i]);
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Fixed six-decimal formatting, locale independent.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace tsumlab
