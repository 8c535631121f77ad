#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include "qcosym/core.hpp"

namespace qcosym::io {

// Shortest fixed-significance form; round-trips through strtod at
// precision >= 17.
inline std::string format_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
    return buf;
}

// Column-oriented CSV with '\n' line endings and '.' decimal separator.
inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns, int precision) {
    if (header.size() != columns.size())
        throw std::invalid_argument("write_csv: header/column count mismatch");
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& col : columns)
        if (col.size() != rows) throw std::invalid_argument("write_csv: ragged columns");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    for (std::size_t c = 0; c < header.size(); ++c)
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < columns.size(); ++c)
            out << format_double(columns[c][r], precision) << (c + 1 < columns.size() ? "," : "\n");
    out.flush();
    if (!out) throw IoError("write failed for '" + path + "'");
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;  // row-major

    std::vector<double> column(const std::string& name) const {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] != name) continue;
            std::vector<double> out;
            out.reserve(rows.size());
            for (const auto& row : rows) out.push_back(row[c]);
            return out;
        }
        throw IoError("csv column '" + name + "' not found");
    }
};

inline CsvTable read_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    CsvTable table;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = s.find(',', start);
            parts.push_back(s.substr(start, comma == std::string::npos ? comma : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return parts;
    };
    if (!std::getline(in, line)) throw IoError("empty csv file '" + path + "'");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.header = split(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto parts = split(line);
        if (parts.size() != table.header.size())
            throw IoError("ragged csv row in '" + path + "'");
        std::vector<double> row;
        row.reserve(parts.size());
        for (const auto& cell : parts) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end == cell.c_str() || *end != '\0')
                throw IoError("non-numeric csv cell '" + cell + "' in '" + path + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace qcosym::io
