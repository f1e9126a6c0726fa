#include "pneumodel/csv.hpp"

#include "pneumodel/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace pneumodel {

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    std::string s(buf);
    if (s == "-0") s = "0";
    return s;
}

std::string to_csv(const CsvTable& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) os << ',';
        os << table.header[i];
    }
    os << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.header.size()) {
            std::ostringstream err;
            err << "to_csv: row " << r << " has " << row.size() << " cells, header has "
                << table.header.size();
            throw ModelError(err.str());
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << csv_number(row[i]);
        }
        os << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string> split_cells(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

} // namespace

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (table.header.empty()) {
            table.header = split_cells(line);
            continue;
        }
        const std::vector<std::string> cells = split_cells(line);
        if (cells.size() != table.header.size()) {
            std::ostringstream err;
            err << "parse_csv: line " << line_no << ": expected " << table.header.size()
                << " cells, got " << cells.size();
            throw ModelError(err.str());
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& cell : cells) {
            const char* begin = cell.c_str();
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin || *end != '\0') {
                std::ostringstream err;
                err << "parse_csv: line " << line_no << ": not a number: '" << cell << "'";
                throw ModelError(err.str());
            }
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw ModelError("parse_csv: empty input");
    return table;
}

} // namespace pneumodel
