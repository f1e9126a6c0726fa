#pragma once

#include <string>
#include <vector>

namespace pneumodel {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// Numeric cell format: 6 significant digits, negative zero collapsed to "0".
std::string csv_number(double v);

// Header plus rows, comma separated, '\n' line endings. Throws on a row whose
// width differs from the header.
std::string to_csv(const CsvTable& table);

// Strict inverse of to_csv for round-trip checks: first line is the header,
// every later non-empty line must hold header-width numeric cells.
CsvTable parse_csv(const std::string& text);

} // namespace pneumodel
