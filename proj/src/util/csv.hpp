#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ilpg {

// RFC-4180-style CSV: comma separated, double-quote escaping, header row.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; -1 when absent.
    int column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

std::string csv_quote(std::string_view field);
void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

} // namespace ilpg
