#include "util/csv.hpp"

#include "util/errors.hpp"

#include <fstream>
#include <sstream>

namespace ilpg {

int CsvTable::column(std::string_view name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool seen_any = false;
    bool record_open = false;

    auto end_field = [&] {
        record.push_back(field);
        field.clear();
    };
    auto end_record = [&] {
        end_field();
        if (!seen_any) {
            table.header = record;
            seen_any = true;
        } else {
            table.rows.push_back(record);
        }
        record.clear();
        record_open = false;
    };

    char c;
    while (in.get(c)) {
        if (in_quotes) {
            if (c == '"') {
                if (in.peek() == '"') {
                    in.get(c);
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        record_open = true;
        switch (c) {
            case '"': in_quotes = true; break;
            case ',': end_field(); break;
            case '\r': break;
            case '\n': end_record(); break;
            default: field.push_back(c);
        }
    }
    if (in_quotes) throw Error(ErrorCode::SchemaError, "unterminated quote in CSV input");
    if (record_open || !field.empty() || !record.empty()) end_record();
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open CSV file: " + path);
    return read_csv(in);
}

std::string csv_quote(std::string_view field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(fields[i]);
    }
    out << '\n';
}

} // namespace ilpg
