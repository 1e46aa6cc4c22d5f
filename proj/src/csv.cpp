#include "etgoa/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace etgoa {

std::string format_double(double v) {
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

CsvWriter::CsvWriter(std::filesystem::path path, const std::vector<std::string>& header)
    : path_(std::move(path)), out_(path_, std::ios::binary), n_fields_(header.size()) {
    if (!out_) throw std::runtime_error("cannot open csv file for writing: " + path_.string());
    write_line(header);
}

void CsvWriter::write_line(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
    if (!out_.good()) throw std::runtime_error("write failed: " + path_.string());
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != n_fields_)
        throw std::invalid_argument("csv row width mismatch for " + path_.string());
    write_line(fields);
}

void CsvWriter::finish() {
    out_.flush();
    if (!out_.good()) throw std::runtime_error("flush failed: " + path_.string());
    out_.close();
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open csv file: " + path.string());

    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.peek() == EOF) break;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            if (fields.size() != table.header.size())
                throw std::runtime_error("ragged csv row in " + path.string());
            table.rows.push_back(std::move(fields));
        }
    }
    if (first) throw std::runtime_error("csv file has no header: " + path.string());
    return table;
}

}  // namespace etgoa
