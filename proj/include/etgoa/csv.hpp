#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace etgoa {

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double v);

// Minimal CSV (no quoting; fields must not contain commas or newlines).
// I/O failures throw std::runtime_error carrying the path.
class CsvWriter {
 public:
    CsvWriter(std::filesystem::path path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& fields);
    void finish();  // flush and close, verifying the stream

 private:
    void write_line(const std::vector<std::string>& fields);

    std::filesystem::path path_;
    std::ofstream out_;
    std::size_t n_fields_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace etgoa
