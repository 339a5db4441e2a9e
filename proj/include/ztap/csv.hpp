#pragma once

#include <filesystem>
#include <fstream>

#include "ztap/common.hpp"

namespace ztap {

// Minimal CSV support for the toolkit's own files: comma-separated, no
// quoting (none of our fields contain commas), one header row.
std::vector<std::string> split_csv_line(const std::string& line);

class CsvReader {
public:
    explicit CsvReader(const std::filesystem::path& path);

    const std::vector<std::string>& header() const { return header_; }
    size_t column(const std::string& name) const;  // throws if missing
    bool next(std::vector<std::string>& fields);
    size_t line_number() const { return line_no_; }

private:
    std::ifstream in_;
    std::filesystem::path path_;
    std::vector<std::string> header_;
    size_t line_no_ = 0;
};

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void row(const std::vector<std::string>& fields);

private:
    std::ofstream out_;
};

}  // namespace ztap
