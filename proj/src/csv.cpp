#include "ztap/csv.hpp"

#include <algorithm>

namespace ztap {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    if (!fields.empty() && !fields.back().empty() && fields.back().back() == '\r')
        fields.back().pop_back();
    return fields;
}

CsvReader::CsvReader(const std::filesystem::path& path) : path_(path) {
    in_.open(path);
    if (!in_) throw DataError("unreadable-file", "cannot open CSV file: " + path.string());
    std::string line;
    if (!std::getline(in_, line))
        throw DataError("bad-csv", "CSV file is empty: " + path.string());
    header_ = split_csv_line(line);
    line_no_ = 1;
}

size_t CsvReader::column(const std::string& name) const {
    auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end())
        throw DataError("bad-csv",
                        "missing column '" + name + "' in CSV file: " + path_.string());
    return static_cast<size_t>(it - header_.begin());
}

bool CsvReader::next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (line.empty() || line == "\r") continue;
        fields = split_csv_line(line);
        if (fields.size() != header_.size())
            throw DataError("bad-csv", "line " + std::to_string(line_no_) + " of " +
                                           path_.string() + " has " +
                                           std::to_string(fields.size()) + " fields, expected " +
                                           std::to_string(header_.size()));
        return true;
    }
    return false;
}

CsvWriter::CsvWriter(const std::filesystem::path& path) {
    out_.open(path, std::ios::trunc);
    if (!out_) throw DataError("unwritable-file", "cannot write CSV file: " + path.string());
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << fields[i];
    }
    out_ << '\n';
}

}  // namespace ztap
