#include "sfwm/csv.hpp"

#include <cstdio>

#include "sfwm/errors.hpp"

namespace sfwm {

CsvWriter::CsvWriter(const std::string& path) : path_(path) {
    out_.open(path, std::ios::binary); // binary: byte-identical outputs
    if (!out_) throw ConfigError("output-unwritable", "cannot open " + path + " for writing");
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::comments(const std::vector<std::string>& lines) {
    for (const auto& l : lines) comment(l);
}

void CsvWriter::column_names(const std::vector<std::string>& names) {
    for (std::size_t i = 0; i < names.size(); ++i)
        out_ << names[i] << (i + 1 < names.size() ? "," : "\n");
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void CsvWriter::row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i)
        out_ << format(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void CsvWriter::raw_row(const std::string& line) { out_ << line << "\n"; }

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw ConfigError("output-unwritable", "write failed for " + path_);
}

}  // namespace sfwm
