#ifndef SFWM_CSV_HPP
#define SFWM_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

namespace sfwm {

/// CSV with '#'-prefixed header lines and 9-significant-digit floats.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void comment(const std::string& line);
    void comments(const std::vector<std::string>& lines);
    void column_names(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);
    void close();

    static std::string format(double v);

private:
    std::ofstream out_;
    std::string path_;
};

}  // namespace sfwm

#endif
