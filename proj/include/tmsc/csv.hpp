#ifndef TMSC_CSV_HPP
#define TMSC_CSV_HPP

#include <string>
#include <vector>

namespace tmsc::csv {

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    // Column index for a header name, -1 if absent.
    int column(const std::string& name) const;
};

// Reads a numeric CSV with a mandatory header line. Throws IoError on
// missing file, ragged rows, or unparseable numbers.
Table read_numeric(const std::string& path);

// Serializes a double so that reading it back reproduces the same bits.
std::string format_exact(double v);

// Fixed-precision formatting for trace-style columns.
std::string format_fixed(double v, int digits);

std::vector<std::string> split_line(const std::string& line);

double parse_double(const std::string& field, const std::string& context);

}  // namespace tmsc::csv

#endif  // TMSC_CSV_HPP
