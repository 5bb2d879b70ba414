#pragma once

// Byte-stable tabular output: shortest round-trip decimal formatting and
// '#'-prefixed metadata ahead of an RFC-4180 style header.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace susy_damp {

/// Shortest decimal string that parses back to exactly `v` ('.' separator,
/// at most 17 significant digits).  Negative zero prints as "0".
std::string format_number(double v);

/// t0, t0 + dt, ... up to t1 (inclusive when t1 - t0 is a multiple of dt).
/// When 1/dt is an integer n the points are t0 + i/n, which keeps grids such
/// as step 0.01 free of accumulated representation error.
/// Throws ParameterError for dt <= 0 or t1 < t0.
std::vector<double> make_grid(double t0, double t1, double dt);

struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Writes "# key=value" lines, the header, then the rows, '\n' terminated.
void write_csv(const Table& table, std::ostream& os);

/// Throws IoError if the file cannot be written.
void write_csv_file(const Table& table, const std::string& path);

}  // namespace susy_damp
