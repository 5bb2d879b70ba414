#include "susy_damp/output.hpp"

#include "susy_damp/commands.hpp"
#include "susy_damp/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace susy_damp {

std::string format_number(double v) {
    if (v == 0.0) return "0";
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw Error("number formatting failed");
    return std::string(buf.data(), end);
}

std::vector<double> make_grid(double t0, double t1, double dt) {
    if (!std::isfinite(t0) || !std::isfinite(t1) || !std::isfinite(dt)) throw ParameterError("grid bounds must be finite");
    if (!(dt > 0.0)) throw ParameterError("grid step must be positive");
    if (t1 < t0) throw ParameterError("grid end precedes grid start");
    const double span = (t1 - t0) / dt;
    const auto intervals = static_cast<long long>(std::floor(span + 1e-9));
    const double inverse = 1.0 / dt;
    const double per_unit = std::round(inverse);
    const bool integral = per_unit >= 1.0 && std::abs(inverse - per_unit) <= 1e-9 * per_unit;

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(intervals) + 1);
    for (long long i = 0; i <= intervals; ++i) {
        const double k = static_cast<double>(i);
        grid.push_back(integral ? t0 + k / per_unit : t0 + k * dt);
    }
    return grid;
}

namespace {

void write_row(const std::vector<std::string>& cells, std::ostream& os) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

}  // namespace

void write_csv(const Table& table, std::ostream& os) {
    for (const auto& [key, value] : table.metadata) os << "# " << key << '=' << value << '\n';
    write_row(table.header, os);
    for (const auto& row : table.rows) write_row(row, os);
}

void write_csv_file(const Table& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw cli::IoError("cannot open " + path + " for writing");
    write_csv(table, out);
    out.flush();
    if (!out) throw cli::IoError("failed writing " + path);
}

}  // namespace susy_damp
