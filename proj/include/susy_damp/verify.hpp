#pragma once

// Named verification suite: every identity the library relies on, checked at
// seeded random admissible points with a pass threshold and the worst point.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace susy_damp {

enum class Scope { All, Core, Riccati, Factorization, Intertwining, Eq10, Limits, Wronskian, Oracle };

std::optional<Scope> parse_scope(std::string_view name);
std::string_view to_string(Scope scope) noexcept;
/// Names accepted by parse_scope, in canonical order.
std::vector<std::string_view> scope_names();

struct WorstPoint {
    std::optional<double> beta;
    std::optional<double> omega0;
    std::optional<double> gamma;
    double t = 0.0;
};

struct CheckReport {
    std::string check_name;
    double max_residual = 0.0;
    double threshold = 0.0;
    bool passed = false;  // max_residual <= threshold
    WorstPoint worst_point;
};

/// Default number of random points per sampled check.
inline constexpr int kPointsPerCheck = 1000;

/// Runs every check in `scope`, sorted by check_name.  Deterministic in (scope, seed);
/// failures are reported, never thrown.
std::vector<CheckReport> run_suite(Scope scope, std::uint64_t seed);

/// Registered check names for `scope`, sorted.
std::vector<std::string> check_names(Scope scope = Scope::All);

bool all_passed(const std::vector<CheckReport>& reports) noexcept;

/// JSON array of {check_name, max_residual, threshold, passed, worst_point}.
std::string report_to_json(const std::vector<CheckReport>& reports, int indent = 2);

}  // namespace susy_damp
