#pragma once

// Command implementations behind the susy-damp executable.  Each command
// builds a Table (or report) from a plain request struct so it can be driven
// from the CLI, from tests, or from Python.

#include "susy_damp/errors.hpp"
#include "susy_damp/modes.hpp"
#include "susy_damp/output.hpp"
#include "susy_damp/verify.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace susy_damp::cli {

inline constexpr std::string_view kToolName = "susy-damp";

/// Exit codes of the executable.
enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsage = 2, kIo = 3 };

/// Inconsistent or missing command-line parameters.
class UsageError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Mode selection shared by `eval` and `sweep`.
struct ModeRequest {
    std::optional<double> beta;
    std::optional<double> omega0;
    std::optional<double> omega0_sq;
    std::optional<std::string> family;  // "seed" | "tilde"; default tilde iff gamma given
    std::optional<double> A;
    std::optional<double> B;
    std::optional<double> D;
    std::optional<double> amp;
    std::optional<double> phase;
};

struct GridRequest {
    double t0 = 0.0;
    double t1 = 10.0;
    double dt = 0.01;
};

struct EvalRequest {
    ModeRequest mode;
    std::optional<double> gamma;
    GridRequest grid{0.0, 1.0, 0.1};
};

enum class Metric { ValueAtT, MaxAbs, BlowupTime };

std::optional<Metric> parse_metric(std::string_view name);
std::string_view to_string(Metric m) noexcept;

struct SweepRequest {
    ModeRequest mode;
    std::vector<double> gammas;
    Metric metric = Metric::ValueAtT;
    double t = 0.0;                     // value_at_t
    GridRequest grid{0.0, 10.0, 1e-3};  // max_abs
};

/// Builds the ModeSpec described by `mode` (tilde when gamma is given).
/// Throws UsageError on inconsistent flags.
ModeSpec build_mode(const ModeRequest& mode, std::optional<double> gamma);

/// Figure n in 1..6 on t in [0, 10] step 0.01: t, seed mode, one column per gamma
/// (y~ for 1-3, antirestoring acceleration for 4-6).
Table figure_table(int n);

/// Columns t, y, dy, d2y, [a,] singular.  Rows inside the singular band keep
/// t, leave the numeric cells empty and set singular=1.
Table eval_table(const EvalRequest& req);

/// One row per gamma, in input order: gamma, metric value, singular flag.
Table sweep_table(const SweepRequest& req);

/// Key/value lines describing the blow-up instant of gamma.
std::vector<std::pair<std::string, std::string>> blowup_report(double gamma);

}  // namespace susy_damp::cli
