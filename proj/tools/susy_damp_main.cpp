// susy-damp: evaluate Riccati-parameter damping modes, emit figure data,
// run parameter sweeps and the verification suite.

#include "susy_damp/commands.hpp"
#include "susy_damp/output.hpp"
#include "susy_damp/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cli = susy_damp::cli;

namespace {

constexpr const char* kUnitsNote =
    "All quantities are dimensionless: the time unit is absorbed into beta, omega0 and gamma.";

std::string json_scalar(const nlohmann::json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    throw cli::UsageError("config values must be numbers, strings or arrays of them");
}

// Applies a flat JSON object to `app`: every key must name one of its
// options; values given on the command line win.
void apply_config(CLI::App& app, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw cli::IoError("cannot read config file " + path);
    nlohmann::json cfg;
    try {
        in >> cfg;
    } catch (const nlohmann::json::exception& e) {
        throw cli::UsageError("config file " + path + " is not valid JSON: " + e.what());
    }
    if (!cfg.is_object()) throw cli::UsageError("config file must hold a flat JSON object");
    for (const auto& [key, value] : cfg.items()) {
        if (key == "config") throw cli::UsageError("config files cannot nest --config");
        CLI::Option* opt = app.get_option_no_throw("--" + key);
        if (opt == nullptr) throw cli::UsageError("unknown config key '" + key + "'");
        if (opt->count() > 0) continue;
        if (value.is_array()) {
            for (const auto& item : value) opt->add_result(json_scalar(item));
        } else {
            opt->add_result(json_scalar(value));
        }
        opt->run_callback();
    }
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path == "-") return std::cout;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw cli::IoError("cannot open " + path + " for writing");
    return file;
}

void emit(const susy_damp::Table& table, const std::string& path) {
    std::ofstream file;
    std::ostream& os = open_output(path, file);
    susy_damp::write_csv(table, os);
    os.flush();
    if (!os) throw cli::IoError("failed writing " + path);
}

void add_mode_options(CLI::App& sub, cli::ModeRequest& m) {
    sub.add_option("--beta", m.beta, "Friction constant per unit mass (> 0)");
    sub.add_option("--omega0", m.omega0, "Natural frequency (> 0)");
    sub.add_option("--omega0-sq", m.omega0_sq, "Squared natural frequency, alternative to --omega0");
    sub.add_option("--family", m.family, "seed | tilde (default: tilde iff a gamma is given)");
    sub.add_option("--A", m.A, "Coefficient A of the exponential / polynomial form");
    sub.add_option("--B", m.B, "Coefficient B of the exponential / polynomial form");
    sub.add_option("--D", m.D, "Second coefficient of the critical tilde family");
    sub.add_option("--amp", m.amp, "Amplitude A~ of the trigonometric / hyperbolic form");
    sub.add_option("--phase", m.phase, "Phase phi (radians)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("Riccati-parameter damping modes of the free damped oscillator.\n") + kUnitsNote,
                 std::string(cli::kToolName)};
    app.set_version_flag("--version", std::string(cli::kToolName) + " " + SUSY_DAMP_VERSION);
    app.require_subcommand(1);

    std::string config_path;
    std::string out;

    // figure
    int figure_number = 0;
    auto* figure = app.add_subcommand("figure", "Write the data of reference figure N (1-6) as CSV");
    figure->add_option("N", figure_number, "Figure number")->required()->check(CLI::Range(1, 6));
    figure->add_option("--out", out, "Output CSV path ('-' for stdout)")->required();

    // eval
    cli::EvalRequest eval_req;
    std::optional<double> eval_gamma;
    auto* eval = app.add_subcommand("eval", "Evaluate one mode and its derivatives on a time grid");
    add_mode_options(*eval, eval_req.mode);
    eval->add_option("--gamma", eval_gamma, "Riccati parameter (selects the tilde family)");
    eval->add_option("--t0", eval_req.grid.t0, "Grid start")->capture_default_str();
    eval->add_option("--t1", eval_req.grid.t1, "Grid end")->capture_default_str();
    eval->add_option("--dt", eval_req.grid.dt, "Grid step")->capture_default_str();
    eval->add_option("--out", out, "Output CSV path ('-' for stdout)")->required();
    eval->add_option("--config", config_path, "Flat JSON object of option values");

    // sweep
    cli::SweepRequest sweep_req;
    std::string metric_name = "value_at_t";
    auto* sweep = app.add_subcommand("sweep", "Evaluate a metric for each gamma of a list");
    add_mode_options(*sweep, sweep_req.mode);
    sweep->add_option("--gammas", sweep_req.gammas, "Comma-separated gamma values")->delimiter(',');
    sweep->add_option("--metric", metric_name, "value_at_t | max_abs | blowup_time")
        ->check(CLI::IsMember({"value_at_t", "max_abs", "blowup_time"}))
        ->capture_default_str();
    sweep->add_option("--t", sweep_req.t, "Evaluation time for value_at_t")->capture_default_str();
    sweep->add_option("--t0", sweep_req.grid.t0, "Scan start for max_abs")->capture_default_str();
    sweep->add_option("--t1", sweep_req.grid.t1, "Scan end for max_abs")->capture_default_str();
    sweep->add_option("--dt", sweep_req.grid.dt, "Scan step for max_abs")->capture_default_str();
    sweep->add_option("--out", out, "Output CSV path ('-' for stdout)")->required();
    sweep->add_option("--config", config_path, "Flat JSON object of option values");

    // verify
    std::string scope_name = "all";
    std::uint64_t seed = 0;
    std::vector<std::string> scopes;
    for (auto s : susy_damp::scope_names()) scopes.emplace_back(s);
    auto* verify = app.add_subcommand("verify", "Run the verification suite and write a JSON report");
    verify->add_option("--scope", scope_name, "Check group")->check(CLI::IsMember(scopes))->capture_default_str();
    verify->add_option("--seed", seed, "Seed for the random test points")->capture_default_str();
    verify->add_option("--out", out, "Output JSON path ('-' for stdout)")->required();

    // blowup
    double blowup_gamma = 0.0;
    auto* blowup = app.add_subcommand("blowup", "Report the blow-up instant -1/gamma");
    blowup->add_option("--gamma", blowup_gamma, "Riccati parameter (nonzero)")->required();

    // Config keys must be validated against the chosen subcommand after the
    // command line has been parsed, so --out can come from the file too.
    for (auto* sub : {eval, sweep}) sub->get_option("--out")->required(false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kSuccess : cli::kUsage;
    }

    try {
        for (auto* sub : {eval, sweep}) {
            if (!sub->parsed()) continue;
            if (!config_path.empty()) apply_config(*sub, config_path);
            if (out.empty()) throw cli::UsageError("--out is required");
        }

        if (figure->parsed()) {
            emit(cli::figure_table(figure_number), out);
        } else if (eval->parsed()) {
            eval_req.gamma = eval_gamma;
            emit(cli::eval_table(eval_req), out);
        } else if (sweep->parsed()) {
            sweep_req.metric = *cli::parse_metric(metric_name);
            emit(cli::sweep_table(sweep_req), out);
        } else if (verify->parsed()) {
            const auto reports = susy_damp::run_suite(*susy_damp::parse_scope(scope_name), seed);
            std::ofstream file;
            std::ostream& os = open_output(out, file);
            os << susy_damp::report_to_json(reports) << '\n';
            os.flush();
            if (!os) throw cli::IoError("failed writing " + out);
            std::ostream& log = out == "-" ? std::cerr : std::cout;
            for (const auto& r : reports)
                log << (r.passed ? "PASS " : "FAIL ") << r.check_name << "  max_residual="
                    << susy_damp::format_number(r.max_residual) << "  threshold=" << susy_damp::format_number(r.threshold)
                    << '\n';
            return susy_damp::all_passed(reports) ? cli::kSuccess : cli::kVerificationFailed;
        } else if (blowup->parsed()) {
            for (const auto& [key, value] : cli::blowup_report(blowup_gamma)) std::cout << key << '=' << value << '\n';
        }
    } catch (const cli::UsageError& e) {
        std::cerr << cli::kToolName << ": " << e.what() << '\n';
        return cli::kUsage;
    } catch (const cli::IoError& e) {
        std::cerr << cli::kToolName << ": " << e.what() << '\n';
        return cli::kIo;
    } catch (const susy_damp::Error& e) {
        std::cerr << cli::kToolName << ": " << e.what() << '\n';
        return cli::kUsage;
    }
    return cli::kSuccess;
}
