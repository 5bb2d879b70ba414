#include "susy_damp/commands.hpp"

#include "susy_damp/core.hpp"
#include "susy_damp/figures.hpp"
#include "susy_damp/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace susy_damp::cli {

namespace {

std::string tool_version() { return std::string(kToolName) + " " + SUSY_DAMP_VERSION; }

std::string join_numbers(const std::vector<double>& xs, char sep = ';') {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += sep;
        out += format_number(xs[i]);
    }
    return out;
}

std::string grid_string(const GridRequest& g) {
    return format_number(g.t0) + ":" + format_number(g.t1) + ":" + format_number(g.dt);
}

std::string describe(const Coefficients& c) {
    if (const auto* ab = std::get_if<AB>(&c)) return "A=" + format_number(ab->A) + ";B=" + format_number(ab->B);
    const auto& ap = std::get<AmpPhase>(c);
    return "amp=" + format_number(ap.amplitude) + ";phase=" + format_number(ap.phase);
}

// Critical tilde specs hold (A, D) in the AB slot.
std::string coefficient_string(const ModeSpec& spec) {
    if (spec.family() == Family::Tilde && spec.regime().tag == RegimeTag::Critical) {
        const auto& ab = std::get<AB>(spec.coefficients());
        return "A=" + format_number(ab.A) + ";D=" + format_number(ab.B);
    }
    return describe(spec.coefficients());
}

void add_mode_metadata(Table& table, const ModeSpec& spec) {
    const auto& p = spec.params();
    table.metadata.emplace_back("regime", std::string(to_string(spec.regime().tag)));
    table.metadata.emplace_back("family", spec.family() == Family::Seed ? "seed" : "tilde");
    table.metadata.emplace_back("beta", format_number(p.beta()));
    table.metadata.emplace_back("omega0_sq", format_number(p.omega0_sq()));
    table.metadata.emplace_back("alpha_sq", format_number(p.alpha_sq()));
    table.metadata.emplace_back("coefficients", coefficient_string(spec));
}

Table start_table(std::string_view command) {
    Table t;
    t.metadata.emplace_back("tool", tool_version());
    t.metadata.emplace_back("command", std::string(command));
    return t;
}

DampingParams build_params(const ModeRequest& m) {
    if (!m.beta) throw UsageError("--beta is required");
    if (m.omega0.has_value() == m.omega0_sq.has_value())
        throw UsageError("give exactly one of --omega0 and --omega0-sq");
    try {
        return m.omega0 ? DampingParams::from_omega0(*m.beta, *m.omega0)
                        : DampingParams::from_omega0_sq(*m.beta, *m.omega0_sq);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
}

}  // namespace

std::optional<Metric> parse_metric(std::string_view name) {
    if (name == "value_at_t") return Metric::ValueAtT;
    if (name == "max_abs") return Metric::MaxAbs;
    if (name == "blowup_time") return Metric::BlowupTime;
    return std::nullopt;
}

std::string_view to_string(Metric m) noexcept {
    switch (m) {
        case Metric::ValueAtT: return "value_at_t";
        case Metric::MaxAbs: return "max_abs";
        case Metric::BlowupTime: return "blowup_time";
    }
    return "unknown";
}

ModeSpec build_mode(const ModeRequest& m, std::optional<double> gamma) {
    const DampingParams p = build_params(m);
    const Regime regime = classify_regime(p);

    const std::string family = m.family.value_or(gamma ? "tilde" : "seed");
    if (family != "seed" && family != "tilde") throw UsageError("--family must be seed or tilde");
    if (family == "seed" && gamma) throw UsageError("--gamma given with --family seed");
    if (family == "tilde" && !gamma) throw UsageError("--family tilde needs --gamma");

    const bool has_ab = m.A || m.B;
    const bool has_ap = m.amp || m.phase;
    if (has_ab && has_ap) throw UsageError("use either --A/--B or --amp/--phase, not both");
    if (m.A.has_value() != m.B.has_value() && !m.D) throw UsageError("--A and --B must be given together");
    if (m.amp.has_value() != m.phase.has_value()) throw UsageError("--amp and --phase must be given together");

    std::optional<RiccatiParam> r;
    if (gamma) {
        if (*gamma == 0.0 || !std::isfinite(*gamma)) throw UsageError("gamma must be finite and nonzero");
        r = RiccatiParam(*gamma);
    }

    const bool critical_tilde = r && regime.tag == RegimeTag::Critical;
    if (critical_tilde) {
        if (m.B || has_ap) throw UsageError("the critical tilde family takes --A and --D");
        if (m.A.has_value() != m.D.has_value()) throw UsageError("--A and --D must be given together");
        return ModeSpec::critical_tilde(p, m.A.value_or(1.0), m.D.value_or(1.0), *r);
    }
    if (m.D) throw UsageError("--D applies only to the critical tilde family");

    Coefficients c = regime.tag == RegimeTag::Critical ? Coefficients{AB{1.0, 1.0}} : Coefficients{AmpPhase{1.0, 0.0}};
    if (has_ab) c = AB{*m.A, *m.B};
    if (has_ap) c = AmpPhase{*m.amp, *m.phase};
    try {
        return r ? ModeSpec::tilde(p, c, *r) : ModeSpec::seed(p, c);
    } catch (const DomainError& e) {
        throw UsageError(std::string("coefficients do not describe a mode of this regime: ") + e.what());
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }
}

Table figure_table(int n) {
    FigureSet fig = [n] {
        try {
            return figure_set(n);
        } catch (const ParameterError& e) {
            throw UsageError(e.what());
        }
    }();
    const GridRequest g{0.0, 10.0, 0.01};
    const std::string quantity = fig.acceleration ? "acceleration" : "y_tilde";

    Table table = start_table("figure");
    table.metadata.emplace_back("figure", std::to_string(n));
    const DampingParams& p = fig.params;
    table.metadata.emplace_back("regime", std::string(to_string(classify_regime(p).tag)));
    table.metadata.emplace_back("beta", format_number(p.beta()));
    table.metadata.emplace_back("omega0_sq", format_number(p.omega0_sq()));
    table.metadata.emplace_back("alpha_sq", format_number(p.alpha_sq()));
    table.metadata.emplace_back("seed_coefficients", describe(fig.seed_coefficients));
    table.metadata.emplace_back("tilde_coefficients", coefficient_string(fig.tilde(fig.gammas.front())));
    table.metadata.emplace_back("quantity", quantity);
    table.metadata.emplace_back("gammas", join_numbers(fig.gammas));
    table.metadata.emplace_back("grid", grid_string(g));

    table.header = {"t", "y"};
    const std::string prefix = fig.acceleration ? "a" : "y_tilde";
    for (double gamma : fig.gammas) table.header.push_back(prefix + "(gamma=" + format_number(gamma) + ")");

    const ModeSpec seed = fig.seed();
    std::vector<ModeSpec> tildes;
    for (double gamma : fig.gammas) tildes.push_back(fig.tilde(gamma));

    for (double t : make_grid(g.t0, g.t1, g.dt)) {
        std::vector<std::string> row{format_number(t), format_number(eval_seed(seed, t).y)};
        for (const ModeSpec& spec : tildes) {
            const double v = fig.acceleration ? antirestoring_acceleration(spec, t) : eval_tilde(spec, t).y;
            row.push_back(format_number(v));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table eval_table(const EvalRequest& req) {
    const ModeSpec spec = build_mode(req.mode, req.gamma);
    std::vector<double> grid;
    try {
        grid = make_grid(req.grid.t0, req.grid.t1, req.grid.dt);
    } catch (const ParameterError& e) {
        throw UsageError(e.what());
    }

    Table table = start_table("eval");
    add_mode_metadata(table, spec);
    if (spec.riccati()) {
        table.metadata.emplace_back("gamma", format_number(spec.riccati()->gamma()));
        table.metadata.emplace_back("t_star", format_number(spec.riccati()->t_star()));
    }
    table.metadata.emplace_back("grid", grid_string(req.grid));

    const bool tilde = spec.family() == Family::Tilde;
    table.header = {"t", "y", "dy", "d2y"};
    if (tilde) table.header.push_back("a");
    table.header.push_back("singular");

    for (double t : grid) {
        std::vector<std::string> row{format_number(t)};
        if (tilde && spec.riccati()->is_singular(t)) {
            row.insert(row.end(), 4, "");
            row.push_back("1");
        } else {
            const ModeEval e = eval_mode(spec, t);
            row.push_back(format_number(e.y));
            row.push_back(format_number(e.dy));
            row.push_back(format_number(e.d2y));
            if (tilde) row.push_back(format_number(antirestoring_acceleration(spec, t)));
            row.push_back("0");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

Table sweep_table(const SweepRequest& req) {
    if (req.gammas.empty()) throw UsageError("--gammas needs at least one value");
    for (double g : req.gammas)
        if (g == 0.0 || !std::isfinite(g)) throw UsageError("every gamma must be finite and nonzero");

    Table table = start_table("sweep");
    table.metadata.emplace_back("metric", std::string(to_string(req.metric)));
    table.metadata.emplace_back("gammas", join_numbers(req.gammas));

    std::optional<ModeSpec> base;
    if (req.metric != Metric::BlowupTime) {
        base = build_mode(req.mode, req.gammas.front());
        add_mode_metadata(table, *base);
    }
    std::vector<double> grid;
    if (req.metric == Metric::ValueAtT) table.metadata.emplace_back("t", format_number(req.t));
    if (req.metric == Metric::MaxAbs) {
        try {
            grid = make_grid(req.grid.t0, req.grid.t1, req.grid.dt);
        } catch (const ParameterError& e) {
            throw UsageError(e.what());
        }
        table.metadata.emplace_back("grid", grid_string(req.grid));
    }

    table.header = {"gamma", std::string(to_string(req.metric)), "singular"};
    for (double gamma : req.gammas) {
        const RiccatiParam r(gamma);
        std::vector<std::string> row{format_number(gamma)};
        std::optional<double> value;
        switch (req.metric) {
            case Metric::BlowupTime: value = blow_up_time(r); break;
            case Metric::ValueAtT: {
                const ModeSpec spec = base->with_gamma(r);
                if (!r.is_singular(req.t)) value = eval_tilde(spec, req.t).y;
                break;
            }
            case Metric::MaxAbs: {
                const ModeSpec spec = base->with_gamma(r);
                const double t_star = r.t_star();
                // Unbounded when the window contains the pole.
                if (t_star >= req.grid.t0 && t_star <= req.grid.t1) break;
                double m = 0.0;
                for (double t : grid) m = std::max(m, std::abs(eval_tilde(spec, t).y));
                value = m;
                break;
            }
        }
        row.push_back(value ? format_number(*value) : "");
        row.push_back(value ? "0" : "1");
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::vector<std::pair<std::string, std::string>> blowup_report(double gamma) {
    if (gamma == 0.0 || !std::isfinite(gamma)) throw UsageError("gamma must be finite and nonzero");
    const RiccatiParam r(gamma);
    const double t_star = blow_up_time(r);
    return {
        {"gamma", format_number(gamma)},
        {"time_scale", format_number(r.time_scale())},
        {"t_star", format_number(t_star)},
        {"side", t_star < 0.0 ? "past" : "future"},
    };
}

}  // namespace susy_damp::cli
