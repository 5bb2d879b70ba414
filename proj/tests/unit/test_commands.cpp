#include "susy_damp/commands.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

using namespace susy_damp;
using namespace susy_damp::cli;

namespace {

std::string render(const Table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

std::string meta(const Table& t, const std::string& key) {
    for (const auto& [k, v] : t.metadata)
        if (k == key) return v;
    return "<missing>";
}

ModeRequest fig1_mode() {
    ModeRequest m;
    m.beta = 0.1;
    m.omega0_sq = 1.01;
    return m;
}

}  // namespace

TEST_CASE("figure t = 0 rows") {
    const Table f1 = figure_table(1);
    CHECK(f1.header == std::vector<std::string>{"t", "y", "y_tilde(gamma=1)", "y_tilde(gamma=0.5)", "y_tilde(gamma=0.1)"});
    CHECK(f1.rows.front() == std::vector<std::string>{"0", "1", "-1", "-0.5", "-0.1"});
    CHECK(f1.rows.size() == 1001);
    CHECK(f1.rows.back().front() == "10");

    const Table f2 = figure_table(2);
    const auto& r2 = f2.rows.front();
    CHECK(r2[0] == "0");
    CHECK(r2[1] == "1");
    CHECK(r2[2] == "-4.96");
    // -5/3 + 9/25 = -98/75, up to the rounding of gamma = 5/3 itself.
    CHECK(std::abs(num(r2[3]) + 98.0 / 75.0) <= 4e-16);
    CHECK(r2[4] == "0");

    CHECK(figure_table(3).rows.front() == std::vector<std::string>{"0", "1", "-1", "-0.5", "-0.1"});

    // Accelerations 2 gamma^2 y~(0).
    const Table f4 = figure_table(4);
    CHECK(f4.header[2] == "a(gamma=1)");
    CHECK(num(f4.rows.front()[2]) == -2.0);
    CHECK(num(f4.rows.front()[3]) == -0.25);
    CHECK(num(f4.rows.front()[4]) == doctest::Approx(-0.002).epsilon(1e-15));
    CHECK(num(figure_table(5).rows.front()[2]) == doctest::Approx(-248.0).epsilon(1e-15));
    CHECK(num(figure_table(6).rows.front()[2]) == -2.0);

    CHECK_THROWS_AS(figure_table(7), UsageError);
}

TEST_CASE("figure output is byte-stable") {
    for (int n = 1; n <= 6; ++n) CHECK(render(figure_table(n)) == render(figure_table(n)));
    const std::string text = render(figure_table(2));
    CHECK(text.rfind("# tool=susy-damp ", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.find("# gammas=5;1.6666666666666667;1\n") != std::string::npos);
}

TEST_CASE("eval on the underdamped reference mode") {
    EvalRequest req;
    req.mode = fig1_mode();
    req.grid = {0.0, 1.0, 0.5};
    const Table t = eval_table(req);
    CHECK(t.header == std::vector<std::string>{"t", "y", "dy", "d2y", "singular"});
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0][1] == "1");
    CHECK(meta(t, "family") == "seed");
}

TEST_CASE("eval marks rows inside the guard band") {
    EvalRequest req;
    req.mode = fig1_mode();
    req.gamma = 0.5;
    req.grid = {-3.0, -1.0, 0.5};
    const Table t = eval_table(req);
    CHECK(t.header.back() == "singular");
    REQUIRE(t.rows.size() == 5);
    CHECK(t.rows[2] == std::vector<std::string>{"-2", "", "", "", "", "1"});
    for (std::size_t i : {0U, 1U, 3U, 4U}) CHECK(t.rows[i].back() == "0");
    CHECK(meta(t, "t_star") == "-2");
}

TEST_CASE("eval of the critical seed matches e^{-t}(1+t)") {
    EvalRequest req;
    req.mode.beta = 1.0;
    req.mode.omega0 = 1.0;
    req.mode.A = 1.0;
    req.mode.B = 1.0;
    req.grid = {0.0, 5.0, 0.25};
    for (const auto& row : eval_table(req).rows) {
        const double t = num(row[0]);
        CHECK(num(row[1]) == doctest::Approx(std::exp(-t) * (1.0 + t)).epsilon(1e-15));
    }
}

TEST_CASE("usage errors") {
    EvalRequest req;
    req.mode = fig1_mode();
    req.mode.family = "seed";
    req.gamma = 1.0;
    CHECK_THROWS_AS(eval_table(req), UsageError);

    EvalRequest both = EvalRequest{};
    both.mode = fig1_mode();
    both.mode.A = 1.0;
    both.mode.B = 1.0;
    both.mode.amp = 1.0;
    both.mode.phase = 0.0;
    CHECK_THROWS_AS(eval_table(both), UsageError);

    EvalRequest no_beta;
    no_beta.mode.omega0 = 1.0;
    CHECK_THROWS_AS(eval_table(no_beta), UsageError);

    EvalRequest two_freqs;
    two_freqs.mode = fig1_mode();
    two_freqs.mode.omega0 = 1.0;
    CHECK_THROWS_AS(eval_table(two_freqs), UsageError);

    EvalRequest lone_d;
    lone_d.mode = fig1_mode();
    lone_d.mode.D = 1.0;
    CHECK_THROWS_AS(eval_table(lone_d), UsageError);

    SweepRequest zero;
    zero.metric = Metric::BlowupTime;
    zero.gammas = {1.0, 0.0};
    CHECK_THROWS_AS(sweep_table(zero), UsageError);

    CHECK_THROWS_AS(blowup_report(0.0), UsageError);
}

TEST_CASE("sweep examples") {
    SweepRequest blow;
    blow.metric = Metric::BlowupTime;
    blow.gammas = {1.0, 0.5, -0.25};
    const Table b = sweep_table(blow);
    REQUIRE(b.rows.size() == 3);
    CHECK(b.rows[0][1] == "-1");
    CHECK(b.rows[1][1] == "-2");
    CHECK(b.rows[2][1] == "4");

    SweepRequest value;
    value.mode = fig1_mode();
    value.gammas = {1.0, 0.5, 0.1};
    const Table v = sweep_table(value);
    CHECK(v.rows[0][1] == "-1");
    CHECK(v.rows[1][1] == "-0.5");
    CHECK(v.rows[2][1] == "-0.1");

    // Dense-scan oracle: max over i of |y~(i/1000)| for figure 2, gamma = 1,
    // from tests/oracles/derive_values.py.
    SweepRequest peak;
    peak.mode.beta = 1.0;
    peak.mode.omega0 = 1.0;
    peak.metric = Metric::MaxAbs;
    peak.gammas = {1.0, -0.5};
    const Table p = sweep_table(peak);
    CHECK(num(p.rows[0][1]) == doctest::Approx(1.323405470460086914768074).epsilon(1e-15));
    CHECK(p.rows[0][2] == "0");
    // t* = 2 lies inside the window: unbounded, reported as singular.
    CHECK(p.rows[1][1].empty());
    CHECK(p.rows[1][2] == "1");
}

TEST_CASE("blow-up report") {
    const auto r = blowup_report(-0.25);
    REQUIRE(r.size() == 4);
    CHECK(r[2] == std::pair<std::string, std::string>{"t_star", "4"});
    CHECK(r[3].second == "future");
    CHECK(blowup_report(2.0)[3].second == "past");
}
