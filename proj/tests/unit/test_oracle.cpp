#include "susy_damp/errors.hpp"
#include "susy_damp/figures.hpp"
#include "susy_damp/modes.hpp"
#include "susy_damp/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace susy_damp;

namespace {

std::vector<double> grid(double t0, double t1, int n) {
    std::vector<double> g;
    for (int i = 0; i <= n; ++i) g.push_back(t0 + (t1 - t0) * i / n);
    return g;
}

}  // namespace

TEST_CASE("free critical damping matches e^{-t}(1+t)") {
    const IVP ivp = IVP::free_damping(DampingParams::from_omega0(1.0, 1.0), 0.0, 1.0, 0.0, 10.0);
    const auto ts = grid(0.0, 10.0, 200);
    const Trajectory tr = integrate(ivp, {}, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double exact = std::exp(-ts[i]) * (1.0 + ts[i]);
        CHECK(std::abs(tr.ys[i] - exact) <= 1e-8 * std::max(std::abs(exact), 1e-3));
    }
    // e^{-10} * 11 from the oracle script.
    CHECK(tr.ys.back() == doctest::Approx(0.0004993992273873333668915067).epsilon(1e-8));
}

TEST_CASE("partner equation from closed-form data reproduces the closed form") {
    const ModeSpec spec = figure_set(1).tilde(1.0);
    const ModeEval start = eval_tilde(spec, 0.0);
    CHECK(start.y == -1.0);
    const IVP ivp = IVP::partner(spec.params(), *spec.riccati(), 0.0, start.y, start.dy, 10.0);
    const auto ts = grid(0.0, 10.0, 100);
    const Trajectory tr = integrate(ivp, {}, ts);
    double worst = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i) worst = std::max(worst, std::abs(tr.ys[i] - eval_tilde(spec, ts[i]).y));
    CHECK(worst < 1e-6);
}

TEST_CASE("zero data stays zero") {
    const IVP ivp{0.4, 2.0, 0.8, 0.0, 0.0, 0.0, 10.0};
    const Trajectory tr = integrate(ivp, {}, grid(0.0, 10.0, 50));
    for (double y : tr.ys) CHECK(y == 0.0);
    CHECK(self_convergence(ivp, grid(0.0, 10.0, 50)) == 0.0);
}

TEST_CASE("self convergence on reference parameters") {
    const auto ts = grid(0.0, 10.0, 1000);
    for (auto [fig, g] : {std::pair{3, 0.5}, std::pair{2, 5.0}}) {
        const ModeSpec spec = figure_set(fig).tilde(g);
        const ModeEval e = eval_tilde(spec, 0.0);
        CHECK(self_convergence(IVP::partner(spec.params(), *spec.riccati(), 0.0, e.y, e.dy, 10.0), ts) < 1e-7);
    }
}

TEST_CASE("intervals containing the pole are rejected") {
    const IVP ivp{1.0, 1.0, 0.5, 0.0, 1.0, 0.0, -3.0};
    CHECK_THROWS_AS(integrate(ivp, {}, grid(-3.0, 0.0, 3)), SingularInterval);
    const IVP ends_on_pole{1.0, 1.0, 0.5, 0.0, 1.0, 0.0, -2.0};
    CHECK_THROWS_AS(integrate(ends_on_pole, {}, grid(-2.0, 0.0, 3)), SingularInterval);
}

TEST_CASE("far side of the pole and backward integration") {
    // gamma = 0.5, t* = -2: integrate on [-6, -3] starting from closed-form data.
    const ModeSpec spec = figure_set(3).tilde(0.5);
    const ModeEval e = eval_tilde(spec, -3.0);
    const IVP back{1.0, spec.params().omega0_sq(), 0.5, -3.0, e.y, e.dy, -6.0};
    const auto ts = grid(-6.0, -3.0, 30);
    const Trajectory tr = integrate(back, {}, ts);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double exact = eval_tilde(spec, ts[i]).y;
        CHECK(std::abs(tr.ys[i] - exact) <= 1e-8 * std::max(1.0, std::abs(exact)));
    }
}

TEST_CASE("negative beta is accepted") {
    // y'' - 2 y' + 2 y = 0 with y(0)=1, y'(0)=1: y = e^{t} cos t.
    const IVP ivp{-1.0, 2.0, std::nullopt, 0.0, 1.0, 1.0, 3.0};
    const std::vector<double> ts{3.0};
    CHECK(integrate(ivp, {}, ts).ys[0] == doctest::Approx(std::exp(3.0) * std::cos(3.0)).epsilon(1e-8));
}

TEST_CASE("fixed-step propagator is fifth order") {
    const IVP ivp = IVP::free_damping(DampingParams::from_omega0(1.0, 1.0), 0.0, 1.0, 0.0, 10.0);
    const double exact = std::exp(-10.0) * 11.0;
    const double e1 = std::abs(integrate_fixed_step(ivp, 20).y - exact);
    const double e2 = std::abs(integrate_fixed_step(ivp, 40).y - exact);
    CHECK(e1 / e2 >= 16.0);
    CHECK_THROWS_AS(integrate_fixed_step(ivp, 0), ParameterError);
}

TEST_CASE("grid validation") {
    const IVP ivp = IVP::free_damping(DampingParams::from_omega0(1.0, 1.0), 0.0, 1.0, 0.0, 1.0);
    CHECK_THROWS_AS(integrate(ivp, {}, std::vector<double>{0.5, 0.2}), ParameterError);
    CHECK_THROWS_AS(integrate(ivp, {}, std::vector<double>{2.0}), ParameterError);
    CHECK_THROWS_AS(integrate(ivp, {0.0, 1e-12}, std::vector<double>{0.5}), ParameterError);
}
