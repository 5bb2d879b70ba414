#include "susy_damp/errors.hpp"
#include "susy_damp/riccati.hpp"

#include <doctest.h>

#include <cmath>

using namespace susy_damp;

TEST_CASE("h examples") {
    const auto s = RiccatiSolution::general(RiccatiParam(1.0));
    CHECK(h_eval(s, 1.0) == 0.5);
    CHECK(h_eval(s, 0.0) == 1.0);
    CHECK_THROWS_AS(h_eval(s, -1.0), SingularTime);
    CHECK(h_eval(RiccatiSolution::particular(), 3.0) == 0.0);
}

TEST_CASE("SingularTime carries the blow-up instant") {
    const auto s = RiccatiSolution::general(RiccatiParam(4.0));
    try {
        h_eval(s, -0.25);
        FAIL("expected SingularTime");
    } catch (const SingularTime& e) {
        CHECK(e.t_star() == -0.25);
    }
}

TEST_CASE("residual of h' + h^2 vanishes") {
    for (double gamma : {-3.0, -0.2, 0.1, 1.0, 7.0}) {
        const auto s = RiccatiSolution::general(RiccatiParam(gamma));
        for (double t : {0.0, 0.37, 2.0, 9.5}) {
            if (RiccatiParam(gamma).is_singular(t)) continue;
            const double h = h_eval(s, t);
            CHECK(std::abs(riccati_residual(s, t)) <= 1e-15 * std::max(1.0, h * h));
        }
    }
    CHECK(riccati_residual(RiccatiSolution::particular(), 1.0) == 0.0);
}

TEST_CASE("h derivative jet matches the closed forms") {
    const double gamma = 1.5;
    const double t = 0.8;
    const double u = gamma * t + 1.0;
    const auto j = RiccatiSolution::general(RiccatiParam(gamma)).h_jet<3>(t);
    CHECK(j.d[0] == doctest::Approx(gamma / u).epsilon(1e-15));
    CHECK(j.d[1] == doctest::Approx(-gamma * gamma / (u * u)).epsilon(1e-15));
    CHECK(j.d[2] == doctest::Approx(2.0 * std::pow(gamma, 3) / std::pow(u, 3)).epsilon(1e-15));
    CHECK(j.d[3] == doctest::Approx(-6.0 * std::pow(gamma, 4) / std::pow(u, 4)).epsilon(1e-15));
}

TEST_CASE("superpotentials") {
    const auto p = DampingParams::from_omega0(0.8, 1.3);
    const auto s = RiccatiSolution::general(RiccatiParam(-0.6));
    for (double t : {0.0, 1.0, 4.0}) {
        const double f = f_eval(p, s, t);
        const double g = g_eval(p, s, t);
        CHECK(f + g == doctest::Approx(1.6).epsilon(1e-15));
        // g' + f g = beta^2, with g' = -h'.
        const double gp = -h_prime(s, t);
        CHECK(gp + f * g == doctest::Approx(0.64).epsilon(1e-14));
        CHECK(std::abs(full_riccati_residual(p, s, t)) <= 1e-14 * std::max(1.0, f * f));
    }
}

TEST_CASE("h vanishes as gamma goes to zero") {
    const auto s = RiccatiSolution::general(RiccatiParam(1e-8));
    for (double t = 0.0; t <= 10.0; t += 0.5) CHECK(std::abs(h_eval(s, t)) < 1e-7);
}
