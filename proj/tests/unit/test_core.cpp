#include "susy_damp/core.hpp"
#include "susy_damp/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace susy_damp;

namespace {

const Regime kTrig{RegimeTag::Underdamped, std::nullopt, 1.0};
const Regime kHyper{RegimeTag::Overdamped, 0.2, std::nullopt};

}  // namespace

TEST_CASE("regime classification of the reference parameter sets") {
    const Regime u = classify_regime(DampingParams::from_omega0_sq(0.1, 1.01));
    CHECK(u.tag == RegimeTag::Underdamped);
    REQUIRE(u.omega1);
    CHECK(*u.omega1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(u.alpha);

    CHECK(classify_regime(DampingParams::from_omega0(1.0, 1.0)).tag == RegimeTag::Critical);

    const Regime o = classify_regime(DampingParams::from_omega0_sq(1.0, 24.0 / 25.0));
    CHECK(o.tag == RegimeTag::Overdamped);
    REQUIRE(o.alpha);
    CHECK(*o.alpha == doctest::Approx(0.2).epsilon(1e-14));
}

TEST_CASE("critical band is relative to omega0^2") {
    const double w2 = 4.0;
    const double edge = kCriticalTolerance * w2;
    // alpha^2 = beta^2 - w2 straddling the band.
    CHECK(classify_regime(DampingParams::from_alpha_sq(2.0, 0.5 * edge)).tag == RegimeTag::Critical);
    CHECK(classify_regime(DampingParams::from_alpha_sq(2.0, -0.5 * edge)).tag == RegimeTag::Critical);
    CHECK(classify_regime(DampingParams::from_alpha_sq(2.0, 4.0 * edge)).tag == RegimeTag::Overdamped);
    CHECK(classify_regime(DampingParams::from_alpha_sq(2.0, -4.0 * edge)).tag == RegimeTag::Underdamped);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(DampingParams::from_omega0(0.0, 1.0), ParameterError);
    CHECK_THROWS_AS(DampingParams::from_omega0(1.0, -1.0), ParameterError);
    CHECK_THROWS_AS(DampingParams::from_omega0(std::nan(""), 1.0), ParameterError);
    CHECK_THROWS_AS(DampingParams::from_alpha_sq(1.0, 1.0), ParameterError);  // omega0^2 = 0
    CHECK_THROWS_AS(RiccatiParam{0.0}, ParameterError);
    CHECK_THROWS_AS(RiccatiParam{std::numeric_limits<double>::infinity()}, ParameterError);
}

TEST_CASE("Riccati parameter time scale and blow-up instant") {
    const RiccatiParam r(0.5);
    CHECK(r.time_scale() == 2.0);
    CHECK(r.t_star() == -2.0);
    CHECK(r.is_singular(-2.0));
    CHECK_FALSE(r.is_singular(-2.001));
    CHECK_THROWS_AS(r.require_regular(-2.0), SingularTime);
    // The band is relative in time: |t - t*| <= 1e-8 max(1, |t*|).
    const RiccatiParam slow(1e-3);
    CHECK(slow.is_singular(-1000.0 + 5e-6));
    CHECK_FALSE(slow.is_singular(-1000.0 + 2e-5));
    const RiccatiParam fast(1e3);
    CHECK(fast.is_singular(-1e-3 + 5e-9));
    CHECK_FALSE(fast.is_singular(-1e-3 + 2e-8));
    // Vanishing gamma leaves the whole finite line regular.
    CHECK_FALSE(RiccatiParam(1e-12).is_singular(0.0));
}

TEST_CASE("AB to amplitude/phase examples") {
    const AmpPhase u = ab_to_amplitude_phase({1.0, 1.0}, kTrig);
    CHECK(u.amplitude == 2.0);
    CHECK(u.phase == 0.0);
    const AmpPhase o = ab_to_amplitude_phase({1.0, 1.0}, kHyper);
    CHECK(o.amplitude == 2.0);
    CHECK(o.phase == 0.0);
    CHECK_THROWS_AS(ab_to_amplitude_phase({1.0, -1.0}, kHyper), DomainError);
    // |A + B| > A~ has no Arcos.
    CHECK_THROWS_AS(ab_to_amplitude_phase({3.0, -0.1}, kTrig), DomainError);
}

TEST_CASE("amplitude/phase to AB examples") {
    const AB sym = amplitude_phase_to_ab({2.0, 0.0}, kTrig);
    CHECK(sym.A == 1.0);
    CHECK(sym.B == 1.0);

    // phi = pi/2: A + B = 0 and 2 sqrt|AB| = 1.
    const AB quarter = amplitude_phase_to_ab({1.0, std::numbers::pi / 2}, kTrig);
    CHECK(std::abs(quarter.A + quarter.B) < 1e-15);
    CHECK(2.0 * std::sqrt(std::abs(quarter.A * quarter.B)) == doctest::Approx(1.0).epsilon(1e-15));
    const AmpPhase back = ab_to_amplitude_phase(quarter, kTrig);
    CHECK(back.amplitude == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(back.phase == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));

    const AB zero = amplitude_phase_to_ab({0.0, 0.0}, kTrig);
    CHECK(zero.A == 0.0);
    CHECK(zero.B == 0.0);
    CHECK_THROWS_AS(amplitude_phase_to_ab({-1.0, 0.0}, kTrig), ParameterError);
}

TEST_CASE("phase sign follows the sign of A - B") {
    const AB a = amplitude_phase_to_ab({1.0, 0.7}, kTrig);
    const AB b = amplitude_phase_to_ab({1.0, -0.7}, kTrig);
    CHECK(a.A > a.B);
    CHECK(b.A < b.B);
    CHECK(ab_to_amplitude_phase(a, kTrig).phase == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(ab_to_amplitude_phase(b, kTrig).phase == doctest::Approx(-0.7).epsilon(1e-14));

    const AmpPhase h = ab_to_amplitude_phase({4.0, 1.0}, kHyper);
    CHECK(h.amplitude == 4.0);
    CHECK(h.phase == doctest::Approx(std::acosh(5.0 / 4.0)).epsilon(1e-15));
    CHECK(ab_to_amplitude_phase({1.0, 4.0}, kHyper).phase == doctest::Approx(-std::acosh(5.0 / 4.0)));
}

TEST_CASE("round trip on the hyperbolic domain") {
    for (double phi : {-4.0, -1.0, -1e-6, 0.0, 0.3, 2.5}) {
        const AmpPhase ap{1.7, phi};
        const AmpPhase back = ab_to_amplitude_phase(amplitude_phase_to_ab(ap, kHyper), kHyper);
        CHECK(back.amplitude == doctest::Approx(1.7).epsilon(1e-14));
        CHECK(std::abs(back.phase - phi) <= 1e-14 * std::max(1.0, std::abs(phi)));
    }
}

TEST_CASE("trig AB form only determines phi through cos(phi)") {
    // Near phi = 0 the AB pair is the same double pair for all |phi| < ~1e-8,
    // so the phase is recovered in AB space, not in phi itself.
    const AB a = amplitude_phase_to_ab({1.0, 1e-9}, kTrig);
    const AB b = amplitude_phase_to_ab({1.0, 0.0}, kTrig);
    CHECK(a.A == b.A);
    CHECK(a.B == b.B);
    const AB again = amplitude_phase_to_ab(ab_to_amplitude_phase(a, kTrig), kTrig);
    CHECK(again.A == a.A);
    CHECK(again.B == a.B);
}

TEST_CASE("frequency partition") {
    const auto p = DampingParams::from_omega0(0.3, 2.0);
    const Regime r = classify_regime(p);
    REQUIRE(r.omega1);
    CHECK(p.beta() * p.beta() + *r.omega1 * *r.omega1 == doctest::Approx(4.0).epsilon(1e-14));
    const auto q = DampingParams::from_omega0(2.0, 0.3);
    const Regime s = classify_regime(q);
    REQUIRE(s.alpha);
    CHECK(4.0 - *s.alpha * *s.alpha == doctest::Approx(0.09).epsilon(1e-14));
}

TEST_CASE("regime names") {
    CHECK(to_string(RegimeTag::Underdamped) == "underdamped");
    CHECK(to_string(RegimeTag::Critical) == "critical");
    CHECK(to_string(RegimeTag::Overdamped) == "overdamped");
}
