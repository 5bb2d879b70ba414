#include "susy_damp/core.hpp"

#include "susy_damp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace susy_damp {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw ParameterError(std::string(what) + " must be finite");
}

}  // namespace

DampingParams::DampingParams(double beta, double omega0_sq, double alpha_sq)
    : beta_(beta), omega0_sq_(omega0_sq), alpha_sq_(alpha_sq) {
    require_finite(beta_, "beta");
    require_finite(omega0_sq_, "omega0^2");
    require_finite(alpha_sq_, "alpha^2");
    if (!(beta_ > 0.0)) throw ParameterError("beta must be positive");
    if (!(omega0_sq_ > 0.0)) throw ParameterError("omega0 must be positive");
}

DampingParams DampingParams::from_omega0(double beta, double omega0) {
    require_finite(omega0, "omega0");
    if (!(omega0 > 0.0)) throw ParameterError("omega0 must be positive");
    return from_omega0_sq(beta, omega0 * omega0);
}

DampingParams DampingParams::from_omega0_sq(double beta, double omega0_sq) {
    return DampingParams(beta, omega0_sq, beta * beta - omega0_sq);
}

DampingParams DampingParams::from_alpha_sq(double beta, double alpha_sq) {
    return DampingParams(beta, beta * beta - alpha_sq, alpha_sq);
}

double DampingParams::omega0() const noexcept { return std::sqrt(omega0_sq_); }

std::string_view to_string(RegimeTag tag) noexcept {
    switch (tag) {
        case RegimeTag::Underdamped: return "underdamped";
        case RegimeTag::Critical: return "critical";
        case RegimeTag::Overdamped: return "overdamped";
    }
    return "unknown";
}

RiccatiParam::RiccatiParam(double gamma) : gamma_(gamma), time_scale_(0.0) {
    require_finite(gamma, "gamma");
    if (gamma == 0.0) throw ParameterError("gamma must be nonzero");
    time_scale_ = 1.0 / gamma;
}

// |t - t*| <= 1e-8 max(1, |t*|), expressed on |gamma t + 1| = |gamma| |t - t*|.
double RiccatiParam::guard_band() const noexcept {
    return 1e-8 * std::max(1.0, std::abs(gamma_));
}

bool RiccatiParam::is_singular(double t) const noexcept {
    return !(std::abs(gamma_ * t + 1.0) > guard_band());
}

void RiccatiParam::require_regular(double t) const {
    if (is_singular(t)) throw SingularTime(t, t_star());
}

Regime classify_regime(const DampingParams& p) {
    const double a2 = p.alpha_sq();
    const double band = kCriticalTolerance * p.omega0_sq();
    if (a2 < -band) return {RegimeTag::Underdamped, std::nullopt, std::sqrt(-a2)};
    if (a2 > band) return {RegimeTag::Overdamped, std::sqrt(a2), std::nullopt};
    return {RegimeTag::Critical, std::nullopt, std::nullopt};
}

AmpPhase ab_to_amplitude_phase(const AB& c, const Regime& r) {
    const double product = c.A * c.B;
    const double sum = c.A + c.B;
    const double sign = c.A >= c.B ? 1.0 : -1.0;

    if (r.tag == RegimeTag::Overdamped) {
        if (!(product > 0.0) || !(sum > 0.0))
            throw DomainError("Arcosh form needs A*B > 0 and A+B >= 2 sqrt(AB)");
        // phi = log(A/B)/2 is Arcosh((A+B)/A~) carrying the sign of A - B,
        // and stays accurate where acosh loses digits near 1.
        return {2.0 * std::sqrt(product), 0.5 * std::log(c.A / c.B)};
    }

    const double amplitude = 2.0 * std::sqrt(std::abs(product));
    if (amplitude == 0.0) {
        if (sum != 0.0) throw DomainError("Arcos argument (A+B)/A~ is unbounded");
        return {0.0, 0.0};
    }
    double ratio = sum / amplitude;
    if (std::abs(ratio) > 1.0 + 1e-12) throw DomainError("Arcos argument (A+B)/A~ exceeds 1 in magnitude");
    ratio = std::clamp(ratio, -1.0, 1.0);
    return {amplitude, sign * std::acos(ratio)};
}

AB amplitude_phase_to_ab(const AmpPhase& c, const Regime& r) {
    if (!(c.amplitude >= 0.0)) throw ParameterError("amplitude must be nonnegative");
    const double half = 0.5 * c.amplitude;
    if (c.amplitude == 0.0) return {0.0, 0.0};

    if (r.tag == RegimeTag::Overdamped) return {half * std::exp(c.phase), half * std::exp(-c.phase)};

    const double sum = c.amplitude * std::cos(c.phase);
    if (sum * sum >= c.amplitude * c.amplitude) return {0.5 * sum, 0.5 * sum};
    // A + B = A~ cos(phi) with AB = -A~^2/4: the two real roots, ordered by sign(phi).
    const double root = std::sqrt(sum * sum + c.amplitude * c.amplitude);
    const double big = 0.5 * (sum + root);
    const double small = -0.25 * c.amplitude * c.amplitude / big;
    return c.phase >= 0.0 ? AB{big, small} : AB{small, big};
}

AB as_ab(const Coefficients& c, const Regime& r) {
    if (const auto* ab = std::get_if<AB>(&c)) return *ab;
    return amplitude_phase_to_ab(std::get<AmpPhase>(c), r);
}

AmpPhase as_amplitude_phase(const Coefficients& c, const Regime& r) {
    if (const auto* ap = std::get_if<AmpPhase>(&c)) return *ap;
    return ab_to_amplitude_phase(std::get<AB>(c), r);
}

}  // namespace susy_damp
