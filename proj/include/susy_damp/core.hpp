#pragma once

// Physical parameters of the free damped oscillator, regime classification
// and the (A, B) <-> (A~, phi) coefficient conversions.
//
// All quantities are dimensionless: the time unit is absorbed into beta,
// omega0 and gamma.

#include <optional>
#include <string_view>
#include <variant>

namespace susy_damp {

/// Half-width of the critical band on alpha^2, in units of omega0^2.
inline constexpr double kCriticalTolerance = 1e-9;

/// Friction constant per unit mass (2*beta in Newton's law) and natural frequency.
///
/// Stores beta, omega0^2 and alpha^2 = beta^2 - omega0^2.  Constructors take
/// whichever pair is exact for the caller so that figure parameters such as
/// alpha^2 = -1 survive without a square-root round trip.
class DampingParams {
public:
    /// Throws ParameterError unless beta > 0 and omega0 > 0 (both finite).
    static DampingParams from_omega0(double beta, double omega0);
    static DampingParams from_omega0_sq(double beta, double omega0_sq);
    /// omega0^2 = beta^2 - alpha_sq; must be positive.
    static DampingParams from_alpha_sq(double beta, double alpha_sq);

    double beta() const noexcept { return beta_; }
    double omega0() const noexcept;
    double omega0_sq() const noexcept { return omega0_sq_; }
    double alpha_sq() const noexcept { return alpha_sq_; }

private:
    DampingParams(double beta, double omega0_sq, double alpha_sq);

    double beta_;
    double omega0_sq_;
    double alpha_sq_;
};

enum class RegimeTag { Underdamped, Critical, Overdamped };

std::string_view to_string(RegimeTag tag) noexcept;

struct Regime {
    RegimeTag tag;
    std::optional<double> alpha;   // Overdamped only: sqrt(alpha^2)
    std::optional<double> omega1;  // Underdamped only: sqrt(omega0^2 - beta^2)

    bool operator==(const Regime&) const = default;
};

/// The Riccati family parameter gamma with its time scale T = 1/gamma and
/// blow-up instant t* = -1/gamma.
class RiccatiParam {
public:
    /// Throws ParameterError for gamma == 0 or non-finite gamma.
    explicit RiccatiParam(double gamma);

    double gamma() const noexcept { return gamma_; }
    double time_scale() const noexcept { return time_scale_; }
    double t_star() const noexcept { return -time_scale_; }

    /// |gamma t + 1| at or below this value counts as singular: the band is
    /// |t - t*| <= 1e-8 max(1, |t*|), i.e. |gamma t + 1| <= 1e-8 max(1, |gamma|).
    double guard_band() const noexcept;
    bool is_singular(double t) const noexcept;
    /// Throws SingularTime when is_singular(t).
    void require_regular(double t) const;

private:
    double gamma_;
    double time_scale_;
};

struct AB {
    double A;
    double B;
};

struct AmpPhase {
    double amplitude;
    double phase;
};

using Coefficients = std::variant<AB, AmpPhase>;

Regime classify_regime(const DampingParams& p);

/// A~ = 2 sqrt|AB|.  Underdamped and critical regimes use phi = +-Arcos((A+B)/A~),
/// the overdamped regime phi = +-Arcosh((A+B)/A~).  The sign of phi carries the
/// sign of A - B so the conversion is invertible.
///
/// Throws DomainError when (A+B)/A~ is outside the inverse function's domain.
AmpPhase ab_to_amplitude_phase(const AB& c, const Regime& r);

/// Inverse of ab_to_amplitude_phase.  Throws ParameterError for A~ < 0.
AB amplitude_phase_to_ab(const AmpPhase& c, const Regime& r);

AB as_ab(const Coefficients& c, const Regime& r);
AmpPhase as_amplitude_phase(const Coefficients& c, const Regime& r);

}  // namespace susy_damp
