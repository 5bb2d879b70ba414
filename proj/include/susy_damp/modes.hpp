#pragma once

// Closed-form free damping modes y and their Riccati-parameter partners
// y~ = A- y, with analytic first and second derivatives.

#include "susy_damp/core.hpp"
#include "susy_damp/jet.hpp"

#include <cstddef>
#include <optional>

namespace susy_damp {

enum class Family { Seed, Tilde };

enum class Sign { Plus, Minus };

/// A mode of the free oscillator (Seed) or of its partner operator (Tilde).
///
/// Coefficient conventions per regime:
///   underdamped  A~ e^{-bt} cos(w1 t + phi); AB input is converted to (A~, phi)
///   critical     seed e^{-bt}(A + B t); tilde [-A h + D (gt+1)^2/g^2] e^{-bt},
///                with the AB slot holding (A, D)
///   overdamped   A~ e^{-bt} cosh(a t + phi) or A e^{(a-b)t} + B e^{-(a+b)t}
class ModeSpec {
public:
    /// Throws ParameterError / DomainError when the coefficients cannot
    /// describe a mode of this regime.
    static ModeSpec seed(const DampingParams& p, const Coefficients& c);
    static ModeSpec tilde(const DampingParams& p, const Coefficients& c, const RiccatiParam& r);
    static ModeSpec critical_tilde(const DampingParams& p, double A, double D, const RiccatiParam& r);

    const DampingParams& params() const noexcept { return params_; }
    const Regime& regime() const noexcept { return regime_; }
    const Coefficients& coefficients() const noexcept { return coeffs_; }
    Family family() const noexcept { return riccati_ ? Family::Tilde : Family::Seed; }
    const std::optional<RiccatiParam>& riccati() const noexcept { return riccati_; }

    /// Same parameters and coefficients, different (or no) Riccati parameter.
    ModeSpec with_gamma(std::optional<RiccatiParam> r) const;

private:
    ModeSpec(const DampingParams& p, const Coefficients& c, std::optional<RiccatiParam> r);

    DampingParams params_;
    Regime regime_;
    Coefficients coeffs_;
    std::optional<RiccatiParam> riccati_;
};

struct ModeEval {
    double t;
    double y;
    double dy;
    double d2y;
};

template <std::size_t N>
Jet<N> to_jet(const ModeEval& e) {
    static_assert(N <= 2);
    Jet<N> j;
    const double values[3] = {e.y, e.dy, e.d2y};
    for (std::size_t k = 0; k <= N; ++k) j.d[k] = values[k];
    return j;
}

/// Value and first N derivatives of the seed or tilde mode, whichever `spec` is.
/// Instantiated for N = 0..3.  Throws SingularTime for tilde modes near t*.
template <std::size_t N>
Jet<N> mode_jet(const ModeSpec& spec, double t);

ModeEval eval_mode(const ModeSpec& spec, double t);

/// Throws ParameterError if spec is a tilde mode.
ModeEval eval_seed(const ModeSpec& spec, double t);

/// Throws ParameterError if spec is a seed mode; SingularTime near t*.
ModeEval eval_tilde(const ModeSpec& spec, double t);

/// Elementary eigenmode y+- = exp((-beta +- alpha) t).  Overdamped only (RegimeError otherwise).
template <std::size_t N>
Jet<N> seed_pm_jet(const DampingParams& p, Sign sign, double t);
ModeEval eval_seed_pm(const DampingParams& p, Sign sign, double t);

/// y~+- = (+-alpha - h) exp((-beta +- alpha) t).  Overdamped only.
template <std::size_t N>
Jet<N> tilde_pm_jet(const DampingParams& p, const RiccatiParam& r, Sign sign, double t);
ModeEval eval_tilde_pm(const DampingParams& p, const RiccatiParam& r, Sign sign, double t);

/// Independent critical partner solution D (gamma t + 1)^2 / gamma^2 e^{-beta t},
/// obtained by reduction of order from y~+.  Critical only.
template <std::size_t N>
Jet<N> critical_second_jet(const DampingParams& p, const RiccatiParam& r, double D, double t);
ModeEval critical_second_solution(const DampingParams& p, const RiccatiParam& r, double D, double t);

/// a(t) = 2 gamma^2 / (gamma t + 1)^2 * y~(t).
double antirestoring_acceleration(const ModeSpec& spec, double t);

/// t* = -1/gamma: negative for gamma > 0, positive for gamma < 0.
double blow_up_time(const RiccatiParam& r) noexcept;

}  // namespace susy_damp
