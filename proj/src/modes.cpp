#include "susy_damp/modes.hpp"

#include "susy_damp/errors.hpp"
#include "susy_damp/riccati.hpp"

namespace susy_damp {

namespace {

ModeEval to_eval(double t, const Jet<2>& j) { return {t, j[0], j[1], j[2]}; }

double require_alpha(const DampingParams& p) {
    const Regime r = classify_regime(p);
    if (r.tag != RegimeTag::Overdamped)
        throw RegimeError("elementary modes y+- need a real alpha (overdamped regime), got " +
                          std::string(to_string(r.tag)));
    return *r.alpha;
}

template <std::size_t N>
Jet<N> seed_jet(const ModeSpec& spec, double t) {
    const double beta = spec.params().beta();
    const Regime& r = spec.regime();
    const auto damping = exp_jet<N>(-beta, t);

    switch (r.tag) {
        case RegimeTag::Underdamped: {
            const AmpPhase c = as_amplitude_phase(spec.coefficients(), r);
            return c.amplitude * (damping * cos_jet<N>(*r.omega1, c.phase, t));
        }
        case RegimeTag::Critical: {
            const AB c = as_ab(spec.coefficients(), r);
            return damping * Jet<N>::affine(c.A, c.B, t);
        }
        case RegimeTag::Overdamped: {
            const double alpha = *r.alpha;
            if (const auto* c = std::get_if<AmpPhase>(&spec.coefficients()))
                return c->amplitude * (damping * cosh_jet<N>(alpha, c->phase, t));
            const AB c = std::get<AB>(spec.coefficients());
            return c.A * exp_jet<N>(alpha - beta, t) + c.B * exp_jet<N>(-alpha - beta, t);
        }
    }
    return {};
}

template <std::size_t N>
Jet<N> tilde_jet(const ModeSpec& spec, double t) {
    const RiccatiParam& rp = *spec.riccati();
    const auto h = RiccatiSolution::general(rp).h_jet<N>(t);
    const double beta = spec.params().beta();
    const Regime& r = spec.regime();
    const auto damping = exp_jet<N>(-beta, t);

    switch (r.tag) {
        case RegimeTag::Underdamped: {
            const AmpPhase c = as_amplitude_phase(spec.coefficients(), r);
            const double w1 = *r.omega1;
            const auto bracket = w1 * sin_jet<N>(w1, c.phase, t) + h * cos_jet<N>(w1, c.phase, t);
            return -c.amplitude * (bracket * damping);
        }
        case RegimeTag::Critical: {
            const AB c = std::get<AB>(spec.coefficients());
            return (-c.A * h) * damping + critical_second_jet<N>(spec.params(), rp, c.B, t);
        }
        case RegimeTag::Overdamped: {
            const double alpha = *r.alpha;
            if (const auto* c = std::get_if<AmpPhase>(&spec.coefficients())) {
                const auto bracket =
                    alpha * sinh_jet<N>(alpha, c->phase, t) - h * cosh_jet<N>(alpha, c->phase, t);
                return c->amplitude * (bracket * damping);
            }
            const AB c = std::get<AB>(spec.coefficients());
            const auto plus = (Jet<N>::constant(alpha) - h) * exp_jet<N>(alpha - beta, t);
            const auto minus = (Jet<N>::constant(-alpha) - h) * exp_jet<N>(-alpha - beta, t);
            return c.A * plus + c.B * minus;
        }
    }
    return {};
}

}  // namespace

ModeSpec::ModeSpec(const DampingParams& p, const Coefficients& c, std::optional<RiccatiParam> r)
    : params_(p), regime_(classify_regime(p)), coeffs_(c), riccati_(r) {
    const bool critical_tilde = riccati_ && regime_.tag == RegimeTag::Critical;
    if (critical_tilde && !std::holds_alternative<AB>(coeffs_))
        throw ParameterError("critical tilde modes take the (A, D) coefficient pair");
    if (regime_.tag == RegimeTag::Underdamped) (void)as_amplitude_phase(coeffs_, regime_);
    if (regime_.tag == RegimeTag::Overdamped) {
        if (const auto* ap = std::get_if<AmpPhase>(&coeffs_); ap && !(ap->amplitude >= 0.0))
            throw ParameterError("amplitude must be nonnegative");
    }
}

ModeSpec ModeSpec::seed(const DampingParams& p, const Coefficients& c) { return ModeSpec(p, c, std::nullopt); }

ModeSpec ModeSpec::tilde(const DampingParams& p, const Coefficients& c, const RiccatiParam& r) {
    return ModeSpec(p, c, r);
}

ModeSpec ModeSpec::critical_tilde(const DampingParams& p, double A, double D, const RiccatiParam& r) {
    if (classify_regime(p).tag != RegimeTag::Critical)
        throw RegimeError("critical_tilde needs critically damped parameters");
    return ModeSpec(p, AB{A, D}, r);
}

ModeSpec ModeSpec::with_gamma(std::optional<RiccatiParam> r) const { return ModeSpec(params_, coeffs_, r); }

template <std::size_t N>
Jet<N> mode_jet(const ModeSpec& spec, double t) {
    return spec.family() == Family::Seed ? seed_jet<N>(spec, t) : tilde_jet<N>(spec, t);
}

ModeEval eval_mode(const ModeSpec& spec, double t) { return to_eval(t, mode_jet<2>(spec, t)); }

ModeEval eval_seed(const ModeSpec& spec, double t) {
    if (spec.family() != Family::Seed) throw ParameterError("eval_seed called with a tilde spec");
    return to_eval(t, seed_jet<2>(spec, t));
}

ModeEval eval_tilde(const ModeSpec& spec, double t) {
    if (spec.family() != Family::Tilde) throw ParameterError("eval_tilde called with a seed spec");
    return to_eval(t, tilde_jet<2>(spec, t));
}

template <std::size_t N>
Jet<N> seed_pm_jet(const DampingParams& p, Sign sign, double t) {
    const double alpha = require_alpha(p);
    const double s = sign == Sign::Plus ? 1.0 : -1.0;
    return exp_jet<N>(s * alpha - p.beta(), t);
}

ModeEval eval_seed_pm(const DampingParams& p, Sign sign, double t) {
    return to_eval(t, seed_pm_jet<2>(p, sign, t));
}

template <std::size_t N>
Jet<N> tilde_pm_jet(const DampingParams& p, const RiccatiParam& r, Sign sign, double t) {
    const double alpha = require_alpha(p);
    const double s = sign == Sign::Plus ? 1.0 : -1.0;
    const auto h = RiccatiSolution::general(r).h_jet<N>(t);
    return (Jet<N>::constant(s * alpha) - h) * exp_jet<N>(s * alpha - p.beta(), t);
}

ModeEval eval_tilde_pm(const DampingParams& p, const RiccatiParam& r, Sign sign, double t) {
    return to_eval(t, tilde_pm_jet<2>(p, r, sign, t));
}

template <std::size_t N>
Jet<N> critical_second_jet(const DampingParams& p, const RiccatiParam& r, double D, double t) {
    if (classify_regime(p).tag != RegimeTag::Critical)
        throw RegimeError("the reduction-of-order partner exists only for critical damping");
    r.require_regular(t);
    const double gamma = r.gamma();
    const auto shifted = Jet<N>::affine(1.0, gamma, t);
    auto z = shifted * shifted;
    for (auto& x : z.d) x /= gamma * gamma;
    return D * (z * exp_jet<N>(-p.beta(), t));
}

ModeEval critical_second_solution(const DampingParams& p, const RiccatiParam& r, double D, double t) {
    return to_eval(t, critical_second_jet<2>(p, r, D, t));
}

double antirestoring_acceleration(const ModeSpec& spec, double t) {
    const ModeEval e = eval_tilde(spec, t);
    const double h = h_eval(RiccatiSolution::general(*spec.riccati()), t);
    return 2.0 * h * h * e.y;
}

double blow_up_time(const RiccatiParam& r) noexcept { return r.t_star(); }

#define SUSY_DAMP_INSTANTIATE(N)                                                                   \
    template Jet<N> mode_jet<N>(const ModeSpec&, double);                                          \
    template Jet<N> seed_pm_jet<N>(const DampingParams&, Sign, double);                            \
    template Jet<N> tilde_pm_jet<N>(const DampingParams&, const RiccatiParam&, Sign, double);      \
    template Jet<N> critical_second_jet<N>(const DampingParams&, const RiccatiParam&, double, double);

SUSY_DAMP_INSTANTIATE(0)
SUSY_DAMP_INSTANTIATE(1)
SUSY_DAMP_INSTANTIATE(2)
SUSY_DAMP_INSTANTIATE(3)

#undef SUSY_DAMP_INSTANTIATE

}  // namespace susy_damp
