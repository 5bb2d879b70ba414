#include "susy_damp/verify.hpp"

#include "susy_damp/core.hpp"
#include "susy_damp/errors.hpp"
#include "susy_damp/figures.hpp"
#include "susy_damp/modes.hpp"
#include "susy_damp/operators.hpp"
#include "susy_damp/oracle.hpp"
#include "susy_damp/riccati.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <future>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <random>

namespace susy_damp {

namespace {

constexpr std::array<std::pair<Scope, std::string_view>, 9> kScopeNames{{
    {Scope::All, "all"},
    {Scope::Core, "core"},
    {Scope::Riccati, "riccati"},
    {Scope::Factorization, "factorization"},
    {Scope::Intertwining, "intertwining"},
    {Scope::Eq10, "eq10"},
    {Scope::Limits, "limits"},
    {Scope::Wronskian, "wronskian"},
    {Scope::Oracle, "oracle"},
}};

// Platform-independent uniform draws on top of mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    bool coin() { return (engine_() >> 63) != 0; }
    double signed_magnitude(double lo, double hi) { return coin() ? uniform(lo, hi) : -uniform(lo, hi); }

private:
    std::mt19937_64 engine_;
};

std::uint64_t check_seed(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : name) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ^ (seed * 0x9E3779B97F4A7C15ULL);
}

class Tracker {
public:
    void add(double residual, const WorstPoint& at) {
        if (std::isnan(residual)) residual = std::numeric_limits<double>::infinity();
        if (!seen_ || residual > worst_) {
            worst_ = residual;
            at_ = at;
            seen_ = true;
        }
    }
    double worst() const { return worst_; }
    const WorstPoint& at() const { return at_; }

private:
    bool seen_ = false;
    double worst_ = 0.0;
    WorstPoint at_;
};

WorstPoint point(const DampingParams& p, std::optional<double> gamma, double t) {
    return {p.beta(), p.omega0(), gamma, t};
}

WorstPoint point(const ModeSpec& s, double t) {
    std::optional<double> g;
    if (s.riccati()) g = s.riccati()->gamma();
    return point(s.params(), g, t);
}

double scale_of(std::initializer_list<double> terms) {
    double s = 1.0;
    for (double x : terms) s = std::max(s, std::abs(x));
    return s;
}

// Uniform time in [lo, hi] at least `margin` away from t* (and outside its guard band).
double sample_time(Rng& rng, const std::optional<RiccatiParam>& r, double margin = 0.0, double lo = 0.0,
                   double hi = 10.0) {
    for (;;) {
        const double t = rng.uniform(lo, hi);
        if (!r) return t;
        if (!r->is_singular(t) && std::abs(t - r->t_star()) >= margin) return t;
    }
}

// Random physical parameters in the requested regime.
DampingParams random_params(Rng& rng, RegimeTag tag) {
    const double beta = rng.uniform(0.1, 2.0);
    switch (tag) {
        case RegimeTag::Underdamped: return DampingParams::from_omega0(beta, beta * rng.uniform(1.1, 4.0));
        case RegimeTag::Critical: return DampingParams::from_omega0_sq(beta, beta * beta);
        case RegimeTag::Overdamped: return DampingParams::from_omega0(beta, beta * rng.uniform(0.05, 0.9));
    }
    return DampingParams::from_omega0(1.0, 1.0);
}

RegimeTag random_regime(Rng& rng) {
    const double u = rng.uniform(0.0, 3.0);
    return u < 1.0 ? RegimeTag::Underdamped : (u < 2.0 ? RegimeTag::Critical : RegimeTag::Overdamped);
}

ModeSpec random_mode(Rng& rng, RegimeTag tag, std::optional<RiccatiParam> r) {
    const DampingParams p = random_params(rng, tag);
    Coefficients c = AmpPhase{rng.uniform(0.5, 2.0), rng.uniform(-3.0, 3.0)};
    if (tag == RegimeTag::Critical) c = AB{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    if (tag == RegimeTag::Overdamped && rng.coin()) c = AB{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
    return r ? ModeSpec::tilde(p, c, *r) : ModeSpec::seed(p, c);
}

std::vector<ModeSpec> figure_tilde_specs() {
    std::vector<ModeSpec> out;
    for (const FigureSet& fig : regime_figures())
        for (double g : fig.gammas) out.push_back(fig.tilde(g));
    return out;
}

struct TestFunction {
    const char* name;
    TimeFunction f;
};

// Smooth test family for operator identities; every member carries three
// analytic derivatives.
std::vector<TestFunction> smooth_family() {
    std::vector<TestFunction> fs;
    fs.push_back({"one", from_jet([](double) { return Jet<3>::constant(1.0); })});
    fs.push_back({"t^2", from_jet([](double t) {
                      const auto x = Jet<3>::affine(0.0, 1.0, t);
                      return x * x;
                  })});
    fs.push_back({"t^3", from_jet([](double t) {
                      const auto x = Jet<3>::affine(0.0, 1.0, t);
                      return x * x * x;
                  })});
    fs.push_back({"exp(0.3t)", from_jet([](double t) { return exp_jet<3>(0.3, t); })});
    fs.push_back({"exp(-0.7t)", from_jet([](double t) { return exp_jet<3>(-0.7, t); })});
    fs.push_back({"sin(1.3t+0.4)", from_jet([](double t) { return sin_jet<3>(1.3, 0.4, t); })});
    fs.push_back({"fig1 seed", mode_function(figure_set(1).seed())});
    fs.push_back({"fig2 tilde gamma=1", mode_function(figure_set(2).tilde(1.0))});
    fs.push_back({"fig3 tilde gamma=1/2", mode_function(figure_set(3).tilde(0.5))});
    return fs;
}

// Magnitude of the terms a second-order operator combines at t.
double operator_scale(const TimeFunction& f, double beta, const std::optional<RiccatiParam>& r, double t) {
    double h = 0.0;
    if (r) h = h_eval(RiccatiSolution::general(*r), t);
    const double coeff = scale_of({beta * beta, 2.0 * beta, h * h, std::abs(h)});
    double fmax = 1.0;
    for (int k = 0; k <= std::min(3, f.analytic_order()); ++k) fmax = std::max(fmax, std::abs(f.analytic(k, t)));
    return coeff * fmax;
}

struct CheckDef {
    const char* name;
    Scope scope;
    double threshold;
    std::function<Tracker(Rng&)> run;
};

// ---------------------------------------------------------------- core

Tracker check_regime_exhaustive(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const double beta = rng.uniform(0.01, 5.0);
        double omega0 = rng.uniform(0.01, 5.0);
        if (i % 4 == 0) omega0 = beta * (1.0 + rng.uniform(-2e-9, 2e-9));
        const auto p = DampingParams::from_omega0(beta, omega0);
        const Regime r = classify_regime(p);
        const double band = kCriticalTolerance * p.omega0_sq();
        RegimeTag expected = RegimeTag::Critical;
        if (p.alpha_sq() < -band) expected = RegimeTag::Underdamped;
        if (p.alpha_sq() > band) expected = RegimeTag::Overdamped;
        bool ok = r.tag == expected && classify_regime(p) == r;
        if (r.tag == RegimeTag::Underdamped) ok = ok && r.omega1 && !r.alpha;
        if (r.tag == RegimeTag::Overdamped) ok = ok && r.alpha && !r.omega1;
        if (r.tag == RegimeTag::Critical) ok = ok && !r.alpha && !r.omega1;
        tr.add(ok ? 0.0 : 1.0, point(p, std::nullopt, 0.0));
    }
    return tr;
}

Tracker check_frequency_partition(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const auto p = DampingParams::from_omega0(rng.uniform(0.01, 5.0), rng.uniform(0.01, 5.0));
        const Regime r = classify_regime(p);
        const double b2 = p.beta() * p.beta();
        const double scale = std::max(b2, p.omega0_sq());
        double res = 0.0;
        if (r.omega1) res = std::abs(b2 + *r.omega1 * *r.omega1 - p.omega0_sq()) / scale;
        if (r.alpha) res = std::abs(b2 - *r.alpha * *r.alpha - p.omega0_sq()) / scale;
        tr.add(res, point(p, std::nullopt, 0.0));
    }
    return tr;
}

Tracker check_coefficient_round_trip(Rng& rng) {
    Tracker tr;
    const Regime trig{RegimeTag::Underdamped, std::nullopt, 1.0};
    const Regime hyper{RegimeTag::Overdamped, 1.0, std::nullopt};
    const auto p = DampingParams::from_omega0(1.0, 1.0);
    for (int i = 0; i < kPointsPerCheck; ++i) {
        // AB -> (A~, phi) -> AB on both valid domains.  Opposite-sign pairs
        // with |A + B| <= A~ are the roots of x^2 - s x - A~^2/4.
        const double m = rng.uniform(0.01, 10.0);
        const double n = rng.uniform(0.01, 10.0);
        const double s = 2.0 * std::sqrt(m * n) * rng.uniform(-1.0, 1.0);
        const double disc = std::sqrt(s * s + 4.0 * m * n);
        const AB opposite = rng.coin() ? AB{0.5 * (s + disc), 0.5 * (s - disc)} : AB{0.5 * (s - disc), 0.5 * (s + disc)};
        const AB same{m, n};
        for (const auto& [ab, r] : {std::pair{opposite, trig}, std::pair{AB{m, m}, trig}, std::pair{same, hyper}}) {
            const AB back = amplitude_phase_to_ab(ab_to_amplitude_phase(ab, r), r);
            const double res = std::max(std::abs(back.A - ab.A), std::abs(back.B - ab.B)) /
                               std::max(std::abs(ab.A), std::abs(ab.B));
            tr.add(res, point(p, std::nullopt, 0.0));
        }
        // (A~, phi) -> AB -> (A~, phi).  The trig AB form carries phi only
        // through cos(phi), so phi itself is recoverable to eps/|sin(phi)|;
        // compare in the internal AB representation instead.
        const double amp = rng.uniform(0.01, 10.0);
        const AmpPhase ap_trig{amp, rng.uniform(-3.1, 3.1)};
        const AmpPhase ap_hyper{amp, rng.uniform(-5.0, 5.0)};
        const AB ab_trig = amplitude_phase_to_ab(ap_trig, trig);
        const AB ab_again = amplitude_phase_to_ab(ab_to_amplitude_phase(ab_trig, trig), trig);
        const double res_trig = std::max(std::abs(ab_again.A - ab_trig.A), std::abs(ab_again.B - ab_trig.B)) / amp;
        tr.add(res_trig, point(p, std::nullopt, 0.0));
        const AmpPhase h1 = ab_to_amplitude_phase(amplitude_phase_to_ab(ap_hyper, hyper), hyper);
        tr.add(std::max(std::abs(h1.amplitude - amp) / amp, std::abs(h1.phase - ap_hyper.phase) /
                                                                 std::max(1.0, std::abs(ap_hyper.phase))),
               point(p, std::nullopt, 0.0));
    }
    return tr;
}

// ---------------------------------------------------------------- riccati

Tracker check_h_identity(Rng& rng) {
    Tracker tr;
    const auto p = DampingParams::from_omega0(1.0, 1.0);
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const RiccatiParam r(rng.signed_magnitude(0.01, 10.0));
        const double t = sample_time(rng, r);
        const auto s = RiccatiSolution::general(r);
        const double h = h_eval(s, t);
        tr.add(std::abs(riccati_residual(s, t)) / std::max(1.0, h * h), point(p, r.gamma(), t));
    }
    return tr;
}

Tracker check_factorization_conditions(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const auto p = DampingParams::from_omega0(rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0));
        const RiccatiParam r(rng.signed_magnitude(0.01, 10.0));
        const double t = sample_time(rng, r);
        const auto s = RiccatiSolution::general(r);
        const double beta = p.beta();
        const double f = f_eval(p, s, t);
        const double g = g_eval(p, s, t);
        const double dg = -h_prime(s, t);
        const double h = h_eval(s, t);
        const double sum_res = std::abs(f + g - 2.0 * beta) / scale_of({2.0 * beta, h});
        const double prod_res = std::abs(dg + f * g - beta * beta) / scale_of({beta * beta, h * h});
        tr.add(std::max(sum_res, prod_res), point(p, r.gamma(), t));
    }
    return tr;
}

Tracker check_full_riccati(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const auto p = DampingParams::from_omega0(rng.uniform(0.05, 3.0), rng.uniform(0.05, 3.0));
        const RiccatiParam r(rng.signed_magnitude(0.01, 10.0));
        const double t = sample_time(rng, r);
        const auto s = RiccatiSolution::general(r);
        const double f = f_eval(p, s, t);
        tr.add(std::abs(full_riccati_residual(p, s, t)) / scale_of({f * f, p.beta() * p.beta()}),
               point(p, r.gamma(), t));
    }
    return tr;
}

// ---------------------------------------------------------------- operators

template <typename Defect>
Tracker operator_identity(Rng& rng, bool analytic, double margin, Defect defect) {
    Tracker tr;
    const auto family = smooth_family();
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const TestFunction& tf = family[static_cast<std::size_t>(i) % family.size()];
        const auto p = DampingParams::from_omega0(rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0));
        const RiccatiParam r(rng.signed_magnitude(0.1, 2.0));
        std::optional<RiccatiParam> ropt = r;
        double t = sample_time(rng, ropt, margin);
        // Keep away from the test function's own pole as well.
        for (double pole : tf.f.poles())
            while (std::abs(t - pole) < std::max(margin, 0.05)) t = sample_time(rng, ropt, margin);
        const TimeFunction f = analytic ? tf.f : tf.f.value_only();
        const double d = defect(p, r, f, t);
        tr.add(std::abs(d) / operator_scale(tf.f, p.beta(), ropt, t), point(p, r.gamma(), t));
    }
    return tr;
}

Tracker check_factorization_analytic(Rng& rng) {
    return operator_identity(rng, true, 0.0, factorization_defect);
}

Tracker check_factorization_fd(Rng& rng) { return operator_identity(rng, false, 0.25, factorization_defect); }

Tracker check_intertwining_analytic(Rng& rng) {
    return operator_identity(rng, true, 0.0, intertwining_defect);
}

Tracker check_intertwining_fd(Rng& rng) { return operator_identity(rng, false, 0.25, intertwining_defect); }

Tracker check_linearity(Rng& rng) {
    Tracker tr;
    const auto family = smooth_family();
    constexpr std::array kinds{OperatorKind::L,  OperatorKind::Aplus,   OperatorKind::Aminus,  OperatorKind::N,
                               OperatorKind::Ng, OperatorKind::NgTilde, OperatorKind::Newton10};
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const auto& f = family[static_cast<std::size_t>(rng.uniform(0.0, 1.0) * family.size()) % family.size()].f;
        const auto& g = family[static_cast<std::size_t>(rng.uniform(0.0, 1.0) * family.size()) % family.size()].f;
        const double a = rng.uniform(-3.0, 3.0);
        const double b = rng.uniform(-3.0, 3.0);
        std::vector<TimeFunction::Fn> ds;
        for (int k = 1; k <= 3; ++k)
            ds.push_back([f, g, a, b, k](double t) { return a * f.analytic(k, t) + b * g.analytic(k, t); });
        std::vector<double> poles = f.poles();
        poles.insert(poles.end(), g.poles().begin(), g.poles().end());
        const TimeFunction combo([f, g, a, b](double t) { return a * f(t) + b * g(t); }, ds, poles);

        const auto p = DampingParams::from_omega0(rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0));
        const RiccatiParam r(rng.signed_magnitude(0.1, 2.0));
        const OperatorSpec op(kinds[static_cast<std::size_t>(i) % kinds.size()], p, r);
        double t = sample_time(rng, r, 0.05);
        auto near_pole = [&](double s) {
            return std::any_of(poles.begin(), poles.end(), [s](double q) { return std::abs(s - q) < 0.05; });
        };
        while (near_pole(t)) t = sample_time(rng, r, 0.05);

        const double lhs = apply(op, combo, t);
        const double fa = apply(op, f, t);
        const double gb = apply(op, g, t);
        const double scale = scale_of({lhs, a * fa, b * gb});
        tr.add(std::abs(lhs - (a * fa + b * gb)) / scale, point(p, r.gamma(), t));
    }
    return tr;
}

Tracker check_newton10_shift(Rng& rng) {
    Tracker tr;
    const auto family = smooth_family();
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const TimeFunction& f = family[static_cast<std::size_t>(i) % family.size()].f;
        const auto p = DampingParams::from_omega0(rng.uniform(0.1, 2.0), rng.uniform(0.1, 2.0));
        const RiccatiParam r(rng.signed_magnitude(0.1, 2.0));
        double t = sample_time(rng, r, 0.05);
        for (double pole : f.poles())
            while (std::abs(t - pole) < 0.05) t = sample_time(rng, r, 0.05);
        const double shift = apply(OperatorSpec(OperatorKind::Newton10, p, r), f, t) -
                             apply(OperatorSpec(OperatorKind::NgTilde, p, r), f, t);
        tr.add(std::abs(shift + p.alpha_sq() * f(t)) / operator_scale(f, p.beta(), r, t), point(p, r.gamma(), t));
    }
    return tr;
}

// Residual is 1/ratio: halving the step must shrink the plain central
// difference error by >= 3.5.  Exponentials keep the leading error term nonzero.
Tracker check_fd_convergence(Rng& rng) {
    Tracker tr;
    const auto p = DampingParams::from_omega0(1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double rate = rng.signed_magnitude(0.2, 1.5);
        const auto f = [rate](double s) { return std::exp(rate * s); };
        const double t = rng.uniform(0.0, 10.0);
        const double step = 0.1 * std::max(1.0, std::abs(t));
        for (int order = 1; order <= 3; ++order) {
            const double exact = std::pow(rate, order) * f(t);
            const double coarse = std::abs(fd::central(f, order, t, step) - exact);
            const double fine = std::abs(fd::central(f, order, t, 0.5 * step) - exact);
            tr.add(fine / coarse, point(p, std::nullopt, t));
        }
    }
    return tr;
}

// Residual is 1/variation of A+ y+ / y+ over [0, 10]: it must not be constant.
Tracker check_aplus_not_eigen(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < 20; ++i) {
        const DampingParams p = random_params(rng, RegimeTag::Overdamped);
        const RiccatiParam r(rng.uniform(0.1, 5.0));
        const OperatorSpec aplus(OperatorKind::Aplus, p, r);
        const TimeFunction y = seed_pm_function(p, Sign::Plus);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int k = 0; k <= 100; ++k) {
            const double t = 0.1 * k;
            const double ratio = apply(aplus, y, t) / y(t);
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
        }
        tr.add(1.0 / (hi - lo), point(p, r.gamma(), 0.0));
    }
    return tr;
}

Tracker check_susy_mapping(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const DampingParams p = random_params(rng, RegimeTag::Overdamped);
        const RiccatiParam r(rng.signed_magnitude(0.1, 5.0));
        const Sign sign = rng.coin() ? Sign::Plus : Sign::Minus;
        const double t = sample_time(rng, r);
        const double mapped = apply(OperatorSpec(OperatorKind::Aminus, p, r), seed_pm_function(p, sign), t);
        const ModeEval direct = eval_tilde_pm(p, r, sign, t);
        const double h = h_eval(RiccatiSolution::general(r), t);
        const double y = eval_seed_pm(p, sign, t).y;
        tr.add(std::abs(mapped - direct.y) / scale_of({direct.y, h * y, *classify_regime(p).alpha * y}),
               point(p, r.gamma(), t));
    }
    return tr;
}

Tracker check_seed_eigenrelation(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const DampingParams p = random_params(rng, RegimeTag::Overdamped);
        const RiccatiParam r(rng.signed_magnitude(0.1, 5.0));
        const Sign sign = rng.coin() ? Sign::Plus : Sign::Minus;
        const double t = sample_time(rng, r);
        const TimeFunction y = seed_pm_function(p, sign);
        const double expected = p.alpha_sq() * y(t);
        for (OperatorKind kind : {OperatorKind::N, OperatorKind::Ng}) {
            const double got = apply(OperatorSpec(kind, p, r), y, t);
            tr.add(std::abs(got - expected) / operator_scale(y, p.beta(), r, t), point(p, r.gamma(), t));
        }
    }
    return tr;
}

Tracker check_tilde_eigenrelation(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const DampingParams p = random_params(rng, RegimeTag::Overdamped);
        const RiccatiParam r(rng.signed_magnitude(0.1, 5.0));
        const Sign sign = rng.coin() ? Sign::Plus : Sign::Minus;
        const double t = sample_time(rng, r);
        const TimeFunction y = tilde_pm_function(p, r, sign);
        const double got = apply(OperatorSpec(OperatorKind::NgTilde, p, r), y, t);
        tr.add(std::abs(got - p.alpha_sq() * y(t)) / operator_scale(y, p.beta(), r, t), point(p, r.gamma(), t));
    }
    return tr;
}

// ---------------------------------------------------------------- modes

double eq10_residual(const ModeSpec& spec, double t) {
    const ModeEval e = eval_tilde(spec, t);
    const double h = h_eval(RiccatiSolution::general(*spec.riccati()), t);
    const double beta = spec.params().beta();
    const double w2 = spec.params().omega0_sq();
    const double anti = 2.0 * h * h * e.y;
    const double res = e.d2y + 2.0 * beta * e.dy + w2 * e.y - anti;
    return std::abs(res) / scale_of({e.y, e.dy, e.d2y, 2.0 * beta * e.dy, w2 * e.y, anti});
}

Tracker check_eq10(Rng& rng) {
    Tracker tr;
    for (const ModeSpec& spec : figure_tilde_specs()) {
        for (int i = 0; i < kPointsPerCheck; ++i) {
            const double t = sample_time(rng, spec.riccati());
            tr.add(eq10_residual(spec, t), point(spec, t));
        }
    }
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const ModeSpec spec = random_mode(rng, random_regime(rng), RiccatiParam(rng.signed_magnitude(0.1, 5.0)));
        const double t = sample_time(rng, spec.riccati());
        tr.add(eq10_residual(spec, t), point(spec, t));
    }
    return tr;
}

Tracker check_seed_residual(Rng& rng) {
    Tracker tr;
    auto add = [&tr](const ModeSpec& spec, double t) {
        const ModeEval e = eval_seed(spec, t);
        const double beta = spec.params().beta();
        const double w2 = spec.params().omega0_sq();
        const double res = e.d2y + 2.0 * beta * e.dy + w2 * e.y;
        tr.add(std::abs(res) / scale_of({e.y, e.dy, e.d2y, 2.0 * beta * e.dy, w2 * e.y}), point(spec, t));
    };
    for (const FigureSet& fig : regime_figures())
        for (int i = 0; i < kPointsPerCheck; ++i) add(fig.seed(), rng.uniform(0.0, 10.0));
    for (int i = 0; i < kPointsPerCheck; ++i) add(random_mode(rng, random_regime(rng), std::nullopt), rng.uniform(0.0, 10.0));
    return tr;
}

Tracker check_derivative_consistency(Rng& rng) {
    Tracker tr;
    // Central differences; the step shrinks with the distance to the pole so
    // the truncation error stays relative rather than absolute.
    auto add = [&tr](const std::function<ModeEval(double)>& eval, const WorstPoint& at) {
        const double reach = at.gamma ? std::min(1.0, std::abs(at.t + 1.0 / *at.gamma)) : 1.0;
        const double step = 2e-5 * reach;
        const ModeEval mid = eval(at.t);
        const ModeEval fwd = eval(at.t + step);
        const ModeEval bwd = eval(at.t - step);
        const double scale = scale_of({mid.y, mid.dy, mid.d2y});
        const double d1 = std::abs((fwd.y - bwd.y) / (2.0 * step) - mid.dy) / scale;
        const double d2 = std::abs((fwd.dy - bwd.dy) / (2.0 * step) - mid.d2y) / scale;
        WorstPoint p = at;
        tr.add(std::max(d1, d2), p);
    };
    std::vector<ModeSpec> specs = figure_tilde_specs();
    for (const FigureSet& fig : regime_figures()) specs.push_back(fig.seed());
    for (const ModeSpec& spec : specs) {
        for (int i = 0; i < kPointsPerCheck / 10; ++i) {
            const double t = sample_time(rng, spec.riccati(), 0.05);
            add([&spec](double s) { return eval_mode(spec, s); }, point(spec, t));
        }
    }
    for (int i = 0; i < kPointsPerCheck / 10; ++i) {
        const DampingParams over = random_params(rng, RegimeTag::Overdamped);
        const DampingParams crit = random_params(rng, RegimeTag::Critical);
        const RiccatiParam r(rng.signed_magnitude(0.1, 5.0));
        const double t = sample_time(rng, r, 0.05);
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            add([&](double x) { return eval_tilde_pm(over, r, s, x); }, point(over, r.gamma(), t));
            add([&](double x) { return eval_seed_pm(over, s, x); }, point(over, std::nullopt, t));
        }
        add([&](double x) { return critical_second_solution(crit, r, 1.0, x); }, point(crit, r.gamma(), t));
    }
    return tr;
}

// ---------------------------------------------------------------- limits

Tracker check_gamma_zero_h(Rng& rng) {
    Tracker tr;
    const auto s = RiccatiSolution::general(RiccatiParam(1e-8));
    const auto p = DampingParams::from_omega0(1.0, 1.0);
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const double t = rng.uniform(0.0, 10.0);
        tr.add(std::abs(h_eval(s, t)), point(p, 1e-8, t));
    }
    return tr;
}

Tracker check_gamma_limit_overdamped(Rng& rng) {
    Tracker tr;
    const RiccatiParam r(1e-6);
    std::vector<DampingParams> params{figure_set(3).params};
    for (int i = 0; i < 9; ++i) params.push_back(DampingParams::from_alpha_sq(rng.uniform(0.5, 2.0), std::pow(rng.uniform(0.1, 0.45), 2)));
    for (const DampingParams& p : params) {
        const double alpha = *classify_regime(p).alpha;
        for (int i = 0; i < kPointsPerCheck / 10; ++i) {
            const double t = rng.uniform(0.0, 10.0);
            for (Sign s : {Sign::Plus, Sign::Minus}) {
                const double sign = s == Sign::Plus ? 1.0 : -1.0;
                const double ratio = eval_tilde_pm(p, r, s, t).y / (sign * alpha * eval_seed_pm(p, s, t).y);
                tr.add(std::abs(ratio - 1.0), point(p, r.gamma(), t));
            }
        }
    }
    return tr;
}

// -A~ w1 sin(w1 t + phi) e^{-beta t}: the gamma -> 0 limit of the underdamped family.
Jet<2> underdamped_limit(const ModeSpec& seed, double t) {
    const AmpPhase c = as_amplitude_phase(seed.coefficients(), seed.regime());
    const double w1 = *seed.regime().omega1;
    return (-c.amplitude * w1) * (sin_jet<2>(w1, c.phase, t) * exp_jet<2>(-seed.params().beta(), t));
}

std::vector<ModeSpec> underdamped_seeds(Rng& rng) {
    std::vector<ModeSpec> seeds{figure_set(1).seed()};
    for (int i = 0; i < 9; ++i) seeds.push_back(random_mode(rng, RegimeTag::Underdamped, std::nullopt));
    return seeds;
}

Tracker check_gamma_limit_underdamped(Rng& rng) {
    Tracker tr;
    for (const ModeSpec& seed : underdamped_seeds(rng)) {
        const double beta = seed.params().beta();
        const double w2 = seed.params().omega0_sq();
        for (int i = 0; i < kPointsPerCheck / 10; ++i) {
            const double t = rng.uniform(0.0, 10.0);
            const Jet<2> y = underdamped_limit(seed, t);
            const double res = y[2] + 2.0 * beta * y[1] + w2 * y[0];
            tr.add(std::abs(res) / scale_of({y[0], y[1], y[2], 2.0 * beta * y[1], w2 * y[0]}), point(seed, t));
        }
    }
    return tr;
}

Tracker check_gamma_limit_underdamped_convergence(Rng& rng) {
    Tracker tr;
    const RiccatiParam r(1e-6);
    for (const ModeSpec& seed : underdamped_seeds(rng)) {
        const ModeSpec tilde = seed.with_gamma(r);
        for (int i = 0; i < kPointsPerCheck / 10; ++i) {
            const double t = rng.uniform(0.0, 10.0);
            const double limit = underdamped_limit(seed, t)[0];
            tr.add(std::abs(eval_tilde(tilde, t).y - limit) / scale_of({limit}), point(tilde, t));
        }
    }
    return tr;
}

// Residual counts violations of: t* = -1/gamma, sign(t*) = -sign(gamma).
Tracker check_blow_up_sign(Rng& rng) {
    Tracker tr;
    const auto p = DampingParams::from_omega0(1.0, 1.0);
    double violations = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double magnitude = std::pow(10.0, rng.uniform(-3.0, 3.0));
        const double gamma = rng.coin() ? magnitude : -magnitude;
        const double t_star = blow_up_time(RiccatiParam(gamma));
        const bool ok = t_star == -1.0 / gamma && (gamma > 0.0 ? t_star < 0.0 : t_star > 0.0);
        if (!ok) {
            violations += 1.0;
            tr.add(violations, point(p, gamma, t_star));
        }
    }
    if (violations == 0.0) tr.add(0.0, point(p, std::nullopt, 0.0));
    return tr;
}

// ---------------------------------------------------------------- wronskian

Tracker check_critical_wronskian(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const DampingParams p = random_params(rng, RegimeTag::Critical);
        const RiccatiParam r(rng.signed_magnitude(0.1, 5.0));
        const double t = sample_time(rng, r);
        const ModeEval y1 = eval_tilde(ModeSpec::critical_tilde(p, 1.0, 0.0, r), t);
        const ModeEval y2 = critical_second_solution(p, r, 1.0, t);
        const double w = y1.y * y2.dy - y1.dy * y2.y;
        const double target = -3.0 * std::exp(-2.0 * p.beta() * t);
        tr.add(std::abs(w - target) / std::abs(target), point(p, r.gamma(), t));
    }
    return tr;
}

Tracker check_abel_identity(Rng& rng) {
    Tracker tr;
    for (int i = 0; i < kPointsPerCheck; ++i) {
        const DampingParams p = random_params(rng, RegimeTag::Critical);
        const RiccatiParam r(rng.signed_magnitude(0.1, 5.0));
        const double t = sample_time(rng, r);
        const ModeEval y1 = eval_tilde(ModeSpec::critical_tilde(p, 1.0, 0.0, r), t);
        const ModeEval y2 = critical_second_solution(p, r, 1.0, t);
        const double w = y1.y * y2.dy - y1.dy * y2.y;
        const double dw = y1.y * y2.d2y - y1.d2y * y2.y;
        const double scale = std::max({std::abs(dw), std::abs(2.0 * p.beta() * w), std::abs(y1.y * y2.d2y),
                                       std::abs(y1.d2y * y2.y)});
        tr.add(std::abs(dw + 2.0 * p.beta() * w) / scale, point(p, r.gamma(), t));
    }
    return tr;
}

// ---------------------------------------------------------------- oracle

std::vector<double> uniform_grid(double t0, double t1, int intervals) {
    std::vector<double> g(static_cast<std::size_t>(intervals) + 1);
    for (int i = 0; i <= intervals; ++i) g[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / intervals;
    return g;
}

IVP closed_form_ivp(const ModeSpec& spec, double t0, double t_end) {
    const ModeEval e = eval_mode(spec, t0);
    if (spec.riccati()) return IVP::partner(spec.params(), *spec.riccati(), t0, e.y, e.dy, t_end);
    return IVP::free_damping(spec.params(), t0, e.y, e.dy, t_end);
}

Tracker check_oracle_closed_form(Rng&) {
    Tracker tr;
    const auto grid = uniform_grid(0.0, 10.0, 1000);
    const Tolerances tol;
    for (const ModeSpec& spec : figure_tilde_specs()) {
        const Trajectory traj = integrate(closed_form_ivp(spec, 0.0, 10.0), tol, grid);
        double scale = 0.0;
        std::vector<double> exact(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            exact[i] = eval_mode(spec, grid[i]).y;
            scale = std::max(scale, std::abs(exact[i]));
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
            tr.add(std::abs(traj.ys[i] - exact[i]) / scale, point(spec, grid[i]));
    }
    return tr;
}

Tracker check_oracle_self_convergence(Rng&) {
    Tracker tr;
    const auto grid = uniform_grid(0.0, 10.0, 1000);
    for (const ModeSpec& spec : figure_tilde_specs())
        tr.add(self_convergence(closed_form_ivp(spec, 0.0, 10.0), grid), point(spec, 10.0));
    return tr;
}

// Residual is 1/ratio of global errors for step h and h/2: >= 16 required.
Tracker check_oracle_order(Rng&) {
    Tracker tr;
    const auto p = DampingParams::from_omega0(1.0, 1.0);
    const IVP ivp = IVP::free_damping(p, 0.0, 1.0, 0.0, 10.0);
    const double exact = std::exp(-10.0) * 11.0;
    for (std::size_t steps : {10U, 20U, 40U}) {
        const double coarse = std::abs(integrate_fixed_step(ivp, steps).y - exact);
        const double fine = std::abs(integrate_fixed_step(ivp, 2 * steps).y - exact);
        tr.add(fine / coarse, point(p, std::nullopt, 10.0 / static_cast<double>(steps)));
    }
    return tr;
}

Tracker check_oracle_time_reversal(Rng&) {
    Tracker tr;
    std::vector<ModeSpec> specs = figure_tilde_specs();
    for (const FigureSet& fig : regime_figures()) specs.push_back(fig.seed());
    const Tolerances tol;
    for (const ModeSpec& spec : specs) {
        const IVP forward = closed_form_ivp(spec, 0.0, 5.0);
        const std::array<double, 1> end{5.0};
        const Trajectory there = integrate(forward, tol, end);
        IVP backward = forward;
        backward.t0 = 5.0;
        backward.t_end = 0.0;
        backward.y0 = there.ys[0];
        backward.dy0 = there.dys[0];
        const std::array<double, 1> start{0.0};
        const Trajectory back = integrate(backward, tol, start);
        const double scale = scale_of({forward.y0, forward.dy0});
        const double res = std::max(std::abs(back.ys[0] - forward.y0), std::abs(back.dys[0] - forward.dy0)) / scale;
        tr.add(res, point(spec, 0.0));
    }
    return tr;
}

Tracker check_oracle_zero(Rng& rng) {
    Tracker tr;
    const auto grid = uniform_grid(0.0, 10.0, 100);
    for (int i = 0; i < 10; ++i) {
        const DampingParams p = random_params(rng, random_regime(rng));
        const RiccatiParam r(rng.uniform(0.1, 5.0));
        const Trajectory traj = integrate(IVP::partner(p, r, 0.0, 0.0, 0.0, 10.0), Tolerances{}, grid);
        double m = 0.0;
        for (std::size_t k = 0; k < grid.size(); ++k) m = std::max({m, std::abs(traj.ys[k]), std::abs(traj.dys[k])});
        tr.add(m, point(p, r.gamma(), 0.0));
    }
    return tr;
}

const std::vector<CheckDef>& registry() {
    static const std::vector<CheckDef> defs{
        {"core.coefficient_round_trip", Scope::Core, 1e-12, check_coefficient_round_trip},
        {"core.frequency_partition", Scope::Core, 1e-14, check_frequency_partition},
        {"core.regime_exhaustive", Scope::Core, 0.0, check_regime_exhaustive},
        {"modes.abel_identity", Scope::Wronskian, 1e-12, check_abel_identity},
        {"modes.blow_up_sign", Scope::Limits, 0.0, check_blow_up_sign},
        {"modes.critical_wronskian", Scope::Wronskian, 1e-12, check_critical_wronskian},
        {"modes.derivative_consistency", Scope::Eq10, 1e-8, check_derivative_consistency},
        {"modes.eq10_residual", Scope::Eq10, 1e-11, check_eq10},
        {"modes.gamma_limit_overdamped", Scope::Limits, 1e-4, check_gamma_limit_overdamped},
        {"modes.gamma_limit_underdamped", Scope::Limits, 1e-12, check_gamma_limit_underdamped},
        {"modes.gamma_limit_underdamped_convergence", Scope::Limits, 1e-4, check_gamma_limit_underdamped_convergence},
        {"modes.seed_eigenrelation", Scope::Intertwining, 1e-12, check_seed_eigenrelation},
        {"modes.seed_residual", Scope::Eq10, 1e-12, check_seed_residual},
        {"modes.tilde_eigenrelation", Scope::Intertwining, 1e-11, check_tilde_eigenrelation},
        {"operators.aplus_not_eigenfunction", Scope::Factorization, 1e3, check_aplus_not_eigen},
        {"operators.factorization_analytic", Scope::Factorization, 1e-12, check_factorization_analytic},
        {"operators.factorization_fd", Scope::Factorization, 1e-6, check_factorization_fd},
        {"operators.fd_convergence_order", Scope::Factorization, 1.0 / 3.5, check_fd_convergence},
        {"operators.intertwining_analytic", Scope::Intertwining, 1e-10, check_intertwining_analytic},
        {"operators.intertwining_fd", Scope::Intertwining, 1e-5, check_intertwining_fd},
        {"operators.linearity", Scope::Factorization, 1e-10, check_linearity},
        {"operators.newton10_shift", Scope::Factorization, 1e-12, check_newton10_shift},
        {"operators.susy_mapping", Scope::Intertwining, 1e-12, check_susy_mapping},
        {"oracle.closed_form_match", Scope::Oracle, Tolerances{}.rel * 100.0, check_oracle_closed_form},
        {"oracle.order_verification", Scope::Oracle, 1.0 / 16.0, check_oracle_order},
        {"oracle.self_convergence", Scope::Oracle, 1e-7, check_oracle_self_convergence},
        {"oracle.time_reversal", Scope::Oracle, 1e-7, check_oracle_time_reversal},
        {"oracle.zero_solution", Scope::Oracle, 0.0, check_oracle_zero},
        {"riccati.factorization_conditions", Scope::Riccati, 1e-12, check_factorization_conditions},
        {"riccati.full_equation", Scope::Riccati, 1e-12, check_full_riccati},
        {"riccati.gamma_zero_limit", Scope::Limits, 1e-7, check_gamma_zero_h},
        {"riccati.h_identity", Scope::Riccati, 1e-13, check_h_identity},
    };
    return defs;
}

bool in_scope(const CheckDef& d, Scope scope) { return scope == Scope::All || d.scope == scope; }

}  // namespace

std::optional<Scope> parse_scope(std::string_view name) {
    for (const auto& [scope, n] : kScopeNames)
        if (n == name) return scope;
    return std::nullopt;
}

std::string_view to_string(Scope scope) noexcept {
    for (const auto& [s, n] : kScopeNames)
        if (s == scope) return n;
    return "unknown";
}

std::vector<std::string_view> scope_names() {
    std::vector<std::string_view> out;
    for (const auto& entry : kScopeNames) out.push_back(entry.second);
    return out;
}

std::vector<std::string> check_names(Scope scope) {
    std::vector<std::string> out;
    for (const CheckDef& d : registry())
        if (in_scope(d, scope)) out.emplace_back(d.name);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CheckReport> run_suite(Scope scope, std::uint64_t seed) {
    std::vector<std::future<CheckReport>> pending;
    for (const CheckDef& d : registry()) {
        if (!in_scope(d, scope)) continue;
        pending.push_back(std::async(std::launch::async, [&d, seed] {
            CheckReport rep;
            rep.check_name = d.name;
            rep.threshold = d.threshold;
            try {
                Rng rng(check_seed(seed, d.name));
                const Tracker tr = d.run(rng);
                rep.max_residual = tr.worst();
                rep.worst_point = tr.at();
            } catch (const std::exception&) {
                rep.max_residual = std::numeric_limits<double>::infinity();
            }
            rep.passed = rep.max_residual <= rep.threshold;
            return rep;
        }));
    }
    std::vector<CheckReport> reports;
    for (auto& f : pending) reports.push_back(f.get());
    std::sort(reports.begin(), reports.end(),
              [](const CheckReport& a, const CheckReport& b) { return a.check_name < b.check_name; });
    return reports;
}

bool all_passed(const std::vector<CheckReport>& reports) noexcept {
    return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

std::string report_to_json(const std::vector<CheckReport>& reports, int indent) {
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
    auto finite_or_null = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckReport& r : reports) {
        arr.push_back({
            {"check_name", r.check_name},
            {"max_residual", finite_or_null(r.max_residual)},
            {"threshold", r.threshold},
            {"passed", r.passed},
            {"worst_point",
             {{"beta", opt(r.worst_point.beta)},
              {"omega0", opt(r.worst_point.omega0)},
              {"gamma", opt(r.worst_point.gamma)},
              {"t", r.worst_point.t}}},
        });
    }
    return arr.dump(indent);
}

}  // namespace susy_damp
