#include "susy_damp/operators.hpp"

#include "susy_damp/errors.hpp"
#include "susy_damp/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

namespace susy_damp {

namespace {

bool uses_riccati(OperatorKind k) {
    return k != OperatorKind::L && k != OperatorKind::N;
}

// Jet of the zeroth-order coefficient: c(t) for first-order operators,
// q(t) for second-order ones.
Jet<3> coefficient_jet(const OperatorSpec& op, double t) {
    const double beta = op.params().beta();
    Jet<4> h4;
    if (op.riccati()) h4 = RiccatiSolution::general(*op.riccati()).h_jet<4>(t);
    const Jet<3> h = h4.truncate<3>();
    Jet<3> dh;
    for (std::size_t k = 0; k <= 3; ++k) dh.d[k] = h4.d[k + 1];

    switch (op.kind()) {
        case OperatorKind::L: return Jet<3>::constant(beta);
        case OperatorKind::Aplus: return Jet<3>::constant(beta) + h;
        case OperatorKind::Aminus: return Jet<3>::constant(beta) - h;
        case OperatorKind::N: return Jet<3>::constant(beta * beta);
        case OperatorKind::Ng: return Jet<3>::constant(beta * beta) - dh - h * h;
        case OperatorKind::NgTilde: return Jet<3>::constant(beta * beta) - 2.0 * (h * h);
        case OperatorKind::Newton10: return Jet<3>::constant(op.params().omega0_sq()) - 2.0 * (h * h);
    }
    return {};
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int j = 0; j < k; ++j) b = b * (n - j) / (j + 1);
    return b;
}

// m-th derivative of (op f) given f^(0..m+order) and the coefficient jet.
double leibniz(const OperatorSpec& op, const Jet<3>& coeff, const std::array<double, 6>& df, int m) {
    const double beta = op.params().beta();
    double acc = op.order() == 1 ? df[m + 1] : df[m + 2] + 2.0 * beta * df[m + 1];
    for (int j = 0; j <= m; ++j) acc += binomial(m, j) * coeff[j] * df[m - j];
    return acc;
}

// f^(order) at t: analytic where available, otherwise differenced from the
// highest analytic derivative.
double derivative(const TimeFunction& f, int order, double t, int& differenced) {
    const int a = f.analytic_order();
    if (order <= a) return f.analytic(order, t);
    const int k = order - a;
    differenced = std::max(differenced, k);
    const double step = fd::default_step(k, t, f.poles());
    auto base = [&f, a](double s) { return f.analytic(a, s); };
    return fd::richardson(base, k, t, step);
}

}  // namespace

TimeFunction::TimeFunction(Fn value, std::vector<double> poles)
    : value_(std::move(value)), poles_(std::move(poles)) {}

TimeFunction::TimeFunction(Fn value, std::vector<Fn> derivatives, std::vector<double> poles)
    : value_(std::move(value)), poles_(std::move(poles)) {
    if (derivatives.size() > derivatives_.size())
        throw ParameterError("TimeFunction supports at most three analytic derivatives");
    for (std::size_t k = 0; k < derivatives.size(); ++k) {
        if (!derivatives[k]) break;
        derivatives_[k] = std::move(derivatives[k]);
        analytic_order_ = static_cast<int>(k) + 1;
    }
}

TimeFunction TimeFunction::value_only() const {
    TimeFunction out(value_, poles_);
    out.differenced_depth_ = differenced_depth_;
    return out;
}

double TimeFunction::analytic(int order, double t) const {
    if (order < 0 || order > analytic_order_) throw ParameterError("analytic derivative not available");
    return order == 0 ? value_(t) : derivatives_[order - 1](t);
}

TimeFunction from_jet(std::function<Jet<3>(double)> jet, std::vector<double> poles) {
    auto shared = std::make_shared<std::function<Jet<3>(double)>>(std::move(jet));
    std::vector<TimeFunction::Fn> ds;
    for (std::size_t k = 1; k <= 3; ++k) ds.push_back([shared, k](double t) { return (*shared)(t)[k]; });
    return TimeFunction([shared](double t) { return (*shared)(t)[0]; }, std::move(ds), std::move(poles));
}

TimeFunction mode_function(const ModeSpec& spec) {
    std::vector<double> poles;
    if (spec.riccati()) poles.push_back(spec.riccati()->t_star());
    return from_jet([spec](double t) { return mode_jet<3>(spec, t); }, std::move(poles));
}

TimeFunction seed_pm_function(const DampingParams& p, Sign sign) {
    (void)seed_pm_jet<0>(p, sign, 0.0);  // regime check up front
    return from_jet([p, sign](double t) { return seed_pm_jet<3>(p, sign, t); }, {});
}

TimeFunction tilde_pm_function(const DampingParams& p, const RiccatiParam& r, Sign sign) {
    (void)seed_pm_jet<0>(p, sign, 0.0);
    return from_jet([p, r, sign](double t) { return tilde_pm_jet<3>(p, r, sign, t); }, {r.t_star()});
}

std::string_view to_string(OperatorKind kind) noexcept {
    switch (kind) {
        case OperatorKind::L: return "L";
        case OperatorKind::Aplus: return "Aplus";
        case OperatorKind::Aminus: return "Aminus";
        case OperatorKind::N: return "N";
        case OperatorKind::Ng: return "Ng";
        case OperatorKind::NgTilde: return "NgTilde";
        case OperatorKind::Newton10: return "Newton10";
    }
    return "unknown";
}

OperatorSpec::OperatorSpec(OperatorKind kind, const DampingParams& params, std::optional<RiccatiParam> riccati)
    : kind_(kind), params_(params), riccati_(riccati) {
    if (uses_riccati(kind_) && !riccati_)
        throw ParameterError("operator " + std::string(to_string(kind_)) + " needs a Riccati parameter");
}

int OperatorSpec::order() const noexcept {
    switch (kind_) {
        case OperatorKind::L:
        case OperatorKind::Aplus:
        case OperatorKind::Aminus: return 1;
        default: return 2;
    }
}

Application apply_detailed(const OperatorSpec& op, const TimeFunction& f, double t) {
    if (op.riccati()) op.riccati()->require_regular(t);
    int differenced = 0;
    std::array<double, 6> df{};
    for (int k = 0; k <= op.order(); ++k) df[k] = derivative(f, k, t, differenced);
    const Jet<3> coeff = coefficient_jet(op, t);
    return {leibniz(op, coeff, df, 0), differenced + f.differenced_depth()};
}

double apply(const OperatorSpec& op, const TimeFunction& f, double t) { return apply_detailed(op, f, t).value; }

TimeFunction lift(const OperatorSpec& op, const TimeFunction& f) {
    struct LiftState {
        OperatorSpec op;
        TimeFunction f;
    };
    auto state = std::make_shared<const LiftState>(LiftState{op, f});

    std::vector<double> poles = f.poles();
    if (op.riccati()) poles.push_back(op.riccati()->t_star());

    TimeFunction::Fn value = [state](double t) { return apply(state->op, state->f, t); };

    std::vector<TimeFunction::Fn> ds;
    const int available = f.analytic_order() - op.order();
    for (int m = 1; m <= available; ++m) {
        ds.push_back([state, m](double t) {
            const OperatorSpec& o = state->op;
            if (o.riccati()) o.riccati()->require_regular(t);
            std::array<double, 6> df{};
            for (int k = 0; k <= m + o.order(); ++k) df[k] = state->f.analytic(k, t);
            return leibniz(o, coefficient_jet(o, t), df, m);
        });
    }
    TimeFunction out(std::move(value), std::move(ds), std::move(poles));
    out.differenced_depth_ = std::max(0, op.order() - f.analytic_order()) + f.differenced_depth();
    return out;
}

double factorization_defect(const DampingParams& p, const RiccatiParam& r, const TimeFunction& f, double t) {
    const OperatorSpec aplus(OperatorKind::Aplus, p, r);
    const OperatorSpec aminus(OperatorKind::Aminus, p, r);
    const OperatorSpec newton(OperatorKind::N, p);
    return apply(aplus, lift(aminus, f), t) - apply(newton, f, t);
}

double intertwining_defect(const DampingParams& p, const RiccatiParam& r, const TimeFunction& f, double t) {
    const OperatorSpec aminus(OperatorKind::Aminus, p, r);
    const OperatorSpec partner(OperatorKind::NgTilde, p, r);
    const OperatorSpec ng(OperatorKind::Ng, p, r);
    return apply(partner, lift(aminus, f), t) - apply(aminus, lift(ng, f), t);
}

namespace fd {

double central(const TimeFunction::Fn& f, int order, double t, double step) {
    // Make t +- step exactly representable.
    const double tp = t + step;
    const double h = tp - t;
    switch (order) {
        case 1: return (f(t + h) - f(t - h)) / (2.0 * h);
        case 2: return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
        case 3: return (f(t + 2.0 * h) - 2.0 * f(t + h) + 2.0 * f(t - h) - f(t - 2.0 * h)) / (2.0 * h * h * h);
        default: throw ParameterError("finite differences implemented for orders 1..3");
    }
}

double richardson(const TimeFunction::Fn& f, int order, double t, double step) {
    const double coarse = central(f, order, t, step);
    const double fine = central(f, order, t, 0.5 * step);
    return (4.0 * fine - coarse) / 3.0;
}

double default_step(int order, double t, const std::vector<double>& poles) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double base = std::max(1.0, std::abs(t));
    // The local length scale is the smaller of |t| (representation of t +- h)
    // and the distance to the nearest pole (radius of convergence).
    double length = base;
    for (double pole : poles) length = std::min(length, std::abs(t - pole));
    if (length < 1e-4 * base) throw DerivativeUnavailable("finite-difference stencil at t would cross or graze a pole");
    return std::pow(eps, 1.0 / (order + 4)) * length;
}

}  // namespace fd

}  // namespace susy_damp
