#pragma once

// First- and second-order operators of the factorized damped oscillator,
// applied to arbitrary time functions:
//
//   L        = d/dt + beta
//   A+       = d/dt + beta + h          A- = d/dt + beta - h
//   N        = d2/dt2 + 2 beta d/dt + beta^2
//   Ng       = A+ A-  expanded as  d2 + 2 beta d + beta^2 - h' - h^2
//   NgTilde  = A- A+  expanded as  d2 + 2 beta d + beta^2 - 2 h^2
//   Newton10 = d2 + 2 beta d + omega0^2 - 2 h^2
//
// with h = gamma / (gamma t + 1).  Derivatives of the argument come from its
// analytic evaluators when present and from Richardson-extrapolated central
// differences otherwise.

#include "susy_damp/core.hpp"
#include "susy_damp/modes.hpp"

#include <array>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

namespace susy_damp {

inline constexpr int kMaxAnalyticOrder = 3;

class OperatorSpec;

/// A real function of time with up to three optional analytic derivatives.
/// Implementations must be safe to call concurrently.
class TimeFunction {
public:
    using Fn = std::function<double(double)>;

    explicit TimeFunction(Fn value, std::vector<double> poles = {});
    /// derivatives[k] evaluates the (k+1)-th derivative; at most three.
    TimeFunction(Fn value, std::vector<Fn> derivatives, std::vector<double> poles = {});

    double operator()(double t) const { return value_(t); }

    /// Highest order k such that derivatives 1..k are all analytic.
    int analytic_order() const noexcept { return analytic_order_; }

    /// Analytic derivative of order 0..analytic_order().
    double analytic(int order, double t) const;

    /// Instants a finite-difference stencil must not cross.
    const std::vector<double>& poles() const noexcept { return poles_; }

    /// The same function with its analytic derivatives dropped.
    TimeFunction value_only() const;

    /// Derivative orders already differenced inside each evaluation (nonzero
    /// for results of `lift` on functions without enough analytic derivatives).
    int differenced_depth() const noexcept { return differenced_depth_; }

private:
    friend TimeFunction lift(const OperatorSpec& op, const TimeFunction& f);

    Fn value_;
    std::array<Fn, kMaxAnalyticOrder> derivatives_;
    int analytic_order_ = 0;
    int differenced_depth_ = 0;
    std::vector<double> poles_;
};

/// TimeFunction whose value and three derivatives come from one jet evaluator.
TimeFunction from_jet(std::function<Jet<3>(double)> jet, std::vector<double> poles = {});

/// Analytic TimeFunction of a closed-form mode (derivatives through order 3).
TimeFunction mode_function(const ModeSpec& spec);
TimeFunction seed_pm_function(const DampingParams& p, Sign sign);
TimeFunction tilde_pm_function(const DampingParams& p, const RiccatiParam& r, Sign sign);

enum class OperatorKind { L, Aplus, Aminus, N, Ng, NgTilde, Newton10 };

std::string_view to_string(OperatorKind kind) noexcept;

class OperatorSpec {
public:
    /// Throws ParameterError if `kind` involves h and `riccati` is absent.
    OperatorSpec(OperatorKind kind, const DampingParams& params, std::optional<RiccatiParam> riccati = std::nullopt);

    OperatorKind kind() const noexcept { return kind_; }
    const DampingParams& params() const noexcept { return params_; }
    const std::optional<RiccatiParam>& riccati() const noexcept { return riccati_; }
    /// 1 for L, A+, A-; 2 for the rest.
    int order() const noexcept;

private:
    OperatorKind kind_;
    DampingParams params_;
    std::optional<RiccatiParam> riccati_;
};

struct Application {
    double value;
    /// Highest derivative order taken by finite differences; 0 on the analytic path.
    int differenced_order;
};

/// Throws SingularTime near t* and DerivativeUnavailable when a stencil
/// cannot be kept on one side of a pole.
Application apply_detailed(const OperatorSpec& op, const TimeFunction& f, double t);
double apply(const OperatorSpec& op, const TimeFunction& f, double t);

/// t -> (op f)(t), carrying analytic derivatives when f has enough of them.
TimeFunction lift(const OperatorSpec& op, const TimeFunction& f);

/// A+ (A- f) - N f; vanishes for every f because h' + h^2 = 0.
double factorization_defect(const DampingParams& p, const RiccatiParam& r, const TimeFunction& f, double t);

/// NgTilde (A- f) - A- (Ng f); vanishes for every f.
double intertwining_defect(const DampingParams& p, const RiccatiParam& r, const TimeFunction& f, double t);

namespace fd {

/// Plain central difference of order 1, 2 or 3 with the given step.
double central(const TimeFunction::Fn& f, int order, double t, double step);

/// One Richardson level on top of `central`: (4 D(step/2) - D(step)) / 3.
double richardson(const TimeFunction::Fn& f, int order, double t, double step);

/// eps^(1/(order+4)) times the local length scale min(max(1, |t|), distance
/// to the nearest pole).  Throws DerivativeUnavailable when a pole is closer
/// than 1e-4 * max(1, |t|).
double default_step(int order, double t, const std::vector<double>& poles);

}  // namespace fd

}  // namespace susy_damp
