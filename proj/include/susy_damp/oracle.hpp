#pragma once

// Independent numerical integrator for
//
//   y'' + 2 beta y' + omega0^2 y - 2 gamma^2/(gamma t + 1)^2 y = 0
//
// (the free damping equation when gamma is absent).  It never consults the
// closed-form modes, so it serves as ground truth for them.  Unlike
// DampingParams it accepts any finite beta, including negative (flutter) values.

#include "susy_damp/core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace susy_damp {

struct IVP {
    double beta = 0.0;
    double omega0_sq = 0.0;
    std::optional<double> gamma;  // absent: free damping
    double t0 = 0.0;
    double y0 = 0.0;
    double dy0 = 0.0;
    double t_end = 0.0;

    static IVP free_damping(const DampingParams& p, double t0, double y0, double dy0, double t_end);
    static IVP partner(const DampingParams& p, const RiccatiParam& r, double t0, double y0, double dy0, double t_end);
};

struct Tolerances {
    double rel = 1e-10;
    double abs = 1e-12;
};

struct TrajectoryStats {
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
    std::size_t rhs_evaluations = 0;
    double max_error_estimate = 0.0;  // largest scaled local error of an accepted step
    double min_step = 0.0;
    double max_step = 0.0;
};

struct Trajectory {
    std::vector<double> ts;  // strictly increasing
    std::vector<double> ys;
    std::vector<double> dys;
    TrajectoryStats stats;
};

/// Dormand-Prince 5(4) with mixed abs/rel error control and fourth-order
/// continuous-extension dense output sampled on `grid` (strictly increasing, inside [t0, t_end]
/// or [t_end, t0] for backward integration).
///
/// Throws SingularInterval if the interval touches -1/gamma, StepFailure if
/// the step size underflows, ParameterError on bad tolerances or grid.
Trajectory integrate(const IVP& ivp, const Tolerances& tol, std::span<const double> grid);

/// Max |y| difference between runs at rel_tol 1e-8 and 1e-11, divided by
/// max(1, max |y|).
double self_convergence(const IVP& ivp, std::span<const double> grid);

struct State {
    double y;
    double dy;
};

/// State at t_end after `steps` equal steps of the fifth-order propagator.
State integrate_fixed_step(const IVP& ivp, std::size_t steps);

}  // namespace susy_damp
