#include "susy_damp/oracle.hpp"

#include "susy_damp/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace susy_damp {

namespace {

using Vec = std::array<double, 2>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Shampine's fourth-order continuous extension (as in Hairer's DOPRI5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

class Rhs {
public:
    explicit Rhs(const IVP& ivp) : ivp_(ivp) {}

    Vec operator()(double t, const Vec& u) {
        ++evaluations;
        double stiffness = ivp_.omega0_sq;
        if (ivp_.gamma) {
            const double g = *ivp_.gamma;
            const double denom = g * t + 1.0;
            stiffness -= 2.0 * g * g / (denom * denom);
        }
        return {u[1], -2.0 * ivp_.beta * u[1] - stiffness * u[0]};
    }

    std::size_t evaluations = 0;

private:
    const IVP& ivp_;
};

Vec axpy(const Vec& u, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
    Vec out = u;
    for (const auto& [coef, k] : terms) {
        out[0] += h * coef * (*k)[0];
        out[1] += h * coef * (*k)[1];
    }
    return out;
}

struct Step {
    Vec next;
    Vec k7;  // f(t + h, next), reused as the first stage of the following step
    Vec error;
    Vec dense;  // h * sum d_i k_i, the fifth coefficient of the interpolant
};

Step dopri_step(Rhs& f, double t, const Vec& u, const Vec& k1, double h) {
    const Vec k2 = f(t + c2 * h, axpy(u, h, {{a21, &k1}}));
    const Vec k3 = f(t + c3 * h, axpy(u, h, {{a31, &k1}, {a32, &k2}}));
    const Vec k4 = f(t + c4 * h, axpy(u, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = f(t + c5 * h, axpy(u, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = f(t + h, axpy(u, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec next = axpy(u, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    const Vec k7 = f(t + h, next);
    Vec err{};
    Vec dense{};
    for (int i = 0; i < 2; ++i) {
        err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        dense[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
    }
    return {next, k7, err, dense};
}

double scaled_norm(const Vec& v, const Vec& u, const Vec& w, const Tolerances& tol) {
    double m = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double scale = tol.abs + tol.rel * std::max(std::abs(u[i]), std::abs(w[i]));
        m = std::max(m, std::abs(v[i]) / scale);
    }
    return m;
}

double initial_step(Rhs& f, double t0, const Vec& u0, const Vec& f0, double direction, const Tolerances& tol) {
    const double d0 = scaled_norm(u0, u0, u0, tol);
    const double d1 = scaled_norm(f0, u0, u0, tol);
    const double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    const Vec u1 = axpy(u0, direction * h0, {{1.0, &f0}});
    const Vec f1 = f(t0 + direction * h0, u1);
    const Vec df{f1[0] - f0[0], f1[1] - f0[1]};
    const double d2 = scaled_norm(df, u0, u0, tol) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 5.0);
    return std::min(100.0 * h0, h1);
}

// Evaluates the continuous extension at s in [0, 1] of a step of length h.
double dense_output(double y0, double f0, double y1, double f1, double dense, double h, double s) {
    const double diff = y1 - y0;
    const double b = h * f0 - diff;
    const double c = diff - h * f1 - b;
    const double s1 = 1.0 - s;
    return y0 + s * (diff + s1 * (b + s * (c + s1 * dense)));
}

void check_interval(const IVP& ivp) {
    if (!std::isfinite(ivp.beta) || !std::isfinite(ivp.omega0_sq) || !std::isfinite(ivp.t0) ||
        !std::isfinite(ivp.t_end) || !std::isfinite(ivp.y0) || !std::isfinite(ivp.dy0))
        throw ParameterError("IVP fields must be finite");
    if (!ivp.gamma) return;
    const RiccatiParam r(*ivp.gamma);
    const double lo = std::min(ivp.t0, ivp.t_end);
    const double hi = std::max(ivp.t0, ivp.t_end);
    const double t_star = r.t_star();
    if (r.is_singular(lo) || r.is_singular(hi) || (t_star > lo && t_star < hi))
        throw SingularInterval("integration interval contains the blow-up instant");
}

}  // namespace

IVP IVP::free_damping(const DampingParams& p, double t0, double y0, double dy0, double t_end) {
    return IVP{p.beta(), p.omega0_sq(), std::nullopt, t0, y0, dy0, t_end};
}

IVP IVP::partner(const DampingParams& p, const RiccatiParam& r, double t0, double y0, double dy0, double t_end) {
    return IVP{p.beta(), p.omega0_sq(), r.gamma(), t0, y0, dy0, t_end};
}

Trajectory integrate(const IVP& ivp, const Tolerances& tol, std::span<const double> grid) {
    if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) throw ParameterError("tolerances must be positive");
    check_interval(ivp);
    const double lo = std::min(ivp.t0, ivp.t_end);
    const double hi = std::max(ivp.t0, ivp.t_end);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] >= lo && grid[i] <= hi)) throw ParameterError("grid point outside the integration interval");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ParameterError("grid must be strictly increasing");
    }

    const double direction = ivp.t_end >= ivp.t0 ? 1.0 : -1.0;
    Trajectory out;
    out.ts.assign(grid.begin(), grid.end());
    out.ys.resize(grid.size());
    out.dys.resize(grid.size());

    // Grid indices in the order the integration reaches them.
    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) order[i] = direction > 0 ? i : grid.size() - 1 - i;
    std::size_t next = 0;

    Rhs f(ivp);
    double t = ivp.t0;
    Vec u{ivp.y0, ivp.dy0};
    Vec k1 = f(t, u);

    auto emit_until = [&](double t_reached, const Vec& u_old, const Vec& f_old, double h, const Vec& u_new,
                          const Vec& f_new, const Vec& dense) {
        while (next < order.size()) {
            const std::size_t i = order[next];
            const double tg = grid[i];
            if (direction * (tg - t_reached) > 0.0) break;
            if (h == 0.0) {
                out.ys[i] = u_new[0];
                out.dys[i] = u_new[1];
            } else {
                const double s = (tg - (t_reached - h)) / h;
                out.ys[i] = dense_output(u_old[0], f_old[0], u_new[0], f_new[0], dense[0], h, s);
                out.dys[i] = dense_output(u_old[1], f_old[1], u_new[1], f_new[1], dense[1], h, s);
            }
            ++next;
        }
    };
    emit_until(t, u, k1, 0.0, u, k1, Vec{});

    const double span = std::abs(ivp.t_end - ivp.t0);
    double h = span > 0.0 ? std::min(initial_step(f, t, u, k1, direction, tol), span) : 0.0;
    constexpr std::size_t kMaxSteps = 10'000'000;
    bool rejected_last = false;
    out.stats.min_step = std::numeric_limits<double>::infinity();

    while (direction * (ivp.t_end - t) > 0.0) {
        const double remaining = std::abs(ivp.t_end - t);
        if (h >= remaining) h = remaining;
        if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
            throw StepFailure("step size underflow");
        if (out.stats.accepted_steps + out.stats.rejected_steps > kMaxSteps) throw StepFailure("step budget exhausted");

        const double signed_h = direction * h;
        const Step step = dopri_step(f, t, u, k1, signed_h);
        const double err = scaled_norm(step.error, u, step.next, tol);

        if (err <= 1.0) {
            const double t_new = h == remaining ? ivp.t_end : t + signed_h;
            emit_until(t_new, u, k1, t_new - t, step.next, step.k7, step.dense);
            t = t_new;
            u = step.next;
            k1 = step.k7;
            ++out.stats.accepted_steps;
            out.stats.max_error_estimate = std::max(out.stats.max_error_estimate, err);
            out.stats.min_step = std::min(out.stats.min_step, h);
            out.stats.max_step = std::max(out.stats.max_step, h);
            double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
            if (rejected_last) factor = std::min(factor, 1.0);
            h *= factor;
            rejected_last = false;
        } else {
            ++out.stats.rejected_steps;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
            rejected_last = true;
        }
    }
    if (out.stats.accepted_steps == 0) out.stats.min_step = 0.0;
    out.stats.rhs_evaluations = f.evaluations;
    return out;
}

double self_convergence(const IVP& ivp, std::span<const double> grid) {
    const Trajectory loose = integrate(ivp, {1e-8, 1e-10}, grid);
    const Trajectory tight = integrate(ivp, {1e-11, 1e-13}, grid);
    double diff = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        diff = std::max(diff, std::abs(loose.ys[i] - tight.ys[i]));
        scale = std::max(scale, std::abs(tight.ys[i]));
    }
    return diff / scale;
}

State integrate_fixed_step(const IVP& ivp, std::size_t steps) {
    if (steps == 0) throw ParameterError("need at least one step");
    check_interval(ivp);
    Rhs f(ivp);
    const double h = (ivp.t_end - ivp.t0) / static_cast<double>(steps);
    Vec u{ivp.y0, ivp.dy0};
    Vec k1 = f(ivp.t0, u);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = ivp.t0 + static_cast<double>(n) * h;
        const Step step = dopri_step(f, t, u, k1, h);
        u = step.next;
        k1 = step.k7;
    }
    return {u[0], u[1]};
}

}  // namespace susy_damp
