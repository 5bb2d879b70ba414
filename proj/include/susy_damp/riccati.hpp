#pragma once

// Solutions of h' + h^2 = 0 and the superpotentials f = beta + h, g = beta - h
// that factor the damped-oscillator operator as (d/dt + f)(d/dt + g).

#include "susy_damp/core.hpp"
#include "susy_damp/jet.hpp"

#include <cstddef>
#include <optional>

namespace susy_damp {

/// Either the particular solution h == 0 or the general one h = gamma/(gamma t + 1).
class RiccatiSolution {
public:
    static RiccatiSolution particular() { return RiccatiSolution(std::nullopt); }
    static RiccatiSolution general(RiccatiParam r) { return RiccatiSolution(r); }

    const std::optional<RiccatiParam>& param() const noexcept { return param_; }
    bool is_particular() const noexcept { return !param_.has_value(); }

    /// h and its first N derivatives; h^(j) = (-1)^j j! h^(j+1).  Throws SingularTime.
    template <std::size_t N>
    Jet<N> h_jet(double t) const;

private:
    explicit RiccatiSolution(std::optional<RiccatiParam> r) : param_(r) {}

    std::optional<RiccatiParam> param_;
};

double h_eval(const RiccatiSolution& s, double t);
double h_prime(const RiccatiSolution& s, double t);

/// f = beta + h and g = beta - h.
double f_eval(const DampingParams& p, const RiccatiSolution& s, double t);
double g_eval(const DampingParams& p, const RiccatiSolution& s, double t);

/// h'(t) + h(t)^2 from the analytic derivative; zero up to roundoff.
double riccati_residual(const RiccatiSolution& s, double t);

/// -f' - f^2 + 2 beta f - beta^2 with f = beta + h.
double full_riccati_residual(const DampingParams& p, const RiccatiSolution& s, double t);

template <std::size_t N>
Jet<N> RiccatiSolution::h_jet(double t) const {
    Jet<N> j;
    if (!param_) return j;
    param_->require_regular(t);
    const double h = param_->gamma() / (param_->gamma() * t + 1.0);
    double coeff = 1.0;  // (-1)^k k!
    double power = h;    // h^(k+1)
    for (std::size_t k = 0; k <= N; ++k) {
        j.d[k] = coeff * power;
        coeff *= -static_cast<double>(k + 1);
        power *= h;
    }
    return j;
}

}  // namespace susy_damp
