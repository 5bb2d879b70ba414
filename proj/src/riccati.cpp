#include "susy_damp/riccati.hpp"

namespace susy_damp {

double h_eval(const RiccatiSolution& s, double t) { return s.h_jet<0>(t).value(); }

double h_prime(const RiccatiSolution& s, double t) {
    if (!s.param()) return 0.0;
    s.param()->require_regular(t);
    const double gamma = s.param()->gamma();
    const double denom = gamma * t + 1.0;
    return -(gamma * gamma) / (denom * denom);
}

double f_eval(const DampingParams& p, const RiccatiSolution& s, double t) {
    return p.beta() + h_eval(s, t);
}

double g_eval(const DampingParams& p, const RiccatiSolution& s, double t) {
    return p.beta() - h_eval(s, t);
}

double riccati_residual(const RiccatiSolution& s, double t) {
    const double h = h_eval(s, t);
    return h_prime(s, t) + h * h;
}

double full_riccati_residual(const DampingParams& p, const RiccatiSolution& s, double t) {
    const double beta = p.beta();
    const double f = f_eval(p, s, t);
    const double df = h_prime(s, t);
    return -df - f * f + 2.0 * beta * f - beta * beta;
}

}  // namespace susy_damp
