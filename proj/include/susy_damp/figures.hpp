#pragma once

// Parameter sets of the six reference figures.
//
//   1, 4  underdamped  y = e^{-t/10} cos t,        gamma in {1, 1/2, 1/10}
//   2, 5  critical     y = e^{-t} (1 + t),         gamma in {5, 5/3, 1}, A = D = 1
//   3, 6  overdamped   y = e^{-t} cosh(t/5),       gamma in {1, 1/2, 1/10}
//
// Figures 4-6 plot the antirestoring acceleration of the families of 1-3.

#include "susy_damp/core.hpp"
#include "susy_damp/modes.hpp"

#include <vector>

namespace susy_damp {

struct FigureSet {
    int id;
    DampingParams params;
    Coefficients seed_coefficients;
    Coefficients tilde_coefficients;
    std::vector<double> gammas;
    bool acceleration;  // figures 4-6

    ModeSpec seed() const { return ModeSpec::seed(params, seed_coefficients); }
    ModeSpec tilde(double gamma) const { return ModeSpec::tilde(params, tilde_coefficients, RiccatiParam(gamma)); }
};

/// Throws ParameterError unless 1 <= id <= 6.
FigureSet figure_set(int id);

/// Figures 1-3: the three (regime x gamma set) families.
std::vector<FigureSet> regime_figures();

}  // namespace susy_damp
