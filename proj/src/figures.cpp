#include "susy_damp/figures.hpp"

#include "susy_damp/errors.hpp"

namespace susy_damp {

FigureSet figure_set(int id) {
    if (id < 1 || id > 6) throw ParameterError("figure number must be in 1..6");
    const bool acceleration = id > 3;
    switch ((id - 1) % 3) {
        case 0:
            return {id, DampingParams::from_alpha_sq(0.1, -1.0), AmpPhase{1.0, 0.0}, AmpPhase{1.0, 0.0},
                    {1.0, 0.5, 0.1}, acceleration};
        case 1:
            return {id, DampingParams::from_omega0_sq(1.0, 1.0), AB{1.0, 1.0}, AB{1.0, 1.0},
                    {5.0, 5.0 / 3.0, 1.0}, acceleration};
        default:
            return {id, DampingParams::from_alpha_sq(1.0, 0.04), AmpPhase{1.0, 0.0}, AmpPhase{1.0, 0.0},
                    {1.0, 0.5, 0.1}, acceleration};
    }
}

std::vector<FigureSet> regime_figures() { return {figure_set(1), figure_set(2), figure_set(3)}; }

}  // namespace susy_damp
