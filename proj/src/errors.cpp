#include "susy_damp/errors.hpp"

#include <sstream>

namespace susy_damp {

namespace {

std::string singular_message(double t, double t_star) {
    std::ostringstream os;
    os.precision(17);
    os << "time " << t << " lies in the singular band around t* = " << t_star;
    return os.str();
}

}  // namespace

SingularTime::SingularTime(double t, double t_star)
    : Error(singular_message(t, t_star)), t_(t), t_star_(t_star) {}

}  // namespace susy_damp
