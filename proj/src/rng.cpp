#include "vlmrob/core/rng.hpp"

#include <cmath>
#include <numbers>

namespace vlmrob {

double Rng::next_gauss() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0,1] so the log is finite.
    double u1 = 1.0 - next_double();
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

} // namespace vlmrob
