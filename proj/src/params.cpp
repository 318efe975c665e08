#include "rydkerr/params.hpp"

#include <cmath>
#include <sstream>

#include "rydkerr/errors.hpp"

namespace rydkerr {

void PolaritonParams::validate() const {
    std::ostringstream bad;
    if (!(omega > 0)) bad << "params.omega: must be > 0; ";
    if (!(gamma > 0)) bad << "params.gamma: must be > 0; ";
    if (!(c > 0)) bad << "params.c: must be > 0; ";
    if (!(g0 >= 0)) bad << "params.g0: must be >= 0; ";
    if (!std::isfinite(delta) || !std::isfinite(c6))
        bad << "params.delta/c6: must be finite; ";
    if (std::abs(delta) <= omega || std::abs(delta) <= gamma)
        bad << "params.delta: dispersive regime requires |delta| > omega and "
               "|delta| > gamma; ";
    if (!(c6 * delta < 0))
        bad << "params.c6: attractive branch requires c6 * delta < 0; ";
    std::string msg = bad.str();
    if (!msg.empty()) throw ValidationError("invalid polariton parameters: " + msg);
}

}  // namespace rydkerr
