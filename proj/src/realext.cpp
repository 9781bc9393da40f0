#include "collatz/realext.hpp"

#include <cmath>
#include <numbers>

namespace collatz {
namespace {

void require_finite(double z) {
    if (!std::isfinite(z)) throw DomainError("smooth map: z must be finite");
}

}  // namespace

double smooth_map(double z) {
    require_finite(z);
    const double c = std::cos(std::numbers::pi * z / 2);
    const double s = std::sin(std::numbers::pi * z / 2);
    return z / 2 * (c * c) + (3 * z + 1) * (s * s);
}

double smooth_map_shortcut(double z) {
    require_finite(z);
    const double c = std::cos(std::numbers::pi * z / 2);
    const double s = std::sin(std::numbers::pi * z / 2);
    return z / 2 * (c * c) + (3 * z + 1) / 2 * (s * s);
}

RealSample sample(double z) { return {z, smooth_map(z), smooth_map_shortcut(z)}; }

RealOrbit real_orbit(double z0, Variant variant, std::uint64_t n_steps, double escape_bound) {
    require_finite(z0);
    if (n_steps == 0) throw DomainError("real_orbit: n_steps must be >= 1");
    if (variant == Variant::Syracuse) throw DomainError("real_orbit: no smooth Syracuse map");
    const auto f = variant == Variant::Standard ? smooth_map : smooth_map_shortcut;

    RealOrbit orbit;
    orbit.values.reserve(n_steps + 1);
    orbit.values.push_back(z0);
    double z = z0;
    for (std::uint64_t i = 0; i < n_steps; ++i) {
        if (std::fabs(z) > escape_bound) {
            orbit.escaped = true;
            break;
        }
        z = f(z);
        orbit.values.push_back(z);
    }
    if (std::fabs(z) > escape_bound) orbit.escaped = true;
    return orbit;
}

}  // namespace collatz
