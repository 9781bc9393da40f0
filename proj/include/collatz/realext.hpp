#pragma once

#include <cstdint>
#include <vector>

#include "collatz/kernel.hpp"

namespace collatz {

inline constexpr double kDefaultEscapeBound = 1e15;

/// (z/2) cos^2(pi z/2) + (3z+1) sin^2(pi z/2). Interpolates step_standard at
/// the positive integers. Rejects non-finite z.
double smooth_map(double z);

/// (z/2) cos^2(pi z/2) + ((3z+1)/2) sin^2(pi z/2). Interpolates step_shortcut.
double smooth_map_shortcut(double z);

struct RealSample {
    double z = 0;
    double f_standard_ext = 0;
    double f_shortcut_ext = 0;
};

RealSample sample(double z);

struct RealOrbit {
    std::vector<double> values;  // values[0] == z0
    bool escaped = false;        // stopped early because |z| exceeded the bound
};

/// Iterates the smooth map for the variant (Syracuse is not supported on the
/// reals) for n_steps steps or until |z| > escape_bound.
RealOrbit real_orbit(double z0, Variant variant, std::uint64_t n_steps, double escape_bound = kDefaultEscapeBound);

}  // namespace collatz
