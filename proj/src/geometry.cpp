#include "mmw/geometry.hpp"

#include <cmath>
#include <string>

#include "mmw/error.hpp"

namespace mmw {

void WaveguideGeometry::validate() const {
    if (!(width > 0) || !(length > 0) || !(wavelength > 0))
        throw_physics("geometry: width, length and wavelength must be positive");
    if (mode_count < 1)
        throw_physics("geometry: mode_count must be >= 1");
    // All retained modes must be guided and paraxial-valid.
    const double bound = mode_count * wavelength / (2.0 * width);
    if (!(bound < 1.0))
        throw_physics("geometry: mode_count " + std::to_string(mode_count) +
                      " violates M*lambda/(2D) < 1 (got " + std::to_string(bound) + ")");
}

RevivalDistances revival_distances(const WaveguideGeometry& g) {
    const double z0 = 8.0 * g.width * g.width / g.wavelength;
    return {z0, 0.25 * z0};
}

double imaging_width(double length, double wavelength) {
    return std::sqrt(wavelength * length / 8.0);
}

std::vector<double> TransverseGrid::positions() const {
    std::vector<double> xs(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) xs[static_cast<std::size_t>(i)] = position(i);
    return xs;
}

void TransverseGrid::validate() const {
    if (sample_count < 2) throw_physics("grid: sample_count must be >= 2");
    if (!(width > 0)) throw_physics("grid: width must be positive");
}

} // namespace mmw
