#pragma once

#include <vector>

namespace mmw {

enum class PropagationLaw {
    // phi_m(z) = -pi lambda m^2 z / (4 D^2); the quadratic law behind the
    // exact revival at z0 = 8 D^2 / lambda.
    Paraxial,
    // phi_m(z) = (sqrt(k^2 - (m pi/D)^2) - k) z; revivals become approximate.
    ExactBeta,
};

struct RevivalDistances {
    double z0;      // full revival, 8 D^2 / lambda
    double talbot;  // z0 / 4
};

// Ideal two-mirror planar waveguide (Dirichlet walls, n = 1), one transverse
// dimension.
struct WaveguideGeometry {
    double width = 0;       // mirror separation D [m]
    double length = 0;      // waveguide length L [m]
    double wavelength = 0;  // vacuum wavelength [m]
    int mode_count = 128;   // retained modes M
    PropagationLaw law = PropagationLaw::Paraxial;

    // Throws mmw::error(physics) on a bad geometry, including the guided-mode
    // bound M * lambda / (2 D) < 1.
    void validate() const;
};

RevivalDistances revival_distances(const WaveguideGeometry& g);

// D0 = sqrt(lambda L / 8): the width whose revival distance equals L.
double imaging_width(double length, double wavelength);

// Uniform cell-centered grid strictly inside (0, D). Midpoint sampling makes
// the discrete sine modes exactly orthogonal for m < sample_count, so grid
// propagation is exactly unitary.
struct TransverseGrid {
    int sample_count = 0;
    double width = 0;

    double spacing() const { return width / sample_count; }
    double position(int i) const { return (i + 0.5) * spacing(); }
    int reflected(int i) const { return sample_count - 1 - i; }
    std::vector<double> positions() const;
    void validate() const;

    bool operator==(const TransverseGrid&) const = default;
};

} // namespace mmw
