#pragma once

#include "mmw/field.hpp"
#include "mmw/geometry.hpp"

namespace mmw {

// Gaussian input spot. sigma is the intensity standard deviation; the
// amplitude profile is exp(-(x - x0)^2 / (4 sigma^2)).
struct BeamSpec {
    double center = 0;            // x0 [m], in (0, D)
    double sigma = 0;             // [m]
    double relative_phase = 0;    // [rad]
    double relative_amplitude = 1;
};

double sigma_from_fwhm(double fwhm);

enum class StateKind {
    FockOnePerBeam,      // |11>, |111>: one photon per beam
    Thermal,             // phase-randomized ensemble of the same beams
    FixedPhaseCoherent,  // one coherent realization with the given phases
};

struct InputConfig {
    std::vector<BeamSpec> beams;
    StateKind state_kind = StateKind::FockOnePerBeam;

    int beam_count() const { return static_cast<int>(beams.size()); }

    // Beam supports inside (0, D), pairwise separation beyond 3 sigma,
    // 1..3 beams.
    void validate(const WaveguideGeometry& geom) const;
};

// Unit-norm Gaussian times exp(i relative_phase) times relative_amplitude.
SampledField gaussian_beam(const BeamSpec& spec, const TransverseGrid& grid);

// N positions x_n = D/2 + (2n - 1 - N) D / (2N): equally spaced, symmetric
// about the center, spacing D/N. The set is exactly closed under x -> D - x.
std::vector<double> symmetric_positions(int n, double width);

} // namespace mmw
