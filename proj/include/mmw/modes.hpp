#pragma once

#include "mmw/field.hpp"
#include "mmw/geometry.hpp"

namespace mmw {

// psi_m(x) = sqrt(2/D) sin(m pi x / D), m = 1..M, sampled on the grid.
std::vector<double> mode_profile(int m, const WaveguideGeometry& geom,
                                 const TransverseGrid& grid);

// Relative phase accumulated by mode m over distance z (law per geometry).
double propagation_phase(int m, double z, const WaveguideGeometry& geom);

// Precomputed mode table for one (geometry, grid) pair. All methods are
// const and safe to share across threads.
class ModeBasis {
public:
    ModeBasis(const WaveguideGeometry& geom, const TransverseGrid& grid);

    const WaveguideGeometry& geometry() const { return geom_; }
    const TransverseGrid& grid() const { return grid_; }

    const double* mode_row(int m) const;  // m is 1-based

    ModeAmplitudes decompose(const SampledField& f) const;
    SampledField synthesize(const ModeAmplitudes& c, double z) const;

    // Advance by dz (the result's z is f.z + dz).
    SampledField propagate(const SampledField& f, double dz) const;

private:
    WaveguideGeometry geom_;
    TransverseGrid grid_;
    std::vector<double> table_;  // [ (m-1) * G + i ]
};

// One-shot conveniences over a temporary ModeBasis.
ModeAmplitudes decompose(const SampledField& f, const WaveguideGeometry& geom);
SampledField propagate(const SampledField& f, double dz, const WaveguideGeometry& geom);

// K_z(x_out, x_in) = sum_m psi_m(x_out) psi_m(x_in) exp(i phi_m(z)),
// row-major over (out, in).
std::vector<cplx> green_kernel(const WaveguideGeometry& geom, double z,
                               const TransverseGrid& grid);

} // namespace mmw
