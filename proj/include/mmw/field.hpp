#pragma once

#include <complex>
#include <vector>

#include "mmw/geometry.hpp"

namespace mmw {

using cplx = std::complex<double>;

// Complex transverse field sampled on a grid at propagation distance z.
struct SampledField {
    TransverseGrid grid;
    std::vector<cplx> amplitudes;
    double z = 0;

    // sum |a_i|^2 dx
    double norm_sq() const;
};

// Guided-mode coefficients c_m, m = 1..M (index 0 holds m = 1).
struct ModeAmplitudes {
    std::vector<cplx> coefficients;

    double norm_sq() const;
};

} // namespace mmw
