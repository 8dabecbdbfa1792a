#pragma once

#include <span>

#include "mmw/beams.hpp"
#include "mmw/modes.hpp"

namespace mmw {

// Per-input-beam complex output amplitudes A_n(x) at one plane, stored as
// split re/im arrays for the kernel layer.
struct AmplitudeMatrix {
    TransverseGrid grid;
    double z = 0;
    int beam_count = 0;
    std::vector<double> re, im;  // [n * G + i]

    const double* row_re(int n) const { return re.data() + static_cast<std::size_t>(n) * grid.sample_count; }
    const double* row_im(int n) const { return im.data() + static_cast<std::size_t>(n) * grid.sample_count; }
    cplx at(int n, int i) const {
        const std::size_t k = static_cast<std::size_t>(n) * grid.sample_count + i;
        return {re[k], im[k]};
    }
    double row_norm_sq(int n) const;  // sum |A_n|^2 dx
};

// Rows are the propagated unit-norm input beams (relative phases included).
// Guards that the retained modes carry >= 1 - 1e-3 of each beam's norm.
AmplitudeMatrix amplitude_matrix(const InputConfig& config, const WaveguideGeometry& geom,
                                 double z, const TransverseGrid& grid);

// Same, but reusing a prebuilt basis and predecomposed beams (used by scans).
struct PropagatedInput {
    PropagatedInput(const InputConfig& config, const WaveguideGeometry& geom,
                    const TransverseGrid& grid);
    AmplitudeMatrix at(double z) const;

    const InputConfig& config() const { return config_; }

private:
    InputConfig config_;
    ModeBasis basis_;
    std::vector<ModeAmplitudes> beam_modes_;
};

enum class IntensityMode { Incoherent, Coherent };

// Incoherent: sum_n |A_n(x)|^2. Coherent: |sum_n e^{i theta_n} A_n(x)|^2
// (theta required, one per beam).
std::vector<double> intensity(const AmplitudeMatrix& a, IntensityMode mode,
                              std::span<const double> phases = {});

} // namespace mmw
