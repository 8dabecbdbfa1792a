#include "mmw/amplitude.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmw/error.hpp"
#include "mmw/kernels.hpp"

namespace mmw {

double AmplitudeMatrix::row_norm_sq(int n) const {
    const std::size_t g = static_cast<std::size_t>(grid.sample_count);
    const double s = kern::ops().dot(row_re(n), row_re(n), g) +
                     kern::ops().dot(row_im(n), row_im(n), g);
    return s * grid.spacing();
}

namespace {

// A grid with G samples resolves modes up to G - 1; cap the basis there and
// let the truncation guard below catch any genuine norm loss.
WaveguideGeometry capped_for_grid(WaveguideGeometry geom, const TransverseGrid& grid) {
    geom.mode_count = std::min(geom.mode_count, grid.sample_count - 1);
    return geom;
}

AmplitudeMatrix assemble(const InputConfig& config, const ModeBasis& basis,
                         const std::vector<ModeAmplitudes>& beam_modes, double z) {
    const TransverseGrid& grid = basis.grid();
    const std::size_t g = static_cast<std::size_t>(grid.sample_count);
    AmplitudeMatrix a;
    a.grid = grid;
    a.z = z;
    a.beam_count = config.beam_count();
    a.re.resize(static_cast<std::size_t>(a.beam_count) * g);
    a.im.resize(static_cast<std::size_t>(a.beam_count) * g);
    for (int n = 0; n < a.beam_count; ++n) {
        const SampledField f = basis.synthesize(beam_modes[static_cast<std::size_t>(n)], z);
        double* re = a.re.data() + static_cast<std::size_t>(n) * g;
        double* im = a.im.data() + static_cast<std::size_t>(n) * g;
        for (std::size_t i = 0; i < g; ++i) {
            re[i] = f.amplitudes[i].real();
            im[i] = f.amplitudes[i].imag();
        }
    }
    return a;
}

std::vector<ModeAmplitudes> decompose_beams(const InputConfig& config,
                                            const ModeBasis& basis) {
    std::vector<ModeAmplitudes> beam_modes;
    beam_modes.reserve(config.beams.size());
    for (const BeamSpec& spec : config.beams) {
        const SampledField f = gaussian_beam(spec, basis.grid());
        ModeAmplitudes c = basis.decompose(f);
        const double captured = c.norm_sq();
        const double total = f.norm_sq();
        if (captured < (1.0 - 1e-3) * total)
            throw_physics("mode truncation drops more than 1e-3 of a beam's norm; "
                          "increase mode_count");
        beam_modes.push_back(std::move(c));
    }
    return beam_modes;
}

} // namespace

AmplitudeMatrix amplitude_matrix(const InputConfig& config, const WaveguideGeometry& geom,
                                 double z, const TransverseGrid& grid) {
    if (z < 0) throw_physics("propagation distance must be nonnegative");
    config.validate(geom);
    const ModeBasis basis(capped_for_grid(geom, grid), grid);
    return assemble(config, basis, decompose_beams(config, basis), z);
}

PropagatedInput::PropagatedInput(const InputConfig& config, const WaveguideGeometry& geom,
                                 const TransverseGrid& grid)
    : config_(config), basis_(capped_for_grid(geom, grid), grid) {
    config_.validate(geom);
    beam_modes_ = decompose_beams(config_, basis_);
}

AmplitudeMatrix PropagatedInput::at(double z) const {
    if (z < 0) throw_physics("propagation distance must be nonnegative");
    return assemble(config_, basis_, beam_modes_, z);
}

std::vector<double> intensity(const AmplitudeMatrix& a, IntensityMode mode,
                              std::span<const double> phases) {
    const std::size_t g = static_cast<std::size_t>(a.grid.sample_count);
    std::vector<double> out(g, 0.0);
    if (mode == IntensityMode::Incoherent) {
        if (!phases.empty())
            throw_physics("incoherent intensity takes no phases");
        std::vector<double> tmp(g);
        for (int n = 0; n < a.beam_count; ++n) {
            kern::ops().sqmag(a.row_re(n), a.row_im(n), tmp.data(), g);
            kern::ops().axpy(1.0, tmp.data(), out.data(), g);
        }
        return out;
    }
    if (static_cast<int>(phases.size()) != a.beam_count)
        throw_physics("coherent intensity: phase count " + std::to_string(phases.size()) +
                      " != beam count " + std::to_string(a.beam_count));
    std::vector<double> fre(g, 0.0), fim(g, 0.0);
    for (int n = 0; n < a.beam_count; ++n) {
        const double c = std::cos(phases[static_cast<std::size_t>(n)]);
        const double s = std::sin(phases[static_cast<std::size_t>(n)]);
        kern::ops().caxpy(c, s, a.row_re(n), a.row_im(n), fre.data(), fim.data(), g);
    }
    kern::ops().sqmag(fre.data(), fim.data(), out.data(), g);
    return out;
}

} // namespace mmw
