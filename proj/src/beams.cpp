#include "mmw/beams.hpp"

#include <cmath>
#include <string>

#include "mmw/error.hpp"

namespace mmw {

double sigma_from_fwhm(double fwhm) {
    return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
}

void InputConfig::validate(const WaveguideGeometry& geom) const {
    const int n = beam_count();
    if (n < 1 || n > 3)
        throw_physics("input: beam count must be 1..3, got " + std::to_string(n));
    for (const BeamSpec& b : beams) {
        if (!(b.sigma > 0)) throw_physics("input: beam sigma must be positive");
        if (!(b.relative_amplitude >= 0))
            throw_physics("input: beam amplitude must be nonnegative");
        if (b.center - 3.0 * b.sigma <= 0 || b.center + 3.0 * b.sigma >= geom.width)
            throw_physics("input: beam support (center +- 3 sigma) leaves the waveguide "
                          "interior");
    }
    for (std::size_t i = 0; i < beams.size(); ++i)
        for (std::size_t j = i + 1; j < beams.size(); ++j) {
            const double sep = std::fabs(beams[i].center - beams[j].center);
            if (sep < 3.0 * (beams[i].sigma + beams[j].sigma))
                throw_physics("input: beams overlap at the 3 sigma level");
        }
}

SampledField gaussian_beam(const BeamSpec& spec, const TransverseGrid& grid) {
    if (spec.center - 3.0 * spec.sigma <= 0 ||
        spec.center + 3.0 * spec.sigma >= grid.width)
        throw_physics("beam support exceeds the waveguide interior");
    const int n = grid.sample_count;
    SampledField f;
    f.grid = grid;
    f.z = 0;
    f.amplitudes.resize(static_cast<std::size_t>(n));
    const double inv = 1.0 / (4.0 * spec.sigma * spec.sigma);
    double norm_sq = 0;
    for (int i = 0; i < n; ++i) {
        const double d = grid.position(i) - spec.center;
        const double a = std::exp(-d * d * inv);
        f.amplitudes[static_cast<std::size_t>(i)] = a;
        norm_sq += a * a;
    }
    norm_sq *= grid.spacing();
    const cplx scale = std::polar(spec.relative_amplitude / std::sqrt(norm_sq),
                                  spec.relative_phase);
    for (cplx& a : f.amplitudes) a *= scale;
    return f;
}

std::vector<double> symmetric_positions(int n, double width) {
    if (n < 1) throw_physics("symmetric_positions: n must be >= 1");
    std::vector<double> xs(static_cast<std::size_t>(n));
    const double half = 0.5 * width;
    // Fill the upper half, then mirror so the set is exactly reflection-closed.
    for (int k = n; 2 * k - 1 - n >= 0; --k) {
        const double off = (2.0 * k - 1.0 - n) * width / (2.0 * n);
        const double hi = half + off;
        xs[static_cast<std::size_t>(k - 1)] = hi;
        xs[static_cast<std::size_t>(n - k)] = width - hi;
    }
    return xs;
}

} // namespace mmw
