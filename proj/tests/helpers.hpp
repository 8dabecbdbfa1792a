#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "mmw/amplitude.hpp"
#include "mmw/beams.hpp"
#include "mmw/geometry.hpp"
#include "mmw/modes.hpp"

// Shared fixtures for the unit suites. The splitting planes below are the
// distances where a symmetric pair of beams sees an imaging, equal, or
// unequal two-way split; they only depend on z/z_T, so small test geometries
// behave identically to the full-size ones.
namespace th {

using mmw::cplx;

inline mmw::WaveguideGeometry small_geometry(double width = 60e-6, int modes = 96) {
    mmw::WaveguideGeometry g;
    g.width = width;
    g.length = 4.85e-2;
    g.wavelength = 532e-9;
    g.mode_count = modes;
    return g;
}

inline mmw::TransverseGrid grid_for(const mmw::WaveguideGeometry& g, int samples = 256) {
    return mmw::TransverseGrid{samples, g.width};
}

inline mmw::InputConfig symmetric_pair(const mmw::WaveguideGeometry& g,
                                       double offset_fraction = 0.25,
                                       double sigma = 2.0e-6) {
    mmw::InputConfig in;
    mmw::BeamSpec b;
    b.sigma = sigma;
    b.center = g.width * (0.5 - offset_fraction);
    in.beams.push_back(b);
    b.center = g.width - in.beams[0].center;
    in.beams.push_back(b);
    return in;
}

inline mmw::InputConfig symmetric_triple(const mmw::WaveguideGeometry& g,
                                         double sigma = 2.0e-6) {
    mmw::InputConfig in;
    for (double c : mmw::symmetric_positions(3, g.width)) {
        mmw::BeamSpec b;
        b.sigma = sigma;
        b.center = c;
        in.beams.push_back(b);
    }
    return in;
}

// Random field supported on the retained modes (unit norm).
inline mmw::SampledField random_mode_field(const mmw::ModeBasis& basis,
                                           std::mt19937_64& rng, int active_modes = 24) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    mmw::ModeAmplitudes c;
    c.coefficients.assign(
        static_cast<std::size_t>(basis.geometry().mode_count), cplx(0.0, 0.0));
    double norm = 0;
    for (int m = 0; m < active_modes; ++m) {
        const cplx v(gauss(rng), gauss(rng));
        c.coefficients[static_cast<std::size_t>(m)] = v;
        norm += std::norm(v);
    }
    const double scale = 1.0 / std::sqrt(norm);
    for (cplx& v : c.coefficients) v *= scale;
    return basis.synthesize(c, 0.0);
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

inline int count_lobes(const std::vector<double>& inten, double floor_fraction = 0.1) {
    double peak = 0;
    for (double v : inten) peak = std::max(peak, v);
    int lobes = 0;
    for (std::size_t i = 0; i < inten.size(); ++i) {
        if (inten[i] < floor_fraction * peak) continue;
        const bool lhs = i == 0 || inten[i] > inten[i - 1];
        const bool rhs = i + 1 == inten.size() || inten[i] >= inten[i + 1];
        if (lhs && rhs) ++lobes;
    }
    return lobes;
}

// Frozen ideal two-way splitter matrices for beams at +-D/4 (derived from the
// quadratic mode phases; used as independent oracles for the extraction path).
inline std::vector<cplx> ideal_equal_splitter() {
    const cplx a(0.5, -0.5), b(0.5, 0.5);
    return {a, -b, -b, a};
}

// Unequal two-way splitter one half Talbot distance in: the beam crosses
// with amplitude cos(pi/8) and stays with sin(pi/8).
inline std::vector<cplx> ideal_unequal_splitter() {
    const double pi = 3.14159265358979323846;
    const cplx ts = std::polar(std::sin(pi / 8), -5 * pi / 8);
    const cplx tc = std::polar(std::cos(pi / 8), -pi / 8);
    return {ts, tc, tc, ts};
}

// Ideal equal three-way splitter for beams at {D/6, D/2, 5D/6}.
inline std::vector<cplx> ideal_equal_three_way() {
    const double pi = 3.14159265358979323846;
    const double s = 1.0 / std::sqrt(3.0);
    const cplx a0 = std::polar(s, pi / 2);
    const cplx a2 = std::polar(s, -pi / 6);
    return {a0, -a2, a2, -a2, a0, -a2, a2, -a2, a0};
}

} // namespace th
