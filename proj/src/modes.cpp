#include "mmw/modes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mmw/error.hpp"
#include "mmw/kernels.hpp"

namespace mmw {

namespace {

void check_mode_index(int m, const WaveguideGeometry& geom) {
    if (m < 1 || m > geom.mode_count)
        throw_physics("mode index " + std::to_string(m) + " outside 1.." +
                      std::to_string(geom.mode_count));
}

} // namespace

std::vector<double> mode_profile(int m, const WaveguideGeometry& geom,
                                 const TransverseGrid& grid) {
    check_mode_index(m, geom);
    const int n = grid.sample_count;
    std::vector<double> psi(static_cast<std::size_t>(n));
    const double amp = std::sqrt(2.0 / geom.width);
    // m pi x_i / D evaluated as m pi (i + 1/2) / G keeps the argument exact
    // in the grid index, which preserves the discrete orthogonality.
    const double step = std::numbers::pi * m / n;
    for (int i = 0; i < n; ++i)
        psi[static_cast<std::size_t>(i)] = amp * std::sin(step * (i + 0.5));
    return psi;
}

double propagation_phase(int m, double z, const WaveguideGeometry& geom) {
    check_mode_index(m, geom);
    if (z < 0) throw_physics("propagation distance must be nonnegative");
    switch (geom.law) {
    case PropagationLaw::Paraxial: {
        const double md = static_cast<double>(m);
        return -std::numbers::pi * geom.wavelength * md * md * z /
               (4.0 * geom.width * geom.width);
    }
    case PropagationLaw::ExactBeta: {
        const double k = 2.0 * std::numbers::pi / geom.wavelength;
        const double kt = m * std::numbers::pi / geom.width;
        return (std::sqrt(k * k - kt * kt) - k) * z;
    }
    }
    return 0;
}

ModeBasis::ModeBasis(const WaveguideGeometry& geom, const TransverseGrid& grid)
    : geom_(geom), grid_(grid) {
    geom_.validate();
    grid_.validate();
    if (geom_.mode_count >= grid_.sample_count)
        throw_physics("mode_count must be below grid sample_count for exact quadrature");
    const int g = grid_.sample_count;
    table_.resize(static_cast<std::size_t>(geom_.mode_count) * g);
    for (int m = 1; m <= geom_.mode_count; ++m) {
        const std::vector<double> psi = mode_profile(m, geom_, grid_);
        std::copy(psi.begin(), psi.end(),
                  table_.begin() + static_cast<std::size_t>(m - 1) * g);
    }
}

const double* ModeBasis::mode_row(int m) const {
    check_mode_index(m, geom_);
    return table_.data() + static_cast<std::size_t>(m - 1) * grid_.sample_count;
}

ModeAmplitudes ModeBasis::decompose(const SampledField& f) const {
    if (f.grid != grid_) throw_physics("decompose: field grid does not match basis grid");
    const std::size_t g = static_cast<std::size_t>(grid_.sample_count);
    std::vector<double> re(g), im(g);
    for (std::size_t i = 0; i < g; ++i) {
        re[i] = f.amplitudes[i].real();
        im[i] = f.amplitudes[i].imag();
    }
    const double dx = grid_.spacing();
    ModeAmplitudes out;
    out.coefficients.resize(static_cast<std::size_t>(geom_.mode_count));
    for (int m = 1; m <= geom_.mode_count; ++m) {
        double cr = 0, ci = 0;
        kern::ops().dot_real_cplx(mode_row(m), re.data(), im.data(), g, &cr, &ci);
        out.coefficients[static_cast<std::size_t>(m - 1)] = cplx(cr * dx, ci * dx);
    }
    return out;
}

SampledField ModeBasis::synthesize(const ModeAmplitudes& c, double z) const {
    if (static_cast<int>(c.coefficients.size()) != geom_.mode_count)
        throw_physics("synthesize: coefficient count does not match mode_count");
    const std::size_t g = static_cast<std::size_t>(grid_.sample_count);
    std::vector<double> re(g, 0.0), im(g, 0.0);
    for (int m = 1; m <= geom_.mode_count; ++m) {
        const cplx cm = c.coefficients[static_cast<std::size_t>(m - 1)];
        if (cm == cplx(0.0, 0.0)) continue;
        const double phi = propagation_phase(m, z, geom_);
        const cplx a = cm * std::polar(1.0, phi);
        kern::ops().axpy_real_cplx(a.real(), a.imag(), mode_row(m), re.data(), im.data(), g);
    }
    SampledField f;
    f.grid = grid_;
    f.z = z;
    f.amplitudes.resize(g);
    for (std::size_t i = 0; i < g; ++i) f.amplitudes[i] = cplx(re[i], im[i]);
    return f;
}

SampledField ModeBasis::propagate(const SampledField& f, double dz) const {
    SampledField out = synthesize(decompose(f), dz);
    out.z = f.z + dz;
    return out;
}

ModeAmplitudes decompose(const SampledField& f, const WaveguideGeometry& geom) {
    return ModeBasis(geom, f.grid).decompose(f);
}

SampledField propagate(const SampledField& f, double dz, const WaveguideGeometry& geom) {
    return ModeBasis(geom, f.grid).propagate(f, dz);
}

std::vector<cplx> green_kernel(const WaveguideGeometry& geom, double z,
                               const TransverseGrid& grid) {
    if (z < 0) throw_physics("propagation distance must be nonnegative");
    const ModeBasis basis(geom, grid);
    const std::size_t g = static_cast<std::size_t>(grid.sample_count);
    std::vector<double> re(g * g, 0.0), im(g * g, 0.0);
    for (int m = 1; m <= geom.mode_count; ++m) {
        const double* psi = basis.mode_row(m);
        const cplx p = std::polar(1.0, propagation_phase(m, z, geom));
        for (std::size_t i = 0; i < g; ++i) {
            const cplx a = p * psi[i];
            kern::ops().axpy_real_cplx(a.real(), a.imag(), psi,
                                       re.data() + i * g, im.data() + i * g, g);
        }
    }
    std::vector<cplx> kmat(g * g);
    for (std::size_t i = 0; i < g * g; ++i) kmat[i] = cplx(re[i], im[i]);
    return kmat;
}

} // namespace mmw
