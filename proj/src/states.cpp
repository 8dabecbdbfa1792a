#include "mmw/states.hpp"

#include <algorithm>
#include <cmath>

namespace mmw {

TwoPhotonDensity::TwoPhotonDensity() = default;

TwoPhotonDensity::TwoPhotonDensity(const std::array<cplx, 9>& rho) : m_(rho) {}

double TwoPhotonDensity::trace_real() const {
    return (at(0, 0) + at(1, 1) + at(2, 2)).real();
}

double TwoPhotonDensity::hermiticity_error() const {
    double e = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            e = std::max(e, std::abs(at(i, j) - std::conj(at(j, i))));
    return e;
}

namespace {

// Cyclic complex Jacobi on a 3x3 Hermitian matrix; plenty for eigenvalues.
void jacobi3(std::array<cplx, 9>& a, std::array<double, 3>& ev) {
    auto idx = [](int i, int j) { return static_cast<std::size_t>(3 * i + j); };
    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) off += std::norm(a[idx(i, j)]);
        if (off < 1e-30) break;
        for (int p = 0; p < 3; ++p)
            for (int q = p + 1; q < 3; ++q) {
                const cplx apq = a[idx(p, q)];
                if (std::abs(apq) < 1e-300) continue;
                const double app = a[idx(p, p)].real();
                const double aqq = a[idx(q, q)].real();
                const double theta = 0.5 * std::atan2(2.0 * std::abs(apq), aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                const cplx ph = apq / std::abs(apq);
                // rotate columns/rows p and q
                std::array<cplx, 3> colp, colq;
                for (int k = 0; k < 3; ++k) {
                    colp[static_cast<std::size_t>(k)] = a[idx(k, p)];
                    colq[static_cast<std::size_t>(k)] = a[idx(k, q)];
                }
                for (int k = 0; k < 3; ++k) {
                    a[idx(k, p)] = c * colp[static_cast<std::size_t>(k)] -
                                   s * std::conj(ph) * colq[static_cast<std::size_t>(k)];
                    a[idx(k, q)] = s * ph * colp[static_cast<std::size_t>(k)] +
                                   c * colq[static_cast<std::size_t>(k)];
                }
                std::array<cplx, 3> rowp, rowq;
                for (int k = 0; k < 3; ++k) {
                    rowp[static_cast<std::size_t>(k)] = a[idx(p, k)];
                    rowq[static_cast<std::size_t>(k)] = a[idx(q, k)];
                }
                for (int k = 0; k < 3; ++k) {
                    a[idx(p, k)] = c * rowp[static_cast<std::size_t>(k)] -
                                   s * ph * rowq[static_cast<std::size_t>(k)];
                    a[idx(q, k)] = s * std::conj(ph) * rowp[static_cast<std::size_t>(k)] +
                                   c * rowq[static_cast<std::size_t>(k)];
                }
            }
    }
    for (int k = 0; k < 3; ++k) ev[static_cast<std::size_t>(k)] = a[idx(k, k)].real();
    std::sort(ev.begin(), ev.end());
}

} // namespace

double TwoPhotonDensity::min_eigenvalue() const {
    // Work on the Hermitian part so tiny asymmetries cannot fake negativity.
    std::array<cplx, 9> h{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            h[static_cast<std::size_t>(3 * i + j)] =
                0.5 * (at(i, j) + std::conj(at(j, i)));
    std::array<double, 3> ev{};
    jacobi3(h, ev);
    return ev[0];
}

TwoPhotonDensity thermal_two_photon_input() {
    TwoPhotonDensity rho;
    rho.set(0, 0, 0.25);
    rho.set(1, 1, 0.50);
    rho.set(2, 2, 0.25);
    return rho;
}

} // namespace mmw
