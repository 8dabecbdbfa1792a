#pragma once

#include <array>

#include "mmw/field.hpp"

namespace mmw {

// Two-photon density matrix in the basis {|20>, |11>, |02>}.
class TwoPhotonDensity {
public:
    TwoPhotonDensity();  // zero matrix
    explicit TwoPhotonDensity(const std::array<cplx, 9>& rho);

    cplx at(int i, int j) const { return m_[static_cast<std::size_t>(3 * i + j)]; }
    void set(int i, int j, cplx v) { m_[static_cast<std::size_t>(3 * i + j)] = v; }

    double trace_real() const;
    double hermiticity_error() const;   // max |rho_ij - conj(rho_ji)|
    double min_eigenvalue() const;      // smallest eigenvalue of the Hermitian part

private:
    std::array<cplx, 9> m_{};
};

// Two-photon sector of two equal-amplitude phase-randomized beams:
// diag(1, 2, 1) / 4, the |11> weight doubled by indistinguishability.
TwoPhotonDensity thermal_two_photon_input();

} // namespace mmw
