#pragma once

#include "mmw/correlation.hpp"
#include "mmw/states.hpp"

namespace mmw {

// Effective N x N beam-to-lobe matrix at one plane: t(m, n) maps input beam n
// onto output lobe m. Row/column order is ascending lobe/beam position.
struct TransferMatrix {
    int n = 0;
    std::vector<cplx> t;  // row-major
    double unitarity_residual = 0;  // Frobenius norm of T^dag T - I

    cplx at(int m, int k) const { return t[static_cast<std::size_t>(m) * n + k]; }
    bool unitary_within(double eps) const { return unitarity_residual <= eps; }
};

// Default tolerance on the unitarity residual; grid truncation dominates it.
inline constexpr double kUnitarityTolerance = 1e-2;

// Overlap of each propagated beam with the per-lobe reference mode (the
// dominant beam's profile restricted to the bin, unit-normalized and
// phase-referenced to be real-positive at the bin center). The residual is
// computed and stored, never hidden; callers decide what to do with it.
TransferMatrix extract_transfer_matrix(const AmplitudeMatrix& a, const LobeBinning& bins);

// Convenience from a scenario description.
TransferMatrix extract_transfer_matrix(const InputConfig& config,
                                       const WaveguideGeometry& geom, double z,
                                       const TransverseGrid& grid);

// N-photon output state of one photon per input beam, over occupation states
// of the N output lobes (lexicographically descending occupations, e.g.
// {|20>, |11>, |02>}).
struct FockOutputState {
    int modes = 0;
    int photons = 0;
    std::vector<std::vector<int>> occupations;
    std::vector<cplx> amplitudes;

    double probability(int idx) const { return std::norm(amplitudes[static_cast<std::size_t>(idx)]); }
    int find(const std::vector<int>& occ) const;
};

FockOutputState fock_output_state(const TransferMatrix& t);

struct ThreePhotonProfile {
    double p_three_bunch = 0;  // all photons in one lobe
    double p_two_bunch = 0;    // exactly two together
    double p_anti_bunch = 0;   // |111>
};

ThreePhotonProfile three_photon_profile(const FockOutputState& s);

// rho_out = U2 rho_in U2^dag with U2 the two-photon representation of the
// nearest unitary to T. Requires N = 2 and residual within eps_u.
TwoPhotonDensity apply_splitter_to_density(const TransferMatrix& t,
                                           const TwoPhotonDensity& rho_in,
                                           double eps_u = kUnitarityTolerance);

// Nearest unitary (polar factor) of a small complex matrix, Newton iteration.
std::vector<cplx> nearest_unitary(const std::vector<cplx>& m, int n);

} // namespace mmw
