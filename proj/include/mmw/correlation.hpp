#pragma once

#include <cstdint>

#include "mmw/amplitude.hpp"
#include "mmw/lobes.hpp"

namespace mmw {

enum class MapNorm { Raw, SinglesNormalized };

// Order-2 or order-3 joint detection rate over ordered coordinate tuples.
// Exchange symmetry is enforced bitwise: every cell equals its canonical
// (sorted-index) representative.
struct CorrelationMap {
    int order = 2;
    TransverseGrid grid;
    double z = 0;
    MapNorm norm = MapNorm::Raw;
    std::vector<double> values;  // row-major, grid.sample_count^order

    int n() const { return grid.sample_count; }
    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * n() + j];
    }
    double at(int i, int j, int k) const {
        return values[(static_cast<std::size_t>(i) * n() + j) * n() + k];
    }
    double cell_volume() const;
    double total_mass() const;  // sum * dx^order
    void enforce_exchange_symmetry();
    double max_exchange_asymmetry() const;
};

// G(x_1..x_N) = |permanent of A[n][x_j]|^2 for one photon per beam;
// order must equal the beam count (2 or 3).
CorrelationMap quantum_correlation(const AmplitudeMatrix& a, int order);

// Exact uniform-phase ensemble average of the intensity product. A beam-index
// tuple pair (n, m) survives the phase average iff the two multisets agree;
// the surviving separable terms are summed exactly.
CorrelationMap thermal_correlation_exact(const AmplitudeMatrix& a, int order);

// Per-sample standard-error statistics of bin-integrated MC masses, for
// oracle comparisons at a stated confidence.
struct McLobeStats {
    int order = 2;
    int bins = 0;
    long samples = 0;
    std::vector<double> mean;  // ordered bin tuples, bins^order
    std::vector<double> m2;    // sum of squared deviations (Welford)

    double standard_error(int flat_index) const;
};

// Monte Carlo ensemble mean over `samples` phase draws. Deterministic for a
// given (seed, samples) by fixed-order block accumulation.
CorrelationMap thermal_correlation_mc(const AmplitudeMatrix& a, int order,
                                      std::uint64_t seed, long samples);
CorrelationMap thermal_correlation_mc(const AmplitudeMatrix& a, int order,
                                      std::uint64_t seed, long samples,
                                      const LobeBinning& bins, McLobeStats& stats);

// Divide by the product of incoherent singles intensities (tags the map).
void normalize_by_singles(CorrelationMap& g, const AmplitudeMatrix& a);

} // namespace mmw
