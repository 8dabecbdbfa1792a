#pragma once

#include <vector>

#include "mmw/correlation.hpp"

namespace mmw {

// Order-3 map reduced to photon position differences
// (d12, d23) = (x1 - x2, x2 - x3); each cell holds the mean of all map
// entries with those differences. Cells with no contributing triples are
// absent (count 0), not zero.
struct ReducedMap3 {
    int n = 0;           // source grid sample count
    double spacing = 0;  // source grid spacing
    double z = 0;
    std::vector<double> value;  // (2n-1)^2, row-major over (d12, d23)
    std::vector<long> count;

    int size() const { return 2 * n - 1; }
    std::size_t index(int d12, int d23) const {
        return static_cast<std::size_t>(d12 + n - 1) * size() +
               static_cast<std::size_t>(d23 + n - 1);
    }
    double delta(int d) const { return d * spacing; }
    bool absent(int d12, int d23) const { return count[index(d12, d23)] == 0; }
};

ReducedMap3 reduce_difference_coords(const CorrelationMap& g3);

// Raw map mass (value * count per cell) split by coincidence class:
// (0,0) = all three photons together; the d12 = 0 / d23 = 0 axes and the
// d12 = -d23 diagonal = one coincident pair; everything else = all separate.
// Spots are classified by the nearest multiple of lobe_spacing.
struct CoincidenceClassMasses {
    double three_bunch = 0;
    double two_bunch = 0;
    double anti_bunch = 0;

    double total() const { return three_bunch + two_bunch + anti_bunch; }
};

CoincidenceClassMasses mass_by_coincidence_class(const ReducedMap3& r, double lobe_spacing);

} // namespace mmw
