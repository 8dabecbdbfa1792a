#pragma once

#include <optional>
#include <utility>

#include "mmw/geometry.hpp"

namespace mmw {

struct CorrelationMap;

// Disjoint ordered intervals covering the full grid, one intensity maximum
// per interval; boundaries sit at the minima between adjacent lobes and at
// the mirrors.
struct LobeBinning {
    TransverseGrid grid;
    std::vector<int> edges;  // size count()+1, edges[0] = 0, edges[count()] = G
    std::vector<int> peaks;  // grid index of the maximum in each bin

    int count() const { return static_cast<int>(edges.size()) - 1; }
    std::pair<int, int> bin_range(int b) const {
        return {edges[static_cast<std::size_t>(b)], edges[static_cast<std::size_t>(b) + 1]};
    }
    int bin_of(int i) const;
    double bin_center(int b) const;  // midpoint position of the interval
};

// Bins from the n_lobes highest intensity maxima above 10% of the global
// peak; throws mmw::error(physics) when fewer lobes resolve.
LobeBinning lobe_bins(const std::vector<double>& intensity, const TransverseGrid& grid,
                      int n_lobes);

// Bin-integrated masses of a correlation map over ordered bin tuples.
struct BinMasses {
    int order = 2;
    int bins = 0;
    std::vector<double> m;

    double at(int a, int b) const { return m[static_cast<std::size_t>(a * bins + b)]; }
    double at(int a, int b, int c) const {
        return m[static_cast<std::size_t>((a * bins + b) * bins + c)];
    }
    double total() const;
    double same_bin_mass() const;       // all coordinates in one bin
    double distinct_bin_mass() const;   // all coordinates in distinct bins
};

BinMasses integrate_bins(const CorrelationMap& g, const LobeBinning& bins);

// (sum of same-bin mass) / (sum of cross-bin mass) for an order-2 map over
// two bins. Empty when the denominator is exactly zero (all-bunched state).
std::optional<double> bunching_ratio(const CorrelationMap& g2, const LobeBinning& bins);

} // namespace mmw
