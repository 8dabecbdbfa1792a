#include "mmw/lobes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmw/correlation.hpp"
#include "mmw/error.hpp"

namespace mmw {

int LobeBinning::bin_of(int i) const {
    for (int b = 0; b < count(); ++b)
        if (i < edges[static_cast<std::size_t>(b) + 1]) return b;
    return count() - 1;
}

double LobeBinning::bin_center(int b) const {
    const auto [lo, hi] = bin_range(b);
    // midpoint of the interval in physical coordinates
    return 0.5 * (lo + hi) * grid.spacing();
}

LobeBinning lobe_bins(const std::vector<double>& intensity, const TransverseGrid& grid,
                      int n_lobes) {
    const int g = grid.sample_count;
    if (static_cast<int>(intensity.size()) != g)
        throw_physics("lobe_bins: intensity size does not match grid");
    if (n_lobes < 1) throw_physics("lobe_bins: need at least one lobe");

    const double peak = *std::max_element(intensity.begin(), intensity.end());
    if (!(peak > 0)) throw_physics("lobe_bins: intensity is identically zero");
    const double floor = 0.1 * peak;

    std::vector<int> maxima;
    for (int i = 0; i < g; ++i) {
        const double v = intensity[static_cast<std::size_t>(i)];
        if (v < floor) continue;
        const bool left_ok = (i == 0) || v > intensity[static_cast<std::size_t>(i) - 1];
        const bool right_ok = (i == g - 1) || v >= intensity[static_cast<std::size_t>(i) + 1];
        if (left_ok && right_ok) maxima.push_back(i);
    }
    if (static_cast<int>(maxima.size()) < n_lobes)
        throw_physics("lobe_bins: only " + std::to_string(maxima.size()) +
                      " resolvable lobes above 10% of peak, need " +
                      std::to_string(n_lobes) + " (non-imaging plane?)");

    std::sort(maxima.begin(), maxima.end(), [&](int a, int b) {
        return intensity[static_cast<std::size_t>(a)] > intensity[static_cast<std::size_t>(b)];
    });
    maxima.resize(static_cast<std::size_t>(n_lobes));
    std::sort(maxima.begin(), maxima.end());

    LobeBinning bins;
    bins.grid = grid;
    bins.peaks = maxima;
    bins.edges.push_back(0);
    for (int b = 0; b + 1 < n_lobes; ++b) {
        const int lo = maxima[static_cast<std::size_t>(b)];
        const int hi = maxima[static_cast<std::size_t>(b) + 1];
        int cut = lo;
        double best = intensity[static_cast<std::size_t>(lo)];
        for (int i = lo + 1; i < hi; ++i)
            if (intensity[static_cast<std::size_t>(i)] < best) {
                best = intensity[static_cast<std::size_t>(i)];
                cut = i;
            }
        bins.edges.push_back(cut);
    }
    bins.edges.push_back(g);
    return bins;
}

double BinMasses::total() const {
    double s = 0;
    for (double v : m) s += v;
    return s;
}

double BinMasses::same_bin_mass() const {
    double s = 0;
    for (int a = 0; a < bins; ++a) {
        if (order == 2) s += at(a, a);
        else s += at(a, a, a);
    }
    return s;
}

double BinMasses::distinct_bin_mass() const {
    double s = 0;
    if (order == 2) {
        for (int a = 0; a < bins; ++a)
            for (int b = 0; b < bins; ++b)
                if (a != b) s += at(a, b);
    } else {
        for (int a = 0; a < bins; ++a)
            for (int b = 0; b < bins; ++b)
                for (int c = 0; c < bins; ++c)
                    if (a != b && b != c && a != c) s += at(a, b, c);
    }
    return s;
}

BinMasses integrate_bins(const CorrelationMap& g, const LobeBinning& bins) {
    if (g.grid != bins.grid)
        throw_physics("integrate_bins: map and binning grids differ");
    const int n = g.n();
    const int nb = bins.count();
    std::vector<int> bidx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) bidx[static_cast<std::size_t>(i)] = bins.bin_of(i);

    BinMasses out;
    out.order = g.order;
    out.bins = nb;
    out.m.assign(g.order == 2 ? static_cast<std::size_t>(nb * nb)
                              : static_cast<std::size_t>(nb * nb * nb),
                 0.0);
    if (g.order == 2) {
        for (int i = 0; i < n; ++i) {
            const int bi = bidx[static_cast<std::size_t>(i)] * nb;
            const double* row = g.values.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j)
                out.m[static_cast<std::size_t>(bi + bidx[static_cast<std::size_t>(j)])] += row[j];
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int b2 = (bidx[static_cast<std::size_t>(i)] * nb +
                                bidx[static_cast<std::size_t>(j)]) * nb;
                const double* row =
                    g.values.data() + (static_cast<std::size_t>(i) * n + j) * n;
                for (int k = 0; k < n; ++k)
                    out.m[static_cast<std::size_t>(b2 + bidx[static_cast<std::size_t>(k)])] += row[k];
            }
    }
    const double vol = g.cell_volume();
    for (double& v : out.m) v *= vol;
    return out;
}

std::optional<double> bunching_ratio(const CorrelationMap& g2, const LobeBinning& bins) {
    if (g2.order != 2) throw_physics("bunching_ratio: order-2 map required");
    if (bins.count() != 2) throw_physics("bunching_ratio: exactly 2 bins required");
    const BinMasses m = integrate_bins(g2, bins);
    const double same = m.same_bin_mass();
    const double cross = m.distinct_bin_mass();
    if (cross == 0.0) return std::nullopt;
    return same / cross;
}

} // namespace mmw
