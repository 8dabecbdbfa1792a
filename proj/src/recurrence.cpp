#include "mmw/recurrence.hpp"

#include <cmath>

#include "mmw/error.hpp"
#include "mmw/kernels.hpp"

namespace mmw {

namespace {

// Positions of cluster minima among below-threshold samples with z > 0.
std::vector<double> cluster_minima(const std::vector<double>& z,
                                   const std::vector<double>& dist, double threshold) {
    std::vector<double> out;
    std::size_t i = 1;  // skip z = 0
    while (i < dist.size()) {
        if (dist[i] >= threshold) {
            ++i;
            continue;
        }
        std::size_t best = i;
        while (i < dist.size() && dist[i] < threshold) {
            if (dist[i] < dist[best]) best = i;
            ++i;
        }
        out.push_back(z[best]);
    }
    return out;
}

double l1_relative(const std::vector<double>& a, const std::vector<double>& ref,
                   double ref_mass) {
    return kern::ops().l1_dist(a.data(), ref.data(), a.size()) / ref_mass;
}

} // namespace

double RecurrenceScan::period_ratio() const {
    if (intensity_period <= 0 || correlation_period <= 0) return 0;
    return correlation_period / intensity_period;
}

RecurrenceScan scan_recurrence(const InputConfig& config, const WaveguideGeometry& geom,
                               double z_max, int steps, const ScanOptions& opt) {
    geom.validate();
    const RevivalDistances rd = revival_distances(geom);
    if (z_max < rd.z0 * (1.0 - 1e-12))
        throw_physics("scan_recurrence: z range must cover at least one full z0");
    if (steps < 8) throw_physics("scan_recurrence: need at least 8 steps");

    const int order = config.beam_count();
    const int cgrid = opt.correlation_grid > 0 ? opt.correlation_grid
                                               : (order >= 3 ? 64 : 128);
    const TransverseGrid grid_i{opt.intensity_grid, geom.width};
    const TransverseGrid grid_c{cgrid, geom.width};

    const PropagatedInput input_i(config, geom, grid_i);
    const PropagatedInput input_c(config, geom, grid_c);

    auto corr_at = [&](double z) {
        const AmplitudeMatrix a = input_c.at(z);
        if (order == 1) {
            // single beam: correlation reduces to the intensity product
            CorrelationMap g;
            g.order = 2;
            g.grid = grid_c;
            g.z = z;
            const std::vector<double> inten = intensity(a, IntensityMode::Incoherent);
            const std::size_t n = inten.size();
            g.values.resize(n * n);
            kern::ops().outer2_set(inten.data(), g.values.data(), n);
            return g;
        }
        return opt.metric == ScanMetric::Quantum ? quantum_correlation(a, order)
                                                 : thermal_correlation_exact(a, order);
    };

    RecurrenceScan scan;
    scan.threshold_fraction = opt.threshold_fraction;

    const std::vector<double> i0 = intensity(input_i.at(0.0), IntensityMode::Incoherent);
    const CorrelationMap g0 = corr_at(0.0);
    const double i0_mass = kern::ops().sum(i0.data(), i0.size());
    const double g0_mass = kern::ops().sum(g0.values.data(), g0.values.size());

    const double h = z_max / steps;
    for (int k = 0; k <= steps; ++k) {
        const double z = k * h;
        scan.z.push_back(z);
        scan.intensity_dist.push_back(
            l1_relative(intensity(input_i.at(z), IntensityMode::Incoherent), i0, i0_mass));
        scan.correlation_dist.push_back(l1_relative(corr_at(z).values, g0.values, g0_mass));
    }

    auto mean_tail = [](const std::vector<double>& d) {
        double s = 0;
        for (std::size_t i = 1; i < d.size(); ++i) s += d[i];
        return s / static_cast<double>(d.size() - 1);
    };
    const double thr_i = opt.threshold_fraction * mean_tail(scan.intensity_dist);
    const double thr_c = opt.threshold_fraction * mean_tail(scan.correlation_dist);

    scan.intensity_revivals = cluster_minima(scan.z, scan.intensity_dist, thr_i);
    scan.correlation_revivals = cluster_minima(scan.z, scan.correlation_dist, thr_c);
    if (!scan.intensity_revivals.empty()) scan.intensity_period = scan.intensity_revivals.front();
    if (!scan.correlation_revivals.empty())
        scan.correlation_period = scan.correlation_revivals.front();
    return scan;
}

} // namespace mmw
