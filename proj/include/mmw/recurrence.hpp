#pragma once

#include "mmw/correlation.hpp"

namespace mmw {

// L1 distances of the incoherent intensity and of the order-N correlation
// map to their z = 0 values, sampled along the guide. A sample counts as a
// revival when its distance drops below threshold_fraction of the z-averaged
// distance; the empirical period is the first revival position.
struct RecurrenceScan {
    std::vector<double> z;
    std::vector<double> intensity_dist;
    std::vector<double> correlation_dist;
    std::vector<double> intensity_revivals;
    std::vector<double> correlation_revivals;
    double intensity_period = 0;    // 0 when nothing detected
    double correlation_period = 0;
    double threshold_fraction = 0.05;

    // correlation period over intensity period; 0 when either is missing
    double period_ratio() const;
};

enum class ScanMetric { Quantum, ThermalExact };

struct ScanOptions {
    int intensity_grid = 1024;
    int correlation_grid = 0;  // 0: 128 for order 2, 64 for order 3
    ScanMetric metric = ScanMetric::Quantum;
    double threshold_fraction = 0.05;
};

// z_range must cover at least one full revival distance z0. The sample grid
// must land on the candidate fractional planes to detect them: multiples of
// 24 steps per z0 cover z_T/N for N <= 3 (the default 96 does).
RecurrenceScan scan_recurrence(const InputConfig& config, const WaveguideGeometry& geom,
                               double z_max, int steps, const ScanOptions& opt = {});

} // namespace mmw
