#include <doctest.h>

#include "helpers.hpp"
#include "mmw/error.hpp"
#include "mmw/recurrence.hpp"

using namespace mmw;

TEST_CASE("recurrence periods: generic pair, quarter-width pair, triple") {
    WaveguideGeometry g = th::small_geometry(60e-6, 96);
    const RevivalDistances rd = revival_distances(g);
    ScanOptions opt;
    opt.intensity_grid = 512;
    opt.correlation_grid = 96;

    // generic symmetric pair: correlations take twice the intensity period
    {
        const InputConfig in = th::symmetric_pair(g, 1.0 / 3.0);
        const RecurrenceScan scan = scan_recurrence(in, g, rd.z0, 96, opt);
        CHECK(scan.intensity_period == doctest::Approx(rd.talbot).epsilon(1e-9));
        CHECK(scan.correlation_period == doctest::Approx(2 * rd.talbot).epsilon(1e-9));
        CHECK(scan.period_ratio() == doctest::Approx(2.0).epsilon(1e-9));
        CHECK(scan.intensity_dist.front() == 0.0);
        CHECK(scan.correlation_dist.front() == 0.0);
    }

    // quarter-width positions gain an extra intensity recurrence
    {
        const InputConfig in = th::symmetric_pair(g, 0.25);
        const RecurrenceScan scan = scan_recurrence(in, g, rd.z0, 96, opt);
        CHECK(scan.intensity_period == doctest::Approx(rd.talbot / 2).epsilon(1e-9));
        CHECK(scan.correlation_period == doctest::Approx(2 * rd.talbot).epsilon(1e-9));
        CHECK(scan.period_ratio() == doctest::Approx(4.0).epsilon(1e-9));
    }

    // three equally spaced beams: ratio six
    {
        WaveguideGeometry g3 = th::small_geometry(70e-6, 96);
        const RevivalDistances rd3 = revival_distances(g3);
        ScanOptions opt3 = opt;
        opt3.correlation_grid = 48;
        const InputConfig in = th::symmetric_triple(g3);
        const RecurrenceScan scan = scan_recurrence(in, g3, rd3.z0, 96, opt3);
        CHECK(scan.intensity_period == doctest::Approx(rd3.talbot / 3).epsilon(1e-9));
        CHECK(scan.correlation_period == doctest::Approx(2 * rd3.talbot).epsilon(1e-9));
        CHECK(scan.period_ratio() == doctest::Approx(6.0).epsilon(1e-9));
    }
}

TEST_CASE("thermal-metric scan sees the same correlation period") {
    WaveguideGeometry g = th::small_geometry(60e-6, 96);
    const RevivalDistances rd = revival_distances(g);
    ScanOptions opt;
    opt.intensity_grid = 512;
    opt.correlation_grid = 96;
    opt.metric = ScanMetric::ThermalExact;

    const InputConfig in = th::symmetric_pair(g, 0.25);
    const RecurrenceScan scan = scan_recurrence(in, g, rd.z0, 96, opt);
    CHECK(scan.correlation_period == doctest::Approx(2 * rd.talbot).epsilon(1e-9));
    CHECK(scan.period_ratio() == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("scan preconditions") {
    WaveguideGeometry g = th::small_geometry();
    const RevivalDistances rd = revival_distances(g);
    const InputConfig in = th::symmetric_pair(g);
    CHECK_THROWS_AS(scan_recurrence(in, g, 0.5 * rd.z0, 96, {}), error);
    CHECK_THROWS_AS(scan_recurrence(in, g, rd.z0, 4, {}), error);
}
