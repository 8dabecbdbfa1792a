// Acceptance suite: the headline observables of each preset plane at their
// stated tolerances, one pass/fail line per criterion.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mmw/correlation.hpp"
#include "mmw/modes.hpp"
#include "mmw/recurrence.hpp"
#include "mmw/reduce3.hpp"
#include "mmw/scenario.hpp"
#include "mmw/transfer.hpp"

using namespace mmw;

namespace {

struct PresetRun {
    ScenarioConfig cfg;
    WaveguideGeometry geom;
    InputConfig input;
    TransverseGrid grid;
    AmplitudeMatrix a;
    std::vector<double> inten;
    LobeBinning bins;
    TransferMatrix t;
    FockOutputState fock;
    CorrelationMap quantum;
    CorrelationMap thermal;
};

const PresetRun& preset_run(const std::string& name) {
    static std::map<std::string, PresetRun> cache;
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;

    PresetRun r;
    r.cfg = expand_preset(name);
    r.geom = r.cfg.geometry();
    r.input = r.cfg.input();
    const int order = r.input.beam_count();
    r.grid = TransverseGrid{r.cfg.effective_corr_samples(), r.geom.width};
    r.a = amplitude_matrix(r.input, r.geom, r.geom.length, r.grid);
    r.inten = intensity(r.a, IntensityMode::Incoherent);
    r.bins = lobe_bins(r.inten, r.grid, order);
    r.t = extract_transfer_matrix(r.a, r.bins);
    r.fock = fock_output_state(r.t);
    r.quantum = quantum_correlation(r.a, order);
    r.thermal = thermal_correlation_exact(r.a, order);
    return cache.emplace(name, std::move(r)).first->second;
}

int checks_failed = 0;
std::vector<std::string> lines;

void criterion(int number, const std::string& label, bool pass, const std::string& detail) {
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << "  " << number << ". " << label << "  [" << detail
         << "]";
    lines.push_back(line.str());
    std::printf("%s\n", line.str().c_str());
    if (!pass) ++checks_failed;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

double thermal_ratio(const PresetRun& r) {
    const auto ratio = bunching_ratio(r.thermal, r.bins);
    return ratio ? *ratio : std::numeric_limits<double>::infinity();
}

// 1. imaging plane: separated quantum output, unit thermal ratio
void criterion_1() {
    const PresetRun& r = preset_run("fig2a");
    const BinMasses m = integrate_bins(r.quantum, r.bins);
    const double bunch_fraction = m.same_bin_mass() / m.total();
    const double ratio = thermal_ratio(r);
    const bool pass = bunch_fraction < 1e-3 && std::fabs(ratio - 1.0) <= 0.05;
    criterion(1, "imaging plane: quantum bunching mass < 1e-3, thermal ratio 1 +- 5%", pass,
              "bunch=" + fmt(bunch_fraction) + " ratio=" + fmt(ratio));
}

// 2. equal two-way splitter: vanished separated outcome, thermal ratio 3
void criterion_2() {
    const PresetRun& r = preset_run("fig2b");
    const BinMasses m = integrate_bins(r.quantum, r.bins);
    const double anti_fraction = m.distinct_bin_mass() / m.total();
    const double ratio = thermal_ratio(r);
    const bool pass = anti_fraction < 1e-3 && std::fabs(ratio - 3.0) <= 0.05 * 3.0;
    criterion(2, "equal splitter: quantum anti-bunching mass < 1e-3, thermal ratio 3 +- 5%",
              pass, "anti=" + fmt(anti_fraction) + " ratio=" + fmt(ratio));
}

// 3. unequal splitter: cos/sin(pi/8) singles, balanced quantum masses, 5/3 thermal
void criterion_3() {
    const PresetRun& r = preset_run("fig2c");
    const double c8 = std::cos(std::numbers::pi / 8);
    const double s8 = std::sin(std::numbers::pi / 8);
    double amp_dev = 0;
    for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
            const double a = std::abs(r.t.at(m, n));
            const double want = (m == n) ? c8 : s8;
            amp_dev = std::max(amp_dev, std::fabs(a - want));
        }
    const BinMasses m = integrate_bins(r.quantum, r.bins);
    const double qratio = m.same_bin_mass() / m.distinct_bin_mass();
    const double tratio = thermal_ratio(r);
    const bool pass = amp_dev <= 1e-2 && std::fabs(qratio - 1.0) <= 0.02 &&
                      std::fabs(tratio - 5.0 / 3.0) <= 0.05 * (5.0 / 3.0);
    criterion(3,
              "unequal splitter: |T| within 1e-2 of {cos,sin}(pi/8), quantum bunch/anti 1 "
              "+- 2%, thermal 5/3 +- 5%",
              pass, "ampdev=" + fmt(amp_dev) + " q=" + fmt(qratio) + " t=" + fmt(tratio));
}

// 4. equal three-way splitter profile {2/3, <1e-2, 1/3} within 1e-2
void criterion_4() {
    const PresetRun& r = preset_run("fig4a");
    const ThreePhotonProfile p = three_photon_profile(r.fock);
    const bool pass = std::fabs(p.p_three_bunch - 2.0 / 3.0) <= 1e-2 &&
                      p.p_two_bunch < 1e-2 &&
                      std::fabs(p.p_anti_bunch - 1.0 / 3.0) <= 1e-2;
    criterion(4, "equal 3-way splitter: photon profile {2/3, <1e-2, 1/3} +- 1e-2", pass,
              "p3=" + fmt(p.p_three_bunch) + " p2=" + fmt(p.p_two_bunch) +
                  " p111=" + fmt(p.p_anti_bunch));
}

// 5. unequal three-way splitter: no complete anti-bunching; reduced-map mass
//    sits on the coincidence loci (and the equal splitter shows the opposite)
void criterion_5() {
    const PresetRun& r = preset_run("fig4b");
    const ThreePhotonProfile p = three_photon_profile(r.fock);
    const double spacing = r.geom.width / 3.0;

    const ReducedMap3 rb = reduce_difference_coords(r.quantum);
    const CoincidenceClassMasses mb = mass_by_coincidence_class(rb, spacing);

    const PresetRun& ra = preset_run("fig4a");
    const ReducedMap3 raq = reduce_difference_coords(ra.quantum);
    const CoincidenceClassMasses ma = mass_by_coincidence_class(raq, ra.geom.width / 3.0);

    const bool pass = p.p_anti_bunch < 1e-2 &&
                      mb.anti_bunch / mb.total() < 1e-2 &&       // no off-loci mass (4b)
                      mb.two_bunch / mb.total() > 0.5 &&         // axes and diagonal carry it
                      mb.three_bunch / mb.total() > 0.2 &&       // central spot present
                      ma.two_bunch / ma.total() < 1e-2 &&        // no axis mass (4a)
                      ma.three_bunch / ma.total() > 0.5 &&       // central spot dominates
                      ma.anti_bunch / ma.total() > 0.2;          // off-loci spots present
    criterion(5,
              "unequal 3-way splitter: anti-bunching < 1e-2 and reduced-map mass on the "
              "expected loci",
              pass,
              "p111=" + fmt(p.p_anti_bunch) + " 4b(center,pair,anti)=" +
                  fmt(mb.three_bunch / mb.total()) + "," + fmt(mb.two_bunch / mb.total()) +
                  "," + fmt(mb.anti_bunch / mb.total()) + " 4a=" +
                  fmt(ma.three_bunch / ma.total()) + "," + fmt(ma.two_bunch / ma.total()) +
                  "," + fmt(ma.anti_bunch / ma.total()));
}

// 6. recurrence-period hierarchy 2 / 4 / 6
void criterion_6() {
    const ScenarioConfig base = expand_preset("fig2a");
    const WaveguideGeometry geom = base.geometry();
    const double z0 = revival_distances(geom).z0;

    auto ratio_for = [&](const InputConfig& in, const WaveguideGeometry& g) {
        return scan_recurrence(in, g, revival_distances(g).z0, 96, {}).period_ratio();
    };

    ScenarioConfig generic = base;
    generic.symmetric_beams = 0;
    generic.positions_relative = {-1.0 / 3.0, 1.0 / 3.0};
    const double r2 = ratio_for(generic.input(), geom);

    const double r4 = ratio_for(base.input(), geom);  // beams at +-D/4

    const ScenarioConfig three = expand_preset("fig4a");
    const double r6 = ratio_for(three.input(), three.geometry());

    const bool pass = std::fabs(r2 - 2.0) < 1e-6 && std::fabs(r4 - 4.0) < 1e-6 &&
                      std::fabs(r6 - 6.0) < 1e-6;
    criterion(6, "correlation/intensity period ratios 2 (symmetric), 4 (+-D/4), 6 (3 beams)",
              pass, "r=" + fmt(r2) + "," + fmt(r4) + "," + fmt(r6));
    (void)z0;
}

// 7. oracle equivalence: exact vs MC within 3 sigma at S = 1e5 on every
//    preset, and the MC error halves when S quadruples
void criterion_7() {
    const long big = 100000;
    double worst_sigma = 0;
    std::string worst_name = "-";
    for (const char* name : {"fig1", "fig2a", "fig2b", "fig2c", "fig4a", "fig4b"}) {
        const PresetRun& r = preset_run(name);
        const int order = r.input.beam_count();
        // order-3 sampling runs on a coarser grid to stay desk-scale
        const TransverseGrid grid =
            order >= 3 ? TransverseGrid{64, r.geom.width} : r.grid;
        const AmplitudeMatrix a =
            order >= 3 ? amplitude_matrix(r.input, r.geom, r.geom.length, grid) : r.a;
        const std::vector<double> inten = intensity(a, IntensityMode::Incoherent);
        const LobeBinning bins = lobe_bins(inten, grid, order);
        const CorrelationMap exact = thermal_correlation_exact(a, order);
        const BinMasses me = integrate_bins(exact, bins);
        McLobeStats stats;
        (void)thermal_correlation_mc(a, order, r.cfg.seed, big, bins, stats);
        for (std::size_t k = 0; k < me.m.size(); ++k) {
            const double se = stats.standard_error(static_cast<int>(k));
            if (se <= 0) continue;
            const double z = std::fabs(stats.mean[k] - me.m[k]) / se;
            if (z > worst_sigma) {
                worst_sigma = z;
                worst_name = name;
            }
        }
    }

    // halving law on the equal-splitter preset: the seed-averaged squared map
    // error is proportional to 1/S (log-log slope -1 over S = 1e3..1.6e4),
    // which is exactly "the error halves when S quadruples". Per-seed errors
    // carry only ~2 effective degrees of freedom, so the slope is estimated
    // over many seeds.
    const PresetRun& r = preset_run("fig2b");
    const TransverseGrid grid{96, r.geom.width};
    const AmplitudeMatrix a = amplitude_matrix(r.input, r.geom, r.geom.length, grid);
    const CorrelationMap exact = thermal_correlation_exact(a, 2);
    auto sqerr = [&](long s, std::uint64_t seed) {
        const CorrelationMap mc = thermal_correlation_mc(a, 2, seed, s);
        double acc = 0;
        for (std::size_t i = 0; i < mc.values.size(); ++i) {
            const double d = mc.values[i] - exact.values[i];
            acc += d * d;
        }
        return acc;
    };
    const long svals[3] = {1000, 4000, 16000};
    double logs[3], logmse[3];
    for (int k = 0; k < 3; ++k) {
        double mse = 0;
        for (std::uint64_t rep = 0; rep < 150; ++rep)
            mse += sqerr(svals[k], 1000 * (static_cast<std::uint64_t>(k) + 1) + rep);
        mse /= 150;
        logs[k] = std::log(static_cast<double>(svals[k]));
        logmse[k] = std::log(mse);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < 3; ++k) {
        sx += logs[k];
        sy += logmse[k];
        sxx += logs[k] * logs[k];
        sxy += logs[k] * logmse[k];
    }
    const double slope = (3 * sxy - sx * sy) / (3 * sxx - sx * sx);

    const bool pass = worst_sigma <= 3.0 && slope >= -1.3 && slope <= -0.7;
    criterion(7,
              "thermal MC matches the exact oracle (3 sigma at S=1e5; squared error scales "
              "as 1/S)",
              pass,
              "max_sigma=" + fmt(worst_sigma) + "@" + worst_name +
                  " mse_slope=" + fmt(slope));
}

// 8. structural invariants across all presets
void criterion_8() {
    double worst_residual = 0;
    double worst_exchange = 0;
    for (const char* name : {"fig2a", "fig2b", "fig2c", "fig4a", "fig4b"}) {
        const PresetRun& r = preset_run(name);
        worst_residual = std::max(worst_residual, r.t.unitarity_residual);
        worst_exchange = std::max(worst_exchange, r.quantum.max_exchange_asymmetry());
        worst_exchange = std::max(worst_exchange, r.thermal.max_exchange_asymmetry());
    }

    // density transport preserves trace and positivity
    const PresetRun& r2b = preset_run("fig2b");
    const TwoPhotonDensity rho = apply_splitter_to_density(r2b.t, thermal_two_photon_input());
    const double trace_err = std::fabs(rho.trace_real() - 1.0);
    const double min_eig = rho.min_eigenvalue();

    // revival identity on a random retained-mode field
    const WaveguideGeometry geom = r2b.geom;
    const TransverseGrid grid{512, geom.width};
    const ModeBasis basis(geom, grid);
    std::mt19937_64 rng(1234);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ModeAmplitudes c;
    c.coefficients.assign(static_cast<std::size_t>(geom.mode_count), cplx(0, 0));
    double norm = 0;
    for (int m = 0; m < 24; ++m) {
        c.coefficients[static_cast<std::size_t>(m)] = cplx(gauss(rng), gauss(rng));
        norm += std::norm(c.coefficients[static_cast<std::size_t>(m)]);
    }
    for (cplx& v : c.coefficients) v /= std::sqrt(norm);
    const SampledField f = basis.synthesize(c, 0.0);
    const SampledField rev = basis.propagate(f, revival_distances(geom).z0);
    double rev_err = 0;
    for (std::size_t i = 0; i < f.amplitudes.size(); ++i)
        rev_err = std::max(rev_err, std::abs(rev.amplitudes[i] - f.amplitudes[i]));

    const bool pass = worst_residual <= 1e-2 && trace_err <= 1e-10 && min_eig >= -1e-10 &&
                      rev_err <= 1e-6 && worst_exchange <= 1e-12;
    criterion(8,
              "invariants: unitarity residual <= 1e-2, density trace/PSD to 1e-10, revival "
              "to 1e-6, exchange symmetry to 1e-12",
              pass,
              "residual=" + fmt(worst_residual) + " trace_err=" + fmt(trace_err) +
                  " min_eig=" + fmt(min_eig) + " revival=" + fmt(rev_err) +
                  " exchange=" + fmt(worst_exchange));
}

// 9. two-path consistency: continuum lobe-integrated quantum correlations vs
//    the discrete transfer-matrix prediction, within 2%
void criterion_9() {
    double worst = 0;
    std::string worst_name = "-";
    for (const char* name : {"fig2a", "fig2b", "fig2c", "fig4a", "fig4b"}) {
        const PresetRun& r = preset_run(name);
        const int order = r.input.beam_count();
        const BinMasses m = integrate_bins(r.quantum, r.bins);
        double fact = 1;
        for (int k = 2; k <= order; ++k) fact *= k;

        for (std::size_t s = 0; s < r.fock.occupations.size(); ++s) {
            // sum the ordered bin tuples matching this occupation
            double mass = 0;
            const int nb = m.bins;
            const std::size_t tuples = m.m.size();
            for (std::size_t t = 0; t < tuples; ++t) {
                std::vector<int> occ(static_cast<std::size_t>(nb), 0);
                std::size_t rest = t;
                for (int j = 0; j < order; ++j) {
                    occ[rest % static_cast<std::size_t>(nb)] += 1;
                    rest /= static_cast<std::size_t>(nb);
                }
                if (occ == r.fock.occupations[s]) mass += m.m[t];
            }
            const double dev =
                std::fabs(mass / fact - r.fock.probability(static_cast<int>(s)));
            if (dev > worst) {
                worst = dev;
                worst_name = name;
            }
        }
    }
    criterion(9, "two-path consistency: continuum lobes vs transfer matrix within 2%",
              worst <= 0.02, "max_dev=" + fmt(worst) + "@" + worst_name);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (checks_failed == 0) {
        std::printf("acceptance: all %zu criteria passed\n", lines.size());
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", checks_failed);
    return 1;
}
