#include "mmw/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mmw/correlation.hpp"
#include "mmw/error.hpp"
#include "mmw/io.hpp"
#include "mmw/recurrence.hpp"
#include "mmw/reduce3.hpp"
#include "mmw/transfer.hpp"

namespace mmw {

namespace fs = std::filesystem;

void RunReport::add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}
void RunReport::add(const std::string& key, double value) {
    entries.emplace_back(key, io::format_double(value));
}
void RunReport::add(const std::string& key, long value) {
    entries.emplace_back(key, std::to_string(value));
}

const std::string* RunReport::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

std::string RunReport::to_text() const {
    std::string out;
    for (const auto& [k, v] : entries) {
        out += k;
        out += " = ";
        out += v;
        out += '\n';
    }
    return out;
}

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += io::format_double(v[i]);
    }
    return s;
}

void echo_config(RunReport& r, const ScenarioConfig& c) {
    r.add("config.scenario.name", c.name);
    r.add("config.geometry.width", c.width);
    r.add("config.geometry.length", c.length);
    r.add("config.geometry.wavelength", c.wavelength);
    r.add("config.geometry.modes", static_cast<long>(c.modes));
    r.add("config.geometry.propagation",
          c.law == PropagationLaw::Paraxial ? "paraxial" : "exact");
    r.add("config.grid.samples", static_cast<long>(c.grid_samples));
    r.add("config.grid.correlation_samples", static_cast<long>(c.effective_corr_samples()));
    r.add("config.input.state", c.state == StateKind::FockOnePerBeam ? "fock"
                                : c.state == StateKind::Thermal      ? "thermal"
                                                                     : "coherent");
    r.add("config.input.symmetric_beams", static_cast<long>(c.symmetric_beams));
    r.add("config.input.positions", join_doubles(c.positions));
    r.add("config.input.positions_relative", join_doubles(c.positions_relative));
    r.add("config.input.sigma", c.effective_sigma());
    r.add("config.input.fwhm", c.fwhm);
    r.add("config.input.phases", join_doubles(c.beam_phases));
    r.add("config.input.amplitudes", join_doubles(c.beam_amplitudes));
    r.add("config.computation.order", static_cast<long>(c.effective_order()));
    r.add("config.computation.method", c.method == Method::Exact ? "exact"
                                       : c.method == Method::Mc  ? "mc"
                                                                 : "both");
    r.add("config.computation.samples", c.samples);
    r.add("config.computation.seed", std::to_string(c.seed));
    r.add("config.computation.kernels", c.kernels == kern::Backend::Auto     ? "auto"
                                        : c.kernels == kern::Backend::Scalar ? "scalar"
                                                                             : "avx2");
    r.add("config.scan.enabled", c.scan_enabled ? "true" : "false");
    r.add("config.scan.zmax", c.scan_zmax);
    r.add("config.scan.steps", static_cast<long>(c.scan_steps));
    r.add("config.outputs.directory", c.out_dir);
    r.add("config.outputs.pgm", c.write_pgm ? "true" : "false");
    r.add("config.outputs.slices", c.write_slices ? "true" : "false");
    r.add("config.outputs.carpet", c.carpet ? "true" : "false");
    r.add("config.outputs.carpet_zmax", c.carpet_zmax);
    r.add("config.outputs.carpet_rows", static_cast<long>(c.carpet_rows));
    r.add("config.outputs.snapshots", join_doubles(c.snapshots));
    r.add("config.outputs.normalized", c.normalized_maps ? "true" : "false");
}

// lobe-integrated quantum masses per occupation, divided by N!
std::vector<double> occupation_probabilities(const BinMasses& m,
                                             const std::vector<std::vector<int>>& occs) {
    const int nb = m.bins;
    std::vector<double> p(occs.size(), 0.0);
    const std::size_t tuples = m.m.size();
    double factorial_n = 1;
    for (int k = 2; k <= m.order; ++k) factorial_n *= k;
    for (std::size_t t = 0; t < tuples; ++t) {
        std::vector<int> occ(static_cast<std::size_t>(nb), 0);
        std::size_t rest = t;
        for (int j = 0; j < m.order; ++j) {
            // m.m is indexed (a * nb + b) [* nb + c]; peel from the last axis
            occ[rest % static_cast<std::size_t>(nb)] += 1;
            rest /= static_cast<std::size_t>(nb);
        }
        for (std::size_t s = 0; s < occs.size(); ++s)
            if (occs[s] == occ) {
                p[s] += m.m[t] / factorial_n;
                break;
            }
    }
    return p;
}

cplx state_overlap(const FockOutputState& s, const std::vector<cplx>& ref) {
    cplx acc = 0;
    for (std::size_t i = 0; i < s.amplitudes.size(); ++i)
        acc += std::conj(ref[i]) * s.amplitudes[i];
    return acc;
}

// Reference |111> output states of the two canonical three-way splitters,
// in one conventional phase gauge. Occupation probabilities are gauge-free;
// the reported fidelities compare against these amplitudes verbatim, so a
// gauge mismatch shows up in the number instead of being absorbed.
std::vector<cplx> equal3_reference_state() {
    std::vector<cplx> v(10, 0.0);
    const cplx a = std::sqrt(2.0) / 3.0 * std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    v[0] = a;        // |300>
    v[6] = -a;       // |030>
    v[9] = a;        // |003>
    v[4] = 1.0 / std::sqrt(3.0);  // |111>
    return v;
}

std::vector<cplx> unequal3_reference_state() {
    std::vector<cplx> v(10, 0.0);
    const double a = 1.0 / (3.0 * std::sqrt(2.0));
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const double b = 1.0 / std::sqrt(6.0);
    v[0] = a;        // |300>
    v[6] = 2.0 * a;  // |030>
    v[9] = a;        // |003>
    v[1] = -b * w;   // |210>
    v[2] = -b;       // |201>
    v[5] = -b;       // |102>
    v[8] = -b * w;   // |012>
    return v;
}

std::string occupation_label(const std::vector<int>& occ) {
    std::string s;
    for (int k : occ) s += static_cast<char>('0' + k);
    return s;
}

} // namespace

RunReport run_scenario(const ScenarioConfig& cfg) {
    if (!kern::set_backend(cfg.kernels))
        throw_config("requested kernel backend is unavailable on this machine");

    const WaveguideGeometry geom = cfg.geometry();
    geom.validate();
    const InputConfig input = cfg.input();
    input.validate(geom);
    const RevivalDistances rd = revival_distances(geom);
    const int beams = input.beam_count();
    const int order = cfg.effective_order();
    if (beams >= 2 && order != beams)
        throw_config("computation.order (" + std::to_string(order) +
                     ") must match the beam count (" + std::to_string(beams) + ")");

    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw_io("cannot create output directory '" + dir.string() + "': " + ec.message());

    RunReport report;
    echo_config(report, cfg);
    report.add("derived.z0", rd.z0);
    report.add("derived.z_talbot", rd.talbot);
    report.add("derived.length_over_z_talbot", geom.length / rd.talbot);
    report.add("derived.imaging_width", imaging_width(geom.length, geom.wavelength));
    report.add("derived.kernel_backend", std::string(kern::ops().name));

    std::vector<fs::path> written;
    auto emit_matrix = [&](const std::string& name, const double* data, int rows, int cols,
                           const std::string& z_line,
                           const std::vector<bool>* present = nullptr) {
        const fs::path p = dir / name;
        io::write_matrix_csv(p, data, rows, cols, z_line, present);
        written.push_back(p);
    };

    const TransverseGrid main_grid{cfg.grid_samples, geom.width};
    const TransverseGrid corr_grid{cfg.effective_corr_samples(), geom.width};

    // output-facet intensity on the fine grid
    const AmplitudeMatrix a_main = amplitude_matrix(input, geom, geom.length, main_grid);
    const std::vector<double> i_main = intensity(a_main, IntensityMode::Incoherent);
    emit_matrix("intensity.csv", i_main.data(), 1, main_grid.sample_count,
                io::format_double(geom.length));

    if (input.state_kind == StateKind::FixedPhaseCoherent) {
        const std::vector<double> zero_phases(static_cast<std::size_t>(beams), 0.0);
        const std::vector<double> i_coh =
            intensity(a_main, IntensityMode::Coherent, zero_phases);
        emit_matrix("intensity_coherent.csv", i_coh.data(), 1, main_grid.sample_count,
                    io::format_double(geom.length));
    }

    if (beams >= 2 && order == beams) {
        const AmplitudeMatrix a = amplitude_matrix(input, geom, geom.length, corr_grid);
        const std::vector<double> i_corr = intensity(a, IntensityMode::Incoherent);
        const LobeBinning bins = lobe_bins(i_corr, corr_grid, beams);
        for (int b = 0; b < bins.count(); ++b)
            report.add("metrics.lobe_center_" + std::to_string(b), bins.bin_center(b));

        const TransferMatrix t = extract_transfer_matrix(a, bins);
        report.add("metrics.unitarity_residual", t.unitarity_residual);
        for (int m = 0; m < t.n; ++m)
            for (int n = 0; n < t.n; ++n) {
                const std::string key = "metrics.transfer_abs_" + std::to_string(m) +
                                        std::to_string(n);
                report.add(key, std::abs(t.at(m, n)));
            }
        {
            std::vector<double> flat(static_cast<std::size_t>(t.n) * t.n * 2);
            for (int m = 0; m < t.n; ++m)
                for (int n = 0; n < t.n; ++n) {
                    flat[static_cast<std::size_t>(m) * 2 * t.n + 2 * n] = t.at(m, n).real();
                    flat[static_cast<std::size_t>(m) * 2 * t.n + 2 * n + 1] = t.at(m, n).imag();
                }
            emit_matrix("transfer_matrix.csv", flat.data(), t.n, 2 * t.n,
                        io::format_double(geom.length) + "; columns re,im per input beam");
        }

        const FockOutputState fock = fock_output_state(t);
        for (std::size_t s = 0; s < fock.occupations.size(); ++s)
            report.add("metrics.fock_p" + occupation_label(fock.occupations[s]),
                       fock.probability(static_cast<int>(s)));

        // quantum correlation and two-path consistency
        const CorrelationMap gq = quantum_correlation(a, order);
        const BinMasses mq = integrate_bins(gq, bins);
        const std::vector<double> pq = occupation_probabilities(mq, fock.occupations);
        double two_path_dev = 0;
        for (std::size_t s = 0; s < pq.size(); ++s)
            two_path_dev = std::max(
                two_path_dev, std::fabs(pq[s] - fock.probability(static_cast<int>(s))));
        report.add("metrics.two_path_max_dev", two_path_dev);

        const double q_total = mq.total();
        report.add("metrics.quantum_same_lobe_fraction", mq.same_bin_mass() / q_total);
        report.add("metrics.quantum_distinct_lobe_fraction", mq.distinct_bin_mass() / q_total);

        CorrelationMap gt;  // thermal exact, reused for mc comparison
        const bool want_exact = cfg.method != Method::Mc;
        const bool want_mc = cfg.method != Method::Exact && cfg.samples > 0;

        if (order == 2) {
            emit_matrix("g2_quantum.csv", gq.values.data(), gq.n(), gq.n(),
                        io::format_double(geom.length));
            const auto qratio = bunching_ratio(gq, bins);
            report.add("metrics.quantum_bunching_ratio",
                       qratio ? io::format_double(*qratio)
                              : std::string("undefined (no anti-bunching mass)"));
            if (cfg.normalized_maps) {
                CorrelationMap gn = gq;
                normalize_by_singles(gn, a);
                emit_matrix("g2_quantum_normalized.csv", gn.values.data(), gn.n(), gn.n(),
                            io::format_double(geom.length));
            }
            if (want_exact) {
                gt = thermal_correlation_exact(a, order);
                emit_matrix("g2_thermal.csv", gt.values.data(), gt.n(), gt.n(),
                            io::format_double(geom.length));
                const auto tratio = bunching_ratio(gt, bins);
                report.add("metrics.thermal_bunching_ratio",
                           tratio ? io::format_double(*tratio)
                                  : std::string("undefined (no anti-bunching mass)"));
                if (cfg.normalized_maps) {
                    CorrelationMap gn = gt;
                    normalize_by_singles(gn, a);
                    emit_matrix("g2_thermal_normalized.csv", gn.values.data(), gn.n(),
                                gn.n(), io::format_double(geom.length));
                }
            }
            if (want_mc) {
                McLobeStats stats;
                const CorrelationMap gmc =
                    thermal_correlation_mc(a, order, cfg.seed, cfg.samples, bins, stats);
                emit_matrix("g2_thermal_mc.csv", gmc.values.data(), gmc.n(), gmc.n(),
                            io::format_double(geom.length));
                const auto mcratio = bunching_ratio(gmc, bins);
                report.add("metrics.thermal_bunching_ratio_mc",
                           mcratio ? io::format_double(*mcratio)
                                   : std::string("undefined (no anti-bunching mass)"));
                if (want_exact) {
                    const BinMasses me = integrate_bins(gt, bins);
                    double worst = 0;
                    for (std::size_t k = 0; k < me.m.size(); ++k) {
                        const double se = stats.standard_error(static_cast<int>(k));
                        if (se > 0)
                            worst = std::max(worst, std::fabs(stats.mean[k] - me.m[k]) / se);
                    }
                    report.add("metrics.mc_exact_max_sigma", worst);
                }
            }
        } else {
            const ReducedMap3 rq = reduce_difference_coords(gq);
            std::vector<bool> present(rq.value.size());
            for (std::size_t i = 0; i < rq.count.size(); ++i) present[i] = rq.count[i] > 0;
            emit_matrix("g3_quantum_reduced.csv", rq.value.data(), rq.size(), rq.size(),
                        io::format_double(geom.length) + "; axes d12, d23", &present);
            const double lobe_spacing = geom.width / beams;
            const CoincidenceClassMasses cq = mass_by_coincidence_class(rq, lobe_spacing);
            report.add("metrics.quantum_mass_three_bunch", cq.three_bunch / cq.total());
            report.add("metrics.quantum_mass_two_bunch", cq.two_bunch / cq.total());
            report.add("metrics.quantum_mass_anti_bunch", cq.anti_bunch / cq.total());
            if (cfg.write_slices)
                for (int b = 0; b < bins.count(); ++b) {
                    const int k = bins.peaks[static_cast<std::size_t>(b)];
                    std::vector<double> slice(static_cast<std::size_t>(gq.n()) * gq.n());
                    for (int i = 0; i < gq.n(); ++i)
                        for (int j = 0; j < gq.n(); ++j)
                            slice[static_cast<std::size_t>(i) * gq.n() + j] = gq.at(i, j, k);
                    emit_matrix("g3_quantum_slice" + std::to_string(b) + ".csv", slice.data(),
                                gq.n(), gq.n(),
                                io::format_double(geom.length) +
                                    "; x3 = " + io::format_double(corr_grid.position(k)));
                }

            if (want_exact) {
                gt = thermal_correlation_exact(a, order);
                const ReducedMap3 rt = reduce_difference_coords(gt);
                emit_matrix("g3_thermal_reduced.csv", rt.value.data(), rt.size(), rt.size(),
                            io::format_double(geom.length) + "; axes d12, d23", &present);
                const CoincidenceClassMasses ct = mass_by_coincidence_class(rt, lobe_spacing);
                report.add("metrics.thermal_mass_three_bunch", ct.three_bunch / ct.total());
                report.add("metrics.thermal_mass_two_bunch", ct.two_bunch / ct.total());
                report.add("metrics.thermal_mass_anti_bunch", ct.anti_bunch / ct.total());
            }
            if (want_mc) {
                McLobeStats stats;
                const CorrelationMap gmc =
                    thermal_correlation_mc(a, order, cfg.seed, cfg.samples, bins, stats);
                const ReducedMap3 rmc = reduce_difference_coords(gmc);
                emit_matrix("g3_thermal_mc_reduced.csv", rmc.value.data(), rmc.size(),
                            rmc.size(), io::format_double(geom.length) + "; axes d12, d23",
                            &present);
                if (want_exact) {
                    const BinMasses me = integrate_bins(gt, bins);
                    double worst = 0;
                    for (std::size_t k = 0; k < me.m.size(); ++k) {
                        const double se = stats.standard_error(static_cast<int>(k));
                        if (se > 0)
                            worst = std::max(worst, std::fabs(stats.mean[k] - me.m[k]) / se);
                    }
                    report.add("metrics.mc_exact_max_sigma", worst);
                }
            }
        }

        if (beams == 3) {
            const ThreePhotonProfile prof = three_photon_profile(fock);
            report.add("metrics.p_three_bunch", prof.p_three_bunch);
            report.add("metrics.p_two_bunch", prof.p_two_bunch);
            report.add("metrics.p_anti_bunch", prof.p_anti_bunch);
            // the numeric state itself, so gauge differences against the
            // reference amplitudes stay visible
            for (std::size_t s = 0; s < fock.occupations.size(); ++s) {
                const std::string base =
                    "metrics.fock_amp" + occupation_label(fock.occupations[s]);
                report.add(base + "_re", fock.amplitudes[s].real());
                report.add(base + "_im", fock.amplitudes[s].imag());
            }
            report.add("metrics.fidelity_equal3_reference",
                       std::norm(state_overlap(fock, equal3_reference_state())));
            report.add("metrics.fidelity_unequal3_reference",
                       std::norm(state_overlap(fock, unequal3_reference_state())));
        }

        if (beams == 2) {
            const TwoPhotonDensity rho =
                apply_splitter_to_density(t, thermal_two_photon_input());
            report.add("metrics.density_diag_20", rho.at(0, 0).real());
            report.add("metrics.density_diag_11", rho.at(1, 1).real());
            report.add("metrics.density_diag_02", rho.at(2, 2).real());
            report.add("metrics.density_offdiag_abs_20_02", std::abs(rho.at(0, 2)));
            report.add("metrics.density_trace", rho.trace_real());
            report.add("metrics.density_min_eigenvalue", rho.min_eigenvalue());
            const double p11 = rho.at(1, 1).real();
            report.add("metrics.thermal_ratio_density",
                       p11 > 0 ? io::format_double(
                                     (rho.at(0, 0).real() + rho.at(2, 2).real()) / p11)
                               : std::string("undefined (no |11> weight)"));
        }

        // order-2 snapshot maps along z
        if (!cfg.snapshots.empty()) {
            if (beams != 2)
                throw_config("outputs.snapshots requires a two-beam scenario");
            const PropagatedInput prop(input, geom, corr_grid);
            for (std::size_t k = 0; k < cfg.snapshots.size(); ++k) {
                const double z = cfg.snapshots[k];
                const CorrelationMap g = quantum_correlation(prop.at(z), 2);
                emit_matrix("g2_quantum_z" + std::to_string(k) + ".csv", g.values.data(),
                            g.n(), g.n(), io::format_double(z));
            }
        }
    }

    if (cfg.carpet) {
        const double zmax = cfg.carpet_zmax > 0 ? cfg.carpet_zmax : 2.0 * rd.talbot;
        const int rows = std::max(2, cfg.carpet_rows);
        const PropagatedInput prop(input, geom, main_grid);
        std::vector<double> carpet(static_cast<std::size_t>(rows) * main_grid.sample_count);
        for (int r = 0; r < rows; ++r) {
            const double z = zmax * r / (rows - 1);
            const std::vector<double> row = intensity(prop.at(z), IntensityMode::Incoherent);
            std::copy(row.begin(), row.end(),
                      carpet.begin() + static_cast<std::size_t>(r) * main_grid.sample_count);
        }
        emit_matrix("carpet.csv", carpet.data(), rows, main_grid.sample_count,
                    "0 .. " + io::format_double(zmax) + " in " + std::to_string(rows) +
                        " rows");
        if (cfg.write_pgm) {
            const fs::path p = dir / "carpet.pgm";
            io::write_pgm(p, carpet.data(), rows, main_grid.sample_count);
            written.push_back(p);
        }
        report.add("metrics.carpet_zmax", zmax);
    }

    if (cfg.scan_enabled) {
        const double zmax = cfg.scan_zmax > 0 ? cfg.scan_zmax : rd.z0;
        ScanOptions opt;
        opt.metric = input.state_kind == StateKind::Thermal ? ScanMetric::ThermalExact
                                                            : ScanMetric::Quantum;
        const RecurrenceScan scan =
            scan_recurrence(input, geom, zmax, cfg.scan_steps, opt);
        std::vector<double> table(scan.z.size() * 3);
        for (std::size_t i = 0; i < scan.z.size(); ++i) {
            table[3 * i] = scan.z[i];
            table[3 * i + 1] = scan.intensity_dist[i];
            table[3 * i + 2] = scan.correlation_dist[i];
        }
        emit_matrix("scan.csv", table.data(), static_cast<int>(scan.z.size()), 3,
                    "0 .. " + io::format_double(zmax) +
                        "; columns z, intensity_l1, correlation_l1");
        report.add("metrics.intensity_period", scan.intensity_period);
        report.add("metrics.correlation_period", scan.correlation_period);
        report.add("metrics.period_ratio", scan.period_ratio());
        report.add("metrics.intensity_period_over_z_talbot",
                   scan.intensity_period / rd.talbot);
        report.add("metrics.correlation_period_over_z_talbot",
                   scan.correlation_period / rd.talbot);
    }

    std::sort(written.begin(), written.end());
    for (const fs::path& p : written) {
        const std::string name = p.filename().string();
        report.add("files." + name + ".bytes",
                   static_cast<long>(fs::file_size(p)));
        std::ostringstream hex;
        hex << std::hex << io::fnv1a64_file(p);
        report.add("files." + name + ".fnv64", hex.str());
    }

    const fs::path report_path = dir / "report.txt";
    std::ofstream out(report_path, std::ios::binary);
    if (!out) throw_io("cannot open '" + report_path.string() + "' for writing");
    out << report.to_text();
    if (!out) throw_io("write failed for '" + report_path.string() + "'");
    return report;
}

} // namespace mmw
