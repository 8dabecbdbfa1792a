#include "mmw/correlation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "mmw/error.hpp"
#include "mmw/kernels.hpp"
#include "mmw/phases.hpp"

namespace mmw {

namespace {

constexpr long kMcBlock = 1024;

std::size_t map_size(int order, int n) {
    std::size_t s = 1;
    for (int k = 0; k < order; ++k) s *= static_cast<std::size_t>(n);
    return s;
}

void require_order(const AmplitudeMatrix& a, int order) {
    if (order != 2 && order != 3)
        throw_physics("correlation order must be 2 or 3, got " + std::to_string(order));
    if (order != a.beam_count)
        throw_physics("correlation order " + std::to_string(order) +
                      " != beam count " + std::to_string(a.beam_count));
}

CorrelationMap make_map(const AmplitudeMatrix& a, int order) {
    CorrelationMap g;
    g.order = order;
    g.grid = a.grid;
    g.z = a.z;
    g.values.assign(map_size(order, a.grid.sample_count), 0.0);
    return g;
}

// All beam-index tuples of the given length, grouped by multiset.
std::vector<std::vector<std::array<int, 3>>> multiset_groups(int beams, int order) {
    std::map<std::array<int, 3>, std::vector<std::array<int, 3>>> groups;
    std::array<int, 3> t{0, 0, 0};
    int total = 1;
    for (int k = 0; k < order; ++k) total *= beams;
    for (int flat = 0; flat < total; ++flat) {
        int rest = flat;
        for (int j = 0; j < order; ++j) {
            t[static_cast<std::size_t>(j)] = rest % beams;
            rest /= beams;
        }
        std::array<int, 3> key = t;
        std::sort(key.begin(), key.begin() + order);
        groups[key].push_back(t);
    }
    std::vector<std::vector<std::array<int, 3>>> out;
    out.reserve(groups.size());
    for (auto& [key, tuples] : groups) out.push_back(std::move(tuples));
    return out;
}

// Coherent single-realization intensity into preallocated buffers.
void coherent_into(const AmplitudeMatrix& a, const double* phases,
                   std::vector<double>& fre, std::vector<double>& fim,
                   std::vector<double>& out) {
    const std::size_t g = static_cast<std::size_t>(a.grid.sample_count);
    std::fill(fre.begin(), fre.end(), 0.0);
    std::fill(fim.begin(), fim.end(), 0.0);
    for (int n = 0; n < a.beam_count; ++n)
        kern::ops().caxpy(std::cos(phases[n]), std::sin(phases[n]),
                          a.row_re(n), a.row_im(n), fre.data(), fim.data(), g);
    kern::ops().sqmag(fre.data(), fim.data(), out.data(), g);
}

} // namespace

double CorrelationMap::cell_volume() const {
    double v = 1;
    for (int k = 0; k < order; ++k) v *= grid.spacing();
    return v;
}

double CorrelationMap::total_mass() const {
    return kern::ops().sum(values.data(), values.size()) * cell_volume();
}

void CorrelationMap::enforce_exchange_symmetry() {
    const int g = n();
    if (order == 2) {
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j)
                values[static_cast<std::size_t>(j) * g + i] =
                    values[static_cast<std::size_t>(i) * g + j];
        return;
    }
    auto idx = [g](int i, int j, int k) {
        return (static_cast<std::size_t>(i) * g + j) * g + k;
    };
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j)
            for (int k = j; k < g; ++k) {
                const double v = values[idx(i, j, k)];
                values[idx(i, k, j)] = v;
                values[idx(j, i, k)] = v;
                values[idx(j, k, i)] = v;
                values[idx(k, i, j)] = v;
                values[idx(k, j, i)] = v;
            }
}

double CorrelationMap::max_exchange_asymmetry() const {
    const int g = n();
    double e = 0;
    if (order == 2) {
        for (int i = 0; i < g; ++i)
            for (int j = i + 1; j < g; ++j)
                e = std::max(e, std::fabs(at(i, j) - at(j, i)));
        return e;
    }
    for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j)
            for (int k = j; k < g; ++k) {
                const double v = at(i, j, k);
                e = std::max({e, std::fabs(at(i, k, j) - v), std::fabs(at(j, i, k) - v),
                              std::fabs(at(j, k, i) - v), std::fabs(at(k, i, j) - v),
                              std::fabs(at(k, j, i) - v)});
            }
    return e;
}

CorrelationMap quantum_correlation(const AmplitudeMatrix& a, int order) {
    require_order(a, order);
    const int g = a.grid.sample_count;
    CorrelationMap out = make_map(a, order);

    if (order == 2) {
        const double* r1 = a.row_re(0);
        const double* i1 = a.row_im(0);
        const double* r2 = a.row_re(1);
        const double* i2 = a.row_im(1);
        std::vector<double> tre(static_cast<std::size_t>(g)), tim(static_cast<std::size_t>(g));
        for (int i = 0; i < g; ++i) {
            const std::size_t len = static_cast<std::size_t>(g - i);
            std::fill_n(tre.begin(), len, 0.0);
            std::fill_n(tim.begin(), len, 0.0);
            // perm(x_i, x_j) = A1(i) A2(j) + A2(i) A1(j), j >= i
            kern::ops().caxpy(r1[i], i1[i], r2 + i, i2 + i, tre.data(), tim.data(), len);
            kern::ops().caxpy(r2[i], i2[i], r1 + i, i1 + i, tre.data(), tim.data(), len);
            kern::ops().sqmag(tre.data(), tim.data(),
                              out.values.data() + static_cast<std::size_t>(i) * g + i, len);
        }
    } else {
        const double* r[3] = {a.row_re(0), a.row_re(1), a.row_re(2)};
        const double* m[3] = {a.row_im(0), a.row_im(1), a.row_im(2)};
        auto at = [&](int b, int i) { return cplx(r[b][i], m[b][i]); };
        std::vector<double> tre(static_cast<std::size_t>(g)), tim(static_cast<std::size_t>(g));
        for (int i = 0; i < g; ++i)
            for (int j = i; j < g; ++j) {
                // perm = sum_b c_b A_b(k), c_b the 2x2 permanent of the other rows
                const cplx c0 = at(1, i) * at(2, j) + at(2, i) * at(1, j);
                const cplx c1 = at(0, i) * at(2, j) + at(2, i) * at(0, j);
                const cplx c2 = at(0, i) * at(1, j) + at(1, i) * at(0, j);
                const std::size_t len = static_cast<std::size_t>(g - j);
                std::fill_n(tre.begin(), len, 0.0);
                std::fill_n(tim.begin(), len, 0.0);
                kern::ops().caxpy(c0.real(), c0.imag(), r[0] + j, m[0] + j, tre.data(), tim.data(), len);
                kern::ops().caxpy(c1.real(), c1.imag(), r[1] + j, m[1] + j, tre.data(), tim.data(), len);
                kern::ops().caxpy(c2.real(), c2.imag(), r[2] + j, m[2] + j, tre.data(), tim.data(), len);
                kern::ops().sqmag(tre.data(), tim.data(),
                                  out.values.data() +
                                      (static_cast<std::size_t>(i) * g + j) * g + j,
                                  len);
            }
    }
    out.enforce_exchange_symmetry();
    return out;
}

CorrelationMap thermal_correlation_exact(const AmplitudeMatrix& a, int order) {
    if (order != 2 && order != 3)
        throw_physics("thermal correlation order must be 2 or 3");
    const int nb = a.beam_count;
    const std::size_t g = static_cast<std::size_t>(a.grid.sample_count);

    // B[n][m](x) = A_n(x) conj(A_m(x))
    std::vector<std::vector<double>> bre(static_cast<std::size_t>(nb * nb)),
        bim(static_cast<std::size_t>(nb * nb));
    for (int n = 0; n < nb; ++n)
        for (int m = 0; m < nb; ++m) {
            const std::size_t k = static_cast<std::size_t>(n * nb + m);
            bre[k].resize(g);
            bim[k].resize(g);
            kern::ops().cmul_conj(a.row_re(n), a.row_im(n), a.row_re(m), a.row_im(m),
                                  bre[k].data(), bim[k].data(), g);
        }
    auto b_re = [&](int n, int m) { return bre[static_cast<std::size_t>(n * nb + m)].data(); };
    auto b_im = [&](int n, int m) { return bim[static_cast<std::size_t>(n * nb + m)].data(); };

    const std::size_t cells = map_size(order, a.grid.sample_count);
    std::vector<double> acc_re(cells, 0.0), acc_im(cells, 0.0);

    const auto groups = multiset_groups(nb, order);
    if (order == 2) {
        for (const auto& tuples : groups)
            for (const auto& t1 : tuples)
                for (const auto& t2 : tuples) {
                    const double* wr = b_re(t1[1], t2[1]);
                    const double* wi = b_im(t1[1], t2[1]);
                    const double* cr = b_re(t1[0], t2[0]);
                    const double* ci = b_im(t1[0], t2[0]);
                    for (std::size_t i = 0; i < g; ++i)
                        kern::ops().caxpy(cr[i], ci[i], wr, wi,
                                          acc_re.data() + i * g, acc_im.data() + i * g, g);
                }
    } else {
        std::vector<double> w_re(g * g), w_im(g * g);
        for (const auto& tuples : groups)
            for (const auto& t1 : tuples)
                for (const auto& t2 : tuples) {
                    std::fill(w_re.begin(), w_re.end(), 0.0);
                    std::fill(w_im.begin(), w_im.end(), 0.0);
                    const double* vr = b_re(t1[1], t2[1]);
                    const double* vi = b_im(t1[1], t2[1]);
                    const double* ur = b_re(t1[2], t2[2]);
                    const double* ui = b_im(t1[2], t2[2]);
                    for (std::size_t j = 0; j < g; ++j)
                        kern::ops().caxpy(vr[j], vi[j], ur, ui,
                                          w_re.data() + j * g, w_im.data() + j * g, g);
                    const double* cr = b_re(t1[0], t2[0]);
                    const double* ci = b_im(t1[0], t2[0]);
                    for (std::size_t i = 0; i < g; ++i)
                        kern::ops().caxpy(cr[i], ci[i], w_re.data(), w_im.data(),
                                          acc_re.data() + i * g * g,
                                          acc_im.data() + i * g * g, g * g);
                }
    }

    CorrelationMap out = make_map(a, order);
    out.values = std::move(acc_re);
    out.enforce_exchange_symmetry();
    return out;
}

double McLobeStats::standard_error(int flat_index) const {
    if (samples < 2) return 0;
    const double var = m2[static_cast<std::size_t>(flat_index)] / (samples - 1);
    return std::sqrt(var / samples);
}

namespace {

CorrelationMap thermal_mc_core(const AmplitudeMatrix& a, int order, std::uint64_t seed,
                               long samples, const LobeBinning* bins, McLobeStats* stats) {
    if (order != 2 && order != 3)
        throw_physics("thermal correlation order must be 2 or 3");
    if (samples < 1) throw_physics("mc: need at least one sample");
    const std::size_t g = static_cast<std::size_t>(a.grid.sample_count);
    const std::size_t cells = map_size(order, a.grid.sample_count);

    std::vector<double> fre(g), fim(g), inten(g);
    std::vector<double> block(cells, 0.0), total(cells, 0.0);
    std::vector<double> outer(order == 3 ? g * g : 0);

    const int nbins = bins ? bins->count() : 0;
    std::vector<double> u(static_cast<std::size_t>(nbins));
    if (stats) {
        stats->order = order;
        stats->bins = nbins;
        stats->samples = samples;
        const std::size_t tuples = map_size(order, nbins);
        stats->mean.assign(tuples, 0.0);
        stats->m2.assign(tuples, 0.0);
    }

    for (long s = 0; s < samples; ++s) {
        const std::vector<double> phases =
            sample_phases(seed, static_cast<std::uint64_t>(s), a.beam_count);
        coherent_into(a, phases.data(), fre, fim, inten);

        if (order == 2) {
            kern::ops().outer2_acc(inten.data(), 1.0, block.data(), g);
        } else {
            kern::ops().outer2_set(inten.data(), outer.data(), g);
            for (std::size_t i = 0; i < g; ++i)
                kern::ops().axpy(inten[i], outer.data(), block.data() + i * g * g, g * g);
        }

        if (stats && nbins > 0) {
            const double dx = a.grid.spacing();
            for (int b = 0; b < nbins; ++b) {
                const auto [lo, hi] = bins->bin_range(b);
                u[static_cast<std::size_t>(b)] =
                    dx * kern::ops().sum(inten.data() + lo, static_cast<std::size_t>(hi - lo));
            }
            const std::size_t tuples = map_size(order, nbins);
            for (std::size_t t = 0; t < tuples; ++t) {
                std::size_t rest = t;
                double prod = 1.0;
                for (int j = 0; j < order; ++j) {
                    prod *= u[rest % static_cast<std::size_t>(nbins)];
                    rest /= static_cast<std::size_t>(nbins);
                }
                const double delta = prod - stats->mean[t];
                stats->mean[t] += delta / static_cast<double>(s + 1);
                stats->m2[t] += delta * (prod - stats->mean[t]);
            }
        }

        if ((s + 1) % kMcBlock == 0 || s + 1 == samples) {
            kern::ops().axpy(1.0, block.data(), total.data(), cells);
            std::fill(block.begin(), block.end(), 0.0);
        }
    }

    CorrelationMap out = make_map(a, order);
    const double inv = 1.0 / static_cast<double>(samples);
    for (std::size_t i = 0; i < cells; ++i) out.values[i] = total[i] * inv;
    out.enforce_exchange_symmetry();
    return out;
}

} // namespace

CorrelationMap thermal_correlation_mc(const AmplitudeMatrix& a, int order,
                                      std::uint64_t seed, long samples) {
    return thermal_mc_core(a, order, seed, samples, nullptr, nullptr);
}

CorrelationMap thermal_correlation_mc(const AmplitudeMatrix& a, int order,
                                      std::uint64_t seed, long samples,
                                      const LobeBinning& bins, McLobeStats& stats) {
    return thermal_mc_core(a, order, seed, samples, &bins, &stats);
}

void normalize_by_singles(CorrelationMap& g, const AmplitudeMatrix& a) {
    if (g.norm == MapNorm::SinglesNormalized)
        throw_physics("map is already singles-normalized");
    const std::vector<double> inten = intensity(a, IntensityMode::Incoherent);
    const int n = g.n();
    auto scale_at = [&](int i) { return inten[static_cast<std::size_t>(i)]; };
    if (g.order == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double d = scale_at(i) * scale_at(j);
                double& v = g.values[static_cast<std::size_t>(i) * n + j];
                v = d > 0 ? v / d : 0.0;
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double d = scale_at(i) * scale_at(j) * scale_at(k);
                    double& v = g.values[(static_cast<std::size_t>(i) * n + j) * n + k];
                    v = d > 0 ? v / d : 0.0;
                }
    }
    g.norm = MapNorm::SinglesNormalized;
}

} // namespace mmw
