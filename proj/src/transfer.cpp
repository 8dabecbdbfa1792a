#include "mmw/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmw/error.hpp"
#include "mmw/permanent.hpp"

namespace mmw {

namespace {

double unitarity_residual_of(const std::vector<cplx>& t, int n) {
    double sum = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx e = 0;
            for (int k = 0; k < n; ++k)
                e += std::conj(t[static_cast<std::size_t>(k) * n + i]) *
                     t[static_cast<std::size_t>(k) * n + j];
            if (i == j) e -= 1.0;
            sum += std::norm(e);
        }
    return std::sqrt(sum);
}

std::vector<cplx> invert_small(std::vector<cplx> m, int n) {
    // Gauss-Jordan with partial pivoting; n <= 3 here.
    std::vector<cplx> inv(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + i] = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m[static_cast<std::size_t>(r) * n + col]) >
                std::abs(m[static_cast<std::size_t>(piv) * n + col]))
                piv = r;
        if (std::abs(m[static_cast<std::size_t>(piv) * n + col]) < 1e-300)
            throw_physics("singular matrix in unitary projection");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(m[static_cast<std::size_t>(piv) * n + c],
                          m[static_cast<std::size_t>(col) * n + c]);
                std::swap(inv[static_cast<std::size_t>(piv) * n + c],
                          inv[static_cast<std::size_t>(col) * n + c]);
            }
        const cplx d = m[static_cast<std::size_t>(col) * n + col];
        for (int c = 0; c < n; ++c) {
            m[static_cast<std::size_t>(col) * n + c] /= d;
            inv[static_cast<std::size_t>(col) * n + c] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const cplx f = m[static_cast<std::size_t>(r) * n + col];
            if (f == cplx(0.0, 0.0)) continue;
            for (int c = 0; c < n; ++c) {
                m[static_cast<std::size_t>(r) * n + c] -=
                    f * m[static_cast<std::size_t>(col) * n + c];
                inv[static_cast<std::size_t>(r) * n + c] -=
                    f * inv[static_cast<std::size_t>(col) * n + c];
            }
        }
    }
    return inv;
}

std::vector<cplx> conj_transpose(const std::vector<cplx>& m, int n) {
    std::vector<cplx> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[static_cast<std::size_t>(i) * n + j] =
                std::conj(m[static_cast<std::size_t>(j) * n + i]);
    return out;
}

long factorial(int k) {
    long f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

// Occupation vectors of `photons` photons over `modes` modes, descending
// lexicographic order ({|20>, |11>, |02>} for 2 over 2).
std::vector<std::vector<int>> occupation_basis(int modes, int photons) {
    std::vector<std::vector<int>> out;
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    auto rec = [&](auto&& self, int mode, int left) -> void {
        if (mode == modes - 1) {
            occ[static_cast<std::size_t>(mode)] = left;
            out.push_back(occ);
            return;
        }
        for (int k = left; k >= 0; --k) {
            occ[static_cast<std::size_t>(mode)] = k;
            self(self, mode + 1, left - k);
        }
    };
    rec(rec, 0, photons);
    return out;
}

// Bosonic transition amplitude between occupations through matrix u:
// perm(u with row r repeated out[r] times, column c repeated in[c] times)
// / sqrt(prod out! prod in!).
cplx transition_amplitude(const std::vector<cplx>& u, int n,
                          const std::vector<int>& occ_out, const std::vector<int>& occ_in) {
    std::vector<int> rows, cols;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < occ_out[static_cast<std::size_t>(r)]; ++c) rows.push_back(r);
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < occ_in[static_cast<std::size_t>(c)]; ++r) cols.push_back(c);
    const int p = static_cast<int>(rows.size());
    std::vector<cplx> sub(static_cast<std::size_t>(p) * p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            sub[static_cast<std::size_t>(i) * p + j] =
                u[static_cast<std::size_t>(rows[static_cast<std::size_t>(i)]) * n +
                  cols[static_cast<std::size_t>(j)]];
    double denom = 1;
    for (int r = 0; r < n; ++r) denom *= static_cast<double>(factorial(occ_out[static_cast<std::size_t>(r)]));
    for (int c = 0; c < n; ++c) denom *= static_cast<double>(factorial(occ_in[static_cast<std::size_t>(c)]));
    return permanent(sub.data(), p) / std::sqrt(denom);
}

} // namespace

std::vector<cplx> nearest_unitary(const std::vector<cplx>& m, int n) {
    std::vector<cplx> x = m;
    for (int it = 0; it < 40; ++it) {
        if (unitarity_residual_of(x, n) < 1e-14) break;
        const std::vector<cplx> inv_ct = invert_small(conj_transpose(x, n), n);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] = 0.5 * (x[i] + inv_ct[i]);
    }
    return x;
}

TransferMatrix extract_transfer_matrix(const AmplitudeMatrix& a, const LobeBinning& bins) {
    const int nb = bins.count();
    if (nb != a.beam_count)
        throw_physics("transfer matrix: " + std::to_string(bins.count()) +
                      " lobes vs " + std::to_string(a.beam_count) + " beams");
    const double dx = a.grid.spacing();

    TransferMatrix t;
    t.n = nb;
    t.t.assign(static_cast<std::size_t>(nb) * nb, 0.0);

    for (int m = 0; m < nb; ++m) {
        const auto [lo, hi] = bins.bin_range(m);

        // donor beam: largest power inside this bin
        int donor = 0;
        double best = -1;
        for (int n = 0; n < a.beam_count; ++n) {
            double p = 0;
            for (int i = lo; i < hi; ++i) p += std::norm(a.at(n, i));
            if (p > best) {
                best = p;
                donor = n;
            }
        }

        // reference lobe mode: donor profile on the bin, unit norm,
        // real-positive at the bin center
        std::vector<cplx> u(static_cast<std::size_t>(hi - lo));
        double nrm = 0;
        for (int i = lo; i < hi; ++i) {
            u[static_cast<std::size_t>(i - lo)] = a.at(donor, i);
            nrm += std::norm(a.at(donor, i));
        }
        nrm = std::sqrt(nrm * dx);
        if (!(nrm > 0)) throw_physics("transfer matrix: empty lobe bin");
        int center = std::clamp(static_cast<int>(std::lround(bins.bin_center(m) / dx - 0.5)),
                                lo, hi - 1);
        cplx ref = u[static_cast<std::size_t>(center - lo)];
        if (std::abs(ref) < 1e-12 * nrm) {
            // degenerate center sample; fall back to the lobe peak
            center = bins.peaks[static_cast<std::size_t>(m)];
            ref = u[static_cast<std::size_t>(std::clamp(center, lo, hi - 1) - lo)];
        }
        const cplx phase = std::abs(ref) > 0 ? ref / std::abs(ref) : cplx(1.0, 0.0);
        const cplx scale = std::conj(phase) / nrm;
        for (cplx& v : u) v *= scale;

        for (int n = 0; n < a.beam_count; ++n) {
            cplx acc = 0;
            for (int i = lo; i < hi; ++i)
                acc += std::conj(u[static_cast<std::size_t>(i - lo)]) * a.at(n, i);
            t.t[static_cast<std::size_t>(m) * nb + n] = acc * dx;
        }
    }
    t.unitarity_residual = unitarity_residual_of(t.t, nb);
    return t;
}

TransferMatrix extract_transfer_matrix(const InputConfig& config,
                                       const WaveguideGeometry& geom, double z,
                                       const TransverseGrid& grid) {
    const AmplitudeMatrix a = amplitude_matrix(config, geom, z, grid);
    const std::vector<double> inten = intensity(a, IntensityMode::Incoherent);
    const LobeBinning bins = lobe_bins(inten, grid, config.beam_count());
    return extract_transfer_matrix(a, bins);
}

int FockOutputState::find(const std::vector<int>& occ) const {
    for (std::size_t i = 0; i < occupations.size(); ++i)
        if (occupations[i] == occ) return static_cast<int>(i);
    return -1;
}

FockOutputState fock_output_state(const TransferMatrix& t) {
    const int n = t.n;
    FockOutputState s;
    s.modes = n;
    s.photons = n;
    s.occupations = occupation_basis(n, n);
    s.amplitudes.resize(s.occupations.size());
    const std::vector<int> occ_in(static_cast<std::size_t>(n), 1);  // one photon per beam
    double total = 0;
    for (std::size_t i = 0; i < s.occupations.size(); ++i) {
        s.amplitudes[i] = transition_amplitude(t.t, n, s.occupations[i], occ_in);
        total += std::norm(s.amplitudes[i]);
    }
    // explicit normalization absorbs residual non-unitarity of T
    const double scale = 1.0 / std::sqrt(total);
    for (cplx& a : s.amplitudes) a *= scale;
    return s;
}

ThreePhotonProfile three_photon_profile(const FockOutputState& s) {
    if (s.modes != 3 || s.photons != 3)
        throw_physics("three_photon_profile: three photons over three lobes required");
    ThreePhotonProfile p;
    for (std::size_t i = 0; i < s.occupations.size(); ++i) {
        const int top = *std::max_element(s.occupations[i].begin(), s.occupations[i].end());
        const double prob = s.probability(static_cast<int>(i));
        if (top == 3) p.p_three_bunch += prob;
        else if (top == 2) p.p_two_bunch += prob;
        else p.p_anti_bunch += prob;
    }
    return p;
}

TwoPhotonDensity apply_splitter_to_density(const TransferMatrix& t,
                                           const TwoPhotonDensity& rho_in,
                                           double eps_u) {
    if (t.n != 2) throw_physics("apply_splitter_to_density: 2x2 splitter required");
    if (!t.unitary_within(eps_u))
        throw_physics("apply_splitter_to_density: unitarity residual " +
                      std::to_string(t.unitarity_residual) + " exceeds " +
                      std::to_string(eps_u));
    const std::vector<cplx> u = nearest_unitary(t.t, 2);

    const auto basis = occupation_basis(2, 2);  // {|20>, |11>, |02>}
    std::array<cplx, 9> u2{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            u2[static_cast<std::size_t>(3 * i + j)] = transition_amplitude(
                u, 2, basis[static_cast<std::size_t>(i)], basis[static_cast<std::size_t>(j)]);

    TwoPhotonDensity out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            cplx v = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    v += u2[static_cast<std::size_t>(3 * i + k)] * rho_in.at(k, l) *
                         std::conj(u2[static_cast<std::size_t>(3 * j + l)]);
            out.set(i, j, v);
        }
    // symmetrize away rounding asymmetry
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            const cplx h = 0.5 * (out.at(i, j) + std::conj(out.at(j, i)));
            out.set(i, j, h);
            out.set(j, i, std::conj(h));
        }
    return out;
}

} // namespace mmw
