#include <doctest.h>

#include <complex>
#include <random>
#include <vector>

#include "mmw/kernels.hpp"

using namespace mmw;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    std::vector<double> v(n);
    for (double& x : v) x = d(rng);
    return v;
}

template <class Fn>
void for_both(Fn&& fn) {
    fn(kern::scalar_ops());
    if (kern::avx2_available()) fn(*kern::avx2_ops());
}

constexpr double kTol = 1e-12;

} // namespace

TEST_CASE("kernel backends agree on every operation") {
    std::mt19937_64 rng(7);
    if (!kern::avx2_available()) {
        MESSAGE("avx2 unavailable; scalar-only run");
        return;
    }
    const kern::Ops& s = kern::scalar_ops();
    const kern::Ops& a = *kern::avx2_ops();

    for (std::size_t n : {std::size_t(1), std::size_t(3), std::size_t(4), std::size_t(7),
                          std::size_t(64), std::size_t(257), std::size_t(1024)}) {
        const auto x = random_vec(rng, n);
        const auto yr = random_vec(rng, n);
        const auto yi = random_vec(rng, n);

        {
            auto u = yr, v = yr;
            s.axpy(1.7, x.data(), u.data(), n);
            a.axpy(1.7, x.data(), v.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(u[i] == doctest::Approx(v[i]).epsilon(kTol));
        }
        {
            auto ur = yr, ui = yi, vr = yr, vi = yi;
            s.axpy_real_cplx(0.3, -1.2, x.data(), ur.data(), ui.data(), n);
            a.axpy_real_cplx(0.3, -1.2, x.data(), vr.data(), vi.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(ur[i] == doctest::Approx(vr[i]).epsilon(kTol));
                CHECK(ui[i] == doctest::Approx(vi[i]).epsilon(kTol));
            }
        }
        {
            double sr, si, ar, ai;
            s.dot_real_cplx(x.data(), yr.data(), yi.data(), n, &sr, &si);
            a.dot_real_cplx(x.data(), yr.data(), yi.data(), n, &ar, &ai);
            CHECK(sr == doctest::Approx(ar).epsilon(kTol));
            CHECK(si == doctest::Approx(ai).epsilon(kTol));
        }
        {
            auto ur = yr, ui = yi, vr = yr, vi = yi;
            const auto xr = random_vec(rng, n), xi = random_vec(rng, n);
            s.caxpy(0.9, 0.4, xr.data(), xi.data(), ur.data(), ui.data(), n);
            a.caxpy(0.9, 0.4, xr.data(), xi.data(), vr.data(), vi.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(ur[i] == doctest::Approx(vr[i]).epsilon(kTol));
                CHECK(ui[i] == doctest::Approx(vi[i]).epsilon(kTol));
            }
        }
        {
            const auto xr = random_vec(rng, n), xi = random_vec(rng, n);
            std::vector<double> ur(n), ui(n), vr(n), vi(n);
            s.cmul_conj(xr.data(), xi.data(), yr.data(), yi.data(), ur.data(), ui.data(), n);
            a.cmul_conj(xr.data(), xi.data(), yr.data(), yi.data(), vr.data(), vi.data(), n);
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(ur[i] == doctest::Approx(vr[i]).epsilon(kTol));
                CHECK(ui[i] == doctest::Approx(vi[i]).epsilon(kTol));
            }
        }
        {
            std::vector<double> u(n), v(n);
            s.sqmag(yr.data(), yi.data(), u.data(), n);
            a.sqmag(yr.data(), yi.data(), v.data(), n);
            for (std::size_t i = 0; i < n; ++i) CHECK(u[i] == doctest::Approx(v[i]).epsilon(kTol));
        }
        {
            std::vector<double> u(n * n), v(n * n);
            s.outer2_set(x.data(), u.data(), n);
            a.outer2_set(x.data(), v.data(), n);
            for (std::size_t i = 0; i < n * n; ++i) CHECK(u[i] == v[i]);
            s.outer2_acc(x.data(), 0.25, u.data(), n);
            a.outer2_acc(x.data(), 0.25, v.data(), n);
            for (std::size_t i = 0; i < n * n; ++i)
                CHECK(u[i] == doctest::Approx(v[i]).epsilon(kTol));
        }
        CHECK(s.sum(x.data(), n) == doctest::Approx(a.sum(x.data(), n)).epsilon(kTol));
        CHECK(s.dot(x.data(), yr.data(), n) ==
              doctest::Approx(a.dot(x.data(), yr.data(), n)).epsilon(kTol));
        CHECK(s.l1_dist(x.data(), yr.data(), n) ==
              doctest::Approx(a.l1_dist(x.data(), yr.data(), n)).epsilon(kTol));
        CHECK(s.l2_dist_sq(x.data(), yr.data(), n) ==
              doctest::Approx(a.l2_dist_sq(x.data(), yr.data(), n)).epsilon(kTol));
        CHECK(s.max_abs(x.data(), n) == a.max_abs(x.data(), n));
    }
}

TEST_CASE("kernel semantics against direct formulas") {
    std::mt19937_64 rng(11);
    const std::size_t n = 37;
    const auto x = random_vec(rng, n);
    const auto y = random_vec(rng, n);

    for_both([&](const kern::Ops& k) {
        CAPTURE(k.name);
        double s = 0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        CHECK(k.sum(x.data(), n) == doctest::Approx(s).epsilon(1e-14));

        double d = 0;
        for (std::size_t i = 0; i < n; ++i) d += x[i] * y[i];
        CHECK(k.dot(x.data(), y.data(), n) == doctest::Approx(d).epsilon(1e-14));

        std::vector<double> acc(n, 0.0);
        k.axpy(2.5, x.data(), acc.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(acc[i] == doctest::Approx(2.5 * x[i]).epsilon(1e-15));

        std::vector<double> zr(n, 0.0), zi(n, 0.0);
        k.caxpy(0.6, -0.8, x.data(), y.data(), zr.data(), zi.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::complex<double> got(zr[i], zi[i]);
            const std::complex<double> want =
                std::complex<double>(0.6, -0.8) * std::complex<double>(x[i], y[i]);
            CHECK(std::abs(got - want) < 1e-14);
        }

        std::vector<double> p(n * n);
        k.outer2_set(x.data(), p.data(), n);
        CHECK(p[5 * n + 9] == x[5] * x[9]);
    });
}

TEST_CASE("backend selection honors requests") {
    CHECK(kern::set_backend(kern::Backend::Scalar));
    CHECK(kern::active_backend() == kern::Backend::Scalar);
    if (kern::avx2_available()) {
        CHECK(kern::set_backend(kern::Backend::Avx2));
        CHECK(kern::active_backend() == kern::Backend::Avx2);
    } else {
        CHECK_FALSE(kern::set_backend(kern::Backend::Avx2));
        CHECK(kern::active_backend() == kern::Backend::Scalar);
    }
    CHECK(kern::set_backend(kern::Backend::Auto));
}
