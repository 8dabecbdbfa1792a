#include "mmw/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>
#include <cmath>

namespace mmw::kern {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void a_axpy(double s, const double* v, double* y, std::size_t n) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(vs, _mm256_loadu_pd(v + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += s * v[i];
}

void a_axpy_real_cplx(double a_re, double a_im, const double* x,
                      double* y_re, double* y_im, std::size_t n) {
    const __m256d vr = _mm256_set1_pd(a_re);
    const __m256d vi = _mm256_set1_pd(a_im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y_re + i, _mm256_fmadd_pd(vr, xv, _mm256_loadu_pd(y_re + i)));
        _mm256_storeu_pd(y_im + i, _mm256_fmadd_pd(vi, xv, _mm256_loadu_pd(y_im + i)));
    }
    for (; i < n; ++i) {
        y_re[i] += a_re * x[i];
        y_im[i] += a_im * x[i];
    }
}

void a_dot_real_cplx(const double* x, const double* y_re, const double* y_im,
                     std::size_t n, double* out_re, double* out_im) {
    __m256d sr = _mm256_setzero_pd();
    __m256d si = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        sr = _mm256_fmadd_pd(xv, _mm256_loadu_pd(y_re + i), sr);
        si = _mm256_fmadd_pd(xv, _mm256_loadu_pd(y_im + i), si);
    }
    double tr = hsum(sr), ti = hsum(si);
    for (; i < n; ++i) {
        tr += x[i] * y_re[i];
        ti += x[i] * y_im[i];
    }
    *out_re = tr;
    *out_im = ti;
}

void a_caxpy(double c_re, double c_im, const double* x_re, const double* x_im,
             double* y_re, double* y_im, std::size_t n) {
    const __m256d vr = _mm256_set1_pd(c_re);
    const __m256d vi = _mm256_set1_pd(c_im);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xr = _mm256_loadu_pd(x_re + i);
        const __m256d xi = _mm256_loadu_pd(x_im + i);
        __m256d yr = _mm256_loadu_pd(y_re + i);
        __m256d yi = _mm256_loadu_pd(y_im + i);
        yr = _mm256_fmadd_pd(vr, xr, yr);
        yr = _mm256_fnmadd_pd(vi, xi, yr);
        yi = _mm256_fmadd_pd(vr, xi, yi);
        yi = _mm256_fmadd_pd(vi, xr, yi);
        _mm256_storeu_pd(y_re + i, yr);
        _mm256_storeu_pd(y_im + i, yi);
    }
    for (; i < n; ++i) {
        y_re[i] += c_re * x_re[i] - c_im * x_im[i];
        y_im[i] += c_re * x_im[i] + c_im * x_re[i];
    }
}

void a_cmul_conj(const double* x_re, const double* x_im,
                 const double* y_re, const double* y_im,
                 double* z_re, double* z_im, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xr = _mm256_loadu_pd(x_re + i);
        const __m256d xi = _mm256_loadu_pd(x_im + i);
        const __m256d yr = _mm256_loadu_pd(y_re + i);
        const __m256d yi = _mm256_loadu_pd(y_im + i);
        _mm256_storeu_pd(z_re + i, _mm256_fmadd_pd(xr, yr, _mm256_mul_pd(xi, yi)));
        _mm256_storeu_pd(z_im + i, _mm256_fmsub_pd(xi, yr, _mm256_mul_pd(xr, yi)));
    }
    for (; i < n; ++i) {
        z_re[i] = x_re[i] * y_re[i] + x_im[i] * y_im[i];
        z_im[i] = x_im[i] * y_re[i] - x_re[i] * y_im[i];
    }
}

void a_sqmag(const double* re, const double* im, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d r = _mm256_loadu_pd(re + i);
        const __m256d m = _mm256_loadu_pd(im + i);
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
    }
    for (; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void a_outer2_set(const double* v, double* P, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d vi = _mm256_set1_pd(v[i]);
        double* row = P + i * n;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4)
            _mm256_storeu_pd(row + j, _mm256_mul_pd(vi, _mm256_loadu_pd(v + j)));
        for (; j < n; ++j) row[j] = v[i] * v[j];
    }
}

void a_outer2_acc(const double* v, double w, double* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const __m256d wv = _mm256_set1_pd(w * v[i]);
        double* row = acc + i * n;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            __m256d r = _mm256_loadu_pd(row + j);
            r = _mm256_fmadd_pd(wv, _mm256_loadu_pd(v + j), r);
            _mm256_storeu_pd(row + j, r);
        }
        const double wvs = w * v[i];
        for (; j < n; ++j) row[j] += wvs * v[j];
    }
}

double a_sum(const double* v, std::size_t n) {
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) s = _mm256_add_pd(s, _mm256_loadu_pd(v + i));
    double t = hsum(s);
    for (; i < n; ++i) t += v[i];
    return t;
}

double a_dot(const double* a, const double* b, std::size_t n) {
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        s = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s);
    double t = hsum(s);
    for (; i < n; ++i) t += a[i] * b[i];
    return t;
}

double a_l1_dist(const double* a, const double* b, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        s = _mm256_add_pd(s, _mm256_andnot_pd(signmask, d));
    }
    double t = hsum(s);
    for (; i < n; ++i) t += std::fabs(a[i] - b[i]);
    return t;
}

double a_l2_dist_sq(const double* a, const double* b, std::size_t n) {
    __m256d s = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        s = _mm256_fmadd_pd(d, d, s);
    }
    double t = hsum(s);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        t += d * d;
    }
    return t;
}

double a_max_abs(const double* v, std::size_t n) {
    const __m256d signmask = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, _mm256_andnot_pd(signmask, _mm256_loadu_pd(v + i)));
    __m128d lo = _mm_max_pd(_mm256_castpd256_pd128(m), _mm256_extractf128_pd(m, 1));
    double t = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) t = std::max(t, std::fabs(v[i]));
    return t;
}

} // namespace

const Ops* avx2_ops() {
    static const Ops table = {
        "avx2",
        a_axpy,
        a_axpy_real_cplx,
        a_dot_real_cplx,
        a_caxpy,
        a_cmul_conj,
        a_sqmag,
        a_outer2_set,
        a_outer2_acc,
        a_sum,
        a_dot,
        a_l1_dist,
        a_l2_dist_sq,
        a_max_abs,
    };
    return &table;
}

} // namespace mmw::kern

#else

namespace mmw::kern {
const Ops* avx2_ops() { return nullptr; }
} // namespace mmw::kern

#endif
