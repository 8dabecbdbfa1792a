#include "mmw/kernels.hpp"

#include <cmath>

namespace mmw::kern {
namespace {

void s_axpy(double s, const double* v, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += s * v[i];
}

void s_axpy_real_cplx(double a_re, double a_im, const double* x,
                      double* y_re, double* y_im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y_re[i] += a_re * x[i];
        y_im[i] += a_im * x[i];
    }
}

void s_dot_real_cplx(const double* x, const double* y_re, const double* y_im,
                     std::size_t n, double* out_re, double* out_im) {
    double sr = 0.0, si = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sr += x[i] * y_re[i];
        si += x[i] * y_im[i];
    }
    *out_re = sr;
    *out_im = si;
}

void s_caxpy(double c_re, double c_im, const double* x_re, const double* x_im,
             double* y_re, double* y_im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y_re[i] += c_re * x_re[i] - c_im * x_im[i];
        y_im[i] += c_re * x_im[i] + c_im * x_re[i];
    }
}

void s_cmul_conj(const double* x_re, const double* x_im,
                 const double* y_re, const double* y_im,
                 double* z_re, double* z_im, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        z_re[i] = x_re[i] * y_re[i] + x_im[i] * y_im[i];
        z_im[i] = x_im[i] * y_re[i] - x_re[i] * y_im[i];
    }
}

void s_sqmag(const double* re, const double* im, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = re[i] * re[i] + im[i] * im[i];
}

void s_outer2_set(const double* v, double* P, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double vi = v[i];
        double* row = P + i * n;
        for (std::size_t j = 0; j < n; ++j) row[j] = vi * v[j];
    }
}

void s_outer2_acc(const double* v, double w, double* acc, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double wv = w * v[i];
        double* row = acc + i * n;
        for (std::size_t j = 0; j < n; ++j) row[j] += wv * v[j];
    }
}

double s_sum(const double* v, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
}

double s_dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double s_l1_dist(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
    return s;
}

double s_l2_dist_sq(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double s_max_abs(const double* v, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
    return m;
}

} // namespace

const Ops& scalar_ops() {
    static const Ops table = {
        "scalar",
        s_axpy,
        s_axpy_real_cplx,
        s_dot_real_cplx,
        s_caxpy,
        s_cmul_conj,
        s_sqmag,
        s_outer2_set,
        s_outer2_acc,
        s_sum,
        s_dot,
        s_l1_dist,
        s_l2_dist_sq,
        s_max_abs,
    };
    return table;
}

} // namespace mmw::kern
