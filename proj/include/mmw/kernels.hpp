#pragma once

#include <cstddef>

// Data-parallel inner loops used by propagation and correlation code.
// A scalar reference implementation always exists; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. Both implement the same
// contract and are equivalence-tested against each other.

namespace mmw::kern {

struct Ops {
    const char* name;

    // y += s * v
    void (*axpy)(double s, const double* v, double* y, std::size_t n);

    // (y_re, y_im) += (a_re + i a_im) * x, x real
    void (*axpy_real_cplx)(double a_re, double a_im, const double* x,
                           double* y_re, double* y_im, std::size_t n);

    // out_re = sum x[i] y_re[i], out_im = sum x[i] y_im[i]
    void (*dot_real_cplx)(const double* x, const double* y_re, const double* y_im,
                          std::size_t n, double* out_re, double* out_im);

    // (y_re, y_im) += (c_re + i c_im) * (x_re + i x_im)
    void (*caxpy)(double c_re, double c_im, const double* x_re, const double* x_im,
                  double* y_re, double* y_im, std::size_t n);

    // z = x * conj(y), elementwise complex
    void (*cmul_conj)(const double* x_re, const double* x_im,
                      const double* y_re, const double* y_im,
                      double* z_re, double* z_im, std::size_t n);

    // out[i] = re[i]^2 + im[i]^2
    void (*sqmag)(const double* re, const double* im, double* out, std::size_t n);

    // P[i*n+j] = v[i] * v[j]
    void (*outer2_set)(const double* v, double* P, std::size_t n);

    // acc[i*n+j] += w * v[i] * v[j]
    void (*outer2_acc)(const double* v, double w, double* acc, std::size_t n);

    double (*sum)(const double* v, std::size_t n);
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*l1_dist)(const double* a, const double* b, std::size_t n);
    double (*l2_dist_sq)(const double* a, const double* b, std::size_t n);
    double (*max_abs)(const double* v, std::size_t n);
};

enum class Backend { Auto, Scalar, Avx2 };

const Ops& scalar_ops();

// Compiled-in AVX2 table, or nullptr on non-x86 builds.
const Ops* avx2_ops();

// True when the AVX2 variant is both compiled in and supported by this CPU.
bool avx2_available();

// Select the backend; returns false (and leaves the selection unchanged)
// if the requested backend is unavailable. Auto picks the best available.
bool set_backend(Backend b);
Backend active_backend();

// Active dispatch table.
const Ops& ops();

} // namespace mmw::kern
