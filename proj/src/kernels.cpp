#include "qdisk/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

namespace qdisk::kernels {

namespace {

std::atomic<bool> g_parallel{
#ifdef _OPENMP
    true
#else
    false
#endif
};

// Shared per-row workers. Serial and parallel drivers both call these so
// the generated floating-point instruction sequence per output element is
// identical in either mode.

#if defined(__GNUC__)
#define QDISK_NOINLINE __attribute__((noinline))
#else
#define QDISK_NOINLINE
#endif

QDISK_NOINLINE void matmul_row(const cplx* a, const cplx* b, cplx* c, int n, int i) {
    const cplx* ai = a + static_cast<std::size_t>(i) * n;
    cplx* ci = c + static_cast<std::size_t>(i) * n;
    std::fill(ci, ci + n, cplx(0.0));
    for (int k = 0; k < n; ++k) {
        cplx aik = ai[k];
        if (aik == cplx(0.0)) continue;
        const cplx* bk = b + static_cast<std::size_t>(k) * n;
        for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
}

QDISK_NOINLINE void matvec_row(const cplx* a, const cplx* x, cplx* y, int n, int band, int i) {
    const cplx* ai = a + static_cast<std::size_t>(i) * n;
    int j0 = 0, j1 = n;
    if (band >= 0) {
        j0 = std::max(0, i - band);
        j1 = std::min(n, i + band + 1);
    }
    cplx s = 0.0;
    for (int j = j0; j < j1; ++j) s += ai[j] * x[j];
    y[i] = s;
}

QDISK_NOINLINE void angular_moment_cell(int K, int n, const cplx* samples, const cplx* roots,
                                        cplx* fmom, int m, int d) {
    const cplx* row = samples + static_cast<std::size_t>(m) * K;
    cplx s = 0.0;
    for (int k = 0; k < K; ++k) {
        long idx = (static_cast<long>(d) * k) % K;
        if (idx < 0) idx += K;
        s += row[k] * roots[idx];
    }
    fmom[static_cast<std::size_t>(m) * (2 * n - 1) + (d + n - 1)] = s / static_cast<double>(K);
}

QDISK_NOINLINE void quantize_row(int n, int levels, const double* weights, const double* rpow,
                                 const cplx* fmom, const double* invnorm, cplx* out, int a) {
    const int width = 2 * n - 1;
    cplx* row = out + static_cast<std::size_t>(a) * n;
    for (int b = 0; b < n; ++b) {
        cplx s = 0.0;
        const int p = a + b;
        const int d = b - a + n - 1;
        for (int m = 0; m < levels; ++m) {
            const std::size_t off = static_cast<std::size_t>(m) * width;
            s += weights[m] * rpow[off + p] * fmom[off + d];
        }
        row[b] = invnorm[a] * invnorm[b] * s;
    }
}

std::vector<cplx> unit_roots(int K) {
    std::vector<cplx> roots(K);
    for (int k = 0; k < K; ++k) {
        double th = 2.0 * M_PI * k / K;
        roots[k] = {std::cos(th), std::sin(th)};
    }
    return roots;
}

}  // namespace

bool parallel_enabled() { return g_parallel.load(std::memory_order_relaxed); }
void set_parallel(bool on) { g_parallel.store(on, std::memory_order_relaxed); }

void matmul_serial(const cplx* a, const cplx* b, cplx* c, int n) {
    for (int i = 0; i < n; ++i) matmul_row(a, b, c, n, i);
}

void matmul_parallel(const cplx* a, const cplx* b, cplx* c, int n) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) matmul_row(a, b, c, n, i);
}

void matmul(const cplx* a, const cplx* b, cplx* c, int n) {
    parallel_enabled() ? matmul_parallel(a, b, c, n) : matmul_serial(a, b, c, n);
}

void matvec_serial(const cplx* a, const cplx* x, cplx* y, int n, int band) {
    for (int i = 0; i < n; ++i) matvec_row(a, x, y, n, band, i);
}

void matvec_parallel(const cplx* a, const cplx* x, cplx* y, int n, int band) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) matvec_row(a, x, y, n, band, i);
}

void matvec(const cplx* a, const cplx* x, cplx* y, int n, int band) {
    parallel_enabled() ? matvec_parallel(a, x, y, n, band) : matvec_serial(a, x, y, n, band);
}

void angular_moments_serial(int K, int n, int levels, const cplx* samples, cplx* fmom) {
    auto roots = unit_roots(K);
    const int width = 2 * n - 1;
    for (int cell = 0; cell < levels * width; ++cell)
        angular_moment_cell(K, n, samples, roots.data(), fmom, cell / width, cell % width - (n - 1));
}

void angular_moments_parallel(int K, int n, int levels, const cplx* samples, cplx* fmom) {
    auto roots = unit_roots(K);
    const int width = 2 * n - 1;
#pragma omp parallel for schedule(static)
    for (int cell = 0; cell < levels * width; ++cell)
        angular_moment_cell(K, n, samples, roots.data(), fmom, cell / width, cell % width - (n - 1));
}

void angular_moments(int K, int n, int levels, const cplx* samples, cplx* fmom) {
    parallel_enabled() ? angular_moments_parallel(K, n, levels, samples, fmom)
                       : angular_moments_serial(K, n, levels, samples, fmom);
}

void quantize_assemble_serial(int n, int levels, const double* weights, const double* rpow,
                              const cplx* fmom, const double* invnorm, cplx* out) {
    for (int a = 0; a < n; ++a) quantize_row(n, levels, weights, rpow, fmom, invnorm, out, a);
}

void quantize_assemble_parallel(int n, int levels, const double* weights, const double* rpow,
                                const cplx* fmom, const double* invnorm, cplx* out) {
#pragma omp parallel for schedule(static)
    for (int a = 0; a < n; ++a) quantize_row(n, levels, weights, rpow, fmom, invnorm, out, a);
}

void quantize_assemble(int n, int levels, const double* weights, const double* rpow,
                       const cplx* fmom, const double* invnorm, cplx* out) {
    parallel_enabled() ? quantize_assemble_parallel(n, levels, weights, rpow, fmom, invnorm, out)
                       : quantize_assemble_serial(n, levels, weights, rpow, fmom, invnorm, out);
}

}  // namespace qdisk::kernels
