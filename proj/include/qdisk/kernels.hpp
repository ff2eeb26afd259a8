#pragma once

#include <complex>
#include <cstddef>

namespace qdisk::kernels {

using cplx = std::complex<double>;

/// Process-wide switch between the OpenMP kernels and the serial reference
/// path. Both variants drive the same per-row workers with a fixed per-entry
/// summation order, so their results are bitwise identical; the serial path
/// is kept as the reference implementation for tests and as the fallback
/// when OpenMP is unavailable.
bool parallel_enabled();
void set_parallel(bool on);

/// Dense complex matrix product C = A * B, n x n row-major.
void matmul_serial(const cplx* a, const cplx* b, cplx* c, int n);
void matmul_parallel(const cplx* a, const cplx* b, cplx* c, int n);
void matmul(const cplx* a, const cplx* b, cplx* c, int n);

/// y = A * x. band < 0 means dense; otherwise entries with |i-j| > band
/// are treated as zero.
void matvec_serial(const cplx* a, const cplx* x, cplx* y, int n, int band = -1);
void matvec_parallel(const cplx* a, const cplx* x, cplx* y, int n, int band = -1);
void matvec(const cplx* a, const cplx* x, cplx* y, int n, int band = -1);

/// Angular moment table for Toeplitz quantization:
///   fmom[m*(2n-1) + (d+n-1)] = (1/K) sum_{k=0..K-1} samples[m*K+k] * e^{i d theta_k},
/// theta_k = 2 pi k / K, d = -(n-1)..(n-1). The angular sum runs k ascending.
void angular_moments_serial(int K, int n, int levels, const cplx* samples, cplx* fmom);
void angular_moments_parallel(int K, int n, int levels, const cplx* samples, cplx* fmom);
void angular_moments(int K, int n, int levels, const cplx* samples, cplx* fmom);

/// Radial assembly of the quantized operator:
///   out[a*n+b] = invnorm[a] * invnorm[b] * sum_{m ascending} weights[m] * rpow[m*(2n-1) + a+b] * fmom[m*(2n-1) + (b-a+n-1)]
/// where rpow[m][s] = r_m^s.
void quantize_assemble_serial(int n, int levels, const double* weights, const double* rpow,
                              const cplx* fmom, const double* invnorm, cplx* out);
void quantize_assemble_parallel(int n, int levels, const double* weights, const double* rpow,
                                const cplx* fmom, const double* invnorm, cplx* out);
void quantize_assemble(int n, int levels, const double* weights, const double* rpow,
                       const cplx* fmom, const double* invnorm, cplx* out);

}  // namespace qdisk::kernels
