#pragma once

#include "qdisk/context.hpp"
#include "qdisk/polalg.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qdisk::opmat {

using cplx = std::complex<double>;

/// Finite truncation of an element of the deformed disk algebra: N x N
/// complex matrix in the canonical basis e_0..e_{N-1}. `margin` is the size
/// of the top-left block on which the entries agree with the untruncated
/// operator (edge effects from the shift cannot propagate deeper than the
/// word degree).
struct TruncOp {
    QContext ctx;
    int margin = 0;
    std::vector<cplx> a;  // row-major, dim x dim

    double amplification = 1.0;              // largest j^{-1} factor incurred, if any
    std::vector<std::string> notes;          // amplification / aliasing warnings

    TruncOp() = default;
    TruncOp(const QContext& c, int m) : ctx(c), margin(m), a(std::size_t(c.dim) * c.dim, cplx(0)) {}

    int dim() const { return ctx.dim; }
    cplx& at(int i, int j) { return a[std::size_t(i) * ctx.dim + j]; }
    const cplx& at(int i, int j) const { return a[std::size_t(i) * ctx.dim + j]; }

    static TruncOp identity(const QContext& ctx);
};

/// Element of the representation space: coefficients in the basis e_n.
struct StateVector {
    QContext ctx;
    std::vector<cplx> c;

    double norm() const;
};

struct Generators {
    TruncOp z, zbar, j;
};

/// z e_n = sqrt(1-q^{n+1}) e_{n+1}, zbar its adjoint, j = diag(q^n).
Generators build_generators(const QContext& ctx);

/// Truncations of z^d and zbar^d taken directly from the weight products
/// (these are exact compressions of the infinite operators).
TruncOp z_power(const QContext& ctx, int d);
TruncOp zbar_power(const QContext& ctx, int d);

TruncOp add(const TruncOp& A, const TruncOp& B);
TruncOp sub(const TruncOp& A, const TruncOp& B);
TruncOp scale(cplx s, const TruncOp& A);
TruncOp multiply(const TruncOp& A, const TruncOp& B);
TruncOp adjoint_op(const TruncOp& A);
TruncOp hermitian_part(const TruncOp& A);

/// Max |entry| over the top-left rows x rows block (rows = min margin when < 0).
double interior_max_abs(const TruncOp& A, int rows = -1);
double interior_max_abs_diff(const TruncOp& A, const TruncOp& B, int rows = -1);

/// Number of leading rows on which a float-mode result that went through
/// `applications` of j^{-1} row scaling is still trustworthy at tolerance
/// tol: rows m with q^{-applications*m} * 64 eps <= tol.
int stable_rows(const QContext& ctx, int applications, double tol);

struct StructureReport {
    double relation_residual;     // zbar z - q z zbar - (1-q) I, interior max-abs
    double zzbar_residual;        // z zbar - (1 - j)
    double zbarz_residual;        // zbar z - (1 - q j)
    std::vector<double> uv_singular_values;  // singular values of U - V, descending
};

StructureReport structure_checks(const QContext& ctx);

/// Evaluate a normal-ordered polynomial on the generator truncations.
/// Requires degree <= N/2; the result margin is N - degree.
TruncOp to_matrix(const polalg::NormalPoly& p, const QContext& ctx);

/// J(A) = j^{-1} A j, i.e. entrywise A_{m,n} q^{n-m}. Records the largest
/// scale factor touching a nonzero entry; factors beyond 1/tol_norm add an
/// amplification note.
TruncOp scale_J_matrix(const TruncOp& A);

struct Deltas {
    TruncOp delta, bardelta;
};

/// The displayed matrix elements (never formed by inverting j numerically):
///   bardelta e_n = (q-1)^{-1} q^{-(n+1)} sqrt(1-q^{n+1}) e_{n+1}
///   delta    e_n = (1-q^{-n})/(1-q^{-1}) sqrt(1-q^n)     e_{n-1}
Deltas build_deltas(const QContext& ctx);

enum class Which { partial, barpartial };

/// [z, A] and [zbar, A], formed entrywise from the banded generator action.
/// Margin shrinks by 1; no j^{-1} scaling is applied.
TruncOp commutator_z(const TruncOp& A);
TruncOp commutator_zbar(const TruncOp& A);

/// partial A    = (1-q)^{-1} j^{-1} [zbar, A]
/// barpartial A = (q-1)^{-1} j^{-1} [z,    A]
/// Margin shrinks by 1; the incurred j^{-1} amplification is recorded in the
/// result metadata (entries deeper than stable_rows(ctx, k, tol) carry
/// roundoff amplified by q^{-row}).
TruncOp d_op(const TruncOp& A, Which which);

/// Q_{partial A}(phi)    = (1-q)^{-1} (j^{-1} phi, [zbar, A] phi)
/// Q_{barpartial A}(phi) = (q-1)^{-1} (j^{-1} phi, [z,    A] phi)
cplx quadratic_form(const TruncOp& A, const StateVector& phi, Which which);

struct IntegralResult {
    cplx value;
    double tail_bound;  // ||A||_inf * q^N
};

/// Trace-state integral (1-q) sum_k q^k A_{kk} with its truncation bound.
IntegralResult integral_matrix(const TruncOp& A);

/// Largest singular value by power iteration on A*A: deterministic all-ones
/// start, relative stagnation tolerance tol (ctx.tol_norm when tol <= 0).
/// Banded structure is detected and exploited. Throws on non-convergence,
/// carrying the last iterate in the message.
double op_norm(const TruncOp& A, double tol = -1.0, int max_iter = 20000);

/// Smallest eigenvalue of a Hermitian matrix via deterministic shifted power
/// iteration on the negated matrix (top eigenvalue of c I - H).
double min_eig_hermitian(const TruncOp& H, double tol = -1.0, int max_iter = 20000);

/// Truncated Neumann series sum_{k=0..terms-1} A^k for ||A|| < 1, i.e. an
/// approximation of (1 - A)^{-1}.
TruncOp neumann_series(const TruncOp& A, int terms);

/// sum_{d=0..terms-1} c^d zbar^d (antiholo) or c^d z^d, assembled from the
/// exact power compressions: the truncation of (1 - c zbar)^{-1} resp.
/// (1 - c z)^{-1} for |c| < 1 with full margin.
TruncOp geometric_resolvent(const QContext& ctx, cplx c, bool antiholo, int terms);

/// JSON {"q":"1/2","N":64,"margin":62,"entries":[[re,im],...]} row-major.
std::string to_json(const TruncOp& A);
TruncOp op_from_json(const std::string& text);

/// Compact binary dump: 16-byte header (magic "QDOP", u32 version, u32 N,
/// u32 margin, little-endian) followed by N*N little-endian float64 pairs,
/// row-major. q is not stored; the caller supplies the context on read.
void write_binary(const TruncOp& A, const std::string& path);
TruncOp read_binary(const std::string& path, const QContext& ctx);

// ---------------------------------------------------------------------------
// Exact-rational matrix mode.
//
// Matrices over Gaussian rationals in the monomial basis zeta^n (the
// diagonal rescaling of the canonical basis), where the generators act with
// exactly rational entries:
//   z    zeta^n = zeta^{n+1}
//   zbar zeta^n = (1 - q^n) zeta^{n-1}
//   j    zeta^n = q^n zeta^n
// Basis-independent identities (defining relation, derivative formulas,
// Laplacians, trace integrals) can therefore be checked with no rounding at
// all. Adjoints are not available in this basis.
// ---------------------------------------------------------------------------

struct RatOp {
    Rational q;
    int dim = 0;
    int margin = 0;
    std::vector<GaussRat> a;

    RatOp() = default;
    RatOp(const Rational& qq, int n, int m) : q(qq), dim(n), margin(m), a(std::size_t(n) * n) {}

    GaussRat& at(int i, int j) { return a[std::size_t(i) * dim + j]; }
    const GaussRat& at(int i, int j) const { return a[std::size_t(i) * dim + j]; }
};

struct RatGenerators {
    RatOp z, zbar, j;
};

RatGenerators rat_generators(const QContext& ctx);
RatOp rat_identity(const QContext& ctx);
RatOp rat_add(const RatOp& A, const RatOp& B);
RatOp rat_sub(const RatOp& A, const RatOp& B);
RatOp rat_scale(const GaussRat& s, const RatOp& A);
RatOp rat_multiply(const RatOp& A, const RatOp& B);
RatOp rat_to_matrix(const polalg::NormalPoly& p, const QContext& ctx);
RatOp rat_d_op(const RatOp& A, Which which);
GaussRat rat_integral(const RatOp& A);

/// True when every entry of the top-left rows x rows block is exactly zero.
bool rat_interior_is_zero(const RatOp& A, int rows = -1);
bool rat_interior_equal(const RatOp& A, const RatOp& B, int rows = -1);

}  // namespace qdisk::opmat
