#pragma once

#include "qdisk/bergman.hpp"
#include "qdisk/boundary.hpp"
#include "qdisk/opmat.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qdisk::funtheory {

using cplx = std::complex<double>;
using opmat::TruncOp;

enum class HoloClass { weakly_holo, weakly_antiholo, harmonic, none };

const char* holo_class_name(HoloClass c);

/// Numeric scalability certificate for holomorphic/antiholomorphic elements.
/// For a holomorphic element with offset coefficients a_d, J rescales them to
/// a_d q^{-d}; the record carries that sequence and a root-test estimate of
/// the radius of convergence of sum a_d q^{-d} w^d. "scalable (numeric)"
/// requires the certified radius to clear 1 with a guard band; radius values
/// near 1 stay unflagged. Antiholomorphic elements are always scalable.
struct ScalabilityDiag {
    bool applicable = false;
    bool antiholomorphic = false;
    std::vector<double> scaled_coeffs;  // |a_d| q^{-d}
    double radius = 0.0;                // root-test radius estimate (inf for polynomials)
    bool scalable = false;
    std::string note;
};

struct HolomorphyReport {
    double commutator_norm = 0.0;       // the norm backing the classification
    double comm_z_norm = 0.0;           // interior |[z, A]|
    double comm_zbar_norm = 0.0;        // interior |[zbar, A]|
    HoloClass classification = HoloClass::none;
    ScalabilityDiag scalability;
    BoundaryFunction extracted_symbol;
};

/// Commutator-based classification (weakly holomorphic iff [z,a] = 0,
/// antiholomorphic iff [zbar,a] = 0). Requires margin >= 4.
HolomorphyReport classify(const TruncOp& A);

/// a1 = lower-triangular part including the diagonal (the weakly holomorphic
/// candidate), a2 = strictly upper part; a1 + a2 = A exactly.
std::pair<TruncOp, TruncOp> triangular_split(const TruncOp& A);

struct HarmonicCheck {
    bool flag = false;
    double holo_residual = 0.0;     // interior |[z, a1]|
    double antiholo_residual = 0.0; // interior |[zbar, a2]|
};

/// Decomposition criterion: harmonic iff the split parts are respectively
/// weakly holomorphic and weakly antiholomorphic.
HarmonicCheck is_weakly_harmonic(const TruncOp& A);

struct SymbolEstimate {
    BoundaryFunction f;
    double drift = 0.0;   // two-point convergence diagnostic, max over modes
    bool reliable = true; // drift within tol_identity
    int depth = 0;        // estimator depth k
};

/// Deep-diagonal symbol estimator: the mode-d coefficient is read off
/// A_{k+d,k} at depth k ~ 0.8 margin, divided by the known shift-weight
/// product, with a two-point geometric extrapolation in k (ratio q).
/// Requires margin >= 8; dmax < 0 selects the largest window the margin
/// supports.
SymbolEstimate symbol_extract(const TruncOp& A, int dmax = -1);

/// Unique weakly harmonic element with boundary symbol f, built by the
/// Fourier route sum_{d>=0} c_d z^d + sum_{d<0} c_d zbar^{|d|}.
/// Bandwidth beyond N/2 is rejected.
TruncOp dirichlet_solve(const BoundaryFunction& f, const QContext& ctx);

/// Angular quadrature of the Poisson integral
///   (1/2pi) int (1-|zeta|^2)/|e^{i theta} - zeta|^2 f(e^{i theta}) d theta,
/// node count adapted to |zeta| and the declared bandwidth. |zeta| < 1.
cplx poisson_eval(const BoundaryFunction& f, cplx zeta, int min_nodes = 256);

/// Disk symbol realizing the Poisson-kernel quadrature extension of f:
/// radial factors rho_d(r) are obtained by angular quadrature against the
/// kernel (never analytically), boundary values are f itself.
DiskSymbol poisson_extension_symbol(const BoundaryFunction& f);

/// Exact termwise q-antiderivative of antiholomorphic Taylor data:
/// zbar^d -> zbar^{d+1}/[d+1]_q, so that delta_q(g) = k holds exactly.
std::vector<GaussRat> q_antiderivative(const std::vector<GaussRat>& k, const QContext& ctx);

/// delta_q applied termwise to antiholomorphic Taylor data (test oracle).
std::vector<GaussRat> delta_q_coeffs(const std::vector<GaussRat>& g, const QContext& ctx);

/// Weighted series (1-q) x sum_n q^n k(q^n x): reproduces the termwise rule.
cplx antiderivative_series_weighted(const std::vector<cplx>& k, cplx x, const QContext& ctx,
                                    int terms = 200);

/// Literal series (1-q) x sum_n k(q^n x) without the q^n weight; kept for
/// the documented discrepancy record (on zbar^d it integrates to
/// zbar^{d+1}/[d]_q instead of zbar^{d+1}/[d+1]_q and diverges on constants).
cplx antiderivative_series_unweighted(const std::vector<cplx>& k, cplx x, const QContext& ctx,
                                      int terms = 200);

struct HarmonicReport {
    cplx mean_value;          // trace-state integral of A
    cplx boundary_mean;       // hat f(0)
    double mean_error;
    double op_norm_value;
    double boundary_sup;      // sup |f| on the boundary
    double integral_tail;     // truncation bound of the trace integral
    bool positivity_checked = false;
    double min_eigenvalue = 0.0;  // of the Hermitian part, when checked
    double boundary_min = 0.0;    // min of f on the boundary, when real
};

/// Mean value, maximum principle and positivity diagnostics for a weakly
/// harmonic element with boundary data f.
HarmonicReport harmonic_diagnostics(const TruncOp& A, const BoundaryFunction& f);

struct HarnackReport {
    std::vector<double> min_eig_diffs;   // min eig of A_{k+1} - A_k
    std::vector<double> norm_diffs;      // ||A_{k+1} - A_k||
    std::vector<double> norm_bounds;     // 2^{-k}
    bool monotone_ok = false;
    bool cauchy_ok = false;
};

/// Demo sequence f_k = sum_{j=1..k} 2^{-j} (1 + cos j theta): the solved
/// elements increase in the operator order and are Cauchy in norm.
HarnackReport harnack_demo(const QContext& ctx, int kmax);

ScalabilityDiag scalability_diagnostic(const TruncOp& A);

std::string to_json(const HolomorphyReport& r);
std::string to_json(const HarmonicReport& r);

}  // namespace qdisk::funtheory
