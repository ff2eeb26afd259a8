#pragma once

#include "qdisk/boundary.hpp"
#include "qdisk/context.hpp"
#include "qdisk/opmat.hpp"

#include <complex>
#include <string>
#include <vector>

namespace qdisk::bergman {

using cplx = std::complex<double>;

/// Quadrature for the atomic radial measure
///   d mu = prod_{i>=0}(1 - |zeta|^2 q^{i+1}) sum_{m>=0} q^m delta_{|zeta|^2 = q^m},
/// discretized as radial levels r_m = q^{m/2} with weights
/// w_m = q^m prod_{i=0..P-1}(1 - q^{m+i+1}) and K uniform angular nodes.
/// M and P are chosen from the geometric tail bound q^{M+1} < tol (1-q).
struct BergmanGrid {
    QContext ctx;
    int angular = 0;  // K
    int depth = 0;    // P
    std::vector<double> radii;
    std::vector<double> weights;

    int levels() const { return static_cast<int>(radii.size()); }
    double mass() const;

    static BergmanGrid make(const QContext& ctx, int angular = 256);

    /// CSV rows "m,r_m,w_m" with a header line.
    std::string to_csv() const;
};

/// Normalization factors nf_n = sqrt(prod_{i=0..n-1}(1 - q^{i+1})); e_n = zeta^n / nf_n.
std::vector<double> basis_norm_factors(const QContext& ctx, int count);

/// Orthonormal basis element e_n at zeta (requires |zeta| <= 1).
cplx basis_eval(int n, cplx zeta, const QContext& ctx);

/// Quadrature value of the radial moment integral of |zeta|^{2n}.
double moment(int n, const BergmanGrid& grid);

/// Reproducing kernel K(zeta, etabar) = 1 / prod_{i>=0}(1 - zeta etabar q^i),
/// evaluated as the reciprocal q-Pochhammer product. Requires |zeta etabar| < 1.
cplx kernel_eval(cplx zeta, cplx etabar, const QContext& ctx, int terms = 64);

/// The same kernel through the series route 1 + sum_n (zeta etabar)^n / prod(1-q^k).
cplx kernel_eval_series(cplx zeta, cplx etabar, const QContext& ctx, int terms = 64);

struct CoherentState {
    opmat::StateVector vec;
    double tail_bound;  // bound on the dropped coefficient mass
};

/// Normalized reproducing-kernel vector at eta: coefficients
/// c_n = conj(e_n(eta)) / sqrt(K(eta, etabar)). |eta| <= 0.95 enforced.
CoherentState coherent_state(cplx eta, const QContext& ctx);

/// Toeplitz quantization of a disk symbol on the grid:
///   T_{ab} = sum_m w_m (1/K) sum_k f(r_m e^{i theta_k}) conj(e_a) e_b at the node,
/// angular sum first, then ascending m. Exact in the angular rule for
/// declared bandwidth < K/2; otherwise the result carries an aliasing note.
opmat::TruncOp toeplitz_quantize(const DiskSymbol& f, const BergmanGrid& grid,
                                 const QContext& ctx);

struct NormBoundReport {
    double op_norm;
    double grid_sup;           // sup of |f| over the grid nodes
    double coherent_lower;     // sup_eta |<phi_eta, T(f) phi_eta>|, NaN when not holomorphic
    bool holomorphic;
};

/// Norm sandwich diagnostics: ||T(f)|| <= sup|f| always, and for holomorphic
/// symbols the coherent-state expectation bounds the norm from below.
NormBoundReport norm_bound_check(const DiskSymbol& f, const QContext& ctx,
                                 const BergmanGrid& grid);

}  // namespace qdisk::bergman
