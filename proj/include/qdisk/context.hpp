#pragma once

#include "qdisk/rational.hpp"

namespace qdisk {

/// Shared configuration for both engines: the deformation parameter q
/// (exact, strictly inside (0,1)), the truncation dimension N, and the
/// tolerance profile.
///
/// q = 0 (Toeplitz algebra) and q = 1 (commutative disk) are rejected:
/// the scaling calculus degenerates at both endpoints.
struct QContext {
    Rational q;   // exact value, 0 < q < 1
    double qf;    // floating view of q
    int dim;      // truncation dimension N

    double tol_identity   = 1e-10;
    double tol_quadrature = 1e-12;
    double tol_norm       = 1e-6;

    static constexpr int kMinDim = 4;
    static constexpr int kMaxDim = 1024;

    static QContext make(const Rational& q, int dim) {
        if (q <= 0 || q >= 1)
            throw ConfigError("q must satisfy 0 < q < 1 strictly (got " + rational_to_string(q) +
                              "); q=0 and q=1 are outside the deformed-disk regime");
        if (dim < kMinDim || dim > kMaxDim)
            throw ConfigError("truncation dimension must be in [" + std::to_string(kMinDim) + ", " +
                              std::to_string(kMaxDim) + "] (got " + std::to_string(dim) + ")");
        QContext ctx;
        ctx.q = q;
        ctx.qf = to_double(q);
        ctx.dim = dim;
        return ctx;
    }

    static QContext make(const std::string& q_literal, int dim) {
        return make(rational_from_string(q_literal), dim);
    }

    bool same_q(const QContext& o) const { return q == o.q; }
};

}  // namespace qdisk
