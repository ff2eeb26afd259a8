#pragma once

#include "qdisk/context.hpp"

#include <cmath>
#include <complex>
#include <type_traits>

namespace qdisk::qnum {

using cplx = std::complex<double>;

/// q-integer [n]_q = (1 - q^n)/(1 - q), exact.
Rational q_int(long n, const QContext& ctx);

struct PochResult {
    cplx value;
    double tail_bound;  // a-priori bound on |value - infinite product|, O(q^terms)
};

/// Finite product prod_{i=0..terms-1} (1 - x q^i) with a geometric tail bound
/// valid for |x| <= 1.
PochResult q_pochhammer(cplx x, const QContext& ctx, int terms);

/// Partial sum (terms summands) of 1 + sum_{m>=1} x^m / prod_{k=1..m}(1 - q^k).
/// Requires |x| < 1; the full series is the reciprocal of the infinite
/// q-Pochhammer product in x.
cplx euler_series(cplx x, const QContext& ctx, int terms);

/// (g(y) - g(qy)) / ((1-q) y). Works over double (y, q float) and over
/// Rational (exact mode); rejects y = 0.
template <class F, class Y>
auto q_derivative(F&& g, const Y& y, const QContext& ctx) {
    if (y == Y(0)) throw DomainError("q_derivative: evaluation point y = 0");
    if constexpr (std::is_same_v<std::decay_t<Y>, Rational>) {
        Y qy = ctx.q * y;
        return (g(y) - g(qy)) / ((Rational(1) - ctx.q) * y);
    } else {
        Y qy = Y(ctx.qf) * y;
        return (g(y) - g(qy)) / ((Y(1) - Y(ctx.qf)) * y);
    }
}

struct JacksonResult {
    double value;
    int levels;         // K: highest index included in the sum
    double tail_bound;  // sup|g| * q^{K+1}
};

/// Jackson integral (1-q) sum_{k=0..K} q^k g(q^k) with K chosen so that
/// sup_bound * q^{K+1} < tail_tol. When sup_bound is not supplied it is
/// estimated as a running max over the quadrature samples themselves;
/// if that estimate keeps growing past the level cap the tail bound is
/// declared non-convergent and an error is thrown.
template <class F>
JacksonResult jackson_integral(F&& g, const QContext& ctx, double tail_tol,
                               double sup_bound = -1.0) {
    if (!(tail_tol > 0)) throw DomainError("jackson_integral: tail_tol must be positive");
    const double q = ctx.qf;
    const int cap = 200000;
    double sum = 0.0, qk = 1.0;
    double running_sup = (sup_bound > 0) ? sup_bound : 0.0;
    const bool estimate = sup_bound <= 0;
    int k = 0;
    for (; k < cap; ++k) {
        double gk = g(qk);
        if (estimate) {
            double a = std::abs(gk);
            if (!std::isfinite(a))
                throw DomainError("jackson_integral: non-finite sample, sup estimate unavailable");
            if (a > running_sup) running_sup = a;
        }
        sum += qk * gk;
        qk *= q;
        if (k >= 8 && running_sup * qk < tail_tol) break;  // qk is already q^{k+1}
    }
    if (k == cap)
        throw DomainError("jackson_integral: tail bound did not converge within level cap");
    return {(1.0 - q) * sum, k, running_sup * qk};
}

}  // namespace qdisk::qnum
