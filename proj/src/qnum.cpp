#include "qdisk/qnum.hpp"

namespace qdisk::qnum {

Rational q_int(long n, const QContext& ctx) {
    if (n < 0) throw DomainError("q_int: n must be nonnegative");
    return (Rational(1) - rational_pow(ctx.q, n)) / (Rational(1) - ctx.q);
}

PochResult q_pochhammer(cplx x, const QContext& ctx, int terms) {
    if (terms < 1) throw DomainError("q_pochhammer: terms must be >= 1");
    const double q = ctx.qf;
    cplx prod = 1.0;
    double qi = 1.0;
    for (int i = 0; i < terms; ++i) {
        prod *= (1.0 - x * qi);
        qi *= q;
    }
    // |log tail| <= |x| q^T / ((1-q)(1 - |x| q^T)) for |x| q^T < 1
    double ax = std::abs(x);
    double tail = 0.0;
    double head = ax * qi;
    if (head < 1.0)
        tail = std::abs(prod) * std::expm1(head / ((1.0 - q) * (1.0 - head)));
    else
        tail = std::numeric_limits<double>::infinity();
    return {prod, tail};
}

cplx euler_series(cplx x, const QContext& ctx, int terms) {
    if (terms < 1) throw DomainError("euler_series: terms must be >= 1");
    if (std::abs(x) >= 1.0) throw DomainError("euler_series: requires |x| < 1");
    const double q = ctx.qf;
    cplx sum = 1.0;
    cplx xm = 1.0;
    double qk = 1.0, denom = 1.0;
    for (int m = 1; m < terms; ++m) {
        xm *= x;
        qk *= q;
        denom *= (1.0 - qk);
        sum += xm / denom;
    }
    return sum;
}

}  // namespace qdisk::qnum
