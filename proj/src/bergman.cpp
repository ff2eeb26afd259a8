#include "qdisk/bergman.hpp"

#include "qdisk/kernels.hpp"
#include "qdisk/qnum.hpp"

#include <cmath>
#include <sstream>

namespace qdisk::bergman {

double BergmanGrid::mass() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
}

BergmanGrid BergmanGrid::make(const QContext& ctx, int angular) {
    if (angular < 4) throw ConfigError("BergmanGrid: angular node count must be >= 4");
    BergmanGrid g;
    g.ctx = ctx;
    g.angular = angular;
    const double q = ctx.qf;
    const double tail = 1e-14 * (1.0 - q);
    int M = 0;
    for (double qp = q; qp >= tail && M < 100000; qp *= q) ++M;
    g.depth = M + 1;
    g.radii.resize(M + 1);
    g.weights.resize(M + 1);
    double qm = 1.0;
    for (int m = 0; m <= M; ++m) {
        g.radii[m] = std::pow(q, 0.5 * m);
        double prod = 1.0;
        double qf = qm * q;  // q^{m+1}
        for (int i = 0; i < g.depth; ++i) {
            prod *= (1.0 - qf);
            qf *= q;
        }
        g.weights[m] = qm * prod;
        qm *= q;
    }
    return g;
}

std::string BergmanGrid::to_csv() const {
    std::ostringstream out;
    out << "m,r_m,w_m\n";
    char buf[80];
    for (int m = 0; m < levels(); ++m) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g\n", m, radii[m], weights[m]);
        out << buf;
    }
    return out.str();
}

std::vector<double> basis_norm_factors(const QContext& ctx, int count) {
    std::vector<double> nf(count);
    double prod = 1.0, qp = ctx.qf;
    for (int n = 0; n < count; ++n) {
        nf[n] = std::sqrt(prod);
        prod *= (1.0 - qp);
        qp *= ctx.qf;
    }
    return nf;
}

cplx basis_eval(int n, cplx zeta, const QContext& ctx) {
    if (n < 0) throw DomainError("basis_eval: negative index");
    if (std::abs(zeta) > 1.0 + 1e-12) throw DomainError("basis_eval: requires |zeta| <= 1");
    auto nf = basis_norm_factors(ctx, n + 1);
    return std::pow(zeta, n) / nf[n];
}

double moment(int n, const BergmanGrid& grid) {
    double s = 0.0;
    for (int m = 0; m < grid.levels(); ++m)
        s += grid.weights[m] * std::pow(grid.radii[m], 2.0 * n);
    return s;
}

cplx kernel_eval(cplx zeta, cplx etabar, const QContext& ctx, int terms) {
    cplx x = zeta * etabar;
    if (std::abs(x) >= 1.0) throw DomainError("kernel_eval: requires |zeta etabar| < 1");
    return 1.0 / qnum::q_pochhammer(x, ctx, terms).value;
}

cplx kernel_eval_series(cplx zeta, cplx etabar, const QContext& ctx, int terms) {
    cplx x = zeta * etabar;
    if (std::abs(x) >= 1.0) throw DomainError("kernel_eval_series: requires |zeta etabar| < 1");
    return qnum::euler_series(x, ctx, terms);
}

CoherentState coherent_state(cplx eta, const QContext& ctx) {
    double r = std::abs(eta);
    if (r >= 1.0) throw DomainError("coherent_state: requires |eta| < 1");
    if (r > 0.95)
        throw DomainError("coherent_state: |eta| <= 0.95 enforced (truncation tail bound)");
    const int n = ctx.dim;
    opmat::StateVector phi{ctx, std::vector<cplx>(n)};
    auto nf = basis_norm_factors(ctx, n);
    double kdiag = std::real(kernel_eval(eta, std::conj(eta), ctx));
    double scale = 1.0 / std::sqrt(kdiag);
    cplx pow = 1.0;
    for (int k = 0; k < n; ++k) {
        phi.c[k] = std::conj(pow) / nf[k] * scale;
        pow *= eta;
    }
    // sum_{k>=N} |eta|^{2k}/nf_k^2 <= r^{2N} / prod_inf; relative to K(eta,etabar)
    double prod_inf = qnum::q_pochhammer(ctx.qf, ctx, 256).value.real();
    double tail = std::pow(r, 2.0 * n) / (prod_inf * kdiag);
    return {std::move(phi), tail};
}

opmat::TruncOp toeplitz_quantize(const DiskSymbol& f, const BergmanGrid& grid,
                                 const QContext& ctx) {
    if (!f.eval) throw DomainError("toeplitz_quantize: symbol has no evaluator");
    const int n = ctx.dim;
    const int K = grid.angular;
    const int levels = grid.levels();
    const int width = 2 * n - 1;

    // sample the symbol on the grid
    std::vector<cplx> samples(std::size_t(levels) * K);
    for (int m = 0; m < levels; ++m) {
        double r = grid.radii[m];
        for (int k = 0; k < K; ++k) {
            double th = 2.0 * M_PI * k / K;
            samples[std::size_t(m) * K + k] = f.eval(cplx(r * std::cos(th), r * std::sin(th)));
        }
    }

    std::vector<cplx> fmom(std::size_t(levels) * width);
    kernels::angular_moments(K, n, levels, samples.data(), fmom.data());

    std::vector<double> rpow(std::size_t(levels) * width);
    for (int m = 0; m < levels; ++m) {
        double r = grid.radii[m], p = 1.0;
        for (int s = 0; s < width; ++s) {
            rpow[std::size_t(m) * width + s] = p;
            p *= r;
        }
    }

    auto nf = basis_norm_factors(ctx, n);
    std::vector<double> invnf(n);
    for (int i = 0; i < n; ++i) invnf[i] = 1.0 / nf[i];

    opmat::TruncOp T(ctx, n);
    kernels::quantize_assemble(n, levels, grid.weights.data(), rpow.data(), fmom.data(),
                               invnf.data(), T.a.data());
    if (f.bandwidth >= 0 && f.bandwidth >= K / 2)
        T.notes.push_back("angular aliasing: declared bandwidth " + std::to_string(f.bandwidth) +
                          " >= K/2 = " + std::to_string(K / 2));
    return T;
}

NormBoundReport norm_bound_check(const DiskSymbol& f, const QContext& ctx,
                                 const BergmanGrid& grid) {
    NormBoundReport r{};
    r.holomorphic = f.holomorphic;
    opmat::TruncOp T = toeplitz_quantize(f, grid, ctx);
    r.op_norm = opmat::op_norm(T);

    double sup = 0.0;
    for (int m = 0; m < grid.levels(); ++m) {
        double rad = grid.radii[m];
        for (int k = 0; k < grid.angular; ++k) {
            double th = 2.0 * M_PI * k / grid.angular;
            sup = std::max(sup, std::abs(f.eval(cplx(rad * std::cos(th), rad * std::sin(th)))));
        }
    }
    r.grid_sup = sup;

    r.coherent_lower = std::numeric_limits<double>::quiet_NaN();
    if (f.holomorphic) {
        double best = 0.0;
        const int n = ctx.dim;
        std::vector<cplx> tv(n);
        for (double rad : {0.3, 0.6, 0.9}) {
            for (int k = 0; k < 16; ++k) {
                double th = 2.0 * M_PI * k / 16;
                auto cs = coherent_state(cplx(rad * std::cos(th), rad * std::sin(th)), ctx);
                kernels::matvec(T.a.data(), cs.vec.c.data(), tv.data(), n);
                cplx expect = 0.0;
                double nrm = 0.0;
                for (int i = 0; i < n; ++i) {
                    expect += std::conj(cs.vec.c[i]) * tv[i];
                    nrm += std::norm(cs.vec.c[i]);
                }
                best = std::max(best, std::abs(expect) / nrm);
            }
        }
        r.coherent_lower = best;
    }
    return r;
}

}  // namespace qdisk::bergman
