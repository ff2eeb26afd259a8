#include "qdisk/function_theory.hpp"

#include "qdisk/qnum.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

namespace qdisk::funtheory {

namespace {

using opmat::Which;

// weight product W_d(k): the entry of z^d (d >= 0) resp. zbar^{|d|} (d < 0)
// at (k+d, k); the deep-diagonal estimates are divided by it.
double weight_product(const QContext& ctx, int d, int k) {
    double prod = 1.0;
    if (d >= 0) {
        for (int i = 1; i <= d; ++i) prod *= std::sqrt(1.0 - std::pow(ctx.qf, k + i));
    } else {
        for (int i = 0; i < -d; ++i) prod *= std::sqrt(1.0 - std::pow(ctx.qf, k - i));
    }
    return prod;
}

// corrected deep-diagonal estimate of the offset-d coefficient at depth k
cplx diag_estimate(const TruncOp& A, int d, int k) {
    return A.at(k + d, k) / weight_product(A.ctx, d, k);
}

// two-point geometric extrapolation with known ratio q
cplx extrapolate(const TruncOp& A, int d, int k, double* drift) {
    cplx ek = diag_estimate(A, d, k);
    cplx ekm = diag_estimate(A, d, k - 1);
    if (drift) *drift = std::abs(ek - ekm);
    double q = A.ctx.qf;
    return ek + q / (1.0 - q) * (ek - ekm);
}

}  // namespace

const char* holo_class_name(HoloClass c) {
    switch (c) {
        case HoloClass::weakly_holo: return "weakly_holo";
        case HoloClass::weakly_antiholo: return "weakly_antiholo";
        case HoloClass::harmonic: return "harmonic";
        default: return "none";
    }
}

std::pair<TruncOp, TruncOp> triangular_split(const TruncOp& A) {
    TruncOp a1(A.ctx, A.margin), a2(A.ctx, A.margin);
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            (i >= j ? a1 : a2).at(i, j) = A.at(i, j);
    return {std::move(a1), std::move(a2)};
}

HarmonicCheck is_weakly_harmonic(const TruncOp& A) {
    if (A.margin < 4) throw DomainError("is_weakly_harmonic: margin < 4");
    auto [a1, a2] = triangular_split(A);
    HarmonicCheck r;
    r.holo_residual = opmat::interior_max_abs(opmat::commutator_z(a1));
    r.antiholo_residual = opmat::interior_max_abs(opmat::commutator_zbar(a2));
    r.flag = r.holo_residual < A.ctx.tol_identity && r.antiholo_residual < A.ctx.tol_identity;
    return r;
}

HolomorphyReport classify(const TruncOp& A) {
    if (A.margin < 4) throw DomainError("classify: margin < 4");
    HolomorphyReport r;
    r.comm_z_norm = opmat::interior_max_abs(opmat::commutator_z(A));
    r.comm_zbar_norm = opmat::interior_max_abs(opmat::commutator_zbar(A));
    const double tol = A.ctx.tol_identity;
    if (r.comm_z_norm < tol) {
        r.classification = HoloClass::weakly_holo;
        r.commutator_norm = r.comm_z_norm;
    } else if (r.comm_zbar_norm < tol) {
        r.classification = HoloClass::weakly_antiholo;
        r.commutator_norm = r.comm_zbar_norm;
    } else if (is_weakly_harmonic(A).flag) {
        r.classification = HoloClass::harmonic;
        r.commutator_norm = std::min(r.comm_z_norm, r.comm_zbar_norm);
    } else {
        r.classification = HoloClass::none;
        r.commutator_norm = std::min(r.comm_z_norm, r.comm_zbar_norm);
    }
    if (r.classification == HoloClass::weakly_holo ||
        r.classification == HoloClass::weakly_antiholo)
        r.scalability = scalability_diagnostic(A);
    if (A.margin >= 8) r.extracted_symbol = symbol_extract(A).f;
    return r;
}

SymbolEstimate symbol_extract(const TruncOp& A, int dmax) {
    if (A.margin < 8) throw DomainError("symbol_extract: margin < 8");
    const int margin = A.margin;
    int k = static_cast<int>(0.8 * margin);
    int limit = std::min(k - 1, margin - 1 - k);
    if (dmax < 0) dmax = limit;
    if (dmax > limit) {
        k = margin - 1 - dmax;  // push the window down to fit the request
        if (k - 1 < dmax)
            throw DomainError("symbol_extract: margin too small for requested mode range");
    }
    SymbolEstimate est;
    est.depth = k;
    for (int d = -dmax; d <= dmax; ++d) {
        double drift = 0.0;
        cplx c = extrapolate(A, d, k, &drift);
        est.drift = std::max(est.drift, drift);
        if (std::abs(c) > 1e-12) est.f.fourier[d] = c;
    }
    est.reliable = est.drift <= A.ctx.tol_identity;
    return est;
}

TruncOp dirichlet_solve(const BoundaryFunction& f, const QContext& ctx) {
    const int band = f.bandwidth();
    if (band > ctx.dim / 2)
        throw DomainError("dirichlet_solve: bandwidth " + std::to_string(band) +
                          " exceeds N/2 = " + std::to_string(ctx.dim / 2));
    TruncOp A(ctx, ctx.dim);
    for (const auto& [d, c] : f.fourier) {
        if (c == cplx(0.0)) continue;
        TruncOp p = d >= 0 ? opmat::z_power(ctx, d) : opmat::zbar_power(ctx, -d);
        for (std::size_t i = 0; i < A.a.size(); ++i) A.a[i] += c * p.a[i];
    }
    return A;
}

cplx poisson_eval(const BoundaryFunction& f, cplx zeta, int min_nodes) {
    double r = std::abs(zeta);
    if (r >= 1.0) throw DomainError("poisson_eval: requires |zeta| < 1");
    int K = min_nodes;
    if (r > 0.1) {
        double need = (f.bandwidth() + std::log(1e-13) / std::log(r)) + 1.0;
        K = std::max(K, static_cast<int>(need));
    }
    K = std::min(K, 1 << 17);
    cplx s = 0.0;
    for (int j = 0; j < K; ++j) {
        double th = 2.0 * M_PI * j / K;
        cplx e(std::cos(th), std::sin(th));
        double kernel = (1.0 - r * r) / std::norm(e - zeta);
        s += kernel * f.eval(th);
    }
    return s / static_cast<double>(K);
}

DiskSymbol poisson_extension_symbol(const BoundaryFunction& f) {
    DiskSymbol s;
    s.bandwidth = f.bandwidth();
    s.holomorphic = false;
    // Radial kernel factors rho_d(r) = (1/K) sum_j P_r(theta_j) e^{i d theta_j}
    // are quadrature approximations of r^{|d|}; the angular grid is anchored
    // at the evaluation angle. Cached per radius.
    auto cache = std::make_shared<std::map<double, std::vector<cplx>>>();
    BoundaryFunction data = f;
    int band = s.bandwidth;
    s.eval = [cache, data, band](cplx zeta) -> cplx {
        double r = std::abs(zeta);
        if (r >= 1.0 - 1e-12) {  // boundary level: the extension is f itself
            double phi = std::arg(zeta);
            return data.eval(phi);
        }
        auto it = cache->find(r);
        if (it == cache->end()) {
            int K = 256;
            if (r > 0.1) {
                double need = (band + std::log(1e-13) / std::log(r)) + 1.0;
                K = std::max(K, static_cast<int>(need));
            }
            K = std::min(K, 1 << 17);
            std::vector<cplx> rho(2 * band + 1, cplx(0.0));
            for (int j = 0; j < K; ++j) {
                double th = 2.0 * M_PI * j / K;
                cplx e(std::cos(th), std::sin(th));
                double kernel = (1.0 - r * r) / std::norm(e - cplx(r, 0.0));
                for (int d = -band; d <= band; ++d)
                    rho[d + band] += kernel * cplx(std::cos(d * th), std::sin(d * th));
            }
            for (auto& v : rho) v /= static_cast<double>(K);
            it = cache->emplace(r, std::move(rho)).first;
        }
        const auto& rho = it->second;
        double phi = std::arg(zeta);
        cplx s = 0.0;
        for (const auto& [d, c] : data.fourier)
            s += c * rho[d + band] * cplx(std::cos(d * phi), std::sin(d * phi));
        return s;
    };
    return s;
}

std::vector<GaussRat> q_antiderivative(const std::vector<GaussRat>& k, const QContext& ctx) {
    std::vector<GaussRat> g(k.size() + 1);
    for (std::size_t d = 0; d < k.size(); ++d)
        g[d + 1] = k[d] / qnum::q_int(static_cast<long>(d) + 1, ctx);
    return g;
}

std::vector<GaussRat> delta_q_coeffs(const std::vector<GaussRat>& g, const QContext& ctx) {
    if (g.size() <= 1) return {};
    std::vector<GaussRat> k(g.size() - 1);
    for (std::size_t e = 1; e < g.size(); ++e)
        k[e - 1] = qnum::q_int(static_cast<long>(e), ctx) * g[e];
    return k;
}

namespace {
cplx eval_poly(const std::vector<cplx>& c, cplx x) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}
}  // namespace

cplx antiderivative_series_weighted(const std::vector<cplx>& k, cplx x, const QContext& ctx,
                                    int terms) {
    cplx s = 0.0;
    double qn = 1.0;
    for (int n = 0; n < terms; ++n) {
        s += qn * eval_poly(k, qn * x);
        qn *= ctx.qf;
    }
    return (1.0 - ctx.qf) * x * s;
}

cplx antiderivative_series_unweighted(const std::vector<cplx>& k, cplx x, const QContext& ctx,
                                      int terms) {
    cplx s = 0.0;
    double qn = 1.0;
    for (int n = 0; n < terms; ++n) {
        s += eval_poly(k, qn * x);
        qn *= ctx.qf;
    }
    return (1.0 - ctx.qf) * x * s;
}

HarmonicReport harmonic_diagnostics(const TruncOp& A, const BoundaryFunction& f) {
    auto harm = is_weakly_harmonic(A);
    if (!harm.flag)
        throw DomainError("harmonic_diagnostics: input is not weakly harmonic (residuals " +
                          std::to_string(harm.holo_residual) + ", " +
                          std::to_string(harm.antiholo_residual) + ")");
    HarmonicReport r{};
    auto integral = opmat::integral_matrix(A);
    r.mean_value = integral.value;
    r.integral_tail = integral.tail_bound;
    r.boundary_mean = f.coeff(0);
    r.mean_error = std::abs(r.mean_value - r.boundary_mean);
    r.op_norm_value = opmat::op_norm(A);

    const int K = 4096;
    double sup = 0.0, minv = std::numeric_limits<double>::infinity();
    for (int j = 0; j < K; ++j) {
        double th = 2.0 * M_PI * j / K;
        cplx v = f.eval(th);
        sup = std::max(sup, std::abs(v));
        minv = std::min(minv, v.real());
    }
    r.boundary_sup = sup;

    if (f.is_real_valued()) {
        r.positivity_checked = true;
        r.boundary_min = minv;
        r.min_eigenvalue = opmat::min_eig_hermitian(opmat::hermitian_part(A));
    }
    return r;
}

HarnackReport harnack_demo(const QContext& ctx, int kmax) {
    HarnackReport r;
    r.monotone_ok = true;
    r.cauchy_ok = true;
    auto boundary_data = [](int k) {
        BoundaryFunction f;
        double w = 1.0;
        for (int j = 1; j <= k; ++j) {
            w *= 0.5;
            f.fourier[0] += w;
            f.fourier[j] += 0.5 * w;
            f.fourier[-j] += 0.5 * w;
        }
        return f;
    };
    TruncOp prev = dirichlet_solve(boundary_data(1), ctx);
    for (int k = 1; k < kmax; ++k) {
        TruncOp next = dirichlet_solve(boundary_data(k + 1), ctx);
        TruncOp diff = opmat::sub(next, prev);
        double eig = opmat::min_eig_hermitian(opmat::hermitian_part(diff));
        double nrm = opmat::op_norm(diff);
        double bound = std::pow(0.5, k);
        r.min_eig_diffs.push_back(eig);
        r.norm_diffs.push_back(nrm);
        r.norm_bounds.push_back(bound);
        if (eig < -1e-10) r.monotone_ok = false;
        if (nrm > bound + 1e-10) r.cauchy_ok = false;
        prev = std::move(next);
    }
    return r;
}

ScalabilityDiag scalability_diagnostic(const TruncOp& A) {
    if (A.margin < 8) throw DomainError("scalability_diagnostic: margin < 8");
    double cz = opmat::interior_max_abs(opmat::commutator_z(A));
    double czb = opmat::interior_max_abs(opmat::commutator_zbar(A));
    const double tol = A.ctx.tol_identity;
    ScalabilityDiag diag;
    if (cz >= tol && czb >= tol)
        throw DomainError("scalability_diagnostic: input is neither weakly holomorphic nor "
                          "weakly antiholomorphic");
    diag.applicable = true;
    if (czb < tol && cz >= tol) {
        diag.antiholomorphic = true;
        diag.scalable = true;
        diag.radius = std::numeric_limits<double>::infinity();
        diag.note = "weakly antiholomorphic: scalable (strong = weak for antiholomorphic)";
        return diag;
    }

    // holomorphic branch: deep-diagonal offset coefficients a_d, rescaled by q^{-d}
    const int margin = A.margin;
    int k = static_cast<int>(0.8 * margin);
    int dmax = std::min(k - 1, margin - 1 - k);
    double qinv = 1.0 / A.ctx.qf, scale = 1.0;
    double maxb = 0.0;
    for (int d = 0; d <= dmax; ++d) {
        double b = std::abs(extrapolate(A, d, k, nullptr)) * scale;
        diag.scaled_coeffs.push_back(b);
        maxb = std::max(maxb, b);
        scale *= qinv;
    }
    const double floor = std::max(1e-13, 1e-10 * maxb);
    double rho = 0.0;
    for (int d = std::max(1, dmax / 2); d <= dmax; ++d) {
        double b = diag.scaled_coeffs[d];
        if (b > floor) rho = std::max(rho, std::pow(b, 1.0 / d));
    }
    if (rho == 0.0) {
        diag.radius = std::numeric_limits<double>::infinity();
        diag.scalable = true;
        diag.note = "finite polynomial coefficients: scalable";
    } else {
        diag.radius = 1.0 / rho;
        diag.scalable = diag.radius >= 1.05;  // guard band over the unit radius
        diag.note = diag.scalable ? "scalable (numeric): root-test radius clears 1"
                                  : "not scalable: root-test radius at or near 1";
    }
    return diag;
}

std::string to_json(const HolomorphyReport& r) {
    nlohmann::ordered_json j;
    j["classification"] = holo_class_name(r.classification);
    j["commutator_norm"] = r.commutator_norm;
    j["comm_z_norm"] = r.comm_z_norm;
    j["comm_zbar_norm"] = r.comm_zbar_norm;
    j["scalability"] = {{"applicable", r.scalability.applicable},
                        {"antiholomorphic", r.scalability.antiholomorphic},
                        {"radius", r.scalability.radius},
                        {"scalable", r.scalability.scalable},
                        {"note", r.scalability.note}};
    j["symbol"] = nlohmann::ordered_json::parse(r.extracted_symbol.to_json());
    return j.dump();
}

std::string to_json(const HarmonicReport& r) {
    nlohmann::ordered_json j;
    j["mean_value"] = {r.mean_value.real(), r.mean_value.imag()};
    j["boundary_mean"] = {r.boundary_mean.real(), r.boundary_mean.imag()};
    j["mean_error"] = r.mean_error;
    j["op_norm"] = r.op_norm_value;
    j["boundary_sup"] = r.boundary_sup;
    j["integral_tail"] = r.integral_tail;
    j["positivity_checked"] = r.positivity_checked;
    if (r.positivity_checked) {
        j["min_eigenvalue"] = r.min_eigenvalue;
        j["boundary_min"] = r.boundary_min;
    }
    return j.dump();
}

}  // namespace qdisk::funtheory
