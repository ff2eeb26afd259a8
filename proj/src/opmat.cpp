#include "qdisk/opmat.hpp"

#include "qdisk/kernels.hpp"
#include "qdisk/qnum.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>

namespace qdisk::opmat {

namespace {

// shift weights w_n = sqrt(1 - q^{n+1})
std::vector<double> shift_weights(const QContext& ctx) {
    std::vector<double> w(ctx.dim);
    double qp = ctx.qf;
    for (int n = 0; n < ctx.dim; ++n) {
        w[n] = std::sqrt(1.0 - qp);
        qp *= ctx.qf;
    }
    return w;
}

cplx dot(const std::vector<cplx>& u, const std::vector<cplx>& v) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
    return s;
}

double nrm2(const std::vector<cplx>& u) { return std::sqrt(std::abs(dot(u, u))); }

double inf_norm(const TruncOp& A) {
    double best = 0.0;
    for (int i = 0; i < A.dim(); ++i) {
        double s = 0.0;
        for (int j = 0; j < A.dim(); ++j) s += std::abs(A.at(i, j));
        best = std::max(best, s);
    }
    return best;
}

int detect_band(const TruncOp& A) {
    int band = 0;
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j)
            if (A.at(i, j) != cplx(0.0)) band = std::max(band, std::abs(i - j));
    return band;
}

// [zbar, A] or [z, A], formed entrywise from the banded generator action.
// Which::partial selects [zbar, A] (the commutator entering the partial
// derivative), Which::barpartial selects [z, A].
TruncOp commutator_with_generator(const TruncOp& A, Which which) {
    const int n = A.dim();
    auto w = shift_weights(A.ctx);
    TruncOp C(A.ctx, std::max(0, A.margin - 1));
    if (which == Which::partial) {
        // [zbar, A]_{mn} = w_m A_{m+1,n} - A_{m,n-1} w_{n-1}
        for (int m = 0; m < n; ++m)
            for (int j = 0; j < n; ++j) {
                cplx up = (m + 1 < n) ? w[m] * A.at(m + 1, j) : cplx(0.0);
                cplx dn = (j >= 1) ? A.at(m, j - 1) * w[j - 1] : cplx(0.0);
                C.at(m, j) = up - dn;
            }
    } else {
        // [z, A]_{mn} = w_{m-1} A_{m-1,n} - A_{m,n+1} w_n
        for (int m = 0; m < n; ++m)
            for (int j = 0; j < n; ++j) {
                cplx up = (m >= 1) ? w[m - 1] * A.at(m - 1, j) : cplx(0.0);
                cplx dn = (j + 1 < n) ? A.at(m, j + 1) * w[j] : cplx(0.0);
                C.at(m, j) = up - dn;
            }
    }
    return C;
}

struct PowerIterResult {
    double value;
    bool converged;
    int iterations;
};

// Power iteration on the PSD map `apply`, deterministic all-ones start.
template <class Apply>
PowerIterResult power_iterate(int n, double tol, int max_iter, Apply&& apply) {
    std::vector<cplx> v(n, cplx(1.0 / std::sqrt(double(n)))), u(n);
    double lam_prev = -1.0;
    for (int restart = 0; restart < 2; ++restart) {
        for (int it = 0; it < max_iter; ++it) {
            apply(v, u);
            double lam = std::real(dot(v, u));
            double nu = nrm2(u);
            if (nu < 1e-300) return {std::max(lam, 0.0), true, it};
            for (int i = 0; i < n; ++i) v[i] = u[i] / nu;
            if (it > 0 && std::abs(lam - lam_prev) <= tol * std::max(lam, 1e-300))
                return {lam, true, it};
            lam_prev = lam;
        }
        if (restart == 0) {
            // deterministic restart with an index-weighted vector
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += double(i + 1) * double(i + 1);
            for (int i = 0; i < n; ++i) v[i] = double(i + 1) / std::sqrt(s);
            lam_prev = -1.0;
        }
    }
    return {lam_prev, false, max_iter};
}

}  // namespace

TruncOp TruncOp::identity(const QContext& ctx) {
    TruncOp I(ctx, ctx.dim);
    for (int i = 0; i < ctx.dim; ++i) I.at(i, i) = 1.0;
    return I;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& x : c) s += std::norm(x);
    return std::sqrt(s);
}

Generators build_generators(const QContext& ctx) {
    const int n = ctx.dim;
    Generators g{TruncOp(ctx, n - 1), TruncOp(ctx, n - 1), TruncOp(ctx, n)};
    auto w = shift_weights(ctx);
    double qp = 1.0;
    for (int k = 0; k < n; ++k) {
        if (k + 1 < n) {
            g.z.at(k + 1, k) = w[k];
            g.zbar.at(k, k + 1) = w[k];
        }
        g.j.at(k, k) = qp;
        qp *= ctx.qf;
    }
    return g;
}

TruncOp z_power(const QContext& ctx, int d) {
    if (d < 0) throw DomainError("z_power: negative exponent");
    TruncOp P(ctx, ctx.dim - d);
    auto w = shift_weights(ctx);
    for (int k = 0; k + d < ctx.dim; ++k) {
        double prod = 1.0;
        for (int i = 1; i <= d; ++i) prod *= w[k + i - 1];
        P.at(k + d, k) = prod;
    }
    if (d == 0) P.margin = ctx.dim;
    return P;
}

TruncOp zbar_power(const QContext& ctx, int d) {
    if (d < 0) throw DomainError("zbar_power: negative exponent");
    TruncOp P(ctx, ctx.dim - d);
    auto w = shift_weights(ctx);
    for (int k = d; k < ctx.dim; ++k) {
        double prod = 1.0;
        for (int i = 0; i < d; ++i) prod *= w[k - i - 1];
        P.at(k - d, k) = prod;
    }
    if (d == 0) P.margin = ctx.dim;
    return P;
}

TruncOp add(const TruncOp& A, const TruncOp& B) {
    if (A.dim() != B.dim()) throw DomainError("add: dimension mismatch");
    TruncOp C(A.ctx, std::min(A.margin, B.margin));
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
    return C;
}

TruncOp sub(const TruncOp& A, const TruncOp& B) {
    if (A.dim() != B.dim()) throw DomainError("sub: dimension mismatch");
    TruncOp C(A.ctx, std::min(A.margin, B.margin));
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
    return C;
}

TruncOp scale(cplx s, const TruncOp& A) {
    TruncOp C(A.ctx, A.margin);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = s * A.a[i];
    return C;
}

TruncOp multiply(const TruncOp& A, const TruncOp& B) {
    if (A.dim() != B.dim()) throw DomainError("multiply: dimension mismatch");
    TruncOp C(A.ctx, std::max(0, A.margin + B.margin - A.dim()));
    kernels::matmul(A.a.data(), B.a.data(), C.a.data(), A.dim());
    return C;
}

TruncOp adjoint_op(const TruncOp& A) {
    TruncOp C(A.ctx, A.margin);
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) C.at(j, i) = std::conj(A.at(i, j));
    return C;
}

TruncOp hermitian_part(const TruncOp& A) {
    TruncOp C(A.ctx, A.margin);
    for (int i = 0; i < A.dim(); ++i)
        for (int j = 0; j < A.dim(); ++j) C.at(i, j) = 0.5 * (A.at(i, j) + std::conj(A.at(j, i)));
    return C;
}

double interior_max_abs(const TruncOp& A, int rows) {
    if (rows < 0) rows = A.margin;
    rows = std::clamp(rows, 0, A.dim());
    double best = 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) best = std::max(best, std::abs(A.at(i, j)));
    return best;
}

double interior_max_abs_diff(const TruncOp& A, const TruncOp& B, int rows) {
    if (A.dim() != B.dim()) throw DomainError("interior_max_abs_diff: dimension mismatch");
    if (rows < 0) rows = std::min(A.margin, B.margin);
    rows = std::clamp(rows, 0, A.dim());
    double best = 0.0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j) best = std::max(best, std::abs(A.at(i, j) - B.at(i, j)));
    return best;
}

int stable_rows(const QContext& ctx, int applications, double tol) {
    if (applications <= 0) return ctx.dim;
    const double eps_floor = 64.0 * std::numeric_limits<double>::epsilon();
    if (tol <= eps_floor) return 1;
    double rows = 1.0 + std::log(tol / eps_floor) / (applications * std::log(1.0 / ctx.qf));
    return std::clamp(static_cast<int>(rows), 1, ctx.dim);
}

StructureReport structure_checks(const QContext& ctx) {
    auto g = build_generators(ctx);
    TruncOp zbz = multiply(g.zbar, g.z);
    TruncOp zzb = multiply(g.z, g.zbar);

    StructureReport r;
    const double q = ctx.qf;
    TruncOp rel = sub(zbz, scale(q, zzb));
    for (int i = 0; i < ctx.dim; ++i) rel.at(i, i) -= (1.0 - q);
    r.relation_residual = interior_max_abs(rel, ctx.dim - 2);

    TruncOp r1 = zzb, r2 = zbz;
    double qp = 1.0;
    for (int i = 0; i < ctx.dim; ++i) {
        r1.at(i, i) -= (1.0 - qp);
        r2.at(i, i) -= (1.0 - q * qp);
        qp *= q;
    }
    r.zzbar_residual = interior_max_abs(r1, ctx.dim - 2);
    r.zbarz_residual = interior_max_abs(r2, ctx.dim - 2);

    // U - V is again a weighted shift; its singular values are the absolute
    // subdiagonal entries, already in decreasing order.
    for (int k = 0; k + 1 < ctx.dim; ++k)
        r.uv_singular_values.push_back(std::abs(g.z.at(k + 1, k) - 1.0));
    return r;
}

TruncOp to_matrix(const polalg::NormalPoly& p, const QContext& ctx) {
    int deg = std::max(p.degree(), 0);
    if (deg > ctx.dim / 2)
        throw DomainError("to_matrix: polynomial degree " + std::to_string(deg) +
                          " exceeds N/2 = " + std::to_string(ctx.dim / 2));
    TruncOp out(ctx, ctx.dim - deg);
    std::vector<cplx> prod(std::size_t(ctx.dim) * ctx.dim);
    for (const auto& [key, c] : p.terms) {
        auto [m, n] = key;
        cplx coeff = c.to_complex();
        const cplx* entries = nullptr;
        TruncOp zb = zbar_power(ctx, m);
        if (n == 0) {
            entries = zb.a.data();
        } else {
            TruncOp zp = z_power(ctx, n);
            if (m == 0) {
                entries = zp.a.data();
            } else {
                kernels::matmul(zb.a.data(), zp.a.data(), prod.data(), ctx.dim);
                entries = prod.data();
            }
        }
        for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += coeff * entries[i];
    }
    return out;
}

TruncOp scale_J_matrix(const TruncOp& A) {
    const int n = A.dim();
    TruncOp C(A.ctx, A.margin);
    C.amplification = 1.0;
    std::vector<double> qpow(2 * n - 1);  // q^{d}, d = -(n-1)..(n-1)
    for (int d = -(n - 1); d <= n - 1; ++d) qpow[d + n - 1] = std::pow(A.ctx.qf, double(d));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double f = qpow[(j - i) + n - 1];
            cplx v = A.at(i, j);
            if (v != cplx(0.0)) C.amplification = std::max(C.amplification, f);
            C.at(i, j) = v * f;
        }
    if (C.amplification > 1.0 / A.ctx.tol_norm)
        C.notes.push_back("scale_J amplification " + std::to_string(C.amplification) +
                          " exceeds 1/tol_norm");
    return C;
}

Deltas build_deltas(const QContext& ctx) {
    const int n = ctx.dim;
    const double q = ctx.qf;
    Deltas d{TruncOp(ctx, n - 1), TruncOp(ctx, n - 1)};
    auto w = shift_weights(ctx);
    // bardelta e_k = (q-1)^{-1} q^{-(k+1)} w_k e_{k+1}
    double qinv = 1.0 / q;
    double qpow = qinv;
    for (int k = 0; k + 1 < n; ++k) {
        d.bardelta.at(k + 1, k) = qpow * w[k] / (q - 1.0);
        qpow *= qinv;
    }
    // delta e_k = q^{1-k} (1-q^k)^{3/2} / (1-q) e_{k-1}   (zero at k = 0)
    for (int k = 1; k < n; ++k) {
        double qk = std::pow(q, double(k));
        d.delta.at(k - 1, k) = std::pow(q, 1.0 - k) * std::pow(1.0 - qk, 1.5) / (1.0 - q);
    }
    return d;
}

TruncOp commutator_z(const TruncOp& A) { return commutator_with_generator(A, Which::barpartial); }
TruncOp commutator_zbar(const TruncOp& A) { return commutator_with_generator(A, Which::partial); }

TruncOp d_op(const TruncOp& A, Which which) {
    TruncOp C = commutator_with_generator(A, which);
    const int n = A.dim();
    const double pref = (which == Which::partial) ? 1.0 / (1.0 - A.ctx.qf) : 1.0 / (A.ctx.qf - 1.0);
    double amp = 1.0;
    double qinv = 1.0 / A.ctx.qf;
    double rowf = 1.0;
    for (int m = 0; m < n; ++m) {
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            if (C.at(m, j) != cplx(0.0)) nonzero = true;
            C.at(m, j) *= pref * rowf;
        }
        if (nonzero) amp = std::max(amp, rowf);
        rowf *= qinv;
    }
    C.amplification = amp;
    if (amp > 1.0 / A.ctx.tol_norm)
        C.notes.push_back("d_op j^{-1} amplification " + std::to_string(amp) +
                          " exceeds 1/tol_norm");
    return C;
}

cplx quadratic_form(const TruncOp& A, const StateVector& phi, Which which) {
    const int n = A.dim();
    if (static_cast<int>(phi.c.size()) != n) throw DomainError("quadratic_form: size mismatch");
    if (phi.norm() == 0.0) throw DomainError("quadratic_form: phi must be nonzero");
    TruncOp C = commutator_with_generator(A, which);
    std::vector<cplx> Cphi(n);
    kernels::matvec(C.a.data(), phi.c.data(), Cphi.data(), n);
    cplx s = 0.0;
    double qinv = 1.0 / A.ctx.qf, rowf = 1.0;
    for (int m = 0; m < n; ++m) {
        s += std::conj(phi.c[m]) * rowf * Cphi[m];  // (j^{-1} phi, C phi)
        rowf *= qinv;
    }
    double pref = (which == Which::partial) ? 1.0 / (1.0 - A.ctx.qf) : 1.0 / (A.ctx.qf - 1.0);
    return pref * s;
}

IntegralResult integral_matrix(const TruncOp& A) {
    const double q = A.ctx.qf;
    cplx s = 0.0;
    double qk = 1.0;
    for (int k = 0; k < A.dim(); ++k) {
        s += qk * A.at(k, k);
        qk *= q;
    }
    return {(1.0 - q) * s, inf_norm(A) * qk};
}

double op_norm(const TruncOp& A, double tol, int max_iter) {
    if (tol <= 0) tol = A.ctx.tol_norm;
    const int n = A.dim();
    int band = detect_band(A);
    TruncOp Ah = adjoint_op(A);
    std::vector<cplx> mid(n);
    auto apply = [&](const std::vector<cplx>& v, std::vector<cplx>& out) {
        kernels::matvec(A.a.data(), v.data(), mid.data(), n, band);
        kernels::matvec(Ah.a.data(), mid.data(), out.data(), n, band);
    };
    auto r = power_iterate(n, tol, max_iter, apply);
    if (!r.converged)
        throw Error("op_norm: power iteration did not converge after " +
                    std::to_string(max_iter) + " iterations; last iterate " +
                    std::to_string(std::sqrt(std::max(r.value, 0.0))));
    return std::sqrt(std::max(r.value, 0.0));
}

double min_eig_hermitian(const TruncOp& H, double tol, int max_iter) {
    if (tol <= 0) tol = H.ctx.tol_norm;
    const int n = H.dim();
    const double c = inf_norm(H);
    if (c == 0.0) return 0.0;
    int band = detect_band(H);
    std::vector<cplx> hv(n);
    auto apply = [&](const std::vector<cplx>& v, std::vector<cplx>& out) {
        kernels::matvec(H.a.data(), v.data(), hv.data(), n, band);
        for (int i = 0; i < n; ++i) out[i] = c * v[i] - hv[i];
    };
    auto r = power_iterate(n, tol, max_iter, apply);
    if (!r.converged)
        throw Error("min_eig_hermitian: power iteration did not converge; last iterate " +
                    std::to_string(c - r.value));
    return c - r.value;
}

TruncOp neumann_series(const TruncOp& A, int terms) {
    TruncOp sum = TruncOp::identity(A.ctx);
    TruncOp pow = TruncOp::identity(A.ctx);
    for (int k = 1; k < terms; ++k) {
        pow = multiply(pow, A);
        sum = add(sum, pow);
    }
    return sum;
}

TruncOp geometric_resolvent(const QContext& ctx, cplx c, bool antiholo, int terms) {
    TruncOp sum = TruncOp::identity(ctx);
    cplx cd = 1.0;
    for (int d = 1; d < terms; ++d) {
        cd *= c;
        TruncOp p = antiholo ? zbar_power(ctx, d) : z_power(ctx, d);
        for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += cd * p.a[i];
    }
    sum.margin = ctx.dim;
    return sum;
}

std::string to_json(const TruncOp& A) {
    nlohmann::ordered_json j;
    j["q"] = rational_to_string(A.ctx.q);
    j["N"] = A.dim();
    j["margin"] = A.margin;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& v : A.a) entries.push_back({v.real(), v.imag()});
    j["entries"] = std::move(entries);
    return j.dump();
}

TruncOp op_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("TruncOp JSON parse error: ") + e.what());
    }
    QContext ctx = QContext::make(j.at("q").get<std::string>(), j.at("N").get<int>());
    TruncOp A(ctx, j.at("margin").get<int>());
    const auto& entries = j.at("entries");
    if (entries.size() != A.a.size()) throw ConfigError("TruncOp JSON: wrong entry count");
    for (std::size_t i = 0; i < A.a.size(); ++i)
        A.a[i] = cplx(entries[i][0].get<double>(), entries[i][1].get<double>());
    return A;
}

void write_binary(const TruncOp& A, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_binary: cannot open " + path);
    char header[16] = {'Q', 'D', 'O', 'P'};
    std::uint32_t version = 1, n = static_cast<std::uint32_t>(A.dim()),
                  margin = static_cast<std::uint32_t>(A.margin);
    std::memcpy(header + 4, &version, 4);
    std::memcpy(header + 8, &n, 4);
    std::memcpy(header + 12, &margin, 4);
    out.write(header, 16);
    out.write(reinterpret_cast<const char*>(A.a.data()),
              static_cast<std::streamsize>(A.a.size() * sizeof(cplx)));
    if (!out) throw Error("write_binary: short write to " + path);
}

TruncOp read_binary(const std::string& path, const QContext& ctx) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("read_binary: cannot open " + path);
    char header[16];
    in.read(header, 16);
    if (!in || std::memcmp(header, "QDOP", 4) != 0)
        throw ConfigError("read_binary: bad header in " + path);
    std::uint32_t version = 0, n = 0, margin = 0;
    std::memcpy(&version, header + 4, 4);
    std::memcpy(&n, header + 8, 4);
    std::memcpy(&margin, header + 12, 4);
    if (version != 1) throw ConfigError("read_binary: unsupported version");
    if (static_cast<int>(n) != ctx.dim) throw ConfigError("read_binary: dimension mismatch");
    TruncOp A(ctx, static_cast<int>(margin));
    in.read(reinterpret_cast<char*>(A.a.data()),
            static_cast<std::streamsize>(A.a.size() * sizeof(cplx)));
    if (!in) throw ConfigError("read_binary: truncated file " + path);
    return A;
}

// ---------------------------------------------------------------------------
// Exact-rational matrix mode (monomial basis).
// ---------------------------------------------------------------------------

RatGenerators rat_generators(const QContext& ctx) {
    const int n = ctx.dim;
    RatGenerators g{RatOp(ctx.q, n, n - 1), RatOp(ctx.q, n, n - 1), RatOp(ctx.q, n, n)};
    Rational qp = 1;
    for (int k = 0; k < n; ++k) {
        if (k + 1 < n) g.z.at(k + 1, k) = GaussRat(Rational(1));
        if (k >= 1) g.zbar.at(k - 1, k) = GaussRat(Rational(1) - qp * ctx.q);  // 1 - q^k
        g.j.at(k, k) = GaussRat(qp);
        qp *= ctx.q;
    }
    return g;
}

RatOp rat_identity(const QContext& ctx) {
    RatOp I(ctx.q, ctx.dim, ctx.dim);
    for (int i = 0; i < ctx.dim; ++i) I.at(i, i) = GaussRat(Rational(1));
    return I;
}

RatOp rat_add(const RatOp& A, const RatOp& B) {
    if (A.dim != B.dim) throw DomainError("rat_add: dimension mismatch");
    RatOp C(A.q, A.dim, std::min(A.margin, B.margin));
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
    return C;
}

RatOp rat_sub(const RatOp& A, const RatOp& B) {
    if (A.dim != B.dim) throw DomainError("rat_sub: dimension mismatch");
    RatOp C(A.q, A.dim, std::min(A.margin, B.margin));
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
    return C;
}

RatOp rat_scale(const GaussRat& s, const RatOp& A) {
    RatOp C(A.q, A.dim, A.margin);
    for (std::size_t i = 0; i < A.a.size(); ++i) C.a[i] = s * A.a[i];
    return C;
}

RatOp rat_multiply(const RatOp& A, const RatOp& B) {
    if (A.dim != B.dim) throw DomainError("rat_multiply: dimension mismatch");
    const int n = A.dim;
    RatOp C(A.q, n, std::max(0, A.margin + B.margin - n));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const GaussRat& aik = A.at(i, k);
            if (aik.is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                const GaussRat& bkj = B.at(k, j);
                if (bkj.is_zero()) continue;
                C.at(i, j) += aik * bkj;
            }
        }
    return C;
}

RatOp rat_to_matrix(const polalg::NormalPoly& p, const QContext& ctx) {
    int deg = std::max(p.degree(), 0);
    if (deg > ctx.dim / 2) throw DomainError("rat_to_matrix: degree exceeds N/2");
    const int n = ctx.dim;
    RatOp out(ctx.q, n, n - deg);
    // zbar^m z^n zeta^k = prod_{i=0..m-1} (1 - q^{k+n-i}) zeta^{k+n-m}
    for (const auto& [key, c] : p.terms) {
        auto [m, nn] = key;
        for (int k = 0; k < n; ++k) {
            int row = k + nn - m;
            if (k + nn >= n) continue;  // raised out of the window
            if (row < 0 || row >= n) continue;
            GaussRat prod = c;
            for (int i = 0; i < m; ++i) {
                Rational f = Rational(1) - rational_pow(ctx.q, k + nn - i);
                prod = f * prod;
            }
            out.at(row, k) += prod;
        }
    }
    return out;
}

RatOp rat_d_op(const RatOp& A, Which which) {
    const int n = A.dim;
    RatOp C(A.q, n, std::max(0, A.margin - 1));
    // monomial-basis generator actions: z has unit subdiagonal, zbar has
    // superdiagonal (1 - q^k) at column k
    if (which == Which::partial) {
        // (1-q)^{-1} q^{-m} [zbar, A]
        Rational pref = Rational(1) / (Rational(1) - A.q);
        for (int m = 0; m < n; ++m) {
            Rational rowf = pref * rational_pow(A.q, -m);
            for (int j = 0; j < n; ++j) {
                GaussRat up = (m + 1 < n) ? (Rational(1) - rational_pow(A.q, m + 1)) * A.at(m + 1, j)
                                          : GaussRat();
                GaussRat dn = (j >= 1) ? (Rational(1) - rational_pow(A.q, j)) * A.at(m, j - 1)
                                       : GaussRat();
                C.at(m, j) = rowf * (up - dn);
            }
        }
    } else {
        // (q-1)^{-1} q^{-m} [z, A]
        Rational pref = Rational(1) / (A.q - Rational(1));
        for (int m = 0; m < n; ++m) {
            Rational rowf = pref * rational_pow(A.q, -m);
            for (int j = 0; j < n; ++j) {
                GaussRat up = (m >= 1) ? A.at(m - 1, j) : GaussRat();
                GaussRat dn = (j + 1 < n) ? A.at(m, j + 1) : GaussRat();
                C.at(m, j) = rowf * (up - dn);
            }
        }
    }
    return C;
}

GaussRat rat_integral(const RatOp& A) {
    GaussRat s;
    Rational qk = 1;
    for (int k = 0; k < A.dim; ++k) {
        s += qk * A.at(k, k);
        qk *= A.q;
    }
    return (Rational(1) - A.q) * s;
}

bool rat_interior_is_zero(const RatOp& A, int rows) {
    if (rows < 0) rows = A.margin;
    rows = std::clamp(rows, 0, A.dim);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
            if (!A.at(i, j).is_zero()) return false;
    return true;
}

bool rat_interior_equal(const RatOp& A, const RatOp& B, int rows) {
    if (A.dim != B.dim) return false;
    if (rows < 0) rows = std::min(A.margin, B.margin);
    rows = std::clamp(rows, 0, A.dim);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < rows; ++j)
            if (A.at(i, j) != B.at(i, j)) return false;
    return true;
}

}  // namespace qdisk::opmat
