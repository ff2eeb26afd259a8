#pragma once

#include "qdisk/boundary.hpp"
#include "qdisk/context.hpp"
#include "qdisk/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace qdisk::polalg {

/// Exact normal-ordered polynomial sum c_{m,n} zbar^m z^n over Gaussian
/// rationals. Normal form keeps zbar powers on the left; products are
/// reordered with the inverted defining relation
///   z zbar = q^{-1} (zbar z - (1 - q)),
/// which is why q > 0 is required by the context.
struct NormalPoly {
    using Key = std::pair<int, int>;  // (m, n) = (zbar power, z power)

    QContext ctx;
    std::map<Key, GaussRat> terms;  // canonical: no zero coefficients stored

    static constexpr int kMaxDegree = 64;  // per-variable cap for exact arithmetic

    static NormalPoly zero(const QContext& ctx) { return NormalPoly{ctx, {}}; }
    static NormalPoly monomial(const QContext& ctx, int m, int n, GaussRat c = GaussRat(1));
    static NormalPoly one(const QContext& ctx) { return monomial(ctx, 0, 0); }
    static NormalPoly z(const QContext& ctx) { return monomial(ctx, 0, 1); }
    static NormalPoly zbar(const QContext& ctx) { return monomial(ctx, 1, 0); }

    void add_term(int m, int n, const GaussRat& c);
    bool is_zero() const { return terms.empty(); }
    int degree() const;  // max over terms of m + n, -1 for zero

    friend bool operator==(const NormalPoly& a, const NormalPoly& b) {
        return a.ctx.q == b.ctx.q && a.terms == b.terms;
    }
};

NormalPoly operator+(const NormalPoly& a, const NormalPoly& b);
NormalPoly operator-(const NormalPoly& a, const NormalPoly& b);
NormalPoly operator*(const GaussRat& s, const NormalPoly& p);

/// Exact product in normal order (associative, matches the operator product).
NormalPoly normal_multiply(const NormalPoly& a, const NormalPoly& b);
inline NormalPoly operator*(const NormalPoly& a, const NormalPoly& b) {
    return normal_multiply(a, b);
}

/// (zbar^m z^n)* = zbar^n z^m with conjugated coefficient.
NormalPoly adjoint(const NormalPoly& p);

/// J = j^{-1} (.) j acts termwise: zbar^m z^n -> q^{m-n} zbar^m z^n.
NormalPoly scale_J(const NormalPoly& p);

/// Monomial rules: partial(zbar^m z^n)    = q^{m-n+1} [n]_q zbar^m z^{n-1},
///                 barpartial(zbar^m z^n) = [m]_q zbar^{m-1} z^n.
NormalPoly partial(const NormalPoly& p);
NormalPoly barpartial(const NormalPoly& p);

enum class LaplacianOrder { partial_barpartial, barpartial_partial };
NormalPoly laplacian(const NormalPoly& p, LaplacianOrder order);

/// Trace-state integral: sum of diagonal coefficients c_{n,n} / [n+1]_q.
GaussRat integrate(const NormalPoly& p);

/// Boundary symbol, exact: Fourier coefficient at d is sum_{n-m=d} c_{m,n}.
std::map<int, GaussRat> exact_symbol(const NormalPoly& p);

/// Floating view of the symbol.
BoundaryFunction symbol(const NormalPoly& p);

struct GreenCheck {
    GaussRat lhs;  // integrate(barpartial(p))
    GaussRat rhs;  // Fourier coefficient of symbol(p) at d = -1
    bool pass;     // exact equality
};

/// Both sides of the q-Green identity: the trace integral of the
/// antiholomorphic derivative against the exact contour integral
/// (1/2 pi i) \oint sigma(p) d zeta of the boundary symbol.
GreenCheck green_check(const NormalPoly& p);

/// Canonical JSON form {"q":"1/2","terms":[{"m":..,"n":..,"re":"..","im":".."},..]},
/// terms ordered by (m, n); round-trips bit-exactly.
std::string to_json(const NormalPoly& p);
NormalPoly from_json(const std::string& text, int dim = 64);

}  // namespace qdisk::polalg
