#include "qdisk/polalg.hpp"

#include "qdisk/qnum.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace qdisk::polalg {

namespace {

void check_degree(int m, int n) {
    if (m < 0 || n < 0) throw DomainError("NormalPoly: negative exponent");
    if (m > NormalPoly::kMaxDegree || n > NormalPoly::kMaxDegree)
        throw DomainError("NormalPoly: degree cap " + std::to_string(NormalPoly::kMaxDegree) +
                          " per variable exceeded");
}

// Normal forms of z zbar^m, m = 0, 1, 2, ... built from the single-step rule
//   z zbar = alpha zbar z + beta,  alpha = 1/q,  beta = -(1-q)/q.
// S(m) = alpha * zbar . S(m-1) + beta * zbar^{m-1}.
class Reorderer {
public:
    explicit Reorderer(const QContext& ctx)
        : ctx_(ctx), alpha_(Rational(1) / ctx.q), beta_(-(Rational(1) - ctx.q) / ctx.q) {}

    // Normal form of z * P for normal-ordered P.
    NormalPoly left_mul_z(const NormalPoly& p) {
        NormalPoly out = NormalPoly::zero(ctx_);
        for (const auto& [key, c] : p.terms) {
            const auto& s = z_through(key.first);  // z zbar^m in normal order
            for (const auto& [skey, sc] : s.terms)
                out.add_term(skey.first, skey.second + key.second, c * sc);
        }
        return out;
    }

private:
    const NormalPoly& z_through(int m) {
        while (static_cast<int>(cache_.size()) <= m) {
            if (cache_.empty()) {
                cache_.push_back(NormalPoly::z(ctx_));  // z zbar^0 = z
                continue;
            }
            int k = static_cast<int>(cache_.size());
            NormalPoly next = NormalPoly::zero(ctx_);
            for (const auto& [key, c] : cache_.back().terms)
                next.add_term(key.first + 1, key.second, alpha_ * c);
            next.add_term(k - 1, 0, GaussRat(beta_));
            cache_.push_back(std::move(next));
        }
        return cache_[m];
    }

    QContext ctx_;
    Rational alpha_, beta_;
    std::vector<NormalPoly> cache_;
};

}  // namespace

NormalPoly NormalPoly::monomial(const QContext& ctx, int m, int n, GaussRat c) {
    check_degree(m, n);
    NormalPoly p{ctx, {}};
    p.add_term(m, n, c);
    return p;
}

void NormalPoly::add_term(int m, int n, const GaussRat& c) {
    check_degree(m, n);
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace({m, n}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

int NormalPoly::degree() const {
    int d = -1;
    for (const auto& [key, c] : terms) d = std::max(d, key.first + key.second);
    return d;
}

NormalPoly operator+(const NormalPoly& a, const NormalPoly& b) {
    if (!a.ctx.same_q(b.ctx)) throw DomainError("NormalPoly: mismatched contexts");
    NormalPoly out = a;
    for (const auto& [key, c] : b.terms) out.add_term(key.first, key.second, c);
    return out;
}

NormalPoly operator-(const NormalPoly& a, const NormalPoly& b) {
    if (!a.ctx.same_q(b.ctx)) throw DomainError("NormalPoly: mismatched contexts");
    NormalPoly out = a;
    for (const auto& [key, c] : b.terms) out.add_term(key.first, key.second, -c);
    return out;
}

NormalPoly operator*(const GaussRat& s, const NormalPoly& p) {
    NormalPoly out = NormalPoly::zero(p.ctx);
    for (const auto& [key, c] : p.terms) out.add_term(key.first, key.second, s * c);
    return out;
}

NormalPoly normal_multiply(const NormalPoly& a, const NormalPoly& b) {
    if (!a.ctx.same_q(b.ctx)) throw DomainError("normal_multiply: mismatched contexts");
    Reorderer rw(a.ctx);
    NormalPoly out = NormalPoly::zero(a.ctx);
    for (const auto& [ka, ca] : a.terms) {
        for (const auto& [kb, cb] : b.terms) {
            // zbar^{m1} z^{n1} zbar^{m2} z^{n2}: push z^{n1} through zbar^{m2}
            NormalPoly mid = NormalPoly::monomial(a.ctx, kb.first, 0);
            for (int i = 0; i < ka.second; ++i) mid = rw.left_mul_z(mid);
            GaussRat c = ca * cb;
            for (const auto& [km, cm] : mid.terms)
                out.add_term(km.first + ka.first, km.second + kb.second, c * cm);
        }
    }
    return out;
}

NormalPoly adjoint(const NormalPoly& p) {
    NormalPoly out = NormalPoly::zero(p.ctx);
    for (const auto& [key, c] : p.terms) out.add_term(key.second, key.first, c.conj());
    return out;
}

NormalPoly scale_J(const NormalPoly& p) {
    NormalPoly out = NormalPoly::zero(p.ctx);
    for (const auto& [key, c] : p.terms)
        out.add_term(key.first, key.second, rational_pow(p.ctx.q, key.first - key.second) * c);
    return out;
}

NormalPoly partial(const NormalPoly& p) {
    NormalPoly out = NormalPoly::zero(p.ctx);
    for (const auto& [key, c] : p.terms) {
        auto [m, n] = key;
        if (n == 0) continue;
        Rational f = rational_pow(p.ctx.q, m - n + 1) * qnum::q_int(n, p.ctx);
        out.add_term(m, n - 1, f * c);
    }
    return out;
}

NormalPoly barpartial(const NormalPoly& p) {
    NormalPoly out = NormalPoly::zero(p.ctx);
    for (const auto& [key, c] : p.terms) {
        auto [m, n] = key;
        if (m == 0) continue;
        out.add_term(m - 1, n, qnum::q_int(m, p.ctx) * c);
    }
    return out;
}

NormalPoly laplacian(const NormalPoly& p, LaplacianOrder order) {
    return order == LaplacianOrder::barpartial_partial ? barpartial(partial(p))
                                                       : partial(barpartial(p));
}

GaussRat integrate(const NormalPoly& p) {
    GaussRat total;
    for (const auto& [key, c] : p.terms) {
        if (key.first != key.second) continue;
        total += c / qnum::q_int(key.first + 1, p.ctx);
    }
    return total;
}

std::map<int, GaussRat> exact_symbol(const NormalPoly& p) {
    std::map<int, GaussRat> out;
    for (const auto& [key, c] : p.terms) {
        auto& slot = out[key.second - key.first];
        slot += c;
        if (slot.is_zero()) out.erase(key.second - key.first);
    }
    return out;
}

BoundaryFunction symbol(const NormalPoly& p) {
    BoundaryFunction f;
    for (const auto& [d, c] : exact_symbol(p)) f.fourier[d] = c.to_complex();
    return f;
}

GreenCheck green_check(const NormalPoly& p) {
    GreenCheck r;
    r.lhs = integrate(barpartial(p));
    auto sym = exact_symbol(p);
    auto it = sym.find(-1);
    r.rhs = it == sym.end() ? GaussRat() : it->second;
    r.pass = (r.lhs == r.rhs);
    return r;
}

std::string to_json(const NormalPoly& p) {
    nlohmann::ordered_json j;
    j["q"] = rational_to_string(p.ctx.q);
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [key, c] : p.terms) {
        nlohmann::ordered_json t;
        t["m"] = key.first;
        t["n"] = key.second;
        t["re"] = rational_to_string(c.re);
        t["im"] = rational_to_string(c.im);
        j["terms"].push_back(t);
    }
    return j.dump();
}

NormalPoly from_json(const std::string& text, int dim) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("NormalPoly JSON parse error: ") + e.what());
    }
    if (!j.contains("q") || !j.contains("terms"))
        throw ConfigError("NormalPoly JSON needs fields \"q\" and \"terms\"");
    QContext ctx = QContext::make(j["q"].get<std::string>(), dim);
    NormalPoly p = NormalPoly::zero(ctx);
    for (const auto& t : j["terms"]) {
        GaussRat c(rational_from_string(t["re"].get<std::string>()),
                   rational_from_string(t["im"].get<std::string>()));
        p.add_term(t["m"].get<int>(), t["n"].get<int>(), c);
    }
    return p;
}

}  // namespace qdisk::polalg
