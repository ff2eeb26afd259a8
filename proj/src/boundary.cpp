#include "qdisk/boundary.hpp"

#include <nlohmann/json.hpp>

namespace qdisk {

BoundaryFunction BoundaryFunction::poisson_kernel(double pole, double floor, int max_band) {
    if (!(std::abs(pole) < 1.0)) throw DomainError("poisson_kernel: pole must satisfy |a| < 1");
    BoundaryFunction f;
    f.fourier[0] = 1.0;
    double p = 1.0;
    for (int d = 1; d <= max_band; ++d) {
        p *= pole;
        if (std::abs(p) < floor) break;
        f.fourier[d] = p;
        f.fourier[-d] = p;
    }
    return f;
}

std::string BoundaryFunction::to_json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [d, c] : fourier) j[std::to_string(d)] = {c.real(), c.imag()};
    return j.dump();
}

BoundaryFunction BoundaryFunction::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("boundary JSON parse error: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("boundary JSON must be an object {\"d\": [re, im], ...}");
    BoundaryFunction f;
    for (auto it = j.begin(); it != j.end(); ++it) {
        int d = 0;
        try {
            d = std::stoi(it.key());
        } catch (const std::exception&) {
            throw ConfigError("boundary JSON key is not an integer mode: '" + it.key() + "'");
        }
        const auto& v = it.value();
        if (!v.is_array() || v.size() != 2)
            throw ConfigError("boundary JSON value for mode " + it.key() + " must be [re, im]");
        f.fourier[d] = {v[0].get<double>(), v[1].get<double>()};
    }
    return f;
}

DiskSymbol DiskSymbol::from_boundary(const BoundaryFunction& f) {
    DiskSymbol s;
    s.bandwidth = f.bandwidth();
    bool holo = true;
    for (const auto& [d, c] : f.fourier)
        if (d < 0 && std::abs(c) > 0) holo = false;
    s.holomorphic = holo;
    s.eval = [f](std::complex<double> zeta) { return f.harmonic_extension(zeta); };
    return s;
}

DiskSymbol DiskSymbol::monomial(int m, int n) {
    DiskSymbol s;
    s.bandwidth = std::abs(n - m);
    s.holomorphic = (m == 0);
    s.eval = [m, n](std::complex<double> zeta) {
        return std::pow(std::conj(zeta), m) * std::pow(zeta, n);
    };
    return s;
}

DiskSymbol DiskSymbol::holo_poly(std::vector<std::complex<double>> coeffs) {
    DiskSymbol s;
    s.bandwidth = coeffs.empty() ? 0 : static_cast<int>(coeffs.size()) - 1;
    s.holomorphic = true;
    s.eval = [c = std::move(coeffs)](std::complex<double> zeta) {
        std::complex<double> acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * zeta + *it;
        return acc;
    };
    return s;
}

DiskSymbol DiskSymbol::constant(std::complex<double> c) {
    DiskSymbol s;
    s.bandwidth = 0;
    s.holomorphic = true;
    s.eval = [c](std::complex<double>) { return c; };
    return s;
}

}  // namespace qdisk
