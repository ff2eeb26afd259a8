#pragma once

#include "qdisk/context.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qdisk {

/// Function on the boundary circle, held as finite Fourier data
/// f(theta) = sum_d fourier[d] e^{i d theta}, optionally with angular samples.
struct BoundaryFunction {
    std::map<int, std::complex<double>> fourier;
    std::vector<std::pair<double, std::complex<double>>> samples;  // (theta, value), optional

    int bandwidth() const {
        int b = 0;
        for (const auto& [d, c] : fourier) b = std::max(b, std::abs(d));
        return b;
    }

    std::complex<double> eval(double theta) const {
        std::complex<double> s = 0.0;
        for (const auto& [d, c] : fourier)
            s += c * std::complex<double>(std::cos(d * theta), std::sin(d * theta));
        return s;
    }

    std::complex<double> coeff(int d) const {
        auto it = fourier.find(d);
        return it == fourier.end() ? std::complex<double>(0.0) : it->second;
    }

    /// Harmonic (Poisson) extension evaluated by the Fourier route:
    /// sum_{d>=0} c_d zeta^d + sum_{d<0} c_d conj(zeta)^{|d|}.
    std::complex<double> harmonic_extension(std::complex<double> zeta) const {
        std::complex<double> s = 0.0;
        for (const auto& [d, c] : fourier)
            s += c * (d >= 0 ? std::pow(zeta, d) : std::pow(std::conj(zeta), -d));
        return s;
    }

    /// True when every stored sample matches the Fourier sum within tol.
    bool samples_consistent(double tol) const {
        for (const auto& [theta, v] : samples)
            if (std::abs(eval(theta) - v) > tol) return false;
        return true;
    }

    bool is_real_valued(double tol = 1e-12) const {
        for (const auto& [d, c] : fourier)
            if (std::abs(std::conj(c) - coeff(-d)) > tol) return false;
        return true;
    }

    /// Boundary data of the Poisson kernel at a real pole a in (-1,1):
    /// coefficients a^{|d|}, truncated once |a|^{|d|} < floor.
    static BoundaryFunction poisson_kernel(double pole, double floor = 1e-16, int max_band = 512);

    static BoundaryFunction mode(int d, std::complex<double> c = 1.0) {
        BoundaryFunction f;
        f.fourier[d] = c;
        return f;
    }

    /// JSON map {"d": [re, im], ...}.
    std::string to_json() const;
    static BoundaryFunction from_json(const std::string& text);
};

/// Symbol on the closed disk, as fed to Toeplitz quantization. The declared
/// bandwidth controls the angular-exactness guarantee (and the aliasing
/// warning); bandwidth < 0 means undeclared.
struct DiskSymbol {
    std::function<std::complex<double>(std::complex<double>)> eval;
    int bandwidth = -1;
    bool holomorphic = false;

    /// Harmonic extension of boundary Fourier data, Fourier route.
    static DiskSymbol from_boundary(const BoundaryFunction& f);

    /// zeta |-> conj(zeta)^m zeta^n.
    static DiskSymbol monomial(int m, int n);

    /// Holomorphic polynomial sum_k coeffs[k] zeta^k.
    static DiskSymbol holo_poly(std::vector<std::complex<double>> coeffs);

    static DiskSymbol constant(std::complex<double> c);
};

}  // namespace qdisk
