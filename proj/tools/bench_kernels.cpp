// Benchmark comparing the serial reference kernels against the OpenMP
// variants, with a bitwise-equality cross-check on every case.

#include "qdisk/bergman.hpp"
#include "qdisk/context.hpp"
#include "qdisk/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using qdisk::kernels::cplx;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm-up
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

std::vector<cplx> random_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> m(std::size_t(n) * n);
    for (auto& v : m) v = {u(rng), u(rng)};
    return m;
}

}  // namespace

int main() {
    std::mt19937_64 rng(20250809);
#ifdef _OPENMP
    std::printf("OpenMP: %d threads\n", omp_get_max_threads());
#else
    std::printf("OpenMP: not available (parallel variants run serially)\n");
#endif
    std::printf("%-28s %10s %10s %8s %s\n", "kernel", "serial ms", "parallel ms", "speedup",
                "bitwise");

    for (int n : {128, 256, 384}) {
        auto a = random_matrix(n, rng), b = random_matrix(n, rng);
        std::vector<cplx> cs(std::size_t(n) * n), cp(std::size_t(n) * n);
        double ts = time_ms([&] { qdisk::kernels::matmul_serial(a.data(), b.data(), cs.data(), n); }, 3);
        double tp = time_ms([&] { qdisk::kernels::matmul_parallel(a.data(), b.data(), cp.data(), n); }, 3);
        bool eq = std::memcmp(cs.data(), cp.data(), cs.size() * sizeof(cplx)) == 0;
        char name[64];
        std::snprintf(name, sizeof name, "matmul n=%d", n);
        std::printf("%-28s %10.2f %10.2f %8.2fx %s\n", name, ts, tp, ts / tp,
                    eq ? "equal" : "DIFFER");
    }

    {
        auto ctx = qdisk::QContext::make("9/10", 192);
        auto grid = qdisk::bergman::BergmanGrid::make(ctx, 512);
        const int n = ctx.dim, K = grid.angular, levels = grid.levels(), width = 2 * n - 1;
        std::vector<cplx> samples(std::size_t(levels) * K);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : samples) v = {u(rng), u(rng)};
        std::vector<cplx> fs(std::size_t(levels) * width), fp(fs.size());
        double ts = time_ms(
            [&] { qdisk::kernels::angular_moments_serial(K, n, levels, samples.data(), fs.data()); }, 2);
        double tp = time_ms(
            [&] { qdisk::kernels::angular_moments_parallel(K, n, levels, samples.data(), fp.data()); },
            2);
        bool eq = std::memcmp(fs.data(), fp.data(), fs.size() * sizeof(cplx)) == 0;
        char name[64];
        std::snprintf(name, sizeof name, "angular_moments M=%d K=%d", levels, K);
        std::printf("%-28s %10.2f %10.2f %8.2fx %s\n", name, ts, tp, ts / tp,
                    eq ? "equal" : "DIFFER");

        std::vector<double> rpow(std::size_t(levels) * width);
        for (int m = 0; m < levels; ++m) {
            double p = 1.0;
            for (int s = 0; s < width; ++s) {
                rpow[std::size_t(m) * width + s] = p;
                p *= grid.radii[m];
            }
        }
        std::vector<double> invnf(n, 1.0);
        std::vector<cplx> qs(std::size_t(n) * n), qp(std::size_t(n) * n);
        ts = time_ms(
            [&] {
                qdisk::kernels::quantize_assemble_serial(n, levels, grid.weights.data(), rpow.data(),
                                                         fs.data(), invnf.data(), qs.data());
            },
            2);
        tp = time_ms(
            [&] {
                qdisk::kernels::quantize_assemble_parallel(n, levels, grid.weights.data(),
                                                           rpow.data(), fs.data(), invnf.data(),
                                                           qp.data());
            },
            2);
        eq = std::memcmp(qs.data(), qp.data(), qs.size() * sizeof(cplx)) == 0;
        std::snprintf(name, sizeof name, "quantize_assemble N=%d", n);
        std::printf("%-28s %10.2f %10.2f %8.2fx %s\n", name, ts, tp, ts / tp,
                    eq ? "equal" : "DIFFER");
    }

    {
        const int n = 512;
        auto a = random_matrix(n, rng);
        std::vector<cplx> x(n), ys(n), yp(n);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (auto& v : x) v = {u(rng), u(rng)};
        double ts = time_ms([&] { qdisk::kernels::matvec_serial(a.data(), x.data(), ys.data(), n); },
                            200);
        double tp = time_ms(
            [&] { qdisk::kernels::matvec_parallel(a.data(), x.data(), yp.data(), n); }, 200);
        bool eq = std::memcmp(ys.data(), yp.data(), ys.size() * sizeof(cplx)) == 0;
        char name[64];
        std::snprintf(name, sizeof name, "matvec n=%d", n);
        std::printf("%-28s %10.4f %10.4f %8.2fx %s\n", name, ts, tp, ts / tp,
                    eq ? "equal" : "DIFFER");
    }
    return 0;
}
