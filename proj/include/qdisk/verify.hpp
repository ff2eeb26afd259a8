#pragma once

#include "qdisk/boundary.hpp"
#include "qdisk/context.hpp"
#include "qdisk/polalg.hpp"

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace qdisk::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    bool skipped = false;
    double measure = 0.0;  // observed residual / error (1.0 for failed flags)
    double tol = 0.0;
    std::string detail;
};

struct CellReport {
    std::string q;
    int dim = 0;
    std::vector<CheckResult> checks;

    int failures() const;
    int run_count() const;
    bool all_pass() const { return failures() == 0; }
};

/// Seed from QDISK_SEED when set, else a fixed constant: all randomized
/// property sampling is reproducible run to run.
std::uint64_t default_seed();

/// Deterministic generators for property checks.
polalg::NormalPoly random_poly(const QContext& ctx, int max_degree, std::mt19937_64& rng);
BoundaryFunction random_boundary(int bandwidth, std::mt19937_64& rng);

std::vector<CheckResult> qnum_checks(const QContext& ctx, std::uint64_t seed);
std::vector<CheckResult> polalg_checks(const QContext& ctx, std::uint64_t seed);
std::vector<CheckResult> opmat_checks(const QContext& ctx, std::uint64_t seed);
std::vector<CheckResult> bergman_checks(const QContext& ctx, std::uint64_t seed);
std::vector<CheckResult> funtheory_checks(const QContext& ctx, std::uint64_t seed);

/// Runs the selected module suites (empty set = all) for one (q, N) cell.
CellReport run_cell(const QContext& ctx, std::uint64_t seed, const std::set<std::string>& suites);

std::string cell_to_json(const CellReport& cell);
std::string summary_csv(const std::vector<CellReport>& cells);

}  // namespace qdisk::verify
