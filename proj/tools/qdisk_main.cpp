#include "qdisk/bergman.hpp"
#include "qdisk/function_theory.hpp"
#include "qdisk/opmat.hpp"
#include "qdisk/polalg.hpp"
#include "qdisk/qnum.hpp"
#include "qdisk/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace qdisk;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << text;
}

std::string sanitize(const std::string& q) {
    std::string s = q;
    for (auto& c : s)
        if (c == '/') c = '_';
    return s;
}

// "poisson_kernel:0.5" | "monomial:m,n" | path to Fourier JSON
DiskSymbol parse_symbol(const std::string& spec, const QContext& ctx) {
    if (spec.rfind("poisson_kernel:", 0) == 0) {
        double pole = std::stod(spec.substr(15));
        return DiskSymbol::from_boundary(
            BoundaryFunction::poisson_kernel(pole, 1e-16, ctx.dim / 2 - 1));
    }
    if (spec.rfind("monomial:", 0) == 0) {
        auto rest = spec.substr(9);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw ConfigError("monomial symbol needs m,n");
        return DiskSymbol::monomial(std::stoi(rest.substr(0, comma)),
                                    std::stoi(rest.substr(comma + 1)));
    }
    return DiskSymbol::from_boundary(BoundaryFunction::from_json(read_file(spec)));
}

int cmd_verify(const std::vector<std::string>& q_list, const std::vector<int>& dims,
               const std::vector<std::string>& suites, const std::string& out_dir,
               double tol_identity) {
    std::set<std::string> suite_set(suites.begin(), suites.end());
    std::vector<verify::CellReport> cells;
    std::uint64_t seed = verify::default_seed();
    fs::create_directories(out_dir);
    for (const auto& qs : q_list)
        for (int dim : dims) {
            QContext ctx = QContext::make(qs, dim);
            if (tol_identity > 0) ctx.tol_identity = tol_identity;
            auto cell = verify::run_cell(ctx, seed, suite_set);
            std::string path = out_dir + "/report_q" + sanitize(qs) + "_N" + std::to_string(dim) +
                               ".json";
            write_file(path, verify::cell_to_json(cell));
            std::printf("q=%-6s N=%-4d run=%-3d failures=%d %s\n", qs.c_str(), dim,
                        cell.run_count(), cell.failures(), cell.all_pass() ? "ok" : "FAIL");
            cells.push_back(std::move(cell));
        }
    write_file(out_dir + "/summary.csv", verify::summary_csv(cells));
    for (const auto& c : cells)
        if (!c.all_pass()) return 1;
    return 0;
}

int cmd_dirichlet(const std::string& data, const std::string& q, int dim,
                  const std::string& out_prefix) {
    QContext ctx = QContext::make(q, dim);
    BoundaryFunction f =
        fs::exists(data) ? BoundaryFunction::from_json(read_file(data)) : BoundaryFunction::from_json(data);
    opmat::TruncOp A = funtheory::dirichlet_solve(f, ctx);
    auto report = funtheory::harmonic_diagnostics(A, f);
    auto est = funtheory::symbol_extract(A, f.bandwidth());
    if (!out_prefix.empty()) {
        opmat::write_binary(A, out_prefix + ".bin");
        write_file(out_prefix + ".json", opmat::to_json(A));
        write_file(out_prefix + "_report.json", funtheory::to_json(report));
        write_file(out_prefix + "_symbol.json", est.f.to_json());
    }
    std::printf("dirichlet: N=%d bandwidth=%d\n", dim, f.bandwidth());
    std::printf("  mean value      = %.12g %+.12gi (boundary mean %.12g %+.12gi)\n",
                report.mean_value.real(), report.mean_value.imag(), report.boundary_mean.real(),
                report.boundary_mean.imag());
    std::printf("  op norm         = %.12g (boundary sup %.12g)\n", report.op_norm_value,
                report.boundary_sup);
    if (report.positivity_checked)
        std::printf("  min eigenvalue  = %.12g (boundary min %.12g)\n", report.min_eigenvalue,
                    report.boundary_min);
    std::printf("  extracted symbol drift = %.3e (%s)\n", est.drift,
                est.reliable ? "reliable" : "UNRELIABLE");
    return 0;
}

int cmd_quantize(const std::string& symbol_spec, const std::string& q, int dim, int angular,
                 const std::string& out, const std::string& format,
                 const std::string& grid_csv) {
    QContext ctx = QContext::make(q, dim);
    auto grid = bergman::BergmanGrid::make(ctx, angular);
    DiskSymbol f = parse_symbol(symbol_spec, ctx);
    opmat::TruncOp T = bergman::toeplitz_quantize(f, grid, ctx);
    if (!grid_csv.empty()) write_file(grid_csv, grid.to_csv());
    if (!out.empty()) {
        if (format == "json")
            write_file(out, opmat::to_json(T));
        else
            opmat::write_binary(T, out);
    }
    std::printf("quantize: N=%d levels=%d angular=%d depth=%d", dim, grid.levels(), grid.angular,
                grid.depth);
    for (const auto& note : T.notes) std::printf(" [%s]", note.c_str());
    std::printf("\n  ||T(f)|| = %.12g\n", opmat::op_norm(T));
    return 0;
}

int cmd_derive(const std::string& in, const std::string& which, const std::string& out, int dim) {
    auto p = polalg::from_json(read_file(in), dim);
    polalg::NormalPoly result =
        which == "barpartial" ? polalg::barpartial(p) : polalg::partial(p);
    std::string text = polalg::to_json(result);
    if (out.empty())
        std::printf("%s\n", text.c_str());
    else
        write_file(out, text);
    return 0;
}

int cmd_integrate(const std::string& in, int dim) {
    auto p = polalg::from_json(read_file(in), dim);
    GaussRat exact = polalg::integrate(p);
    auto numeric = opmat::integral_matrix(opmat::to_matrix(p, p.ctx));
    std::printf("exact   = %s %s i\n", rational_to_string(exact.re).c_str(),
                rational_to_string(exact.im).c_str());
    std::printf("numeric = %.15g %+.15gi  (tail bound %.3e)\n", numeric.value.real(),
                numeric.value.imag(), numeric.tail_bound);
    std::printf("abs diff = %.3e\n", std::abs(numeric.value - exact.to_complex()));
    return 0;
}

int cmd_symbol(const std::string& in, const std::string& op_path, const std::string& q, int dim,
               const std::string& out) {
    std::string text;
    if (!op_path.empty()) {
        QContext ctx = QContext::make(q, dim);
        auto A = opmat::read_binary(op_path, ctx);
        auto est = funtheory::symbol_extract(A);
        text = est.f.to_json();
        std::printf("symbol drift = %.3e (%s)\n", est.drift,
                    est.reliable ? "reliable" : "UNRELIABLE");
    } else {
        auto p = polalg::from_json(read_file(in), dim);
        text = polalg::symbol(p).to_json();
    }
    if (out.empty())
        std::printf("%s\n", text.c_str());
    else
        write_file(out, text);
    return 0;
}

int cmd_table(const std::string& which, const std::string& q, int dim, int nmax,
              const std::string& out) {
    QContext ctx = QContext::make(q, dim);
    std::ostringstream csv;
    char buf[160];
    if (which == "integrals") {
        csv << "n,exact,numeric,abs_diff\n";
        for (int n = 0; n <= nmax; ++n) {
            Rational exact = Rational(1) / qnum::q_int(n + 1, ctx);
            auto numeric =
                opmat::integral_matrix(opmat::to_matrix(polalg::NormalPoly::monomial(ctx, n, n), ctx));
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.3e\n", n,
                          rational_to_string(exact).c_str(), numeric.value.real(),
                          std::abs(numeric.value - std::complex<double>(to_double(exact))));
            csv << buf;
        }
    } else if (which == "moments") {
        auto grid = bergman::BergmanGrid::make(ctx);
        csv << "n,exact,numeric,abs_diff\n";
        for (int n = 0; n <= nmax; ++n) {
            Rational exact = 1;
            for (int i = 0; i < n; ++i) exact *= (Rational(1) - rational_pow(ctx.q, i + 1));
            double numeric = bergman::moment(n, grid);
            std::snprintf(buf, sizeof buf, "%d,%s,%.17g,%.3e\n", n,
                          rational_to_string(exact).c_str(), numeric,
                          std::abs(numeric - to_double(exact)));
            csv << buf;
        }
    } else if (which == "green") {
        csv << "m,n,lhs,rhs,pass\n";
        for (int n = 0; n <= nmax; ++n) {
            auto g = polalg::green_check(polalg::NormalPoly::monomial(ctx, n + 1, n));
            std::snprintf(buf, sizeof buf, "%d,%d,%s,%s,%d\n", n + 1, n,
                          rational_to_string(g.lhs.re).c_str(),
                          rational_to_string(g.rhs.re).c_str(), g.pass ? 1 : 0);
            csv << buf;
        }
    } else {
        throw ConfigError("table: --which must be moments|integrals|green");
    }
    if (out.empty())
        std::printf("%s", csv.str().c_str());
    else
        write_file(out, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum unit disk toolkit: exact and truncated engines with verification"};
    app.require_subcommand(1);

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run the identity suites over a (q, N) sweep");
    std::vector<std::string> q_list{"3/10", "1/2", "9/10"};
    std::vector<int> dims{32, 64, 128};
    std::vector<std::string> suites;
    std::string out_dir = "qdisk_reports";
    double tol_identity = -1.0;
    verify_cmd->add_option("--q", q_list, "deformation parameters, exact rationals like 1/2");
    verify_cmd->add_option("--dim", dims, "truncation dimensions N");
    verify_cmd->add_option("--suite", suites, "restrict to suites: qnum polalg opmat bergman funtheory");
    verify_cmd->add_option("--out", out_dir, "report directory");
    verify_cmd->add_option("--tol", tol_identity, "override tol_identity");

    // dirichlet
    auto* dirichlet_cmd = app.add_subcommand("dirichlet", "solve the Dirichlet problem for boundary data");
    std::string data, q_single = "1/2", out_prefix;
    int dim_single = 64;
    dirichlet_cmd->add_option("--in", data, "boundary Fourier JSON (file or literal)")->required();
    dirichlet_cmd->add_option("--q", q_single, "deformation parameter");
    dirichlet_cmd->add_option("--dim", dim_single, "truncation dimension");
    dirichlet_cmd->add_option("--out", out_prefix, "output prefix for dumps and reports");

    // quantize
    auto* quantize_cmd = app.add_subcommand("quantize", "Toeplitz quantization of a symbol");
    std::string symbol_spec, q_qz = "1/2", out_qz, format = "binary", grid_csv;
    int dim_qz = 64, angular = 256;
    quantize_cmd->add_option("--symbol", symbol_spec,
                             "poisson_kernel:<pole> | monomial:<m>,<n> | Fourier JSON file")
        ->required();
    quantize_cmd->add_option("--q", q_qz, "deformation parameter");
    quantize_cmd->add_option("--dim", dim_qz, "truncation dimension");
    quantize_cmd->add_option("--angular", angular, "angular node count K");
    quantize_cmd->add_option("--out", out_qz, "output path for the operator dump");
    quantize_cmd->add_option("--format", format, "json|binary")
        ->check(CLI::IsMember({"json", "binary"}));
    quantize_cmd->add_option("--grid-csv", grid_csv, "dump the quadrature grid as CSV");

    // derive
    auto* derive_cmd = app.add_subcommand("derive", "exact partial/barpartial of a polynomial");
    std::string derive_in, derive_which = "partial", derive_out;
    int derive_dim = 64;
    derive_cmd->add_option("--in", derive_in, "NormalPoly JSON file")->required();
    derive_cmd->add_option("--which", derive_which, "partial|barpartial")
        ->check(CLI::IsMember({"partial", "barpartial"}));
    derive_cmd->add_option("--out", derive_out, "output file (stdout if omitted)");
    derive_cmd->add_option("--dim", derive_dim, "context dimension");

    // integrate
    auto* integrate_cmd = app.add_subcommand("integrate", "trace-state integral, exact vs numeric");
    std::string integrate_in;
    int integrate_dim = 64;
    integrate_cmd->add_option("--in", integrate_in, "NormalPoly JSON file")->required();
    integrate_cmd->add_option("--dim", integrate_dim, "context dimension");

    // symbol
    auto* symbol_cmd = app.add_subcommand("symbol", "boundary symbol of a polynomial or operator dump");
    std::string symbol_in, symbol_op, symbol_q = "1/2", symbol_out;
    int symbol_dim = 64;
    symbol_cmd->add_option("--in", symbol_in, "NormalPoly JSON file (exact route)");
    symbol_cmd->add_option("--op", symbol_op, "TruncOp binary dump (deep-diagonal route)");
    symbol_cmd->add_option("--q", symbol_q, "deformation parameter (for --op)");
    symbol_cmd->add_option("--dim", symbol_dim, "dimension (for --op)");
    symbol_cmd->add_option("--out", symbol_out, "output file (stdout if omitted)");

    // table
    auto* table_cmd = app.add_subcommand("table", "verification tables as CSV");
    std::string table_which = "integrals", table_q = "1/2", table_out;
    int table_dim = 64, table_n = 5;
    table_cmd->add_option("--which", table_which, "moments|integrals|green");
    table_cmd->add_option("--q", table_q, "deformation parameter");
    table_cmd->add_option("--dim", table_dim, "truncation dimension");
    table_cmd->add_option("--n", table_n, "max index");
    table_cmd->add_option("--out", table_out, "output file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify_cmd) return cmd_verify(q_list, dims, suites, out_dir, tol_identity);
        if (*dirichlet_cmd) return cmd_dirichlet(data, q_single, dim_single, out_prefix);
        if (*quantize_cmd)
            return cmd_quantize(symbol_spec, q_qz, dim_qz, angular, out_qz, format, grid_csv);
        if (*derive_cmd) return cmd_derive(derive_in, derive_which, derive_out, derive_dim);
        if (*integrate_cmd) return cmd_integrate(integrate_in, integrate_dim);
        if (*symbol_cmd) return cmd_symbol(symbol_in, symbol_op, symbol_q, symbol_dim, symbol_out);
        if (*table_cmd) return cmd_table(table_which, table_q, table_dim, table_n, table_out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
