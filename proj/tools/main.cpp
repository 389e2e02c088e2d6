// Command-line front end: sample paths, solve the homogeneous problem,
// assemble the Green kernel, compute spectra, verify the operator
// identities, and drive Monte Carlo ensembles.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "greenlab/ensemble.hpp"
#include "greenlab/io.hpp"
#include "greenlab/spectrum.hpp"
#include "greenlab/version.hpp"
#include "greenlab/weak_form.hpp"

namespace fs = std::filesystem;
using namespace greenlab;

namespace {

struct PathOpts {
    int n = 2000;
    std::vector<std::uint64_t> seeds;
    bool zero = false;
    std::optional<double> drift;
    std::string path_file;
};

void add_path_options(CLI::App* cmd, PathOpts& opts, bool multi_seed) {
    cmd->add_option("--n", opts.n, "grid resolution (number of subintervals)")
        ->check(CLI::Range(2, 1000000));
    if (multi_seed)
        cmd->add_option("--seed", opts.seeds,
                        "Brownian path seed(s); repeatable");
    else
        cmd->add_option(
            "--seed",
            [&opts](const CLI::results_t& res) {
                try {
                    opts.seeds.assign(1, std::stoull(res[0]));
                } catch (const std::exception&) {
                    return false;  // CLI11 reports a conversion error
                }
                return true;
            },
            "Brownian path seed");
    cmd->add_flag("--zero", opts.zero, "use the zero path B = 0");
    cmd->add_option("--drift", opts.drift, "use the deterministic path B = c x");
    cmd->add_option("--path-file", opts.path_file,
                    "read the path from an 'x,B' CSV file");
}

int count_sources(const PathOpts& opts) {
    return (!opts.seeds.empty()) + opts.zero + opts.drift.has_value() +
           (!opts.path_file.empty());
}

void require_one_source(const PathOpts& opts) {
    if (count_sources(opts) != 1)
        throw UsageError(
            "exactly one path source among --seed, --zero, --drift, "
            "--path-file is required");
}

// Paths for every supplied source (one per seed if seeds were given).
std::vector<BrownianPath> resolve_paths(const PathOpts& opts) {
    require_one_source(opts);
    if (!opts.path_file.empty()) return {read_path_csv(opts.path_file)};
    const GridPtr grid = make_grid(opts.n);
    if (opts.zero) return {zero_path(grid)};
    if (opts.drift) return {linear_path(grid, *opts.drift)};
    std::vector<BrownianPath> out;
    for (std::uint64_t s : opts.seeds) out.push_back(sample_brownian(grid, s));
    return out;
}

Method method_from_string(const std::string& s) {
    if (s == "direct") return Method::direct;
    if (s == "fredholm") return Method::fredholm;
    throw UsageError("unknown method '" + s + "' (direct|fredholm)");
}

void json_seed_fields(std::ostream& os, const BrownianPath& path) {
    if (path.kind == PathKind::sampled)
        os << "  \"seed\": " << path.seed << ",\n";
    else
        os << "  \"seed\": null,\n";
    os << "  \"path\": ";
    json_string(os, describe(path)) << ",\n";
}

// ---------------------------------------------------------------- sample

struct SampleOpts {
    PathOpts path;
    int piecewise_m = 0;
    std::string out;
};

int run_sample(const SampleOpts& o) {
    BrownianPath path = resolve_paths(o.path).at(0);
    if (o.piecewise_m > 0) path = piecewise_linear(path, o.piecewise_m);
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw IoError("cannot create output directory '" + o.out + "'");
    write_path_csv((fs::path(o.out) / "path.csv").string(), path);
    std::cout << "wrote " << (fs::path(o.out) / "path.csv").string() << " ("
              << describe(path) << ", n=" << path.grid->n << ")\n";
    return 0;
}

// ----------------------------------------------------------- homogeneous

struct HomogeneousOpts {
    PathOpts path;
    std::string method = "direct";
    std::string out;
};

int run_homogeneous(const HomogeneousOpts& o) {
    const BrownianPath path = resolve_paths(o.path).at(0);
    const Method method = method_from_string(o.method);
    PathSolution ps = solve_path(path, method);
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw IoError("cannot create output directory '" + o.out + "'");
    const fs::path dir(o.out);
    write_grid_function_csv((dir / "u.csv").string(), ps.u.values, "u");
    write_grid_function_csv((dir / "u_prime.csv").string(),
                            ps.u.derivative_values, "u_prime");
    write_grid_function_csv((dir / "v.csv").string(), ps.v.values, "v");
    write_grid_function_csv((dir / "v_prime.csv").string(),
                            ps.v.derivative_values, "v_prime");
    {
        const std::string file = (dir / "summary.json").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << "{\n";
        os << "  \"alpha\": " << fmt17(ps.wronskian.alpha) << ",\n";
        os << "  \"spread\": " << fmt17(ps.wronskian.relative_spread) << ",\n";
        os << "  \"method\": \"" << o.method << "\",\n";
        json_seed_fields(os, path);
        os << "  \"n\": " << path.grid->n << "\n";
        os << "}\n";
        if (!os) throw IoError("failed writing '" + file + "'");
    }
    std::cout << "alpha=" << fmt17(ps.wronskian.alpha)
              << " spread=" << fmt17(ps.wronskian.relative_spread) << "\n";
    return 0;
}

// ------------------------------------------------------------------ green

struct GreenOpts {
    PathOpts path;
    std::string method = "direct";
    std::string out;
};

int run_green(const GreenOpts& o) {
    const BrownianPath path = resolve_paths(o.path).at(0);
    PathSolution ps = solve_path(path, method_from_string(o.method));
    std::error_code ec;
    fs::create_directories(o.out, ec);
    if (ec) throw IoError("cannot create output directory '" + o.out + "'");
    const fs::path dir(o.out);
    write_green_csv((dir / "green.csv").string(), ps.kernel);
    {
        const std::string file = (dir / "green.json").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << "{\n";
        os << "  \"alpha\": " << fmt17(ps.wronskian.alpha) << ",\n";
        json_seed_fields(os, path);
        os << "  \"n\": " << path.grid->n << "\n";
        os << "}\n";
        if (!os) throw IoError("failed writing '" + file + "'");
    }
    std::cout << "wrote " << (dir / "green.csv").string() << " (alpha="
              << fmt17(ps.wronskian.alpha) << ")\n";
    return 0;
}

// --------------------------------------------------------------- spectrum

struct SpectrumOpts {
    PathOpts path;
    std::string method = "direct";
    int k = 5;
    bool eigenfunctions = false;
    std::string out;
};

int run_spectrum(const SpectrumOpts& o) {
    const BrownianPath path = resolve_paths(o.path).at(0);
    PathSolution ps = solve_path(path, method_from_string(o.method));
    SpectrumResult spec = spectrum_of_L(ps.kernel, o.k);

    std::string table = "index,beta,lambda\n";
    for (size_t i = 0; i < spec.lambdas.size(); ++i)
        table += std::to_string(i + 1) + "," + fmt17(spec.betas[i]) + "," +
                 fmt17(spec.lambdas[i]) + "\n";
    std::cout << table;

    if (!o.out.empty()) {
        std::error_code ec;
        fs::create_directories(o.out, ec);
        if (ec) throw IoError("cannot create output directory '" + o.out + "'");
        const fs::path dir(o.out);
        const std::string file = (dir / "spectrum.csv").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << table;
        if (!os) throw IoError("failed writing '" + file + "'");
        if (o.eigenfunctions)
            for (size_t i = 0; i < spec.eigenfunctions.size(); ++i)
                write_grid_function_csv(
                    (dir / ("eigenfunction_" + std::to_string(i + 1) + ".csv"))
                        .string(),
                    spec.eigenfunctions[i], "e");
    }
    return 0;
}

// ----------------------------------------------------------------- verify

struct VerifyOpts {
    PathOpts path;
    std::string method = "direct";
    std::string out;
};

struct Check {
    std::string name;
    double max_residual = 0.0;
    double threshold = 0.0;
    bool pass = true;

    void update(double r) { max_residual = std::max(max_residual, r); }
    void finish() { pass = max_residual <= threshold; }
};

int run_verify(const VerifyOpts& o) {
    const std::vector<BrownianPath> paths = resolve_paths(o.path);
    const bool analytic_zero =
        o.path.zero;  // tight analytic thresholds only for B = 0

    Check boundary{"boundary_exactness", 0, 1e-12};
    Check spread{"wronskian_spread", 0, analytic_zero ? 1e-12 : 1e-2};
    Check alpha_pos{"alpha_positive", 0, 0.0};
    Check cross{"cross_method_agreement", 0, analytic_zero ? 1e-10 : 5e-3};
    Check right_inv{"right_inverse", 0, analytic_zero ? 1e-4 : 1e-2};
    Check tilde{"tilde_domain", 0, analytic_zero ? 1e-4 : 1e-2};
    Check ito{"ito_consistency", 0, analytic_zero ? 1e-6 : 1e-2};

    for (const BrownianPath& path : paths) {
        PathSolution ps = solve_path(path, method_from_string(o.method));
        const int n = path.grid->n;
        boundary.update(std::abs(ps.u.values[0]));
        boundary.update(std::abs(ps.u.values[n] - 1.0));
        boundary.update(std::abs(ps.v.values[0] - 1.0));
        boundary.update(std::abs(ps.v.values[n]));
        spread.update(ps.wronskian.relative_spread);
        alpha_pos.update(ps.wronskian.alpha > 0.0 ? 0.0 : 1.0);

        PathSolution alt = solve_path(path, ps.u.method == Method::direct
                                                ? Method::fredholm
                                                : Method::direct);
        double sup_u = 0, sup_du = 0, sup_v = 0, sup_dv = 0;
        for (int i = 0; i <= n; ++i) {
            sup_u = std::max(sup_u, std::abs(ps.u.values[i]));
            sup_du = std::max(sup_du, std::abs(ps.u.values[i] - alt.u.values[i]));
            sup_v = std::max(sup_v, std::abs(ps.v.values[i]));
            sup_dv = std::max(sup_dv, std::abs(ps.v.values[i] - alt.v.values[i]));
        }
        cross.update(sup_du / sup_u);
        cross.update(sup_dv / sup_v);

        const TestBasis basis = sine_basis(path.grid);
        right_inv.update(verify_right_inverse(path, ps.kernel, basis).max_residual);
        for (const GridFunction& g : basis.functions)
            tilde.update(tilde_domain_check(path, ps.kernel, g, basis).max_residual);
        for (const GridFunction& f : basis.functions)
            for (const GridFunction& g : basis.functions) {
                const double e = bilinear_form(path, f, g);
                const double w = weak_apply(path, f, g);
                ito.update(std::abs(w - e) / (1.0 + std::abs(e)));
            }
    }

    std::vector<Check*> checks = {&boundary, &spread,    &alpha_pos, &cross,
                                  &right_inv, &tilde, &ito};
    bool all_pass = true;
    for (Check* c : checks) {
        c->finish();
        all_pass = all_pass && c->pass;
    }

    std::ostringstream report;
    report << "{\n  \"n\": " << o.path.n << ",\n  \"paths\": [";
    for (size_t i = 0; i < paths.size(); ++i) {
        if (i) report << ", ";
        json_string(report, describe(paths[i]));
    }
    report << "],\n  \"checks\": {\n";
    for (size_t i = 0; i < checks.size(); ++i) {
        report << "    ";
        json_string(report, checks[i]->name)
            << ": {\"max_residual\": " << fmt17(checks[i]->max_residual)
            << ", \"threshold\": " << fmt17(checks[i]->threshold)
            << ", \"pass\": " << (checks[i]->pass ? "true" : "false") << "}"
            << (i + 1 < checks.size() ? "," : "") << "\n";
    }
    report << "  },\n  \"all_pass\": " << (all_pass ? "true" : "false")
           << "\n}\n";

    std::cout << report.str();
    if (!o.out.empty()) {
        std::error_code ec;
        fs::create_directories(o.out, ec);
        if (ec) throw IoError("cannot create output directory '" + o.out + "'");
        const std::string file = (fs::path(o.out) / "verify.json").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << report.str();
        if (!os) throw IoError("failed writing '" + file + "'");
    }
    return all_pass ? 0 : 2;
}

// --------------------------------------------------------------- ensemble

struct EnsembleOpts {
    std::string config_file;
    EnsembleConfig config;
    bool zero = false;
    std::optional<double> drift;
};

EnsembleConfig load_ensemble_config(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw IoError("cannot open config file '" + file + "'");
    nlohmann::json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + file + "': " + e.what());
    }
    EnsembleConfig c;
    c.master_seed = j.value("master_seed", std::uint64_t{0});
    c.num_paths = j.value("num_paths", 1);
    c.n = j.value("n", 2000);
    c.k = j.value("k", 5);
    c.method = ensemble_method_from_string(j.value("method", "direct"));
    c.workers = j.value("workers", 1);
    c.output_dir = j.value("output_dir", "");
    c.path_override = j.value("path_override", "");
    return c;
}

int run_ensemble_cmd(const CLI::App* cmd, EnsembleOpts& o) {
    EnsembleConfig c;
    if (!o.config_file.empty()) c = load_ensemble_config(o.config_file);
    // explicit flags override the config file
    if (cmd->count("--seed")) c.master_seed = o.config.master_seed;
    if (cmd->count("--paths")) c.num_paths = o.config.num_paths;
    if (cmd->count("--n")) c.n = o.config.n;
    if (cmd->count("--k")) c.k = o.config.k;
    if (cmd->count("--method")) c.method = o.config.method;
    if (cmd->count("--workers")) c.workers = o.config.workers;
    if (cmd->count("--out")) c.output_dir = o.config.output_dir;
    if (o.zero) c.path_override = "zero";
    if (o.drift) c.path_override = "drift:" + fmt17(*o.drift);

    if (c.output_dir.empty())
        throw UsageError("missing output directory: pass --out or set "
                         "output_dir in the config file");
    if (c.path_override.empty() && !cmd->count("--seed") &&
        o.config_file.empty())
        throw UsageError("missing --seed (master seed) for a sampled ensemble");

    EnsembleResult result = run_ensemble(c);
    write_results(result, c.output_dir);
    std::cout << "ensemble: " << result.aggregates.num_ok << "/" << c.num_paths
              << " paths ok, " << result.aggregates.excluded << " excluded";
    if (result.aggregates.num_ok > 0)
        std::cout << ", mean lambda_1 = " << fmt17(result.aggregates.lambdas[0].mean);
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "greenlab " + std::string(kVersion) +
        " - Green kernel laboratory for the random Schrodinger operator "
        "-f'' + B'f on [0,1] with Dirichlet boundary conditions"};
    app.require_subcommand(1);

    SampleOpts sample_opts;
    auto* sample_cmd = app.add_subcommand(
        "sample",
        "Sample a Brownian path and write <out>/path.csv with rows 'x,B'");
    add_path_options(sample_cmd, sample_opts.path, false);
    sample_cmd->add_option("--piecewise", sample_opts.piecewise_m,
                           "resample as the piecewise-linear approximant "
                           "through the nodes j/m (m must divide n)");
    sample_cmd->add_option("--out", sample_opts.out, "output directory")
        ->required();

    HomogeneousOpts homog_opts;
    auto* homog_cmd = app.add_subcommand(
        "homogeneous",
        "Solve the homogeneous problem; writes u.csv, u_prime.csv, v.csv, "
        "v_prime.csv ('x,<name>' rows) and summary.json "
        "{alpha, spread, method, seed, path, n}");
    add_path_options(homog_cmd, homog_opts.path, false);
    homog_cmd->add_option("--method", homog_opts.method, "direct|fredholm");
    homog_cmd->add_option("--out", homog_opts.out, "output directory")
        ->required();

    GreenOpts green_opts;
    auto* green_cmd = app.add_subcommand(
        "green",
        "Assemble the Green kernel; writes green.csv with rows 'x,y,G' over "
        "the full node lattice and green.json {alpha, seed, path, n}");
    add_path_options(green_cmd, green_opts.path, false);
    green_cmd->add_option("--method", green_opts.method, "direct|fredholm");
    green_cmd->add_option("--out", green_opts.out, "output directory")
        ->required();

    SpectrumOpts spectrum_opts;
    auto* spectrum_cmd = app.add_subcommand(
        "spectrum",
        "Eigenvalues of the Green operator T and of the operator itself; "
        "prints 'index,beta,lambda' rows, optionally writes spectrum.csv "
        "and eigenfunction_<i>.csv ('x,e' rows)");
    add_path_options(spectrum_cmd, spectrum_opts.path, false);
    spectrum_cmd->add_option("--k", spectrum_opts.k, "number of eigenvalues")
        ->check(CLI::PositiveNumber);
    spectrum_cmd->add_option("--method", spectrum_opts.method,
                             "direct|fredholm");
    spectrum_cmd->add_flag("--eigenfunctions", spectrum_opts.eigenfunctions,
                           "also write per-eigenfunction CSVs");
    spectrum_cmd->add_option("--out", spectrum_opts.out,
                             "output directory (optional)");

    VerifyOpts verify_opts;
    auto* verify_cmd = app.add_subcommand(
        "verify",
        "Run the operator-identity suite (boundary data, Wronskian "
        "constancy, cross-method agreement, right-inverse identity, domain "
        "characterization, Ito consistency); prints a JSON report "
        "{checks: {name: {max_residual, threshold, pass}}, all_pass} and "
        "exits 0 iff all checks pass");
    add_path_options(verify_cmd, verify_opts.path, true);
    verify_cmd->add_option("--method", verify_opts.method, "direct|fredholm");
    verify_cmd->add_option("--out", verify_opts.out,
                           "also write verify.json here (optional)");

    EnsembleOpts ens_opts;
    auto* ens_cmd = app.add_subcommand(
        "ensemble",
        "Monte Carlo over derived seeds; writes results.csv (per-path "
        "index,path,alpha,wronskian_spread,lambda_i,flags,status), "
        "aggregates.json (mean/variance/quantiles of alpha and lambda_i) "
        "and manifest.json into the output directory");
    ens_cmd->add_option("--config", ens_opts.config_file,
                        "JSON config file mirroring the flag names");
    ens_cmd->add_option("--seed", ens_opts.config.master_seed, "master seed");
    ens_cmd->add_option("--paths", ens_opts.config.num_paths,
                        "number of Monte Carlo paths")
        ->check(CLI::PositiveNumber);
    ens_cmd->add_option("--n", ens_opts.config.n, "grid resolution")
        ->check(CLI::Range(2, 1000000));
    ens_cmd->add_option("--k", ens_opts.config.k, "eigenvalues per path")
        ->check(CLI::PositiveNumber);
    ens_cmd
        ->add_option(
            "--method",
            [&ens_opts](const CLI::results_t& res) {
                ens_opts.config.method = ensemble_method_from_string(res[0]);
                return true;
            },
            "direct|fredholm|both")
        ->expected(1);
    ens_cmd->add_option("--workers", ens_opts.config.workers, "worker threads")
        ->check(CLI::PositiveNumber);
    ens_cmd->add_option("--out", ens_opts.config.output_dir,
                        "output directory");
    ens_cmd->add_flag("--zero", ens_opts.zero,
                      "override every path with B = 0 (sanity runs)");
    ens_cmd->add_option("--drift", ens_opts.drift,
                        "override every path with B = c x");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(sample_cmd)) return run_sample(sample_opts);
        if (app.got_subcommand(homog_cmd)) return run_homogeneous(homog_opts);
        if (app.got_subcommand(green_cmd)) return run_green(green_opts);
        if (app.got_subcommand(spectrum_cmd)) return run_spectrum(spectrum_opts);
        if (app.got_subcommand(verify_cmd)) return run_verify(verify_opts);
        if (app.got_subcommand(ens_cmd)) return run_ensemble_cmd(ens_cmd, ens_opts);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
