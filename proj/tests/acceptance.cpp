// Acceptance suite: one pass/fail line per criterion.
//
//   acceptance [--criterion N] [--cli PATH]
//
// Runs every criterion when none is selected.  --cli names the greenlab
// executable (needed by criterion 9).  Exit code is the number of failed
// criteria.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "greenlab/ensemble.hpp"
#include "greenlab/io.hpp"
#include "greenlab/spectrum.hpp"
#include "greenlab/weak_form.hpp"

using namespace greenlab;
namespace fs = std::filesystem;
constexpr double pi = std::numbers::pi;

namespace {

std::string g_cli_path = "./tools/greenlab";

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

double median(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const size_t m = xs.size();
    return (m % 2) ? xs[m / 2] : 0.5 * (xs[m / 2 - 1] + xs[m / 2]);
}

double sup_diff(const GridFunction& a, const GridFunction& b) {
    double d = 0.0;
    for (int i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

double sup_norm(const GridFunction& a) {
    double d = 0.0;
    for (int i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i]));
    return d;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(4);
    os << x;
    return os.str();
}

// ------------------------------------------------------------- criterion 1
// Zero path at n=2000: G = K on the lattice to 1e-10, alpha = 1 to 1e-12,
// first three eigenvalues within 0.1% of k^2 pi^2.
Outcome criterion_1() {
    Outcome o;
    auto g = make_grid(2000);
    const PathSolution ps = solve_path(zero_path(g), Method::direct);

    double kernel_err = 0.0;
    for (int i = 0; i <= 2000; ++i)
        for (int j = 0; j <= i; ++j)
            kernel_err = std::max(kernel_err,
                                  std::abs(green_value(ps.kernel, i, j) -
                                           kernel_K(g->nodes[i], g->nodes[j])));
    o.require(kernel_err <= 1e-10, "max|G-K| = " + fmt(kernel_err));
    o.require(std::abs(ps.wronskian.alpha - 1.0) <= 1e-12,
              "alpha = " + fmt(ps.wronskian.alpha));

    const SpectrumResult spec = spectrum_of_L(ps.kernel, 3);
    for (int j = 1; j <= 3; ++j) {
        const double exact = j * j * pi * pi;
        const double rel = std::abs(spec.lambdas[j - 1] - exact) / exact;
        o.require(rel <= 1e-3,
                  "lambda_" + std::to_string(j) + " rel err " + fmt(rel));
    }
    return o;
}

// ------------------------------------------------------------- criterion 2
// Constant potential B = 4x at n=2000: u(0.5), alpha, lambda_1 against the
// sinh / shifted-Laplacian closed forms.
Outcome criterion_2() {
    Outcome o;
    auto g = make_grid(2000);
    const PathSolution ps = solve_path(linear_path(g, 4.0), Method::direct);

    const double u_exact = std::sinh(1.0) / std::sinh(2.0);
    o.require(std::abs(ps.u.values[1000] - u_exact) <= 2e-3,
              "u(0.5) = " + fmt(ps.u.values[1000]) + " vs " + fmt(u_exact));

    const double alpha_exact = 2.0 / std::sinh(2.0);
    o.require(std::abs(ps.wronskian.alpha - alpha_exact) <= 2e-3,
              "alpha = " + fmt(ps.wronskian.alpha) + " vs " + fmt(alpha_exact));

    const SpectrumResult spec = spectrum_of_L(ps.kernel, 1);
    const double l_exact = pi * pi + 4.0;
    const double rel = std::abs(spec.lambdas[0] - l_exact) / l_exact;
    o.require(rel <= 2e-3, "lambda_1 rel err " + fmt(rel));
    return o;
}

// ------------------------------------------------------------- criterion 3
// Wronskian constancy: 20 seeds at n=2000, relative spread <= 1e-2 and
// alpha > 0 for every seed.
Outcome criterion_3() {
    Outcome o;
    auto g = make_grid(2000);
    std::vector<WronskianResult> results(20);
    parallel_for_index(20, 2, [&](int i) {
        const auto [u, v] = solve_direct_pair(sample_brownian(g, i + 1));
        results[i] = wronskian(u, v);
    });
    for (int i = 0; i < 20; ++i) {
        o.require(results[i].relative_spread <= 1e-2,
                  "seed " + std::to_string(i + 1) + " spread " +
                      fmt(results[i].relative_spread));
        o.require(results[i].alpha > 0.0, "seed " + std::to_string(i + 1) +
                                              " alpha " + fmt(results[i].alpha));
    }
    return o;
}

// ------------------------------------------------------------- criterion 4
// Direct and Fredholm routes agree to 5e-3 relative sup-norm on 20 seeds.
Outcome criterion_4() {
    Outcome o;
    auto g = make_grid(2000);
    std::vector<double> worst(20);
    parallel_for_index(20, 2, [&](int i) {
        const BrownianPath p = sample_brownian(g, i + 1);
        const auto [ud, vd] = solve_direct_pair(p);
        const auto [uf, vf] = solve_fredholm_pair(p);
        worst[i] = std::max(sup_diff(ud.values, uf.values) / sup_norm(ud.values),
                            sup_diff(vd.values, vf.values) / sup_norm(vd.values));
    });
    for (int i = 0; i < 20; ++i)
        o.require(worst[i] <= 5e-3,
                  "seed " + std::to_string(i + 1) + " disagreement " +
                      fmt(worst[i]));
    return o;
}

// ------------------------------------------------------------- criterion 5
// Right-inverse identity over the 8x8 sine basis: max residual <= 1e-2 at
// n=2000 on 10 seeds, median residual falling >= 1.4x per grid doubling.
Outcome criterion_5() {
    Outcome o;
    std::vector<std::vector<double>> residuals(3, std::vector<double>(10));
    parallel_for_index(10, 2, [&](int s) {
        const BrownianPath fine = sample_brownian(make_grid(4000), s + 1);
        int gi = 0;
        for (int factor : {4, 2, 1}) {
            const BrownianPath p = coarsen(fine, factor);
            const PathSolution ps = solve_path(p, Method::direct);
            residuals[gi][s] =
                verify_right_inverse(p, ps.kernel, sine_basis(p.grid)).max_residual;
            ++gi;
        }
    });
    for (int s = 0; s < 10; ++s)
        o.require(residuals[1][s] <= 1e-2, "seed " + std::to_string(s + 1) +
                                               " residual " +
                                               fmt(residuals[1][s]));
    const double m0 = median(residuals[0]);
    const double m1 = median(residuals[1]);
    const double m2 = median(residuals[2]);
    o.require(m0 >= 1.4 * m1, "1000->2000 ratio " + fmt(m0 / m1));
    o.require(m1 >= 1.4 * m2, "2000->4000 ratio " + fmt(m1 / m2));
    o.detail += (o.detail.empty() ? "" : "; ");
    o.detail += "medians " + fmt(m0) + " / " + fmt(m1) + " / " + fmt(m2);
    return o;
}

// ------------------------------------------------------------- criterion 6
// weak_apply and bilinear_form agree within 1e-2 (relative to 1 + |E|) on
// the basis pairs at n=2000, halving under refinement.
Outcome criterion_6() {
    Outcome o;
    std::vector<std::vector<double>> worst(3, std::vector<double>(10));
    parallel_for_index(10, 2, [&](int s) {
        const BrownianPath fine = sample_brownian(make_grid(4000), s + 1);
        int gi = 0;
        for (int factor : {4, 2, 1}) {
            const BrownianPath p = coarsen(fine, factor);
            const TestBasis basis = sine_basis(p.grid);
            double w = 0.0;
            for (const GridFunction& f : basis.functions)
                for (const GridFunction& h : basis.functions) {
                    const double e = bilinear_form(p, f, h);
                    const double d = std::abs(weak_apply(p, f, h) - e);
                    w = std::max(w, d / (1.0 + std::abs(e)));
                }
            worst[gi][s] = w;
            ++gi;
        }
    });
    for (int s = 0; s < 10; ++s)
        o.require(worst[1][s] <= 1e-2,
                  "seed " + std::to_string(s + 1) + " delta " + fmt(worst[1][s]));
    const double m0 = median(worst[0]);
    const double m1 = median(worst[1]);
    const double m2 = median(worst[2]);
    o.require(m0 >= 1.4 * m1, "1000->2000 ratio " + fmt(m0 / m1));
    o.require(m1 >= 1.4 * m2, "2000->4000 ratio " + fmt(m1 / m2));
    return o;
}

// ------------------------------------------------------------- criterion 7
// Discrete spectrum: real betas, |beta| strictly decreasing, and
// beta_k k^2 pi^2 inside [0.8, 1.25] for k in [5,15] on the committed
// seeds (band confirmed by a 4000-point pilot before commitment).
Outcome criterion_7() {
    Outcome o;
    const std::vector<std::uint64_t> committed = {201, 202, 203, 204, 205};
    auto g = make_grid(2000);
    for (std::uint64_t seed : committed) {
        const PathSolution ps = solve_path(sample_brownian(g, seed), Method::direct);
        const EigenPairs pairs = eigendecompose(nystrom_matrix(ps.kernel), 15);
        for (int k = 1; k < 15; ++k)
            o.require(std::abs(pairs.values[k]) < std::abs(pairs.values[k - 1]),
                      "seed " + std::to_string(seed) + ": |beta| not strictly "
                      "decreasing at k=" + std::to_string(k + 1));
        for (int k = 5; k <= 15; ++k) {
            o.require(std::abs(pairs.values[k - 1]) > kBetaCutoff,
                      "beta_" + std::to_string(k) + " below cutoff");
            const double prod = pairs.values[k - 1] * k * k * pi * pi;
            o.require(prod >= 0.8 && prod <= 1.25,
                      "seed " + std::to_string(seed) + " beta_" +
                          std::to_string(k) + " k^2 pi^2 = " + fmt(prod));
        }
    }
    return o;
}

// ------------------------------------------------------------- criterion 8
// Piecewise-linear path approximants: median sup-distance of the solutions
// to the full-path solutions decreases monotonically over m in
// {n/16, n/4, n} at n=2000, 20 seeds.
Outcome criterion_8() {
    Outcome o;
    auto g = make_grid(2000);
    std::vector<std::vector<double>> dist(3, std::vector<double>(20));
    parallel_for_index(20, 2, [&](int s) {
        const BrownianPath p = sample_brownian(g, s + 1);
        const auto [u_full, v_full] = solve_direct_pair(p);
        int mi = 0;
        for (int m : {125, 500, 2000}) {
            const auto [u_m, v_m] = solve_direct_pair(piecewise_linear(p, m));
            dist[mi][s] = std::max(sup_diff(u_full.values, u_m.values),
                                   sup_diff(v_full.values, v_m.values));
            ++mi;
        }
    });
    const double m125 = median(dist[0]);
    const double m500 = median(dist[1]);
    const double m2000 = median(dist[2]);
    o.require(m125 > m500, "m=125 median " + fmt(m125) + " vs m=500 " + fmt(m500));
    o.require(m500 > m2000,
              "m=500 median " + fmt(m500) + " vs m=2000 " + fmt(m2000));
    o.detail = "medians " + fmt(m125) + " / " + fmt(m500) + " / " + fmt(m2000);
    return o;
}

// ------------------------------------------------------------- criterion 9
// Reproducibility: byte-identical files from identical CLI invocations,
// and ensemble aggregates invariant to the worker count (1 vs 8) at 100
// paths, n=500.
std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string manifest_without_walltime(const fs::path& p) {
    std::istringstream is(slurp(p));
    std::string line, out;
    while (std::getline(is, line))
        if (line.find("wall_time_seconds") == std::string::npos) out += line + "\n";
    return out;
}

int run_cli(const std::string& args) {
    const std::string cmd = "'" + g_cli_path + "' " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_9() {
    Outcome o;
    if (!fs::exists(g_cli_path)) {
        o.require(false, "cli binary not found at " + g_cli_path +
                             " (pass --cli)");
        return o;
    }
    const fs::path root = fs::temp_directory_path() / "greenlab_acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    // identical invocations, byte-identical files
    const std::vector<std::pair<std::string, std::string>> jobs = {
        {"sample --seed 7 --n 400 --out ", "path.csv"},
        {"homogeneous --seed 7 --n 400 --out ", "u.csv"},
        {"spectrum --seed 7 --n 400 --k 3 --out ", "spectrum.csv"},
    };
    int idx = 0;
    for (const auto& [args, check_file] : jobs) {
        const fs::path a = root / ("a" + std::to_string(idx));
        const fs::path b = root / ("b" + std::to_string(idx));
        o.require(run_cli(args + a.string()) == 0, "cli run failed: " + args);
        o.require(run_cli(args + b.string()) == 0, "cli rerun failed: " + args);
        for (const auto& entry : fs::directory_iterator(a)) {
            const fs::path name = entry.path().filename();
            o.require(slurp(a / name) == slurp(b / name),
                      name.string() + " differs between identical runs");
        }
        o.require(fs::exists(a / check_file), check_file + " missing");
        ++idx;
    }

    // worker-count invariance of the ensemble outputs
    const fs::path w1 = root / "workers1";
    const fs::path w8 = root / "workers8";
    o.require(run_cli("ensemble --seed 11 --paths 100 --n 500 --k 3 "
                      "--workers 1 --out " + w1.string()) == 0,
              "ensemble workers=1 failed");
    o.require(run_cli("ensemble --seed 11 --paths 100 --n 500 --k 3 "
                      "--workers 8 --out " + w8.string()) == 0,
              "ensemble workers=8 failed");
    o.require(slurp(w1 / "results.csv") == slurp(w8 / "results.csv"),
              "results.csv depends on the worker count");
    o.require(slurp(w1 / "aggregates.json") == slurp(w8 / "aggregates.json"),
              "aggregates.json depends on the worker count");
    const std::string m1 = manifest_without_walltime(w1 / "manifest.json");
    std::string m8 = manifest_without_walltime(w8 / "manifest.json");
    const size_t pos = m8.find("\"workers\": 8");
    o.require(pos != std::string::npos, "manifest missing workers field");
    if (pos != std::string::npos) m8.replace(pos, 12, "\"workers\": 1");
    o.require(m1 == m8, "manifest differs beyond workers/wall time");

    fs::remove_all(root);
    return o;
}

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) selected = std::atoi(argv[++i]);
        else if (arg == "--cli" && i + 1 < argc) g_cli_path = argv[++i];
        else {
            std::cerr << "usage: acceptance [--criterion N] [--cli PATH]\n";
            return 64;
        }
    }

    const std::vector<Criterion> criteria = {
        {1, "zero-path degeneration (G = K, alpha = 1, Laplacian spectrum)",
         criterion_1},
        {2, "constant-potential oracle (u(0.5), alpha, lambda_1)", criterion_2},
        {3, "Wronskian constancy and positivity on 20 seeds", criterion_3},
        {4, "direct/Fredholm cross-method agreement on 20 seeds", criterion_4},
        {5, "right-inverse identity with grid-refinement trend", criterion_5},
        {6, "Ito consistency of the weak forms", criterion_6},
        {7, "discrete spectrum band on the committed seeds", criterion_7},
        {8, "piecewise-path approximation convergence", criterion_8},
        {9, "bytewise reproducibility and worker invariance", criterion_9},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (selected != 0 && c.id != selected) continue;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": "
                  << c.name;
        if (!o.detail.empty()) std::cout << " [" << o.detail << "]";
        std::cout << std::endl;
        if (!o.pass) ++failures;
    }
    return failures;
}
