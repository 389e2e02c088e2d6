#include "greenlab/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "greenlab/io.hpp"
#include "greenlab/version.hpp"

namespace greenlab {

std::string to_string(EnsembleMethod m) {
    switch (m) {
        case EnsembleMethod::direct: return "direct";
        case EnsembleMethod::fredholm: return "fredholm";
        case EnsembleMethod::both: return "both";
    }
    return "direct";
}

EnsembleMethod ensemble_method_from_string(const std::string& s) {
    if (s == "direct") return EnsembleMethod::direct;
    if (s == "fredholm") return EnsembleMethod::fredholm;
    if (s == "both") return EnsembleMethod::both;
    throw UsageError("unknown method '" + s + "' (direct|fredholm|both)");
}

void parallel_for_index(int count, int workers,
                        const std::function<void(int)>& fn) {
    workers = std::max(1, workers);
    if (workers == 1 || count <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                    fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

namespace {

BrownianPath make_path(const EnsembleConfig& config, const GridPtr& grid,
                       int index) {
    if (config.path_override.empty())
        return sample_brownian(grid,
                               rng::split_stream(config.master_seed,
                                                 static_cast<std::uint64_t>(index)));
    if (config.path_override == "zero") return zero_path(grid);
    if (config.path_override.rfind("drift:", 0) == 0)
        return linear_path(grid, std::stod(config.path_override.substr(6)));
    throw UsageError("unknown path override '" + config.path_override + "'");
}

double relative_sup_distance(const GridFunction& a, const GridFunction& b) {
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < a.size(); ++i) {
        diff = std::max(diff, std::abs(a[i] - b[i]));
        scale = std::max(scale, std::abs(a[i]));
    }
    return (scale == 0.0) ? diff : diff / scale;
}

PathRecord run_one(const EnsembleConfig& config, const GridPtr& grid, int index) {
    PathRecord rec;
    rec.index = index;
    const BrownianPath path = make_path(config, grid, index);
    rec.path = describe(path);
    try {
        const Method primary = (config.method == EnsembleMethod::fredholm)
                                   ? Method::fredholm
                                   : Method::direct;
        PathSolution ps = solve_path(path, primary);
        rec.alpha = ps.wronskian.alpha;
        rec.wronskian_spread = ps.wronskian.relative_spread;
        if (config.method == EnsembleMethod::both) {
            PathSolution alt = solve_path(path, Method::fredholm);
            const double d = std::max(
                relative_sup_distance(ps.u.values, alt.u.values),
                relative_sup_distance(ps.v.values, alt.v.values));
            if (d > 5e-3) rec.flags.push_back("cross_method_fail");
        }
        if (!(rec.alpha > 0.0)) rec.flags.push_back("alpha_nonpositive");
        if (rec.wronskian_spread > 1e-2) rec.flags.push_back("high_spread");
        SpectrumResult spec = spectrum_of_L(ps.kernel, config.k);
        rec.lambdas = spec.lambdas;
        rec.ok = true;
    } catch (const NumericalError& e) {
        rec.ok = false;
        rec.error = e.what();
        rec.flags.push_back("degenerate");
    }
    return rec;
}

StatSummary summarize(std::vector<double> xs) {
    StatSummary s;
    const int m = static_cast<int>(xs.size());
    if (m == 0) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / m;
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.variance = (m > 1) ? ss / (m - 1) : 0.0;
    std::sort(xs.begin(), xs.end());
    auto quantile = [&](double p) {
        const double pos = p * (m - 1);
        const int lo = static_cast<int>(pos);
        if (lo + 1 >= m) return xs[m - 1];
        const double frac = pos - lo;
        return xs[lo] + frac * (xs[lo + 1] - xs[lo]);
    };
    s.min = xs.front();
    s.q25 = quantile(0.25);
    s.median = quantile(0.5);
    s.q75 = quantile(0.75);
    s.max = xs.back();
    return s;
}

void json_stat(std::ofstream& os, const StatSummary& s) {
    os << "{\"mean\": " << fmt17(s.mean) << ", \"variance\": " << fmt17(s.variance)
       << ", \"min\": " << fmt17(s.min) << ", \"q25\": " << fmt17(s.q25)
       << ", \"median\": " << fmt17(s.median) << ", \"q75\": " << fmt17(s.q75)
       << ", \"max\": " << fmt17(s.max) << "}";
}

std::string join_flags(const std::vector<std::string>& flags) {
    std::string out;
    for (const auto& f : flags) {
        if (!out.empty()) out += ';';
        out += f;
    }
    return out;
}

}  // namespace

EnsembleAggregates aggregate_records(const std::vector<PathRecord>& records,
                                     int k) {
    EnsembleAggregates agg;
    std::vector<double> alphas;
    std::vector<std::vector<double>> lambdas(k);
    for (const PathRecord& rec : records) {
        if (!rec.ok) {
            ++agg.excluded;
            continue;
        }
        ++agg.num_ok;
        alphas.push_back(rec.alpha);
        for (int i = 0; i < k && i < static_cast<int>(rec.lambdas.size()); ++i)
            lambdas[i].push_back(rec.lambdas[i]);
    }
    agg.alpha = summarize(std::move(alphas));
    for (int i = 0; i < k; ++i)
        agg.lambdas.push_back(summarize(std::move(lambdas[i])));
    return agg;
}

EnsembleResult run_ensemble(const EnsembleConfig& config) {
    if (config.num_paths < 1) throw UsageError("num_paths must be >= 1");
    if (config.k < 1 || config.k > config.n + 1)
        throw UsageError("k must lie in [1, n+1]");
    const GridPtr grid = make_grid(config.n);

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<PathRecord> records(config.num_paths);
    parallel_for_index(config.num_paths, config.workers,
                       [&](int i) { records[i] = run_one(config, grid, i); });
    const auto t1 = std::chrono::steady_clock::now();

    EnsembleResult result;
    result.config = config;
    result.per_path = std::move(records);
    result.aggregates = aggregate_records(result.per_path, config.k);
    result.wall_seconds = std::chrono::duration<double>(t1 - t0).count();
    result.version = kVersion;
    return result;
}

void write_results(const EnsembleResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir + "'");

    const int k = result.config.k;
    {
        const std::string file = (fs::path(dir) / "results.csv").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << "index,path,alpha,wronskian_spread";
        for (int i = 1; i <= k; ++i) os << ",lambda_" << i;
        os << ",flags,status\n";
        for (const PathRecord& rec : result.per_path) {
            os << rec.index << "," << rec.path;
            if (rec.ok) {
                os << "," << fmt17(rec.alpha) << "," << fmt17(rec.wronskian_spread);
                for (int i = 0; i < k; ++i)
                    os << ","
                       << (i < static_cast<int>(rec.lambdas.size())
                               ? fmt17(rec.lambdas[i])
                               : "");
            } else {
                for (int i = 0; i < k + 2; ++i) os << ",";
            }
            std::string status = rec.ok ? "ok" : "error: " + rec.error;
            std::replace(status.begin(), status.end(), ',', ';');
            os << "," << join_flags(rec.flags) << "," << status << "\n";
        }
        if (!os) throw IoError("failed writing '" + file + "'");
    }
    {
        const std::string file = (fs::path(dir) / "aggregates.json").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << "{\n";
        os << "  \"num_paths\": " << result.config.num_paths << ",\n";
        os << "  \"num_ok\": " << result.aggregates.num_ok << ",\n";
        os << "  \"excluded_paths\": " << result.aggregates.excluded << ",\n";
        os << "  \"alpha\": ";
        json_stat(os, result.aggregates.alpha);
        for (int i = 0; i < k; ++i) {
            os << ",\n  \"lambda_" << (i + 1) << "\": ";
            json_stat(os, result.aggregates.lambdas[i]);
        }
        os << "\n}\n";
        if (!os) throw IoError("failed writing '" + file + "'");
    }
    {
        const std::string file = (fs::path(dir) / "manifest.json").string();
        std::ofstream os(file);
        require_writable(file, os);
        os << "{\n";
        os << "  \"artifact_version\": \"" << result.version << "\",\n";
        os << "  \"master_seed\": " << result.config.master_seed << ",\n";
        os << "  \"num_paths\": " << result.config.num_paths << ",\n";
        os << "  \"n\": " << result.config.n << ",\n";
        os << "  \"k\": " << result.config.k << ",\n";
        os << "  \"method\": \"" << to_string(result.config.method) << "\",\n";
        os << "  \"workers\": " << result.config.workers << ",\n";
        os << "  \"path_override\": ";
        json_string(os, result.config.path_override) << ",\n";
        os << "  \"wall_time_seconds\": " << fmt17(result.wall_seconds) << "\n";
        os << "}\n";
        if (!os) throw IoError("failed writing '" + file + "'");
    }
}

}  // namespace greenlab
