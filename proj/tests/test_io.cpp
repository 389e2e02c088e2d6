#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "greenlab/green.hpp"
#include "greenlab/io.hpp"

using namespace greenlab;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    return fs::temp_directory_path() / ("greenlab_io_" + name);
}

}  // namespace

TEST_CASE("fmt17 round-trips doubles bitwise") {
    for (double x : {0.0, -0.0, 1.0, -1.0 / 3.0, std::numbers::pi, 1e-300,
                     6.02214076e23, 0.1, 9.869604401089358}) {
        const double back = std::stod(fmt17(x));
        CHECK(std::memcmp(&back, &x, sizeof x) == 0);
    }
}

TEST_CASE("path CSV round trip is exact") {
    const fs::path file = temp_file("path.csv");
    const BrownianPath p = sample_brownian(make_grid(50), 1234);
    write_path_csv(file.string(), p);

    const BrownianPath q = read_path_csv(file.string());
    CHECK(q.grid->n == 50);
    CHECK(q.values == p.values);
    CHECK(describe(q).rfind("file:", 0) == 0);
    fs::remove(file);
}

TEST_CASE("path CSV validation") {
    CHECK_THROWS_AS(read_path_csv("/nonexistent/greenlab.csv"), IoError);

    const fs::path nonzero = temp_file("nonzero.csv");
    std::ofstream(nonzero) << "x,B\n0,0.5\n0.5,0.2\n1,0.1\n";
    CHECK_THROWS_AS(read_path_csv(nonzero.string()), InvalidPathError);
    fs::remove(nonzero);

    const fs::path warped = temp_file("warped.csv");
    std::ofstream(warped) << "x,B\n0,0\n0.4,0.2\n1,0.1\n";
    CHECK_THROWS_AS(read_path_csv(warped.string()), IoError);
    fs::remove(warped);

    const fs::path tiny = temp_file("tiny.csv");
    std::ofstream(tiny) << "x,B\n0,0\n1,0\n";
    CHECK_THROWS_AS(read_path_csv(tiny.string()), IoError);
    fs::remove(tiny);
}

TEST_CASE("grid function CSV carries 17 significant digits") {
    const fs::path file = temp_file("gf.csv");
    auto g = make_grid(4);
    const auto f = GridFunction::sample(g, [](double x) { return std::sin(x) / 3.0; });
    write_grid_function_csv(file.string(), f, "value");

    std::ifstream is(file);
    std::string header;
    std::getline(is, header);
    CHECK(header == "x,value");
    for (int i = 0; i <= 4; ++i) {
        std::string line;
        REQUIRE(std::getline(is, line));
        const auto comma = line.find(',');
        const double x = std::stod(line.substr(0, comma));
        const double v = std::stod(line.substr(comma + 1));
        CHECK(x == g->nodes[i]);
        CHECK(v == f[i]);
    }
    fs::remove(file);
}

TEST_CASE("green CSV streams the full lattice") {
    const fs::path file = temp_file("green.csv");
    auto g = make_grid(8);
    const PathSolution ps = solve_path(zero_path(g), Method::direct);
    write_green_csv(file.string(), ps.kernel);

    std::ifstream is(file);
    std::string line;
    std::getline(is, line);
    CHECK(line == "x,y,G");
    int rows = 0;
    double mid = -1.0;
    while (std::getline(is, line)) {
        ++rows;
        if (rows == 4 * 9 + 5) {  // x = 0.5, y = 0.5
            const auto c1 = line.find(',');
            const auto c2 = line.find(',', c1 + 1);
            mid = std::stod(line.substr(c2 + 1));
        }
    }
    CHECK(rows == 81);
    CHECK(mid == doctest::Approx(0.25).epsilon(1e-12));
    fs::remove(file);
}

TEST_CASE("write failures name the file") {
    auto g = make_grid(4);
    const auto f = GridFunction::sample(g, [](double x) { return x; });
    try {
        write_grid_function_csv("/nonexistent_dir/out.csv", f);
        FAIL("expected IoError");
    } catch (const IoError& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir/out.csv") !=
              std::string::npos);
    }
}

TEST_CASE("json_string escapes control characters") {
    std::ostringstream os;
    json_string(os, "a\"b\\c\nd");
    CHECK(os.str() == "\"a\\\"b\\\\c\\nd\"");
}
