#include "greenlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace greenlab {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void require_writable(const std::string& file, const std::ofstream& os) {
    if (!os) throw IoError("cannot open '" + file + "' for writing");
}

void write_grid_function_csv(const std::string& file, const GridFunction& f,
                             const std::string& value_column) {
    std::ofstream os(file);
    require_writable(file, os);
    os << "x," << value_column << "\n";
    const Grid& g = f.grid();
    for (int i = 0; i <= g.n; ++i)
        os << fmt17(g.nodes[i]) << "," << fmt17(f[i]) << "\n";
    if (!os) throw IoError("failed writing '" + file + "'");
}

void write_path_csv(const std::string& file, const BrownianPath& path) {
    std::ofstream os(file);
    require_writable(file, os);
    os << "x,B\n";
    const Grid& g = *path.grid;
    for (int i = 0; i <= g.n; ++i)
        os << fmt17(g.nodes[i]) << "," << fmt17(path.values[i]) << "\n";
    if (!os) throw IoError("failed writing '" + file + "'");
}

BrownianPath read_path_csv(const std::string& file) {
    std::ifstream is(file);
    if (!is) throw IoError("cannot open '" + file + "' for reading");
    std::vector<double> xs, bs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw IoError("'" + file + "': expected 'x,B' rows");
        try {
            const double x = std::stod(line.substr(0, comma));
            const double b = std::stod(line.substr(comma + 1));
            xs.push_back(x);
            bs.push_back(b);
        } catch (const std::exception&) {
            if (xs.empty()) continue;  // header line
            throw IoError("'" + file + "': unparseable row '" + line + "'");
        }
    }
    if (xs.size() < 3)
        throw IoError("'" + file + "': need at least 3 samples");
    const int n = static_cast<int>(xs.size()) - 1;
    for (int i = 0; i <= n; ++i)
        if (std::abs(xs[i] - static_cast<double>(i) / n) > 1e-9)
            throw IoError("'" + file + "': nodes are not the uniform grid i/" +
                          std::to_string(n));
    BrownianPath p = path_from_samples(make_grid(n), std::move(bs));
    p.label = "file:" + file;
    return p;
}

void write_green_csv(const std::string& file, const GreenKernel& gk) {
    std::ofstream os(file);
    require_writable(file, os);
    os << "x,y,G\n";
    const Grid& g = *gk.grid;
    for (int i = 0; i <= g.n; ++i) {
        const std::string xi = fmt17(g.nodes[i]);
        for (int j = 0; j <= g.n; ++j)
            os << xi << "," << fmt17(g.nodes[j]) << ","
               << fmt17(green_value(gk, i, j)) << "\n";
    }
    if (!os) throw IoError("failed writing '" + file + "'");
}

std::ostream& json_string(std::ostream& os, const std::string& s) {
    os << '"';
    for (char c : s) {
        switch (c) {
            case '"': os << "\\\""; break;
            case '\\': os << "\\\\"; break;
            case '\n': os << "\\n"; break;
            case '\t': os << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    os << buf;
                } else {
                    os << c;
                }
        }
    }
    return os << '"';
}

}  // namespace greenlab
