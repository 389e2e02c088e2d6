#pragma once

#include <iosfwd>
#include <ostream>
#include <string>

#include "greenlab/brownian.hpp"
#include "greenlab/green.hpp"
#include "greenlab/grid.hpp"

namespace greenlab {

// Shortest form carrying 17 significant digits: round-trips any double.
std::string fmt17(double x);

void write_grid_function_csv(const std::string& file, const GridFunction& f,
                             const std::string& value_column = "value");

void write_path_csv(const std::string& file, const BrownianPath& path);
BrownianPath read_path_csv(const std::string& file);

// Full G lattice as "x,y,G" rows, streamed.
void write_green_csv(const std::string& file, const GreenKernel& gk);

std::ostream& json_string(std::ostream& os, const std::string& s);

// Opens for writing or raises an IoError naming the path.
void require_writable(const std::string& file, const std::ofstream& os);

}  // namespace greenlab
