#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace multiplet {

struct Axis {
    std::string name;
    std::vector<double> samples;
};

/// Row-major sampled function over axis1 x axis2.  Cells whose evaluation hit
/// a degenerate denominator hold 0 with the flag set and the offending
/// modulus recorded.
struct SurfaceGrid {
    Axis axis1;
    Axis axis2;
    std::vector<double> values;
    std::vector<unsigned char> degenerate;
    std::vector<double> denominator_modulus;

    std::size_t rows() const noexcept { return axis1.samples.size(); }
    std::size_t cols() const noexcept { return axis2.samples.size(); }
    double at(std::size_t i, std::size_t j) const { return values.at(i * cols() + j); }
    bool is_degenerate(std::size_t i, std::size_t j) const {
        return degenerate.at(i * cols() + j) != 0;
    }
};

std::vector<double> linspace(double lo, double hi, std::size_t n);

/// Fills a grid by calling f(a1, a2) per cell (concurrently).  DegenerateDenominator
/// marks the cell; other errors propagate.
SurfaceGrid sample_surface(Axis axis1, Axis axis2, const std::function<double(double, double)>& f);

struct CsvColumn {
    std::string name;
    double value;
};

/// One row per cell, axis1 outermost.  `constants` are emitted as fixed
/// columns between the axes and the value.
void write_surface_csv(const SurfaceGrid& grid, std::ostream& os, const std::string& value_name,
                       const std::vector<CsvColumn>& constants = {}, bool with_degenerate = false);

/// Shortest round-trip decimal form, locale independent.
std::string format_double(double v);

}  // namespace multiplet
