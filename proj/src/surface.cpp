#include "multiplet/surface.hpp"

#include <charconv>
#include <ostream>

#include "multiplet/errors.hpp"
#include "multiplet/parallel.hpp"

namespace multiplet {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    if (n < 2) throw InvalidArgument("grid resolution must be at least 2");
    std::vector<double> out(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + step * static_cast<double>(i);
    out.back() = hi;
    return out;
}

SurfaceGrid sample_surface(Axis axis1, Axis axis2,
                           const std::function<double(double, double)>& f) {
    SurfaceGrid g;
    g.axis1 = std::move(axis1);
    g.axis2 = std::move(axis2);
    const std::size_t rows = g.rows(), cols = g.cols();
    g.values.assign(rows * cols, 0.0);
    g.degenerate.assign(rows * cols, 0);
    g.denominator_modulus.assign(rows * cols, 0.0);
    parallel_for(rows, [&](std::size_t i) {
        for (std::size_t j = 0; j < cols; ++j) {
            const std::size_t c = i * cols + j;
            try {
                g.values[c] = f(g.axis1.samples[i], g.axis2.samples[j]);
            } catch (const DegenerateDenominator& e) {
                g.degenerate[c] = 1;
                g.denominator_modulus[c] = e.modulus();
            } catch (const NonFiniteValue&) {
                g.degenerate[c] = 1;
            }
        }
    });
    return g;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_surface_csv(const SurfaceGrid& grid, std::ostream& os, const std::string& value_name,
                       const std::vector<CsvColumn>& constants, bool with_degenerate) {
    os << grid.axis1.name << ',' << grid.axis2.name;
    for (const auto& c : constants) os << ',' << c.name;
    os << ',' << value_name;
    if (with_degenerate) os << ",degenerate";
    os << '\n';
    for (std::size_t i = 0; i < grid.rows(); ++i) {
        for (std::size_t j = 0; j < grid.cols(); ++j) {
            os << format_double(grid.axis1.samples[i]) << ','
               << format_double(grid.axis2.samples[j]);
            for (const auto& c : constants) os << ',' << format_double(c.value);
            os << ',' << format_double(grid.at(i, j));
            if (with_degenerate) os << ',' << (grid.is_degenerate(i, j) ? 1 : 0);
            os << '\n';
        }
    }
}

}  // namespace multiplet
