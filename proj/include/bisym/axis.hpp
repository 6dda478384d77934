#pragma once

#include <bisym/image.hpp>
#include <bisym/lsq.hpp>

#include <span>
#include <vector>

namespace bisym {

/// Symmetry axis as a column function of the row: x(y) = a0 + a1 y + a2 y^2.
/// Degree 1 models have a2 == 0.
struct AxisModel {
    int degree = 1;
    double a0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double sr = 0.0;

    double operator()(double y) const { return a0 + a1 * y + a2 * y * y; }

    static AxisModel vertical(double column) { return AxisModel{1, column, 0.0, 0.0, 0.0}; }
};

struct MidpointSample {
    int row = 0;
    double midpoint = 0.0;
};

struct Pixel {
    int x = 0;
    int y = 0;

    friend bool operator==(const Pixel&, const Pixel&) = default;
    friend auto operator<=>(const Pixel& a, const Pixel& b) {
        return a.y != b.y ? a.y <=> b.y : a.x <=> b.x;
    }
};

struct Reflection {
    Pixel pixel;
    bool in_bounds = false;
};

/// Rounds to the nearest multiple of 0.5 (ties away from zero).
double snap_half(double v);

/// For each row holding at least two edge pixels, the mean of its leftmost and
/// rightmost edge columns. Throws InsufficientBoundaryError with fewer than
/// three such rows.
std::vector<MidpointSample> extract_midpoints(const EdgeMap& edges);

/// Least-squares axis through the midpoints. Degree 1 uses fit_line; degree 2
/// solves the three-coefficient normal system with Cramer's rule on a centred
/// and scaled row coordinate, then maps the coefficients back to raw rows.
AxisModel fit_axis(std::span<const MidpointSample> samples, int degree);

/// Horizontal mirror of p across the axis in p's row: x' = 2 snap(axis(y)) - x.
/// Points landing outside [0, width) are reported as out of bounds.
Reflection reflect_across_axis(Pixel p, const AxisModel& axis, int width);

}  // namespace bisym
