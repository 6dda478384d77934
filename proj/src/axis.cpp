#include <bisym/axis.hpp>

#include <bisym/error.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace bisym {

double snap_half(double v) {
    return std::round(2.0 * v) / 2.0;
}

std::vector<MidpointSample> extract_midpoints(const EdgeMap& edges) {
    std::vector<MidpointSample> samples;
    for (int y = 0; y < edges.height(); ++y) {
        int left = -1;
        int right = -1;
        for (int x = 0; x < edges.width(); ++x) {
            if (edges.test(x, y)) {
                if (left < 0) {
                    left = x;
                }
                right = x;
            }
        }
        if (left >= 0 && right > left) {
            samples.push_back({y, (left + right) / 2.0});
        }
    }
    if (samples.size() < 3) {
        throw InsufficientBoundaryError("only " + std::to_string(samples.size()) +
                                        " rows carry two or more edge pixels, need 3");
    }
    return samples;
}

AxisModel fit_axis(std::span<const MidpointSample> samples, int degree) {
    if (degree != 1 && degree != 2) {
        throw ParameterError("axis degree must be 1 or 2, got " + std::to_string(degree));
    }
    std::set<int> rows;
    for (const auto& s : samples) {
        rows.insert(s.row);
    }
    if (rows.size() < static_cast<std::size_t>(degree + 1)) {
        throw InsufficientDataError("degree " + std::to_string(degree) + " axis needs " +
                                    std::to_string(degree + 1) + " distinct rows, got " +
                                    std::to_string(rows.size()));
    }

    if (degree == 1) {
        std::vector<Point2> points;
        points.reserve(samples.size());
        for (const auto& s : samples) {
            points.push_back({static_cast<double>(s.row), s.midpoint});
        }
        const LinearFit fit = fit_line(points);
        return AxisModel{1, fit.a0, fit.a1, 0.0, fit.sr};
    }

    // Raw rows make the y^4 moment dominate the normal matrix and trip the
    // singularity tolerance, so fit on t = (row - centre) / scale.
    const double centre = (*rows.begin() + *rows.rbegin()) / 2.0;
    const double scale = std::max(1.0, (*rows.rbegin() - *rows.begin()) / 2.0);
    std::vector<Sample> scaled;
    scaled.reserve(samples.size());
    for (const auto& s : samples) {
        const double t = (s.row - centre) / scale;
        scaled.push_back({t, t * t, s.midpoint});
    }
    const LinearFit fit = fit_plane(scaled);
    const double b0 = fit.a0;
    const double b1 = fit.a1;
    const double b2 = *fit.a2;
    AxisModel axis;
    axis.degree = 2;
    axis.a2 = b2 / (scale * scale);
    axis.a1 = b1 / scale - 2.0 * b2 * centre / (scale * scale);
    axis.a0 = b0 - b1 * centre / scale + b2 * centre * centre / (scale * scale);
    axis.sr = fit.sr;
    return axis;
}

Reflection reflect_across_axis(Pixel p, const AxisModel& axis, int width) {
    const double twice = 2.0 * snap_half(axis(p.y));
    const double mirrored = std::round(twice - p.x);
    Reflection r;
    r.in_bounds = mirrored >= 0.0 && mirrored < width;
    r.pixel = {static_cast<int>(std::clamp(mirrored, -1e9, 1e9)), p.y};
    return r;
}

}  // namespace bisym
