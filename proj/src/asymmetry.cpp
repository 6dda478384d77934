#include <bisym/asymmetry.hpp>

#include <bisym/error.hpp>
#include <bisym/lsq.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace bisym {

std::size_t AsymmetryMap::enhanced_count() const {
    return static_cast<std::size_t>(std::ranges::count(weights_.pixels(), EdgeWeight::enhanced));
}

std::size_t AsymmetryMap::weakened_count() const {
    return static_cast<std::size_t>(std::ranges::count(weights_.pixels(), EdgeWeight::weakened));
}

EdgeMap AsymmetryMap::enhanced_mask() const {
    EdgeMap mask(width(), height());
    for (int y = 0; y < height(); ++y) {
        for (int x = 0; x < width(); ++x) {
            if (at(x, y) == EdgeWeight::enhanced) {
                mask.set(x, y);
            }
        }
    }
    return mask;
}

Region Region::from_pixels(std::vector<Pixel> pixels) {
    if (pixels.empty()) {
        throw ParameterError("region must contain at least one pixel");
    }
    std::ranges::sort(pixels);
    Region r;
    r.area_px = pixels.size();
    r.bbox = {pixels.front().x, pixels.front().y, pixels.front().x, pixels.front().y};
    double sx = 0.0;
    double sy = 0.0;
    for (const Pixel& p : pixels) {
        sx += p.x;
        sy += p.y;
        r.bbox.min_x = std::min(r.bbox.min_x, p.x);
        r.bbox.max_x = std::max(r.bbox.max_x, p.x);
        r.bbox.min_y = std::min(r.bbox.min_y, p.y);
        r.bbox.max_y = std::max(r.bbox.max_y, p.y);
    }
    const double n = static_cast<double>(pixels.size());
    r.centroid = {sx / n, sy / n};
    r.pixels = std::move(pixels);
    return r;
}

AsymmetryMap asymmetry_map(const EdgeMap& edges, const AxisModel& axis, int tol) {
    if (tol < 0) {
        throw ParameterError("asymmetry tolerance must be non-negative, got " + std::to_string(tol));
    }
    AsymmetryMap map(edges.width(), edges.height());
    for (int y = 0; y < edges.height(); ++y) {
        for (int x = 0; x < edges.width(); ++x) {
            if (!edges.test(x, y)) {
                continue;
            }
            const Reflection r = reflect_across_axis({x, y}, axis, edges.width());
            bool matched = false;
            if (r.in_bounds) {
                for (int dy = -tol; dy <= tol && !matched; ++dy) {
                    for (int dx = -tol; dx <= tol && !matched; ++dx) {
                        matched = edges.test_or_false(r.pixel.x + dx, r.pixel.y + dy);
                    }
                }
            }
            map.set(x, y, matched ? EdgeWeight::weakened : EdgeWeight::enhanced);
        }
    }
    return map;
}

EdgeMap morphological_close(const EdgeMap& mask) {
    const int w = mask.width();
    const int h = mask.height();
    EdgeMap dilated(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool any = false;
            for (int dy = -1; dy <= 1 && !any; ++dy) {
                for (int dx = -1; dx <= 1 && !any; ++dx) {
                    any = mask.test_or_false(x + dx, y + dy);
                }
            }
            dilated.set(x, y, any);
        }
    }
    EdgeMap closed(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool all = true;
            for (int dy = -1; dy <= 1 && all; ++dy) {
                for (int dx = -1; dx <= 1 && all; ++dx) {
                    const int nx = x + dx;
                    const int ny = y + dy;
                    all = !dilated.contains(nx, ny) || dilated.test(nx, ny);
                }
            }
            closed.set(x, y, all);
        }
    }
    return closed;
}

namespace {

void sort_regions(std::vector<Region>& regions) {
    std::ranges::stable_sort(regions, [](const Region& a, const Region& b) {
        if (a.area_px != b.area_px) {
            return a.area_px > b.area_px;
        }
        if (a.bbox.min_y != b.bbox.min_y) {
            return a.bbox.min_y < b.bbox.min_y;
        }
        return a.bbox.min_x < b.bbox.min_x;
    });
}

}  // namespace

std::vector<Region> connected_components(const EdgeMap& mask) {
    const int w = mask.width();
    const int h = mask.height();
    Grid<std::uint8_t> visited(w, h, 0);
    std::vector<Region> regions;
    std::vector<Pixel> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.test(x, y) || visited.at(x, y)) {
                continue;
            }
            std::vector<Pixel> pixels;
            visited.at(x, y) = 1;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const Pixel p = stack.back();
                stack.pop_back();
                pixels.push_back(p);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = p.x + dx;
                        const int ny = p.y + dy;
                        if (mask.test_or_false(nx, ny) && !visited.at(nx, ny)) {
                            visited.at(nx, ny) = 1;
                            stack.push_back({nx, ny});
                        }
                    }
                }
            }
            regions.push_back(Region::from_pixels(std::move(pixels)));
        }
    }
    sort_regions(regions);
    return regions;
}

Region fill_holes(const Region& region) {
    // Local frame with a one-pixel background margin around the bbox.
    const int ox = region.bbox.min_x - 1;
    const int oy = region.bbox.min_y - 1;
    const int w = region.bbox.max_x - region.bbox.min_x + 3;
    const int h = region.bbox.max_y - region.bbox.min_y + 3;
    enum : std::uint8_t { kOpen = 0, kRegion = 1, kOutside = 2 };
    Grid<std::uint8_t> cells(w, h, kOpen);
    for (const Pixel& p : region.pixels) {
        cells.at(p.x - ox, p.y - oy) = kRegion;
    }
    std::vector<Pixel> stack{{0, 0}};
    cells.at(0, 0) = kOutside;
    while (!stack.empty()) {
        const Pixel p = stack.back();
        stack.pop_back();
        const Pixel next[4] = {{p.x + 1, p.y}, {p.x - 1, p.y}, {p.x, p.y + 1}, {p.x, p.y - 1}};
        for (const Pixel& q : next) {
            if (cells.contains(q.x, q.y) && cells.at(q.x, q.y) == kOpen) {
                cells.at(q.x, q.y) = kOutside;
                stack.push_back(q);
            }
        }
    }
    std::vector<Pixel> filled;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (cells.at(x, y) != kOutside) {
                filled.push_back({x + ox, y + oy});
            }
        }
    }
    return Region::from_pixels(std::move(filled));
}

std::vector<Region> candidate_regions(const AsymmetryMap& map) {
    std::vector<Region> regions;
    for (const Region& component : connected_components(morphological_close(map.enhanced_mask()))) {
        regions.push_back(fill_holes(component));
    }
    sort_regions(regions);
    return regions;
}

std::optional<Region> select_tumor_region(std::span<const Region> regions, std::size_t min_area) {
    if (min_area < 1) {
        throw ParameterError("min_area must be at least 1");
    }
    const Region* best = nullptr;
    for (const Region& r : regions) {
        if (r.area_px >= min_area && (best == nullptr || r.area_px > best->area_px)) {
            best = &r;
        }
    }
    if (best == nullptr) {
        return std::nullopt;
    }
    return *best;
}

std::vector<Pixel> region_boundary(const Region& region) {
    const auto inside = [&](int x, int y) {
        return std::ranges::binary_search(region.pixels, Pixel{x, y});
    };
    std::vector<Pixel> boundary;
    for (const Pixel& p : region.pixels) {
        if (!inside(p.x + 1, p.y) || !inside(p.x - 1, p.y) || !inside(p.x, p.y + 1) ||
            !inside(p.x, p.y - 1)) {
            boundary.push_back(p);
        }
    }
    return boundary;
}

BoundaryCircle fit_circle(std::span<const Point2> points) {
    if (points.size() < 3) {
        throw InsufficientDataError("circle fit needs at least 3 points, got " +
                                    std::to_string(points.size()));
    }
    double mx = 0.0;
    double my = 0.0;
    for (const Point2& p : points) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(points.size());
    my /= static_cast<double>(points.size());

    std::vector<Sample> samples;
    samples.reserve(points.size());
    for (const Point2& p : points) {
        const double u = p.x - mx;
        const double v = p.y - my;
        samples.push_back({u, v, u * u + v * v});
    }
    const Vec3 c = cramer_solve(build_normal_system(samples));
    const double r2 = c[0] + 0.25 * (c[1] * c[1] + c[2] * c[2]);
    if (!(r2 > 0.0)) {
        throw SingularSystemError("circle fit produced a non-positive squared radius");
    }
    return BoundaryCircle{{mx + 0.5 * c[1], my + 0.5 * c[2]}, std::sqrt(r2)};
}

BoundaryCircle fit_boundary_circle(const Region& region) {
    std::vector<Point2> points;
    for (const Pixel& p : region_boundary(region)) {
        points.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    }
    return fit_circle(points);
}

AreaMeasure compute_area(const Region& region, Spacing spacing) {
    if (!(spacing.x > 0.0) || !(spacing.y > 0.0)) {
        throw ParameterError("pixel spacing must be positive");
    }
    return {region.area_px, static_cast<double>(region.area_px) * spacing.x * spacing.y};
}

std::vector<Pixel> rasterize_circle(int cx, int cy, int radius, int width, int height) {
    std::vector<Pixel> out;
    auto plot = [&](int x, int y) {
        if (x >= 0 && y >= 0 && x < width && y < height) {
            out.push_back({x, y});
        }
    };
    int x = radius;
    int y = 0;
    int err = 1 - radius;
    while (x >= y) {
        plot(cx + x, cy + y);
        plot(cx + y, cy + x);
        plot(cx - y, cy + x);
        plot(cx - x, cy + y);
        plot(cx - x, cy - y);
        plot(cx - y, cy - x);
        plot(cx + y, cy - x);
        plot(cx + x, cy - y);
        ++y;
        if (err < 0) {
            err += 2 * y + 1;
        } else {
            --x;
            err += 2 * (y - x) + 1;
        }
    }
    std::ranges::sort(out);
    const auto dup = std::ranges::unique(out);
    out.erase(dup.begin(), dup.end());
    return out;
}

RgbImage render_overlay(const GrayImage& image, const TumorReport& report) {
    RgbImage out = gray_to_rgb(image);
    const auto blend = [](std::uint8_t base, int target) {
        return static_cast<std::uint8_t>((base + target + 1) / 2);
    };
    if (report.detected && report.region) {
        for (const Pixel& p : report.region->pixels) {
            if (!out.contains(p.x, p.y)) {
                continue;
            }
            const std::uint8_t g = image.at(p.x, p.y);
            out.at(p.x, p.y) = Rgb{blend(g, 255), blend(g, 0), blend(g, 0)};
        }
    }
    if (report.detected && report.circle) {
        const int cx = static_cast<int>(std::lround(report.circle->center.x));
        const int cy = static_cast<int>(std::lround(report.circle->center.y));
        const int r = static_cast<int>(std::lround(report.circle->radius));
        for (const Pixel& p : rasterize_circle(cx, cy, r, out.width(), out.height())) {
            out.at(p.x, p.y) = Rgb{0, 255, 0};
        }
    }
    // A half-integer axis position lies between two columns; paint both.
    for (int y = 0; y < out.height(); ++y) {
        const double column = snap_half(report.axis(y));
        for (double c : {std::floor(column), std::ceil(column)}) {
            if (c >= 0.0 && c < out.width()) {
                out.at(static_cast<int>(c), y) = Rgb{0, 0, 255};
            }
        }
    }
    return out;
}

}  // namespace bisym
