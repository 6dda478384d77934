#pragma once

#include <bisym/axis.hpp>
#include <bisym/image.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bisym {

enum class EdgeWeight : std::uint8_t { none, weakened, enhanced };

/// Edge pixels classified by whether they have a mirrored counterpart.
class AsymmetryMap {
public:
    AsymmetryMap(int width, int height) : weights_(width, height, EdgeWeight::none) {}

    int width() const noexcept { return weights_.width(); }
    int height() const noexcept { return weights_.height(); }
    EdgeWeight at(int x, int y) const { return weights_.at(x, y); }
    void set(int x, int y, EdgeWeight w) { weights_.at(x, y) = w; }

    std::size_t enhanced_count() const;
    std::size_t weakened_count() const;
    EdgeMap enhanced_mask() const;

private:
    Grid<EdgeWeight> weights_;
};

struct BoundingBox {
    int min_x = 0;
    int min_y = 0;
    int max_x = 0;
    int max_y = 0;
};

struct Region {
    std::vector<Pixel> pixels;  ///< sorted row-major
    std::size_t area_px = 0;
    Point2 centroid;
    BoundingBox bbox;

    /// Builds area, centroid and bbox from the pixel list. Throws if empty.
    static Region from_pixels(std::vector<Pixel> pixels);
};

struct BoundaryCircle {
    Point2 center;
    double radius = 0.0;
};

struct EdgeCounts {
    std::size_t roberts = 0;
    std::size_t prewitt = 0;
    std::size_t canny = 0;
};

struct Spacing {
    double x = 1.0;  ///< mm per pixel
    double y = 1.0;
};

struct AreaMeasure {
    std::size_t area_px = 0;
    double area_mm2 = 0.0;
};

struct TumorReport {
    bool detected = false;
    std::optional<Region> region;
    std::optional<BoundaryCircle> circle;
    std::size_t area_px = 0;
    double area_mm2 = 0.0;
    AxisModel axis;
    EdgeCounts edge_counts;
};

/// An edge pixel is weakened when some edge pixel lies within Chebyshev
/// distance `tol` of its reflection, enhanced otherwise (including
/// reflections that leave the image).
AsymmetryMap asymmetry_map(const EdgeMap& edges, const AxisModel& axis, int tol = 2);

/// 3x3 dilation followed by 3x3 erosion. Pixels outside the image count as
/// unset for the dilation and set for the erosion, so the result is a superset
/// of the input.
EdgeMap morphological_close(const EdgeMap& mask);

/// Maximal 8-connected components ordered by area descending, then by the
/// bbox's min y and min x.
std::vector<Region> connected_components(const EdgeMap& mask);

/// Adds every pixel enclosed by the region, i.e. not 4-connected to the
/// outside of its bounding box through non-region pixels.
Region fill_holes(const Region& region);

/// Closing, component extraction and hole filling of the enhanced edges,
/// ordered like connected_components by filled area.
std::vector<Region> candidate_regions(const AsymmetryMap& map);

/// Largest region with area >= min_area, if any.
std::optional<Region> select_tumor_region(std::span<const Region> regions, std::size_t min_area = 30);

/// Region pixels with at least one 4-neighbour outside the region.
std::vector<Pixel> region_boundary(const Region& region);

/// Algebraic circle fit x^2 + y^2 = c0 + c1 x + c2 y, solved through the 3x3
/// normal system with Cramer's rule. Coordinates are centred on their mean
/// before assembly. Throws SingularSystemError on collinear input.
BoundaryCircle fit_circle(std::span<const Point2> points);
BoundaryCircle fit_boundary_circle(const Region& region);

AreaMeasure compute_area(const Region& region, Spacing spacing = {});

/// Gray base, region tinted 50% red, fitted circle in green and the axis in
/// blue (on top).
RgbImage render_overlay(const GrayImage& image, const TumorReport& report);

/// Midpoint circle rasterization clipped to the image.
std::vector<Pixel> rasterize_circle(int cx, int cy, int radius, int width, int height);

}  // namespace bisym
