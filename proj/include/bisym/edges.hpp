#pragma once

#include <bisym/image.hpp>

#include <string_view>
#include <vector>

namespace bisym {

enum class GradientOperator { roberts, prewitt, sobel };

GradientOperator parse_operator(std::string_view name);
std::string_view operator_name(GradientOperator op);

/// Per-pixel gradient components, magnitude and orientation (radians).
struct GradientField {
    RealImage gx;
    RealImage gy;
    RealImage magnitude;
    RealImage orientation;

    int width() const noexcept { return gx.width(); }
    int height() const noexcept { return gx.height(); }
    double max_magnitude() const;
};

struct CannyParams {
    double sigma = 1.4;
    double low = 0.1;   ///< fraction of the maximum gradient magnitude
    double high = 0.3;  ///< fraction of the maximum gradient magnitude

    void validate() const;
};

/// Borders replicate edge pixels. Roberts needs at least 2x2, the 3x3
/// operators at least 3x3.
GradientField gradient(const GrayImage& image, GradientOperator op);
GradientField gradient(const RealImage& image, GradientOperator op);

/// mask[p] = magnitude[p] >= t * max; an all-zero field yields an empty map.
EdgeMap threshold_edges(const GradientField& field, double t = 0.1);

/// Normalized Gaussian taps for offsets -R..R, R = ceil(3 sigma).
///
/// Taps are dyadic rationals k / 2^16 summing to exactly 1. Convolving an
/// 8-bit image with them is exact in double precision, which makes smoothing
/// of a constant image exact and keeps Canny invariant to intensity offsets.
std::vector<double> gaussian_kernel(double sigma);

/// Separable Gaussian blur with replicated borders.
RealImage gaussian_smooth(const GrayImage& image, double sigma);

/// Thins a gradient field to local maxima along the gradient direction,
/// quantized to 0, 45, 90 and 135 degrees. Returns the surviving magnitudes
/// (zero elsewhere).
RealImage non_maximum_suppression(const GradientField& field);

/// Gaussian smoothing, Sobel gradient, non-maximum suppression and 8-connected
/// double-threshold hysteresis.
EdgeMap canny(const GrayImage& image, const CannyParams& params = {});

}  // namespace bisym
