#include <bisym/edges.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace bisym {
namespace {

constexpr double kKernelScale = 65536.0;

void require_size(int width, int height, int min_side, GradientOperator op) {
    if (width < min_side || height < min_side) {
        throw DimensionError(std::string(operator_name(op)) + " needs at least " +
                             std::to_string(min_side) + "x" + std::to_string(min_side) +
                             " pixels, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
}

template <typename Image>
double sample(const Image& image, int x, int y) {
    return static_cast<double>(image.clamped(x, y));
}

template <typename Image>
GradientField compute_gradient(const Image& image, GradientOperator op) {
    const int w = image.width();
    const int h = image.height();
    require_size(w, h, op == GradientOperator::roberts ? 2 : 3, op);

    GradientField field{RealImage(w, h), RealImage(w, h), RealImage(w, h), RealImage(w, h)};
    // Side weight of the 3x3 smoothing direction: 1 for Prewitt, 2 for Sobel.
    const double centre = op == GradientOperator::sobel ? 2.0 : 1.0;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double gx = 0.0;
            double gy = 0.0;
            if (op == GradientOperator::roberts) {
                gx = sample(image, x, y) - sample(image, x + 1, y + 1);
                gy = sample(image, x + 1, y) - sample(image, x, y + 1);
            } else {
                gx = (sample(image, x + 1, y - 1) - sample(image, x - 1, y - 1)) +
                     centre * (sample(image, x + 1, y) - sample(image, x - 1, y)) +
                     (sample(image, x + 1, y + 1) - sample(image, x - 1, y + 1));
                gy = (sample(image, x - 1, y + 1) - sample(image, x - 1, y - 1)) +
                     centre * (sample(image, x, y + 1) - sample(image, x, y - 1)) +
                     (sample(image, x + 1, y + 1) - sample(image, x + 1, y - 1));
            }
            field.gx.at(x, y) = gx;
            field.gy.at(x, y) = gy;
            field.magnitude.at(x, y) = std::hypot(gx, gy);
            field.orientation.at(x, y) = std::atan2(gy, gx);
        }
    }
    return field;
}

// 0: horizontal neighbours, 1: main diagonal, 2: vertical, 3: anti-diagonal.
int direction_bin(double gx, double gy) {
    double deg = std::atan2(gy, gx) * 180.0 / std::numbers::pi;
    if (deg < 0.0) {
        deg += 180.0;
    }
    if (deg < 22.5 || deg >= 157.5) {
        return 0;
    }
    if (deg < 67.5) {
        return 1;
    }
    if (deg < 112.5) {
        return 2;
    }
    return 3;
}

}  // namespace

GradientOperator parse_operator(std::string_view name) {
    if (name == "roberts") return GradientOperator::roberts;
    if (name == "prewitt") return GradientOperator::prewitt;
    if (name == "sobel") return GradientOperator::sobel;
    throw ParameterError("unknown gradient operator '" + std::string(name) + "'");
}

std::string_view operator_name(GradientOperator op) {
    switch (op) {
        case GradientOperator::roberts: return "roberts";
        case GradientOperator::prewitt: return "prewitt";
        case GradientOperator::sobel: return "sobel";
    }
    return "unknown";
}

double GradientField::max_magnitude() const {
    const auto values = magnitude.pixels();
    return values.empty() ? 0.0 : *std::ranges::max_element(values);
}

void CannyParams::validate() const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("canny sigma must be positive, got " + std::to_string(sigma));
    }
    if (!(low > 0.0 && low < high && high <= 1.0)) {
        throw ParameterError("canny thresholds must satisfy 0 < low < high <= 1, got low=" +
                             std::to_string(low) + " high=" + std::to_string(high));
    }
}

GradientField gradient(const GrayImage& image, GradientOperator op) {
    return compute_gradient(image, op);
}

GradientField gradient(const RealImage& image, GradientOperator op) {
    return compute_gradient(image, op);
}

EdgeMap threshold_edges(const GradientField& field, double t) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw ParameterError("edge threshold must lie in (0, 1], got " + std::to_string(t));
    }
    EdgeMap map(field.width(), field.height());
    const double max = field.max_magnitude();
    if (max <= 0.0) {
        return map;
    }
    const double cut = t * max;
    for (int y = 0; y < field.height(); ++y) {
        for (int x = 0; x < field.width(); ++x) {
            if (field.magnitude.at(x, y) >= cut) {
                map.set(x, y);
            }
        }
    }
    return map;
}

std::vector<double> gaussian_kernel(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw ParameterError("gaussian sigma must be positive");
    }
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> raw(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        raw[i + radius] = std::exp(-(i * i) / (2.0 * sigma * sigma));
        total += raw[i + radius];
    }
    // Quantize symmetric taps, then let the centre tap absorb the rounding.
    std::vector<double> taps(raw.size());
    double side_sum = 0.0;
    for (int i = 1; i <= radius; ++i) {
        const double q = std::round(raw[radius + i] / total * kKernelScale);
        taps[radius + i] = q;
        taps[radius - i] = q;
        side_sum += 2.0 * q;
    }
    taps[radius] = kKernelScale - side_sum;
    for (double& t : taps) {
        t /= kKernelScale;
    }
    return taps;
}

RealImage gaussian_smooth(const GrayImage& image, double sigma) {
    const auto taps = gaussian_kernel(sigma);
    const int radius = static_cast<int>(taps.size() / 2);
    const int w = image.width();
    const int h = image.height();

    RealImage horizontal(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                acc += taps[k + radius] * image.clamped(x + k, y);
            }
            horizontal.at(x, y) = acc;
        }
    }
    RealImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                acc += taps[k + radius] * horizontal.clamped(x, y + k);
            }
            out.at(x, y) = acc;
        }
    }
    return out;
}

RealImage non_maximum_suppression(const GradientField& field) {
    static constexpr std::array<std::array<int, 2>, 4> kStep{{{1, 0}, {1, 1}, {0, 1}, {-1, 1}}};
    const int w = field.width();
    const int h = field.height();
    RealImage out(w, h, 0.0);
    auto mag = [&](int x, int y) {
        return field.magnitude.contains(x, y) ? field.magnitude.at(x, y) : 0.0;
    };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double m = field.magnitude.at(x, y);
            if (m <= 0.0) {
                continue;
            }
            const auto [dx, dy] = kStep[direction_bin(field.gx.at(x, y), field.gy.at(x, y))];
            // Strict on the backward side, inclusive on the forward side, so a
            // plateau two pixels wide keeps exactly one of them.
            if (m > mag(x - dx, y - dy) && m >= mag(x + dx, y + dy)) {
                out.at(x, y) = m;
            }
        }
    }
    return out;
}

EdgeMap canny(const GrayImage& image, const CannyParams& params) {
    params.validate();
    if (image.width() < 3 || image.height() < 3) {
        throw DimensionError("canny needs at least 3x3 pixels");
    }
    const RealImage smooth = gaussian_smooth(image, params.sigma);
    const GradientField field = gradient(smooth, GradientOperator::sobel);
    const RealImage thin = non_maximum_suppression(field);

    const int w = image.width();
    const int h = image.height();
    EdgeMap edges(w, h);
    const double max = field.max_magnitude();
    if (max <= 0.0) {
        return edges;
    }
    const double high = params.high * max;
    const double low = params.low * max;

    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (thin.at(x, y) >= high) {
                edges.set(x, y);
                stack.emplace_back(x, y);
            }
        }
    }
    while (!stack.empty()) {
        const auto [x, y] = stack.back();
        stack.pop_back();
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (!edges.contains(nx, ny) || edges.test(nx, ny)) {
                    continue;
                }
                if (thin.at(nx, ny) >= low) {
                    edges.set(nx, ny);
                    stack.emplace_back(nx, ny);
                }
            }
        }
    }
    return edges;
}

}  // namespace bisym
