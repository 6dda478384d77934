#include <bisym/image.hpp>

#include <algorithm>

namespace bisym {

std::size_t count_edges(const EdgeMap& map) {
    const auto bits = map.bits();
    return static_cast<std::size_t>(std::count(bits.begin(), bits.end(), std::uint8_t{1}));
}

std::uint8_t luma(Rgb c) {
    // Integer form of round(0.299 R + 0.587 G + 0.114 B) with ties up.
    const int scaled = 299 * c.r + 587 * c.g + 114 * c.b;
    return static_cast<std::uint8_t>((scaled + 500) / 1000);
}

GrayImage rgb_to_gray(const RgbImage& image) {
    GrayImage out(image.width(), image.height());
    std::ranges::transform(image.pixels(), out.pixels().begin(), luma);
    return out;
}

GrayImage to_gray(const AnyImage& image) {
    if (const auto* gray = std::get_if<GrayImage>(&image)) {
        return *gray;
    }
    return rgb_to_gray(std::get<RgbImage>(image));
}

RgbImage gray_to_rgb(const GrayImage& image) {
    RgbImage out(image.width(), image.height());
    std::ranges::transform(image.pixels(), out.pixels().begin(),
                           [](std::uint8_t g) { return Rgb{g, g, g}; });
    return out;
}

void check_quant_levels(int levels) {
    if (levels < 1 || levels > 128 || 256 % levels != 0) {
        throw ParameterError("quantization levels must divide 256 and lie in [1, 128], got " +
                             std::to_string(levels));
    }
}

std::uint8_t quantize_intensity(int v, int levels) {
    check_quant_levels(levels);
    if (v < 0 || v > 255) {
        throw ParameterError("intensity out of range: " + std::to_string(v));
    }
    const int w = 256 / levels;
    return static_cast<std::uint8_t>(w * (v / w) + w / 2);
}

}  // namespace bisym
