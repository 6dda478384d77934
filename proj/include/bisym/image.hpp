#pragma once

#include <bisym/error.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bisym {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major rectangular grid. Width and height are at least 1.
template <typename T>
class Grid {
public:
    using value_type = T;

    Grid() = default;

    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height) {
        check_shape(width, height);
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Grid(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        check_shape(width, height);
        if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw DimensionError("pixel count " + std::to_string(data_.size()) + " does not match " +
                                 std::to_string(width) + "x" + std::to_string(height));
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }

    /// Border-replicating read.
    const T& clamped(int x, int y) const {
        x = x < 0 ? 0 : (x >= width_ ? width_ - 1 : x);
        y = y < 0 ? 0 : (y >= height_ ? height_ - 1 : y);
        return data_[index(x, y)];
    }

    std::span<T> row(int y) {
        return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
    }
    std::span<const T> row(int y) const {
        return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
    }

    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> pixels() const noexcept { return data_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    static void check_shape(int width, int height) {
        if (width < 1 || height < 1) {
            throw DimensionError("image dimensions must be positive, got " + std::to_string(width) +
                                 "x" + std::to_string(height));
        }
    }

    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using GrayImage = Grid<std::uint8_t>;
using RgbImage = Grid<Rgb>;
using RealImage = Grid<double>;
using AnyImage = std::variant<GrayImage, RgbImage>;

/// Binary pixel mask (0 or 1 per pixel). Used for edge maps and region masks.
class EdgeMap {
public:
    EdgeMap() = default;
    EdgeMap(int width, int height) : bits_(width, height, 0) {}

    int width() const noexcept { return bits_.width(); }
    int height() const noexcept { return bits_.height(); }
    bool contains(int x, int y) const noexcept { return bits_.contains(x, y); }

    bool test(int x, int y) const { return bits_.at(x, y) != 0; }
    /// Out-of-bounds reads are false.
    bool test_or_false(int x, int y) const { return contains(x, y) && bits_.at(x, y) != 0; }
    void set(int x, int y, bool on = true) { bits_.at(x, y) = on ? 1 : 0; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_.pixels(); }

    friend bool operator==(const EdgeMap&, const EdgeMap&) = default;

private:
    Grid<std::uint8_t> bits_;
};

/// Number of set pixels.
std::size_t count_edges(const EdgeMap& map);

/// BT.601 luma, rounded half up.
std::uint8_t luma(Rgb c);
GrayImage rgb_to_gray(const RgbImage& image);
GrayImage to_gray(const AnyImage& image);
RgbImage gray_to_rgb(const GrayImage& image);

/// Maps v to the midpoint of its bin when [0, 256) is split into `levels`
/// equal bins. `levels` must divide 256 and be at most 128.
std::uint8_t quantize_intensity(int v, int levels = 8);

/// Throws ParameterError unless `levels` is a valid quantization level count.
void check_quant_levels(int levels);

}  // namespace bisym
