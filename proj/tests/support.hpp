#pragma once

#include <bisym/image.hpp>

#include <cstdint>
#include <random>

namespace bisym::testing {

inline GrayImage random_gray(int w, int h, std::mt19937& rng, int lo = 0, int hi = 255) {
    std::uniform_int_distribution<int> dist(lo, hi);
    GrayImage img(w, h);
    for (auto& p : img.pixels()) {
        p = static_cast<std::uint8_t>(dist(rng));
    }
    return img;
}

inline GrayImage vertical_step(int w, int h, int step_col, std::uint8_t left, std::uint8_t right) {
    GrayImage img(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y) = x <= step_col ? left : right;
        }
    }
    return img;
}

}  // namespace bisym::testing
