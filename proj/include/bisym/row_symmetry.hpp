#pragma once

// Stack-based row homogenization. Each row segment is compared against its
// mid pixel; segments holding a pixel that deviates by more than `mt` are
// split in two at the mid, otherwise the whole segment takes the quantized
// mid intensity.

#include <bisym/image.hpp>

#include <cstdint>
#include <span>
#include <vector>

namespace bisym {

struct RowSegment {
    int first = 0;
    int last = 0;  ///< inclusive
};

struct SymmetryParams {
    int mt = 32;      ///< maximum tolerated |pixel - mid| inside a segment
    int levels = 8;   ///< quantization levels for the flood value

    void validate() const;
};

std::vector<std::uint8_t> process_row(std::span<const std::uint8_t> row,
                                      const SymmetryParams& params = {});

/// Applies process_row to every row independently.
GrayImage process_image(const GrayImage& image, const SymmetryParams& params = {});

}  // namespace bisym
