#include <bisym/row_symmetry.hpp>

#include <bisym/error.hpp>

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <string>

namespace bisym {

void SymmetryParams::validate() const {
    if (mt < 1 || mt > 255) {
        throw ParameterError("mt must lie in [1, 255], got " + std::to_string(mt));
    }
    check_quant_levels(levels);
}

std::vector<std::uint8_t> process_row(std::span<const std::uint8_t> row,
                                      const SymmetryParams& params) {
    check_quant_levels(params.levels);
    // mt = 0 is accepted here (every segment splits down to single pixels);
    // the configuration layer still requires mt >= 1.
    if (params.mt < 0 || params.mt > 255) {
        throw ParameterError("mt must lie in [0, 255], got " + std::to_string(params.mt));
    }
    std::vector<std::uint8_t> out(row.begin(), row.end());
    if (row.empty()) {
        return out;
    }

    std::vector<RowSegment> stack{{0, static_cast<int>(row.size()) - 1}};
    while (!stack.empty()) {
        const RowSegment seg = stack.back();
        stack.pop_back();
        assert(seg.first <= seg.last);

        const int mid = (seg.first + seg.last) / 2;
        const int pivot = row[mid];
        const bool deviates =
            seg.first < seg.last &&
            std::any_of(row.begin() + seg.first, row.begin() + seg.last + 1,
                        [&](std::uint8_t v) { return std::abs(v - pivot) > params.mt; });
        if (deviates) {
            stack.push_back({seg.first, mid});
            stack.push_back({mid + 1, seg.last});
            continue;
        }
        std::fill(out.begin() + seg.first, out.begin() + seg.last + 1,
                  quantize_intensity(pivot, params.levels));
    }
    return out;
}

GrayImage process_image(const GrayImage& image, const SymmetryParams& params) {
    GrayImage out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        const auto processed = process_row(image.row(y), params);
        std::ranges::copy(processed, out.row(y).begin());
    }
    return out;
}

}  // namespace bisym
