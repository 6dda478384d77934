#pragma once

// Binary NetPBM codec: P5 (gray) and P6 (RGB) with maxval 255, plus P4
// bitmaps for masks. Encoders emit the canonical header "P5\n<w> <h>\n255\n".

#include <bisym/image.hpp>

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace bisym {

using Bytes = std::vector<std::uint8_t>;

AnyImage decode_pnm(std::span<const std::uint8_t> bytes);

Bytes encode_pnm(const GrayImage& image);
Bytes encode_pnm(const RgbImage& image);
Bytes encode_pnm(const AnyImage& image);

/// P4 bitmap; set pixels are written as 1 (black in PBM convention).
Bytes encode_pbm(const EdgeMap& mask);
EdgeMap decode_pbm(std::span<const std::uint8_t> bytes);

Bytes read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

AnyImage read_pnm(const std::filesystem::path& path);

}  // namespace bisym
