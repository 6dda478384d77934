#include <bisym/pnm.hpp>

#include <cctype>
#include <fstream>
#include <iterator>
#include <limits>
#include <string>

namespace bisym {
namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::string magic() {
        if (bytes_.size() < 2) {
            throw DecodeError("magic: file shorter than two bytes");
        }
        pos_ = 2;
        return {static_cast<char>(bytes_[0]), static_cast<char>(bytes_[1])};
    }

    // Skips whitespace and '#' comments, then reads a decimal field.
    long number(const char* field) {
        skip_separators();
        if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) {
            throw DecodeError(std::string(field) + ": expected a decimal number");
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > std::numeric_limits<int>::max()) {
                throw DecodeError(std::string(field) + ": value too large");
            }
            ++pos_;
        }
        return value;
    }

    // Exactly one whitespace byte separates the header from the payload.
    std::span<const std::uint8_t> payload(const char* field) {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw DecodeError(std::string(field) + ": missing whitespace before payload");
        }
        return bytes_.subspan(pos_ + 1);
    }

private:
    void skip_separators() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void check_dimension(long value, const char* field) {
    if (value < 1) {
        throw DecodeError(std::string(field) + ": must be positive");
    }
}

void check_payload(std::span<const std::uint8_t> payload, std::size_t expected) {
    if (payload.size() < expected) {
        throw DecodeError("payload: truncated, expected " + std::to_string(expected) +
                          " bytes, found " + std::to_string(payload.size()));
    }
}

void append_header(Bytes& out, const char* magic, int width, int height, bool with_maxval) {
    std::string header = std::string(magic) + "\n" + std::to_string(width) + " " +
                         std::to_string(height) + "\n";
    if (with_maxval) {
        header += "255\n";
    }
    out.insert(out.end(), header.begin(), header.end());
}

}  // namespace

AnyImage decode_pnm(std::span<const std::uint8_t> bytes) {
    HeaderReader reader(bytes);
    const std::string magic = reader.magic();
    if (magic != "P5" && magic != "P6") {
        throw DecodeError("magic: expected P5 or P6, found '" + magic + "'");
    }
    const long width = reader.number("width");
    check_dimension(width, "width");
    const long height = reader.number("height");
    check_dimension(height, "height");
    const long maxval = reader.number("maxval");
    if (maxval != 255) {
        throw DecodeError("maxval: only 255 is supported, found " + std::to_string(maxval));
    }
    const auto payload = reader.payload("maxval");
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);

    if (magic == "P5") {
        check_payload(payload, count);
        return GrayImage(static_cast<int>(width), static_cast<int>(height),
                         std::vector<std::uint8_t>(payload.begin(), payload.begin() + count));
    }
    check_payload(payload, 3 * count);
    std::vector<Rgb> pixels(count);
    for (std::size_t i = 0; i < count; ++i) {
        pixels[i] = Rgb{payload[3 * i], payload[3 * i + 1], payload[3 * i + 2]};
    }
    return RgbImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

Bytes encode_pnm(const GrayImage& image) {
    Bytes out;
    out.reserve(image.size() + 20);
    append_header(out, "P5", image.width(), image.height(), true);
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

Bytes encode_pnm(const RgbImage& image) {
    Bytes out;
    out.reserve(3 * image.size() + 20);
    append_header(out, "P6", image.width(), image.height(), true);
    for (const Rgb& c : image.pixels()) {
        out.push_back(c.r);
        out.push_back(c.g);
        out.push_back(c.b);
    }
    return out;
}

Bytes encode_pnm(const AnyImage& image) {
    return std::visit([](const auto& img) { return encode_pnm(img); }, image);
}

Bytes encode_pbm(const EdgeMap& mask) {
    Bytes out;
    append_header(out, "P4", mask.width(), mask.height(), false);
    const int row_bytes = (mask.width() + 7) / 8;
    for (int y = 0; y < mask.height(); ++y) {
        for (int b = 0; b < row_bytes; ++b) {
            std::uint8_t packed = 0;
            for (int bit = 0; bit < 8; ++bit) {
                const int x = 8 * b + bit;
                if (x < mask.width() && mask.test(x, y)) {
                    packed |= static_cast<std::uint8_t>(0x80u >> bit);
                }
            }
            out.push_back(packed);
        }
    }
    return out;
}

EdgeMap decode_pbm(std::span<const std::uint8_t> bytes) {
    HeaderReader reader(bytes);
    const std::string magic = reader.magic();
    if (magic != "P4") {
        throw DecodeError("magic: expected P4, found '" + magic + "'");
    }
    const long width = reader.number("width");
    check_dimension(width, "width");
    const long height = reader.number("height");
    check_dimension(height, "height");
    const auto payload = reader.payload("height");
    const auto row_bytes = static_cast<std::size_t>((width + 7) / 8);
    check_payload(payload, row_bytes * static_cast<std::size_t>(height));

    EdgeMap mask(static_cast<int>(width), static_cast<int>(height));
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const std::uint8_t packed = payload[static_cast<std::size_t>(y) * row_bytes + x / 8];
            if (packed & (0x80u >> (x % 8))) {
                mask.set(x, y);
            }
        }
    }
    return mask;
}

Bytes read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open " + path.string());
    }
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

AnyImage read_pnm(const std::filesystem::path& path) {
    return decode_pnm(read_file(path));
}

}  // namespace bisym
