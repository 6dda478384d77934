#pragma once

// Synthetic "brain" phantoms that are exactly mirror-symmetric about a planted
// axis, with an optional tumor disk stamped on one side.
//
// Every feature is evaluated on (|x - c(y)|, y), where c(y) is the planted
// axis snapped to a half-integer column, so the noise-free image is invariant
// under x -> 2 c(y) - x row by row.

#include <bisym/axis.hpp>
#include <bisym/image.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bisym {

/// SplitMix64: state += 0x9E3779B97F4A7C15, then two xor-shift-multiply rounds
/// (0xBF58476D1CE4E5B9, 0x94D049BB133111EB). Output is identical on every
/// platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via Box-Muller (cosine branch only).
    double gaussian();

private:
    std::uint64_t state_;
};

struct TumorSpec {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 10.0;
    int delta = 96;          ///< added to white matter intensity
    int rings = 0;           ///< 0: smooth disk; otherwise alternating necrotic rings
    double ring_width = 5.0;
    int necrotic = 48;       ///< intensity of the dark rings
};

struct PhantomSpec {
    int width = 256;
    int height = 256;
    double axis_a0 = 127.5;
    double axis_a1 = 0.0;
    double center_y = 127.5;
    double skull_semi_x = 110.0;
    double skull_semi_y = 120.0;
    double skull_thickness = 7.0;
    double cortex_thickness = 5.0;
    double gyri_amplitude = 3.0;  ///< sinusoidal cortex ribbon modulation (px)
    int gyri_count = 9;
    double ventricle_offset = 14.0;
    double ventricle_semi_x = 8.0;
    double ventricle_semi_y = 20.0;
    double ventricle_dy = -10.0;
    int background = 16;
    int skull = 208;
    int gray_matter = 80;
    int white_matter = 144;
    int csf = 48;
    std::optional<TumorSpec> tumor;
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;

    void validate() const;
    AxisModel axis() const { return AxisModel{1, axis_a0, axis_a1, 0.0, 0.0}; }
};

struct GroundTruth {
    double axis_a0 = 0.0;
    double axis_a1 = 0.0;
    EdgeMap tumor_mask;
    std::size_t area_px = 0;
    std::optional<Point2> tumor_center;
};

struct Phantom {
    GrayImage image;
    GroundTruth truth;
};

enum class TissueClass : std::uint8_t { background, skull, gray_matter, white_matter, csf, tumor };

/// Tissue label map before noise, used by tests to check fixture geometry.
Grid<TissueClass> tissue_map(const PhantomSpec& spec);

Phantom generate_phantom(const PhantomSpec& spec);

struct SuiteEntry {
    std::string name;
    std::string grade;  ///< "high" or "low"
    PhantomSpec spec;
};

/// Six tumor phantoms, three high grade (large ringed tumors) and three low
/// grade (small smooth tumors). Version 1.
std::vector<SuiteEntry> phantom_suite();

/// The suite entry with its tumor removed.
PhantomSpec without_tumor(PhantomSpec spec);

void to_json(nlohmann::json& j, const TumorSpec& t);
void from_json(const nlohmann::json& j, TumorSpec& t);
void to_json(nlohmann::json& j, const PhantomSpec& s);
void from_json(const nlohmann::json& j, PhantomSpec& s);
nlohmann::ordered_json truth_to_json(const GroundTruth& truth, const std::string& grade = {});

}  // namespace bisym
