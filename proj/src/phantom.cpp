#include <bisym/phantom.hpp>

#include <bisym/error.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bisym {

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double SplitMix64::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SplitMix64::gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

void check_intensity(int v, const char* name) {
    if (v < 0 || v > 255) {
        throw SpecError(std::string(name) + " intensity must lie in [0, 255]");
    }
}

struct Geometry {
    const PhantomSpec& spec;

    double axis_column(int y) const { return snap_half(spec.axis_a0 + spec.axis_a1 * y); }

    // Normalized radius w.r.t. the inner skull ellipse.
    double inner_radius(double u, double v) const {
        const double ax = spec.skull_semi_x - spec.skull_thickness;
        const double ay = spec.skull_semi_y - spec.skull_thickness;
        return std::hypot(u / ax, v / ay);
    }

    TissueClass anatomy(int x, int y) const {
        const double u = std::abs(x - axis_column(y));
        const double v = y - spec.center_y;
        if (std::hypot(u / spec.skull_semi_x, v / spec.skull_semi_y) > 1.0) {
            return TissueClass::background;
        }
        const double rho = inner_radius(u, v);
        if (rho > 1.0) {
            return TissueClass::skull;
        }
        const double inner_min = std::min(spec.skull_semi_x, spec.skull_semi_y) - spec.skull_thickness;
        const double theta = std::atan2(v, u);
        const double ribbon = spec.cortex_thickness +
                              spec.gyri_amplitude * 0.5 * (1.0 + std::sin(spec.gyri_count * theta));
        if (rho > 1.0 - ribbon / inner_min) {
            return TissueClass::gray_matter;
        }
        const double vu = (u - spec.ventricle_offset) / spec.ventricle_semi_x;
        const double vv = (v - spec.ventricle_dy) / spec.ventricle_semi_y;
        if (vu * vu + vv * vv <= 1.0) {
            return TissueClass::csf;
        }
        return TissueClass::white_matter;
    }

    bool in_tumor(int x, int y) const {
        if (!spec.tumor) {
            return false;
        }
        const double dx = x - spec.tumor->cx;
        const double dy = y - spec.tumor->cy;
        return dx * dx + dy * dy <= spec.tumor->radius * spec.tumor->radius;
    }

    int tumor_intensity(int x, int y) const {
        const TumorSpec& t = *spec.tumor;
        const int bright = std::clamp(spec.white_matter + t.delta, 0, 255);
        if (t.rings <= 0) {
            return bright;
        }
        const double depth = t.radius - std::hypot(x - t.cx, y - t.cy);
        const int ring = static_cast<int>(std::floor(depth / t.ring_width));
        if (ring >= 2 * t.rings) {
            return bright;
        }
        return ring % 2 == 0 ? bright : t.necrotic;
    }

    int intensity(TissueClass c) const {
        switch (c) {
            case TissueClass::background: return spec.background;
            case TissueClass::skull: return spec.skull;
            case TissueClass::gray_matter: return spec.gray_matter;
            case TissueClass::white_matter: return spec.white_matter;
            case TissueClass::csf: return spec.csf;
            case TissueClass::tumor: break;
        }
        return 0;
    }
};

}  // namespace

void PhantomSpec::validate() const {
    if (width < 8 || height < 8) {
        throw SpecError("phantom must be at least 8x8");
    }
    if (!(skull_semi_x > skull_thickness && skull_semi_y > skull_thickness && skull_thickness > 0.0)) {
        throw SpecError("skull semi-axes must exceed a positive skull thickness");
    }
    if (noise_sigma < 0.0) {
        throw SpecError("noise_sigma must be non-negative");
    }
    check_intensity(background, "background");
    check_intensity(skull, "skull");
    check_intensity(gray_matter, "gray_matter");
    check_intensity(white_matter, "white_matter");
    check_intensity(csf, "csf");
    if (!tumor) {
        return;
    }
    if (!(tumor->radius > 0.0)) {
        throw SpecError("tumor radius must be positive");
    }
    check_intensity(tumor->necrotic, "tumor necrotic");
    if (tumor->rings > 0 && !(tumor->ring_width > 0.0)) {
        throw SpecError("tumor ring_width must be positive");
    }
    const Geometry geo{*this};
    const int r = static_cast<int>(std::ceil(tumor->radius));
    int side = 0;
    bool any = false;
    for (int y = static_cast<int>(std::floor(tumor->cy)) - r; y <= static_cast<int>(std::ceil(tumor->cy)) + r; ++y) {
        for (int x = static_cast<int>(std::floor(tumor->cx)) - r; x <= static_cast<int>(std::ceil(tumor->cx)) + r; ++x) {
            if (!geo.in_tumor(x, y)) {
                continue;
            }
            any = true;
            if (x < 0 || y < 0 || x >= width || y >= height) {
                throw SpecError("tumor extends outside the image");
            }
            const double u = x - geo.axis_column(y);
            if (geo.inner_radius(u, y - center_y) > 1.0) {
                throw SpecError("tumor extends outside the brain ellipse");
            }
            const int s = u < 0.0 ? -1 : (u > 0.0 ? 1 : 0);
            if (s == 0 || (side != 0 && s != side)) {
                throw SpecError("tumor must lie strictly on one side of the axis");
            }
            side = s;
        }
    }
    if (!any) {
        throw SpecError("tumor covers no pixel");
    }
}

Grid<TissueClass> tissue_map(const PhantomSpec& spec) {
    spec.validate();
    const Geometry geo{spec};
    Grid<TissueClass> map(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            map.at(x, y) = geo.in_tumor(x, y) ? TissueClass::tumor : geo.anatomy(x, y);
        }
    }
    return map;
}

Phantom generate_phantom(const PhantomSpec& spec) {
    spec.validate();
    const Geometry geo{spec};
    Phantom out{GrayImage(spec.width, spec.height), GroundTruth{}};
    out.truth.axis_a0 = spec.axis_a0;
    out.truth.axis_a1 = spec.axis_a1;
    out.truth.tumor_mask = EdgeMap(spec.width, spec.height);

    SplitMix64 rng(spec.seed);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            double value = 0.0;
            if (geo.in_tumor(x, y)) {
                value = geo.tumor_intensity(x, y);
                out.truth.tumor_mask.set(x, y);
                ++out.truth.area_px;
            } else {
                value = geo.intensity(geo.anatomy(x, y));
            }
            if (spec.noise_sigma > 0.0) {
                value += spec.noise_sigma * rng.gaussian();
            }
            out.image.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::round(value), 0.0, 255.0));
        }
    }
    if (spec.tumor) {
        out.truth.tumor_center = Point2{spec.tumor->cx, spec.tumor->cy};
    }
    return out;
}

PhantomSpec without_tumor(PhantomSpec spec) {
    spec.tumor.reset();
    return spec;
}

std::vector<SuiteEntry> phantom_suite() {
    auto base = [](double a1, std::uint64_t seed) {
        PhantomSpec s;
        s.axis_a1 = a1;
        s.axis_a0 = 127.5 - a1 * 127.5;
        s.noise_sigma = 16.0;
        s.seed = seed;
        return s;
    };
    auto high = [](double cx, double cy, double radius) {
        return TumorSpec{cx, cy, radius, 96, 4, 3.0, 48};
    };
    auto low = [](double cx, double cy, double radius) {
        return TumorSpec{cx, cy, radius, 96, 0, 4.0, 48};
    };

    std::vector<SuiteEntry> suite;
    auto add = [&](std::string name, std::string grade, PhantomSpec s, TumorSpec t) {
        s.tumor = t;
        suite.push_back({std::move(name), std::move(grade), s});
    };
    add("high-1", "high", base(0.0, 101), high(80.0, 170.0, 24.0));
    add("high-2", "high", base(0.02, 102), high(178.0, 90.0, 23.0));
    add("high-3", "high", base(-0.02, 103), high(75.0, 95.0, 24.0));
    add("low-1", "low", base(0.0, 201), low(82.0, 170.0, 10.0));
    add("low-2", "low", base(0.02, 202), low(176.0, 92.0, 9.0));
    add("low-3", "low", base(-0.02, 203), low(170.0, 165.0, 10.0));
    return suite;
}

void to_json(nlohmann::json& j, const TumorSpec& t) {
    j = nlohmann::json{{"cx", t.cx},
                       {"cy", t.cy},
                       {"radius", t.radius},
                       {"delta", t.delta},
                       {"rings", t.rings},
                       {"ring_width", t.ring_width},
                       {"necrotic", t.necrotic}};
}

void from_json(const nlohmann::json& j, TumorSpec& t) {
    t = TumorSpec{};
    t.cx = j.at("cx").get<double>();
    t.cy = j.at("cy").get<double>();
    t.radius = j.at("radius").get<double>();
    t.delta = j.value("delta", t.delta);
    t.rings = j.value("rings", t.rings);
    t.ring_width = j.value("ring_width", t.ring_width);
    t.necrotic = j.value("necrotic", t.necrotic);
}

void to_json(nlohmann::json& j, const PhantomSpec& s) {
    j = nlohmann::json{{"width", s.width},
                       {"height", s.height},
                       {"axis_a0", s.axis_a0},
                       {"axis_a1", s.axis_a1},
                       {"center_y", s.center_y},
                       {"skull_semi_x", s.skull_semi_x},
                       {"skull_semi_y", s.skull_semi_y},
                       {"skull_thickness", s.skull_thickness},
                       {"cortex_thickness", s.cortex_thickness},
                       {"gyri_amplitude", s.gyri_amplitude},
                       {"gyri_count", s.gyri_count},
                       {"ventricle_offset", s.ventricle_offset},
                       {"ventricle_semi_x", s.ventricle_semi_x},
                       {"ventricle_semi_y", s.ventricle_semi_y},
                       {"ventricle_dy", s.ventricle_dy},
                       {"background", s.background},
                       {"skull", s.skull},
                       {"gray_matter", s.gray_matter},
                       {"white_matter", s.white_matter},
                       {"csf", s.csf},
                       {"noise_sigma", s.noise_sigma},
                       {"seed", s.seed}};
    j["tumor"] = s.tumor ? nlohmann::json(*s.tumor) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, PhantomSpec& s) {
    // Missing keys keep their defaults.
    s = PhantomSpec{};
    s.width = j.value("width", s.width);
    s.height = j.value("height", s.height);
    s.axis_a0 = j.value("axis_a0", s.width / 2.0 - 0.5);
    s.axis_a1 = j.value("axis_a1", s.axis_a1);
    s.center_y = j.value("center_y", s.height / 2.0 - 0.5);
    s.skull_semi_x = j.value("skull_semi_x", s.skull_semi_x);
    s.skull_semi_y = j.value("skull_semi_y", s.skull_semi_y);
    s.skull_thickness = j.value("skull_thickness", s.skull_thickness);
    s.cortex_thickness = j.value("cortex_thickness", s.cortex_thickness);
    s.gyri_amplitude = j.value("gyri_amplitude", s.gyri_amplitude);
    s.gyri_count = j.value("gyri_count", s.gyri_count);
    s.ventricle_offset = j.value("ventricle_offset", s.ventricle_offset);
    s.ventricle_semi_x = j.value("ventricle_semi_x", s.ventricle_semi_x);
    s.ventricle_semi_y = j.value("ventricle_semi_y", s.ventricle_semi_y);
    s.ventricle_dy = j.value("ventricle_dy", s.ventricle_dy);
    s.background = j.value("background", s.background);
    s.skull = j.value("skull", s.skull);
    s.gray_matter = j.value("gray_matter", s.gray_matter);
    s.white_matter = j.value("white_matter", s.white_matter);
    s.csf = j.value("csf", s.csf);
    s.noise_sigma = j.value("noise_sigma", s.noise_sigma);
    s.seed = j.value("seed", s.seed);
    if (j.contains("tumor") && !j.at("tumor").is_null()) {
        s.tumor = j.at("tumor").get<TumorSpec>();
    }
}

nlohmann::ordered_json truth_to_json(const GroundTruth& truth, const std::string& grade) {
    nlohmann::ordered_json j;
    j["axis"] = {{"a0", truth.axis_a0}, {"a1", truth.axis_a1}};
    j["tumor_area_px"] = truth.area_px;
    if (truth.tumor_center) {
        j["tumor_center"] = {{"x", truth.tumor_center->x}, {"y", truth.tumor_center->y}};
    } else {
        j["tumor_center"] = nullptr;
    }
    if (!grade.empty()) {
        j["grade"] = grade;
    }
    return j;
}

}  // namespace bisym
