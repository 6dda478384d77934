#include <bisym/error.hpp>
#include <bisym/phantom.hpp>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>

using namespace bisym;

namespace {

std::size_t disk_count(const PhantomSpec& spec) {
    std::size_t n = 0;
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const double dx = x - spec.tumor->cx;
            const double dy = y - spec.tumor->cy;
            n += dx * dx + dy * dy <= spec.tumor->radius * spec.tumor->radius ? 1 : 0;
        }
    }
    return n;
}

}  // namespace

TEST_CASE("SplitMix64 reference sequence") {
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFull);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ull);
    CHECK(rng.next() == 0x06C45D188009454Full);

    SplitMix64 u(12345);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double g = u.gaussian();
        sum += g;
        sq += g * g;
    }
    CHECK(std::abs(sum / n) < 0.05);
    CHECK(std::abs(sq / n - 1.0) < 0.05);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("noise-free phantoms are mirror symmetric about the planted axis") {
    for (double a1 : {0.0, 0.02, -0.05}) {
        PhantomSpec spec;
        spec.axis_a1 = a1;
        spec.axis_a0 = 127.5 - a1 * 127.5;
        const Phantom ph = generate_phantom(spec);
        for (int y = 0; y < spec.height; ++y) {
            const double c = std::round(2.0 * spec.axis()(y)) / 2.0;
            for (int x = 0; x < spec.width; ++x) {
                const double m = 2.0 * c - x;
                if (m >= 0 && m < spec.width) {
                    CHECK(ph.image.at(x, y) == ph.image.at(static_cast<int>(m), y));
                }
            }
        }
        CHECK(ph.truth.area_px == 0);
        CHECK_FALSE(ph.truth.tumor_center.has_value());
    }
}

TEST_CASE("tumor ground truth") {
    PhantomSpec spec;
    spec.tumor = TumorSpec{90, 160, 12};
    const Phantom ph = generate_phantom(spec);
    CHECK(ph.truth.area_px == disk_count(spec));
    CHECK(count_edges(ph.truth.tumor_mask) == ph.truth.area_px);
    REQUIRE(ph.truth.tumor_center.has_value());
    CHECK(ph.truth.tumor_center->x == 90.0);
    CHECK(ph.truth.tumor_center->y == 160.0);
    CHECK(ph.image.at(90, 160) == spec.white_matter + 96);
}

TEST_CASE("generation is deterministic per seed") {
    PhantomSpec spec;
    spec.noise_sigma = 10.0;
    spec.seed = 5;
    CHECK(generate_phantom(spec).image == generate_phantom(spec).image);
    PhantomSpec other = spec;
    other.seed = 6;
    CHECK(generate_phantom(spec).image != generate_phantom(other).image);
}

TEST_CASE("invalid specs") {
    PhantomSpec outside;
    outside.tumor = TumorSpec{2, 2, 10};
    CHECK_THROWS_AS(generate_phantom(outside), SpecError);

    PhantomSpec straddle;
    straddle.tumor = TumorSpec{125, 128, 10};
    CHECK_THROWS_AS(generate_phantom(straddle), SpecError);

    PhantomSpec skull;
    skull.tumor = TumorSpec{22, 128, 8};
    CHECK_THROWS_AS(generate_phantom(skull), SpecError);

    PhantomSpec tiny;
    tiny.tumor = TumorSpec{80.5, 128.5, 0.2};
    CHECK_THROWS_AS(generate_phantom(tiny), SpecError);

    PhantomSpec size;
    size.width = 0;
    CHECK_THROWS_AS(generate_phantom(size), Error);
}

TEST_CASE("the suite") {
    const auto suite = phantom_suite();
    REQUIRE(suite.size() == 6);
    double high_min = 1e9, low_max = 0.0;
    int high = 0, low = 0;
    for (const auto& entry : suite) {
        REQUIRE(entry.spec.tumor.has_value());
        CHECK(entry.spec.width == 256);
        CHECK(entry.spec.height == 256);
        CHECK_NOTHROW(entry.spec.validate());
        if (entry.grade == "high") {
            ++high;
            high_min = std::min(high_min, entry.spec.tumor->radius);
        } else {
            CHECK(entry.grade == "low");
            ++low;
            low_max = std::max(low_max, entry.spec.tumor->radius);
        }

        // The tumor sits in white matter of the tumor-free anatomy.
        const auto tissue = tissue_map(without_tumor(entry.spec));
        const auto& t = *entry.spec.tumor;
        for (int y = 0; y < 256; ++y) {
            for (int x = 0; x < 256; ++x) {
                if (std::hypot(x - t.cx, y - t.cy) <= t.radius) {
                    CHECK(tissue.at(x, y) == TissueClass::white_matter);
                }
            }
        }
        CHECK_FALSE(without_tumor(entry.spec).tumor.has_value());
    }
    CHECK(high == 3);
    CHECK(low == 3);
    CHECK(high_min >= 2.0 * low_max);
}

TEST_CASE("spec JSON roundtrip") {
    PhantomSpec spec = phantom_suite()[0].spec;
    const nlohmann::json j = spec;
    const PhantomSpec back = j.get<PhantomSpec>();
    CHECK(generate_phantom(back).image == generate_phantom(spec).image);
    CHECK(back.tumor->rings == spec.tumor->rings);
    CHECK(back.seed == spec.seed);

    const PhantomSpec defaults = nlohmann::json::object().get<PhantomSpec>();
    CHECK(defaults.width == 256);
    CHECK_FALSE(defaults.tumor.has_value());

    const auto truth = truth_to_json(generate_phantom(spec).truth, "high");
    CHECK(truth.at("grade") == "high");
    CHECK(truth.at("tumor_area_px").get<std::size_t>() == generate_phantom(spec).truth.area_px);
}
