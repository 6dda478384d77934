// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. argv[1] is the path to the bisym CLI.

#include <bisym/asymmetry.hpp>
#include <bisym/axis.hpp>
#include <bisym/edges.hpp>
#include <bisym/lsq.hpp>
#include <bisym/phantom.hpp>
#include <bisym/pipeline.hpp>
#include <bisym/pnm.hpp>
#include <bisym/row_symmetry.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace bisym;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

struct SuiteRun {
    SuiteEntry entry;
    Phantom tumor;
    Phantom clean;
};

const std::vector<SuiteRun>& suite() {
    static const std::vector<SuiteRun> runs = [] {
        std::vector<SuiteRun> out;
        for (const SuiteEntry& e : phantom_suite()) {
            out.push_back({e, generate_phantom(e.spec), generate_phantom(without_tumor(e.spec))});
        }
        return out;
    }();
    return runs;
}

// Gaussian elimination with partial pivoting.
Vec3 eliminate(Mat3 a, Vec3 b) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r) {
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        }
        std::swap(a[c], a[piv]);
        std::swap(b[c], b[piv]);
        for (int r = c + 1; r < 3; ++r) {
            const double f = a[r][c] / a[c][c];
            for (int k = c; k < 3; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    Vec3 x{};
    for (int r = 2; r >= 0; --r) {
        double s = b[r];
        for (int k = r + 1; k < 3; ++k) s -= a[r][k] * x[k];
        x[r] = s / a[r][r];
    }
    return x;
}

// Direct recursive homogenization.
void homogenize(std::span<const std::uint8_t> in, std::vector<std::uint8_t>& out, int first, int last, int mt) {
    const int mid = (first + last) / 2;
    bool split = false;
    for (int p = first; p <= last; ++p) split = split || std::abs(in[p] - in[mid]) > mt;
    if (first == last || !split) {
        for (int p = first; p <= last; ++p) out[p] = static_cast<std::uint8_t>(quantize_intensity(in[mid], 8));
        return;
    }
    homogenize(in, out, first, mid, mt);
    homogenize(in, out, mid + 1, last, mt);
}

Outcome operator_ordering() {
    const auto t0 = Clock::now();
    const PipelineConfig cfg;
    int ok = 0;
    int ok_raw = 0;
    std::ostringstream os;
    for (const SuiteRun& run : suite()) {
        const GrayImage homogenized = process_image(run.tumor.image, cfg.symmetry);
        const EdgeCounts c = count_operator_edges(homogenized, cfg.canny, cfg.edge_threshold);
        const EdgeCounts raw = count_operator_edges(run.tumor.image, cfg.canny, cfg.edge_threshold);
        ok += (c.roberts > c.prewitt && c.prewitt > c.canny) ? 1 : 0;
        ok_raw += (raw.roberts > raw.prewitt && raw.prewitt > raw.canny) ? 1 : 0;
        os << ' ' << run.entry.name << '=' << c.roberts << '/' << c.prewitt << '/' << c.canny;
    }
    const double elapsed = seconds_since(t0);
    std::ostringstream head;
    head << "R>P>C on " << ok << "/6 homogenized, " << ok_raw << "/6 raw; " << elapsed << " s;" << os.str();
    return {ok == 6 && ok_raw == 6 && elapsed < 5.0, head.str()};
}

Outcome grade_ordering() {
    const PipelineConfig cfg;
    double high = 0.0;
    double low = 0.0;
    for (const SuiteRun& run : suite()) {
        const EdgeCounts c =
            count_operator_edges(process_image(run.tumor.image, cfg.symmetry), cfg.canny, cfg.edge_threshold);
        (run.entry.grade == "high" ? high : low) += static_cast<double>(c.canny) / 3.0;
    }
    std::ostringstream os;
    os << "mean canny high " << high << ", low " << low << ", ratio " << high / low << " (need >= 1.2)";
    return {high >= 1.2 * low, os.str()};
}

Outcome least_squares() {
    bool ok = true;
    double worst = 0.0;
    std::mt19937 rng(301);
    std::uniform_real_distribution<double> coef(-100.0, 100.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double a0 = coef(rng);
        const double a1 = coef(rng);
        std::vector<Point2> pts;
        for (int i = 0; i < 50; ++i) {
            const double x = i - 20.0;
            pts.push_back({x, a0 + a1 * x});
        }
        const LinearFit f = fit_line(pts);
        ok = ok && rel_close(f.a0, a0, 1e-9) && rel_close(f.a1, a1, 1e-9) && f.sr <= 1e-12;
        worst = std::max(worst, f.sr);
    }
    const std::vector<Point2> example{{0, 1}, {1, 2}, {2, 2}};
    const LinearFit e = fit_line(example);
    const bool example_ok = std::abs(e.a0 - 7.0 / 6.0) <= 1e-9 && std::abs(e.a1 - 0.5) <= 1e-9 &&
                            std::abs(e.sr - 1.0 / 6.0) <= 1e-9;
    std::ostringstream os;
    os << "100 exact lines (max sr " << worst << "); example a0=" << e.a0 << " a1=" << e.a1 << " sr=" << e.sr;
    return {ok && example_ok, os.str()};
}

Outcome cramer_vs_elimination() {
    std::mt19937 rng(401);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int solved = 0;
    int agree = 0;
    double worst = 0.0;
    while (solved < 1000) {
        Mat3 a;
        for (auto& row : a) for (auto& v : row) v = u(rng);
        if (std::abs(determinant(a)) <= 1e-3) continue;
        const Vec3 b{u(rng), u(rng), u(rng)};
        const Vec3 x = cramer_solve(a, b);
        const Vec3 ref = eliminate(a, b);
        bool same = true;
        for (int i = 0; i < 3; ++i) {
            const double err = std::abs(x[i] - ref[i]) / std::max(1.0, std::abs(ref[i]));
            worst = std::max(worst, err);
            same = same && err <= 1e-9;
        }
        agree += same ? 1 : 0;
        ++solved;
    }
    int singular_raised = 0;
    for (int trial = 0; trial < 100; ++trial) {
        Mat3 a;
        for (auto& row : a) for (auto& v : row) v = u(rng);
        a[2] = a[trial % 2];
        try {
            cramer_solve(a, Vec3{u(rng), u(rng), u(rng)});
        } catch (const SingularSystemError&) {
            ++singular_raised;
        }
    }
    std::ostringstream os;
    os << agree << "/1000 agree (max rel err " << worst << "); singular raised " << singular_raised << "/100";
    return {agree == 1000 && singular_raised == 100, os.str()};
}

Outcome axis_recovery() {
    // Planted axis x = 64 + 0.05 y on a noise-free 128x128 head; the
    // extracted midpoints get N(0, 0.5) jitter per seed.
    PhantomSpec spec;
    spec.width = 128;
    spec.height = 128;
    spec.axis_a0 = 64.0;
    spec.axis_a1 = 0.05;
    spec.center_y = 63.5;
    spec.skull_semi_x = 52.0;
    spec.skull_semi_y = 58.0;
    spec.skull_thickness = 4.0;
    spec.cortex_thickness = 3.0;
    spec.gyri_amplitude = 1.5;
    spec.ventricle_offset = 7.0;
    spec.ventricle_semi_x = 4.0;
    spec.ventricle_semi_y = 10.0;
    spec.ventricle_dy = -5.0;
    const auto base = extract_midpoints(canny(generate_phantom(spec).image));
    int ok = 0;
    double worst_a0 = 0.0;
    double worst_a1 = 0.0;
    for (unsigned seed = 1; seed <= 10; ++seed) {
        std::mt19937 rng(seed);
        std::normal_distribution<double> noise(0.0, 0.5);
        auto samples = base;
        for (auto& s : samples) s.midpoint += noise(rng);
        const AxisModel a = fit_axis(samples, 1);
        worst_a0 = std::max(worst_a0, std::abs(a.a0 - 64.0));
        worst_a1 = std::max(worst_a1, std::abs(a.a1 - 0.05));
        ok += (std::abs(a.a0 - 64.0) <= 1.0 && std::abs(a.a1 - 0.05) <= 0.02) ? 1 : 0;
    }
    std::ostringstream os;
    os << ok << "/10 seeds; max |a0-64| " << worst_a0 << ", max |a1-0.05| " << worst_a1;
    return {ok == 10, os.str()};
}

Outcome row_symmetry() {
    std::mt19937 rng(601);
    std::uniform_int_distribution<int> len(1, 64), px(0, 255);
    int matched = 0;
    int total = 0;
    for (int mt : {0, 16, 32, 255}) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<std::uint8_t> row(len(rng));
            for (auto& p : row) p = static_cast<std::uint8_t>(px(rng));
            std::vector<std::uint8_t> expected(row.size());
            homogenize(row, expected, 0, static_cast<int>(row.size()) - 1, mt);
            matched += process_row(row, SymmetryParams{mt, 8}) == expected ? 1 : 0;
            ++total;
        }
    }

    // Idempotence for mt >= 32 on random images and on the phantom suite.
    int random_idem = 0;
    int random_total = 0;
    for (int mt : {32, 64, 128, 255}) {
        for (int trial = 0; trial < 5; ++trial) {
            GrayImage img(64, 64);
            for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(px(rng));
            const GrayImage once = process_image(img, SymmetryParams{mt, 8});
            random_idem += process_image(once, SymmetryParams{mt, 8}) == once ? 1 : 0;
            ++random_total;
        }
    }
    int phantom_idem = 0;
    int phantom_total = 0;
    for (const SuiteRun& run : suite()) {
        for (int mt : {32, 64, 128, 255}) {
            const GrayImage once = process_image(run.tumor.image, SymmetryParams{mt, 8});
            phantom_idem += process_image(once, SymmetryParams{mt, 8}) == once ? 1 : 0;
            ++phantom_total;
        }
    }
    std::ostringstream os;
    os << "oracle " << matched << "/" << total << " rows; idempotent on " << random_idem << "/" << random_total
       << " random images, " << phantom_idem << "/" << phantom_total << " phantoms";
    return {matched == total && random_idem == random_total && phantom_idem == phantom_total, os.str()};
}

Outcome detection_quality() {
    const PipelineConfig cfg;
    int hits = 0;
    int false_positives = 0;
    double worst_centroid = 0.0;
    double worst_area = 0.0;
    for (const SuiteRun& run : suite()) {
        const PipelineResult r = run_pipeline(run.tumor.image, cfg, run.entry.name);
        if (r.report.detected && r.tumor.region) {
            const auto& truth = run.tumor.truth;
            const double dc = std::hypot(r.tumor.region->centroid.x - truth.tumor_center->x,
                                         r.tumor.region->centroid.y - truth.tumor_center->y);
            const double da = std::abs(static_cast<double>(r.report.area_px) - truth.area_px) / truth.area_px;
            worst_centroid = std::max(worst_centroid, dc);
            worst_area = std::max(worst_area, da);
            hits += (dc <= 3.0 && da <= 0.15) ? 1 : 0;
        }
        false_positives += run_pipeline(run.clean.image, cfg, run.entry.name + "-clean").report.detected ? 1 : 0;
    }
    std::ostringstream os;
    os << hits << "/6 tumors located (max centroid err " << worst_centroid << " px, max area err "
       << 100.0 * worst_area << "%); " << false_positives << "/6 false positives";
    return {hits == 6 && false_positives == 0, os.str()};
}

Outcome circle_fit() {
    std::vector<Point2> ring;
    for (const Pixel& p : rasterize_circle(50, 50, 20, 128, 128)) {
        ring.push_back({static_cast<double>(p.x), static_cast<double>(p.y)});
    }
    const BoundaryCircle c = fit_circle(ring);
    const bool planted = std::abs(c.center.x - 50.0) <= 0.5 && std::abs(c.center.y - 50.0) <= 0.5 &&
                         std::abs(c.radius - 20.0) <= 0.5;

    // Exhaustive search over centres on a 0.05 px lattice; the radius for a
    // centre is the mean point distance.
    auto grid_search = [](const std::vector<Point2>& pts, Point2 around) {
        BoundaryCircle best{};
        double best_cost = std::numeric_limits<double>::infinity();
        for (double cy = around.y - 3.0; cy <= around.y + 3.0; cy += 0.05) {
            for (double cx = around.x - 3.0; cx <= around.x + 3.0; cx += 0.05) {
                double r = 0.0;
                for (const auto& p : pts) r += std::hypot(p.x - cx, p.y - cy);
                r /= static_cast<double>(pts.size());
                double cost = 0.0;
                for (const auto& p : pts) {
                    const double d = std::hypot(p.x - cx, p.y - cy) - r;
                    cost += d * d;
                }
                if (cost < best_cost) {
                    best_cost = cost;
                    best = {{cx, cy}, r};
                }
            }
        }
        return best;
    };
    std::mt19937 rng(801);
    std::uniform_real_distribution<double> centre(30.0, 90.0), radius(8.0, 30.0);
    std::normal_distribution<double> noise(0.0, 0.7);
    int agree = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const double cx = centre(rng), cy = centre(rng), r = radius(rng);
        std::vector<Point2> pts;
        for (const Pixel& p : rasterize_circle(static_cast<int>(std::round(cx)), static_cast<int>(std::round(cy)),
                                               static_cast<int>(std::round(r)), 128, 128)) {
            pts.push_back({p.x + noise(rng), p.y + noise(rng)});
        }
        const BoundaryCircle fit = fit_circle(pts);
        const BoundaryCircle ref = grid_search(pts, {std::round(cx), std::round(cy)});
        const double err = std::max({std::abs(fit.center.x - ref.center.x), std::abs(fit.center.y - ref.center.y),
                                     std::abs(fit.radius - ref.radius)});
        worst = std::max(worst, err);
        agree += err <= 1.0 ? 1 : 0;
    }
    std::ostringstream os;
    os << "planted (50,50,20) -> (" << c.center.x << "," << c.center.y << "," << c.radius << "); grid search "
       << agree << "/10 within 1 px (max " << worst << ")";
    return {planted && agree == 10, os.str()};
}

int run_command(const std::string& cmd) {
    return std::system((cmd + " > /dev/null 2>&1").c_str());
}

std::string shell_quote(const fs::path& p) {
    return "'" + p.string() + "'";
}

Outcome determinism(const std::string& cli) {
    const fs::path dir = fs::temp_directory_path() / ("bisym-acceptance-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    Outcome out;
    if (run_command(shell_quote(cli) + " phantom --suite --out " + shell_quote(dir / "ph")) != 0) {
        out.detail = "phantom generation failed";
        fs::remove_all(dir);
        return out;
    }
    int identical = 0;
    int total = 0;
    for (const std::string stem : {"high-1", "low-1-clean"}) {
        const fs::path input = dir / "ph" / (stem + ".pgm");
        bool ran = true;
        for (const char* run : {"a", "b"}) {
            ran = ran && run_command(shell_quote(cli) + " segment " + shell_quote(input) + " --out " + shell_quote(dir / run)) == 0;
        }
        for (const std::string ext : {".report.json", ".overlay.ppm"}) {
            ++total;
            if (ran && fs::exists(dir / "a" / (stem + ext)) &&
                read_file(dir / "a" / (stem + ext)) == read_file(dir / "b" / (stem + ext))) {
                ++identical;
            }
        }
    }
    fs::remove_all(dir);
    out.pass = identical == total;
    out.detail = std::to_string(identical) + "/" + std::to_string(total) + " output files byte-identical across runs";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: bisym_acceptance <path-to-bisym-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const auto t0 = Clock::now();

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 operator ordering", operator_ordering},
        {"2 grade ordering", grade_ordering},
        {"3 least squares", least_squares},
        {"4 cramer vs elimination", cramer_vs_elimination},
        {"5 axis recovery", axis_recovery},
        {"6 row symmetry", row_symmetry},
        {"7 detection quality", detection_quality},
        {"8 circle fit", circle_fit},
        {"9 determinism", [&] { return determinism(cli); }},
    };
    int failed = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    const double elapsed = seconds_since(t0);
    const bool fast = elapsed < 120.0;
    failed += fast ? 0 : 1;
    std::printf("[%s] total runtime: %.2f s (limit 120 s)\n", fast ? "PASS" : "FAIL", elapsed);
    std::printf("%d failed\n", failed);
    return failed == 0 ? 0 : 1;
}
