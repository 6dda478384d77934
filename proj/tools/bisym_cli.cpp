// bisym: bilateral-symmetry tumor candidate detection on PGM/PPM images.

#include <bisym/edges.hpp>
#include <bisym/error.hpp>
#include <bisym/phantom.hpp>
#include <bisym/pipeline.hpp>
#include <bisym/pnm.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace bisym;

namespace {

struct PipelineOptions {
    PipelineConfig config;
    std::string spacing = "1,1";
};

void add_pipeline_options(CLI::App* cmd, PipelineOptions& opts) {
    auto& c = opts.config;
    cmd->add_option("--mt", c.symmetry.mt, "Row split threshold (1..255)")->check(CLI::Range(1, 255));
    cmd->add_option("--quant-levels", c.symmetry.levels, "Quantization levels (divides 256)");
    cmd->add_option("--sigma", c.canny.sigma, "Canny Gaussian sigma (px)");
    cmd->add_option("--canny-low", c.canny.low, "Canny low threshold (fraction of max)");
    cmd->add_option("--canny-high", c.canny.high, "Canny high threshold (fraction of max)");
    cmd->add_option("--axis-degree", c.axis_degree, "Symmetry axis degree (1|2)")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--tol", c.tol, "Reflection matching tolerance (px)");
    cmd->add_option("--min-area", c.min_area, "Minimum tumor region area (px)");
    cmd->add_option("--spacing", opts.spacing, "Pixel spacing sx,sy in mm");
    cmd->add_option("--edge-threshold", c.edge_threshold, "Roberts/Prewitt threshold (fraction of max)");
    cmd->add_flag("--raw-edges", c.raw_edges, "Run edge analysis on the unprocessed image");
}

Spacing parse_spacing(const std::string& text) {
    std::istringstream in(text);
    Spacing s;
    char comma = 0;
    if (!(in >> s.x >> comma >> s.y) || comma != ',' || !in.eof()) {
        throw ParameterError("--spacing expects 'sx,sy', got '" + text + "'");
    }
    return s;
}

PipelineConfig finish(PipelineOptions& opts) {
    opts.config.spacing = parse_spacing(opts.spacing);
    opts.config.validate();
    return opts.config;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot write " + path.string());
    }
    out << text;
}

std::vector<fs::path> images_in(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm")) {
            files.push_back(entry.path());
        }
    }
    std::ranges::sort(files);
    return files;
}

int run_segment(const std::vector<std::string>& inputs, PipelineOptions& opts, const fs::path& out_dir,
                bool dump, bool mask) {
    const PipelineConfig config = finish(opts);
    fs::create_directories(out_dir);
    for (const fs::path input : inputs) {
        const auto result = run_pipeline(read_pnm(input), config, input.filename().string());
        const std::string stem = input.stem().string();
        write_text(out_dir / (stem + ".report.json"), emit_report(result.report));
        write_file(out_dir / (stem + ".overlay.ppm"), encode_pnm(result.overlay));
        if (mask && result.tumor.region) {
            EdgeMap region(result.overlay.width(), result.overlay.height());
            for (const Pixel& p : result.tumor.region->pixels) {
                region.set(p.x, p.y);
            }
            write_file(out_dir / (stem + ".mask.pbm"), encode_pbm(region));
        }
        if (dump) {
            write_file(out_dir / (stem + ".homogenized.pgm"), encode_pnm(result.homogenized));
            write_file(out_dir / (stem + ".edges.pbm"), encode_pbm(result.edges));
            write_file(out_dir / (stem + ".enhanced.pbm"), encode_pbm(result.asymmetry.enhanced_mask()));
        }
        std::cout << stem << ": detected=" << (result.report.detected ? "true" : "false")
                  << " area_px=" << result.report.area_px << "\n";
    }
    return 0;
}

int run_edges(const fs::path& input, const std::string& op, PipelineOptions& opts, double threshold,
              const std::string& out) {
    const PipelineConfig config = finish(opts);
    const GrayImage gray = to_gray(read_pnm(input));
    const GrayImage analysed = config.raw_edges ? gray : process_image(gray, config.symmetry);
    const EdgeMap edges = op == "canny"
                              ? canny(analysed, config.canny)
                              : threshold_edges(gradient(analysed, parse_operator(op)), threshold);
    if (!out.empty()) {
        write_file(out, encode_pbm(edges));
    }
    std::cout << count_edges(edges) << "\n";
    return 0;
}

int run_axis(const fs::path& input, PipelineOptions& opts) {
    const PipelineConfig config = finish(opts);
    const GrayImage gray = to_gray(read_pnm(input));
    const GrayImage analysed = config.raw_edges ? gray : process_image(gray, config.symmetry);
    const AxisModel axis = fit_axis(extract_midpoints(canny(analysed, config.canny)), config.axis_degree);
    nlohmann::ordered_json j;
    j["degree"] = axis.degree;
    j["a0"] = round_significant(axis.a0);
    j["a1"] = round_significant(axis.a1);
    j["a2"] = axis.degree == 2 ? nlohmann::ordered_json(round_significant(axis.a2)) : nlohmann::ordered_json(nullptr);
    j["sr"] = round_significant(axis.sr);
    std::cout << j.dump(2) << "\n";
    return 0;
}

void write_phantom(const PhantomSpec& spec, const fs::path& out_dir, const std::string& stem,
                   const std::string& grade) {
    const Phantom ph = generate_phantom(spec);
    write_file(out_dir / (stem + ".pgm"), encode_pnm(ph.image));
    write_file(out_dir / (stem + ".mask.pbm"), encode_pbm(ph.truth.tumor_mask));
    write_text(out_dir / (stem + ".truth.json"), truth_to_json(ph.truth, grade).dump(2) + "\n");
}

int run_phantom(const std::string& spec_path, bool suite, const fs::path& out_dir,
                std::optional<std::uint64_t> seed) {
    fs::create_directories(out_dir);
    if (suite) {
        for (const SuiteEntry& e : phantom_suite()) {
            write_phantom(e.spec, out_dir, e.name, e.grade);
            write_phantom(without_tumor(e.spec), out_dir, e.name + "-clean", "none");
        }
        return 0;
    }
    if (spec_path.empty()) {
        throw ParameterError("phantom needs a spec file or --suite");
    }
    std::ifstream in(spec_path);
    if (!in) {
        throw Error("cannot open " + spec_path);
    }
    PhantomSpec spec = nlohmann::json::parse(in).get<PhantomSpec>();
    if (seed) {
        spec.seed = *seed;
    }
    write_phantom(spec, out_dir, fs::path(spec_path).stem().string(), "");
    return 0;
}

std::string grade_of(const fs::path& image) {
    const fs::path truth = image.parent_path() / (image.stem().string() + ".truth.json");
    if (!fs::exists(truth)) {
        return "unknown";
    }
    std::ifstream in(truth);
    const auto j = nlohmann::json::parse(in);
    return j.value("grade", std::string("unknown"));
}

int run_compare(const fs::path& dir, PipelineOptions& opts, const std::string& out) {
    const PipelineConfig config = finish(opts);
    std::ostringstream csv;
    csv << "image,grade,roberts,prewitt,canny\n";
    for (const fs::path& file : images_in(dir)) {
        const GrayImage gray = to_gray(read_pnm(file));
        const GrayImage analysed = config.raw_edges ? gray : process_image(gray, config.symmetry);
        const EdgeCounts c = count_operator_edges(analysed, config.canny, config.edge_threshold);
        csv << file.filename().string() << "," << grade_of(file) << "," << c.roberts << ","
            << c.prewitt << "," << c.canny << "\n";
    }
    if (out.empty()) {
        std::cout << csv.str();
    } else {
        write_text(out, csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bilateral-symmetry tumor candidate detection"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    PipelineOptions seg_opts;
    std::vector<std::string> seg_inputs;
    std::string seg_out = ".";
    bool seg_dump = false;
    bool seg_mask = false;
    auto* segment = app.add_subcommand("segment", "Run the full detection pipeline");
    segment->add_option("images", seg_inputs, "Input PGM/PPM images")->required();
    segment->add_option("--out", seg_out, "Output directory");
    segment->add_flag("--dump-intermediate", seg_dump, "Also write homogenized image and edge masks");
    segment->add_flag("--mask", seg_mask, "Write the detected region as a PBM mask");
    add_pipeline_options(segment, seg_opts);

    PipelineOptions edge_opts;
    std::string edge_input;
    std::string edge_op = "canny";
    double edge_threshold = 0.1;
    std::string edge_out;
    auto* edges = app.add_subcommand("edges", "Detect and count edges with one operator");
    edges->add_option("image", edge_input, "Input PGM/PPM image")->required();
    edges->add_option("--operator", edge_op, "roberts|prewitt|sobel|canny")
        ->check(CLI::IsMember({"roberts", "prewitt", "sobel", "canny"}));
    edges->add_option("--threshold", edge_threshold, "Gradient threshold (fraction of max)");
    edges->add_option("--out", edge_out, "Write the edge map as PBM");
    add_pipeline_options(edges, edge_opts);

    PipelineOptions axis_opts;
    std::string axis_input;
    auto* axis = app.add_subcommand("axis", "Estimate the symmetry axis");
    axis->add_option("image", axis_input, "Input PGM/PPM image")->required();
    add_pipeline_options(axis, axis_opts);

    std::string phantom_spec;
    bool phantom_suite_flag = false;
    std::string phantom_out = ".";
    std::optional<std::uint64_t> phantom_seed;
    auto* phantom = app.add_subcommand("phantom", "Generate a synthetic phantom with ground truth");
    phantom->add_option("spec", phantom_spec, "Phantom spec JSON");
    phantom->add_flag("--suite", phantom_suite_flag, "Write the built-in six-phantom suite and no-tumor twins");
    phantom->add_option("--out", phantom_out, "Output directory");
    phantom->add_option("--seed", phantom_seed, "Override the noise seed");

    PipelineOptions cmp_opts;
    std::string cmp_dir;
    std::string cmp_out;
    auto* compare = app.add_subcommand("compare-operators", "Edge counts per operator as CSV");
    compare->add_option("dir", cmp_dir, "Directory of PGM/PPM images")->required();
    compare->add_option("--out", cmp_out, "CSV output file (default stdout)");
    add_pipeline_options(compare, cmp_opts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*segment) return run_segment(seg_inputs, seg_opts, seg_out, seg_dump, seg_mask);
        if (*edges) return run_edges(edge_input, edge_op, edge_opts, edge_threshold, edge_out);
        if (*axis) return run_axis(axis_input, axis_opts);
        if (*phantom) return run_phantom(phantom_spec, phantom_suite_flag, phantom_out, phantom_seed);
        if (*compare) return run_compare(cmp_dir, cmp_opts, cmp_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
