#pragma once

#include <bisym/asymmetry.hpp>
#include <bisym/edges.hpp>
#include <bisym/image.hpp>
#include <bisym/row_symmetry.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace bisym {

inline constexpr const char* kVersion = "1.0.0";

struct PipelineConfig {
    CannyParams canny;
    SymmetryParams symmetry;
    int axis_degree = 1;
    int tol = 2;
    std::size_t min_area = 30;
    Spacing spacing;
    double edge_threshold = 0.1;  ///< Roberts/Prewitt binarization fraction
    bool raw_edges = false;       ///< run edge analysis on the unprocessed image

    void validate() const;
};

struct CircleRecord {
    double cx = 0.0;
    double cy = 0.0;
    double r = 0.0;

    friend bool operator==(const CircleRecord&, const CircleRecord&) = default;
};

struct AxisRecord {
    int degree = 1;
    double a0 = 0.0;
    double a1 = 0.0;
    std::optional<double> a2;
    double sr = 0.0;

    friend bool operator==(const AxisRecord&, const AxisRecord&) = default;
};

struct ConfigRecord {
    double sigma = 1.4;
    double canny_low = 0.1;
    double canny_high = 0.3;
    int mt = 32;
    int quant_levels = 8;
    int axis_degree = 1;
    int tol = 2;
    std::size_t min_area = 30;
    double spacing_x = 1.0;
    double spacing_y = 1.0;
    bool raw_edges = false;

    friend bool operator==(const ConfigRecord&, const ConfigRecord&) = default;
};

/// Serialized summary of one pipeline run.
struct ReportDocument {
    std::string input;
    std::string version = kVersion;
    ConfigRecord config;
    EdgeCounts edge_counts;
    AxisRecord axis;
    bool detected = false;
    std::size_t area_px = 0;
    double area_mm2 = 0.0;
    std::optional<CircleRecord> circle;

    bool operator==(const ReportDocument& other) const;
};

struct PipelineResult {
    ReportDocument report;
    TumorReport tumor;
    RgbImage overlay;
    GrayImage homogenized;
    EdgeMap edges;         ///< Canny edges fed to the axis and asymmetry stages
    AsymmetryMap asymmetry;
};

/// Gray conversion, row homogenization, Canny, edge counts, axis fit,
/// asymmetry scoring, region selection, circle fit, area and overlay.
/// Failures are rethrown as StageError naming the stage.
PipelineResult run_pipeline(const AnyImage& image, const PipelineConfig& config,
                            const std::string& input_name = {});

/// Roberts, Prewitt (thresholded) and Canny edge counts on one image.
EdgeCounts count_operator_edges(const GrayImage& image, const CannyParams& canny,
                                double threshold);

/// Canonical JSON: fixed key order, 6 significant digits, trailing newline.
std::string emit_report(const ReportDocument& doc);
ReportDocument parse_report(const std::string& text);

/// Rounds to 6 significant digits, the precision the report carries.
double round_significant(double v);

}  // namespace bisym
