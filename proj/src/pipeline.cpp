#include <bisym/pipeline.hpp>

#include <bisym/axis.hpp>
#include <bisym/error.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <utility>

namespace bisym {
namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw StageError(name, e.what());
    }
}

ConfigRecord echo(const PipelineConfig& c) {
    return ConfigRecord{c.canny.sigma,      c.canny.low,    c.canny.high,     c.symmetry.mt,
                        c.symmetry.levels,  c.axis_degree,  c.tol,            c.min_area,
                        c.spacing.x,        c.spacing.y,    c.raw_edges};
}

bool same(double a, double b) {
    return round_significant(a) == round_significant(b);
}

bool same(const std::optional<double>& a, const std::optional<double>& b) {
    return a.has_value() == b.has_value() && (!a || same(*a, *b));
}

nlohmann::ordered_json number(double v) {
    return nlohmann::ordered_json(round_significant(v));
}

}  // namespace

void PipelineConfig::validate() const {
    canny.validate();
    symmetry.validate();
    if (axis_degree != 1 && axis_degree != 2) {
        throw ParameterError("axis degree must be 1 or 2");
    }
    if (tol < 0) {
        throw ParameterError("tol must be non-negative");
    }
    if (min_area < 1) {
        throw ParameterError("min_area must be at least 1");
    }
    if (!(spacing.x > 0.0) || !(spacing.y > 0.0)) {
        throw ParameterError("pixel spacing must be positive");
    }
    if (!(edge_threshold > 0.0 && edge_threshold <= 1.0)) {
        throw ParameterError("edge threshold must lie in (0, 1]");
    }
}

double round_significant(double v) {
    if (v == 0.0 || !std::isfinite(v)) {
        return v;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::strtod(buf, nullptr);
}

bool ReportDocument::operator==(const ReportDocument& o) const {
    const auto& c = config;
    const auto& oc = o.config;
    const bool config_equal =
        same(c.sigma, oc.sigma) && same(c.canny_low, oc.canny_low) &&
        same(c.canny_high, oc.canny_high) && c.mt == oc.mt && c.quant_levels == oc.quant_levels &&
        c.axis_degree == oc.axis_degree && c.tol == oc.tol && c.min_area == oc.min_area &&
        same(c.spacing_x, oc.spacing_x) && same(c.spacing_y, oc.spacing_y) &&
        c.raw_edges == oc.raw_edges;
    const bool circle_equal =
        circle.has_value() == o.circle.has_value() &&
        (!circle || (same(circle->cx, o.circle->cx) && same(circle->cy, o.circle->cy) &&
                     same(circle->r, o.circle->r)));
    return input == o.input && version == o.version && config_equal &&
           edge_counts.roberts == o.edge_counts.roberts &&
           edge_counts.prewitt == o.edge_counts.prewitt &&
           edge_counts.canny == o.edge_counts.canny && axis.degree == o.axis.degree &&
           same(axis.a0, o.axis.a0) && same(axis.a1, o.axis.a1) && same(axis.a2, o.axis.a2) &&
           same(axis.sr, o.axis.sr) && detected == o.detected && area_px == o.area_px &&
           same(area_mm2, o.area_mm2) && circle_equal;
}

EdgeCounts count_operator_edges(const GrayImage& image, const CannyParams& canny_params,
                                double threshold) {
    EdgeCounts counts;
    counts.roberts = count_edges(threshold_edges(gradient(image, GradientOperator::roberts), threshold));
    counts.prewitt = count_edges(threshold_edges(gradient(image, GradientOperator::prewitt), threshold));
    counts.canny = count_edges(canny(image, canny_params));
    return counts;
}

PipelineResult run_pipeline(const AnyImage& image, const PipelineConfig& config,
                            const std::string& input_name) {
    stage("config", [&] { config.validate(); return 0; });

    GrayImage gray = stage("gray", [&] { return to_gray(image); });
    GrayImage homogenized = stage("row-symmetry", [&] { return process_image(gray, config.symmetry); });
    const GrayImage& analysed = config.raw_edges ? gray : homogenized;

    EdgeMap edges = stage("canny", [&] { return canny(analysed, config.canny); });
    const EdgeCounts counts = stage("edge-counts", [&] {
        EdgeCounts c;
        c.roberts = count_edges(threshold_edges(gradient(analysed, GradientOperator::roberts),
                                                config.edge_threshold));
        c.prewitt = count_edges(threshold_edges(gradient(analysed, GradientOperator::prewitt),
                                                config.edge_threshold));
        c.canny = count_edges(edges);
        return c;
    });

    const AxisModel axis = stage("axis", [&] {
        return fit_axis(extract_midpoints(edges), config.axis_degree);
    });
    AsymmetryMap asym = stage("asymmetry", [&] { return asymmetry_map(edges, axis, config.tol); });

    TumorReport tumor;
    tumor.axis = axis;
    tumor.edge_counts = counts;
    stage("region", [&] {
        const auto regions = candidate_regions(asym);
        tumor.region = select_tumor_region(regions, config.min_area);
        tumor.detected = tumor.region.has_value();
        return 0;
    });
    if (tumor.detected) {
        tumor.circle = stage("circle-fit", [&] { return fit_boundary_circle(*tumor.region); });
        const AreaMeasure area = stage("area", [&] { return compute_area(*tumor.region, config.spacing); });
        tumor.area_px = area.area_px;
        tumor.area_mm2 = area.area_mm2;
    }
    RgbImage overlay = stage("overlay", [&] { return render_overlay(gray, tumor); });

    ReportDocument doc;
    doc.input = input_name;
    doc.config = echo(config);
    doc.edge_counts = counts;
    doc.axis = AxisRecord{axis.degree, axis.a0, axis.a1,
                          axis.degree == 2 ? std::optional<double>(axis.a2) : std::nullopt, axis.sr};
    doc.detected = tumor.detected;
    doc.area_px = tumor.area_px;
    doc.area_mm2 = tumor.area_mm2;
    if (tumor.circle) {
        doc.circle = CircleRecord{tumor.circle->center.x, tumor.circle->center.y, tumor.circle->radius};
    }

    return PipelineResult{std::move(doc), std::move(tumor), std::move(overlay),
                          std::move(homogenized), std::move(edges), std::move(asym)};
}

std::string emit_report(const ReportDocument& doc) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["input"] = doc.input;
    j["version"] = doc.version;
    const ConfigRecord& c = doc.config;
    j["config"] = ordered_json{{"sigma", number(c.sigma)},
                               {"canny_low", number(c.canny_low)},
                               {"canny_high", number(c.canny_high)},
                               {"mt", c.mt},
                               {"quant_levels", c.quant_levels},
                               {"axis_degree", c.axis_degree},
                               {"tol", c.tol},
                               {"min_area", c.min_area},
                               {"spacing", ordered_json::array({number(c.spacing_x), number(c.spacing_y)})},
                               {"raw_edges", c.raw_edges}};
    j["edge_counts"] = ordered_json{{"roberts", doc.edge_counts.roberts},
                                    {"prewitt", doc.edge_counts.prewitt},
                                    {"canny", doc.edge_counts.canny}};
    j["axis"] = ordered_json{{"degree", doc.axis.degree},
                             {"a0", number(doc.axis.a0)},
                             {"a1", number(doc.axis.a1)},
                             {"a2", doc.axis.a2 ? number(*doc.axis.a2) : ordered_json(nullptr)},
                             {"sr", number(doc.axis.sr)}};
    j["detected"] = doc.detected;
    j["area_px"] = doc.area_px;
    j["area_mm2"] = number(doc.area_mm2);
    if (doc.circle) {
        j["circle"] = ordered_json{{"cx", number(doc.circle->cx)},
                                   {"cy", number(doc.circle->cy)},
                                   {"r", number(doc.circle->r)}};
    } else {
        j["circle"] = nullptr;
    }
    return j.dump(2) + "\n";
}

namespace {

ReportDocument report_from_json(const nlohmann::json& j) {
    ReportDocument doc;
    doc.input = j.at("input").get<std::string>();
    doc.version = j.at("version").get<std::string>();
    const auto& c = j.at("config");
    doc.config.sigma = c.at("sigma").get<double>();
    doc.config.canny_low = c.at("canny_low").get<double>();
    doc.config.canny_high = c.at("canny_high").get<double>();
    doc.config.mt = c.at("mt").get<int>();
    doc.config.quant_levels = c.at("quant_levels").get<int>();
    doc.config.axis_degree = c.at("axis_degree").get<int>();
    doc.config.tol = c.at("tol").get<int>();
    doc.config.min_area = c.at("min_area").get<std::size_t>();
    doc.config.spacing_x = c.at("spacing").at(0).get<double>();
    doc.config.spacing_y = c.at("spacing").at(1).get<double>();
    doc.config.raw_edges = c.at("raw_edges").get<bool>();
    const auto& e = j.at("edge_counts");
    doc.edge_counts = {e.at("roberts").get<std::size_t>(), e.at("prewitt").get<std::size_t>(),
                       e.at("canny").get<std::size_t>()};
    const auto& a = j.at("axis");
    doc.axis.degree = a.at("degree").get<int>();
    doc.axis.a0 = a.at("a0").get<double>();
    doc.axis.a1 = a.at("a1").get<double>();
    if (!a.at("a2").is_null()) {
        doc.axis.a2 = a.at("a2").get<double>();
    }
    doc.axis.sr = a.at("sr").get<double>();
    doc.detected = j.at("detected").get<bool>();
    doc.area_px = j.at("area_px").get<std::size_t>();
    doc.area_mm2 = j.at("area_mm2").get<double>();
    if (!j.at("circle").is_null()) {
        const auto& ci = j.at("circle");
        doc.circle = CircleRecord{ci.at("cx").get<double>(), ci.at("cy").get<double>(),
                                  ci.at("r").get<double>()};
    }
    return doc;
}

}  // namespace

ReportDocument parse_report(const std::string& text) {
    try {
        return report_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
        throw DecodeError(std::string("report: ") + e.what());
    }
}

}  // namespace bisym
