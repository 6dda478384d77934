#include <bisym/lsq.hpp>

#include <bisym/error.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace bisym {
namespace {

void require_finite(double v) {
    if (!std::isfinite(v)) {
        throw ParameterError("sample values must be finite");
    }
}

std::string format_det(double det, double tol) {
    std::ostringstream os;
    os << "singular normal system: |det| = " << std::abs(det) << " <= " << tol;
    return os.str();
}

}  // namespace

LinearFit fit_line(std::span<const Point2> samples) {
    if (samples.size() < 2) {
        throw InsufficientDataError("line fit needs at least 2 samples, got " +
                                    std::to_string(samples.size()));
    }
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    bool distinct = false;
    for (const auto& s : samples) {
        require_finite(s.x);
        require_finite(s.y);
        sx += s.x;
        sy += s.y;
        sxx += s.x * s.x;
        sxy += s.x * s.y;
        distinct = distinct || s.x != samples.front().x;
    }
    if (!distinct) {
        throw DegenerateRegressorError("all regressor values are equal");
    }
    const double n = static_cast<double>(samples.size());
    const Mat2 m{{{n, sx}, {sx, sxx}}};
    const double d = determinant(m);
    LinearFit fit;
    fit.a0 = determinant(Mat2{{{sy, sx}, {sxy, sxx}}}) / d;
    fit.a1 = determinant(Mat2{{{n, sy}, {sx, sxy}}}) / d;
    for (double e : residuals(fit, samples)) {
        fit.sr += e * e;
    }
    return fit;
}

LinearFit fit_plane(std::span<const Sample> samples) {
    const Vec3 a = cramer_solve(build_normal_system(samples));
    LinearFit fit{a[0], a[1], a[2], 0.0};
    for (double e : residuals(fit, samples)) {
        fit.sr += e * e;
    }
    return fit;
}

std::vector<double> residuals(const LinearFit& fit, std::span<const Point2> samples) {
    if (fit.a2) {
        throw ParameterError("fit has two regressors but samples have one");
    }
    std::vector<double> e;
    e.reserve(samples.size());
    for (const auto& s : samples) {
        e.push_back(s.y - fit.a0 - fit.a1 * s.x);
    }
    return e;
}

std::vector<double> residuals(const LinearFit& fit, std::span<const Sample> samples) {
    if (!fit.a2) {
        throw ParameterError("fit has one regressor but samples have two");
    }
    std::vector<double> e;
    e.reserve(samples.size());
    for (const auto& s : samples) {
        e.push_back(s.y - fit.a0 - fit.a1 * s.x1 - *fit.a2 * s.x2);
    }
    return e;
}

NormalSystem build_normal_system(std::span<const Sample> samples) {
    if (samples.size() < 3) {
        throw InsufficientDataError("normal system needs at least 3 samples, got " +
                                    std::to_string(samples.size()));
    }
    double s1 = 0.0, s2 = 0.0, s11 = 0.0, s12 = 0.0, s22 = 0.0;
    double sy = 0.0, s1y = 0.0, s2y = 0.0;
    for (const auto& s : samples) {
        require_finite(s.x1);
        require_finite(s.x2);
        require_finite(s.y);
        s1 += s.x1;
        s2 += s.x2;
        s11 += s.x1 * s.x1;
        s12 += s.x1 * s.x2;
        s22 += s.x2 * s.x2;
        sy += s.y;
        s1y += s.x1 * s.y;
        s2y += s.x2 * s.y;
    }
    NormalSystem sys;
    sys.n = samples.size();
    const double n = static_cast<double>(sys.n);
    sys.matrix = {{{n, s1, s2}, {s1, s11, s12}, {s2, s12, s22}}};
    sys.rhs = {sy, s1y, s2y};
    return sys;
}

double determinant(const Mat2& m) {
    return m[0][0] * m[1][1] - m[0][1] * m[1][0];
}

double determinant(const Mat3& m) {
    // Cofactor expansion along the first row.
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

double determinant(const std::vector<std::vector<double>>& m) {
    for (const auto& row : m) {
        if (row.size() != m.size()) {
            throw ParameterError("determinant needs a square matrix");
        }
    }
    if (m.size() == 2) {
        return determinant(Mat2{{{m[0][0], m[0][1]}, {m[1][0], m[1][1]}}});
    }
    if (m.size() == 3) {
        return determinant(Mat3{{{m[0][0], m[0][1], m[0][2]},
                                 {m[1][0], m[1][1], m[1][2]},
                                 {m[2][0], m[2][1], m[2][2]}}});
    }
    throw ParameterError("determinant supports 2x2 and 3x3 only, got " + std::to_string(m.size()) +
                         "x" + std::to_string(m.size()));
}

double singular_tolerance(const Mat3& m) {
    double largest = 0.0;
    for (const auto& row : m) {
        for (double v : row) {
            largest = std::max(largest, std::abs(v));
        }
    }
    return 1e-10 * std::max(1.0, largest * largest * largest);
}

Vec3 cramer_solve(const Mat3& matrix, const Vec3& rhs) {
    const double d = determinant(matrix);
    const double tol = singular_tolerance(matrix);
    if (!(std::abs(d) > tol)) {
        throw SingularSystemError(format_det(d, tol));
    }
    Vec3 solution{};
    for (int k = 0; k < 3; ++k) {
        Mat3 replaced = matrix;
        for (int r = 0; r < 3; ++r) {
            replaced[r][k] = rhs[r];
        }
        solution[k] = determinant(replaced) / d;
    }
    return solution;
}

Vec3 cramer_solve(const NormalSystem& system) {
    return cramer_solve(system.matrix, system.rhs);
}

}  // namespace bisym
