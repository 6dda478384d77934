#pragma once

// Least-squares fitting through the normal equations, solved with Cramer's
// rule. All arithmetic is double precision with left-to-right accumulation.

#include <array>
#include <optional>
#include <span>
#include <vector>

namespace bisym {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// One observation with two regressors. Line fits use Point2 instead.
struct Sample {
    double x1 = 0.0;
    double x2 = 0.0;
    double y = 0.0;
};

struct LinearFit {
    double a0 = 0.0;                ///< intercept
    double a1 = 0.0;                ///< slope on x / x1
    std::optional<double> a2;       ///< coefficient on x2, present for plane fits
    double sr = 0.0;                ///< sum of squared residuals

    double predict(double x1, double x2 = 0.0) const { return a0 + a1 * x1 + a2.value_or(0.0) * x2; }
};

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

struct NormalSystem {
    Mat3 matrix{};
    Vec3 rhs{};
    std::size_t n = 0;
};

/// Minimizes sum (y - a0 - a1 x)^2. Throws DegenerateRegressorError when every
/// x is equal and InsufficientDataError for fewer than two samples.
LinearFit fit_line(std::span<const Point2> samples);

/// Minimizes sum (y - a0 - a1 x1 - a2 x2)^2 via build_normal_system and
/// cramer_solve.
LinearFit fit_plane(std::span<const Sample> samples);

/// e_i = y_i - a0 - a1 x_i. Throws ParameterError if the fit carries a2.
std::vector<double> residuals(const LinearFit& fit, std::span<const Point2> samples);
/// e_i = y_i - a0 - a1 x1_i - a2 x2_i. Throws ParameterError if a2 is absent.
std::vector<double> residuals(const LinearFit& fit, std::span<const Sample> samples);

/// [[n, Sx1, Sx2], [Sx1, Sx1^2, Sx1x2], [Sx2, Sx1x2, Sx2^2]] and
/// [Sy, Sx1y, Sx2y]. Needs at least three samples.
NormalSystem build_normal_system(std::span<const Sample> samples);

double determinant(const Mat2& m);
double determinant(const Mat3& m);
/// Dispatches on size; anything other than 2x2 or 3x3 is a ParameterError.
double determinant(const std::vector<std::vector<double>>& m);

/// 1e-10 * max(1, max|entry|^3).
double singular_tolerance(const Mat3& m);

/// a_k = D_k / D, D_k being D with column k replaced by the right-hand side.
/// Throws SingularSystemError when |D| <= singular_tolerance(matrix).
Vec3 cramer_solve(const NormalSystem& system);
Vec3 cramer_solve(const Mat3& matrix, const Vec3& rhs);

}  // namespace bisym
