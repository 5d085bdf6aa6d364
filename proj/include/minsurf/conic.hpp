#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "minsurf/surface.hpp"

namespace minsurf {

struct Plane {
    Eigen::VectorXd point; // centroid
    Eigen::VectorXd e1;    // orthonormal spanning vectors
    Eigen::VectorXd e2;
};

struct PlaneFit {
    Plane plane;
    /// max out-of-plane distance / curve diameter
    double residual = 0.0;
    std::vector<double> singular_values;
};

/// Least-squares plane through points of R^n by centered SVD. Throws
/// DegenerateInput for fewer than 3 points or collinear points.
PlaneFit fit_plane(const std::vector<std::vector<double>>& points);

struct PlanarCurveSample {
    std::vector<std::vector<double>> ambient;
    /// Parameter value swept along the level curve, one per point.
    std::vector<double> parameters;
    Plane plane;
    std::vector<Eigen::Vector2d> in_plane;
    double planarity_residual = 0.0;
};

/// Wraps ambient points with their fitted plane and in-plane coordinates.
/// Collinear points are accepted (e2 is then any unit normal to e1).
PlanarCurveSample planar_sample(std::vector<std::vector<double>> points,
                                std::vector<double> parameters = {});

enum class Param { U, V };

/// Points X(u, v) along the parameter line where `fixed` equals `value`, the
/// other parameter swept uniformly over the domain.
PlanarCurveSample parameter_line(const Immersion& x, Param fixed, double value,
                                 std::size_t npoints);

/// Level curve {x_axis = value} of an immersion whose axis coordinate depends
/// on one parameter only and is strictly monotone in it. The parameter is
/// located by bisection and the other one is swept over the domain. Throws
/// AxisNotMonotone otherwise, InvalidArgument if value is out of range.
PlanarCurveSample slice(const Immersion& x, std::size_t axis, double value,
                        std::size_t npoints);

/// Level curve of a sampled patch; it must coincide with a grid line.
PlanarCurveSample slice(const SurfacePatch& p, std::size_t axis, double value);

enum class ConicKind { Ellipse, Circle, Parabola, Hyperbola, Line, LinePair, Degenerate };

std::string_view to_string(ConicKind kind);

inline constexpr double kParabolaTolerance = 1e-9;
inline constexpr double kCircleTolerance = 1e-7;
inline constexpr double kDegenerateTolerance = 1e-9;
inline constexpr double kLineTolerance = 1e-9;
inline constexpr double kAmbiguityTolerance = 1e-6;
inline constexpr double kPlanarityTolerance = 1e-6;

/// Normal form after a rigid motion: l1·X² + l2·Y² + f = 0 for central
/// conics (|l1| ≥ |l2|, scaled so f = −1); for parabolas Y = l1·X² with
/// l2 = f = 0.
struct CanonicalConic {
    double l1 = 0.0;
    double l2 = 0.0;
    double f = 0.0;
};

struct ConicFit {
    /// A x² + B xy + C y² + D x + E y + F = 0 in the sample's in-plane
    /// coordinates, unit Euclidean norm, largest entry positive.
    std::array<double, 6> coefficients{};
    /// Same conic in the isotropically normalized frame used for the fit.
    std::array<double, 6> normalized_coefficients{};
    ConicKind kind = ConicKind::Degenerate;
    /// Infinity for lines.
    double eccentricity = 0.0;
    /// max |algebraic distance| over samples in the normalized frame
    double fit_residual = 0.0;
    std::vector<double> singular_values;
    std::optional<Eigen::Vector2d> center;
    /// Semi-axes (r_transverse/major, r_conjugate/minor) of central conics.
    std::optional<std::pair<double, double>> semi_axes;
    /// k in y = k x² for parabolas.
    std::optional<double> parabola_coefficient;
    std::optional<CanonicalConic> canonical;
};

/// Algebraic least-squares conic fit with isotropic normalization. Points
/// with σ2/σ1 ≤ kLineTolerance are reported as a line without a fit.
/// Throws NotPlanar, IllConditioned, DegenerateInput (< 6 points).
ConicFit fit_conic(const PlanarCurveSample& pc);
ConicFit fit_conic(const std::vector<Eigen::Vector2d>& points);

/// Throws DegenerateConic for lines, line pairs and degenerate conics.
double eccentricity(const ConicFit& fit);

/// Unit asymptote directions in the sample's in-plane coordinates.
/// Throws NotHyperbola.
std::pair<Eigen::Vector2d, Eigen::Vector2d> asymptotes(const ConicFit& fit);

} // namespace minsurf
