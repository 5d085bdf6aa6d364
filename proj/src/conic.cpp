#include "minsurf/conic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace minsurf {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::VectorXd to_vector(const std::vector<double>& p) {
    return Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size()));
}

struct RawPlane {
    Plane plane;
    Eigen::VectorXd sigma;
    double residual = 0.0;
    double diameter = 0.0;
};

RawPlane raw_plane(const std::vector<std::vector<double>>& points) {
    if (points.size() < 3) throw Error(ErrorKind::DegenerateInput, "need at least 3 points");
    const auto n = static_cast<Eigen::Index>(points.front().size());
    if (n < 2) throw Error(ErrorKind::DegenerateInput, "points must have dimension >= 2");
    Eigen::MatrixXd a(static_cast<Eigen::Index>(points.size()), n);
    for (std::size_t r = 0; r < points.size(); ++r) {
        if (static_cast<Eigen::Index>(points[r].size()) != n) {
            throw Error(ErrorKind::DimensionMismatch, "points have mixed dimensions");
        }
        a.row(static_cast<Eigen::Index>(r)) = to_vector(points[r]).transpose();
    }
    RawPlane out;
    out.plane.point = a.colwise().mean().transpose();
    a.rowwise() -= out.plane.point.transpose();
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    out.sigma = svd.singularValues();
    out.plane.e1 = svd.matrixV().col(0);
    out.plane.e2 = svd.matrixV().col(1);
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index q = r + 1; q < a.rows(); ++q) {
            out.diameter = std::max(out.diameter, (a.row(r) - a.row(q)).norm());
        }
    }
    if (!(out.diameter > 0.0)) throw Error(ErrorKind::DegenerateInput, "all points coincide");
    double worst = 0.0;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        const Eigen::VectorXd d = a.row(r).transpose();
        const Eigen::VectorXd off = d - d.dot(out.plane.e1) * out.plane.e1 -
                                    d.dot(out.plane.e2) * out.plane.e2;
        worst = std::max(worst, off.norm());
    }
    out.residual = worst / out.diameter;
    return out;
}

std::array<double, 6> unit_coefficients(const Eigen::Matrix3d& m) {
    std::array<double, 6> q{m(0, 0), 2 * m(0, 1), m(1, 1), 2 * m(0, 2), 2 * m(1, 2), m(2, 2)};
    double norm = 0.0;
    std::size_t largest = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        norm += q[i] * q[i];
        if (std::abs(q[i]) > std::abs(q[largest])) largest = i;
    }
    norm = std::sqrt(norm);
    const double sign = q[largest] < 0 ? -1.0 : 1.0;
    for (double& x : q) x *= sign / norm;
    return q;
}

Eigen::Matrix3d conic_matrix(const std::array<double, 6>& q) {
    Eigen::Matrix3d m;
    m << q[0], q[1] / 2, q[3] / 2,
         q[1] / 2, q[2], q[4] / 2,
         q[3] / 2, q[4] / 2, q[5];
    return m;
}

ConicFit line_fit(const std::vector<Eigen::Vector2d>& pts, const Eigen::Vector2d& centroid,
                  const Eigen::Vector2d& normal) {
    ConicFit fit;
    fit.kind = ConicKind::Line;
    fit.eccentricity = kInf;
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 2) = m(2, 0) = normal.x() / 2;
    m(1, 2) = m(2, 1) = normal.y() / 2;
    m(2, 2) = -normal.dot(centroid);
    fit.coefficients = unit_coefficients(m);
    fit.normalized_coefficients = fit.coefficients;
    for (const auto& p : pts) {
        fit.fit_residual = std::max(fit.fit_residual, std::abs(normal.dot(p - centroid)));
    }
    return fit;
}

// Eigenvalues (ascending) and eigenvectors of the quadratic block.
struct QuadraticPart {
    Eigen::Vector2d lambda;
    Eigen::Matrix2d vectors;
};

QuadraticPart quadratic_part(const Eigen::Matrix3d& m) {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.topLeftCorner<2, 2>());
    return {es.eigenvalues(), es.eigenvectors()};
}

// Fills geometric fields (center, axes, eccentricity, canonical form) from a
// conic matrix in in-plane coordinates.
void describe(ConicFit& fit, const Eigen::Matrix3d& m) {
    const QuadraticPart qp = quadratic_part(m);
    const double a = m(0, 0);
    const double c = m(1, 1);
    const double b = 2 * m(0, 1);
    const double gap = std::sqrt(0.25 * (a - c) * (a - c) + 0.25 * b * b);
    if (fit.kind == ConicKind::Parabola) {
        const int big = std::abs(qp.lambda(1)) >= std::abs(qp.lambda(0)) ? 1 : 0;
        const Eigen::Vector2d null_dir = qp.vectors.col(1 - big);
        const Eigen::Vector2d linear(2 * m(0, 2), 2 * m(1, 2));
        const double k = std::abs(qp.lambda(big)) / std::abs(linear.dot(null_dir));
        fit.parabola_coefficient = k;
        fit.canonical = CanonicalConic{k, 0.0, 0.0};
        fit.eccentricity = 1.0;
        return;
    }
    const Eigen::Matrix2d a2 = m.topLeftCorner<2, 2>();
    const Eigen::Vector2d center = a2.fullPivLu().solve(-m.topRightCorner<2, 1>());
    const double fc = m.determinant() / a2.determinant();
    fit.center = center;
    double l1 = qp.lambda(0);
    double l2 = qp.lambda(1);
    if (fit.kind == ConicKind::Ellipse || fit.kind == ConicKind::Circle) {
        if (std::abs(l1) < std::abs(l2)) std::swap(l1, l2); // |l1| ≥ |l2|
        const double e2 = 2 * gap / std::abs(l1);
        fit.eccentricity = std::sqrt(std::max(0.0, e2));
        fit.semi_axes = {std::sqrt(-fc / l2), std::sqrt(-fc / l1)};
    } else {
        // transverse axis: eigenvalue with sign opposite to fc
        double lt = (l1 * fc < 0) ? l1 : l2;
        double lc = (lt == l1) ? l2 : l1;
        fit.eccentricity = std::sqrt(1.0 + std::abs(lt) / std::abs(lc));
        fit.semi_axes = {std::sqrt(-fc / lt), std::sqrt(fc / lc)};
        if (std::abs(l1) < std::abs(l2) || (std::abs(l1) == std::abs(l2) && l1 < l2)) {
            std::swap(l1, l2);
        }
    }
    fit.canonical = CanonicalConic{l1 / -fc, l2 / -fc, -1.0};
}

} // namespace

std::string_view to_string(ConicKind kind) {
    switch (kind) {
    case ConicKind::Ellipse: return "ellipse";
    case ConicKind::Circle: return "circle";
    case ConicKind::Parabola: return "parabola";
    case ConicKind::Hyperbola: return "hyperbola";
    case ConicKind::Line: return "line";
    case ConicKind::LinePair: return "line-pair";
    case ConicKind::Degenerate: return "degenerate";
    }
    return "degenerate";
}

PlaneFit fit_plane(const std::vector<std::vector<double>>& points) {
    RawPlane raw = raw_plane(points);
    if (!(raw.sigma(1) > kLineTolerance * raw.sigma(0))) {
        throw Error(ErrorKind::DegenerateInput, "points are collinear");
    }
    return {raw.plane, raw.residual,
            std::vector<double>(raw.sigma.data(), raw.sigma.data() + raw.sigma.size())};
}

PlanarCurveSample planar_sample(std::vector<std::vector<double>> points,
                                std::vector<double> parameters) {
    RawPlane raw = raw_plane(points);
    PlanarCurveSample pc;
    pc.plane = raw.plane;
    pc.planarity_residual = raw.residual;
    for (const auto& p : points) {
        const Eigen::VectorXd d = to_vector(p) - raw.plane.point;
        pc.in_plane.emplace_back(d.dot(raw.plane.e1), d.dot(raw.plane.e2));
    }
    pc.ambient = std::move(points);
    pc.parameters = std::move(parameters);
    return pc;
}

PlanarCurveSample parameter_line(const Immersion& x, Param fixed, double value,
                                 std::size_t npoints) {
    if (npoints < 3) throw Error(ErrorKind::InvalidArgument, "need at least 3 points");
    const DomainSpec& d = x.domain;
    const double lo = fixed == Param::U ? d.v_min : d.u_min;
    const double hi = fixed == Param::U ? d.v_max : d.u_max;
    std::vector<std::vector<double>> pts;
    std::vector<double> params;
    for (std::size_t i = 0; i < npoints; ++i) {
        const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(npoints - 1);
        const Complex z = fixed == Param::U ? Complex{value, t} : Complex{t, value};
        if (d.puncture_distance(z) <= 1e-12) continue;
        try {
            pts.push_back(x(z.real(), z.imag()));
            params.push_back(t);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::EvaluationSingularity &&
                e.kind() != ErrorKind::SingularPath) {
                throw;
            }
        }
    }
    return planar_sample(std::move(pts), std::move(params));
}

PlanarCurveSample slice(const Immersion& x, std::size_t axis, double value, std::size_t npoints) {
    if (axis >= x.dimension) {
        throw Error(ErrorKind::InvalidArgument, "axis " + std::to_string(axis) + " out of range");
    }
    if (npoints < 12) throw Error(ErrorKind::InvalidArgument, "slice needs npoints >= 12");
    const DomainSpec& d = x.domain;
    constexpr int m = 9;
    auto coord = [&](double u, double v) { return x(u, v)[axis]; };
    auto grid_u = [&](int a) { return d.u_min + d.width() * a / (m - 1); };
    auto grid_v = [&](int b) { return d.v_min + d.height() * b / (m - 1); };

    double spread_in_u = 0.0; // variation along u at fixed v
    double spread_in_v = 0.0;
    double scale = std::abs(value);
    std::vector<std::vector<double>> probe(m, std::vector<double>(m));
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            probe[a][b] = coord(grid_u(a), grid_v(b));
            scale = std::max(scale, std::abs(probe[a][b]));
        }
    }
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            spread_in_v = std::max(spread_in_v, std::abs(probe[a][b] - probe[a][0]));
            spread_in_u = std::max(spread_in_u, std::abs(probe[a][b] - probe[0][b]));
        }
    }
    const double flat = 1e-9 * (1.0 + scale);
    Param moving;
    if (spread_in_v <= flat && spread_in_u > flat) {
        moving = Param::U;
    } else if (spread_in_u <= flat && spread_in_v > flat) {
        moving = Param::V;
    } else {
        throw Error(ErrorKind::AxisNotMonotone,
                    "level set of axis " + std::to_string(axis) + " is not a parameter line");
    }
    const double lo = moving == Param::U ? d.u_min : d.v_min;
    const double hi = moving == Param::U ? d.u_max : d.v_max;
    const double ref = moving == Param::U ? 0.5 * (d.v_min + d.v_max) : 0.5 * (d.u_min + d.u_max);
    auto f = [&](double t) { return moving == Param::U ? coord(t, ref) : coord(ref, t); };

    constexpr int checks = 33;
    int sign = 0;
    double prev = f(lo);
    for (int i = 1; i < checks; ++i) {
        const double cur = f(lo + (hi - lo) * i / (checks - 1));
        const int s = cur > prev ? 1 : (cur < prev ? -1 : 0);
        if (s == 0 || (sign != 0 && s != sign)) {
            throw Error(ErrorKind::AxisNotMonotone,
                        "axis " + std::to_string(axis) + " is not strictly monotone");
        }
        sign = s;
        prev = cur;
    }
    double a = lo;
    double b = hi;
    double fa = f(a) - value;
    const double fb = f(b) - value;
    if (fa == 0.0) {
        b = a;
    } else if (fb == 0.0) {
        a = b;
    } else if ((fa > 0) == (fb > 0)) {
        throw Error(ErrorKind::InvalidArgument, "value lies outside the coordinate range");
    }
    for (int iter = 0; iter < 200 && b - a > 0.0; ++iter) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid) - value;
        if (fm == 0.0) {
            a = b = mid;
            break;
        }
        if ((fm > 0) == (fa > 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    const double t = std::abs(f(a) - value) <= std::abs(f(b) - value) ? a : b;
    return parameter_line(x, moving, t, npoints);
}

PlanarCurveSample slice(const SurfacePatch& p, std::size_t axis, double value) {
    if (axis >= p.dimension) {
        throw Error(ErrorKind::InvalidArgument, "axis " + std::to_string(axis) + " out of range");
    }
    double scale = std::abs(value);
    for (std::size_t i = 0; i < p.nu * p.nv; ++i) {
        if (p.valid[i]) scale = std::max(scale, std::abs(p.points[i * p.dimension + axis]));
    }
    const double tol = 1e-9 * (1.0 + scale);
    auto collect = [&](bool fixed_u, std::size_t line) -> std::optional<PlanarCurveSample> {
        std::vector<std::vector<double>> pts;
        std::vector<double> params;
        const std::size_t count = fixed_u ? p.nv : p.nu;
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t j = fixed_u ? line : i;
            const std::size_t k = fixed_u ? i : line;
            if (!p.is_valid(j, k)) continue;
            const auto pt = p.point(j, k);
            if (std::abs(pt[axis] - value) > tol) return std::nullopt;
            pts.emplace_back(pt.begin(), pt.end());
            params.push_back(fixed_u ? p.v(k) : p.u(j));
        }
        if (pts.size() < 3) return std::nullopt;
        return planar_sample(std::move(pts), std::move(params));
    };
    for (std::size_t j = 0; j < p.nu; ++j) {
        if (auto pc = collect(true, j)) return *pc;
    }
    for (std::size_t k = 0; k < p.nv; ++k) {
        if (auto pc = collect(false, k)) return *pc;
    }
    throw Error(ErrorKind::AxisNotMonotone,
                "level set of axis " + std::to_string(axis) + " is not a grid line");
}

ConicFit fit_conic(const PlanarCurveSample& pc) {
    if (pc.planarity_residual > kPlanarityTolerance) {
        throw Error(ErrorKind::NotPlanar, "slice is not planar (residual " +
                                              std::to_string(pc.planarity_residual) + ")");
    }
    return fit_conic(pc.in_plane);
}

ConicFit fit_conic(const std::vector<Eigen::Vector2d>& pts) {
    if (pts.size() < 6) throw Error(ErrorKind::DegenerateInput, "conic fit needs >= 6 points");
    Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
    for (const auto& p : pts) centroid += p;
    centroid /= static_cast<double>(pts.size());

    Eigen::MatrixXd centered(static_cast<Eigen::Index>(pts.size()), 2);
    double sq = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        centered.row(static_cast<Eigen::Index>(i)) = (pts[i] - centroid).transpose();
        sq += (pts[i] - centroid).squaredNorm();
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> line_svd(centered, Eigen::ComputeFullV);
    const Eigen::Vector2d sv = line_svd.singularValues();
    if (!(sv(0) > 0.0)) throw Error(ErrorKind::DegenerateInput, "all points coincide");
    if (sv(1) <= kLineTolerance * sv(0)) {
        return line_fit(pts, centroid, line_svd.matrixV().col(1));
    }

    const double s = std::sqrt(2.0 * static_cast<double>(pts.size()) / sq);
    Eigen::MatrixXd design(static_cast<Eigen::Index>(pts.size()), 6);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Eigen::Vector2d q = s * (pts[i] - centroid);
        design.row(static_cast<Eigen::Index>(i)) << q.x() * q.x(), q.x() * q.y(), q.y() * q.y(),
            q.x(), q.y(), 1.0;
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
    const Eigen::VectorXd sigma = svd.singularValues();
    if (std::abs(sigma(4) - sigma(5)) <= kAmbiguityTolerance * sigma(0)) {
        throw Error(ErrorKind::IllConditioned, "conic fit is ambiguous: two smallest singular "
                                               "values coincide");
    }
    const Eigen::VectorXd v = svd.matrixV().col(5);
    std::array<double, 6> raw{};
    for (int i = 0; i < 6; ++i) raw[i] = v(i);
    ConicFit fit;
    fit.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    const Eigen::Matrix3d mn = conic_matrix(raw);
    fit.normalized_coefficients = unit_coefficients(mn);
    fit.fit_residual = (design * v).cwiseAbs().maxCoeff();

    Eigen::Matrix3d t;
    t << s, 0, -s * centroid.x(),
         0, s, -s * centroid.y(),
         0, 0, 1;
    const Eigen::Matrix3d m = t.transpose() * mn * t;
    fit.coefficients = unit_coefficients(m);

    // Classification in the normalized frame.
    const Eigen::Matrix3d mu = conic_matrix(fit.normalized_coefficients);
    const std::array<double, 6>& q = fit.normalized_coefficients;
    const double disc = q[1] * q[1] - 4 * q[0] * q[2];
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(mu);
    const double min_eig = es.eigenvalues().cwiseAbs().minCoeff();
    if (min_eig <= kDegenerateTolerance) {
        if (std::abs(disc) <= kParabolaTolerance) {
            fit.kind = ConicKind::Line;
        } else {
            fit.kind = disc > 0 ? ConicKind::LinePair : ConicKind::Degenerate;
        }
        fit.eccentricity = fit.kind == ConicKind::Degenerate ? 0.0 : kInf;
        return fit;
    }
    if (std::abs(disc) <= kParabolaTolerance) {
        fit.kind = ConicKind::Parabola;
    } else if (disc < 0) {
        // real ellipse only if F at the center has sign opposite to A
        const Eigen::Matrix2d a2 = mu.topLeftCorner<2, 2>();
        const double fc = mu.determinant() / a2.determinant();
        fit.kind = fc * mu(0, 0) < 0 ? ConicKind::Ellipse : ConicKind::Degenerate;
    } else {
        fit.kind = ConicKind::Hyperbola;
    }
    if (fit.kind == ConicKind::Degenerate) return fit;
    describe(fit, m);
    if (fit.kind == ConicKind::Ellipse && fit.eccentricity <= kCircleTolerance) {
        fit.kind = ConicKind::Circle;
    }
    return fit;
}

double eccentricity(const ConicFit& fit) {
    switch (fit.kind) {
    case ConicKind::Line:
    case ConicKind::LinePair:
    case ConicKind::Degenerate:
        throw Error(ErrorKind::DegenerateConic,
                    "eccentricity is undefined for a " + std::string(to_string(fit.kind)));
    default: return fit.eccentricity;
    }
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> asymptotes(const ConicFit& fit) {
    if (fit.kind != ConicKind::Hyperbola) {
        throw Error(ErrorKind::NotHyperbola,
                    "asymptotes need a hyperbola, got " + std::string(to_string(fit.kind)));
    }
    const QuadraticPart qp = quadratic_part(conic_matrix(fit.coefficients));
    // l0 < 0 < l1: l1 X² + l0 Y² = 0 along X/Y = ±sqrt(−l0/l1)
    const double a = std::sqrt(std::abs(qp.lambda(0)));
    const double b = std::sqrt(std::abs(qp.lambda(1)));
    const Eigen::Vector2d p = qp.vectors.col(1);
    const Eigen::Vector2d n = qp.vectors.col(0);
    return {(a * p + b * n).normalized(), (a * p - b * n).normalized()};
}

} // namespace minsurf
