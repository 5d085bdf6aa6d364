#include "minsurf/transforms.hpp"

#include <cmath>
#include <numbers>

namespace minsurf {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_dimension(const NullCurve& c, std::size_t n, const char* what) {
    if (c.dimension() != n) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " expects " +
                                                      std::to_string(n) + " components, got " +
                                                      std::to_string(c.dimension()));
    }
}

} // namespace

OrthogonalityReport is_complex_orthogonal(const Eigen::MatrixXcd& m, double tolerance) {
    if (m.rows() != m.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "orthogonality check needs a square matrix");
    }
    const Eigen::MatrixXcd defect =
        m.transpose() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    OrthogonalityReport report;
    report.max_deviation = defect.size() == 0 ? 0.0 : defect.cwiseAbs().maxCoeff();
    report.orthogonal = report.max_deviation <= tolerance;
    return report;
}

NullCurve associate(const NullCurve& c, double theta) {
    const Complex rot = std::polar(1.0, -theta);
    std::vector<Expr> out;
    for (const Expr& f : c.components()) out.push_back(rot * f);
    return NullCurve(std::move(out), c.domain());
}

NullTransform goursat_matrix(double t) {
    Eigen::Matrix3cd m = Eigen::Matrix3cd::Identity();
    m(0, 0) = std::cosh(t);
    m(0, 1) = -kI * std::sinh(t);
    m(1, 0) = kI * std::sinh(t);
    m(1, 1) = std::cosh(t);
    return {m, true};
}

NullCurve goursat(const NullCurve& c3, double t) {
    require_dimension(c3, 3, "goursat");
    return apply_transform(goursat_matrix(t), c3);
}

WeierstrassData lopez_ros(const WeierstrassData& w, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::InvalidArgument, "lopez_ros needs lambda > 0");
    }
    return {lambda * w.G, w.Psi / lambda, w.domain};
}

double goursat_parameter_for_lopez_ros(double lambda) {
    if (!(lambda > 0.0)) throw Error(ErrorKind::InvalidArgument, "lambda must be positive");
    return -std::log(lambda);
}

NullCurve lawson(const NullCurve& c3, double alpha, double beta) {
    require_dimension(c3, 3, "lawson");
    const Complex rot = std::polar(1.0, -alpha);
    const Complex a = rot * std::cos(beta);
    const Complex b = rot * std::sin(beta) * -kI;
    std::vector<Expr> out;
    for (const Expr& f : c3.components()) {
        out.push_back(a * f);
        out.push_back(b * f);
    }
    return NullCurve(std::move(out), c3.domain());
}

NullTransform parabolic_rotation_matrix(Complex c) {
    const Complex h = 0.5 * c * c;
    Eigen::Matrix4cd m;
    m << 1.0, -c, -c * kI, 0.0,
         c, 1.0 - h, -h * kI, 0.0,
         c * kI, -h * kI, 1.0 + h, 0.0,
         0.0, 0.0, 0.0, 1.0;
    return {m, true};
}

NullTransform segre_LR_matrix(Complex L, Complex R) {
    const Complex s = L + R;
    const Complex d = L - R;
    const Complex p = L * R;
    Eigen::Matrix4cd m;
    m << 1.0, -0.5 * kI * s, 0.5 * s, 0.0,
         0.5 * kI * s, 1.0 + 0.5 * p, 0.5 * kI * p, -0.5 * d,
         -0.5 * s, 0.5 * kI * p, 1.0 - 0.5 * p, -0.5 * kI * d,
         0.0, 0.5 * d, 0.5 * kI * d, 1.0;
    NullTransform t{m, false};
    t.orthogonal = is_complex_orthogonal(t).orthogonal;
    return t;
}

Eigen::Matrix3d lorentz_parabolic_matrix(double t) {
    const double h = 0.5 * t * t;
    Eigen::Matrix3d m;
    m << 1.0 - h, t, h,
         -t, 1.0, t,
         -h, t, 1.0 + h;
    return m;
}

Eigen::Matrix3cd wick_rotate(const Eigen::Matrix3d& lorentz) {
    const Eigen::Vector3cd d(1.0, 1.0, -kI);
    Eigen::Matrix3cd r = d.cwiseInverse().asDiagonal() * lorentz.cast<Complex>() * d.asDiagonal();
    Eigen::Matrix3cd p = Eigen::Matrix3cd::Zero();
    p(0, 1) = 1.0;
    p(1, 0) = 1.0;
    p(2, 2) = 1.0;
    return p * r * p;
}

NullCurve apply_transform(const NullTransform& t, const NullCurve& c) {
    if (t.matrix.rows() != t.matrix.cols() ||
        static_cast<std::size_t>(t.matrix.rows()) != c.dimension()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::to_string(t.matrix.rows()) + "x" + std::to_string(t.matrix.cols()) +
                        " matrix cannot act on a " + std::to_string(c.dimension()) +
                        "-component curve");
    }
    std::vector<Expr> out;
    for (Eigen::Index j = 0; j < t.matrix.rows(); ++j) {
        Expr sum;
        for (Eigen::Index k = 0; k < t.matrix.cols(); ++k) {
            const Complex m = t.matrix(j, k);
            if (m == Complex{}) continue;
            sum = sum + m * c[static_cast<std::size_t>(k)];
        }
        out.push_back(sum);
    }
    return NullCurve(std::move(out), c.domain());
}

NullCurve deform_theorem(const WeierstrassData& w, Complex c) {
    const Expr G2 = pow(w.G, 2);
    const Complex c2 = c * c;
    return NullCurve({c * G2 * w.Psi, 0.5 * (1.0 + (c2 - 1.0) * G2) * w.Psi,
                      (0.5 * kI) * (1.0 + (c2 + 1.0) * G2) * w.Psi, w.G * w.Psi},
                     w.domain);
}

double deformed_conformal_factor(const WeierstrassData& w, Complex c, Complex zeta) {
    const Complex g = w.G.eval(zeta, w.domain.cut_angle);
    const Complex psi = w.Psi.eval(zeta, w.domain.cut_angle);
    const double g2 = std::norm(g);
    // |1 + c²G²|² = |1 + icG|² |1 − icG|², so the quotients cancel
    const double plus = std::norm(1.0 + kI * c * g) + g2;
    const double minus = std::norm(1.0 - kI * c * g) + g2;
    return 0.25 * std::norm(psi) * plus * minus;
}

NullCurve deform_rotated(const WeierstrassData& w, double theta) {
    if (!(std::abs(theta) < 0.5 * std::numbers::pi)) {
        throw Error(ErrorKind::InvalidArgument, "theta must lie in (-pi/2, pi/2)");
    }
    const double cs = std::cos(theta);
    const Expr H = pow(w.G, 2) / (cs * cs);
    return NullCurve({0.5 * std::sin(theta) * (1.0 + H) * w.Psi, 0.5 * cs * (1.0 - H) * w.Psi,
                      (0.5 * kI) * (1.0 + H) * w.Psi, w.G * w.Psi},
                     w.domain);
}

Eigen::Matrix4d rotated_frame(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix4d e = Eigen::Matrix4d::Identity();
    e(0, 0) = c;
    e(0, 1) = s;
    e(1, 0) = -s;
    e(1, 1) = c;
    return e;
}

} // namespace minsurf
