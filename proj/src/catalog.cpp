#include "minsurf/catalog.hpp"

#include <cmath>
#include <numbers>

#include "minsurf/transforms.hpp"

namespace minsurf {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

const Expr z = Expr::variable();

DomainSpec square(double half) { return DomainSpec::rectangle(-half, half, -half, half); }

DomainSpec right_of_origin() { return DomainSpec::rectangle(0.2, 2.0, -1.0, 1.0); }

Immersion closed(std::size_t dim, DomainSpec domain,
                 std::function<std::vector<double>(double, double)> map,
                 std::optional<NullCurve> curve) {
    Immersion x;
    x.dimension = dim;
    x.domain = std::move(domain);
    x.map = std::move(map);
    x.curve = std::move(curve);
    return x;
}

} // namespace

WeierstrassData helicoid() { return {exp(z), -kI * exp(-z), square(1.5)}; }

WeierstrassData catenoid() { return {z, pow(z, -2), right_of_origin()}; }

WeierstrassData catenoid_exp() { return {exp(z), exp(-z), square(1.5)}; }

NullCurve osserman_graph(Complex mu, const Expr& F, DomainSpec domain) {
    if (!(mu.imag() < 0.0)) {
        throw Error(ErrorKind::InvalidConstant, "osserman_graph needs Im(mu) < 0");
    }
    const Complex k = 1.0 + mu * mu;
    return NullCurve({Expr(1.0), Expr(mu), 0.5 * (exp(F) - k * exp(-F)),
                      (0.5 * kI) * (exp(F) + k * exp(-F))},
                     std::move(domain));
}

HoffmanOssermanConstants hoffman_osserman_constants(Complex d4, Complex d5, Complex C,
                                                    double alpha) {
    if (C == Complex{}) throw Error(ErrorKind::InvalidConstant, "C must be nonzero");
    if (!(alpha > 0.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
    const Complex s = C / (alpha * alpha) * (d4 * d4 + d5 * d5);
    const Complex t = alpha * alpha / (4.0 * C);
    return {s - t, kI * (s + t), d4, d5, C, alpha};
}

NullCurve hoffman_osserman(Complex d4, Complex d5, Complex C, double alpha) {
    return hoffman_osserman_raw(hoffman_osserman_constants(d4, d5, C, alpha));
}

NullCurve hoffman_osserman_raw(const HoffmanOssermanConstants& k) {
    const Expr inv2 = pow(z, -2);
    return NullCurve({k.d1 + k.C * inv2, k.d2 + (kI * k.C) * inv2, k.alpha * pow(z, -1),
                      Expr(k.d4), Expr(k.d5)},
                     right_of_origin());
}

Immersion lagrangian_catenoid_patch() {
    const NullCurve phi({cosh(z), -kI * cosh(z), sinh(z), -kI * sinh(z)},
                        DomainSpec::rectangle(-1.5, 1.5, -kPi, kPi));
    return closed(4, phi.domain(), [](double u, double v) {
        return std::vector<double>{std::sinh(u) * std::cos(v), std::cosh(u) * std::sin(v),
                                   std::cosh(u) * std::cos(v), std::sinh(u) * std::sin(v)};
    }, phi);
}

Immersion complex_parabola(Complex mu) {
    if (mu == Complex{}) throw Error(ErrorKind::InvalidConstant, "mu must be nonzero");
    const NullCurve phi({Expr(1.0), Expr(-kI), (2.0 * mu) * z, (-2.0 * kI * mu) * z}, square(2.0));
    return closed(4, phi.domain(), [mu](double u, double v) {
        const Complex w = mu * Complex{u, v} * Complex{u, v};
        return std::vector<double>{u, v, w.real(), w.imag()};
    }, phi);
}

Immersion circles_at_infinity(double theta) {
    if (!(std::abs(theta) < 0.5 * kPi)) {
        throw Error(ErrorKind::InvalidArgument, "theta must lie in (-pi/2, pi/2)");
    }
    const double t = std::tan(theta);
    const double sec = 1.0 / std::cos(theta);
    const NullCurve phi({t * cosh(z), sinh(z), (-kI * sec) * cosh(z), Expr(1.0)},
                        DomainSpec::rectangle(-1.5, 1.5, -kPi, kPi));
    return closed(4, phi.domain(), [t, sec](double U, double V) {
        return std::vector<double>{t * std::sinh(U) * std::cos(V), std::cosh(U) * std::cos(V),
                                   sec * std::cosh(U) * std::sin(V), U};
    }, phi);
}

LevelEllipseRadii circles_at_infinity_radii(double theta, double U) {
    const double t = std::tan(theta);
    return {std::sqrt(t * t * std::sinh(U) * std::sinh(U) + std::cosh(U) * std::cosh(U)),
            std::cosh(U) / std::cos(theta), std::cosh(U) / std::cosh(theta)};
}

// ---------------------------------------------------------------------------
// HelicoidDeformation

std::array<double, 4> HelicoidDeformation::X(double u, double v) const {
    const double a = alpha;
    const double b = beta;
    const double s = std::sin(v);
    const double c = std::cos(v);
    const double ep = std::exp(u);
    const double em = std::exp(-u);
    return {ep * (a * s + b * c),
            ep * ((a * a - b * b - 1) / 2 * s + a * b * c) + 0.5 * em * s,
            ep * (-a * b * s + (a * a - b * b + 1) / 2 * c) - 0.5 * em * c, v};
}

double HelicoidDeformation::k() const { return std::sqrt(alpha * alpha + beta * beta + 1); }
double HelicoidDeformation::Ch(double u) const { return std::cosh(u + std::log(k())); }
double HelicoidDeformation::Sh(double u) const { return std::sinh(u + std::log(k())); }

std::array<double, 4> HelicoidDeformation::Xi(double u, double v) const {
    return {(alpha * std::sin(v) + beta * std::cos(v)) * Ch(u),
            -k() / std::sqrt(alpha * alpha + 1) * std::sin(v) * Sh(u),
            -k() / std::sqrt(beta * beta + 1) * std::cos(v) * Sh(u), v};
}

Eigen::Matrix4d HelicoidDeformation::frame() const {
    Eigen::Matrix4d e = Eigen::Matrix4d::Zero();
    e.row(0) << 1, alpha, -beta, 0;
    e.row(0) /= k();
    e.row(1) << -alpha, 1, 0, 0;
    e.row(1) /= std::sqrt(alpha * alpha + 1);
    e.row(2) << beta, 0, 1, 0;
    e.row(2) /= std::sqrt(beta * beta + 1);
    e(3, 3) = 1;
    return e;
}

Eigen::Vector4d HelicoidDeformation::a(double v0) const {
    const double s = std::sin(v0);
    const double c = std::cos(v0);
    const double al = alpha;
    const double be = beta;
    return {al * s + be * c, (al * al - be * be - 1) / 2 * s + al * be * c,
            -al * be * s + (al * al - be * be + 1) / 2 * c, 0.0};
}

Eigen::Vector4d HelicoidDeformation::b(double v0) const {
    return {0.0, 0.5 * std::sin(v0), -0.5 * std::cos(v0), 0.0};
}

double HelicoidDeformation::A(double v0) const {
    return alpha * std::sin(v0) + beta * std::cos(v0);
}

double HelicoidDeformation::S(double v0) const {
    const double s = std::sin(v0);
    const double c = std::cos(v0);
    return s * s / (alpha * alpha + 1) + c * c / (beta * beta + 1);
}

double HelicoidDeformation::K(double v0) const { return std::sqrt(k() * k() * S(v0)); }

double HelicoidDeformation::printed_slope(double v0) const { return A(v0) / std::sqrt(S(v0)); }

Immersion HelicoidDeformation::immersion() const {
    const HelicoidDeformation self = *this;
    return closed(4, helicoid().domain, [self](double u, double v) {
        const auto x = self.X(u, v);
        return std::vector<double>(x.begin(), x.end());
    }, deform_theorem(helicoid(), Complex{alpha, beta}));
}

// ---------------------------------------------------------------------------
// Catalog

std::vector<std::string> catalog_names() {
    return {"helicoid",         "catenoid",         "catenoid-exp",
            "osserman-graph",   "hoffman-osserman", "lagrangian-catenoid",
            "complex-parabola", "circles-at-infinity", "deformed-helicoid"};
}

CatalogEntry catalog_entry(std::string_view name) {
    auto from_data = [](std::string n, std::string d, WeierstrassData w, Complex base,
                        std::optional<Immersion> x) {
        NullCurve c = from_weierstrass(w);
        if (x) x->curve = c;
        return CatalogEntry{std::move(n), std::move(d), std::move(w), std::move(c), base,
                            std::move(x)};
    };
    auto from_immersion = [](std::string n, std::string d, Immersion x) {
        NullCurve c = *x.curve;
        return CatalogEntry{std::move(n), std::move(d), std::nullopt, std::move(c), Complex{},
                            std::move(x)};
    };
    if (name == "helicoid") {
        return from_data("helicoid", "helicoid, G = e^z, Psi = -i e^-z", helicoid(), {},
                         closed(3, helicoid().domain, [](double u, double v) {
                             return std::vector<double>{-std::sinh(u) * std::sin(v),
                                                        std::sinh(u) * std::cos(v), v};
                         }, std::nullopt));
    }
    if (name == "catenoid") {
        return from_data("catenoid", "catenoid, G = z, Psi = z^-2", catenoid(), {1.0, 0.0},
                         closed(3, catenoid().domain, [](double u, double v) {
                             const double r = std::hypot(u, v);
                             const double t = std::atan2(v, u);
                             const double ch = std::cosh(std::log(r));
                             return std::vector<double>{-ch * std::cos(t), -ch * std::sin(t),
                                                        std::log(r)};
                         }, std::nullopt));
    }
    if (name == "catenoid-exp") {
        return from_data("catenoid-exp", "catenoid, G = e^z, Psi = e^-z", catenoid_exp(), {},
                         closed(3, catenoid_exp().domain, [](double u, double v) {
                             return std::vector<double>{-std::cosh(u) * std::cos(v),
                                                        -std::cosh(u) * std::sin(v), u};
                         }, std::nullopt));
    }
    if (name == "osserman-graph") {
        const Complex mu{0.5, -1.0};
        const NullCurve c = osserman_graph(mu, z);
        const Complex k = 1.0 + mu * mu;
        Immersion x = closed(4, c.domain(), [mu, k](double u, double v) {
            const Complex w{u, v};
            const Complex ep = std::exp(w);
            const Complex em = std::exp(-w);
            return std::vector<double>{u, (mu * w).real(), (0.5 * (ep + k * em)).real(),
                                       (0.5 * kI * (ep - k * em)).real()};
        }, c);
        return from_immersion("osserman-graph", "entire graph, mu = 0.5-1i, F = z", x);
    }
    if (name == "hoffman-osserman") {
        const HoffmanOssermanConstants k = hoffman_osserman_constants({1.0, 1.0}, 2.0, 1.0, 1.0);
        const NullCurve c = hoffman_osserman_raw(k);
        Immersion x = closed(5, c.domain(), [k](double u, double v) {
            const Complex w{u, v};
            return std::vector<double>{(k.d1 * w - k.C / w).real(),
                                       (k.d2 * w - kI * k.C / w).real(),
                                       (k.alpha * std::log(w)).real(), (k.d4 * w).real(),
                                       (k.d5 * w).real()};
        }, c);
        CatalogEntry e = from_immersion(
            "hoffman-osserman", "five-component curve, d4 = 1+1i, d5 = 2, C = 1, alpha = 1", x);
        e.base_point = {1.0, 0.0};
        return e;
    }
    if (name == "lagrangian-catenoid") {
        return from_immersion("lagrangian-catenoid", "Lagrangian catenoid in R^4",
                              lagrangian_catenoid_patch());
    }
    if (name == "complex-parabola") {
        return from_immersion("complex-parabola", "graph of w = mu z^2, mu = 2-1i",
                              complex_parabola({2.0, -1.0}));
    }
    if (name == "circles-at-infinity") {
        return from_immersion("circles-at-infinity",
                              "rotated deformation of the catenoid, theta = pi/4",
                              circles_at_infinity(kPi / 4));
    }
    if (name == "deformed-helicoid") {
        const HelicoidDeformation h{1.0, 2.0};
        return from_immersion("deformed-helicoid", "helicoid deformed with c = 1+2i",
                              h.immersion());
    }
    throw Error(ErrorKind::InvalidArgument, "unknown catalog entry '" + std::string(name) + "'");
}

} // namespace minsurf
