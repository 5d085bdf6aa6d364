#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "minsurf/nullcurve.hpp"
#include "minsurf/surface.hpp"

namespace minsurf {

/// (e^ζ, −i e^{−ζ} dζ) on [−1.5, 1.5]².
WeierstrassData helicoid();

/// (ζ, ζ^{-2} dζ) on [0.2, 2] × [−1, 1]; the puncture at 0 is outside.
WeierstrassData catenoid();

/// (e^ζ, e^{−ζ} dζ) on [−1.5, 1.5]².
WeierstrassData catenoid_exp();

/// (1, μ, ½(e^F − (1+μ²)e^{−F}), (i/2)(e^F + (1+μ²)e^{−F})), an entire graph
/// over the first two coordinates. Throws InvalidConstant unless Im μ < 0.
NullCurve osserman_graph(Complex mu, const Expr& F,
                         DomainSpec domain = DomainSpec::rectangle(-1.5, 1.5, -1.5, 1.5));

struct HoffmanOssermanConstants {
    Complex d1, d2, d4, d5, C;
    double alpha = 1.0;
};

/// d1 = C/α²(d4²+d5²) − α²/(4C), d2 = i(C/α²(d4²+d5²) + α²/(4C)).
/// Throws InvalidConstant for C = 0, InvalidArgument unless α > 0.
HoffmanOssermanConstants hoffman_osserman_constants(Complex d4, Complex d5, Complex C,
                                                    double alpha);

/// (d1 + C/ζ², d2 + iC/ζ², α/ζ, d4, d5) with the constrained d1, d2, on
/// [0.2, 2] × [−1, 1].
NullCurve hoffman_osserman(Complex d4, Complex d5, Complex C, double alpha);

/// Same curve with arbitrary d1, d2 (no constraint).
NullCurve hoffman_osserman_raw(const HoffmanOssermanConstants& k);

/// (sinh u cos v, cosh u sin v, cosh u cos v, sinh u sin v) on
/// [−1.5, 1.5] × [−π, π], with φ = (cosh w, −i cosh w, sinh w, −i sinh w).
Immersion lagrangian_catenoid_patch();

/// (u, v, Re μζ², Im μζ²) on [−2, 2]², with φ = (1, −i, 2μζ, −2iμζ).
/// Throws InvalidConstant for μ = 0.
Immersion complex_parabola(Complex mu);

/// (tanθ sinh U cos V, cosh U cos V, secθ cosh U sin V, U) on
/// [−1.5, 1.5] × [−π, π], with φ = (tanθ cosh W, sinh W, −i secθ cosh W, 1).
/// Throws InvalidArgument unless |θ| < π/2.
Immersion circles_at_infinity(double theta);

/// Semi-axes of the level ellipse at height U: r1 = √(tan²θ sinh²U + cosh²U)
/// and r2 = cosh U / cos θ, plus the variant cosh U / cosh θ.
struct LevelEllipseRadii {
    double r1 = 0.0;
    double r2 = 0.0;
    double r2_cosh_variant = 0.0;
};
LevelEllipseRadii circles_at_infinity_radii(double theta, double U);

/// Closed forms of the c = α + iβ deformation of the helicoid, X(ζ0 = 0)
/// translated away only through `X(0, 0)`.
struct HelicoidDeformation {
    double alpha = 0.0;
    double beta = 0.0;

    /// X0 = e^u(α sin v + β cos v),
    /// X1 = e^u((α²−β²−1)/2 sin v + αβ cos v) + ½e^{−u} sin v,
    /// X2 = e^u(−αβ sin v + (α²−β²+1)/2 cos v) − ½e^{−u} cos v, X3 = v.
    std::array<double, 4> X(double u, double v) const;

    double k() const; // √(α²+β²+1)
    double Ch(double u) const;
    double Sh(double u) const;

    /// Ξ0 = (α sin v + β cos v)Ch, Ξ1 = −k/√(α²+1) sin v Sh,
    /// Ξ2 = −k/√(β²+1) cos v Sh, Ξ3 = v.
    std::array<double, 4> Xi(double u, double v) const;

    /// Rows E0 = (e0 + αe1 − βe2)/k, E1 = (−αe0 + e1)/√(α²+1),
    /// E2 = (βe0 + e2)/√(β²+1), E3 = e3.
    Eigen::Matrix4d frame() const;

    /// The level curve at v0 is x(u) = e^u a(v0) + e^{−u} b(v0) + v0 e3.
    Eigen::Vector4d a(double v0) const;
    Eigen::Vector4d b(double v0) const;

    /// A = α sin v0 + β cos v0, S = sin²v0/(α²+1) + cos²v0/(β²+1),
    /// K = √((α²+β²+1) S); the level hyperbola is (x/A)² − (y/K)² = 1.
    double A(double v0) const;
    double S(double v0) const;
    double K(double v0) const;
    /// Asymptote slope written as A/√S.
    double printed_slope(double v0) const;

    Immersion immersion() const;
};

struct CatalogEntry {
    std::string name;
    std::string description;
    std::optional<WeierstrassData> weierstrass;
    NullCurve curve;
    Complex base_point{};
    /// Printed immersion, equal to the integrated one up to translation.
    std::optional<Immersion> closed_form;
};

std::vector<std::string> catalog_names();

/// Throws InvalidArgument for an unknown name.
CatalogEntry catalog_entry(std::string_view name);

} // namespace minsurf
