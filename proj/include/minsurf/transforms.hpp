#pragma once

#include <Eigen/Dense>

#include "minsurf/holomorphic.hpp"
#include "minsurf/nullcurve.hpp"

namespace minsurf {

/// Complex n×n matrix acting on null curves, n ∈ {3, 4, 6}.
struct NullTransform {
    Eigen::MatrixXcd matrix;
    /// Set when MᵀM = I has been established (by construction or numerically).
    bool orthogonal = false;

    Eigen::Index dimension() const { return matrix.rows(); }
};

struct OrthogonalityReport {
    bool orthogonal = false;
    /// max entry of |MᵀM − I|
    double max_deviation = 0.0;
};

/// MᵀM = I entrywise within `tolerance` (plain transpose, not adjoint).
OrthogonalityReport is_complex_orthogonal(const Eigen::MatrixXcd& m, double tolerance = 1e-10);
inline OrthogonalityReport is_complex_orthogonal(const NullTransform& t,
                                                 double tolerance = 1e-10) {
    return is_complex_orthogonal(t.matrix, tolerance);
}

/// e^{−iθ} φ. θ = π/2 gives the conjugate surface.
NullCurve associate(const NullCurve& c, double theta);

/// [[cosh t, −i sinh t, 0], [i sinh t, cosh t, 0], [0, 0, 1]]
NullTransform goursat_matrix(double t);
NullCurve goursat(const NullCurve& c3, double t);

/// (λG, Ψ/λ); throws InvalidArgument unless λ > 0.
WeierstrassData lopez_ros(const WeierstrassData& w, double lambda);

/// Goursat parameter producing the same curve as López-Ros with λ: t = −ln λ.
double goursat_parameter_for_lopez_ros(double lambda);

/// e^{−iα}(cos β (φ1,0,φ2,0,φ3,0) + sin β (0,−iφ1,0,−iφ2,0,−iφ3)).
NullCurve lawson(const NullCurve& c3, double alpha, double beta);

/// Complex parabolic rotation on C⁴, acting on the first three coordinates.
NullTransform parabolic_rotation_matrix(Complex c);

/// Matrix obtained from lower/upper unipotent factors in Segre coordinates.
/// (L, R) = (−ci, −ci) reproduces parabolic_rotation_matrix(c). The
/// orthogonal flag carries the numeric verdict of is_complex_orthogonal.
NullTransform segre_LR_matrix(Complex L, Complex R);

/// Real parabolic rotation of Minkowski 3-space with parameter t.
Eigen::Matrix3d lorentz_parabolic_matrix(double t);

/// D⁻¹ M D with D = diag(1, 1, −i), followed by the coordinate permutation
/// (x, y, z) → (z1, z0, z2).
Eigen::Matrix3cd wick_rotate(const Eigen::Matrix3d& lorentz);

/// Componentwise linear combination M φ as new expressions.
/// Throws DimensionMismatch when sizes differ.
NullCurve apply_transform(const NullTransform& t, const NullCurve& c);

/// (cG²Ψ, ½(1+(c²−1)G²)Ψ, (i/2)(1+(c²+1)G²)Ψ, GΨ), built directly from (G, Ψ).
NullCurve deform_theorem(const WeierstrassData& w, Complex c);

/// ¼|Ψ|² |1 + c²G²|² (1 + |G|²/|1 + icG|²)(1 + |G|²/|1 − icG|²), the
/// conformal factor of deform_theorem(w, c) at ζ from (G, Ψ) alone.
double deformed_conformal_factor(const WeierstrassData& w, Complex c, Complex zeta);

/// (sinθ/2 (1+G²/cos²θ)Ψ, cosθ/2 (1−G²/cos²θ)Ψ, (i/2)(1+G²/cos²θ)Ψ, GΨ).
/// Throws InvalidArgument unless |θ| < π/2.
NullCurve deform_rotated(const WeierstrassData& w, double theta);

/// Rows are E0 = cosθ e0 + sinθ e1, E1 = −sinθ e0 + cosθ e1, E2 = e2, E3 = e3.
/// deform_rotated(w, θ) = rotated_frame(θ) · deform_theorem(w, tan θ).
Eigen::Matrix4d rotated_frame(double theta);

} // namespace minsurf
