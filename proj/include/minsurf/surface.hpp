#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "minsurf/holomorphic.hpp"
#include "minsurf/nullcurve.hpp"

namespace minsurf {

struct GridResolution {
    std::size_t nu = 64;
    std::size_t nv = 64;
};

/// Parses "NUxNV", e.g. "64x32". Throws InvalidArgument.
GridResolution parse_resolution(std::string_view text);

/// Grid samples of an immersion ζ = u + iv ↦ X ∈ R^n.
///
/// Grid node (j, k) sits at u_j = u_min + j·du, v_k = v_min + k·dv and is
/// stored at index j·nv + k. Nodes next to a puncture, or unreachable by
/// quadrature, are flagged invalid and hold NaN.
struct SurfacePatch {
    std::size_t dimension = 0;
    std::size_t nu = 0;
    std::size_t nv = 0;
    DomainSpec domain;
    Complex base_point{};
    std::vector<double> points;     // (j·nv + k)·dimension + coordinate
    std::vector<double> conformal;  // Λ = ½Σ|φ_k|² per node
    std::vector<unsigned char> valid;

    std::size_t index(std::size_t j, std::size_t k) const { return j * nv + k; }
    double du() const { return nu > 1 ? domain.width() / static_cast<double>(nu - 1) : 0.0; }
    double dv() const { return nv > 1 ? domain.height() / static_cast<double>(nv - 1) : 0.0; }
    double u(std::size_t j) const { return domain.u_min + static_cast<double>(j) * du(); }
    double v(std::size_t k) const { return domain.v_min + static_cast<double>(k) * dv(); }
    Complex zeta(std::size_t j, std::size_t k) const { return {u(j), v(k)}; }
    bool is_valid(std::size_t j, std::size_t k) const { return valid[index(j, k)] != 0; }
    std::span<const double> point(std::size_t j, std::size_t k) const {
        return {points.data() + index(j, k) * dimension, dimension};
    }
    std::size_t valid_count() const;
};

/// X(ζ) = Re ∫_{ζ0}^{ζ} φ dζ on the grid, with X(ζ0) = 0.
///
/// Each node is reached along ζ0 → (u_j, Im ζ0) → (u_j, v_k), sharing the
/// prefix integrals of a row; nodes whose path fails fall back to
/// ζ0 → (Re ζ0, v_k) → (u_j, v_k). `tol` applies to each path segment.
/// Throws InvalidBasePoint when ζ0 is outside the domain or at a puncture.
SurfacePatch immerse(const NullCurve& c, Complex zeta0, GridResolution res,
                     double tol = 1e-12);
SurfacePatch immerse(const NullCurve& c, const DomainSpec& domain, Complex zeta0,
                     GridResolution res, double tol = 1e-12);

/// Closed-form or numerically integrated map (u, v) ↦ R^n.
struct Immersion {
    std::size_t dimension = 0;
    DomainSpec domain;
    std::function<std::vector<double>(double u, double v)> map;
    /// φ = 2∂X/∂ζ when known.
    std::optional<NullCurve> curve;

    std::vector<double> operator()(double u, double v) const { return map(u, v); }
};

/// Immersion evaluated pointwise by L-path integration from ζ0.
Immersion curve_immersion(const NullCurve& c, Complex zeta0, double tol = 1e-12);

/// Samples an immersion on the grid; Λ comes from its curve when present and
/// otherwise from ½(E + G) by central differences.
SurfacePatch sample_immersion(const Immersion& x, GridResolution res);

/// ½ Σ |φ_k(ζ)|².
double conformal_factor(const NullCurve& c, Complex zeta);

/// Unit representative of [φ(ζ)] with its largest entry made real positive.
struct GaussMapSample {
    Eigen::VectorXcd point;
};

/// Throws ZeroVector at a branch point.
GaussMapSample gauss_map(const NullCurve& c, Complex zeta);

bool same_projective_point(const GaussMapSample& a, const GaussMapSample& b,
                           double tolerance = 1e-12);

struct DegeneracyReport {
    std::size_t rank = 0;
    std::vector<double> singular_values;
    /// Right singular vectors spanning {a : Σ a_k φ_k ≡ 0}, one per column.
    Eigen::MatrixXcd null_space;
    /// Set when rank = n − 1.
    std::optional<Eigen::VectorXcd> hyperplane;
};

inline constexpr double kRankCutoff = 1e-8;

/// SVD of the samples × n matrix of φ at Halton points; numerical rank counts
/// σ_k/σ_1 ≥ kRankCutoff. Requires samples ≥ 2n. Throws ZeroVector if φ ≡ 0.
DegeneracyReport degeneracy_rank(const NullCurve& c, std::size_t samples,
                                 std::size_t offset = 0);

struct MinimalityReport {
    double max_conformality_defect = 0.0;
    double max_harmonicity_defect = 0.0;
    std::size_t interior_points = 0;
    int order = 8;
};

/// Finite-difference check of E = G, F = 0 and ΔX = 0 on the patch interior.
/// Conformality defect is max(|E−G|, |F|)/((E+G)/2); harmonicity defect is
/// |ΔX|/Λ. `order` ∈ {2, 4, 6, 8} selects the accuracy of the per-axis
/// central differences. Needs nu, nv ≥ max(5, order + 1).
MinimalityReport verify_minimal(const SurfacePatch& p, int order = 8);

/// max over interior nodes of |(X_u − i X_v) − φ| / |φ|, with second-order
/// central differences. This is O(h²).
double wirtinger_defect(const SurfacePatch& p, const NullCurve& c);

enum class MeshFormat { OBJ, PLY };

/// Three coordinate indices to write, or none for the default (OBJ: first
/// three coordinates; PLY: all n).
using Projection = std::optional<std::array<std::size_t, 3>>;

/// Triangulated grid mesh, row-major vertices, two triangles per cell with
/// four valid corners. Invalid nodes are dropped and indices renumbered.
std::string mesh_to_string(const SurfacePatch& p, MeshFormat format, Projection projection = {});

/// Writes mesh_to_string to `path`. Throws IOError.
void export_mesh(const SurfacePatch& p, MeshFormat format, const std::string& path,
                 Projection projection = {});

/// Vertex coordinates of an OBJ file, in file order. Throws IOError.
std::vector<std::array<double, 3>> read_obj_vertices(const std::string& path);

} // namespace minsurf
