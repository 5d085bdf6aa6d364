#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "minsurf/holomorphic.hpp"

namespace minsurf {

/// Relative residual below which a sampled curve counts as null.
inline constexpr double kNullTolerance = 1e-9;

/// Weierstrass data (G, Ψ dζ) on a domain.
struct WeierstrassData {
    Expr G;
    Expr Psi;
    DomainSpec domain;

    /// Throws InvalidArgument if G or Ψ vanishes at every one of 8 sample points.
    void validate() const;
};

/// Tuple of 3 to 6 holomorphic components on a domain.
class NullCurve {
public:
    NullCurve(std::vector<Expr> components, DomainSpec domain = {});

    std::size_t dimension() const { return components_.size(); }
    const std::vector<Expr>& components() const { return components_; }
    const Expr& operator[](std::size_t k) const { return components_[k]; }
    const DomainSpec& domain() const { return domain_; }

    /// Component values at z, honouring the domain's branch cut.
    std::vector<Complex> eval(Complex z) const;

    NullCurve with_domain(DomainSpec domain) const;

private:
    std::vector<Expr> components_;
    DomainSpec domain_;
};

/// Σ v_k². Throws InvalidArgument for fewer than two entries.
Complex quadratic_form(std::span<const Complex> v);

/// (½(1−G²)Ψ, (i/2)(1+G²)Ψ, GΨ).
NullCurve from_weierstrass(const WeierstrassData& w);

/// (φ1, φ2, φ3) ↦ (0, φ1, φ2, φ3).
NullCurve embed_3_to_4(const NullCurve& c3);

struct NullResidualReport {
    double max_abs_residual = 0.0;
    /// max over samples of Σ|φ_k|²
    double normalizer = 0.0;
    std::size_t sample_count = 0;

    double relative() const {
        return normalizer > 0.0 ? max_abs_residual / normalizer : max_abs_residual;
    }
    bool is_null(double tolerance = kNullTolerance) const {
        return max_abs_residual <= tolerance * normalizer;
    }
};

/// Evaluates |Σφ_k²| at `samples` Halton points of the curve's domain.
/// Requires samples >= 8; evaluation errors propagate.
NullResidualReport null_residual(const NullCurve& c, std::size_t samples,
                                 std::size_t offset = 0);

} // namespace minsurf
