#pragma once

#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minsurf/errors.hpp"

namespace minsurf {

using Complex = std::complex<double>;

inline constexpr double kPrincipalCut = std::numbers::pi;

/// Rectangle [u_min,u_max] x [v_min,v_max] of the ζ = u + iv plane, with
/// excluded points and the direction of the log branch-cut ray.
struct DomainSpec {
    double u_min = -1.0;
    double u_max = 1.0;
    double v_min = -1.0;
    double v_max = 1.0;
    std::vector<Complex> punctures;
    /// The cut is the ray {r e^{i cut_angle} : r >= 0}; log takes
    /// arguments in (cut_angle - 2π, cut_angle].
    double cut_angle = kPrincipalCut;

    static DomainSpec rectangle(double u_min, double u_max, double v_min, double v_max);

    /// Throws InvalidArgument on a degenerate rectangle or a puncture outside it.
    void validate() const;

    double width() const { return u_max - u_min; }
    double height() const { return v_max - v_min; }
    bool contains(Complex z) const;
    /// Distance from z to the nearest puncture (infinity if none).
    double puncture_distance(Complex z) const;
};

/// Closed-form holomorphic function of one complex variable ζ.
///
/// Immutable expression tree over constants, ζ, + - * /, integer powers,
/// exp, log, sinh and cosh. Copies share structure.
class Expr {
public:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Log, Sinh, Cosh };

    /// The constant 0.
    Expr();
    Expr(Complex value); // NOLINT(google-explicit-constructor): constants read naturally
    Expr(double value);  // NOLINT(google-explicit-constructor)

    static Expr constant(Complex value) { return Expr(value); }
    static Expr variable();

    Op op() const;
    /// Constant payload; only meaningful for Op::Const.
    Complex value() const;
    /// Exponent; only meaningful for Op::Pow.
    int exponent() const;
    /// Operand count is 0, 1 or 2 depending on op().
    Expr lhs() const;
    Expr rhs() const;

    bool is_constant() const;                // no occurrence of ζ
    bool is_zero() const;                    // literally the constant 0
    bool contains(Op op) const;
    std::size_t node_count() const;

    /// Throws EvaluationSingularity on division by zero, log(0), negative
    /// power of 0, or a non-finite result.
    Complex eval(Complex z, double cut_angle = kPrincipalCut) const;

    Expr derivative() const;

    /// Text accepted by parse_expr, reproducing the same values bit-exactly.
    std::string str() const;

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator/(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a);
    friend Expr pow(const Expr& base, int exponent);
    friend Expr exp(const Expr& a);
    friend Expr log(const Expr& a);
    friend Expr sinh(const Expr& a);
    friend Expr cosh(const Expr& a);

    struct Node;

private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Expr make(Op op, Expr a, Expr b = Expr(), int exponent = 0);

    std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, int exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);

inline Complex eval(const Expr& expr, Complex z, double cut_angle = kPrincipalCut) {
    return expr.eval(z, cut_angle);
}

inline Expr differentiate(const Expr& expr) { return expr.derivative(); }

/// Infix syntax: numbers (with optional trailing `i`), `i`, `z` / `zeta`,
/// + - * /, `^` with an integer exponent, exp/log/sinh/cosh, parentheses.
/// Throws ParseError carrying the byte offset of the problem.
Expr parse_expr(std::string_view text);

/// Parses a constant such as `1+2i`, `-0.5i`, `3`. Any constant expression is
/// accepted.
Complex parse_complex(std::string_view text);

/// Shortest text that parse_complex maps back to exactly `value`.
std::string format_complex(Complex value);

/// Adaptive 16-point Gauss-Legendre integration of ∫ f dζ along the straight
/// segment z0 -> z1. Panels are halved until the two-panel and one-panel
/// estimates differ by at most the panel's share of `tol` (or by roundoff);
/// recursion depth is capped at 40.
///
/// With a domain, the segment is first checked against its punctures and,
/// when the integrand contains log, against the branch-cut ray
/// (SingularPath). Exceeding the depth cap throws NoConvergence.
Complex integrate_path(const Expr& f, Complex z0, Complex z1, double tol,
                       const DomainSpec* domain = nullptr);

/// Integrates several integrands along the same segment with one shared
/// panel refinement; the acceptance test is applied to the worst component.
std::vector<Complex> integrate_path(std::span<const Expr> fs, Complex z0, Complex z1,
                                    double tol, const DomainSpec* domain = nullptr);

/// True if the closed segment passes within `clearance` of a puncture, or
/// crosses the cut ray when `check_cut` is set.
bool segment_is_singular(const DomainSpec& domain, Complex z0, Complex z1, bool check_cut,
                         double clearance = 0.0);

} // namespace minsurf
