#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "minsurf/holomorphic.hpp"

namespace minsurf {

namespace {

constexpr int kOrder = 16;
constexpr int kMaxDepth = 40;
constexpr std::size_t kPanelBudget = 1u << 20;

struct GaussLegendre {
    std::array<double, kOrder> x{};
    std::array<double, kOrder> w{};
};

// Roots of P_16 by Newton iteration from the Chebyshev-like initial guesses.
GaussLegendre make_rule() {
    GaussLegendre rule;
    for (int i = 0; i < kOrder; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= kOrder; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.x[i] = x;
        rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussLegendre& rule() {
    static const GaussLegendre r = make_rule();
    return r;
}

struct PanelEstimate {
    std::vector<Complex> value;
    std::vector<double> abs_mass; // ∫|f| |dζ| on the panel, for the roundoff floor
};

class Integrator {
public:
    Integrator(std::span<const Expr> fs, double cut) : fs_(fs), cut_(cut) {}

    PanelEstimate panel(Complex a, Complex b) {
        const GaussLegendre& gl = rule();
        const Complex half = 0.5 * (b - a);
        const Complex mid = 0.5 * (a + b);
        PanelEstimate est{std::vector<Complex>(fs_.size()), std::vector<double>(fs_.size())};
        for (int i = 0; i < kOrder; ++i) {
            const Complex z = mid + half * gl.x[i];
            for (std::size_t k = 0; k < fs_.size(); ++k) {
                Complex f;
                try {
                    f = fs_[k].eval(z, cut_);
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::EvaluationSingularity) throw;
                    throw Error(ErrorKind::SingularPath,
                                "integrand is singular on the path near " + format_complex(z));
                }
                est.value[k] += gl.w[i] * f;
                est.abs_mass[k] += gl.w[i] * std::abs(f);
            }
        }
        const double len = std::abs(half);
        for (std::size_t k = 0; k < fs_.size(); ++k) {
            est.value[k] *= half;
            est.abs_mass[k] *= len;
        }
        if (++panels_ > kPanelBudget) {
            throw Error(ErrorKind::NoConvergence, "quadrature panel budget exhausted");
        }
        return est;
    }

    void refine(Complex a, Complex b, const PanelEstimate& whole, double tol, int depth,
                std::vector<Complex>& acc) {
        const Complex m = 0.5 * (a + b);
        PanelEstimate left = panel(a, m);
        PanelEstimate right = panel(m, b);
        bool accepted = true;
        for (std::size_t k = 0; k < fs_.size(); ++k) {
            const double diff = std::abs(left.value[k] + right.value[k] - whole.value[k]);
            const double floor =
                1e3 * std::numeric_limits<double>::epsilon() * whole.abs_mass[k];
            if (diff > tol && diff > floor) {
                accepted = false;
                break;
            }
        }
        if (accepted) {
            for (std::size_t k = 0; k < fs_.size(); ++k) acc[k] += left.value[k] + right.value[k];
            return;
        }
        if (depth >= kMaxDepth) {
            throw Error(ErrorKind::NoConvergence,
                        "quadrature did not converge near " + format_complex(m));
        }
        refine(a, m, left, 0.5 * tol, depth + 1, acc);
        refine(m, b, right, 0.5 * tol, depth + 1, acc);
    }

private:
    std::span<const Expr> fs_;
    double cut_;
    std::size_t panels_ = 0;
};

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

// Does the closed segment [z0,z1] meet the ray {r d : r >= 0}?
bool segment_meets_ray(Complex z0, Complex z1, Complex d) {
    const Complex delta = z1 - z0;
    const double scale = std::max({std::abs(z0), std::abs(z1), 1.0});
    const double eps = 1e-14 * scale;
    const double denom = cross(delta, d);
    if (std::abs(denom) <= eps * std::abs(delta)) {
        // parallel: touching only if the segment is on the ray's line
        if (std::abs(cross(z0, d)) > eps) return false;
        const double t0 = (z0 * std::conj(d)).real();
        const double t1 = (z1 * std::conj(d)).real();
        return std::max(t0, t1) >= -eps;
    }
    // z0 + s delta = r d
    const double s = cross(d, z0) / denom;
    const double r = cross(delta, z0) / denom;
    const double s_eps = 1e-14;
    return s >= -s_eps && s <= 1.0 + s_eps && r >= -eps;
}

} // namespace

bool segment_is_singular(const DomainSpec& domain, Complex z0, Complex z1, bool check_cut,
                         double clearance) {
    const Complex delta = z1 - z0;
    const double len2 = std::norm(delta);
    const double hit = std::max(clearance, 1e-13 * std::max({std::abs(z0), std::abs(z1), 1.0}));
    for (const Complex& p : domain.punctures) {
        double s = len2 > 0.0 ? ((p - z0) * std::conj(delta)).real() / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        if (std::abs(z0 + s * delta - p) <= hit) return true;
    }
    if (check_cut) {
        const Complex d = std::polar(1.0, domain.cut_angle);
        if (segment_meets_ray(z0, z1, d)) return true;
    }
    return false;
}

std::vector<Complex> integrate_path(std::span<const Expr> fs, Complex z0, Complex z1, double tol,
                                    const DomainSpec* domain) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw Error(ErrorKind::InvalidArgument, "quadrature tolerance must be positive");
    }
    double cut = kPrincipalCut;
    if (domain != nullptr) {
        cut = domain->cut_angle;
        bool has_log = false;
        for (const Expr& f : fs) has_log = has_log || f.contains(Expr::Op::Log);
        if (segment_is_singular(*domain, z0, z1, has_log)) {
            throw Error(ErrorKind::SingularPath, "segment " + format_complex(z0) + " -> " +
                                                     format_complex(z1) +
                                                     " meets a puncture or the branch cut");
        }
    }
    std::vector<Complex> acc(fs.size());
    if (z0 == z1 || fs.empty()) return acc;
    Integrator integrator(fs, cut);
    const PanelEstimate whole = integrator.panel(z0, z1);
    integrator.refine(z0, z1, whole, tol, 0, acc);
    return acc;
}

Complex integrate_path(const Expr& f, Complex z0, Complex z1, double tol,
                       const DomainSpec* domain) {
    return integrate_path(std::span<const Expr>(&f, 1), z0, z1, tol, domain)[0];
}

} // namespace minsurf
