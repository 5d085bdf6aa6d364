#include "minsurf/surface.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

#include "minsurf/sampling.hpp"

namespace minsurf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Accum = std::optional<std::vector<Complex>>;

class PathIntegrator {
public:
    PathIntegrator(const NullCurve& c, const DomainSpec& domain, double tol)
        : comps_(c.components()), domain_(domain), tol_(tol) {}

    // ∫ from a to b, or nothing if the segment is singular or refuses to converge.
    Accum segment(Complex a, Complex b) const {
        try {
            return integrate_path(comps_, a, b, tol_, &domain_);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularPath || e.kind() == ErrorKind::NoConvergence) {
                return std::nullopt;
            }
            throw;
        }
    }

    // Cumulative integrals from `start` (whose value is `init`) through the
    // points in `order`, stopping at the first failure.
    template <typename PointOf, typename Store>
    void sweep(Complex start, const std::vector<Complex>& init, const std::vector<std::size_t>& order,
               PointOf point_of, Store store) const {
        std::vector<Complex> acc = init;
        Complex prev = start;
        for (std::size_t idx : order) {
            const Complex z = point_of(idx);
            Accum step = segment(prev, z);
            if (!step) return;
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += (*step)[i];
            store(idx, acc);
            prev = z;
        }
    }

private:
    const std::vector<Expr>& comps_;
    const DomainSpec& domain_;
    double tol_;
};

// Indices of grid values split into the two rays leaving `origin`, each
// ordered away from it.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> outward(std::size_t count,
                                                                      double origin,
                                                                      auto value_of) {
    std::vector<std::size_t> up;
    std::vector<std::size_t> down;
    for (std::size_t i = 0; i < count; ++i) {
        (value_of(i) >= origin ? up : down).push_back(i);
    }
    std::reverse(down.begin(), down.end());
    return {up, down};
}

void check_base_point(const DomainSpec& domain, Complex zeta0) {
    if (!std::isfinite(zeta0.real()) || !std::isfinite(zeta0.imag()) || !domain.contains(zeta0)) {
        throw Error(ErrorKind::InvalidBasePoint,
                    "base point " + format_complex(zeta0) + " lies outside the domain");
    }
    if (domain.puncture_distance(zeta0) <= 1e-12) {
        throw Error(ErrorKind::InvalidBasePoint,
                    "base point " + format_complex(zeta0) + " is a puncture");
    }
}

void check_resolution(GridResolution res, std::size_t minimum) {
    if (res.nu < minimum || res.nv < minimum) {
        throw Error(ErrorKind::InvalidArgument,
                    "grid resolution must be at least " + std::to_string(minimum) + "x" +
                        std::to_string(minimum));
    }
}

SurfacePatch empty_patch(std::size_t dimension, const DomainSpec& domain, Complex zeta0,
                         GridResolution res) {
    SurfacePatch p;
    p.dimension = dimension;
    p.nu = res.nu;
    p.nv = res.nv;
    p.domain = domain;
    p.base_point = zeta0;
    p.points.assign(res.nu * res.nv * dimension, kNaN);
    p.conformal.assign(res.nu * res.nv, kNaN);
    p.valid.assign(res.nu * res.nv, 0);
    return p;
}

bool near_puncture(const SurfacePatch& p, std::size_t j, std::size_t k) {
    const double su = p.du() * (1.0 + 1e-9);
    const double sv = p.dv() * (1.0 + 1e-9);
    for (const Complex& q : p.domain.punctures) {
        if (std::abs(p.u(j) - q.real()) <= su && std::abs(p.v(k) - q.imag()) <= sv) return true;
    }
    return false;
}

double norm_of(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& x : v) s += std::norm(x);
    return std::sqrt(s);
}

} // namespace

GridResolution parse_resolution(std::string_view text) {
    const auto x = text.find_first_of("xX");
    GridResolution res;
    auto parse = [&](std::string_view part, std::size_t& out) {
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc() && ptr == part.data() + part.size() && !part.empty();
    };
    if (x == std::string_view::npos || !parse(text.substr(0, x), res.nu) ||
        !parse(text.substr(x + 1), res.nv)) {
        throw Error(ErrorKind::InvalidArgument,
                    "resolution must look like NUxNV, got '" + std::string(text) + "'");
    }
    check_resolution(res, 2);
    return res;
}

std::size_t SurfacePatch::valid_count() const {
    return static_cast<std::size_t>(std::count(valid.begin(), valid.end(), 1));
}

SurfacePatch immerse(const NullCurve& c, Complex zeta0, GridResolution res, double tol) {
    return immerse(c, c.domain(), zeta0, res, tol);
}

SurfacePatch immerse(const NullCurve& c, const DomainSpec& domain, Complex zeta0,
                     GridResolution res, double tol) {
    domain.validate();
    check_resolution(res, 2);
    check_base_point(domain, zeta0);
    const NullCurve curve = c.with_domain(domain);
    const std::size_t n = curve.dimension();
    SurfacePatch p = empty_patch(n, domain, zeta0, res);
    const PathIntegrator integ(curve, domain, tol);

    std::vector<Accum> acc(res.nu * res.nv);
    const std::vector<Complex> zero(n);
    const double u0 = zeta0.real();
    const double v0 = zeta0.imag();
    auto [rows_up, rows_down] = outward(res.nu, u0, [&](std::size_t j) { return p.u(j); });
    auto [cols_up, cols_down] = outward(res.nv, v0, [&](std::size_t k) { return p.v(k); });

    // Route A: along Im ζ = v0 to each row, then vertically.
    std::vector<Accum> row_base(res.nu);
    auto row_store = [&](std::size_t j, const std::vector<Complex>& a) { row_base[j] = a; };
    auto row_point = [&](std::size_t j) { return Complex{p.u(j), v0}; };
    integ.sweep(zeta0, zero, rows_up, row_point, row_store);
    integ.sweep(zeta0, zero, rows_down, row_point, row_store);
    for (std::size_t j = 0; j < res.nu; ++j) {
        if (!row_base[j]) continue;
        const Complex start{p.u(j), v0};
        auto point = [&](std::size_t k) { return p.zeta(j, k); };
        auto store = [&](std::size_t k, const std::vector<Complex>& a) { acc[p.index(j, k)] = a; };
        integ.sweep(start, *row_base[j], cols_up, point, store);
        integ.sweep(start, *row_base[j], cols_down, point, store);
    }

    // Route B for whatever route A missed: along Re ζ = u0, then horizontally.
    std::vector<bool> column_needed(res.nv, false);
    for (std::size_t j = 0; j < res.nu; ++j) {
        for (std::size_t k = 0; k < res.nv; ++k) {
            if (!acc[p.index(j, k)] && !near_puncture(p, j, k)) column_needed[k] = true;
        }
    }
    if (std::find(column_needed.begin(), column_needed.end(), true) != column_needed.end()) {
        std::vector<Accum> col_base(res.nv);
        auto col_store = [&](std::size_t k, const std::vector<Complex>& a) { col_base[k] = a; };
        auto col_point = [&](std::size_t k) { return Complex{u0, p.v(k)}; };
        integ.sweep(zeta0, zero, cols_up, col_point, col_store);
        integ.sweep(zeta0, zero, cols_down, col_point, col_store);
        for (std::size_t k = 0; k < res.nv; ++k) {
            if (!column_needed[k] || !col_base[k]) continue;
            const Complex start{u0, p.v(k)};
            auto point = [&](std::size_t j) { return p.zeta(j, k); };
            auto store = [&](std::size_t j, const std::vector<Complex>& a) {
                if (!acc[p.index(j, k)]) acc[p.index(j, k)] = a;
            };
            integ.sweep(start, *col_base[k], rows_up, point, store);
            integ.sweep(start, *col_base[k], rows_down, point, store);
        }
    }

    for (std::size_t j = 0; j < res.nu; ++j) {
        for (std::size_t k = 0; k < res.nv; ++k) {
            const std::size_t idx = p.index(j, k);
            if (!acc[idx] || near_puncture(p, j, k)) continue;
            double lambda = kNaN;
            try {
                lambda = conformal_factor(curve, p.zeta(j, k));
            } catch (const Error&) {
                continue;
            }
            for (std::size_t i = 0; i < n; ++i) p.points[idx * n + i] = (*acc[idx])[i].real();
            p.conformal[idx] = lambda;
            p.valid[idx] = 1;
        }
    }
    return p;
}

Immersion curve_immersion(const NullCurve& c, Complex zeta0, double tol) {
    check_base_point(c.domain(), zeta0);
    Immersion x;
    x.dimension = c.dimension();
    x.domain = c.domain();
    x.curve = c;
    x.map = [c, zeta0, tol](double u, double v) {
        const Complex corner{u, zeta0.imag()};
        std::vector<Complex> a = integrate_path(c.components(), zeta0, corner, tol, &c.domain());
        const std::vector<Complex> b =
            integrate_path(c.components(), corner, Complex{u, v}, tol, &c.domain());
        std::vector<double> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]).real();
        return out;
    };
    return x;
}

SurfacePatch sample_immersion(const Immersion& x, GridResolution res) {
    x.domain.validate();
    check_resolution(res, 2);
    SurfacePatch p = empty_patch(x.dimension, x.domain, Complex{}, res);
    for (std::size_t j = 0; j < res.nu; ++j) {
        for (std::size_t k = 0; k < res.nv; ++k) {
            const std::size_t idx = p.index(j, k);
            if (near_puncture(p, j, k)) continue;
            const double u = p.u(j);
            const double v = p.v(k);
            try {
                const std::vector<double> pt = x(u, v);
                if (pt.size() != x.dimension) {
                    throw Error(ErrorKind::DimensionMismatch, "immersion returned wrong dimension");
                }
                double lambda;
                if (x.curve) {
                    lambda = conformal_factor(*x.curve, p.zeta(j, k));
                } else {
                    const double h = 1e-5 * (1.0 + std::abs(u) + std::abs(v));
                    const std::vector<double> a = x(u + h, v);
                    const std::vector<double> b = x(u - h, v);
                    const std::vector<double> c = x(u, v + h);
                    const std::vector<double> d = x(u, v - h);
                    double e = 0.0;
                    double g = 0.0;
                    for (std::size_t i = 0; i < pt.size(); ++i) {
                        e += std::pow((a[i] - b[i]) / (2 * h), 2);
                        g += std::pow((c[i] - d[i]) / (2 * h), 2);
                    }
                    lambda = 0.5 * (e + g);
                }
                std::copy(pt.begin(), pt.end(), p.points.begin() + static_cast<std::ptrdiff_t>(idx * x.dimension));
                p.conformal[idx] = lambda;
                p.valid[idx] = 1;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::DimensionMismatch) throw;
            }
        }
    }
    return p;
}

double conformal_factor(const NullCurve& c, Complex zeta) {
    double s = 0.0;
    for (const Complex& x : c.eval(zeta)) s += std::norm(x);
    return 0.5 * s;
}

GaussMapSample gauss_map(const NullCurve& c, Complex zeta) {
    const std::vector<Complex> phi = c.eval(zeta);
    const double norm = norm_of(phi);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw Error(ErrorKind::ZeroVector, "phi vanishes at " + format_complex(zeta));
    }
    Eigen::VectorXcd v(static_cast<Eigen::Index>(phi.size()));
    for (std::size_t i = 0; i < phi.size(); ++i) v(static_cast<Eigen::Index>(i)) = phi[i] / norm;
    Eigen::Index largest = 0;
    v.cwiseAbs().maxCoeff(&largest);
    v *= std::conj(v(largest)) / std::abs(v(largest));
    return {v};
}

bool same_projective_point(const GaussMapSample& a, const GaussMapSample& b, double tolerance) {
    if (a.point.size() != b.point.size()) return false;
    const Complex overlap = a.point.dot(b.point); // aᴴ b
    const double sine = (b.point - overlap * a.point).norm();
    return sine <= tolerance;
}

DegeneracyReport degeneracy_rank(const NullCurve& c, std::size_t samples, std::size_t offset) {
    const std::size_t n = c.dimension();
    if (samples < 2 * n) {
        throw Error(ErrorKind::InvalidArgument,
                    "degeneracy_rank needs at least " + std::to_string(2 * n) + " samples");
    }
    const std::vector<Complex> zs = halton_points(c.domain(), samples, offset);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(samples), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < samples; ++r) {
        const std::vector<Complex> phi = c.eval(zs[r]);
        for (std::size_t i = 0; i < n; ++i) {
            a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(i)) = phi[i];
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    if (!(sigma(0) > 0.0)) throw Error(ErrorKind::ZeroVector, "curve vanishes on all samples");
    DegeneracyReport report;
    report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) / sigma(0) >= kRankCutoff) ++report.rank;
    }
    const auto r = static_cast<Eigen::Index>(report.rank);
    report.null_space = svd.matrixV().rightCols(static_cast<Eigen::Index>(n) - r);
    if (report.rank + 1 == n) report.hyperplane = report.null_space.col(0);
    return report;
}

MinimalityReport verify_minimal(const SurfacePatch& p, int order) {
    // central-difference weights for offsets -m..m
    static const std::vector<double> d1_2{-0.5, 0.0, 0.5};
    static const std::vector<double> d2_2{1.0, -2.0, 1.0};
    static const std::vector<double> d1_4{1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12};
    static const std::vector<double> d2_4{-1.0 / 12, 4.0 / 3, -5.0 / 2, 4.0 / 3, -1.0 / 12};
    static const std::vector<double> d1_6{-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                                          3.0 / 4,   -3.0 / 20, 1.0 / 60};
    static const std::vector<double> d2_6{1.0 / 90, -3.0 / 20, 3.0 / 2, -49.0 / 18,
                                          3.0 / 2,  -3.0 / 20, 1.0 / 90};
    static const std::vector<double> d1_8{1.0 / 280, -4.0 / 105, 1.0 / 5, -4.0 / 5, 0.0,
                                          4.0 / 5,   -1.0 / 5,   4.0 / 105, -1.0 / 280};
    static const std::vector<double> d2_8{-1.0 / 560, 8.0 / 315, -1.0 / 5, 8.0 / 5, -205.0 / 72,
                                          8.0 / 5,    -1.0 / 5,  8.0 / 315, -1.0 / 560};
    const std::vector<double>* d1 = nullptr;
    const std::vector<double>* d2 = nullptr;
    switch (order) {
    case 2: d1 = &d1_2; d2 = &d2_2; break;
    case 4: d1 = &d1_4; d2 = &d2_4; break;
    case 6: d1 = &d1_6; d2 = &d2_6; break;
    case 8: d1 = &d1_8; d2 = &d2_8; break;
    default:
        throw Error(ErrorKind::InvalidArgument, "finite-difference order must be 2, 4, 6 or 8");
    }
    const std::size_t m = d1->size() / 2;
    check_resolution({p.nu, p.nv}, std::max<std::size_t>(5, 2 * m + 1));
    const std::size_t n = p.dimension;
    const double hu = p.du();
    const double hv = p.dv();
    MinimalityReport report;
    report.order = order;

    std::vector<double> xu(n), xv(n), lap(n);
    for (std::size_t j = m; j + m < p.nu; ++j) {
        for (std::size_t k = m; k + m < p.nv; ++k) {
            bool ok = true;
            for (std::size_t s = 0; s <= 2 * m && ok; ++s) {
                ok = p.is_valid(j + s - m, k) && p.is_valid(j, k + s - m);
            }
            if (!ok) continue;
            std::fill(xu.begin(), xu.end(), 0.0);
            std::fill(xv.begin(), xv.end(), 0.0);
            std::fill(lap.begin(), lap.end(), 0.0);
            for (std::size_t s = 0; s <= 2 * m; ++s) {
                const auto pu = p.point(j + s - m, k);
                const auto pv = p.point(j, k + s - m);
                for (std::size_t i = 0; i < n; ++i) {
                    xu[i] += (*d1)[s] * pu[i] / hu;
                    xv[i] += (*d1)[s] * pv[i] / hv;
                    lap[i] += (*d2)[s] * pu[i] / (hu * hu) + (*d2)[s] * pv[i] / (hv * hv);
                }
            }
            const double e = std::inner_product(xu.begin(), xu.end(), xu.begin(), 0.0);
            const double g = std::inner_product(xv.begin(), xv.end(), xv.begin(), 0.0);
            const double f = std::inner_product(xu.begin(), xu.end(), xv.begin(), 0.0);
            const double mean = 0.5 * (e + g);
            if (!(mean > 0.0)) continue;
            double lambda = p.conformal[p.index(j, k)];
            if (!std::isfinite(lambda) || !(lambda > 0.0)) lambda = mean;
            const double lap_norm =
                std::sqrt(std::inner_product(lap.begin(), lap.end(), lap.begin(), 0.0));
            report.max_conformality_defect = std::max(
                report.max_conformality_defect, std::max(std::abs(e - g), std::abs(f)) / mean);
            report.max_harmonicity_defect =
                std::max(report.max_harmonicity_defect, lap_norm / lambda);
            ++report.interior_points;
        }
    }
    return report;
}

double wirtinger_defect(const SurfacePatch& p, const NullCurve& c) {
    if (c.dimension() != p.dimension) {
        throw Error(ErrorKind::DimensionMismatch, "curve and patch dimensions differ");
    }
    check_resolution({p.nu, p.nv}, 3);
    const NullCurve curve = c.with_domain(p.domain);
    const std::size_t n = p.dimension;
    double worst = 0.0;
    for (std::size_t j = 1; j + 1 < p.nu; ++j) {
        for (std::size_t k = 1; k + 1 < p.nv; ++k) {
            if (!p.is_valid(j, k) || !p.is_valid(j - 1, k) || !p.is_valid(j + 1, k) ||
                !p.is_valid(j, k - 1) || !p.is_valid(j, k + 1)) {
                continue;
            }
            const std::vector<Complex> phi = curve.eval(p.zeta(j, k));
            double diff = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double xu = (p.point(j + 1, k)[i] - p.point(j - 1, k)[i]) / (2 * p.du());
                const double xv = (p.point(j, k + 1)[i] - p.point(j, k - 1)[i]) / (2 * p.dv());
                diff += std::norm(Complex{xu, -xv} - phi[i]);
            }
            const double scale = norm_of(phi);
            if (scale > 0.0) worst = std::max(worst, std::sqrt(diff) / scale);
        }
    }
    return worst;
}

} // namespace minsurf
