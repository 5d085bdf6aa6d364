#include "minsurf/nullcurve.hpp"

#include <algorithm>
#include <cmath>

#include "minsurf/sampling.hpp"

namespace minsurf {

namespace {

bool vanishes_on_samples(const Expr& f, const DomainSpec& domain) {
    if (f.is_zero()) return true;
    for (const Complex& z : halton_points(domain, 8)) {
        try {
            if (f.eval(z, domain.cut_angle) != Complex{}) return false;
        } catch (const Error&) {
            return false;
        }
    }
    return true;
}

} // namespace

void WeierstrassData::validate() const {
    domain.validate();
    if (vanishes_on_samples(G, domain)) {
        throw Error(ErrorKind::InvalidArgument, "G vanishes identically");
    }
    if (vanishes_on_samples(Psi, domain)) {
        throw Error(ErrorKind::InvalidArgument, "Psi vanishes identically");
    }
}

NullCurve::NullCurve(std::vector<Expr> components, DomainSpec domain)
    : components_(std::move(components)), domain_(std::move(domain)) {
    if (components_.size() < 3 || components_.size() > 6) {
        throw Error(ErrorKind::DimensionMismatch,
                    "a null curve needs 3 to 6 components, got " +
                        std::to_string(components_.size()));
    }
}

std::vector<Complex> NullCurve::eval(Complex z) const {
    std::vector<Complex> out;
    out.reserve(components_.size());
    for (const Expr& f : components_) out.push_back(f.eval(z, domain_.cut_angle));
    return out;
}

NullCurve NullCurve::with_domain(DomainSpec domain) const {
    return NullCurve(components_, std::move(domain));
}

Complex quadratic_form(std::span<const Complex> v) {
    if (v.size() < 2) throw Error(ErrorKind::InvalidArgument, "quadratic form needs n >= 2");
    Complex q{};
    for (const Complex& x : v) q += x * x;
    return q;
}

NullCurve from_weierstrass(const WeierstrassData& w) {
    const Complex i{0.0, 1.0};
    const Expr G2 = pow(w.G, 2);
    return NullCurve({0.5 * (1.0 - G2) * w.Psi, (0.5 * i) * (1.0 + G2) * w.Psi, w.G * w.Psi},
                     w.domain);
}

NullCurve embed_3_to_4(const NullCurve& c3) {
    if (c3.dimension() != 3) {
        throw Error(ErrorKind::DimensionMismatch, "embed_3_to_4 expects a 3-component curve");
    }
    std::vector<Expr> comps{Expr()};
    comps.insert(comps.end(), c3.components().begin(), c3.components().end());
    return NullCurve(std::move(comps), c3.domain());
}

NullResidualReport null_residual(const NullCurve& c, std::size_t samples, std::size_t offset) {
    if (samples < 8) throw Error(ErrorKind::InvalidArgument, "null_residual needs >= 8 samples");
    NullResidualReport report;
    for (const Complex& z : halton_points(c.domain(), samples, offset)) {
        const std::vector<Complex> phi = c.eval(z);
        double mass = 0.0;
        for (const Complex& x : phi) mass += std::norm(x);
        report.max_abs_residual = std::max(report.max_abs_residual, std::abs(quadratic_form(phi)));
        report.normalizer = std::max(report.normalizer, mass);
        ++report.sample_count;
    }
    return report;
}

} // namespace minsurf
