#include "minsurf/sampling.hpp"

#include <algorithm>

namespace minsurf {

double radical_inverse(std::size_t index, unsigned base) {
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

double default_clearance(const DomainSpec& domain) {
    return 0.02 * std::min(domain.width(), domain.height());
}

std::vector<Complex> halton_points(const DomainSpec& domain, std::size_t count,
                                   std::size_t offset, double clearance) {
    if (clearance < 0.0) clearance = default_clearance(domain);
    std::vector<Complex> out;
    out.reserve(count);
    const std::size_t limit = offset + 1 + 64 * (count + 16);
    for (std::size_t i = offset + 1; out.size() < count && i < limit; ++i) {
        const Complex z{domain.u_min + domain.width() * radical_inverse(i, 2),
                        domain.v_min + domain.height() * radical_inverse(i, 3)};
        if (domain.puncture_distance(z) < clearance) continue;
        out.push_back(z);
    }
    if (out.size() < count) {
        throw Error(ErrorKind::InvalidArgument, "domain has no room for sample points");
    }
    return out;
}

} // namespace minsurf
