#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "minsurf/holomorphic.hpp"

namespace testing {

using minsurf::Complex;

inline const Complex kI{0.0, 1.0};

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(7);
    return gen;
}

inline double uniform(double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(rng());
}

inline Complex random_complex(double r) { return {uniform(-r, r), uniform(-r, r)}; }

inline Complex random_zeta(const minsurf::DomainSpec& d) {
    const double mu = 0.05 * d.width();
    const double mv = 0.05 * d.height();
    return {uniform(d.u_min + mu, d.u_max - mu), uniform(d.v_min + mv, d.v_max - mv)};
}

inline double sum_abs2(const std::vector<Complex>& v) {
    double s = 0.0;
    for (const Complex& z : v) s += std::norm(z);
    return s;
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

} // namespace testing
