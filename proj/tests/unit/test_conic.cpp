#include <cmath>
#include <numbers>

#include "doctest.h"
#include "minsurf/catalog.hpp"
#include "minsurf/conic.hpp"
#include "minsurf/transforms.hpp"
#include "support.hpp"

using namespace minsurf;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Eigen::Vector2d> sample(auto&& f, double t0, double t1, int n) {
    std::vector<Eigen::Vector2d> pts;
    for (int k = 0; k < n; ++k) pts.push_back(f(t0 + (t1 - t0) * k / (n - 1)));
    return pts;
}

std::vector<Eigen::Vector2d> ellipse_pts() {
    return sample([](double t) { return Eigen::Vector2d(2 * std::cos(t), std::sin(t)); }, 0, 2 * kPi - 0.1, 40);
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

} // namespace

TEST_SUITE("planes") {
    TEST_CASE("points in the xy-plane") {
        std::vector<std::vector<double>> pts;
        for (int k = 0; k < 10; ++k) pts.push_back({std::cos(k * 0.7), std::sin(k * 1.3), 0.0, 0.0});
        const PlaneFit f = fit_plane(pts);
        CHECK(f.residual <= 1e-15);
        CHECK(std::abs(f.plane.e1.dot(f.plane.e2)) <= 1e-15);
        CHECK(std::abs(f.plane.e1(2)) + std::abs(f.plane.e1(3)) <= 1e-15);
    }

    TEST_CASE("a helix is not planar") {
        std::vector<std::vector<double>> pts;
        for (int k = 0; k < 64; ++k) {
            const double t = 4 * kPi * k / 63;
            pts.push_back({std::cos(t), std::sin(t), 0.3 * t});
        }
        const PlanarCurveSample pc = planar_sample(pts);
        CHECK(pc.planarity_residual > 0.05);
        CHECK(kind_of([&] { fit_conic(pc); }) == ErrorKind::NotPlanar);
    }

    TEST_CASE("degenerate inputs") {
        CHECK(kind_of([] { fit_plane({{0, 0}, {1, 1}}); }) == ErrorKind::DegenerateInput);
        CHECK(kind_of([] { fit_plane({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}}); }) == ErrorKind::DegenerateInput);
        CHECK(kind_of([] { fit_plane({{0, 0, 0}, {1, 1}, {2, 2, 2}}); }) == ErrorKind::DimensionMismatch);
    }
}

TEST_SUITE("conic fit") {
    TEST_CASE("ellipse") {
        const ConicFit f = fit_conic(ellipse_pts());
        CHECK(f.kind == ConicKind::Ellipse);
        CHECK(f.eccentricity == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
        CHECK(eccentricity(f) == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
        REQUIRE(f.semi_axes);
        CHECK(f.semi_axes->first == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(f.semi_axes->second == doctest::Approx(1.0).epsilon(1e-12));
        REQUIRE(f.center);
        CHECK(f.center->norm() <= 1e-12);
        REQUIRE(f.canonical);
        CHECK(f.canonical->l1 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(f.canonical->l2 == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(f.canonical->f == -1.0);
        // coefficients of x² + 4y² − 4 up to scale
        const auto& c = f.coefficients;
        CHECK(c[2] / c[0] == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(c[5] / c[0] == doctest::Approx(-4.0).epsilon(1e-12));
        CHECK(std::abs(c[1]) + std::abs(c[3]) + std::abs(c[4]) <= 1e-12);
        CHECK(kind_of([&] { asymptotes(f); }) == ErrorKind::NotHyperbola);
    }

    TEST_CASE("circle") {
        const ConicFit f = fit_conic(sample(
            [](double t) { return Eigen::Vector2d(3 + 1.5 * std::cos(t), -1 + 1.5 * std::sin(t)); }, 0, 5, 30));
        CHECK(f.kind == ConicKind::Circle);
        CHECK(f.eccentricity <= 1e-7);
        CHECK(f.semi_axes->first == doctest::Approx(1.5));
        CHECK((*f.center - Eigen::Vector2d(3, -1)).norm() <= 1e-12);
    }

    TEST_CASE("parabola") {
        const ConicFit f = fit_conic(sample([](double t) { return Eigen::Vector2d(t, t * t); }, -2, 2, 41));
        CHECK(f.kind == ConicKind::Parabola);
        CHECK(std::abs(f.eccentricity - 1.0) <= 1e-9);
        REQUIRE(f.parabola_coefficient);
        CHECK(std::abs(*f.parabola_coefficient) == doctest::Approx(1.0).epsilon(1e-12));
    }

    TEST_CASE("hyperbola and asymptotes") {
        auto branch = [](double s) { return [s](double t) { return Eigen::Vector2d(s * std::cosh(t), std::sinh(t)); }; };
        std::vector<Eigen::Vector2d> pts = sample(branch(1.0), -2, 2, 30);
        const auto left = sample(branch(-1.0), -2, 2, 30);
        pts.insert(pts.end(), left.begin(), left.end());
        const ConicFit f = fit_conic(pts);
        CHECK(f.kind == ConicKind::Hyperbola);
        CHECK(f.eccentricity == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        const auto [a, b] = asymptotes(f);
        CHECK(std::abs(a.dot(b)) <= 1e-12);
        for (const Eigen::Vector2d& d : {a, b}) CHECK(std::abs(std::abs(d.x()) - std::abs(d.y())) <= 1e-12);
        CHECK(f.semi_axes->first == doctest::Approx(1.0).epsilon(1e-12));

        // one branch is enough
        const ConicFit g = fit_conic(sample(branch(1.0), -2, 2, 30));
        CHECK(g.kind == ConicKind::Hyperbola);
        CHECK(g.eccentricity == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
    }

    TEST_CASE("line") {
        const ConicFit f = fit_conic(sample([](double t) { return Eigen::Vector2d(t, 2 * t + 1); }, -1, 1, 20));
        CHECK(f.kind == ConicKind::Line);
        CHECK(std::isinf(f.eccentricity));
        CHECK(kind_of([&] { eccentricity(f); }) == ErrorKind::DegenerateConic);
        CHECK(kind_of([&] { asymptotes(f); }) == ErrorKind::NotHyperbola);
    }

    TEST_CASE("invariance under rigid motions") {
        const ConicFit base = fit_conic(ellipse_pts());
        for (int trial = 0; trial < 5; ++trial) {
            const double angle = testing::uniform(-kPi, kPi);
            const Eigen::Vector2d shift(testing::uniform(-5, 5), testing::uniform(-5, 5));
            const Eigen::Rotation2Dd rot(angle);
            std::vector<Eigen::Vector2d> moved;
            for (const auto& p : ellipse_pts()) moved.push_back(rot * p + shift);
            const ConicFit f = fit_conic(moved);
            CHECK(f.kind == ConicKind::Ellipse);
            CHECK(f.eccentricity == doctest::Approx(base.eccentricity).epsilon(1e-10));
            CHECK(f.canonical->l2 == doctest::Approx(base.canonical->l2).epsilon(1e-10));
            CHECK((*f.center - shift).norm() <= 1e-10);
        }
    }

    TEST_CASE("too few or ambiguous samples") {
        const auto five = sample([](double t) { return Eigen::Vector2d(std::cos(t), std::sin(t)); }, 0, 2, 5);
        CHECK(kind_of([&] { fit_conic(five); }) == ErrorKind::DegenerateInput);
        std::vector<Eigen::Vector2d> four;
        for (int rep = 0; rep < 2; ++rep) {
            for (const auto& p : {Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(-1, 0),
                                  Eigen::Vector2d(0, -1)}) {
                four.push_back(p);
            }
        }
        CHECK(kind_of([&] { fit_conic(four); }) == ErrorKind::IllConditioned);
    }
}

TEST_SUITE("slices") {
    TEST_CASE("complex parabola level curve") {
        const Immersion x = complex_parabola(1.0);
        const PlanarCurveSample pc = slice(x, 0, 0.0, 21);
        REQUIRE(pc.ambient.size() == 21);
        for (const auto& p : pc.ambient) {
            CHECK(std::abs(p[0]) <= 1e-12);
            CHECK(p[2] == doctest::Approx(-p[1] * p[1]));
            CHECK(std::abs(p[3]) <= 1e-12);
        }
        const ConicFit f = fit_conic(pc);
        CHECK(f.kind == ConicKind::Parabola);
        CHECK(std::abs(*f.parabola_coefficient) == doctest::Approx(1.0).epsilon(1e-9));
    }

    TEST_CASE("fitted parabola coefficient for mu = 2 - i") {
        const Immersion x = complex_parabola(Complex(2, -1));
        const ConicFit f = fit_conic(parameter_line(x, Param::U, 0.5, 41));
        REQUIRE(f.parabola_coefficient);
        CHECK(std::abs(std::abs(*f.parabola_coefficient) - std::sqrt(5.0) / 6) <= 1e-9);
    }

    TEST_CASE("deformed helicoid level curves are planar") {
        const NullCurve c = deform_theorem(helicoid(), Complex(1, 2));
        const PlanarCurveSample pc = slice(curve_immersion(c, 0.0), 3, 0.3, 48);
        CHECK(pc.planarity_residual <= 1e-9);
        for (const auto& p : pc.ambient) CHECK(p[3] == doctest::Approx(0.3).epsilon(1e-12));
    }

    TEST_CASE("deformed helicoid at v0 = pi/2 with (1, 0)") {
        NullCurve c = deform_theorem(helicoid(), 1.0);
        c = c.with_domain(DomainSpec::rectangle(-1.5, 1.5, -2, 2));
        const ConicFit f = fit_conic(slice(curve_immersion(c, 0.0), 3, kPi / 2, 64));
        CHECK(f.kind == ConicKind::Hyperbola);
        CHECK(f.eccentricity == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
        const auto [a, b] = asymptotes(f);
        CHECK(std::abs(a.dot(b)) <= 1e-8);
    }

    TEST_CASE("undeformed helicoid is foliated by lines") {
        const Immersion x = curve_immersion(from_weierstrass(helicoid()), 0.0);
        for (const double v0 : {-1.0, 0.2, 1.3}) {
            CHECK(fit_conic(slice(x, 2, v0, 24)).kind == ConicKind::Line);
        }
    }

    TEST_CASE("slice preconditions") {
        const Immersion x = curve_immersion(from_weierstrass(helicoid()), 0.0);
        CHECK(kind_of([&] { slice(x, 0, 0.1, 24); }) == ErrorKind::AxisNotMonotone);
        CHECK(kind_of([&] { slice(x, 2, 5.0, 24); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([&] { slice(x, 3, 0.0, 24); }) == ErrorKind::InvalidArgument);
        CHECK(kind_of([&] { slice(x, 2, 0.0, 4); }) == ErrorKind::InvalidArgument);
    }

    TEST_CASE("grid line of a sampled patch") {
        const SurfacePatch p = immerse(from_weierstrass(helicoid()), 0.0, {7, 13});
        const PlanarCurveSample pc = slice(p, 2, p.v(4));
        CHECK(pc.ambient.size() == 7);
        CHECK(kind_of([&] { slice(p, 2, 0.5 * (p.v(4) + p.v(5))); }) == ErrorKind::AxisNotMonotone);
    }
}
