#include <numbers>

#include "doctest.h"
#include "minsurf/catalog.hpp"
#include "minsurf/surface.hpp"
#include "minsurf/transforms.hpp"
#include "support.hpp"

using namespace minsurf;
using testing::kI;
using testing::max_diff;
using testing::sum_abs2;

namespace {

// The parabolic matrix written out entry by entry, independent of the library.
Eigen::Matrix4cd parabolic_oracle(Complex c) {
    const Complex h = c * c / 2.0;
    Eigen::Matrix4cd m;
    m << 1.0, -c, -c * kI, 0.0,
         c, 1.0 - h, -h * kI, 0.0,
         c * kI, -h * kI, 1.0 + h, 0.0,
         0.0, 0.0, 0.0, 1.0;
    return m;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

const WeierstrassData& helicoid_data() {
    static const WeierstrassData w = helicoid();
    return w;
}

} // namespace

TEST_SUITE("matrices") {
    TEST_CASE("parabolic rotation matrix") {
        CHECK(max_abs(parabolic_rotation_matrix(0.0).matrix - Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
        for (int k = 0; k < 10; ++k) {
            const Complex c = testing::random_complex(3.0);
            CHECK(max_abs(parabolic_rotation_matrix(c).matrix - parabolic_oracle(c)) == 0.0);
        }
        const NullTransform m = parabolic_rotation_matrix(Complex(2, -3));
        CHECK(m.orthogonal);
        CHECK(max_abs(m.matrix.transpose() * m.matrix - Eigen::MatrixXcd::Identity(4, 4)) <= 1e-14);
        const Eigen::MatrixXcd prod = parabolic_rotation_matrix(Complex(1, 1)).matrix *
                                      parabolic_rotation_matrix(Complex(0, -0.5)).matrix;
        CHECK(max_abs(prod - parabolic_rotation_matrix(Complex(1, 0.5)).matrix) <= 1e-12);
        CHECK(is_complex_orthogonal(parabolic_rotation_matrix(Complex(3, 4))).orthogonal);
    }

    TEST_CASE("orthogonality report") {
        const OrthogonalityReport id = is_complex_orthogonal(Eigen::MatrixXcd::Identity(4, 4));
        CHECK(id.orthogonal);
        CHECK(id.max_deviation == 0.0);
        const OrthogonalityReport ones = is_complex_orthogonal(Eigen::MatrixXcd::Ones(3, 3));
        CHECK_FALSE(ones.orthogonal);
        CHECK(ones.max_deviation == doctest::Approx(3.0));
        // unitary but not complex orthogonal
        Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2) * kI;
        CHECK_FALSE(is_complex_orthogonal(u).orthogonal);
    }

    TEST_CASE("Segre factors") {
        CHECK(max_abs(segre_LR_matrix(0.0, 0.0).matrix - Eigen::MatrixXcd::Identity(4, 4)) == 0.0);
        const Complex c(1, 2);
        CHECK(max_abs(segre_LR_matrix(-c * kI, -c * kI).matrix - parabolic_oracle(c)) <= 1e-14);
        for (const auto& [L, R] : {std::pair{Complex(1, 0), Complex(0, 1)},
                                   std::pair{Complex(1, 0), Complex(0, 2)}}) {
            const NullTransform t = segre_LR_matrix(L, R);
            CHECK(t.orthogonal == is_complex_orthogonal(t.matrix).orthogonal);
            const NullCurve out = apply_transform(t, embed_3_to_4(from_weierstrass(helicoid_data())));
            CHECK(null_residual(out, 64).is_null());
        }
    }

    TEST_CASE("Lorentz parabolic rotation and Wick rotation") {
        Eigen::Matrix3d eta = Eigen::Matrix3d::Identity();
        eta(2, 2) = -1.0;
        for (const double t : {0.0, 0.3, -1.7, 2.5}) {
            const Eigen::Matrix3d L = lorentz_parabolic_matrix(t);
            CHECK((L.transpose() * eta * L - eta).cwiseAbs().maxCoeff() <= 1e-13);
            // the Wick-rotated matrix is the upper block of the complex parabolic rotation
            const Eigen::Matrix3cd w = wick_rotate(L);
            const Eigen::Matrix3cd block = parabolic_oracle(t).topLeftCorner<3, 3>();
            CHECK((w - block).cwiseAbs().maxCoeff() <= 1e-14);
        }
        // one-parameter group in the Lorentz picture
        const Eigen::Matrix3d ab = lorentz_parabolic_matrix(0.4) * lorentz_parabolic_matrix(-1.1);
        CHECK((ab - lorentz_parabolic_matrix(-0.7)).cwiseAbs().maxCoeff() <= 1e-14);
    }

    TEST_CASE("Goursat matrix") {
        const NullTransform g = goursat_matrix(0.8);
        CHECK(is_complex_orthogonal(g).orthogonal);
        CHECK(max_abs(goursat_matrix(0.0).matrix - Eigen::MatrixXcd::Identity(3, 3)) == 0.0);
    }
}

TEST_SUITE("curve transforms") {
    TEST_CASE("apply_transform") {
        const NullCurve c = embed_3_to_4(from_weierstrass(helicoid_data()));
        const NullCurve same = apply_transform({Eigen::MatrixXcd::Identity(4, 4), true}, c);
        const NullCurve ones = apply_transform({Eigen::MatrixXcd::Ones(4, 4), false}, c);
        for (int k = 0; k < 20; ++k) {
            const Complex z = testing::random_zeta(c.domain());
            CHECK(same.eval(z) == c.eval(z));
        }
        CHECK(null_residual(apply_transform(parabolic_rotation_matrix(Complex(0.5, 1)), c), 64).is_null());
        CHECK_FALSE(null_residual(ones, 64).is_null());
        CHECK_THROWS_AS(apply_transform(goursat_matrix(1.0), c), Error);
    }

    TEST_CASE("associate family") {
        const NullCurve c = from_weierstrass(helicoid_data());
        const NullCurve id = associate(c, 0.0);
        const NullCurve conj = associate(c, std::numbers::pi / 2);
        const NullCurve rot = associate(c, 0.7);
        for (int k = 0; k < 20; ++k) {
            const Complex z = testing::random_zeta(c.domain());
            const auto a = c.eval(z);
            CHECK(max_diff(id.eval(z), a) <= 1e-15 * std::sqrt(sum_abs2(a)));
            std::vector<Complex> minus_i(a.size());
            for (std::size_t j = 0; j < a.size(); ++j) minus_i[j] = -kI * a[j];
            CHECK(max_diff(conj.eval(z), minus_i) <= 1e-15 * std::sqrt(sum_abs2(a)));
            CHECK(conformal_factor(rot, z) == doctest::Approx(conformal_factor(c, z)).epsilon(1e-14));
        }
    }

    TEST_CASE("Goursat transformation") {
        const NullCurve c = from_weierstrass(helicoid_data());
        const NullCurve g = goursat(c, 0.3);
        CHECK(null_residual(g, 64).is_null());
        const NullCurve id = goursat(c, 0.0);
        for (int k = 0; k < 20; ++k) {
            const Complex z = testing::random_zeta(c.domain());
            CHECK(id.eval(z) == c.eval(z));
            CHECK(g.eval(z)[2] == c.eval(z)[2]);
        }
        CHECK_THROWS_AS(goursat(embed_3_to_4(c), 0.3), Error);
    }

    TEST_CASE("Lopez-Ros deformation") {
        const WeierstrassData& w = helicoid_data();
        const WeierstrassData same = lopez_ros(w, 1.0);
        const WeierstrassData lr = lopez_ros(w, 2.0);
        for (int k = 0; k < 50; ++k) {
            const Complex z = testing::random_zeta(w.domain);
            CHECK(same.G.eval(z) == w.G.eval(z));
            CHECK(same.Psi.eval(z) == w.Psi.eval(z));
            const Complex h0 = w.G.eval(z) * w.Psi.eval(z);
            const Complex h1 = lr.G.eval(z) * lr.Psi.eval(z);
            CHECK(std::abs(h1 - h0) <= 4e-16 * std::abs(h0));
        }
        CHECK(goursat_parameter_for_lopez_ros(2.0) == doctest::Approx(-std::log(2.0)));
        CHECK_THROWS_AS(lopez_ros(w, 0.0), Error);
        CHECK_THROWS_AS(lopez_ros(w, -1.0), Error);

        const SurfacePatch a = immerse(from_weierstrass(w), 0.0, {24, 24});
        const SurfacePatch b = immerse(from_weierstrass(lr), 0.0, {24, 24});
        double worst = 0.0;
        for (std::size_t i = 0; i < a.nu * a.nv; ++i) {
            worst = std::max(worst, std::abs(a.points[3 * i + 2] - b.points[3 * i + 2]));
        }
        CHECK(worst <= 1e-10);
    }

    TEST_CASE("Lawson lift") {
        const NullCurve c = from_weierstrass(helicoid_data());
        const NullCurve zero = lawson(c, 0.0, 0.0);
        const NullCurve quarter = lawson(c, 0.0, std::numbers::pi / 4);
        const NullCurve general = lawson(c, 0.9, -0.4);
        REQUIRE(zero.dimension() == 6);
        for (int k = 0; k < 50; ++k) {
            const Complex z = testing::random_zeta(c.domain());
            const auto a = c.eval(z);
            const auto z0 = zero.eval(z);
            const auto q = quarter.eval(z);
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(z0[2 * j] == a[j]);
                CHECK(z0[2 * j + 1] == Complex(0, 0));
                CHECK(std::abs(q[2 * j] - a[j] / std::sqrt(2.0)) <= 1e-15 * std::abs(a[j]) + 1e-300);
                CHECK(std::abs(q[2 * j + 1] + kI * a[j] / std::sqrt(2.0)) <=
                      1e-15 * std::abs(a[j]) + 1e-300);
            }
            CHECK(std::abs(conformal_factor(general, z) - conformal_factor(c, z)) <=
                  1e-12 * conformal_factor(c, z));
        }
        CHECK(null_residual(general, 64).is_null());
        CHECK_THROWS_AS(lawson(embed_3_to_4(c), 0.0, 0.0), Error);
    }
}

TEST_SUITE("deformations into R4") {
    TEST_CASE("deform_theorem") {
        const WeierstrassData& w = helicoid_data();
        const NullCurve zero = deform_theorem(w, 0.0);
        const NullCurve embedded = embed_3_to_4(from_weierstrass(w));
        const Complex c(2, -1);
        const NullCurve d = deform_theorem(w, c);
        const NullCurve via_matrix = apply_transform(parabolic_rotation_matrix(c), embedded);
        for (int k = 0; k < 50; ++k) {
            const Complex z = testing::random_zeta(w.domain);
            const auto a = d.eval(z);
            CHECK(max_diff(zero.eval(z), embedded.eval(z)) <= 1e-15 * std::sqrt(sum_abs2(a)));
            CHECK(max_diff(a, via_matrix.eval(z)) <= 1e-12 * std::max(1.0, std::sqrt(sum_abs2(a))));
            CHECK(std::abs(a[0] + c * a[1] + kI * c * a[2]) <= 1e-12 * sum_abs2(a));
        }
    }

    TEST_CASE("deformed conformal factor closed form") {
        const WeierstrassData w = catenoid();
        const Complex c(1, 1);
        const NullCurve d = deform_theorem(w, c);
        for (int k = 0; k < 50; ++k) {
            const Complex z = testing::random_zeta(w.domain);
            const double numeric = conformal_factor(d, z);
            CHECK(std::abs(deformed_conformal_factor(w, c, z) - numeric) <= 1e-12 * numeric);
        }
    }

    TEST_CASE("rotated deformation") {
        const WeierstrassData w = catenoid();
        const NullCurve zero = deform_rotated(w, 0.0);
        const NullCurve embedded = embed_3_to_4(from_weierstrass(w));
        const double theta = 0.4;
        const NullCurve r = deform_rotated(w, theta);
        const NullCurve t = deform_theorem(w, std::tan(theta));
        const Eigen::Matrix4d frame = rotated_frame(theta);
        for (int k = 0; k < 50; ++k) {
            const Complex z = testing::random_zeta(w.domain);
            const auto a = r.eval(z);
            const auto b = t.eval(z);
            CHECK(max_diff(zero.eval(z), embedded.eval(z)) <= 1e-14 * std::sqrt(sum_abs2(a)));
            std::vector<Complex> rotated(4);
            for (int i = 0; i < 4; ++i) {
                for (int j = 0; j < 4; ++j) rotated[i] += frame(i, j) * b[j];
            }
            CHECK(max_diff(a, rotated) <= 1e-12 * std::sqrt(sum_abs2(a)));
        }
        CHECK(null_residual(deform_rotated(w, 1.0), 64).is_null());
        CHECK_THROWS_AS(deform_rotated(w, std::numbers::pi / 2), Error);
        // the frame is a rotation
        CHECK((frame * frame.transpose() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() <= 1e-15);
    }
}
