#include <filesystem>

#include "doctest.h"
#include "minsurf/pipeline.hpp"
#include "support.hpp"

using namespace minsurf;
using nlohmann::json;
using testing::kI;

namespace {

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidArgument;
}

SurfaceSpec helicoid_spec() { return spec_from_catalog(catalog_entry("helicoid")); }

Deformation parabolic(Complex c) {
    Deformation d{DeformationKind::Parabolic, {}};
    d.params.c = c;
    return d;
}

double patch_distance(const SurfacePatch& a, const SurfacePatch& b) {
    REQUIRE(a.nu == b.nu);
    REQUIRE(a.nv == b.nv);
    REQUIRE(a.dimension == b.dimension);
    double worst = 0.0;
    for (std::size_t j = 0; j < a.nu; ++j) {
        for (std::size_t k = 0; k < a.nv; ++k) {
            for (std::size_t i = 0; i < a.dimension; ++i) {
                worst = std::max(worst, std::abs(a.point(j, k)[i] - b.point(j, k)[i]));
            }
        }
    }
    return worst;
}

std::filesystem::path scratch_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "minsurf_pipeline_test";
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("deformation kind names") {
    for (const auto kind : {DeformationKind::Associate, DeformationKind::Goursat, DeformationKind::LopezRos,
                            DeformationKind::Lawson, DeformationKind::Parabolic, DeformationKind::Segre,
                            DeformationKind::Theorem51, DeformationKind::Corollary53}) {
        CHECK(parse_deformation_kind(to_string(kind)) == kind);
    }
    CHECK(kind_of([] { parse_deformation_kind("twist"); }) == ErrorKind::InvalidSpec);
}

TEST_SUITE("serialization") {
    TEST_CASE("catalog specs round trip") {
        for (const std::string& name : catalog_names()) {
            CAPTURE(name);
            const json j = to_json(spec_from_catalog(catalog_entry(name)));
            CHECK(to_json(surface_spec_from_json(j)) == j);
        }
    }

    TEST_CASE("deformations round trip") {
        const json list = json::parse(R"([
            {"kind": "associate", "theta": 0.25},
            {"kind": "goursat", "t": -0.5},
            {"kind": "lopez-ros", "lambda": 2},
            {"kind": "lawson", "alpha": 0.1, "beta": 0.7},
            {"kind": "parabolic", "c": "1+2i"},
            {"kind": "segre", "L": "0.5-1i", "R": "2"},
            {"kind": "theorem51", "c": "-1i"},
            {"kind": "corollary53", "theta": 1.2}
        ])");
        for (const json& d : list) {
            CAPTURE(d.dump());
            const json once = to_json(deformation_from_json(d));
            CHECK(once["kind"] == d["kind"]);
            CHECK(to_json(deformation_from_json(once)) == once);
        }
        const Deformation p = deformation_from_json(list[4]);
        CHECK(p.params.c == Complex(1, 2));
        CHECK(kind_of([] { deformation_from_json(json{{"kind", "parabolic"}}); }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([] { deformation_from_json(json{{"theta", 1}}); }) == ErrorKind::InvalidSpec);
    }

    TEST_CASE("domains round trip") {
        DomainSpec d = DomainSpec::rectangle(-1, 2, -0.5, 0.5);
        d.punctures = {Complex(0, 0), Complex(1, 0.25)};
        d.cut_angle = 1.0;
        const json j = to_json(d);
        const DomainSpec back = domain_from_json(j);
        CHECK(back.u_min == -1);
        CHECK(back.v_max == 0.5);
        CHECK(back.punctures == d.punctures);
        CHECK(back.cut_angle == 1.0);
        CHECK(to_json(back) == j);
        CHECK(kind_of([] { domain_from_json(json{{"u", {2, 1}}}); }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([] { domain_from_json(json{{"u", {0}}}); }) == ErrorKind::InvalidSpec);
    }

    TEST_CASE("malformed surface specs") {
        CHECK(kind_of([] { surface_spec_from_json(json::array()); }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([] { surface_spec_from_json(json{{"name", "x"}}); }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([] {
                  surface_spec_from_json(json{{"weierstrass", {{"G", "z"}, {"Psi", "1"}}}, {"curve", {"1"}}});
              }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([] { surface_spec_from_json(json{{"weierstrass", {{"G", "z +"}, {"Psi", "1"}}}}); }) ==
              ErrorKind::ParseError);
    }

    TEST_CASE("planar samples round trip") {
        const ResolvedSurface s = resolve(helicoid_spec());
        const PlanarCurveSample pc = slice_surface(s, {std::size_t{2}, std::nullopt, 0.4, 16}, RunOptions{});
        const PlanarCurveSample back = planar_sample_from_json(to_json(pc));
        REQUIRE(back.in_plane.size() == pc.in_plane.size());
        for (std::size_t r = 0; r < pc.in_plane.size(); ++r) {
            CHECK((back.in_plane[r] - pc.in_plane[r]).norm() == 0.0);
        }
        CHECK(to_json(back) == to_json(pc));
    }
}

TEST_SUITE("resolution") {
    TEST_CASE("default base point") {
        CHECK(default_base_point(DomainSpec::rectangle(-1, 1, -1, 1)) == Complex(0, 0));
        DomainSpec punctured = DomainSpec::rectangle(-1, 2, -1, 1);
        punctured.punctures = {Complex(0, 0)};
        CHECK(default_base_point(punctured) == Complex(1, 0));
        CHECK(default_base_point(DomainSpec::rectangle(3, 4, 1, 2)) == Complex(3.5, 1.5));
    }

    TEST_CASE("an empty deformation list is the identity") {
        const ResolvedSurface s = resolve(helicoid_spec());
        REQUIRE(s.weierstrass);
        const NullCurve direct = from_weierstrass(helicoid());
        for (int k = 0; k < 20; ++k) {
            const Complex z = testing::random_zeta(helicoid().domain);
            CHECK(testing::max_diff(s.curve.eval(z), direct.eval(z)) == 0.0);
        }
    }

    TEST_CASE("parabolic steps compose additively") {
        SurfaceSpec two = helicoid_spec();
        two.deformations = {parabolic(Complex(0.5, 0.2)), parabolic(Complex(-0.3, 1.0))};
        SurfaceSpec one = helicoid_spec();
        one.deformations = {parabolic(Complex(0.2, 1.2))};
        RunOptions opts;
        opts.res = {24, 24};
        const SurfacePatch a = sample_surface(resolve(two), opts);
        const SurfacePatch b = sample_surface(resolve(one), opts);
        CHECK(a.dimension == 4);
        CHECK(patch_distance(a, b) <= 1e-10);
    }

    TEST_CASE("steps that need Weierstrass data") {
        SurfaceSpec s = helicoid_spec();
        s.deformations = {parabolic(1.0), Deformation{DeformationKind::Theorem51, {}}};
        CHECK(kind_of([&] { resolve(s); }) == ErrorKind::InvalidSpec);
        s.deformations = {parabolic(1.0), Deformation{DeformationKind::Goursat, {}}};
        CHECK(kind_of([&] { resolve(s); }) == ErrorKind::InvalidSpec);
        s.deformations = {Deformation{DeformationKind::Associate, {}}, Deformation{DeformationKind::LopezRos, {}}};
        CHECK_NOTHROW(resolve(s));
    }

    TEST_CASE("associate step keeps the Weierstrass data consistent") {
        SurfaceSpec s = helicoid_spec();
        Deformation d{DeformationKind::Associate, {}};
        d.params.theta = 0.7;
        s.deformations = {d};
        const ResolvedSurface r = resolve(s);
        REQUIRE(r.weierstrass);
        const NullCurve rebuilt = from_weierstrass(*r.weierstrass);
        for (int k = 0; k < 10; ++k) {
            const Complex z = testing::random_zeta(helicoid().domain);
            CHECK(testing::max_diff(rebuilt.eval(z), r.curve.eval(z)) <= 1e-14);
        }
    }

    TEST_CASE("base point outside the domain") {
        SurfaceSpec s = helicoid_spec();
        s.base_point = Complex(5, 0);
        CHECK(kind_of([&] { resolve(s); }) == ErrorKind::InvalidBasePoint);
    }
}

TEST_SUITE("reports") {
    TEST_CASE("verify report fields") {
        SurfaceSpec s = helicoid_spec();
        Deformation d{DeformationKind::Theorem51, {}};
        d.params.c = Complex(1, 2);
        s.deformations = {d};
        RunOptions opts;
        opts.res = {32, 32};
        const json r = verify_report(resolve(s), opts);
        CHECK(r["dimension"] == 4);
        CHECK(r["null_residual"]["is_null"] == true);
        CHECK(r["degeneracy"]["rank"] == 3);
        CHECK(r["degeneracy"].contains("hyperplane"));
        CHECK(r["minimality"]["order"] == 8);
        CHECK(r["minimality"]["resolution"] == "32x32");
        CHECK(r["minimality"]["harmonicity_defect"].get<double>() <= 1e-4);
    }

    TEST_CASE("sample CSV") {
        RunOptions opts;
        opts.res = {5, 4};
        const std::string csv = patch_csv(sample_surface(resolve(helicoid_spec()), opts));
        CHECK(csv.rfind("j,k,u,v,x0,x1,x2,lambda\n", 0) == 0);
        CHECK(std::count(csv.begin(), csv.end(), '\n') == 21);
    }

    TEST_CASE("failed fits are reported, not thrown") {
        std::vector<std::vector<double>> helix;
        for (int k = 0; k < 40; ++k) helix.push_back({std::cos(0.3 * k), std::sin(0.3 * k), 0.2 * k});
        const json j = slice_and_fit(planar_sample(helix));
        CHECK(j.contains("slice"));
        CHECK_FALSE(j.contains("fit"));
        CHECK(j["fit_error"]["kind"] == "NotPlanar");
    }
}

TEST_SUITE("jobs") {
    TEST_CASE("a job writes every requested artifact") {
        const auto dir = scratch_dir();
        const json job = {
            {"input", to_json(helicoid_spec())},
            {"deformations", {{{"kind", "theorem51"}, {"c", "1+2i"}}}},
            {"res", "24x24"},
            {"outputs",
             {{"spec", (dir / "spec.json").string()},
              {"verify", (dir / "verify.json").string()},
              {"sample", (dir / "sample.csv").string()},
              {"mesh", {{"format", "ply"}, {"path", (dir / "mesh.ply").string()}, {"projection", {0, 1, 3}}}},
              {"slices", {{{"axis", 3}, {"value", 0.3}, {"path", (dir / "slice.json").string()}}}}}}};
        const json summary = run(job_from_json(job));
        CHECK(summary["dimension"] == 4);
        CHECK(summary["artifacts"].size() == 5);
        const json spec = json::parse(read_file((dir / "spec.json").string()));
        CHECK(spec["deformations"].size() == 1);
        CHECK(json::parse(read_file((dir / "verify.json").string()))["degeneracy"]["rank"] == 3);
        CHECK(json::parse(read_file((dir / "slice.json").string()))["fit"]["kind"] == "hyperbola");
        CHECK(read_file((dir / "mesh.ply").string()).rfind("ply\n", 0) == 0);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("input by path") {
        const auto dir = scratch_dir();
        const std::string path = (dir / "input.json").string();
        write_file(path, to_json(helicoid_spec()).dump());
        const JobSpec job = job_from_json(json{{"input", path}, {"seed", 3}, {"tol", 1e-10}});
        CHECK(job.input.name == "helicoid");
        CHECK(job.options.seed == 3);
        CHECK(job.options.tol == 1e-10);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("malformed jobs") {
        const json in = to_json(helicoid_spec());
        CHECK(kind_of([] { job_from_json(json{{"res", "8x8"}}); }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([&] {
                  job_from_json(json{{"input", in}, {"outputs", {{"mesh", {{"format", "stl"}, {"path", "x"}}}}}});
              }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([&] {
                  job_from_json(
                      json{{"input", in},
                           {"outputs", {{"slices", {{{"axis", 1}, {"param", "u"}, {"value", 0}, {"path", "x"}}}}}}});
              }) == ErrorKind::InvalidSpec);
        CHECK(kind_of([] { read_file("/nonexistent/minsurf/input.json"); }) == ErrorKind::IOError);
    }
}
