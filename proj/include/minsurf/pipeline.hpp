#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "minsurf/catalog.hpp"
#include "minsurf/conic.hpp"
#include "minsurf/nullcurve.hpp"
#include "minsurf/surface.hpp"

namespace minsurf {

enum class DeformationKind {
    Associate,
    Goursat,
    LopezRos,
    Lawson,
    Parabolic,
    Segre,
    Theorem51,
    Corollary53,
};

std::string_view to_string(DeformationKind kind);
/// Accepts associate, goursat, lopez-ros, lawson, parabolic, segre, theorem51,
/// corollary53. Throws InvalidSpec.
DeformationKind parse_deformation_kind(std::string_view text);

struct DeformationParams {
    Complex c{};          // parabolic, theorem51
    double theta = 0.0;   // associate, corollary53
    double lambda = 1.0;  // lopez-ros
    double t = 0.0;       // goursat
    double alpha = 0.0;   // lawson
    double beta = 0.0;    // lawson
    Complex L{};          // segre
    Complex R{};          // segre
};

struct Deformation {
    DeformationKind kind = DeformationKind::Associate;
    DeformationParams params;
};

/// Serializable description of a surface: Weierstrass data or explicit
/// curve components on a domain, followed by deformations.
struct SurfaceSpec {
    std::string name;
    std::optional<std::pair<Expr, Expr>> weierstrass; // (G, Ψ)
    std::vector<Expr> curve;                          // used when weierstrass is empty
    DomainSpec domain;
    std::optional<Complex> base_point;
    std::vector<Deformation> deformations;
};

/// A surface after its deformations have been applied. The Weierstrass data
/// survive only as long as every step acts on them.
struct ResolvedSurface {
    std::optional<WeierstrassData> weierstrass;
    NullCurve curve;
    Complex base_point{};
};

/// 0 when it is a valid base point, then 1, then the domain center.
Complex default_base_point(const DomainSpec& domain);

/// Applies one step. Parabolic and Segre steps embed 3-component curves into
/// C⁴ first. Throws InvalidSpec for steps that do not compose.
ResolvedSurface apply_deformation(ResolvedSurface s, const Deformation& d);
ResolvedSurface resolve(const SurfaceSpec& spec);

SurfaceSpec spec_from_catalog(const CatalogEntry& entry);

nlohmann::json to_json(const SurfaceSpec& spec);
/// Throws InvalidSpec (or ParseError for malformed expressions).
SurfaceSpec surface_spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Deformation& d);
Deformation deformation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PlanarCurveSample& pc);
PlanarCurveSample planar_sample_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConicFit& fit);

struct RunOptions {
    GridResolution res{64, 64};
    double tol = 1e-12;
    std::optional<Complex> base_point;
    std::size_t seed = 0;
    std::size_t samples = 100;
    int fd_order = 8;
};

/// Null residual, degeneracy rank and finite-difference minimality report.
nlohmann::json verify_report(const ResolvedSurface& s, const RunOptions& opts);

SurfacePatch sample_surface(const ResolvedSurface& s, const RunOptions& opts);

/// CSV with header j,k,u,v,x0..x{n-1},lambda; invalid nodes omitted.
std::string patch_csv(const SurfacePatch& p);

struct SliceRequest {
    std::optional<std::size_t> axis; // level set of a coordinate
    std::optional<Param> param;      // or a parameter line
    double value = 0.0;
    std::size_t npoints = 64;
};

PlanarCurveSample slice_surface(const ResolvedSurface& s, const SliceRequest& req,
                                const RunOptions& opts);

/// CSV with header x,y,x0..x{n-1}.
std::string slice_csv(const PlanarCurveSample& pc);

/// Slice and fit, as a JSON object {"slice": ..., "fit": ...}; a failed fit
/// is reported under "fit_error".
nlohmann::json slice_and_fit(const PlanarCurveSample& pc);

struct MeshRequest {
    MeshFormat format = MeshFormat::OBJ;
    std::string path;
    Projection projection;
};

struct SliceOutput {
    SliceRequest request;
    std::string path; // JSON report
};

/// Batch job: one input surface, extra deformations and any set of outputs.
struct JobSpec {
    SurfaceSpec input;
    std::vector<Deformation> deformations;
    RunOptions options;
    std::optional<std::string> spec_path;
    std::optional<std::string> verify_path;
    std::optional<std::string> sample_path;
    std::optional<MeshRequest> mesh;
    std::vector<SliceOutput> slices;
};

/// "input" may be an inline surface-spec object or a path to one.
JobSpec job_from_json(const nlohmann::json& j);

/// Runs the job and returns a summary listing the artifacts written.
nlohmann::json run(const JobSpec& job);

/// Writes text to a file. Throws IOError.
void write_file(const std::string& path, const std::string& data);
std::string read_file(const std::string& path);

} // namespace minsurf
