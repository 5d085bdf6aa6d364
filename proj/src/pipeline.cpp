#include "minsurf/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "format.hpp"
#include "minsurf/transforms.hpp"

namespace minsurf {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorKind::InvalidSpec, message); }

bool usable_base(const DomainSpec& d, Complex z) {
    return d.contains(z) && d.puncture_distance(z) > 1e-12;
}

NullCurve embed_if_needed(const NullCurve& c, const char* what) {
    if (c.dimension() == 3) return embed_3_to_4(c);
    if (c.dimension() != 4) {
        bad(std::string(what) + " acts on 4-component curves, got " +
            std::to_string(c.dimension()));
    }
    return c;
}

const WeierstrassData& need_weierstrass(const ResolvedSurface& s, DeformationKind kind) {
    if (!s.weierstrass) {
        bad(std::string(to_string(kind)) +
            " needs Weierstrass data, which an earlier step has replaced by a curve");
    }
    return *s.weierstrass;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json hyperplane_json(const Eigen::VectorXcd& h) {
    const double big = h.cwiseAbs().maxCoeff();
    Complex pivot = 1.0;
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        if (std::abs(h(i)) > 1e-6 * big) {
            pivot = h(i);
            break;
        }
    }
    json out = json::array();
    for (Eigen::Index i = 0; i < h.size(); ++i) {
        Complex x = h(i) / pivot;
        // drop roundoff-level parts so the printed coefficients stay readable
        if (std::abs(x.real()) < 1e-13) x.real(0.0);
        if (std::abs(x.imag()) < 1e-13) x.imag(0.0);
        out.push_back(format_complex(x));
    }
    return out;
}

std::optional<std::string> optional_string(const json& j, const char* key) {
    if (!j.contains(key)) return std::nullopt;
    if (!j[key].is_string()) bad(std::string(key) + " must be a path string");
    return j[key].get<std::string>();
}

SliceRequest slice_request_from_json(const json& j) {
    SliceRequest req;
    if (j.contains("axis")) req.axis = j["axis"].get<std::size_t>();
    if (j.contains("param")) {
        const std::string p = j["param"].get<std::string>();
        if (p != "u" && p != "v") bad("slice param must be \"u\" or \"v\"");
        req.param = p == "u" ? Param::U : Param::V;
    }
    if (req.axis.has_value() == req.param.has_value()) {
        bad("slice needs exactly one of \"axis\" and \"param\"");
    }
    if (!j.contains("value") || !j["value"].is_number()) bad("slice needs a numeric \"value\"");
    req.value = j["value"].get<double>();
    req.npoints = j.value("npoints", std::size_t{64});
    return req;
}

} // namespace

Complex default_base_point(const DomainSpec& domain) {
    for (Complex z : {Complex{0.0, 0.0}, Complex{1.0, 0.0}}) {
        if (usable_base(domain, z)) return z;
    }
    return {0.5 * (domain.u_min + domain.u_max), 0.5 * (domain.v_min + domain.v_max)};
}

ResolvedSurface apply_deformation(ResolvedSurface s, const Deformation& d) {
    const DeformationParams& p = d.params;
    switch (d.kind) {
    case DeformationKind::Associate:
        s.curve = associate(s.curve, p.theta);
        if (s.weierstrass) s.weierstrass->Psi = std::polar(1.0, -p.theta) * s.weierstrass->Psi;
        break;
    case DeformationKind::LopezRos:
        s.weierstrass = lopez_ros(need_weierstrass(s, d.kind), p.lambda);
        s.curve = from_weierstrass(*s.weierstrass);
        break;
    case DeformationKind::Goursat:
        if (s.curve.dimension() != 3) bad("goursat acts on 3-component curves only");
        s.curve = goursat(s.curve, p.t);
        s.weierstrass.reset();
        break;
    case DeformationKind::Lawson:
        if (s.curve.dimension() != 3) bad("lawson acts on 3-component curves only");
        s.curve = lawson(s.curve, p.alpha, p.beta);
        s.weierstrass.reset();
        break;
    case DeformationKind::Parabolic:
        s.curve = apply_transform(parabolic_rotation_matrix(p.c), embed_if_needed(s.curve, "parabolic"));
        s.weierstrass.reset();
        break;
    case DeformationKind::Segre:
        s.curve = apply_transform(segre_LR_matrix(p.L, p.R), embed_if_needed(s.curve, "segre"));
        s.weierstrass.reset();
        break;
    case DeformationKind::Theorem51:
        s.curve = deform_theorem(need_weierstrass(s, d.kind), p.c);
        s.weierstrass.reset();
        break;
    case DeformationKind::Corollary53:
        s.curve = deform_rotated(need_weierstrass(s, d.kind), p.theta);
        s.weierstrass.reset();
        break;
    }
    return s;
}

ResolvedSurface resolve(const SurfaceSpec& spec) {
    spec.domain.validate();
    std::optional<WeierstrassData> w;
    std::optional<NullCurve> curve;
    if (spec.weierstrass) {
        w = WeierstrassData{spec.weierstrass->first, spec.weierstrass->second, spec.domain};
        w->validate();
        curve = from_weierstrass(*w);
    } else {
        curve = NullCurve(spec.curve, spec.domain);
    }
    const Complex base = spec.base_point.value_or(default_base_point(spec.domain));
    if (!usable_base(spec.domain, base)) {
        throw Error(ErrorKind::InvalidBasePoint,
                    "base point " + format_complex(base) + " is outside the domain or a puncture");
    }
    ResolvedSurface s{w, *curve, base};
    for (const Deformation& d : spec.deformations) s = apply_deformation(std::move(s), d);
    return s;
}

SurfaceSpec spec_from_catalog(const CatalogEntry& entry) {
    SurfaceSpec spec;
    spec.name = entry.name;
    if (entry.weierstrass) {
        spec.weierstrass = {entry.weierstrass->G, entry.weierstrass->Psi};
        spec.domain = entry.weierstrass->domain;
    } else {
        spec.curve = entry.curve.components();
        spec.domain = entry.curve.domain();
    }
    spec.base_point = entry.base_point;
    return spec;
}

json verify_report(const ResolvedSurface& s, const RunOptions& opts) {
    const NullCurve& c = s.curve;
    const NullResidualReport nr = null_residual(c, std::max<std::size_t>(opts.samples, 8), opts.seed);
    const DegeneracyReport dr =
        degeneracy_rank(c, std::max(opts.samples, 2 * c.dimension()), opts.seed);
    const SurfacePatch patch = sample_surface(s, opts);
    const MinimalityReport mr = verify_minimal(patch, opts.fd_order);

    json degeneracy{{"rank", dr.rank}, {"singular_values", dr.singular_values}};
    if (dr.hyperplane) degeneracy["hyperplane"] = hyperplane_json(*dr.hyperplane);
    return {{"dimension", c.dimension()},
            {"base_point", format_complex(s.base_point)},
            {"null_residual",
             {{"max_abs_residual", nr.max_abs_residual},
              {"normalizer", nr.normalizer},
              {"relative", nr.relative()},
              {"sample_count", nr.sample_count},
              {"is_null", nr.is_null()}}},
            {"degeneracy", degeneracy},
            {"minimality",
             {{"resolution", std::to_string(patch.nu) + "x" + std::to_string(patch.nv)},
              {"order", mr.order},
              {"interior_points", mr.interior_points},
              {"conformality_defect", mr.max_conformality_defect},
              {"harmonicity_defect", mr.max_harmonicity_defect}}},
            {"wirtinger_defect", wirtinger_defect(patch, c)}};
}

SurfacePatch sample_surface(const ResolvedSurface& s, const RunOptions& opts) {
    return immerse(s.curve, opts.base_point.value_or(s.base_point), opts.res, opts.tol);
}

std::string patch_csv(const SurfacePatch& p) {
    std::ostringstream out;
    out << "j,k,u,v";
    for (std::size_t i = 0; i < p.dimension; ++i) out << ",x" << i;
    out << ",lambda\n";
    for (std::size_t j = 0; j < p.nu; ++j) {
        for (std::size_t k = 0; k < p.nv; ++k) {
            if (!p.is_valid(j, k)) continue;
            out << j << ',' << k << ',' << detail::shortest(p.u(j)) << ','
                << detail::shortest(p.v(k));
            for (double x : p.point(j, k)) out << ',' << detail::shortest(x);
            out << ',' << detail::shortest(p.conformal[p.index(j, k)]) << '\n';
        }
    }
    return out.str();
}

PlanarCurveSample slice_surface(const ResolvedSurface& s, const SliceRequest& req,
                                const RunOptions& opts) {
    const Immersion x =
        curve_immersion(s.curve, opts.base_point.value_or(s.base_point), opts.tol);
    if (req.param) return parameter_line(x, *req.param, req.value, req.npoints);
    if (!req.axis) throw Error(ErrorKind::InvalidArgument, "slice needs an axis or a parameter");
    return slice(x, *req.axis, req.value, req.npoints);
}

std::string slice_csv(const PlanarCurveSample& pc) {
    std::ostringstream out;
    out << "x,y";
    const std::size_t n = pc.ambient.empty() ? 0 : pc.ambient.front().size();
    for (std::size_t i = 0; i < n; ++i) out << ",x" << i;
    out << '\n';
    for (std::size_t r = 0; r < pc.in_plane.size(); ++r) {
        out << detail::shortest(pc.in_plane[r].x()) << ',' << detail::shortest(pc.in_plane[r].y());
        for (double x : pc.ambient[r]) out << ',' << detail::shortest(x);
        out << '\n';
    }
    return out.str();
}

json slice_and_fit(const PlanarCurveSample& pc) {
    json j{{"slice", to_json(pc)}};
    try {
        j["fit"] = to_json(fit_conic(pc));
    } catch (const Error& e) {
        j["fit_error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
    }
    return j;
}

JobSpec job_from_json(const json& j) {
    if (!j.is_object()) bad("job must be a JSON object");
    JobSpec job;
    if (!j.contains("input")) bad("job needs an \"input\"");
    if (j["input"].is_string()) {
        json in;
        try {
            in = json::parse(read_file(j["input"].get<std::string>()));
        } catch (const json::parse_error& e) {
            bad(std::string("input is not valid JSON: ") + e.what());
        }
        job.input = surface_spec_from_json(in);
    } else {
        job.input = surface_spec_from_json(j["input"]);
    }
    if (j.contains("deformations")) {
        for (const json& d : j["deformations"]) job.deformations.push_back(deformation_from_json(d));
    }
    RunOptions& o = job.options;
    if (j.contains("res")) o.res = parse_resolution(j["res"].get<std::string>());
    if (j.contains("tol")) o.tol = j["tol"].get<double>();
    if (j.contains("base_point")) o.base_point = parse_complex(j["base_point"].get<std::string>());
    if (j.contains("seed")) o.seed = j["seed"].get<std::size_t>();
    if (j.contains("fd_order")) o.fd_order = j["fd_order"].get<int>();
    if (j.contains("outputs")) {
        const json& out = j["outputs"];
        job.spec_path = optional_string(out, "spec");
        job.verify_path = optional_string(out, "verify");
        job.sample_path = optional_string(out, "sample");
        if (out.contains("mesh")) {
            const json& m = out["mesh"];
            MeshRequest req;
            const std::string fmt = m.value("format", std::string("obj"));
            if (fmt != "obj" && fmt != "ply") bad("mesh format must be obj or ply");
            req.format = fmt == "obj" ? MeshFormat::OBJ : MeshFormat::PLY;
            if (!m.contains("path")) bad("mesh output needs a path");
            req.path = m["path"].get<std::string>();
            if (m.contains("projection")) {
                const auto axes = m["projection"].get<std::vector<std::size_t>>();
                if (axes.size() != 3) bad("projection needs three axes");
                req.projection = std::array<std::size_t, 3>{axes[0], axes[1], axes[2]};
            }
            job.mesh = req;
        }
        if (out.contains("slices")) {
            for (const json& s : out["slices"]) {
                if (!s.contains("path")) bad("slice output needs a path");
                job.slices.push_back({slice_request_from_json(s), s["path"].get<std::string>()});
            }
        }
    }
    return job;
}

json run(const JobSpec& job) {
    SurfaceSpec spec = job.input;
    spec.deformations.insert(spec.deformations.end(), job.deformations.begin(),
                             job.deformations.end());
    const ResolvedSurface s = resolve(spec);
    json artifacts = json::array();
    if (job.spec_path) {
        write_file(*job.spec_path, dump(to_json(spec)));
        artifacts.push_back(*job.spec_path);
    }
    if (job.verify_path) {
        write_file(*job.verify_path, dump(verify_report(s, job.options)));
        artifacts.push_back(*job.verify_path);
    }
    if (job.sample_path || job.mesh) {
        const SurfacePatch patch = sample_surface(s, job.options);
        if (job.sample_path) {
            write_file(*job.sample_path, patch_csv(patch));
            artifacts.push_back(*job.sample_path);
        }
        if (job.mesh) {
            export_mesh(patch, job.mesh->format, job.mesh->path, job.mesh->projection);
            artifacts.push_back(job.mesh->path);
        }
    }
    for (const SliceOutput& so : job.slices) {
        write_file(so.path, dump(slice_and_fit(slice_surface(s, so.request, job.options))));
        artifacts.push_back(so.path);
    }
    return {{"dimension", s.curve.dimension()}, {"artifacts", artifacts}};
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::IOError, "cannot open '" + path + "' for writing");
    file << data;
    if (!file) throw Error(ErrorKind::IOError, "failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::IOError, "cannot open '" + path + "'");
    std::ostringstream out;
    out << file.rdbuf();
    return out.str();
}

} // namespace minsurf
