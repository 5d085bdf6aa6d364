// minsurf: command-line front end for the minimal-surface pipeline.
//
//   minsurf catalog show helicoid | minsurf deform --kind theorem51 --c 1+2i | minsurf verify
//   ... | minsurf slice --axis 3 --value 0.3 | minsurf fit
//
// Every command that consumes a surface spec reads it from stdin (or --input).
// Errors are printed as {"error":{"kind":...,"message":...}} on stdout with a
// nonzero exit status; an error object arriving on stdin is passed through.

#include <cstdio>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "minsurf/catalog.hpp"
#include "minsurf/conic.hpp"
#include "minsurf/pipeline.hpp"
#include "minsurf/surface.hpp"

using nlohmann::json;
using namespace minsurf;

namespace {

struct PassThrough {
    json error;
};

struct Globals {
    std::string tol;
    std::string res;
    std::string base_point;
    std::size_t seed = 0;
    std::string output;
    std::string input;
};

json error_json(std::string_view kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

RunOptions run_options(const Globals& g) {
    RunOptions o;
    if (!g.tol.empty()) {
        try {
            std::size_t used = 0;
            o.tol = std::stod(g.tol, &used);
            if (used != g.tol.size()) throw std::invalid_argument(g.tol);
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "--tol must be a number");
        }
    }
    if (!g.res.empty()) o.res = parse_resolution(g.res);
    if (!g.base_point.empty()) o.base_point = parse_complex(g.base_point);
    o.seed = g.seed;
    return o;
}

std::string read_input(const Globals& g) {
    if (!g.input.empty()) return read_file(g.input);
    std::string text{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    if (!std::cin.eof() && std::cin.fail()) throw Error(ErrorKind::IOError, "failed reading stdin");
    return text;
}

json read_json(const Globals& g) {
    const std::string text = read_input(g);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidSpec, std::string("input is not valid JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("error")) throw PassThrough{j};
    return j;
}

void emit(const Globals& g, const std::string& text) {
    if (!g.output.empty()) {
        write_file(g.output, text);
        return;
    }
    std::cout << text;
    std::cout.flush();
}

void emit(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

Projection parse_projection(const std::string& text) {
    if (text.empty()) return std::nullopt;
    std::array<std::size_t, 3> axes{};
    std::istringstream in(text);
    std::string part;
    std::size_t n = 0;
    while (std::getline(in, part, ',')) {
        if (n == 3) throw Error(ErrorKind::InvalidArgument, "--project needs three axes");
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(part, &used);
            if (used != part.size()) throw std::invalid_argument(part);
            axes[n++] = v;
        } catch (const std::exception&) {
            throw Error(ErrorKind::InvalidArgument, "--project expects i,j,k");
        }
    }
    if (n != 3) throw Error(ErrorKind::InvalidArgument, "--project needs three axes");
    return axes;
}

struct DeformArgs {
    std::string kind;
    std::string c;
    std::string L;
    std::string R;
    std::optional<double> theta;
    std::optional<double> lambda;
    std::optional<double> t;
    std::optional<double> alpha;
    std::optional<double> beta;
};

Deformation deformation_from_args(const DeformArgs& a) {
    json j{{"kind", a.kind}};
    if (!a.c.empty()) j["c"] = a.c;
    if (!a.L.empty()) j["L"] = a.L;
    if (!a.R.empty()) j["R"] = a.R;
    if (a.theta) j["theta"] = *a.theta;
    if (a.lambda) j["lambda"] = *a.lambda;
    if (a.t) j["t"] = *a.t;
    if (a.alpha) j["alpha"] = *a.alpha;
    if (a.beta) j["beta"] = *a.beta;
    return deformation_from_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimal surfaces from holomorphic null curves"};
    app.require_subcommand(1);

    Globals g;
    app.add_option("--tol", g.tol, "Quadrature tolerance per path segment");
    app.add_option("--res", g.res, "Grid resolution NUxNV");
    app.add_option("--base-point", g.base_point, "Base point ζ0, e.g. 1+0.5i");
    app.add_option("--seed", g.seed, "Halton offset for sampled checks");
    app.add_option("--output", g.output, "Write the result to a file instead of stdout");
    app.add_option("--input", g.input, "Read the input from a file instead of stdin");

    CLI::App* catalog = app.add_subcommand("catalog", "List or show built-in surfaces");
    catalog->require_subcommand(1)->fallthrough();
    CLI::App* catalog_list = catalog->add_subcommand("list", "Names and descriptions");
    catalog_list->fallthrough();
    CLI::App* catalog_show = catalog->add_subcommand("show", "Surface spec of an entry");
    catalog_show->fallthrough();
    std::string entry_name;
    catalog_show->add_option("name", entry_name, "Catalog entry")->required();

    CLI::App* deform = app.add_subcommand("deform", "Append a deformation to a surface spec");
    deform->fallthrough();
    DeformArgs da;
    deform->add_option("--kind", da.kind,
                       "associate|goursat|lopez-ros|lawson|parabolic|segre|theorem51|corollary53")
        ->required();
    deform->add_option("--c", da.c, "Complex parameter (parabolic, theorem51)");
    deform->add_option("--theta", da.theta, "Angle (associate, corollary53)");
    deform->add_option("--lambda", da.lambda, "Scale (lopez-ros)");
    deform->add_option("--t", da.t, "Parameter (goursat)");
    deform->add_option("--alpha", da.alpha, "Phase (lawson)");
    deform->add_option("--beta", da.beta, "Mixing angle (lawson)");
    deform->add_option("--L", da.L, "Lower factor (segre)");
    deform->add_option("--R", da.R, "Upper factor (segre)");

    CLI::App* sample = app.add_subcommand("sample", "Grid samples as CSV");
    sample->fallthrough();

    CLI::App* verify = app.add_subcommand("verify", "Nullity, degeneracy and minimality report");
    verify->fallthrough();
    int fd_order = RunOptions{}.fd_order;
    verify->add_option("--fd-order", fd_order, "Finite-difference order: 2, 4, 6 or 8");

    CLI::App* slice_cmd = app.add_subcommand("slice", "Level curve or parameter line");
    slice_cmd->fallthrough();
    std::optional<std::size_t> slice_axis;
    std::string slice_param;
    double slice_value = 0.0;
    std::size_t slice_npoints = SliceRequest{}.npoints;
    bool slice_as_csv = false;
    auto* axis_opt = slice_cmd->add_option("--axis", slice_axis, "Coordinate index, 0-based");
    auto* param_opt = slice_cmd->add_option("--param", slice_param, "Fixed parameter u or v")
                          ->check(CLI::IsMember({"u", "v"}));
    axis_opt->excludes(param_opt);
    slice_cmd->add_option("--value", slice_value, "Level value")->required();
    slice_cmd->add_option("--npoints", slice_npoints, "Points along the curve");
    slice_cmd->add_flag("--csv", slice_as_csv, "Emit CSV instead of JSON");

    CLI::App* fit = app.add_subcommand("fit", "Classify a slice by conic fitting");
    fit->fallthrough();

    CLI::App* export_cmd = app.add_subcommand("export", "Triangle mesh as OBJ or PLY");
    export_cmd->fallthrough();
    std::string mesh_format = "obj";
    std::string projection;
    export_cmd->add_option("--format", mesh_format, "obj or ply")
        ->check(CLI::IsMember({"obj", "ply"}));
    export_cmd->add_option("--project", projection, "Three coordinate indices i,j,k");

    CLI::App* run_cmd = app.add_subcommand("run", "Run a JSON job file");
    run_cmd->fallthrough();
    std::string job_path;
    run_cmd->add_option("job", job_path, "Job file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cout << error_json("InvalidArgument", e.what()).dump(2) << "\n";
        return 2;
    }

    try {
        const RunOptions opts = run_options(g);

        if (*catalog_list) {
            json list = json::array();
            for (const std::string& name : catalog_names()) {
                list.push_back({{"name", name}, {"description", catalog_entry(name).description}});
            }
            emit(g, list);
        } else if (*catalog_show) {
            SurfaceSpec spec = spec_from_catalog(catalog_entry(entry_name));
            emit(g, to_json(spec));
        } else if (*deform) {
            SurfaceSpec spec = surface_spec_from_json(read_json(g));
            spec.deformations.push_back(deformation_from_args(da));
            resolve(spec); // reject steps that do not compose
            emit(g, to_json(spec));
        } else if (*sample) {
            const ResolvedSurface s = resolve(surface_spec_from_json(read_json(g)));
            emit(g, patch_csv(sample_surface(s, opts)));
        } else if (*verify) {
            RunOptions o = opts;
            o.fd_order = fd_order;
            const ResolvedSurface s = resolve(surface_spec_from_json(read_json(g)));
            emit(g, verify_report(s, o));
        } else if (*slice_cmd) {
            SliceRequest req;
            if (slice_axis) {
                req.axis = *slice_axis;
            } else if (!slice_param.empty()) {
                req.param = slice_param == "u" ? Param::U : Param::V;
            } else {
                throw Error(ErrorKind::InvalidArgument, "slice needs --axis or --param");
            }
            req.value = slice_value;
            req.npoints = slice_npoints;
            const ResolvedSurface s = resolve(surface_spec_from_json(read_json(g)));
            const PlanarCurveSample pc = slice_surface(s, req, opts);
            if (slice_as_csv) {
                emit(g, slice_csv(pc));
            } else {
                emit(g, json{{"slice", to_json(pc)}});
            }
        } else if (*fit) {
            const PlanarCurveSample pc = planar_sample_from_json(read_json(g));
            emit(g, json{{"fit", to_json(fit_conic(pc))}});
        } else if (*export_cmd) {
            const ResolvedSurface s = resolve(surface_spec_from_json(read_json(g)));
            const MeshFormat format = mesh_format == "ply" ? MeshFormat::PLY : MeshFormat::OBJ;
            emit(g, mesh_to_string(sample_surface(s, opts), format, parse_projection(projection)));
        } else if (*run_cmd) {
            json job;
            try {
                job = json::parse(read_file(job_path));
            } catch (const json::parse_error& e) {
                throw Error(ErrorKind::InvalidSpec, std::string("job is not valid JSON: ") + e.what());
            }
            JobSpec spec = job_from_json(job);
            // command-line globals override the job file
            if (!g.tol.empty()) spec.options.tol = opts.tol;
            if (!g.res.empty()) spec.options.res = opts.res;
            if (opts.base_point) spec.options.base_point = opts.base_point;
            if (g.seed != 0) spec.options.seed = g.seed;
            emit(g, run(spec));
        }
    } catch (const PassThrough& p) {
        std::cout << p.error.dump(2) << "\n";
        return 1;
    } catch (const Error& e) {
        std::cout << error_json(to_string(e.kind()), e.what()).dump(2) << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cout << error_json("InvalidSpec", e.what()).dump(2) << "\n";
        return 1;
    }
    return 0;
}
