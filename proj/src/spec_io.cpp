#include <cmath>
#include <limits>

#include "minsurf/pipeline.hpp"

namespace minsurf {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) { throw Error(ErrorKind::InvalidSpec, message); }

Complex complex_from_json(const json& j, const char* what) {
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    bad(std::string(what) + " must be a complex number such as \"1+2i\"");
}

double real_from_json(const json& j, const char* what) {
    if (!j.is_number()) bad(std::string(what) + " must be a number");
    return j.get<double>();
}

Expr expr_from_json(const json& j, const char* what) {
    if (!j.is_string()) bad(std::string(what) + " must be an expression string");
    return parse_expr(j.get<std::string>());
}

json vector_json(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from_json(const json& j) {
    const auto v = j.get<std::vector<double>>();
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json real_or_inf(double x) { return std::isinf(x) ? json("inf") : json(x); }

} // namespace

std::string_view to_string(DeformationKind kind) {
    switch (kind) {
    case DeformationKind::Associate: return "associate";
    case DeformationKind::Goursat: return "goursat";
    case DeformationKind::LopezRos: return "lopez-ros";
    case DeformationKind::Lawson: return "lawson";
    case DeformationKind::Parabolic: return "parabolic";
    case DeformationKind::Segre: return "segre";
    case DeformationKind::Theorem51: return "theorem51";
    case DeformationKind::Corollary53: return "corollary53";
    }
    return "associate";
}

DeformationKind parse_deformation_kind(std::string_view text) {
    for (DeformationKind k :
         {DeformationKind::Associate, DeformationKind::Goursat, DeformationKind::LopezRos,
          DeformationKind::Lawson, DeformationKind::Parabolic, DeformationKind::Segre,
          DeformationKind::Theorem51, DeformationKind::Corollary53}) {
        if (to_string(k) == text) return k;
    }
    bad("unknown deformation kind '" + std::string(text) + "'");
}

json to_json(const Deformation& d) {
    json j{{"kind", to_string(d.kind)}};
    const DeformationParams& p = d.params;
    switch (d.kind) {
    case DeformationKind::Associate:
    case DeformationKind::Corollary53: j["theta"] = p.theta; break;
    case DeformationKind::Goursat: j["t"] = p.t; break;
    case DeformationKind::LopezRos: j["lambda"] = p.lambda; break;
    case DeformationKind::Lawson:
        j["alpha"] = p.alpha;
        j["beta"] = p.beta;
        break;
    case DeformationKind::Parabolic:
    case DeformationKind::Theorem51: j["c"] = format_complex(p.c); break;
    case DeformationKind::Segre:
        j["L"] = format_complex(p.L);
        j["R"] = format_complex(p.R);
        break;
    }
    return j;
}

Deformation deformation_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        bad("deformation needs a \"kind\"");
    }
    Deformation d;
    d.kind = parse_deformation_kind(j["kind"].get<std::string>());
    DeformationParams& p = d.params;
    auto need = [&](const char* key) -> const json& {
        if (!j.contains(key)) {
            bad(std::string(to_string(d.kind)) + " deformation needs \"" + key + "\"");
        }
        return j[key];
    };
    switch (d.kind) {
    case DeformationKind::Associate:
    case DeformationKind::Corollary53: p.theta = real_from_json(need("theta"), "theta"); break;
    case DeformationKind::Goursat: p.t = real_from_json(need("t"), "t"); break;
    case DeformationKind::LopezRos: p.lambda = real_from_json(need("lambda"), "lambda"); break;
    case DeformationKind::Lawson:
        p.alpha = real_from_json(need("alpha"), "alpha");
        p.beta = real_from_json(need("beta"), "beta");
        break;
    case DeformationKind::Parabolic:
    case DeformationKind::Theorem51: p.c = complex_from_json(need("c"), "c"); break;
    case DeformationKind::Segre:
        p.L = complex_from_json(need("L"), "L");
        p.R = complex_from_json(need("R"), "R");
        break;
    }
    return d;
}

json to_json(const DomainSpec& d) {
    json j{{"u", {d.u_min, d.u_max}}, {"v", {d.v_min, d.v_max}}};
    if (!d.punctures.empty()) {
        json ps = json::array();
        for (const Complex& p : d.punctures) ps.push_back(format_complex(p));
        j["punctures"] = ps;
    }
    if (d.cut_angle != kPrincipalCut) j["cut_angle"] = d.cut_angle;
    return j;
}

DomainSpec domain_from_json(const json& j) {
    if (!j.is_object()) bad("domain must be an object");
    DomainSpec d;
    auto interval = [&](const char* key, double& lo, double& hi) {
        if (!j.contains(key)) return;
        const json& r = j[key];
        if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number()) {
            bad(std::string("domain.") + key + " must be [min, max]");
        }
        lo = r[0].get<double>();
        hi = r[1].get<double>();
    };
    interval("u", d.u_min, d.u_max);
    interval("v", d.v_min, d.v_max);
    if (j.contains("punctures")) {
        if (!j["punctures"].is_array()) bad("domain.punctures must be an array");
        for (const json& p : j["punctures"]) d.punctures.push_back(complex_from_json(p, "puncture"));
    }
    if (j.contains("cut_angle")) d.cut_angle = real_from_json(j["cut_angle"], "cut_angle");
    try {
        d.validate();
    } catch (const Error& e) {
        bad(e.what());
    }
    return d;
}

json to_json(const SurfaceSpec& spec) {
    json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    if (spec.weierstrass) {
        j["weierstrass"] = {{"G", spec.weierstrass->first.str()},
                            {"Psi", spec.weierstrass->second.str()}};
    } else {
        json c = json::array();
        for (const Expr& e : spec.curve) c.push_back(e.str());
        j["curve"] = c;
    }
    j["domain"] = to_json(spec.domain);
    if (spec.base_point) j["base_point"] = format_complex(*spec.base_point);
    json defs = json::array();
    for (const Deformation& d : spec.deformations) defs.push_back(to_json(d));
    j["deformations"] = defs;
    return j;
}

SurfaceSpec surface_spec_from_json(const json& j) {
    if (!j.is_object()) bad("surface spec must be a JSON object");
    SurfaceSpec spec;
    if (j.contains("name")) {
        if (!j["name"].is_string()) bad("name must be a string");
        spec.name = j["name"].get<std::string>();
    }
    const bool has_w = j.contains("weierstrass");
    const bool has_c = j.contains("curve");
    if (has_w == has_c) bad("surface spec needs exactly one of \"weierstrass\" and \"curve\"");
    if (has_w) {
        const json& w = j["weierstrass"];
        if (!w.is_object() || !w.contains("G") || !w.contains("Psi")) {
            bad("weierstrass needs \"G\" and \"Psi\"");
        }
        spec.weierstrass = {expr_from_json(w["G"], "G"), expr_from_json(w["Psi"], "Psi")};
    } else {
        if (!j["curve"].is_array()) bad("curve must be an array of expressions");
        for (const json& e : j["curve"]) spec.curve.push_back(expr_from_json(e, "curve component"));
        if (spec.curve.size() < 3 || spec.curve.size() > 6) bad("curve needs 3 to 6 components");
    }
    spec.domain = j.contains("domain") ? domain_from_json(j["domain"]) : DomainSpec{};
    if (j.contains("base_point")) spec.base_point = complex_from_json(j["base_point"], "base_point");
    if (j.contains("deformations")) {
        if (!j["deformations"].is_array()) bad("deformations must be an array");
        for (const json& d : j["deformations"]) spec.deformations.push_back(deformation_from_json(d));
    }
    return spec;
}

json to_json(const PlanarCurveSample& pc) {
    json pts = json::array();
    for (const auto& p : pc.in_plane) pts.push_back({p.x(), p.y()});
    return {{"ambient", pc.ambient},
            {"parameters", pc.parameters},
            {"in_plane", pts},
            {"planarity_residual", pc.planarity_residual},
            {"plane",
             {{"point", vector_json(pc.plane.point)},
              {"e1", vector_json(pc.plane.e1)},
              {"e2", vector_json(pc.plane.e2)}}}};
}

PlanarCurveSample planar_sample_from_json(const json& j) {
    try {
        const json& s = j.contains("slice") ? j["slice"] : j;
        PlanarCurveSample pc;
        pc.ambient = s.at("ambient").get<std::vector<std::vector<double>>>();
        pc.parameters = s.value("parameters", std::vector<double>{});
        for (const json& p : s.at("in_plane")) pc.in_plane.emplace_back(p.at(0), p.at(1));
        pc.planarity_residual = s.at("planarity_residual").get<double>();
        pc.plane.point = vector_from_json(s.at("plane").at("point"));
        pc.plane.e1 = vector_from_json(s.at("plane").at("e1"));
        pc.plane.e2 = vector_from_json(s.at("plane").at("e2"));
        return pc;
    } catch (const json::exception& e) {
        bad(std::string("malformed slice: ") + e.what());
    }
}

json to_json(const ConicFit& fit) {
    json j{{"kind", to_string(fit.kind)},
           {"eccentricity", real_or_inf(fit.eccentricity)},
           {"coefficients", fit.coefficients},
           {"normalized_coefficients", fit.normalized_coefficients},
           {"fit_residual", fit.fit_residual},
           {"singular_values", fit.singular_values}};
    if (fit.center) j["center"] = {fit.center->x(), fit.center->y()};
    if (fit.semi_axes) j["semi_axes"] = {fit.semi_axes->first, fit.semi_axes->second};
    if (fit.parabola_coefficient) j["parabola_coefficient"] = *fit.parabola_coefficient;
    if (fit.canonical) {
        j["canonical"] = {{"l1", fit.canonical->l1}, {"l2", fit.canonical->l2},
                          {"f", fit.canonical->f}};
    }
    if (fit.kind == ConicKind::Hyperbola) {
        const auto [a, b] = asymptotes(fit);
        j["asymptotes"] = {{a.x(), a.y()}, {b.x(), b.y()}};
        j["asymptote_angle_cos"] = std::abs(a.dot(b));
    }
    return j;
}

} // namespace minsurf
