// SPDX-License-Identifier: Apache-2.0
//
// hosq command line: mesh generation, surface integration, convergence
// studies and mesh validation. See README.md for usage examples.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hosq/expression.hpp"
#include "hosq/integrator.hpp"
#include "hosq/mesh.hpp"
#include "hosq/surfaces.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;
constexpr int kExitProjection = 4;

struct Options {
    std::string config;
    std::string surface = "sphere";
    std::string surface_expr;
    double radius = 1.0;
    double major = 2.0;
    double minor = 1.0;
    double dt_a = 0.2;
    std::string mesh_path;
    int subdiv = -1;
    int nu = 0;
    int nv = 0;
    std::string integrand = "one";
    int degree = 0;
    std::string degrees;
    std::string rule = "cc";
    std::string out;
    std::string threads;
};

struct OptionHandles {
    CLI::Option* surface = nullptr;
    CLI::Option* surface_expr = nullptr;
    CLI::Option* radius = nullptr;
    CLI::Option* major = nullptr;
    CLI::Option* minor = nullptr;
    CLI::Option* dt_a = nullptr;
    CLI::Option* mesh = nullptr;
    CLI::Option* subdiv = nullptr;
    CLI::Option* nu = nullptr;
    CLI::Option* nv = nullptr;
    CLI::Option* integrand = nullptr;
    CLI::Option* degree = nullptr;
    CLI::Option* degrees = nullptr;
    CLI::Option* rule = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* threads = nullptr;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Registers the option set shared by the subcommands.
OptionHandles add_common_options(CLI::App* cmd, Options& o, bool with_run_options) {
    OptionHandles h;
    cmd->add_option("--config", o.config, "JSON config file mirroring the flags");
    h.surface = cmd->add_option("--surface", o.surface,
                                "Surface kind: sphere|torus|dziuk|double-torus")
                    ->check(CLI::IsMember({"sphere", "torus", "dziuk", "double-torus"}));
    h.surface_expr = cmd->add_option("--surface-expr", o.surface_expr,
                                     "Implicit surface phi(x,y,z) as expression text");
    h.radius = cmd->add_option("--radius", o.radius, "Sphere radius");
    h.major = cmd->add_option("--R", o.major, "Torus major radius");
    h.minor = cmd->add_option("--r", o.minor, "Torus minor radius");
    h.dt_a = cmd->add_option("--a", o.dt_a, "Double torus parameter");
    h.subdiv = cmd->add_option("--subdiv", o.subdiv,
                               "Icosphere subdivision level (genus-0 surfaces)");
    h.nu = cmd->add_option("--nu", o.nu, "Torus grid resolution, major direction");
    h.nv = cmd->add_option("--nv", o.nv, "Torus grid resolution, minor direction");
    h.out = cmd->add_option("--out", o.out, "Output file path");
    if (with_run_options) {
        h.mesh = cmd->add_option("--mesh", o.mesh_path, "Input OFF mesh path");
        h.integrand = cmd->add_option("--integrand", o.integrand,
                                      "Integrand: one|gauss-curvature")
                          ->check(CLI::IsMember({"one", "gauss-curvature"}));
        h.degree = cmd->add_option("--degree", o.degree, "Geometry/quadrature degree");
        h.degrees = cmd->add_option("--degrees", o.degrees,
                                    "Degree range a..b[:step] (default step 2)");
        h.rule = cmd->add_option("--rule", o.rule, "Quadrature rule: cc|gl")
                     ->check(CLI::IsMember({"cc", "gl"}));
        h.threads = cmd->add_option("--threads", o.threads,
                                    "Worker threads (integer or 'auto')");
    }
    return h;
}

// Fills options that were not given on the command line from the JSON
// config. "surface" may be a flag-style string or a SurfaceSpec object.
void merge_config(Options& o, const OptionHandles& h) {
    if (o.config.empty()) return;
    std::ifstream in(o.config);
    if (!in) {
        throw hosq::IoError("cannot open config file '" + o.config + "'");
    }
    ordered_json cfg;
    try {
        in >> cfg;
    } catch (const std::exception& e) {
        throw UsageError(std::string("config parse failure: ") + e.what());
    }

    auto unset = [](CLI::Option* opt) { return opt != nullptr && opt->count() == 0; };

    if (cfg.contains("surface")) {
        const auto& s = cfg["surface"];
        if (s.is_string()) {
            if (unset(h.surface)) o.surface = s.get<std::string>();
        } else if (s.is_object()) {
            if (unset(h.surface) && s.contains("kind")) {
                o.surface = s["kind"].get<std::string>();
            }
            if (unset(h.radius) && s.contains("radius")) o.radius = s["radius"];
            if (unset(h.major) && s.contains("R")) o.major = s["R"];
            if (unset(h.minor) && s.contains("r")) o.minor = s["r"];
            if (unset(h.dt_a) && s.contains("a")) o.dt_a = s["a"];
            if (unset(h.surface_expr) && s.contains("expression")) {
                o.surface_expr = s["expression"].get<std::string>();
            }
        }
    }
    auto pull = [&cfg](CLI::Option* opt, const char* key, auto& target) {
        if (opt != nullptr && opt->count() == 0 && cfg.contains(key)) {
            target = cfg[key].template get<std::decay_t<decltype(target)>>();
        }
    };
    pull(h.surface_expr, "surface_expr", o.surface_expr);
    pull(h.surface_expr, "expression", o.surface_expr);
    pull(h.radius, "radius", o.radius);
    pull(h.major, "R", o.major);
    pull(h.minor, "r", o.minor);
    pull(h.dt_a, "a", o.dt_a);
    pull(h.mesh, "mesh", o.mesh_path);
    pull(h.subdiv, "subdiv", o.subdiv);
    pull(h.nu, "nu", o.nu);
    pull(h.nv, "nv", o.nv);
    pull(h.integrand, "integrand", o.integrand);
    pull(h.degree, "degree", o.degree);
    pull(h.degrees, "degrees", o.degrees);
    pull(h.rule, "rule", o.rule);
    pull(h.out, "out", o.out);
    pull(h.threads, "threads", o.threads);
}

hosq::SurfaceSpec make_spec(const Options& o) {
    hosq::SurfaceSpec spec;
    if (!o.surface_expr.empty()) {
        spec.kind = hosq::SurfaceSpec::Kind::Expression;
        spec.expression = o.surface_expr;
        return spec;
    }
    if (o.surface == "sphere") {
        spec.kind = hosq::SurfaceSpec::Kind::Sphere;
    } else if (o.surface == "torus") {
        spec.kind = hosq::SurfaceSpec::Kind::Torus;
    } else if (o.surface == "dziuk") {
        spec.kind = hosq::SurfaceSpec::Kind::Dziuk;
    } else if (o.surface == "double-torus" || o.surface == "double_torus") {
        spec.kind = hosq::SurfaceSpec::Kind::DoubleTorus;
    } else {
        throw UsageError("unknown surface '" + o.surface + "'");
    }
    spec.radius = o.radius;
    spec.major = o.major;
    spec.minor = o.minor;
    spec.a = o.dt_a;
    return spec;
}

int resolve_thread_count(const Options& o) {
    std::string value = o.threads;
    if (value.empty()) {
        if (const char* env = std::getenv("HOSQ_THREADS")) value = env;
    }
    if (value.empty() || value == "auto") return 0;  // hardware concurrency
    try {
        const int n = std::stoi(value);
        if (n < 1) throw UsageError("--threads must be >= 1 or 'auto'");
        return n;
    } catch (const std::invalid_argument&) {
        throw UsageError("--threads must be an integer or 'auto'");
    }
}

std::vector<int> parse_degree_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        throw UsageError("--degrees expects the form a..b[:step]");
    }
    int step = 2;
    std::string tail = text.substr(dots + 2);
    const auto colon = tail.find(':');
    if (colon != std::string::npos) {
        step = std::stoi(tail.substr(colon + 1));
        tail = tail.substr(0, colon);
    }
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(tail);
    if (step < 1 || lo < 1 || hi < lo) {
        throw UsageError("--degrees: require 1 <= a <= b and step >= 1");
    }
    std::vector<int> degrees;
    for (int d = lo; d <= hi; d += step) degrees.push_back(d);
    return degrees;
}

bool mesh_source_is_file(const Options& o) {
    const bool has_file = !o.mesh_path.empty();
    const bool has_generator = o.subdiv >= 0 || o.nu > 0 || o.nv > 0;
    if (has_file == has_generator) {
        throw UsageError(
            "exactly one mesh source: --mesh OR generator flags (--subdiv / --nu --nv)");
    }
    return has_file;
}

hosq::TriangleMesh generate_mesh(const Options& o, const hosq::SurfaceSpec& spec,
                                 const hosq::ImplicitSurface& surface) {
    if (spec.kind == hosq::SurfaceSpec::Kind::Torus) {
        if (o.nu < 3 || o.nv < 3) {
            throw UsageError("torus generator needs --nu and --nv (>= 3)");
        }
        return hosq::gen_torus_grid(o.nu, o.nv, o.major, o.minor);
    }
    if (spec.kind == hosq::SurfaceSpec::Kind::DoubleTorus) {
        throw UsageError(
            "no generator for genus-2 surfaces; supply a mesh with --mesh");
    }
    if (o.subdiv < 0) {
        throw UsageError("generator for this surface needs --subdiv");
    }
    return hosq::gen_icosphere(o.subdiv, surface);
}

hosq::TriangleMesh resolve_mesh(const Options& o, const hosq::SurfaceSpec& spec,
                                const hosq::ImplicitSurface& surface) {
    if (mesh_source_is_file(o)) {
        return hosq::load_off(o.mesh_path);
    }
    return generate_mesh(o, spec, surface);
}

std::optional<double> resolve_reference(const Options& o,
                                        const hosq::ImplicitSurface& surface) {
    if (o.integrand == "one") {
        return surface.reference_area;
    }
    if (surface.euler_characteristic) {
        return 2.0 * M_PI * *surface.euler_characteristic;
    }
    return std::nullopt;
}

hosq::Integrand resolve_integrand(const Options& o,
                                  const hosq::ImplicitSurface& surface) {
    if (o.integrand == "one") return hosq::constant_one();
    return hosq::gauss_curvature_integrand(surface);
}

int report_validation(const hosq::ValidationReport& report, std::ostream& out) {
    ordered_json j;
    j["valid"] = report.pass();
    j["vertices"] = report.vertex_count;
    j["triangles"] = report.triangle_count;
    j["edges"] = report.edge_count;
    j["euler_characteristic"] = report.euler_characteristic;
    j["boundary_edges"] = report.boundary_edges.size();
    j["nonmanifold_edges"] = report.nonmanifold_edges.size();
    j["degenerate_triangles"] = report.degenerate_triangles.size();
    j["out_of_range_triangles"] = report.out_of_range_triangles.size();
    out << j.dump(2) << '\n';
    return report.pass() ? 0 : kExitValidation;
}

int cmd_gen_mesh(const Options& o) {
    if (o.out.empty()) {
        throw UsageError("gen-mesh requires --out");
    }
    const hosq::SurfaceSpec spec = make_spec(o);
    const auto surface = hosq::make_surface(spec);
    const hosq::TriangleMesh mesh = generate_mesh(o, spec, *surface);
    const hosq::ValidationReport report = hosq::validate(mesh);
    std::cout << "triangles=" << mesh.triangle_count()
              << " vertices=" << mesh.vertex_count()
              << " valid=" << (report.pass() ? "yes" : "no") << '\n';
    if (!report.pass()) return kExitValidation;
    hosq::save_off(mesh, o.out);
    return 0;
}

hosq::IntegrateOptions run_options(const Options& o) {
    hosq::IntegrateOptions opts;
    opts.rule = o.rule == "gl" ? hosq::RuleKind::GaussLegendre
                               : hosq::RuleKind::ClenshawCurtis;
    opts.threads = resolve_thread_count(o);
    return opts;
}

int cmd_integrate(const Options& o) {
    if (o.degree < 1) {
        throw UsageError("integrate requires --degree >= 1");
    }
    const hosq::SurfaceSpec spec = make_spec(o);
    const auto surface = hosq::make_surface(spec);
    const hosq::TriangleMesh mesh = resolve_mesh(o, spec, *surface);
    const hosq::ValidationReport report = hosq::validate(mesh);
    if (!report.pass()) {
        std::cerr << "mesh failed validation\n";
        return kExitValidation;
    }

    const hosq::IntegralResult result =
        hosq::integrate(mesh, surface.get(), resolve_integrand(o, *surface),
                        o.degree, run_options(o));

    ordered_json j;
    j["value"] = result.value;
    if (const auto reference = resolve_reference(o, *surface)) {
        j["reference"] = *reference;
        if (*reference != 0.0) {
            j["rel_error"] = std::abs(result.value - *reference) / std::abs(*reference);
        }
    }
    j["degree"] = result.order;
    j["rule"] = o.rule;
    j["elements"] = mesh.triangle_count();
    j["elapsed_ms"] = result.elapsed_seconds * 1e3;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_converge(const Options& o) {
    if (o.degrees.empty()) {
        throw UsageError("converge requires --degrees a..b[:step]");
    }
    if (o.out.empty()) {
        throw UsageError("converge requires --out <csv path>");
    }
    const std::vector<int> degrees = parse_degree_range(o.degrees);
    const hosq::SurfaceSpec spec = make_spec(o);
    const auto surface = hosq::make_surface(spec);
    const hosq::TriangleMesh mesh = resolve_mesh(o, spec, *surface);
    const hosq::ValidationReport report = hosq::validate(mesh);
    if (!report.pass()) {
        std::cerr << "mesh failed validation\n";
        return kExitValidation;
    }

    const std::optional<double> reference = resolve_reference(o, *surface);
    const hosq::ConvergenceReport study = hosq::convergence_study(
        mesh, surface.get(), resolve_integrand(o, *surface), degrees,
        reference.value_or(0.0), run_options(o));

    std::ofstream csv(o.out);
    if (!csv) {
        throw hosq::IoError("cannot open '" + o.out + "' for writing");
    }
    csv << "degree,value,reference,rel_error,runtime_ms\n";
    char buf[64];
    for (const auto& e : study.entries) {
        csv << e.degree << ',';
        std::snprintf(buf, sizeof buf, "%.17g", e.value);
        csv << buf << ',';
        if (reference) {
            std::snprintf(buf, sizeof buf, "%.17g", e.reference);
            csv << buf;
        }
        csv << ',';
        if (reference) {
            std::snprintf(buf, sizeof buf, "%.17g", e.error);
            csv << buf;
        }
        csv << ',';
        std::snprintf(buf, sizeof buf, "%.3f", e.runtime_ms);
        csv << buf << '\n';
    }
    const hosq::RateFit fit = reference ? study.fit : hosq::RateFit{};
    std::snprintf(buf, sizeof buf, "# fitted: c=%.6g, b=%.6g\n", fit.c, fit.b);
    csv << buf;
    if (!csv) {
        throw hosq::IoError("write to '" + o.out + "' failed");
    }
    return 0;
}

int cmd_validate(const Options& o) {
    if (o.mesh_path.empty()) {
        throw UsageError("validate requires --mesh <off path>");
    }
    const hosq::TriangleMesh mesh = hosq::load_off(o.mesh_path);
    return report_validation(hosq::validate(mesh), std::cout);
}

int dispatch(const std::string& name, const Options& o) {
    if (name == "gen-mesh") return cmd_gen_mesh(o);
    if (name == "integrate") return cmd_integrate(o);
    if (name == "converge") return cmd_converge(o);
    return cmd_validate(o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-order surface quadrature over implicit surfaces"};
    app.require_subcommand(1);

    Options opts;
    CLI::App* gen = app.add_subcommand("gen-mesh", "Generate a flat OFF mesh");
    OptionHandles gen_h = add_common_options(gen, opts, false);

    CLI::App* run = app.add_subcommand("integrate", "Compute a surface integral");
    OptionHandles run_h = add_common_options(run, opts, true);

    CLI::App* conv = app.add_subcommand("converge", "Degree sweep to CSV");
    OptionHandles conv_h = add_common_options(conv, opts, true);

    CLI::App* val = app.add_subcommand("validate", "Validate an OFF mesh");
    OptionHandles val_h;
    val->add_option("--config", opts.config, "JSON config file");
    val_h.mesh = val->add_option("--mesh", opts.mesh_path, "Input OFF mesh path");

    CLI11_PARSE(app, argc, argv);

    const CLI::App* active = app.get_subcommands().front();
    const OptionHandles* handles = &val_h;
    if (active == gen) handles = &gen_h;
    else if (active == run) handles = &run_h;
    else if (active == conv) handles = &conv_h;

    try {
        merge_config(opts, *handles);
        return dispatch(active->get_name(), opts);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hosq::ConvergenceError& e) {
        std::cerr << "projection failure: " << e.what() << '\n';
        return kExitProjection;
    } catch (const hosq::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const hosq::FormatError& e) {
        std::cerr << "mesh format error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const hosq::ParseError& e) {
        std::cerr << "expression error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hosq::DomainError& e) {
        // Projection domain failures name the element; configuration-level
        // domain errors (bad parameters) are usage problems.
        const std::string what = e.what();
        if (what.rfind("element", 0) == 0 || what.find("closest_point") != std::string::npos) {
            std::cerr << "projection failure: " << what << '\n';
            return kExitProjection;
        }
        std::cerr << "error: " << what << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
