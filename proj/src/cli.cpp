#include "dualgeo/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "dualgeo/dual.hpp"
#include "dualgeo/dual_d.hpp"
#include "dualgeo/envelope.hpp"
#include "dualgeo/error.hpp"
#include "dualgeo/halfplane.hpp"
#include "dualgeo/hull.hpp"
#include "dualgeo/json_io.hpp"
#include "dualgeo/lifting.hpp"
#include "dualgeo/scene.hpp"
#include "dualgeo/selftest.hpp"
#include "dualgeo/tolerance.hpp"

namespace dualgeo {
namespace {

// ---- shared option plumbing ----------------------------------------------

struct ParamFlags {
    std::string preset_name;
    double alpha = 0.0;
    double mu = 0.0;
    std::vector<double> a;
    CLI::Option* preset_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* mu_opt = nullptr;
    CLI::Option* a_opt = nullptr;

    void attach(CLI::App* cmd, bool with_ddim) {
        preset_opt = cmd->add_option(
            "--preset", preset_name,
            with_ddim ? "named transform: berg, jaja, orourke, p4, p13"
                      : "named transform: berg, jaja, orourke");
        alpha_opt = cmd->add_option("--alpha", alpha, "transform parameter alpha");
        mu_opt = cmd->add_option("--mu", mu, "transform parameter mu");
        if (with_ddim) {
            a_opt = cmd->add_option("--a", a,
                                    "comma-separated coefficients a_1,..,a_d")
                        ->delimiter(',');
        }
    }

    bool any() const {
        return preset_opt->count() > 0 || alpha_opt->count() > 0 ||
               mu_opt->count() > 0 || (a_opt != nullptr && a_opt->count() > 0);
    }
};

struct OutputFlags {
    std::string format = "json";
    std::string out_path;

    void attach(CLI::App* cmd, bool with_svg, const char* svg_help = nullptr) {
        if (with_svg) {
            cmd->add_option("--format", format,
                            svg_help != nullptr ? svg_help : "output format")
                ->check(CLI::IsMember({"json", "svg"}));
        }
        cmd->add_option("--out", out_path, "write output to FILE instead of stdout");
    }
};

// Either a 2-d transform, a d-dimensional one, or a d-dim preset whose
// dimension is still to be inferred from the input objects.
struct ResolvedParams {
    enum class Kind { None, TwoD, DDim, DDimPresetPending };
    Kind kind = Kind::None;
    DualParams p2;
    DualParamsD pd;
    DPreset dpreset = DPreset::EdelsbrunnerP4;
};

ResolvedParams resolve_flag_params(const ParamFlags& flags) {
    const bool has_preset = flags.preset_opt->count() > 0;
    const bool has_alpha = flags.alpha_opt->count() > 0;
    const bool has_mu = flags.mu_opt->count() > 0;
    const bool has_a = flags.a_opt != nullptr && flags.a_opt->count() > 0;

    if (has_preset && (has_alpha || has_mu || has_a)) {
        throw ValidationError("give either --preset or explicit parameters, not both");
    }
    if (has_alpha != has_mu) {
        throw ValidationError("--alpha and --mu must be given together");
    }
    if (has_alpha && has_a) {
        throw ValidationError("--alpha/--mu and --a are mutually exclusive");
    }

    ResolvedParams resolved;
    if (has_preset) {
        const std::string& name = flags.preset_name;
        if (name == "berg") {
            resolved.kind = ResolvedParams::Kind::TwoD;
            resolved.p2 = preset(DualPreset::BergEtAl);
        } else if (name == "jaja") {
            resolved.kind = ResolvedParams::Kind::TwoD;
            resolved.p2 = preset(DualPreset::JaJaLeeChing);
        } else if (name == "orourke") {
            resolved.kind = ResolvedParams::Kind::TwoD;
            resolved.p2 = preset(DualPreset::ORourke);
        } else if (name == "p4" || name == "p13") {
            resolved.kind = ResolvedParams::Kind::DDimPresetPending;
            resolved.dpreset =
                name == "p4" ? DPreset::EdelsbrunnerP4 : DPreset::EdelsbrunnerP13;
        } else {
            throw ValidationError("unknown preset '" + name + "'");
        }
    } else if (has_alpha) {
        resolved.kind = ResolvedParams::Kind::TwoD;
        resolved.p2 = DualParams{flags.alpha, flags.mu};
        validate(resolved.p2);
    } else if (has_a) {
        resolved.kind = ResolvedParams::Kind::DDim;
        resolved.pd = DualParamsD{flags.a};
        validate(resolved.pd);
    }
    return resolved;
}

// Params objects carry either {alpha,mu}, {a}, or a preset name; the keys
// present decide which family is meant.
bool params_node_is_ddim(const Json& node) {
    if (!node.is_object()) {
        return false;
    }
    if (node.contains("a")) {
        return true;
    }
    if (node.contains("alpha") || node.contains("mu")) {
        return false;
    }
    if (node.contains("preset") && node.at("preset").is_string()) {
        const std::string name = node.at("preset").get<std::string>();
        return name == "p4" || name == "p13";
    }
    return false;
}

ResolvedParams resolve_doc_params(const Json& node) {
    ResolvedParams resolved;
    if (params_node_is_ddim(node)) {
        resolved.kind = ResolvedParams::Kind::DDim;
        resolved.pd = parse_params_d(node);
    } else {
        resolved.kind = ResolvedParams::Kind::TwoD;
        resolved.p2 = parse_params(node);
    }
    return resolved;
}

// ---- input helpers ---------------------------------------------------------

std::string slurp(std::istream& in) {
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

Json read_document(std::istream& in) { return parse_json_text(slurp(in)); }

void require_object_keys(const Json& doc, const std::vector<std::string>& allowed,
                         const std::string& command) {
    if (!doc.is_object()) {
        throw ValidationError(command + " expects a JSON object on stdin");
    }
    for (const auto& item : doc.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
            throw ValidationError("unknown key \"" + item.key() + "\" in " + command +
                                  " input");
        }
    }
}

const Json* find_key(const Json& doc, const char* key) {
    const auto it = doc.find(key);
    return it == doc.end() ? nullptr : &*it;
}

std::vector<Json> gather(const Json& doc, const char* singular, const char* plural) {
    std::vector<Json> nodes;
    if (const Json* one = find_key(doc, singular)) {
        nodes.push_back(*one);
    }
    if (const Json* many = find_key(doc, plural)) {
        if (!many->is_array()) {
            throw ValidationError(std::string(plural) + " must be an array");
        }
        for (const Json& node : *many) {
            nodes.push_back(node);
        }
    }
    return nodes;
}

// ---- output helpers --------------------------------------------------------

void write_output(const std::string& text, const std::string& out_path,
                  std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(out_path);
    if (!file) {
        throw ValidationError("cannot open output file: " + out_path);
    }
    file << text;
    if (!file.good()) {
        throw ValidationError("failed writing output file: " + out_path);
    }
}

Viewport fit_viewport(const std::vector<Point2>& anchors) {
    if (anchors.empty()) {
        return Viewport{};
    }
    double x_lo = anchors.front().x, x_hi = anchors.front().x;
    double y_lo = anchors.front().y, y_hi = anchors.front().y;
    for (const Point2& p : anchors) {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, p.y);
        y_hi = std::max(y_hi, p.y);
    }
    const double pad_x = std::max(0.1 * (x_hi - x_lo), 1.0);
    const double pad_y = std::max(0.1 * (y_hi - y_lo), 1.0);
    return Viewport{x_lo - pad_x, x_hi + pad_x, y_lo - pad_y, y_hi + pad_y};
}

std::string indexed_label(const char* stem, std::size_t i) {
    return std::string(stem) + std::to_string(i);
}

// ---- tolerance -------------------------------------------------------------

Tolerance resolve_tolerance(const CLI::Option* eps_opt, double eps_flag) {
    double eps = 0.0;
    bool have = false;
    if (eps_opt != nullptr && eps_opt->count() > 0) {
        eps = eps_flag;
        have = true;
    } else if (const char* env = std::getenv("DUALGEO_EPS")) {
        char* end = nullptr;
        eps = std::strtod(env, &end);
        if (end == env || *end != '\0') {
            throw ValidationError("DUALGEO_EPS must be a number");
        }
        have = true;
    }
    if (!have) {
        return Tolerance{};
    }
    if (!std::isfinite(eps) || eps <= 0.0) {
        throw ValidationError("tolerance must be a positive finite number");
    }
    return Tolerance{eps, eps};
}

// ---- subcommand handlers ---------------------------------------------------

int run_dual(const ParamFlags& params_flags, const OutputFlags& output,
             std::istream& in, std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(
        doc, {"point", "points", "line", "lines", "hyperplane", "hyperplanes", "params"},
        "dual");

    ResolvedParams resolved = resolve_flag_params(params_flags);
    if (const Json* node = find_key(doc, "params")) {
        if (resolved.kind != ResolvedParams::Kind::None) {
            throw ValidationError(
                "parameters given both on the command line and in the document");
        }
        resolved = resolve_doc_params(*node);
    }
    if (resolved.kind == ResolvedParams::Kind::None) {
        throw ValidationError("dual needs transform parameters (flags or \"params\")");
    }

    const std::vector<Json> point_nodes = gather(doc, "point", "points");
    const std::vector<Json> line_nodes = gather(doc, "line", "lines");
    const std::vector<Json> plane_nodes = gather(doc, "hyperplane", "hyperplanes");
    if (point_nodes.empty() && line_nodes.empty() && plane_nodes.empty()) {
        throw ValidationError("dual input carries no points, lines, or hyperplanes");
    }

    const bool ddim = resolved.kind != ResolvedParams::Kind::TwoD;
    Json result = Json::object();
    if (!ddim) {
        if (!plane_nodes.empty()) {
            throw ValidationError("hyperplanes need d-dimensional parameters");
        }
        const DualParams params = resolved.p2;
        result["params"] = to_json(params);
        Json point_duals = Json::array();
        for (const Json& node : point_nodes) {
            point_duals.push_back(to_json(dual_point(parse_point2(node), params)));
        }
        Json line_duals = Json::array();
        for (const Json& node : line_nodes) {
            line_duals.push_back(to_json(dual_line(parse_line2(node), params)));
        }
        result["point_duals"] = std::move(point_duals);
        result["line_duals"] = std::move(line_duals);
    } else {
        if (!line_nodes.empty()) {
            throw ValidationError("lines need 2-d parameters; use hyperplanes instead");
        }
        std::vector<PointD> points;
        for (const Json& node : point_nodes) {
            points.push_back(parse_point_d(node));
        }
        std::vector<HyperplaneD> planes;
        for (const Json& node : plane_nodes) {
            planes.push_back(parse_hyperplane_d(node));
        }
        if (resolved.kind == ResolvedParams::Kind::DDimPresetPending) {
            const std::size_t d = !points.empty() ? points.front().coords.size()
                                                  : planes.front().m.size() + 1;
            resolved.pd = preset_d(resolved.dpreset, static_cast<int>(d));
        }
        const DualParamsD& params = resolved.pd;
        result["params"] = to_json(params);
        Json point_duals = Json::array();
        for (const PointD& p : points) {
            point_duals.push_back(to_json(dual_point_d(p, params)));
        }
        Json plane_duals = Json::array();
        for (const HyperplaneD& h : planes) {
            plane_duals.push_back(to_json(dual_hyperplane_d(h, params)));
        }
        result["point_duals"] = std::move(point_duals);
        result["hyperplane_duals"] = std::move(plane_duals);
    }
    write_output(dump_json(result), output.out_path, out);
    return 0;
}

int run_classify(const ParamFlags& params_flags, const OutputFlags& output,
                 const Tolerance& tol, std::istream& in, std::ostream& out) {
    ResolvedParams resolved = resolve_flag_params(params_flags);
    if (resolved.kind == ResolvedParams::Kind::None) {
        resolved = resolve_doc_params(read_document(in));
    }
    if (resolved.kind == ResolvedParams::Kind::DDimPresetPending) {
        throw ValidationError(
            "preset needs a dimension here; pass {\"preset\":..,\"d\":..} on stdin");
    }

    Json result = Json::object();
    if (resolved.kind == ResolvedParams::Kind::TwoD) {
        result["params"] = to_json(resolved.p2);
        result["classification"] = to_json(classify(resolved.p2, tol));
    } else {
        result["params"] = to_json(resolved.pd);
        result["classification"] = to_json(classify_d(resolved.pd, tol));
    }
    write_output(dump_json(result), output.out_path, out);
    return 0;
}

int run_hull(const OutputFlags& output, std::istream& in, std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"points"}, "hull");
    const Json* points_node = find_key(doc, "points");
    if (points_node == nullptr || !points_node->is_array()) {
        throw ValidationError("hull input needs a \"points\" array");
    }
    std::vector<Point2> points;
    for (const Json& node : *points_node) {
        points.push_back(parse_point2(node));
    }
    const Hull hull = convex_hull(points);

    if (output.format == "svg") {
        Scene scene;
        for (std::size_t i = 0; i < points.size(); ++i) {
            scene.add_point(points[i], indexed_label("p", i));
        }
        if (hull.vertices.size() >= 3) {
            scene.add_polygon(hull.vertices, "hull");
        } else if (hull.vertices.size() == 2) {
            scene.add_segment(hull.vertices[0], hull.vertices[1], "hull");
        }
        write_output(render_svg(scene, fit_viewport(points)), output.out_path, out);
        return 0;
    }
    Json result = Json::object();
    result["hull"] = to_json(hull);
    write_output(dump_json(result), output.out_path, out);
    return 0;
}

int run_envelope(const ParamFlags& params_flags, const OutputFlags& output,
                 std::istream& in, std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"lines", "side"}, "envelope");
    const Json* lines_node = find_key(doc, "lines");
    if (lines_node == nullptr || !lines_node->is_array()) {
        throw ValidationError("envelope input needs a \"lines\" array");
    }
    std::vector<Line2> lines;
    for (const Json& node : *lines_node) {
        lines.push_back(parse_line2(node));
    }
    std::string side = "upper";
    if (const Json* side_node = find_key(doc, "side")) {
        if (!side_node->is_string()) {
            throw ValidationError("side must be \"upper\" or \"lower\"");
        }
        side = side_node->get<std::string>();
        if (side != "upper" && side != "lower") {
            throw ValidationError("side must be \"upper\" or \"lower\"");
        }
    }

    const ResolvedParams resolved = resolve_flag_params(params_flags);
    if (resolved.kind == ResolvedParams::Kind::DDim ||
        resolved.kind == ResolvedParams::Kind::DDimPresetPending) {
        throw ValidationError("envelope works in the plane; use 2-d parameters");
    }
    const DualParams params = resolved.kind == ResolvedParams::Kind::TwoD
                                  ? resolved.p2
                                  : preset(DualPreset::BergEtAl);
    const Envelope env =
        side == "upper" ? upper_envelope(lines, params) : lower_envelope(lines, params);

    if (output.format == "svg") {
        Scene scene;
        for (std::size_t i = 0; i < lines.size(); ++i) {
            scene.add_line(lines[i], indexed_label("l", i));
        }
        scene.add_envelope(env, "envelope");
        std::vector<Point2> anchors;
        for (const EnvelopePiece& piece : env.pieces) {
            for (const double x : {piece.x_lo, piece.x_hi}) {
                if (std::isfinite(x)) {
                    anchors.push_back(Point2{x, env.value_at(x)});
                }
            }
        }
        write_output(render_svg(scene, fit_viewport(anchors)), output.out_path, out);
        return 0;
    }
    Json result = Json::object();
    result["side"] = side;
    result["pieces"] = to_json(env).at("pieces");
    write_output(dump_json(result), output.out_path, out);
    return 0;
}

struct RegionInput {
    std::vector<HalfPlane> constraints;
    std::vector<XClamp> clamps;
};

RegionInput parse_region_input(const Json& doc) {
    RegionInput input;
    const Json* hp_node = find_key(doc, "halfplanes");
    if (hp_node == nullptr || !hp_node->is_array()) {
        throw ValidationError("input needs a \"halfplanes\" array");
    }
    for (const Json& node : *hp_node) {
        input.constraints.push_back(parse_halfplane(node));
    }
    if (const Json* clamp_node = find_key(doc, "clamps")) {
        if (!clamp_node->is_array()) {
            throw ValidationError("clamps must be an array");
        }
        for (const Json& node : *clamp_node) {
            input.clamps.push_back(parse_clamp(node));
        }
    }
    return input;
}

void add_region_scene_lines(Scene& scene, const std::vector<HalfPlane>& constraints) {
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        scene.add_line(constraints[i].line, indexed_label("h", i));
    }
}

int run_halfplanes(const OutputFlags& output, bool fail_on_empty, std::istream& in,
                   std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"halfplanes", "clamps"}, "halfplanes");
    const RegionInput input = parse_region_input(doc);
    const FeasibleRegion region = intersect_halfplanes(input.constraints, input.clamps);

    if (output.format == "svg") {
        Scene scene;
        add_region_scene_lines(scene, input.constraints);
        scene.add_region(region, "region");
        write_output(render_svg(scene, fit_viewport(region.vertices)), output.out_path,
                     out);
    } else {
        write_output(dump_json(to_json(region)), output.out_path, out);
    }
    return fail_on_empty && region.status == RegionStatus::Empty ? 2 : 0;
}

int run_lp(const OutputFlags& output, bool fail_on_empty, std::istream& in,
           std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"halfplanes", "clamps", "objective"}, "lp");
    const RegionInput input = parse_region_input(doc);
    const Json* obj_node = find_key(doc, "objective");
    if (obj_node == nullptr || !obj_node->is_array() || obj_node->size() != 2 ||
        !(*obj_node)[0].is_number() || !(*obj_node)[1].is_number()) {
        throw ValidationError("lp input needs an \"objective\" array [cx, cy]");
    }
    const LPObjective objective{(*obj_node)[0].get<double>(),
                                (*obj_node)[1].get<double>()};
    const FeasibleRegion region = intersect_halfplanes(input.constraints, input.clamps);
    const LPResult result = lp_maximize(region, objective);
    write_output(dump_json(to_json(result)), output.out_path, out);
    return fail_on_empty && result.status == LPStatus::Infeasible ? 2 : 0;
}

int run_kernel(const OutputFlags& output, bool fail_on_empty, std::istream& in,
               std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"polygon", "check_simple"}, "kernel");
    const Json* poly_node = find_key(doc, "polygon");
    if (poly_node == nullptr) {
        throw ValidationError("kernel input needs a \"polygon\" array");
    }
    const Polygon polygon = parse_polygon(*poly_node);
    bool check_simple = true;
    if (const Json* check_node = find_key(doc, "check_simple")) {
        if (!check_node->is_boolean()) {
            throw ValidationError("check_simple must be a boolean");
        }
        check_simple = check_node->get<bool>();
    }
    const FeasibleRegion kernel = polygon_kernel(polygon, check_simple);

    if (output.format == "svg") {
        Scene scene;
        scene.add_polygon(polygon.vertices, "polygon");
        scene.add_region(kernel, "kernel");
        write_output(render_svg(scene, fit_viewport(polygon.vertices)), output.out_path,
                     out);
    } else {
        write_output(dump_json(to_json(kernel)), output.out_path, out);
    }
    return fail_on_empty && kernel.status == RegionStatus::Empty ? 2 : 0;
}

std::vector<PointD> parse_sites(const Json& doc) {
    const Json* sites_node = find_key(doc, "sites");
    if (sites_node == nullptr || !sites_node->is_array()) {
        throw ValidationError("input needs a \"sites\" array");
    }
    std::vector<PointD> sites;
    for (const Json& node : *sites_node) {
        if (node.is_number()) {
            // bare numbers are one-dimensional sites
            PointD p;
            p.coords.push_back(node.get<double>());
            sites.push_back(std::move(p));
        } else {
            sites.push_back(parse_point_d(node));
        }
    }
    return sites;
}

int run_knn(const OutputFlags& output, const CLI::Option* k_opt, int k_flag,
            std::istream& in, std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"sites", "query", "k"}, "knn");
    const std::vector<PointD> sites = parse_sites(doc);
    const Json* query_node = find_key(doc, "query");
    if (query_node == nullptr) {
        throw ValidationError("knn input needs a \"query\" point");
    }
    const PointD query = parse_point_d(*query_node);

    int k = 0;
    if (k_opt->count() > 0) {
        k = k_flag;
    } else if (const Json* k_node = find_key(doc, "k")) {
        if (!k_node->is_number_integer()) {
            throw ValidationError("k must be an integer");
        }
        k = k_node->get<int>();
    } else {
        throw ValidationError("knn needs k (--k flag or \"k\" field)");
    }

    const KnnResult result = knn_query(sites, query, k);
    write_output(dump_json(to_json(result)), output.out_path, out);
    return 0;
}

int run_arrangement(const OutputFlags& output, std::istream& in, std::ostream& out) {
    const Json doc = read_document(in);
    require_object_keys(doc, {"sites"}, "arrangement");
    const std::vector<PointD> sites = parse_sites(doc);
    const LineArrangement1D arr = build_arrangement_1d(sites);

    if (output.format == "svg") {
        Scene scene;
        for (std::size_t i = 0; i < arr.lines.size(); ++i) {
            scene.add_line(arr.lines[i], indexed_label("s", i));
        }
        std::vector<Point2> anchors;
        for (const PointD& site : arr.sites) {
            anchors.push_back(Point2{site.coords[0], 0.0});
        }
        for (std::size_t i = 0; i < arr.events.size(); ++i) {
            const Point2 marker{arr.events[i], 0.0};
            scene.add_point(marker, indexed_label("e", i));
            anchors.push_back(marker);
        }
        write_output(render_svg(scene, fit_viewport(anchors)), output.out_path, out);
        return 0;
    }
    write_output(dump_json(to_json(arr)), output.out_path, out);
    return 0;
}

int run_render(const OutputFlags& output, std::istream& in, std::ostream& out) {
    if (output.format == "json") {
        throw ValidationError("render emits svg only");
    }
    const Json doc = read_document(in);
    require_object_keys(doc, {"scene", "viewport"}, "render");
    const Json* scene_node = find_key(doc, "scene");
    if (scene_node == nullptr) {
        throw ValidationError("render input needs a \"scene\" object");
    }
    const Scene scene = parse_scene(*scene_node);
    Viewport viewport;
    if (const Json* vp_node = find_key(doc, "viewport")) {
        viewport = parse_viewport(*vp_node);
    }
    write_output(render_svg(scene, viewport), output.out_path, out);
    return 0;
}

int run_selftest_cmd(const OutputFlags& output, uint64_t seed, int scale,
                     std::ostream& out) {
    SelftestOptions options;
    options.seed = seed;
    options.scale = scale;
    const SelftestReport report = run_selftest(options);
    write_output(dump_json(to_json(report)), output.out_path, out);
    return report.all_passed ? 0 : 3;
}

} // namespace

int cli_main(const std::vector<std::string>& args, std::istream& in,
             std::ostream& out, std::ostream& err) {
    CLI::App app{"point/line duality toolkit"};
    app.name("dualgeo");
    app.require_subcommand(1);

    CLI::App* dual_cmd = app.add_subcommand("dual", "dualize points, lines, hyperplanes");
    ParamFlags dual_params;
    dual_params.attach(dual_cmd, true);
    OutputFlags dual_output;
    dual_output.attach(dual_cmd, false);

    CLI::App* classify_cmd =
        app.add_subcommand("classify", "involution/order/scale of a transform");
    ParamFlags classify_params;
    classify_params.attach(classify_cmd, true);
    OutputFlags classify_output;
    classify_output.attach(classify_cmd, false);
    double eps_flag = 0.0;
    CLI::Option* eps_opt = classify_cmd->add_option(
        "--eps", eps_flag, "tolerance (overrides DUALGEO_EPS, default 1e-9)");

    CLI::App* hull_cmd = app.add_subcommand("hull", "convex hull of a point set");
    OutputFlags hull_output;
    hull_output.attach(hull_cmd, true);

    CLI::App* envelope_cmd =
        app.add_subcommand("envelope", "upper or lower envelope of lines");
    ParamFlags envelope_params;
    envelope_params.attach(envelope_cmd, false);
    OutputFlags envelope_output;
    envelope_output.attach(envelope_cmd, true);

    CLI::App* halfplanes_cmd =
        app.add_subcommand("halfplanes", "intersect half-planes and clamps");
    OutputFlags halfplanes_output;
    halfplanes_output.attach(halfplanes_cmd, true);
    bool halfplanes_fail_on_empty = false;
    halfplanes_cmd->add_flag("--fail-on-empty", halfplanes_fail_on_empty,
                             "exit 2 when the intersection is empty");

    CLI::App* lp_cmd = app.add_subcommand("lp", "maximize a linear objective");
    OutputFlags lp_output;
    lp_output.attach(lp_cmd, false);
    bool lp_fail_on_empty = false;
    lp_cmd->add_flag("--fail-on-empty", lp_fail_on_empty,
                     "exit 2 when the program is infeasible");

    CLI::App* kernel_cmd = app.add_subcommand("kernel", "kernel of a simple polygon");
    OutputFlags kernel_output;
    kernel_output.attach(kernel_cmd, true);
    bool kernel_fail_on_empty = false;
    kernel_cmd->add_flag("--fail-on-empty", kernel_fail_on_empty,
                         "exit 2 when the kernel is empty");

    CLI::App* knn_cmd = app.add_subcommand("knn", "k nearest sites to a query point");
    OutputFlags knn_output;
    knn_output.attach(knn_cmd, false);
    int k_flag = 0;
    CLI::Option* k_opt =
        knn_cmd->add_option("--k", k_flag, "neighbor count (overrides \"k\" field)");

    CLI::App* arrangement_cmd =
        app.add_subcommand("arrangement", "lifted-line arrangement of 1-d sites");
    OutputFlags arrangement_output;
    arrangement_output.attach(arrangement_cmd, true);

    CLI::App* render_cmd = app.add_subcommand("render", "render a scene document");
    OutputFlags render_output;
    render_output.format = "svg";
    render_output.attach(render_cmd, true, "output format (svg)");

    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run every invariant suite");
    OutputFlags selftest_output;
    selftest_output.attach(selftest_cmd, false);
    uint64_t seed = SelftestOptions{}.seed;
    selftest_cmd->add_option("--seed", seed, "generator seed");
    int scale = 1;
    selftest_cmd->add_option("--scale", scale, "trial count multiplier");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (dual_cmd->parsed()) {
            return run_dual(dual_params, dual_output, in, out);
        }
        if (classify_cmd->parsed()) {
            return run_classify(classify_params, classify_output,
                                resolve_tolerance(eps_opt, eps_flag), in, out);
        }
        if (hull_cmd->parsed()) {
            return run_hull(hull_output, in, out);
        }
        if (envelope_cmd->parsed()) {
            return run_envelope(envelope_params, envelope_output, in, out);
        }
        if (halfplanes_cmd->parsed()) {
            return run_halfplanes(halfplanes_output, halfplanes_fail_on_empty, in, out);
        }
        if (lp_cmd->parsed()) {
            return run_lp(lp_output, lp_fail_on_empty, in, out);
        }
        if (kernel_cmd->parsed()) {
            return run_kernel(kernel_output, kernel_fail_on_empty, in, out);
        }
        if (knn_cmd->parsed()) {
            return run_knn(knn_output, k_opt, k_flag, in, out);
        }
        if (arrangement_cmd->parsed()) {
            return run_arrangement(arrangement_output, in, out);
        }
        if (render_cmd->parsed()) {
            return run_render(render_output, in, out);
        }
        if (selftest_cmd->parsed()) {
            return run_selftest_cmd(selftest_output, seed, scale, out);
        }
        throw InternalError("no subcommand dispatched");
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return 3;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace dualgeo
