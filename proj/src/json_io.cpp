#include "dualgeo/json_io.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "dualgeo/error.hpp"

namespace dualgeo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Json& get_field(const Json& node, const char* key, const char* what) {
    if (!node.is_object()) {
        throw ValidationError(std::string(what) + " must be a JSON object");
    }
    const auto it = node.find(key);
    if (it == node.end()) {
        throw ValidationError(std::string(what) + " is missing \"" + key + "\"");
    }
    return *it;
}

double get_number(const Json& node, const char* what) {
    if (!node.is_number()) {
        throw ValidationError(std::string(what) + " must be a number");
    }
    const double v = node.get<double>();
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
    return v;
}

int get_int(const Json& node, const char* what) {
    if (!node.is_number_integer()) {
        throw ValidationError(std::string(what) + " must be an integer");
    }
    return node.get<int>();
}

std::string get_string(const Json& node, const char* what) {
    if (!node.is_string()) {
        throw ValidationError(std::string(what) + " must be a string");
    }
    return node.get<std::string>();
}

// Either a finite number or null standing in for the given infinity.
double get_extended(const Json& node, double infinity, const char* what) {
    if (node.is_null()) {
        return infinity;
    }
    return get_number(node, what);
}

Json extended_to_json(double v) {
    if (!std::isfinite(v)) {
        return Json(nullptr);
    }
    return Json(v);
}

}  // namespace

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // The library message carries the line/column position.
        throw ValidationError(e.what());
    }
}

Point2 parse_point2(const Json& node) {
    if (!node.is_array() || node.size() != 2) {
        throw ValidationError("point must be an array [x, y]");
    }
    return Point2{get_number(node[0], "point x"), get_number(node[1], "point y")};
}

Line2 parse_line2(const Json& node) {
    Line2 line;
    line.m = get_number(get_field(node, "m", "line"), "line m");
    line.c = get_number(get_field(node, "c", "line"), "line c");
    return line;
}

PointD parse_point_d(const Json& node) {
    if (!node.is_array() || node.empty()) {
        throw ValidationError("point must be a non-empty coordinate array");
    }
    PointD p;
    p.coords.reserve(node.size());
    for (const Json& v : node) {
        p.coords.push_back(get_number(v, "point coordinate"));
    }
    return p;
}

HyperplaneD parse_hyperplane_d(const Json& node) {
    const Json& m = get_field(node, "m", "hyperplane");
    if (!m.is_array() || m.empty()) {
        throw ValidationError("hyperplane \"m\" must be a non-empty array");
    }
    HyperplaneD h;
    h.m.reserve(m.size());
    for (const Json& v : m) {
        h.m.push_back(get_number(v, "hyperplane slope"));
    }
    h.c = get_number(get_field(node, "c", "hyperplane"), "hyperplane c");
    return h;
}

HalfPlane parse_halfplane(const Json& node) {
    HalfPlane hp;
    hp.line = parse_line2(get_field(node, "line", "half-plane"));
    const std::string side = get_string(get_field(node, "side", "half-plane"), "side");
    if (side == "top") {
        hp.side = Side::Top;
    } else if (side == "bottom") {
        hp.side = Side::Bottom;
    } else {
        throw ValidationError("side must be \"top\" or \"bottom\"");
    }
    return hp;
}

XClamp parse_clamp(const Json& node) {
    XClamp clamp;
    const std::string kind = get_string(get_field(node, "kind", "clamp"), "clamp kind");
    if (kind == "lower") {
        clamp.kind = XClamp::Kind::LowerBound;
    } else if (kind == "upper") {
        clamp.kind = XClamp::Kind::UpperBound;
    } else {
        throw ValidationError("clamp kind must be \"lower\" or \"upper\"");
    }
    clamp.a = get_number(get_field(node, "a", "clamp"), "clamp a");
    return clamp;
}

Polygon parse_polygon(const Json& node) {
    if (!node.is_array() || node.size() < 3) {
        throw ValidationError("polygon must be an array of at least 3 points");
    }
    Polygon poly;
    poly.vertices.reserve(node.size());
    for (const Json& v : node) {
        poly.vertices.push_back(parse_point2(v));
    }
    return poly;
}

DualParams parse_params(const Json& node) {
    if (!node.is_object()) {
        throw ValidationError("params must be a JSON object");
    }
    const bool has_preset = node.contains("preset");
    const bool has_values = node.contains("alpha") || node.contains("mu");
    if (has_preset && has_values) {
        throw ValidationError("params must give either a preset or alpha/mu, not both");
    }
    if (has_preset) {
        const std::string name = get_string(node["preset"], "preset");
        if (name == "berg") {
            return preset(DualPreset::BergEtAl);
        }
        if (name == "jaja") {
            return preset(DualPreset::JaJaLeeChing);
        }
        if (name == "orourke") {
            return preset(DualPreset::ORourke);
        }
        throw ValidationError("unknown preset \"" + name +
                              "\"; expected berg, jaja, or orourke");
    }
    DualParams params;
    params.alpha = get_number(get_field(node, "alpha", "params"), "alpha");
    params.mu = get_number(get_field(node, "mu", "params"), "mu");
    validate(params);
    return params;
}

DualParamsD parse_params_d(const Json& node) {
    if (!node.is_object()) {
        throw ValidationError("params must be a JSON object");
    }
    const bool has_preset = node.contains("preset");
    const bool has_values = node.contains("a");
    if (has_preset == has_values) {
        throw ValidationError("d-dimensional params must give either \"a\" or a preset");
    }
    if (has_preset) {
        const std::string name = get_string(node["preset"], "preset");
        const int d = get_int(get_field(node, "d", "params"), "dimension");
        if (name == "p4") {
            return preset_d(DPreset::EdelsbrunnerP4, d);
        }
        if (name == "p13") {
            return preset_d(DPreset::EdelsbrunnerP13, d);
        }
        throw ValidationError("unknown preset \"" + name + "\"; expected p4 or p13");
    }
    const Json& a = node["a"];
    if (!a.is_array()) {
        throw ValidationError("params \"a\" must be an array");
    }
    DualParamsD params;
    params.a.reserve(a.size());
    for (const Json& v : a) {
        params.a.push_back(get_number(v, "params coefficient"));
    }
    validate(params);
    return params;
}

Envelope parse_envelope(const Json& node) {
    const Json& pieces = get_field(node, "pieces", "envelope");
    if (!pieces.is_array()) {
        throw ValidationError("envelope \"pieces\" must be an array");
    }
    Envelope env;
    env.pieces.reserve(pieces.size());
    for (const Json& item : pieces) {
        EnvelopePiece piece;
        piece.line = parse_line2(get_field(item, "line", "envelope piece"));
        piece.x_lo = get_extended(get_field(item, "x_lo", "envelope piece"), -kInf,
                                  "envelope piece x_lo");
        piece.x_hi = get_extended(get_field(item, "x_hi", "envelope piece"), kInf,
                                  "envelope piece x_hi");
        piece.source = get_int(get_field(item, "source", "envelope piece"), "source");
        env.pieces.push_back(piece);
    }
    return env;
}

FeasibleRegion parse_region(const Json& node) {
    FeasibleRegion region;
    const std::string status = get_string(get_field(node, "status", "region"), "status");
    if (status == "empty") {
        region.status = RegionStatus::Empty;
    } else if (status == "bounded") {
        region.status = RegionStatus::Bounded;
    } else if (status == "unbounded") {
        region.status = RegionStatus::Unbounded;
    } else {
        throw ValidationError("region status must be empty, bounded, or unbounded");
    }
    const Json& range = get_field(node, "x_range", "region");
    if (!range.is_array() || range.size() != 2) {
        throw ValidationError("region x_range must be [lo, hi]");
    }
    region.x_range.lo = get_extended(range[0], -kInf, "x_range lo");
    region.x_range.hi = get_extended(range[1], kInf, "x_range hi");
    const Json& vertices = get_field(node, "vertices", "region");
    if (!vertices.is_array()) {
        throw ValidationError("region vertices must be an array");
    }
    for (const Json& v : vertices) {
        region.vertices.push_back(parse_point2(v));
    }
    region.lower_chain = parse_envelope(get_field(node, "floor", "region"));
    region.upper_chain = parse_envelope(get_field(node, "ceiling", "region"));
    region.merge_iterations =
        get_int(get_field(node, "merge_iterations", "region"), "merge_iterations");
    return region;
}

KnnResult parse_knn_result(const Json& node) {
    const Json& neighbors = get_field(node, "neighbors", "knn result");
    if (!neighbors.is_array()) {
        throw ValidationError("knn \"neighbors\" must be an array");
    }
    KnnResult result;
    result.entries.reserve(neighbors.size());
    for (const Json& item : neighbors) {
        KnnEntry entry;
        entry.site_index = get_int(get_field(item, "site_index", "neighbor"), "site_index");
        entry.distance = get_number(get_field(item, "distance", "neighbor"), "distance");
        entry.f_value = get_number(get_field(item, "f_value", "neighbor"), "f_value");
        result.entries.push_back(entry);
    }
    return result;
}

LineArrangement1D parse_arrangement(const Json& node) {
    LineArrangement1D arr;
    const Json& sites = get_field(node, "sites", "arrangement");
    if (!sites.is_array()) {
        throw ValidationError("arrangement \"sites\" must be an array");
    }
    for (const Json& v : sites) {
        PointD site;
        site.coords.push_back(get_number(v, "site"));
        arr.sites.push_back(std::move(site));
    }
    const Json& lines = get_field(node, "lines", "arrangement");
    if (!lines.is_array()) {
        throw ValidationError("arrangement \"lines\" must be an array");
    }
    for (const Json& v : lines) {
        arr.lines.push_back(parse_line2(v));
    }
    const Json& events = get_field(node, "events", "arrangement");
    if (!events.is_array()) {
        throw ValidationError("arrangement \"events\" must be an array");
    }
    for (const Json& v : events) {
        arr.events.push_back(get_number(v, "event"));
    }
    return arr;
}

Viewport parse_viewport(const Json& node) {
    if (!node.is_array() || node.size() != 4) {
        throw ValidationError("viewport must be [x_lo, x_hi, y_lo, y_hi]");
    }
    Viewport vp;
    vp.x_lo = get_number(node[0], "viewport x_lo");
    vp.x_hi = get_number(node[1], "viewport x_hi");
    vp.y_lo = get_number(node[2], "viewport y_lo");
    vp.y_hi = get_number(node[3], "viewport y_hi");
    if (vp.x_lo >= vp.x_hi || vp.y_lo >= vp.y_hi) {
        throw ValidationError("viewport must have positive extent on both axes");
    }
    return vp;
}

Scene parse_scene(const Json& node) {
    if (!node.is_array()) {
        throw ValidationError("scene must be an array of elements");
    }
    Scene scene;
    for (const Json& item : node) {
        const std::string type = get_string(get_field(item, "type", "scene element"),
                                            "scene element type");
        std::string label;
        std::string style;
        if (item.contains("label")) {
            label = get_string(item["label"], "label");
        }
        if (item.contains("class")) {
            style = get_string(item["class"], "class");
        }
        if (type == "point") {
            scene.add_point(parse_point2(get_field(item, "point", "scene point")), label,
                            style);
        } else if (type == "line") {
            scene.add_line(parse_line2(get_field(item, "line", "scene line")), label,
                           style);
        } else if (type == "segment") {
            scene.add_segment(parse_point2(get_field(item, "from", "scene segment")),
                              parse_point2(get_field(item, "to", "scene segment")), label,
                              style);
        } else if (type == "polygon") {
            scene.add_polygon(
                parse_polygon(get_field(item, "polygon", "scene polygon")).vertices, label,
                style);
        } else {
            throw ValidationError("unsupported scene element type \"" + type + "\"");
        }
    }
    return scene;
}

Json to_json(const Point2& p) { return Json::array({p.x, p.y}); }

Json to_json(const Line2& l) {
    Json node = Json::object();
    node["m"] = l.m;
    node["c"] = l.c;
    return node;
}

Json to_json(const PointD& p) {
    Json node = Json::array();
    for (double v : p.coords) {
        node.push_back(v);
    }
    return node;
}

Json to_json(const HyperplaneD& h) {
    Json node = Json::object();
    node["m"] = Json::array();
    for (double v : h.m) {
        node["m"].push_back(v);
    }
    node["c"] = h.c;
    return node;
}

Json to_json(const HalfPlane& hp) {
    Json node = Json::object();
    node["line"] = to_json(hp.line);
    node["side"] = hp.side == Side::Top ? "top" : "bottom";
    return node;
}

Json to_json(const XClamp& clamp) {
    Json node = Json::object();
    node["kind"] = clamp.kind == XClamp::Kind::LowerBound ? "lower" : "upper";
    node["a"] = clamp.a;
    return node;
}

Json to_json(const DualParams& params) {
    Json node = Json::object();
    node["alpha"] = params.alpha;
    node["mu"] = params.mu;
    return node;
}

Json to_json(const DualParamsD& params) {
    Json node = Json::object();
    node["a"] = Json::array();
    for (double v : params.a) {
        node["a"].push_back(v);
    }
    return node;
}

namespace {

Json class_to_json(bool involution, Order order, double vertical_scale) {
    Json node = Json::object();
    node["involution"] = involution;
    node["order"] = order == Order::Preserving ? "preserving" : "reversing";
    node["vertical_scale"] = vertical_scale;
    return node;
}

}  // namespace

Json to_json(const DualityClass& cls) {
    return class_to_json(cls.is_involution, cls.order, cls.vertical_scale);
}

Json to_json(const DualityClassD& cls) {
    return class_to_json(cls.is_involution, cls.order, cls.vertical_scale);
}

Json to_json(const Hull& hull) {
    Json node = Json::array();
    for (const Point2& p : hull.vertices) {
        node.push_back(to_json(p));
    }
    return node;
}

Json to_json(const Envelope& env) {
    Json node = Json::object();
    node["pieces"] = Json::array();
    for (const EnvelopePiece& piece : env.pieces) {
        Json item = Json::object();
        item["line"] = to_json(piece.line);
        item["x_lo"] = extended_to_json(piece.x_lo);
        item["x_hi"] = extended_to_json(piece.x_hi);
        item["source"] = piece.source;
        node["pieces"].push_back(std::move(item));
    }
    return node;
}

Json to_json(const FeasibleRegion& region) {
    Json node = Json::object();
    switch (region.status) {
        case RegionStatus::Empty:
            node["status"] = "empty";
            break;
        case RegionStatus::Bounded:
            node["status"] = "bounded";
            break;
        case RegionStatus::Unbounded:
            node["status"] = "unbounded";
            break;
    }
    node["x_range"] = Json::array(
        {extended_to_json(region.x_range.lo), extended_to_json(region.x_range.hi)});
    node["vertices"] = Json::array();
    for (const Point2& p : region.vertices) {
        node["vertices"].push_back(to_json(p));
    }
    node["floor"] = to_json(region.lower_chain);
    node["ceiling"] = to_json(region.upper_chain);
    node["merge_iterations"] = region.merge_iterations;
    return node;
}

Json to_json(const LPResult& result) {
    Json node = Json::object();
    switch (result.status) {
        case LPStatus::Optimal:
            node["status"] = "optimal";
            node["vertex"] = to_json(result.vertex);
            node["value"] = result.value;
            break;
        case LPStatus::Unbounded:
            node["status"] = "unbounded";
            node["vertex"] = nullptr;
            node["value"] = nullptr;
            break;
        case LPStatus::Infeasible:
            node["status"] = "infeasible";
            node["vertex"] = nullptr;
            node["value"] = nullptr;
            break;
    }
    return node;
}

Json to_json(const KnnResult& result) {
    Json node = Json::object();
    node["neighbors"] = Json::array();
    for (const KnnEntry& entry : result.entries) {
        Json item = Json::object();
        item["site_index"] = entry.site_index;
        item["distance"] = entry.distance;
        item["f_value"] = entry.f_value;
        node["neighbors"].push_back(std::move(item));
    }
    return node;
}

Json to_json(const LineArrangement1D& arr) {
    Json node = Json::object();
    node["sites"] = Json::array();
    for (const PointD& site : arr.sites) {
        node["sites"].push_back(site.coords[0]);
    }
    node["lines"] = Json::array();
    for (const Line2& line : arr.lines) {
        node["lines"].push_back(to_json(line));
    }
    node["events"] = Json::array();
    for (double e : arr.events) {
        node["events"].push_back(e);
    }
    return node;
}

Json to_json(const SelftestReport& report) {
    Json node = Json::object();
    node["seed"] = report.seed;
    node["suites"] = Json::array();
    for (const SuiteResult& suite : report.suites) {
        Json item = Json::object();
        item["name"] = suite.name;
        item["trials"] = suite.trials;
        item["failures"] = suite.failures;
        item["passed"] = suite.passed;
        node["suites"].push_back(std::move(item));
    }
    node["all_passed"] = report.all_passed;
    return node;
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace dualgeo
