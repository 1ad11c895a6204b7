#include "dualgeo/scene.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dualgeo/error.hpp"
#include "dualgeo/numfmt.hpp"

namespace dualgeo {
namespace {

constexpr double kCanvasW = 800.0;
constexpr double kCanvasH = 600.0;
constexpr double kMargin = 20.0;

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        switch (ch) {
            case '&':
                out += "&amp;";
                break;
            case '<':
                out += "&lt;";
                break;
            case '>':
                out += "&gt;";
                break;
            case '"':
                out += "&quot;";
                break;
            case '\'':
                out += "&apos;";
                break;
            default:
                out += ch;
        }
    }
    return out;
}

struct Mapper {
    Viewport vp;
    double sx(double x) const {
        return kMargin + (x - vp.x_lo) * (kCanvasW - 2.0 * kMargin) / (vp.x_hi - vp.x_lo);
    }
    double sy(double y) const {
        return kMargin + (vp.y_hi - y) * (kCanvasH - 2.0 * kMargin) / (vp.y_hi - vp.y_lo);
    }
};

std::string class_attr(const char* kind, const std::string& style) {
    std::string out = kind;
    if (!style.empty()) {
        out += ' ';
        out += xml_escape(style);
    }
    return out;
}

void require_finite_coord(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string("scene ") + what + " must be finite");
    }
}

void validate_scene(const Scene& scene, const Viewport& vp) {
    if (scene.elements.empty()) {
        throw ValidationError("scene is empty");
    }
    if (!std::isfinite(vp.x_lo) || !std::isfinite(vp.x_hi) || !std::isfinite(vp.y_lo) ||
        !std::isfinite(vp.y_hi) || vp.x_lo >= vp.x_hi || vp.y_lo >= vp.y_hi) {
        throw ValidationError("viewport must be a finite rectangle with positive extent");
    }
    std::set<std::string> labels;
    for (const SceneElement& el : scene.elements) {
        if (!el.label.empty() && !labels.insert(el.label).second) {
            throw ValidationError("scene labels must be unique: \"" + el.label + "\"");
        }
        switch (el.kind) {
            case SceneElement::Kind::Point:
                require_finite_coord(el.point.x, "point");
                require_finite_coord(el.point.y, "point");
                break;
            case SceneElement::Kind::Line:
                require_finite_coord(el.line.m, "line");
                require_finite_coord(el.line.c, "line");
                break;
            case SceneElement::Kind::Segment:
                require_finite_coord(el.seg_a.x, "segment");
                require_finite_coord(el.seg_a.y, "segment");
                require_finite_coord(el.seg_b.x, "segment");
                require_finite_coord(el.seg_b.y, "segment");
                break;
            case SceneElement::Kind::Polygon:
                if (el.ring.size() < 3) {
                    throw ValidationError("scene polygon needs at least 3 vertices");
                }
                for (const Point2& p : el.ring) {
                    require_finite_coord(p.x, "polygon");
                    require_finite_coord(p.y, "polygon");
                }
                break;
            case SceneElement::Kind::Region:
            case SceneElement::Kind::Envelope:
                break;  // computed structures are finite by construction
        }
    }
}

void append_label(std::string& out, const Mapper& map, const SceneElement& el, double wx,
                  double wy) {
    if (el.label.empty()) {
        return;
    }
    out += "<text class=\"label\" x=\"" + format_double(map.sx(wx) + 5.0) + "\" y=\"" +
           format_double(map.sy(wy) - 5.0) + "\">" + xml_escape(el.label) + "</text>\n";
}

// Abscissae where a piecewise-linear chain bends inside [lo, hi].
void collect_breaks(const Envelope& env, double lo, double hi, std::vector<double>& xs) {
    for (const EnvelopePiece& piece : env.pieces) {
        if (piece.x_lo > lo && piece.x_lo < hi) {
            xs.push_back(piece.x_lo);
        }
    }
}

void emit_region(std::string& out, const Mapper& map, const SceneElement& el) {
    const FeasibleRegion& region = el.region;
    if (region.status == RegionStatus::Empty) {
        out += "<!-- region: empty -->\n";
        return;
    }
    const double lo = std::max(region.x_range.lo, map.vp.x_lo);
    const double hi = std::min(region.x_range.hi, map.vp.x_hi);
    if (!(lo < hi)) {
        out += "<!-- region: outside viewport -->\n";
        return;
    }
    std::vector<double> xs = {lo, hi};
    collect_breaks(region.upper_chain, lo, hi, xs);
    collect_breaks(region.lower_chain, lo, hi, xs);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    const auto floor_at = [&](double x) {
        return region.lower_chain.empty() ? map.vp.y_lo : region.lower_chain.value_at(x);
    };
    const auto ceil_at = [&](double x) {
        return region.upper_chain.empty() ? map.vp.y_hi : region.upper_chain.value_at(x);
    };

    std::string d;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d += (i == 0 ? "M" : " L");
        d += format_double(map.sx(xs[i]));
        d += ',';
        d += format_double(map.sy(floor_at(xs[i])));
    }
    for (std::size_t i = xs.size(); i-- > 0;) {
        d += " L";
        d += format_double(map.sx(xs[i]));
        d += ',';
        d += format_double(map.sy(ceil_at(xs[i])));
    }
    d += " Z";
    out += "<path class=\"" + class_attr("region", el.style) + "\" d=\"" + d + "\"/>\n";
    append_label(out, map, el, xs.front(), floor_at(xs.front()));
}

void emit_envelope(std::string& out, const Mapper& map, const SceneElement& el) {
    if (el.envelope.empty()) {
        out += "<!-- envelope: empty -->\n";
        return;
    }
    std::vector<double> xs = {map.vp.x_lo, map.vp.x_hi};
    collect_breaks(el.envelope, map.vp.x_lo, map.vp.x_hi, xs);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::string d;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        d += (i == 0 ? "M" : " L");
        d += format_double(map.sx(xs[i]));
        d += ',';
        d += format_double(map.sy(el.envelope.value_at(xs[i])));
    }
    out += "<path class=\"" + class_attr("envelope", el.style) + "\" d=\"" + d + "\"/>\n";
    append_label(out, map, el, xs.front(), el.envelope.value_at(xs.front()));
}

}  // namespace

void Scene::add_point(Point2 p, std::string label, std::string style) {
    SceneElement el;
    el.kind = SceneElement::Kind::Point;
    el.point = p;
    el.label = std::move(label);
    el.style = std::move(style);
    elements.push_back(std::move(el));
}

void Scene::add_line(Line2 l, std::string label, std::string style) {
    SceneElement el;
    el.kind = SceneElement::Kind::Line;
    el.line = l;
    el.label = std::move(label);
    el.style = std::move(style);
    elements.push_back(std::move(el));
}

void Scene::add_segment(Point2 a, Point2 b, std::string label, std::string style) {
    SceneElement el;
    el.kind = SceneElement::Kind::Segment;
    el.seg_a = a;
    el.seg_b = b;
    el.label = std::move(label);
    el.style = std::move(style);
    elements.push_back(std::move(el));
}

void Scene::add_polygon(std::vector<Point2> ring, std::string label, std::string style) {
    SceneElement el;
    el.kind = SceneElement::Kind::Polygon;
    el.ring = std::move(ring);
    el.label = std::move(label);
    el.style = std::move(style);
    elements.push_back(std::move(el));
}

void Scene::add_region(FeasibleRegion region, std::string label, std::string style) {
    SceneElement el;
    el.kind = SceneElement::Kind::Region;
    el.region = std::move(region);
    el.label = std::move(label);
    el.style = std::move(style);
    elements.push_back(std::move(el));
}

void Scene::add_envelope(Envelope envelope, std::string label, std::string style) {
    SceneElement el;
    el.kind = SceneElement::Kind::Envelope;
    el.envelope = std::move(envelope);
    el.label = std::move(label);
    el.style = std::move(style);
    elements.push_back(std::move(el));
}

std::string render_svg(const Scene& scene, const Viewport& viewport) {
    validate_scene(scene, viewport);
    const Mapper map{viewport};

    std::string out;
    out +=
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
        "height=\"600\" viewBox=\"0 0 800 600\">\n";
    out += "<style>\n";
    out += ".point { fill: #1f4e79; stroke: none; }\n";
    out += ".line, .segment, .envelope { fill: none; stroke: #1f4e79; stroke-width: 1.5; }\n";
    out += ".polygon { fill: none; stroke: #7a1f1f; stroke-width: 1.5; }\n";
    out += ".region { fill: #d8e6f2; stroke: #1f4e79; stroke-width: 1; }\n";
    out += ".label { font: 12px sans-serif; fill: #222222; }\n";
    out += "</style>\n";

    for (const SceneElement& el : scene.elements) {
        switch (el.kind) {
            case SceneElement::Kind::Point: {
                out += "<circle class=\"" + class_attr("point", el.style) + "\" cx=\"" +
                       format_double(map.sx(el.point.x)) + "\" cy=\"" +
                       format_double(map.sy(el.point.y)) + "\" r=\"3\"/>\n";
                append_label(out, map, el, el.point.x, el.point.y);
                break;
            }
            case SceneElement::Kind::Line: {
                const double ya = el.line.value_at(viewport.x_lo);
                const double yb = el.line.value_at(viewport.x_hi);
                out += "<line class=\"" + class_attr("line", el.style) + "\" x1=\"" +
                       format_double(map.sx(viewport.x_lo)) + "\" y1=\"" +
                       format_double(map.sy(ya)) + "\" x2=\"" +
                       format_double(map.sx(viewport.x_hi)) + "\" y2=\"" +
                       format_double(map.sy(yb)) + "\"/>\n";
                const double mid = (viewport.x_lo + viewport.x_hi) / 2.0;
                append_label(out, map, el, mid, el.line.value_at(mid));
                break;
            }
            case SceneElement::Kind::Segment: {
                out += "<line class=\"" + class_attr("segment", el.style) + "\" x1=\"" +
                       format_double(map.sx(el.seg_a.x)) + "\" y1=\"" +
                       format_double(map.sy(el.seg_a.y)) + "\" x2=\"" +
                       format_double(map.sx(el.seg_b.x)) + "\" y2=\"" +
                       format_double(map.sy(el.seg_b.y)) + "\"/>\n";
                append_label(out, map, el, (el.seg_a.x + el.seg_b.x) / 2.0,
                             (el.seg_a.y + el.seg_b.y) / 2.0);
                break;
            }
            case SceneElement::Kind::Polygon: {
                std::string pts;
                for (std::size_t i = 0; i < el.ring.size(); ++i) {
                    if (i != 0) {
                        pts += ' ';
                    }
                    pts += format_double(map.sx(el.ring[i].x));
                    pts += ',';
                    pts += format_double(map.sy(el.ring[i].y));
                }
                out += "<polygon class=\"" + class_attr("polygon", el.style) +
                       "\" points=\"" + pts + "\"/>\n";
                append_label(out, map, el, el.ring[0].x, el.ring[0].y);
                break;
            }
            case SceneElement::Kind::Region:
                emit_region(out, map, el);
                break;
            case SceneElement::Kind::Envelope:
                emit_envelope(out, map, el);
                break;
        }
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dualgeo
