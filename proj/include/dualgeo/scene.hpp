#pragma once

#include <string>
#include <vector>

#include "dualgeo/envelope.hpp"
#include "dualgeo/geometry.hpp"
#include "dualgeo/halfplane.hpp"

namespace dualgeo {

// World-coordinate window that gets mapped onto the fixed SVG canvas.
struct Viewport {
    double x_lo = -10.0;
    double x_hi = 10.0;
    double y_lo = -10.0;
    double y_hi = 10.0;
};

struct SceneElement {
    enum class Kind { Point, Line, Segment, Polygon, Region, Envelope };
    Kind kind = Kind::Point;
    Point2 point;              // Kind::Point
    Line2 line;                // Kind::Line
    Point2 seg_a, seg_b;       // Kind::Segment
    std::vector<Point2> ring;  // Kind::Polygon
    FeasibleRegion region;     // Kind::Region
    Envelope envelope;         // Kind::Envelope
    std::string label;         // nonempty labels must be unique per scene
    std::string style;         // extra css class after the kind class
};

struct Scene {
    std::vector<SceneElement> elements;

    void add_point(Point2 p, std::string label = "", std::string style = "");
    void add_line(Line2 l, std::string label = "", std::string style = "");
    void add_segment(Point2 a, Point2 b, std::string label = "", std::string style = "");
    void add_polygon(std::vector<Point2> ring, std::string label = "",
                     std::string style = "");
    void add_region(FeasibleRegion region, std::string label = "", std::string style = "");
    void add_envelope(Envelope envelope, std::string label = "", std::string style = "");
};

// Renders the scene to an SVG 1.1 document on a fixed 800x600 canvas.
// Identical input produces byte-identical output: elements are emitted in
// insertion order and numbers use the shortest round-tripping decimals.
std::string render_svg(const Scene& scene, const Viewport& viewport);

}  // namespace dualgeo
