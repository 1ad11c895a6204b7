#pragma once

#include <string>

#include "json.hpp"

#include "dualgeo/dual.hpp"
#include "dualgeo/dual_d.hpp"
#include "dualgeo/envelope.hpp"
#include "dualgeo/geometry.hpp"
#include "dualgeo/halfplane.hpp"
#include "dualgeo/hull.hpp"
#include "dualgeo/lifting.hpp"
#include "dualgeo/scene.hpp"
#include "dualgeo/selftest.hpp"

namespace dualgeo {

// Preserves document key order so serialized objects keep the schema order
// and golden files stay stable.
using Json = nlohmann::ordered_json;

// Parses text and converts syntax failures into validation errors that
// keep the parser's line/column diagnostics.
Json parse_json_text(const std::string& text);

// Schema: points are [x, y] (or [x1..xd]); lines {"m":..,"c":..};
// hyperplanes {"m":[..],"c":..}; half-planes {"line":{..},"side":"top"};
// clamps {"kind":"lower"|"upper","a":..}; polygons [[x,y],..];
// params {"alpha":..,"mu":..} or {"preset":"berg"|"jaja"|"orourke"};
// d-dim params {"a":[..]} or {"preset":"p4"|"p13","d":n}.
// Every parser enforces the target type's invariants.
Point2 parse_point2(const Json& node);
Line2 parse_line2(const Json& node);
PointD parse_point_d(const Json& node);
HyperplaneD parse_hyperplane_d(const Json& node);
HalfPlane parse_halfplane(const Json& node);
XClamp parse_clamp(const Json& node);
Polygon parse_polygon(const Json& node);
DualParams parse_params(const Json& node);
DualParamsD parse_params_d(const Json& node);
Envelope parse_envelope(const Json& node);
FeasibleRegion parse_region(const Json& node);
KnnResult parse_knn_result(const Json& node);
LineArrangement1D parse_arrangement(const Json& node);
Viewport parse_viewport(const Json& node);
Scene parse_scene(const Json& node);  // point/line/segment/polygon elements

Json to_json(const Point2& p);
Json to_json(const Line2& l);
Json to_json(const PointD& p);
Json to_json(const HyperplaneD& h);
Json to_json(const HalfPlane& hp);
Json to_json(const XClamp& clamp);
Json to_json(const DualParams& params);
Json to_json(const DualParamsD& params);
Json to_json(const DualityClass& cls);
Json to_json(const DualityClassD& cls);
Json to_json(const Hull& hull);
Json to_json(const Envelope& env);  // infinite piece ends serialize as null
Json to_json(const FeasibleRegion& region);
Json to_json(const LPResult& result);
Json to_json(const KnnResult& result);
Json to_json(const LineArrangement1D& arr);
Json to_json(const SelftestReport& report);

// Canonical dump: two-space indent, trailing newline.
std::string dump_json(const Json& doc);

}  // namespace dualgeo
