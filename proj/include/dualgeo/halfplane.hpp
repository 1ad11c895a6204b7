#pragma once

#include <span>
#include <vector>

#include "dualgeo/envelope.hpp"
#include "dualgeo/geometry.hpp"
#include "dualgeo/tolerance.hpp"

namespace dualgeo {

// Top: y <= m*x + c (the line bounds the region from above).
// Bottom: y >= m*x + c.
enum class Side { Top, Bottom };

struct HalfPlane {
    Line2 line;
    Side side = Side::Top;
};

// Vertical boundary x >= a (LowerBound) or x <= a (UpperBound). Vertical
// lines have no slope-intercept form and live outside the dual machinery.
struct XClamp {
    enum class Kind { LowerBound, UpperBound };
    Kind kind = Kind::LowerBound;
    double a = 0.0;
};

enum class RegionStatus { Empty, Bounded, Unbounded };

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Intersection of half-planes and clamps. The ceiling (upper_chain) is the
// lower envelope of the Top lines, the floor (lower_chain) the upper
// envelope of the Bottom lines; either is empty when its family is absent.
// x_range is the set of abscissae where ceiling >= floor, intersected with
// the clamp interval; it is meaningful only when status != Empty.
struct FeasibleRegion {
    RegionStatus status = RegionStatus::Empty;
    Envelope upper_chain;
    Envelope lower_chain;
    Interval x_range{0.0, 0.0};
    std::vector<Point2> vertices; // CCW boundary corners, filled when Bounded
    int merge_iterations = 0;     // slabs visited; <= total piece count
};

// pre: at least one constraint or clamp. Empty intersections are a status,
// not an error.
FeasibleRegion intersect_halfplanes(std::span<const HalfPlane> constraints,
                                    std::span<const XClamp> clamps = {});

bool contains(const FeasibleRegion& region, const Point2& p,
              const Tolerance& tol = {});

// maximize cx*x + cy*y; (0,0) is invalid.
struct LPObjective {
    double cx = 0.0;
    double cy = 0.0;
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    Point2 vertex;      // meaningful when Optimal
    double value = 0.0; // meaningful when Optimal
};

// Optimal ties break to smaller x, then smaller y. An unbounded region with
// a bounded objective still reports Optimal at the best boundary point.
LPResult lp_maximize(const FeasibleRegion& region, const LPObjective& obj);

struct Polygon {
    std::vector<Point2> vertices; // simple; any orientation on input
};

// Kernel (locus of points seeing the whole boundary) as a half-plane
// intersection: every edge contributes the half-plane on its interior side;
// vertical edges become clamps. Empty kernel means not star-shaped.
// check_simple runs an O(n^2) self-intersection guard, skipped above 10k
// vertices.
FeasibleRegion polygon_kernel(const Polygon& poly, bool check_simple = true);

} // namespace dualgeo
