#pragma once

#include <cmath>
#include <compare>

#include "dualgeo/error.hpp"

namespace dualgeo {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

// Non-vertical line y = m*x + c. Vertical lines are unrepresentable by
// construction; callers that need vertical boundaries use XClamp.
struct Line2 {
    double m = 0.0;
    double c = 0.0;

    bool operator==(const Line2&) const = default;

    double value_at(double x) const { return m * x + c; }
};

// Line a*x + b*y + 1 = 0, (a,b) != (0,0). Cannot pass through the origin.
struct GeneralLine {
    double a = 0.0;
    double b = 0.0;

    bool operator==(const GeneralLine&) const = default;
};

inline bool is_finite(const Point2& p) {
    return std::isfinite(p.x) && std::isfinite(p.y);
}

inline bool is_finite(const Line2& l) {
    return std::isfinite(l.m) && std::isfinite(l.c);
}

inline bool lex_less(const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

// z-component of (a-o) x (b-o): >0 left turn, <0 right turn, 0 collinear.
inline double cross(const Point2& o, const Point2& a, const Point2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Intersection of two non-parallel lines.
inline Point2 line_intersection(const Line2& a, const Line2& b) {
    const double dm = a.m - b.m;
    if (dm == 0.0) {
        throw ValidationError("line_intersection: lines are parallel");
    }
    const double x = (b.c - a.c) / dm;
    return Point2{x, a.value_at(x)};
}

} // namespace dualgeo
