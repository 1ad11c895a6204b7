#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dualgeo/error.hpp"
#include "dualgeo/halfplane.hpp"
#include "dualgeo/hull.hpp"
#include "test_util.hpp"

using namespace dualgeo;
using namespace dualgeo::testutil;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Signed violation of one constraint: <= 0 means satisfied.
double violation(const HalfPlane& hp, const Point2& p) {
    const double lv = hp.line.value_at(p.x);
    return hp.side == Side::Top ? p.y - lv : lv - p.y;
}

double violation(const XClamp& clamp, const Point2& p) {
    return clamp.kind == XClamp::Kind::LowerBound ? clamp.a - p.x : p.x - clamp.a;
}

bool strictly_in_region(const FeasibleRegion& r, const Point2& p, double margin) {
    if (r.status == RegionStatus::Empty) return false;
    if (p.x < r.x_range.lo + margin || p.x > r.x_range.hi - margin) return false;
    if (!r.upper_chain.pieces.empty() &&
        p.y > r.upper_chain.value_at(p.x) - margin) {
        return false;
    }
    if (!r.lower_chain.pieces.empty() &&
        p.y < r.lower_chain.value_at(p.x) + margin) {
        return false;
    }
    return true;
}

// Proper-crossing visibility: k sees target unless the sight segment
// crosses some polygon edge through both interiors.
bool sees(const std::vector<Point2>& poly, const Point2& k, const Point2& target) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly[i];
        const Point2& b = poly[(i + 1) % n];
        const double d1 = cross(k, target, a);
        const double d2 = cross(k, target, b);
        const double d3 = cross(a, b, k);
        const double d4 = cross(a, b, target);
        if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
            ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
            return false;
        }
    }
    return true;
}

// Crossing-number test for points off the boundary.
bool point_in_polygon(const std::vector<Point2>& poly, const Point2& p) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        const Point2& a = poly[i];
        const Point2& b = poly[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xint) in = !in;
        }
    }
    return in;
}

// Frame that keeps any instance bounded: a tent above and a vee below.
std::vector<HalfPlane> bounded_frame() {
    return {
        {Line2{-2.0, 10.0}, Side::Top},
        {Line2{2.0, 10.0}, Side::Top},
        {Line2{-1.0, -10.0}, Side::Bottom},
        {Line2{1.0, -10.0}, Side::Bottom},
    };
}

LPResult lp_bruteforce(const FeasibleRegion& region, const LPObjective& obj) {
    if (region.status == RegionStatus::Empty) return {LPStatus::Infeasible, {}, 0.0};
    REQUIRE_EQ(region.status, RegionStatus::Bounded);
    LPResult best{LPStatus::Optimal, region.vertices.front(),
                  obj.cx * region.vertices.front().x +
                      obj.cy * region.vertices.front().y};
    for (const Point2& p : region.vertices) {
        const double v = obj.cx * p.x + obj.cy * p.y;
        if (v > best.value || (v == best.value && lex_less(p, best.vertex))) {
            best.vertex = p;
            best.value = v;
        }
    }
    return best;
}

} // namespace

TEST_CASE("triangle intersection reproduces its corner set") {
    const std::vector<HalfPlane> cons{
        {Line2{1.0, 1.0}, Side::Top},
        {Line2{-1.0, 1.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    const FeasibleRegion region = intersect_halfplanes(cons);
    CHECK_EQ(region.status, RegionStatus::Bounded);
    CHECK_EQ(region.x_range.lo, -1.0);
    CHECK_EQ(region.x_range.hi, 1.0);
    REQUIRE_EQ(region.vertices.size(), 3);
    CHECK_EQ(region.vertices[0], Point2{-1.0, 0.0});
    CHECK_EQ(region.vertices[1], Point2{1.0, 0.0});
    CHECK_EQ(region.vertices[2], Point2{0.0, 1.0});

    CHECK(contains(region, Point2{0.0, 0.5}));
    CHECK(contains(region, Point2{1.0, 0.0}));
    CHECK_FALSE(contains(region, Point2{0.0, 1.1}));
    CHECK_FALSE(contains(region, Point2{1.0001, 0.0}));
}

TEST_CASE("contradictory strips are empty and missing families unbounded") {
    const std::vector<HalfPlane> strips{
        {Line2{0.0, 0.0}, Side::Top},
        {Line2{0.0, 1.0}, Side::Bottom},
    };
    CHECK_EQ(intersect_halfplanes(strips).status, RegionStatus::Empty);

    const std::vector<HalfPlane> ceiling{{Line2{0.0, 1.0}, Side::Top}};
    const FeasibleRegion region = intersect_halfplanes(ceiling);
    CHECK_EQ(region.status, RegionStatus::Unbounded);
    REQUIRE_EQ(region.upper_chain.pieces.size(), 1);
    CHECK_EQ(region.upper_chain.pieces[0].line, Line2{0.0, 1.0});
    CHECK(region.lower_chain.pieces.empty());
    CHECK_EQ(region.x_range.lo, -kInf);
    CHECK_EQ(region.x_range.hi, kInf);

    CHECK_THROWS_AS(intersect_halfplanes(std::vector<HalfPlane>{}), ValidationError);
}

TEST_CASE("clamp-only regions are vertical slabs") {
    const std::vector<XClamp> clamps{
        {XClamp::Kind::LowerBound, 0.0},
        {XClamp::Kind::UpperBound, 1.0},
    };
    const FeasibleRegion slab =
        intersect_halfplanes(std::vector<HalfPlane>{}, clamps);
    CHECK_EQ(slab.status, RegionStatus::Unbounded);
    CHECK_EQ(slab.x_range.lo, 0.0);
    CHECK_EQ(slab.x_range.hi, 1.0);
    CHECK(contains(slab, Point2{0.5, 12345.0}));
    CHECK_FALSE(contains(slab, Point2{1.5, 0.0}));

    const std::vector<XClamp> crossed{
        {XClamp::Kind::LowerBound, 1.0},
        {XClamp::Kind::UpperBound, 0.0},
    };
    CHECK_EQ(intersect_halfplanes(std::vector<HalfPlane>{}, crossed).status,
             RegionStatus::Empty);
}

TEST_CASE("grid membership agrees with direct constraint evaluation") {
    auto rng = make_rng(301);
    for (int iter = 0; iter < 120; ++iter) {
        std::vector<HalfPlane> cons;
        const int n = 1 + static_cast<int>(uniform(rng, 0.0, 12.0));
        for (int i = 0; i < n; ++i) {
            cons.push_back({Line2{uniform(rng, -3.0, 3.0), uniform(rng, -5.0, 5.0)},
                            std::bernoulli_distribution(0.5)(rng) ? Side::Top
                                                                  : Side::Bottom});
        }
        std::vector<XClamp> clamps;
        if (iter % 3 == 0) {
            clamps.push_back({XClamp::Kind::LowerBound, uniform(rng, -5.0, 0.0)});
            clamps.push_back({XClamp::Kind::UpperBound, uniform(rng, 0.0, 5.0)});
        }

        const FeasibleRegion region = intersect_halfplanes(cons, clamps);
        CHECK_LE(region.merge_iterations,
                 static_cast<int>(region.upper_chain.pieces.size() +
                                  region.lower_chain.pieces.size()));

        for (double gx = -6.0; gx <= 6.0; gx += 0.5) {
            for (double gy = -6.0; gy <= 6.0; gy += 0.5) {
                const Point2 p{gx, gy};
                bool feasible = true;
                bool near_boundary = false;
                for (const HalfPlane& hp : cons) {
                    const double v = violation(hp, p);
                    feasible = feasible && v <= 0.0;
                    near_boundary = near_boundary || std::abs(v) < 1e-6;
                }
                for (const XClamp& clamp : clamps) {
                    const double v = violation(clamp, p);
                    feasible = feasible && v <= 0.0;
                    near_boundary = near_boundary || std::abs(v) < 1e-6;
                }
                if (near_boundary) continue;
                CHECK_EQ(contains(region, p), feasible);
            }
        }
    }
}

TEST_CASE("region vertices satisfy every constraint and lie on two of them") {
    auto rng = make_rng(302);
    for (int iter = 0; iter < 80; ++iter) {
        std::vector<HalfPlane> cons = bounded_frame();
        const int extra = static_cast<int>(uniform(rng, 0.0, 8.0));
        for (int i = 0; i < extra; ++i) {
            cons.push_back({Line2{uniform(rng, -3.0, 3.0), uniform(rng, -6.0, 8.0)},
                            std::bernoulli_distribution(0.5)(rng) ? Side::Top
                                                                  : Side::Bottom});
        }
        std::vector<XClamp> clamps;
        if (iter % 2 == 0) {
            clamps.push_back({XClamp::Kind::LowerBound, uniform(rng, -4.0, -1.0)});
            clamps.push_back({XClamp::Kind::UpperBound, uniform(rng, 1.0, 4.0)});
        }
        const FeasibleRegion region = intersect_halfplanes(cons, clamps);
        if (region.status != RegionStatus::Bounded) continue;
        REQUIRE_FALSE(region.vertices.empty());

        for (const Point2& v : region.vertices) {
            int on_count = 0;
            for (const HalfPlane& hp : cons) {
                const double viol = violation(hp, v);
                CHECK_LE(viol, 1e-7 * std::max(1.0, std::abs(hp.line.value_at(v.x))));
                if (std::abs(viol) <= 1e-7 * std::max(1.0, std::abs(v.y))) ++on_count;
            }
            for (const XClamp& clamp : clamps) {
                const double viol = violation(clamp, v);
                CHECK_LE(viol, 1e-9 * std::max(1.0, std::abs(clamp.a)));
                if (std::abs(viol) <= 1e-9 * std::max(1.0, std::abs(clamp.a))) {
                    ++on_count;
                }
            }
            if (region.vertices.size() >= 2) CHECK_GE(on_count, 2);
        }

        // CCW convexity of the corner polygon.
        const std::size_t n = region.vertices.size();
        if (n >= 3) {
            for (std::size_t i = 0; i < n; ++i) {
                CHECK_GE(cross(region.vertices[i], region.vertices[(i + 1) % n],
                               region.vertices[(i + 2) % n]),
                         -1e-9);
            }
        }
    }
}

TEST_CASE("lp matches vertex enumeration on bounded instances") {
    auto rng = make_rng(303);
    for (int iter = 0; iter < 150; ++iter) {
        std::vector<HalfPlane> cons = bounded_frame();
        const int extra = static_cast<int>(uniform(rng, 0.0, 10.0));
        for (int i = 0; i < extra; ++i) {
            cons.push_back({Line2{uniform(rng, -3.0, 3.0), uniform(rng, -6.0, 8.0)},
                            std::bernoulli_distribution(0.5)(rng) ? Side::Top
                                                                  : Side::Bottom});
        }
        const FeasibleRegion region = intersect_halfplanes(cons);
        LPObjective obj{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
        if (obj.cx == 0.0 && obj.cy == 0.0) obj.cx = 1.0;

        const LPResult got = lp_maximize(region, obj);
        const LPResult want = lp_bruteforce(region, obj);
        CHECK_EQ(got.status, want.status);
        if (got.status == LPStatus::Optimal) {
            CHECK_EQ(got.vertex, want.vertex);
            CHECK_EQ(got.value, want.value);

            // No feasible sample may beat the reported optimum.
            for (int s = 0; s < 100; ++s) {
                const Point2 p{uniform(rng, -12.0, 12.0), uniform(rng, -12.0, 12.0)};
                if (!contains(region, p)) continue;
                CHECK_LE(obj.cx * p.x + obj.cy * p.y,
                         got.value + 1e-9 * std::max(1.0, std::abs(got.value)));
            }
        }
    }
}

TEST_CASE("lp frozen answers on the triangle") {
    const std::vector<HalfPlane> cons{
        {Line2{1.0, 1.0}, Side::Top},
        {Line2{-1.0, 1.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    const FeasibleRegion region = intersect_halfplanes(cons);

    const LPResult up = lp_maximize(region, LPObjective{0.0, 1.0});
    CHECK_EQ(up.status, LPStatus::Optimal);
    CHECK_EQ(up.vertex, Point2{0.0, 1.0});
    CHECK_EQ(up.value, 1.0);

    const LPResult right = lp_maximize(region, LPObjective{1.0, 0.0});
    CHECK_EQ(right.status, LPStatus::Optimal);
    CHECK_EQ(right.vertex, Point2{1.0, 0.0});
    CHECK_EQ(right.value, 1.0);
}

TEST_CASE("lp ties break lexicographically") {
    const std::vector<HalfPlane> cons{
        {Line2{0.0, 1.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    const std::vector<XClamp> clamps{
        {XClamp::Kind::LowerBound, 0.0},
        {XClamp::Kind::UpperBound, 1.0},
    };
    const FeasibleRegion square = intersect_halfplanes(cons, clamps);
    REQUIRE_EQ(square.status, RegionStatus::Bounded);
    REQUIRE_EQ(square.vertices.size(), 4);

    const LPResult up = lp_maximize(square, LPObjective{0.0, 1.0});
    CHECK_EQ(up.vertex, Point2{0.0, 1.0}); // ties with (1,1); smaller x wins
    const LPResult right = lp_maximize(square, LPObjective{1.0, 0.0});
    CHECK_EQ(right.vertex, Point2{1.0, 0.0}); // ties with (1,1); smaller y wins
}

TEST_CASE("lp detects unbounded objectives and bounded flat optima") {
    const FeasibleRegion ceiling =
        intersect_halfplanes(std::vector<HalfPlane>{{Line2{0.0, 1.0}, Side::Top}});
    CHECK_EQ(lp_maximize(ceiling, LPObjective{1.0, 0.0}).status, LPStatus::Unbounded);
    CHECK_EQ(lp_maximize(ceiling, LPObjective{0.0, -1.0}).status, LPStatus::Unbounded);
    const LPResult flat = lp_maximize(ceiling, LPObjective{0.0, 1.0});
    CHECK_EQ(flat.status, LPStatus::Optimal);
    CHECK_EQ(flat.value, 1.0);
    CHECK_EQ(flat.vertex.y, 1.0);

    // Wedge opening rightward between y=0 and y=x.
    const std::vector<HalfPlane> wedge{
        {Line2{1.0, 0.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    const FeasibleRegion w = intersect_halfplanes(wedge);
    CHECK_EQ(w.status, RegionStatus::Unbounded);
    CHECK_EQ(w.x_range.lo, 0.0);
    CHECK_EQ(lp_maximize(w, LPObjective{1.0, 0.0}).status, LPStatus::Unbounded);
    CHECK_EQ(lp_maximize(w, LPObjective{0.0, 1.0}).status, LPStatus::Unbounded);
    const LPResult apex = lp_maximize(w, LPObjective{-1.0, 0.0});
    CHECK_EQ(apex.status, LPStatus::Optimal);
    CHECK_EQ(apex.vertex, Point2{0.0, 0.0});

    // Horizontal strip: diagonal objectives escape, vertical ones do not.
    const std::vector<HalfPlane> strip{
        {Line2{0.0, 1.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    const FeasibleRegion s = intersect_halfplanes(strip);
    CHECK_EQ(lp_maximize(s, LPObjective{1.0, 1.0}).status, LPStatus::Unbounded);
    CHECK_EQ(lp_maximize(s, LPObjective{-1.0, 1.0}).status, LPStatus::Unbounded);
    const LPResult top = lp_maximize(s, LPObjective{0.0, 1.0});
    CHECK_EQ(top.status, LPStatus::Optimal);
    CHECK_EQ(top.value, 1.0);

    CHECK_EQ(lp_maximize(FeasibleRegion{}, LPObjective{1.0, 0.0}).status,
             LPStatus::Infeasible);
    CHECK_THROWS_AS(lp_maximize(s, LPObjective{0.0, 0.0}), ValidationError);
}

TEST_CASE("kernel of a convex polygon is the polygon itself") {
    const Polygon square{{{0, 0}, {1, 0}, {1, 1}, {0, 1}}};
    const FeasibleRegion kernel = polygon_kernel(square);
    REQUIRE_EQ(kernel.status, RegionStatus::Bounded);
    REQUIRE_EQ(kernel.vertices.size(), 4);
    const std::vector<Point2> want{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK_LE(std::abs(kernel.vertices[i].x - want[i].x), 1e-9);
        CHECK_LE(std::abs(kernel.vertices[i].y - want[i].y), 1e-9);
    }

    auto rng = make_rng(304);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Point2> cloud;
        for (int i = 0; i < 14; ++i) cloud.push_back(random_point(rng, 5.0));
        const std::vector<Point2> convex = convex_hull(cloud).vertices;
        if (convex.size() < 3) continue;

        const FeasibleRegion k = polygon_kernel(Polygon{convex});
        REQUIRE_EQ(k.status, RegionStatus::Bounded);
        // Both walks are CCW from the leftmost vertex, so compare in order.
        REQUIRE_EQ(k.vertices.size(), convex.size());
        for (std::size_t i = 0; i < convex.size(); ++i) {
            CHECK_LE(std::abs(k.vertices[i].x - convex[i].x),
                     1e-9 * std::max(1.0, std::abs(convex[i].x)));
            CHECK_LE(std::abs(k.vertices[i].y - convex[i].y),
                     1e-9 * std::max(1.0, std::abs(convex[i].y)));
        }
    }
}

TEST_CASE("kernel of the L-shape is the unit square") {
    const Polygon lshape{{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}};
    const FeasibleRegion kernel = polygon_kernel(lshape);
    REQUIRE_EQ(kernel.status, RegionStatus::Bounded);
    REQUIRE_EQ(kernel.vertices.size(), 4);
    const std::vector<Point2> want{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK_LE(std::abs(kernel.vertices[i].x - want[i].x), 1e-9);
        CHECK_LE(std::abs(kernel.vertices[i].y - want[i].y), 1e-9);
    }
}

TEST_CASE("kernel of the two-notch comb is empty") {
    const Polygon comb{{{0, 0}, {5, 0}, {5, 3}, {4, 3}, {4, 1}, {3, 1},
                        {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}}};
    CHECK_EQ(polygon_kernel(comb).status, RegionStatus::Empty);
}

TEST_CASE("kernel points see every vertex of star-shaped polygons") {
    auto rng = make_rng(305);
    int tested_polygons = 0;
    for (int iter = 0; iter < 120 && tested_polygons < 40; ++iter) {
        // Radial polygon around the origin: star-shaped by construction.
        // Jittered angle grid keeps every angular gap below pi, so the
        // origin is interior and belongs to the kernel.
        const int n = 6 + static_cast<int>(uniform(rng, 0.0, 8.0));
        std::vector<Point2> verts;
        for (int i = 0; i < n; ++i) {
            const double a = (6.283185307179586 / n) * (i + uniform(rng, 0.15, 0.85));
            const double r = uniform(rng, 1.0, 3.0);
            verts.push_back({r * std::cos(a), r * std::sin(a)});
        }
        bool ok = true;
        for (std::size_t i = 0; i < verts.size(); ++i) {
            const Point2& a = verts[i];
            const Point2& b = verts[(i + 1) % verts.size()];
            // Near-vertical edges make slopes blow up; skip those instances.
            if (std::abs(a.x - b.x) < 0.05 || std::hypot(a.x - b.x, a.y - b.y) < 0.05) {
                ok = false;
            }
        }
        if (!ok) continue;
        ++tested_polygons;

        const FeasibleRegion kernel = polygon_kernel(Polygon{verts});
        REQUIRE_NE(kernel.status, RegionStatus::Unbounded);
        if (kernel.status == RegionStatus::Empty) continue;
        CHECK(contains(kernel, Point2{0.0, 0.0}, Tolerance{1e-6, 1e-6}));

        int sampled = 0;
        for (int s = 0; s < 400 && sampled < 30; ++s) {
            const Point2 p{uniform(rng, kernel.x_range.lo, kernel.x_range.hi),
                           uniform(rng, -3.0, 3.0)};
            if (!strictly_in_region(kernel, p, 1e-6)) continue;
            ++sampled;
            CHECK(point_in_polygon(verts, p)); // kernel inside the polygon
            for (const Point2& v : verts) {
                CHECK(sees(verts, p, v));
            }
        }
    }
    CHECK_GE(tested_polygons, 40);
}

TEST_CASE("polygon validation rejects malformed inputs") {
    CHECK_THROWS_AS(polygon_kernel(Polygon{{{0, 0}, {1, 0}}}), ValidationError);
    CHECK_THROWS_AS(polygon_kernel(Polygon{{{0, 0}, {1, 0}, {1, 0}, {0, 1}}}),
                    ValidationError);
    CHECK_THROWS_AS(polygon_kernel(Polygon{{{0, 0}, {1, 1}, {2, 2}}}),
                    ValidationError); // zero area
    // Bowtie self-intersection (zero area trips the earlier guard).
    CHECK_THROWS_AS(polygon_kernel(Polygon{{{0, 0}, {1, 1}, {1, 0}, {0, 1}}}),
                    ValidationError);
    // Nonzero-area self-intersection caught only by the simplicity check.
    const Polygon tangled{{{0, 0}, {2, 0}, {2, 2}, {1, -1}, {0, 2}}};
    CHECK_THROWS_AS(polygon_kernel(tangled), ValidationError);
    CHECK_NOTHROW(polygon_kernel(tangled, false));
}

TEST_CASE("clockwise input polygons are normalized") {
    const Polygon cw{{{0, 0}, {0, 1}, {1, 1}, {1, 0}}};
    const FeasibleRegion kernel = polygon_kernel(cw);
    REQUIRE_EQ(kernel.status, RegionStatus::Bounded);
    CHECK_EQ(kernel.vertices.size(), 4);
    CHECK(contains(kernel, Point2{0.5, 0.5}));
}
