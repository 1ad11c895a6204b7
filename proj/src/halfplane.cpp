#include "dualgeo/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualgeo/error.hpp"

namespace dualgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sup over t in [tl, th] of base + coef*t; the bounds may be infinite.
double sup_linear(double base, double coef, double tl, double th) {
    if (coef > 0.0) return th == kInf ? kInf : base + coef * th;
    if (coef < 0.0) return tl == -kInf ? kInf : base + coef * tl;
    return base;
}

bool points_close(const Point2& a, const Point2& b, const Tolerance& tol) {
    return tol.close(a.x, b.x) && tol.close(a.y, b.y);
}

// CCW corner walk of a bounded region: floor left-to-right, ceiling
// right-to-left, with near-identical corners merged.
std::vector<Point2> enumerate_vertices(const FeasibleRegion& region) {
    const double lo = region.x_range.lo;
    const double hi = region.x_range.hi;
    const Tolerance tol;

    std::vector<Point2> out;
    const auto push = [&](Point2 p) {
        if (!out.empty() && points_close(out.back(), p, tol)) return;
        out.push_back(p);
    };

    push({lo, region.lower_chain.value_at(lo)});
    for (const EnvelopePiece& piece : region.lower_chain.pieces) {
        if (piece.x_hi > lo && piece.x_hi < hi) {
            push({piece.x_hi, piece.line.value_at(piece.x_hi)});
        }
    }
    push({hi, region.lower_chain.value_at(hi)});

    push({hi, region.upper_chain.value_at(hi)});
    for (auto it = region.upper_chain.pieces.rbegin();
         it != region.upper_chain.pieces.rend(); ++it) {
        if (it->x_lo > lo && it->x_lo < hi) {
            push({it->x_lo, it->line.value_at(it->x_lo)});
        }
    }
    push({lo, region.upper_chain.value_at(lo)});

    while (out.size() > 1 && points_close(out.front(), out.back(), tol)) {
        out.pop_back();
    }
    return out;
}

} // namespace

FeasibleRegion intersect_halfplanes(std::span<const HalfPlane> constraints,
                                    std::span<const XClamp> clamps) {
    if (constraints.empty() && clamps.empty()) {
        throw ValidationError(
            "half-plane intersection needs at least one constraint or clamp");
    }

    std::vector<Line2> top;
    std::vector<Line2> bottom;
    for (const HalfPlane& hp : constraints) {
        if (!is_finite(hp.line)) {
            throw ValidationError("half-plane line must be finite");
        }
        (hp.side == Side::Top ? top : bottom).push_back(hp.line);
    }

    double clamp_lo = -kInf;
    double clamp_hi = kInf;
    for (const XClamp& clamp : clamps) {
        if (!std::isfinite(clamp.a)) {
            throw ValidationError("clamp bound must be finite");
        }
        if (clamp.kind == XClamp::Kind::LowerBound) {
            clamp_lo = std::max(clamp_lo, clamp.a);
        } else {
            clamp_hi = std::min(clamp_hi, clamp.a);
        }
    }

    FeasibleRegion region;
    if (!top.empty()) region.upper_chain = lower_envelope(top);
    if (!bottom.empty()) region.lower_chain = upper_envelope(bottom);

    // A missing family imposes no constraint, so the region is a slab that
    // is unbounded vertically on at least one side.
    if (top.empty() || bottom.empty()) {
        if (clamp_lo > clamp_hi) {
            region.status = RegionStatus::Empty;
            return region;
        }
        region.x_range = {clamp_lo, clamp_hi};
        region.status = RegionStatus::Unbounded;
        return region;
    }

    // Merge sweep over the slab decomposition induced by both chains.
    // ceiling - floor is concave, so {x : ceiling >= floor} is one interval
    // and min/max accumulation recovers it exactly.
    const auto& ceil_pieces = region.upper_chain.pieces;
    const auto& floor_pieces = region.lower_chain.pieces;
    std::size_t i = 0;
    std::size_t j = 0;
    double feas_lo = kInf;
    double feas_hi = -kInf;
    while (i < ceil_pieces.size() && j < floor_pieces.size()) {
        ++region.merge_iterations;
        const EnvelopePiece& pu = ceil_pieces[i];
        const EnvelopePiece& pl = floor_pieces[j];
        const double a = std::max({pu.x_lo, pl.x_lo, clamp_lo});
        const double b = std::min({pu.x_hi, pl.x_hi, clamp_hi});
        if (a <= b) {
            const double dm = pu.line.m - pl.line.m;
            const double dc = pu.line.c - pl.line.c;
            const auto accumulate = [&](double lo, double hi) {
                if (lo <= hi) {
                    feas_lo = std::min(feas_lo, lo);
                    feas_hi = std::max(feas_hi, hi);
                }
            };
            if (dm == 0.0) {
                if (dc >= 0.0) accumulate(a, b);
            } else {
                const double root = -dc / dm;
                if (dm > 0.0) {
                    accumulate(std::max(a, root), b);
                } else {
                    accumulate(a, std::min(b, root));
                }
            }
        }
        if (pu.x_hi < pl.x_hi) {
            ++i;
        } else if (pl.x_hi < pu.x_hi) {
            ++j;
        } else {
            ++i;
            ++j;
        }
    }

    if (feas_lo > feas_hi) {
        region.status = RegionStatus::Empty;
        return region;
    }
    region.x_range = {feas_lo, feas_hi};
    if (std::isfinite(feas_lo) && std::isfinite(feas_hi)) {
        region.status = RegionStatus::Bounded;
        region.vertices = enumerate_vertices(region);
    } else {
        region.status = RegionStatus::Unbounded;
    }
    return region;
}

bool contains(const FeasibleRegion& region, const Point2& p, const Tolerance& tol) {
    if (!is_finite(p)) throw ValidationError("containment query needs a finite point");
    if (region.status == RegionStatus::Empty) return false;

    const double band_x = tol.eps_abs + tol.eps_rel * std::max(1.0, std::abs(p.x));
    if (p.x < region.x_range.lo - band_x) return false;
    if (p.x > region.x_range.hi + band_x) return false;

    if (!region.upper_chain.pieces.empty()) {
        const double u = region.upper_chain.value_at(p.x);
        const double band =
            tol.eps_abs + tol.eps_rel * std::max({1.0, std::abs(p.y), std::abs(u)});
        if (p.y - u > band) return false;
    }
    if (!region.lower_chain.pieces.empty()) {
        const double l = region.lower_chain.value_at(p.x);
        const double band =
            tol.eps_abs + tol.eps_rel * std::max({1.0, std::abs(p.y), std::abs(l)});
        if (l - p.y > band) return false;
    }
    return true;
}

LPResult lp_maximize(const FeasibleRegion& region, const LPObjective& obj) {
    if (!std::isfinite(obj.cx) || !std::isfinite(obj.cy)) {
        throw ValidationError("objective coefficients must be finite");
    }
    if (obj.cx == 0.0 && obj.cy == 0.0) {
        throw ValidationError("objective must be nonzero");
    }
    if (region.status == RegionStatus::Empty) {
        return LPResult{LPStatus::Infeasible, {}, 0.0};
    }

    const bool has_ceil = !region.upper_chain.pieces.empty();
    const bool has_floor = !region.lower_chain.pieces.empty();

    if (region.status == RegionStatus::Unbounded) {
        // Recession directions: vertical ones exist when a family is
        // missing; horizontal cones are governed by the chain end slopes.
        if (!has_ceil && obj.cy > 0.0) return LPResult{LPStatus::Unbounded, {}, 0.0};
        if (!has_floor && obj.cy < 0.0) return LPResult{LPStatus::Unbounded, {}, 0.0};
        if (region.x_range.hi == kInf) {
            const double tl = has_floor ? region.lower_chain.pieces.back().line.m : -kInf;
            const double th = has_ceil ? region.upper_chain.pieces.back().line.m : kInf;
            if (sup_linear(obj.cx, obj.cy, tl, th) > 0.0) {
                return LPResult{LPStatus::Unbounded, {}, 0.0};
            }
        }
        if (region.x_range.lo == -kInf) {
            // Directions (-1, t): t must not outrun the leftmost pieces.
            const double tl = has_floor ? -region.lower_chain.pieces.front().line.m : -kInf;
            const double th = has_ceil ? -region.upper_chain.pieces.front().line.m : kInf;
            if (sup_linear(-obj.cx, obj.cy, tl, th) > 0.0) {
                return LPResult{LPStatus::Unbounded, {}, 0.0};
            }
        }
    }

    std::vector<Point2> candidates;
    if (region.status == RegionStatus::Bounded) {
        candidates = region.vertices;
    } else {
        // Bounded objective over an unbounded region: the optimum sits at a
        // corner, or is flat along a piece; a representative interior point
        // per piece covers the flat cases.
        const auto add_chain = [&](const Envelope& env) {
            for (const EnvelopePiece& piece : env.pieces) {
                const double a = std::max(piece.x_lo, region.x_range.lo);
                const double b = std::min(piece.x_hi, region.x_range.hi);
                if (a > b) continue;
                if (std::isfinite(a)) candidates.push_back({a, piece.line.value_at(a)});
                if (std::isfinite(b)) candidates.push_back({b, piece.line.value_at(b)});
                double rep = 0.0;
                if (std::isfinite(a) && std::isfinite(b)) {
                    rep = 0.5 * (a + b);
                } else if (std::isfinite(a)) {
                    rep = a + 1.0;
                } else if (std::isfinite(b)) {
                    rep = b - 1.0;
                }
                candidates.push_back({rep, piece.line.value_at(rep)});
            }
        };
        add_chain(region.upper_chain);
        add_chain(region.lower_chain);
        if (!has_ceil && !has_floor) {
            if (std::isfinite(region.x_range.lo)) {
                candidates.push_back({region.x_range.lo, 0.0});
            }
            if (std::isfinite(region.x_range.hi)) {
                candidates.push_back({region.x_range.hi, 0.0});
            }
        }
    }
    if (candidates.empty()) {
        throw InternalError("no objective candidates for a nonempty region");
    }

    LPResult best{LPStatus::Optimal, candidates.front(),
                  obj.cx * candidates.front().x + obj.cy * candidates.front().y};
    for (const Point2& p : candidates) {
        const double v = obj.cx * p.x + obj.cy * p.y;
        if (v > best.value || (v == best.value && lex_less(p, best.vertex))) {
            best.vertex = p;
            best.value = v;
        }
    }
    return best;
}

namespace {

bool collinear_point_on(const Point2& a, const Point2& b, const Point2& c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Point2& p1, const Point2& p2, const Point2& q1,
                        const Point2& q2) {
    const double d1 = cross(q1, q2, p1);
    const double d2 = cross(q1, q2, p2);
    const double d3 = cross(p1, p2, q1);
    const double d4 = cross(p1, p2, q2);
    if (((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
        ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))) {
        return true;
    }
    if (d1 == 0.0 && collinear_point_on(q1, q2, p1)) return true;
    if (d2 == 0.0 && collinear_point_on(q1, q2, p2)) return true;
    if (d3 == 0.0 && collinear_point_on(p1, p2, q1)) return true;
    if (d4 == 0.0 && collinear_point_on(p1, p2, q2)) return true;
    return false;
}

void require_simple(const std::vector<Point2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a1 = v[i];
        const Point2& a2 = v[(i + 1) % n];
        // A spike (the next edge doubling back over this one) shares more
        // than the joint vertex with its neighbor.
        const Point2& nxt = v[(i + 2) % n];
        const double dot = (a1.x - a2.x) * (nxt.x - a2.x) +
                           (a1.y - a2.y) * (nxt.y - a2.y);
        if (cross(a2, a1, nxt) == 0.0 && dot > 0.0) {
            throw ValidationError("polygon is not simple (spike)");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if (adjacent) continue;
            if (segments_intersect(a1, a2, v[j], v[(j + 1) % n])) {
                throw ValidationError("polygon is not simple");
            }
        }
    }
}

} // namespace

FeasibleRegion polygon_kernel(const Polygon& poly, bool check_simple) {
    const std::size_t n = poly.vertices.size();
    if (n < 3) throw ValidationError("polygon needs at least 3 vertices");
    for (const Point2& p : poly.vertices) {
        if (!is_finite(p)) throw ValidationError("polygon vertices must be finite");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (poly.vertices[i] == poly.vertices[(i + 1) % n]) {
            throw ValidationError("polygon has consecutive duplicate vertices");
        }
    }

    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = poly.vertices[i];
        const Point2& b = poly.vertices[(i + 1) % n];
        area2 += a.x * b.y - b.x * a.y;
    }
    if (area2 == 0.0) throw ValidationError("polygon has zero area");

    std::vector<Point2> ccw = poly.vertices;
    if (area2 < 0.0) std::reverse(ccw.begin(), ccw.end());
    if (check_simple && n <= 10000) require_simple(ccw);

    // CCW orientation puts the interior on the left of each edge, which
    // decides the side of every constraint.
    std::vector<HalfPlane> constraints;
    std::vector<XClamp> clamps;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2& a = ccw[i];
        const Point2& b = ccw[(i + 1) % n];
        if (a.x == b.x) {
            clamps.push_back(b.y > a.y
                                 ? XClamp{XClamp::Kind::UpperBound, a.x}
                                 : XClamp{XClamp::Kind::LowerBound, a.x});
        } else {
            const double m = (b.y - a.y) / (b.x - a.x);
            const double c = a.y - m * a.x;
            constraints.push_back(
                HalfPlane{Line2{m, c}, b.x > a.x ? Side::Bottom : Side::Top});
        }
    }
    return intersect_halfplanes(constraints, clamps);
}

} // namespace dualgeo
