#include "dualgeo/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dualgeo/dual.hpp"
#include "dualgeo/dual_d.hpp"
#include "dualgeo/envelope.hpp"
#include "dualgeo/error.hpp"
#include "dualgeo/geometry.hpp"
#include "dualgeo/halfplane.hpp"
#include "dualgeo/hull.hpp"
#include "dualgeo/json_io.hpp"
#include "dualgeo/lifting.hpp"
#include "dualgeo/scene.hpp"

namespace dualgeo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Counter {
    int trials = 0;
    int failures = 0;
    void expect(bool ok) {
        ++trials;
        if (!ok) {
            ++failures;
        }
    }
};

using Rng = std::mt19937_64;

double urand(Rng& rng, double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

int irand(Rng& rng, int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return dist(rng);
}

// Magnitude in [0.1, 5] with a random sign: keeps params well conditioned
// while exercising both orientation classes.
double signed_mag(Rng& rng) {
    const double mag = urand(rng, 0.1, 5.0);
    return rng() % 2 == 0 ? mag : -mag;
}

DualParams rand_params(Rng& rng) { return DualParams{signed_mag(rng), signed_mag(rng)}; }

Point2 rand_point(Rng& rng, double extent = 20.0) {
    return Point2{urand(rng, -extent, extent), urand(rng, -extent, extent)};
}

Line2 rand_line(Rng& rng, double extent = 20.0) {
    return Line2{urand(rng, -5.0, 5.0), urand(rng, -extent, extent)};
}

bool close_rel(double a, double b, double eps, double scale = 1.0) {
    return std::abs(a - b) <= eps * std::max({1.0, scale, std::abs(a), std::abs(b)});
}

// ---- independent oracles ------------------------------------------------

std::vector<Point2> gift_wrap(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.x == b.x && a.y == b.y;
                          }),
              pts.end());
    if (pts.size() <= 2) {
        return pts;
    }
    std::vector<Point2> hull;
    Point2 cur = pts.front();  // lexicographic minimum
    for (;;) {
        hull.push_back(cur);
        Point2 next = pts[0];
        if (next.x == cur.x && next.y == cur.y) {
            next = pts[1];
        }
        for (const Point2& q : pts) {
            if (q.x == cur.x && q.y == cur.y) {
                continue;
            }
            const double turn = cross(cur, next, q);
            const double d_next = std::hypot(next.x - cur.x, next.y - cur.y);
            const double d_q = std::hypot(q.x - cur.x, q.y - cur.y);
            if (turn < 0.0 || (turn == 0.0 && d_q > d_next)) {
                next = q;
            }
        }
        if (next.x == hull.front().x && next.y == hull.front().y) {
            break;
        }
        cur = next;
        if (hull.size() > pts.size()) {
            break;  // degenerate guard; counts as a failed comparison later
        }
    }
    return hull;
}

double halfplane_violation(const HalfPlane& hp, const Point2& p) {
    const double on_line = hp.line.value_at(p.x);
    return hp.side == Side::Top ? p.y - on_line : on_line - p.y;
}

double clamp_violation(const XClamp& clamp, const Point2& p) {
    return clamp.kind == XClamp::Kind::LowerBound ? clamp.a - p.x : p.x - clamp.a;
}

bool segments_properly_cross(const Point2& a, const Point2& b, const Point2& c,
                             const Point2& d) {
    const double d1 = cross(c, d, a);
    const double d2 = cross(c, d, b);
    const double d3 = cross(a, b, c);
    const double d4 = cross(a, b, d);
    return ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) &&
           ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0));
}

bool sees_every_vertex(const std::vector<Point2>& ring, const Point2& q) {
    const std::size_t n = ring.size();
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t e = 0; e < n; ++e) {
            const Point2& a = ring[e];
            const Point2& b = ring[(e + 1) % n];
            if (segments_properly_cross(q, ring[v], a, b)) {
                return false;
            }
        }
    }
    return true;
}

// Star-shaped polygon around the origin: jittered angles keep every angular
// gap below pi, so the origin lies in the kernel. Near-vertical edges are
// rejected to keep the slope form well conditioned.
std::vector<Point2> star_polygon(Rng& rng) {
    for (;;) {
        const int n = irand(rng, 5, 14);
        std::vector<Point2> ring;
        ring.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double angle =
                (2.0 * 3.141592653589793 / n) * (static_cast<double>(i) + urand(rng, 0.15, 0.85));
            const double radius = urand(rng, 1.0, 6.0);
            ring.push_back(Point2{radius * std::cos(angle), radius * std::sin(angle)});
        }
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            const Point2& a = ring[static_cast<std::size_t>(i)];
            const Point2& b = ring[static_cast<std::size_t>((i + 1) % n)];
            if (std::abs(a.x - b.x) < 0.05) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return ring;
        }
    }
}

struct KnnInstance {
    std::vector<PointD> sites;
    PointD query;
};

PointD rand_point_d(Rng& rng, std::size_t dim, double extent) {
    PointD p;
    for (std::size_t i = 0; i < dim; ++i) {
        p.coords.push_back(urand(rng, -extent, extent));
    }
    return p;
}

double squared_dist(const PointD& a, const PointD& b) {
    double sq = 0.0;
    for (std::size_t i = 0; i < a.coords.size(); ++i) {
        const double d = a.coords[i] - b.coords[i];
        sq += d * d;
    }
    return sq;
}

// Pairwise distance gaps clear float noise so rounding cannot split the
// height order from the distance order.
KnnInstance separated_knn_instance(Rng& rng, std::size_t dim, std::size_t n) {
    for (;;) {
        KnnInstance inst;
        for (std::size_t i = 0; i < n; ++i) {
            inst.sites.push_back(rand_point_d(rng, dim, 10.0));
        }
        inst.query = rand_point_d(rng, dim, 12.0);
        std::vector<double> sq;
        for (const PointD& s : inst.sites) {
            sq.push_back(squared_dist(s, inst.query));
        }
        std::sort(sq.begin(), sq.end());
        bool ok = true;
        for (std::size_t i = 0; i + 1 < sq.size(); ++i) {
            if (sq[i + 1] - sq[i] < 1e-6) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return inst;
        }
        inst.sites.clear();
    }
}

std::vector<PointD> distinct_sites_1d(Rng& rng, std::size_t n) {
    std::vector<double> values;
    for (std::size_t i = 0; i < n; ++i) {
        values.push_back(static_cast<double>(i) + urand(rng, 0.1, 0.9));
    }
    std::shuffle(values.begin(), values.end(), rng);
    std::vector<PointD> sites;
    for (double v : values) {
        PointD p;
        p.coords.push_back(v);
        sites.push_back(std::move(p));
    }
    return sites;
}

std::vector<int> knn_indices(const KnnResult& result) {
    std::vector<int> out;
    out.reserve(result.entries.size());
    for (const KnnEntry& e : result.entries) {
        out.push_back(e.site_index);
    }
    return out;
}

std::vector<HalfPlane> bounded_frame() {
    return {
        {Line2{-2.0, 10.0}, Side::Top},
        {Line2{2.0, 10.0}, Side::Top},
        {Line2{-1.0, -10.0}, Side::Bottom},
        {Line2{1.0, -10.0}, Side::Bottom},
    };
}

// ---- suites --------------------------------------------------------------

void suite_incidence(Rng& rng, int scale, Counter& c, bool corrupt) {
    for (int i = 0; i < 2000 * scale; ++i) {
        const DualParams params = rand_params(rng);
        const Point2 p = rand_point(rng, 100.0);
        const double m = urand(rng, -5.0, 5.0);
        const Line2 line{m, p.y - m * p.x};
        Line2 dual_of_p = dual_point(p, params);
        if (corrupt) {
            dual_of_p.c += 1e-3;
        }
        const Point2 dual_of_line = dual_line(line, params);
        const double residual =
            std::abs(dual_of_p.value_at(dual_of_line.x) - dual_of_line.y);
        const double product = params.alpha * params.mu;
        c.expect(residual <= 1e-9 * (1.0 + std::abs(product)));
    }
}

void suite_involution_roundtrip(Rng& rng, int scale, Counter& c) {
    for (int i = 0; i < 1000 * scale; ++i) {
        const double alpha = signed_mag(rng);
        const DualParams params{alpha, 1.0 / alpha};
        const Point2 p = rand_point(rng, 50.0);
        const Point2 dd = dual_line(dual_point(p, params), params);
        c.expect(close_rel(dd.x, p.x, 1e-12) && close_rel(dd.y, p.y, 1e-12));
    }
}

void suite_non_involution_witness(Rng& rng, int scale, Counter& c) {
    for (int i = 0; i < 500 * scale; ++i) {
        DualParams params = rand_params(rng);
        while (std::abs(params.alpha * params.mu - 1.0) < 0.1) {
            params = rand_params(rng);
        }
        const Point2 witness{1.0, 0.0};
        const Point2 dd = dual_line(dual_point(witness, params), params);
        const double moved = std::hypot(dd.x - witness.x, dd.y - witness.y);
        c.expect(moved >= 0.01);
    }
}

void suite_order_flip(Rng& rng, int scale, Counter& c) {
    int done = 0;
    while (done < 2000 * scale) {
        const DualParams params = rand_params(rng);
        const Point2 p = rand_point(rng);
        const Line2 line = rand_line(rng);
        const double residual = p.y - line.value_at(p.x);
        if (std::abs(residual) <= 1e-6 * std::max(1.0, std::abs(p.y))) {
            continue;
        }
        const RelPos primal = relative_position(p, line);
        const RelPos dual =
            relative_position(dual_line(line, params), dual_point(p, params));
        const bool flips = params.alpha * params.mu < 0.0;
        c.expect(dual == (flips ? (primal == RelPos::Above ? RelPos::Below : RelPos::Above)
                                : primal));
        ++done;
    }
}

void suite_classification_grid(Rng&, int scale, Counter& c) {
    const int g = 40 * scale;
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            const double alpha = -5.0 + 10.0 * i / (g - 1);
            const double mu = -5.0 + 10.0 * j / (g - 1);
            if (std::abs(alpha) < 0.05 || std::abs(mu) < 0.05) {
                continue;
            }
            const DualityClass cls = classify(DualParams{alpha, mu});
            const bool exclusive = !(cls.is_involution && cls.order == Order::Preserving);
            const bool scale_ok =
                close_rel(cls.vertical_scale, std::abs(alpha * mu), 1e-12);
            c.expect(exclusive && scale_ok);
        }
    }
}

void suite_vertical_scale_2d(Rng& rng, int scale, Counter& c) {
    for (int i = 0; i < 2000 * scale; ++i) {
        const DualParams params = rand_params(rng);
        const Point2 p = rand_point(rng);
        const Line2 line = rand_line(rng);
        const double primal = vertical_distance(p, line);
        const double dual =
            vertical_distance(dual_line(line, params), dual_point(p, params));
        const double expected = std::abs(params.alpha * params.mu) * primal;
        c.expect(std::abs(dual - expected) <= 1e-9 * std::max(1.0, expected));
    }
}

void suite_vertical_scale_ddim(Rng& rng, int scale, Counter& c) {
    for (int i = 0; i < 1200 * scale; ++i) {
        const int d = irand(rng, 2, 6);
        DualParamsD params;
        for (int j = 0; j < d; ++j) {
            params.a.push_back(signed_mag(rng));
        }
        const PointD p = rand_point_d(rng, static_cast<std::size_t>(d), 10.0);
        HyperplaneD h;
        for (int j = 0; j + 1 < d; ++j) {
            h.m.push_back(urand(rng, -3.0, 3.0));
        }
        h.c = urand(rng, -10.0, 10.0);
        const double primal = vertical_distance_d(p, h);
        const double dual =
            vertical_distance_d(dual_hyperplane_d(h, params), dual_point_d(p, params));
        const double expected = std::abs(params.a.back()) * primal;
        c.expect(std::abs(dual - expected) <= 1e-9 * std::max(1.0, expected));
    }
}

void suite_distance_distortion(Rng& rng, int scale, Counter& c) {
    for (const DualPreset which :
         {DualPreset::JaJaLeeChing, DualPreset::ORourke, DualPreset::BergEtAl}) {
        const DualParams params = preset(which);
        bool found = false;
        for (int i = 0; i < 1000 * scale && !found; ++i) {
            const Point2 p = rand_point(rng, 10.0);
            const Line2 line = rand_line(rng, 10.0);
            const double primal = orthogonal_distance(p, line);
            if (primal < 1e-9) {
                continue;
            }
            const double dual =
                orthogonal_distance(dual_line(line, params), dual_point(p, params));
            const double ratio = dual / primal;
            if (ratio < 0.9 || ratio > 1.1) {
                found = true;
            }
        }
        c.expect(found);
    }
}

void suite_line_inverse(Rng& rng, int scale, Counter& c) {
    for (int i = 0; i < 1000 * scale; ++i) {
        const DualParams params = rand_params(rng);
        const Line2 line = rand_line(rng);
        const Line2 back = dual_line_inverse(dual_line(line, params), params);
        c.expect(close_rel(back.m, line.m, 1e-12) && close_rel(back.c, line.c, 1e-12));
    }
}

void suite_hull_oracle(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 50 * scale; ++iter) {
        const int n = irand(rng, 3, 40);
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i) {
            if (!pts.empty() && rng() % 10 == 0) {
                pts.push_back(pts[static_cast<std::size_t>(rng() % pts.size())]);
            } else {
                pts.push_back(rand_point(rng));
            }
        }
        const Hull hull = convex_hull(pts);
        const std::vector<Point2> wrapped = gift_wrap(pts);
        bool equal = hull.vertices.size() == wrapped.size();
        for (std::size_t i = 0; equal && i < wrapped.size(); ++i) {
            equal = hull.vertices[i].x == wrapped[i].x && hull.vertices[i].y == wrapped[i].y;
        }
        c.expect(equal);
    }
}

void suite_hull_membership_duality(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 50 * scale; ++iter) {
        const DualParams params = rand_params(rng);
        const int n = irand(rng, 3, 30);
        std::vector<Point2> pts;
        for (int i = 0; i < n; ++i) {
            pts.push_back(rand_point(rng));
        }
        const Hull hull = convex_hull(pts);
        for (const Point2& p : pts) {
            bool on_hull = false;
            for (const Point2& v : hull.vertices) {
                if (v.x == p.x && v.y == p.y) {
                    on_hull = true;
                    break;
                }
            }
            c.expect(is_on_hull_via_dual(p, pts, params) == on_hull);
        }
    }
}

std::vector<Line2> distinct_slope_lines(Rng& rng, int n) {
    std::vector<double> slopes;
    for (int i = 0; i < n; ++i) {
        slopes.push_back(-5.0 + 10.0 * (i + urand(rng, 0.1, 0.9)) / n);
    }
    std::shuffle(slopes.begin(), slopes.end(), rng);
    std::vector<Line2> lines;
    for (double m : slopes) {
        lines.push_back(Line2{m, urand(rng, -20.0, 20.0)});
    }
    return lines;
}

void suite_envelope_pointwise(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 40 * scale; ++iter) {
        const DualParams params = rand_params(rng);
        const int n = irand(rng, 2, 40);
        const std::vector<Line2> lines = distinct_slope_lines(rng, n);
        const Envelope upper = upper_envelope(lines, params);
        const Envelope lower = lower_envelope(lines, params);
        for (int s = 0; s < 20; ++s) {
            const double x = urand(rng, -30.0, 30.0);
            double hi = -kInf;
            double lo = kInf;
            for (const Line2& line : lines) {
                hi = std::max(hi, line.value_at(x));
                lo = std::min(lo, line.value_at(x));
            }
            c.expect(close_rel(upper.value_at(x), hi, 1e-9) &&
                     close_rel(lower.value_at(x), lo, 1e-9));
        }
    }
}

void suite_envelope_chains(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 40 * scale; ++iter) {
        const DualParams params = rand_params(rng);
        const int n = irand(rng, 2, 25);
        const std::vector<Line2> lines = distinct_slope_lines(rng, n);
        std::vector<Point2> duals;
        for (const Line2& line : lines) {
            duals.push_back(dual_line(line, params));
        }
        const ChainIndices chains = monotone_chain_indices(duals);
        const bool product_positive = params.alpha * params.mu > 0.0;

        const auto sources_of = [](const Envelope& env) {
            std::vector<int> out;
            for (const EnvelopePiece& piece : env.pieces) {
                out.push_back(piece.source);
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        };
        const auto as_set = [](std::vector<int> v) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
            return v;
        };

        const std::vector<int> upper_sources = sources_of(upper_envelope(lines, params));
        const std::vector<int> lower_sources = sources_of(lower_envelope(lines, params));
        const std::vector<int> lower_chain = as_set(chains.lower);
        const std::vector<int> upper_chain = as_set(chains.upper);
        c.expect(upper_sources == (product_positive ? lower_chain : upper_chain));
        c.expect(lower_sources == (product_positive ? upper_chain : lower_chain));
    }
}

void suite_envelope_structure(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 40 * scale; ++iter) {
        const int n = irand(rng, 1, 30);
        const std::vector<Line2> lines = distinct_slope_lines(rng, n);
        for (const bool want_upper : {true, false}) {
            const Envelope env = want_upper ? upper_envelope(lines) : lower_envelope(lines);
            bool ok = !env.pieces.empty() && env.pieces.front().x_lo == -kInf &&
                      env.pieces.back().x_hi == kInf;
            for (std::size_t i = 0; ok && i + 1 < env.pieces.size(); ++i) {
                ok = env.pieces[i].x_hi == env.pieces[i + 1].x_lo &&
                     env.pieces[i].x_hi > env.pieces[i].x_lo;
                if (ok) {
                    ok = want_upper
                             ? env.pieces[i].line.m < env.pieces[i + 1].line.m
                             : env.pieces[i].line.m > env.pieces[i + 1].line.m;
                }
            }
            c.expect(ok);
        }
    }
}

struct RandomRegionInstance {
    std::vector<HalfPlane> constraints;
    std::vector<XClamp> clamps;
    FeasibleRegion region;
};

RandomRegionInstance random_region_instance(Rng& rng, bool framed) {
    RandomRegionInstance inst;
    if (framed) {
        inst.constraints = bounded_frame();
    }
    const int extra = irand(rng, 1, 12);
    for (int i = 0; i < extra; ++i) {
        inst.constraints.push_back(
            {Line2{urand(rng, -3.0, 3.0), urand(rng, -6.0, 6.0)},
             rng() % 2 == 0 ? Side::Top : Side::Bottom});
    }
    if (rng() % 3 == 0) {
        inst.clamps.push_back({XClamp::Kind::LowerBound, urand(rng, -8.0, 0.0)});
        inst.clamps.push_back({XClamp::Kind::UpperBound, urand(rng, 0.0, 8.0)});
    }
    inst.region = intersect_halfplanes(inst.constraints, inst.clamps);
    return inst;
}

void suite_halfplane_grid(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 50 * scale; ++iter) {
        const RandomRegionInstance inst = random_region_instance(rng, iter % 2 == 0);
        for (int gx = 0; gx < 15; ++gx) {
            for (int gy = 0; gy < 15; ++gy) {
                const Point2 p{-12.0 + 24.0 * gx / 14.0, -12.0 + 24.0 * gy / 14.0};
                double worst = -kInf;
                for (const HalfPlane& hp : inst.constraints) {
                    worst = std::max(worst, halfplane_violation(hp, p));
                }
                for (const XClamp& clamp : inst.clamps) {
                    worst = std::max(worst, clamp_violation(clamp, p));
                }
                if (std::abs(worst) < 1e-6) {
                    continue;  // too close to the boundary to call either way
                }
                c.expect(contains(inst.region, p) == (worst < 0.0));
            }
        }
    }
}

void suite_halfplane_vertices(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 50 * scale; ++iter) {
        const RandomRegionInstance inst = random_region_instance(rng, true);
        if (inst.region.status != RegionStatus::Bounded) {
            c.expect(inst.region.status == RegionStatus::Empty);
            continue;
        }
        const std::size_t pieces = inst.region.upper_chain.pieces.size() +
                                   inst.region.lower_chain.pieces.size();
        c.expect(inst.region.merge_iterations <= static_cast<int>(pieces));
        const std::vector<Point2>& verts = inst.region.vertices;
        for (const Point2& v : verts) {
            double worst = -kInf;
            for (const HalfPlane& hp : inst.constraints) {
                worst = std::max(worst, halfplane_violation(hp, v));
            }
            int active = 0;
            for (const HalfPlane& hp : inst.constraints) {
                if (std::abs(halfplane_violation(hp, v)) <= 1e-6) {
                    ++active;
                }
            }
            for (const XClamp& clamp : inst.clamps) {
                if (std::abs(clamp_violation(clamp, v)) <= 1e-6) {
                    ++active;
                }
            }
            c.expect(worst <= 1e-6 && active >= 2);
        }
        for (std::size_t i = 0; i < verts.size() && verts.size() >= 3; ++i) {
            const Point2& a = verts[i];
            const Point2& b = verts[(i + 1) % verts.size()];
            const Point2& d = verts[(i + 2) % verts.size()];
            c.expect(cross(a, b, d) >= -1e-9 * 100.0);
        }
    }
}

void suite_lp_oracle(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 60 * scale; ++iter) {
        const RandomRegionInstance inst = random_region_instance(rng, true);
        if (inst.region.status != RegionStatus::Bounded) {
            continue;
        }
        LPObjective obj{urand(rng, -3.0, 3.0), urand(rng, -3.0, 3.0)};
        if (obj.cx == 0.0 && obj.cy == 0.0) {
            obj.cx = 1.0;
        }
        const LPResult lp = lp_maximize(inst.region, obj);
        if (lp.status != LPStatus::Optimal) {
            c.expect(false);
            continue;
        }
        bool have = false;
        double best = 0.0;
        Point2 best_v{};
        for (const Point2& v : inst.region.vertices) {
            const double value = obj.cx * v.x + obj.cy * v.y;
            if (!have || value > best || (value == best && lex_less(v, best_v))) {
                have = true;
                best = value;
                best_v = v;
            }
        }
        c.expect(have && lp.value == best && lp.vertex.x == best_v.x &&
                 lp.vertex.y == best_v.y);
    }
}

void suite_lp_recession(Rng&, int, Counter& c) {
    const std::vector<HalfPlane> triangle = {
        {Line2{1.0, 1.0}, Side::Top},
        {Line2{-1.0, 1.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    const FeasibleRegion tri = intersect_halfplanes(triangle);
    const LPResult up = lp_maximize(tri, LPObjective{0.0, 1.0});
    c.expect(up.status == LPStatus::Optimal && std::abs(up.value - 1.0) <= 1e-12 &&
             std::abs(up.vertex.x) <= 1e-12 && std::abs(up.vertex.y - 1.0) <= 1e-12);

    const std::vector<HalfPlane> ceiling = {{Line2{0.0, 2.0}, Side::Top}};
    const FeasibleRegion ceil_region = intersect_halfplanes(ceiling);
    const LPResult flat = lp_maximize(ceil_region, LPObjective{0.0, 1.0});
    c.expect(flat.status == LPStatus::Optimal && flat.value == 2.0);
    c.expect(lp_maximize(ceil_region, LPObjective{1.0, 0.0}).status ==
             LPStatus::Unbounded);
    c.expect(lp_maximize(ceil_region, LPObjective{0.0, -1.0}).status ==
             LPStatus::Unbounded);

    const std::vector<HalfPlane> floor_only = {{Line2{0.0, 0.0}, Side::Bottom}};
    c.expect(lp_maximize(intersect_halfplanes(floor_only), LPObjective{0.0, 1.0}).status ==
             LPStatus::Unbounded);

    const std::vector<HalfPlane> contradiction = {
        {Line2{0.0, 0.0}, Side::Top},
        {Line2{0.0, 1.0}, Side::Bottom},
    };
    c.expect(lp_maximize(intersect_halfplanes(contradiction), LPObjective{1.0, 0.0})
                 .status == LPStatus::Infeasible);

    const std::vector<HalfPlane> strip = {
        {Line2{0.0, 1.0}, Side::Top},
        {Line2{0.0, 0.0}, Side::Bottom},
    };
    c.expect(lp_maximize(intersect_halfplanes(strip), LPObjective{-1.0, 0.0}).status ==
             LPStatus::Unbounded);
}

void suite_kernel_convex(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 25 * scale; ++iter) {
        std::vector<Point2> pts;
        const int n = irand(rng, 6, 25);
        for (int i = 0; i < n; ++i) {
            pts.push_back(rand_point(rng, 8.0));
        }
        const Hull hull = convex_hull(pts);
        if (hull.vertices.size() < 3) {
            continue;
        }
        const FeasibleRegion kernel = polygon_kernel(Polygon{hull.vertices});
        bool ok = kernel.status == RegionStatus::Bounded &&
                  kernel.vertices.size() == hull.vertices.size();
        for (std::size_t i = 0; ok && i < hull.vertices.size(); ++i) {
            ok = close_rel(kernel.vertices[i].x, hull.vertices[i].x, 1e-9) &&
                 close_rel(kernel.vertices[i].y, hull.vertices[i].y, 1e-9);
        }
        c.expect(ok);
    }
}

void suite_kernel_star(Rng& rng, int scale, Counter& c) {
    const Tolerance tol{1e-6, 1e-6};
    for (int iter = 0; iter < 15 * scale; ++iter) {
        const std::vector<Point2> ring = star_polygon(rng);
        const FeasibleRegion kernel = polygon_kernel(Polygon{ring});
        const bool origin_in = kernel.status != RegionStatus::Empty &&
                               contains(kernel, Point2{0.0, 0.0}, tol);
        c.expect(origin_in);
        c.expect(sees_every_vertex(ring, Point2{0.0, 0.0}));
        if (kernel.status == RegionStatus::Bounded && kernel.vertices.size() >= 3) {
            Point2 centroid{0.0, 0.0};
            for (const Point2& v : kernel.vertices) {
                centroid.x += v.x;
                centroid.y += v.y;
            }
            centroid.x /= static_cast<double>(kernel.vertices.size());
            centroid.y /= static_cast<double>(kernel.vertices.size());
            c.expect(sees_every_vertex(ring, centroid));
        }
    }
}

void suite_kernel_frozen(Rng&, int, Counter& c) {
    const Polygon ell{{{0.0, 0.0},
                       {2.0, 0.0},
                       {2.0, 1.0},
                       {1.0, 1.0},
                       {1.0, 2.0},
                       {0.0, 2.0}}};
    const FeasibleRegion ell_kernel = polygon_kernel(ell);
    const std::vector<Point2> unit_square = {
        {0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
    bool ell_ok = ell_kernel.status == RegionStatus::Bounded &&
                  ell_kernel.vertices.size() == unit_square.size();
    for (std::size_t i = 0; ell_ok && i < unit_square.size(); ++i) {
        ell_ok = std::abs(ell_kernel.vertices[i].x - unit_square[i].x) <= 1e-9 &&
                 std::abs(ell_kernel.vertices[i].y - unit_square[i].y) <= 1e-9;
    }
    c.expect(ell_ok);

    const Polygon comb{{{0.0, 0.0},
                        {5.0, 0.0},
                        {5.0, 3.0},
                        {4.0, 3.0},
                        {4.0, 1.0},
                        {3.0, 1.0},
                        {3.0, 3.0},
                        {2.0, 3.0},
                        {2.0, 1.0},
                        {1.0, 1.0},
                        {1.0, 3.0},
                        {0.0, 3.0}}};
    c.expect(polygon_kernel(comb).status == RegionStatus::Empty);

    const Polygon square{{{0.0, 0.0}, {3.0, 0.0}, {3.0, 3.0}, {0.0, 3.0}}};
    const FeasibleRegion square_kernel = polygon_kernel(square);
    c.expect(square_kernel.status == RegionStatus::Bounded &&
             square_kernel.vertices.size() == 4);
}

void suite_knn_oracle(Rng& rng, int scale, Counter& c) {
    for (std::size_t dim = 1; dim <= 3; ++dim) {
        for (int iter = 0; iter < 30 * scale; ++iter) {
            const std::size_t n = static_cast<std::size_t>(irand(rng, 1, 60));
            const KnnInstance inst = separated_knn_instance(rng, dim, n);
            const int k = irand(rng, 1, static_cast<int>(n));
            const KnnResult fast = knn_query(inst.sites, inst.query, k);
            const KnnResult slow = knn_bruteforce(inst.sites, inst.query, k);
            c.expect(knn_indices(fast) == knn_indices(slow));
        }
    }
}

void suite_knn_kth_rule(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 30 * scale; ++iter) {
        const std::size_t dim = static_cast<std::size_t>(irand(rng, 1, 3));
        const std::size_t n = static_cast<std::size_t>(irand(rng, 1, 25));
        const KnnInstance inst = separated_knn_instance(rng, dim, n);
        std::vector<double> heights;
        for (std::size_t i = 0; i < n; ++i) {
            heights.push_back(f_eval(lift(inst.sites[i], static_cast<int>(i)), inst.query));
        }
        for (int k = 1; k <= static_cast<int>(n); ++k) {
            const KnnResult result = knn_query(inst.sites, inst.query, k);
            const double kth = result.entries.back().f_value;
            const long above = std::count_if(heights.begin(), heights.end(),
                                             [&](double h) { return h > kth; });
            c.expect(above == k - 1);
        }
    }
}

void suite_knn_monotone(Rng& rng, int scale, Counter& c) {
    const auto rank_with = [](const KnnInstance& inst, double (*g)(double)) {
        struct Key {
            int index;
            double gf;
            double sq;
        };
        std::vector<Key> keys;
        for (std::size_t i = 0; i < inst.sites.size(); ++i) {
            keys.push_back({static_cast<int>(i),
                            g(f_eval(lift(inst.sites[i], static_cast<int>(i)), inst.query)),
                            squared_dist(inst.sites[i], inst.query)});
        }
        std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
            if (a.gf != b.gf) {
                return a.gf > b.gf;
            }
            if (a.sq != b.sq) {
                return a.sq < b.sq;
            }
            return a.index < b.index;
        });
        std::vector<int> order;
        for (const Key& key : keys) {
            order.push_back(key.index);
        }
        return order;
    };
    for (int iter = 0; iter < 30 * scale; ++iter) {
        const std::size_t dim = static_cast<std::size_t>(irand(rng, 1, 3));
        const std::size_t n = static_cast<std::size_t>(irand(rng, 1, 40));
        const KnnInstance inst = separated_knn_instance(rng, dim, n);
        const std::vector<int> base =
            knn_indices(knn_query(inst.sites, inst.query, static_cast<int>(n)));
        c.expect(base == rank_with(inst, +[](double t) { return 2.0 * t + 1.0; }));
        c.expect(base == rank_with(inst, +[](double t) { return t * t * t + t; }));
    }
}

void suite_arrangement_agreement(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 20 * scale; ++iter) {
        const std::size_t n = static_cast<std::size_t>(irand(rng, 2, 20));
        const std::vector<PointD> sites = distinct_sites_1d(rng, n);
        const LineArrangement1D arr = build_arrangement_1d(sites);
        std::vector<double> probes;
        for (double e : arr.events) {
            probes.push_back(e);
            probes.push_back(e - 1e-7);
            probes.push_back(e + 1e-7);
        }
        for (int i = 0; i < 5; ++i) {
            probes.push_back(urand(rng, -5.0, static_cast<double>(n) + 5.0));
        }
        for (double x : probes) {
            PointD q;
            q.coords.push_back(x);
            for (int k : {1, static_cast<int>(n)}) {
                c.expect(topmost_at(arr, x, k) == knn_indices(knn_query(arr.sites, q, k)));
            }
        }
    }
}

void suite_arrangement_structure(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 20 * scale; ++iter) {
        const std::size_t n = static_cast<std::size_t>(irand(rng, 2, 15));
        const std::vector<PointD> sites = distinct_sites_1d(rng, n);
        const LineArrangement1D arr = build_arrangement_1d(sites);
        c.expect(std::is_sorted(arr.events.begin(), arr.events.end()));
        c.expect(arr.events.size() == n * (n - 1) / 2);
        const int k = static_cast<int>(n);
        for (std::size_t i = 0; i + 1 < arr.events.size(); ++i) {
            const double a = arr.events[i];
            const double b = arr.events[i + 1];
            if (b - a <= 1e-9) {
                continue;
            }
            const std::vector<int> first = topmost_at(arr, a + (b - a) * 0.25, k);
            c.expect(first == topmost_at(arr, a + (b - a) * 0.5, k) &&
                     first == topmost_at(arr, a + (b - a) * 0.75, k));
        }
    }
}

void suite_json_roundtrip(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 200 * scale; ++iter) {
        const Point2 p = rand_point(rng, 1e4);
        const Point2 p2 = parse_point2(parse_json_text(dump_json(to_json(p))));
        c.expect(p2.x == p.x && p2.y == p.y);

        const Line2 l = rand_line(rng, 1e3);
        const Line2 l2 = parse_line2(parse_json_text(dump_json(to_json(l))));
        c.expect(l2.m == l.m && l2.c == l.c);

        const DualParams params = rand_params(rng);
        const DualParams params2 = parse_params(parse_json_text(dump_json(to_json(params))));
        c.expect(params2.alpha == params.alpha && params2.mu == params.mu);

        const HalfPlane hp{rand_line(rng), rng() % 2 == 0 ? Side::Top : Side::Bottom};
        const HalfPlane hp2 = parse_halfplane(parse_json_text(dump_json(to_json(hp))));
        c.expect(hp2.line.m == hp.line.m && hp2.line.c == hp.line.c &&
                 hp2.side == hp.side);

        const PointD pd = rand_point_d(rng, static_cast<std::size_t>(irand(rng, 1, 5)), 50.0);
        const PointD pd2 = parse_point_d(parse_json_text(dump_json(to_json(pd))));
        c.expect(pd2.coords == pd.coords);
    }
    // Envelopes carry infinities; those must survive as nulls.
    const std::vector<Line2> lines = {Line2{1.0, 0.0}, Line2{-1.0, 0.0}, Line2{0.0, 2.0}};
    const Envelope env = upper_envelope(lines);
    const Envelope env2 = parse_envelope(parse_json_text(dump_json(to_json(env))));
    bool same = env.pieces.size() == env2.pieces.size();
    for (std::size_t i = 0; same && i < env.pieces.size(); ++i) {
        same = env.pieces[i].line.m == env2.pieces[i].line.m &&
               env.pieces[i].line.c == env2.pieces[i].line.c &&
               env.pieces[i].x_lo == env2.pieces[i].x_lo &&
               env.pieces[i].x_hi == env2.pieces[i].x_hi &&
               env.pieces[i].source == env2.pieces[i].source;
    }
    c.expect(same);
}

void suite_svg_determinism(Rng& rng, int scale, Counter& c) {
    for (int iter = 0; iter < 10 * scale; ++iter) {
        Scene scene;
        const int n = irand(rng, 1, 6);
        for (int i = 0; i < n; ++i) {
            const std::string label = "e" + std::to_string(i);
            switch (rng() % 3) {
                case 0:
                    scene.add_point(rand_point(rng, 8.0), label);
                    break;
                case 1:
                    scene.add_line(rand_line(rng, 8.0), label);
                    break;
                default:
                    scene.add_segment(rand_point(rng, 8.0), rand_point(rng, 8.0), label);
                    break;
            }
        }
        const Viewport vp{-10.0, 10.0, -10.0, 10.0};
        c.expect(render_svg(scene, vp) == render_svg(scene, vp));
    }
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options) {
    if (options.scale < 1) {
        throw ValidationError("selftest scale must be at least 1");
    }
    const bool corrupt = options.corrupt_incidence;
    const std::vector<std::pair<std::string, std::function<void(Rng&, int, Counter&)>>>
        suites = {
            {"incidence-residual",
             [corrupt](Rng& rng, int scale, Counter& c) {
                 suite_incidence(rng, scale, c, corrupt);
             }},
            {"involution-roundtrip", suite_involution_roundtrip},
            {"non-involution-witness", suite_non_involution_witness},
            {"order-flip-sign", suite_order_flip},
            {"classification-grid", suite_classification_grid},
            {"vertical-scale-2d", suite_vertical_scale_2d},
            {"vertical-scale-ddim", suite_vertical_scale_ddim},
            {"distance-distortion-witness", suite_distance_distortion},
            {"line-inverse-roundtrip", suite_line_inverse},
            {"hull-gift-wrap-oracle", suite_hull_oracle},
            {"hull-membership-duality", suite_hull_membership_duality},
            {"envelope-pointwise-oracle", suite_envelope_pointwise},
            {"envelope-chain-correspondence", suite_envelope_chains},
            {"envelope-piece-structure", suite_envelope_structure},
            {"halfplane-grid-oracle", suite_halfplane_grid},
            {"halfplane-vertex-certificates", suite_halfplane_vertices},
            {"lp-vertex-oracle", suite_lp_oracle},
            {"lp-recession-frozen", suite_lp_recession},
            {"kernel-convex-identity", suite_kernel_convex},
            {"kernel-star-visibility", suite_kernel_star},
            {"kernel-frozen-instances", suite_kernel_frozen},
            {"knn-distance-oracle", suite_knn_oracle},
            {"knn-kth-count-rule", suite_knn_kth_rule},
            {"knn-monotone-invariance", suite_knn_monotone},
            {"arrangement-topmost-agreement", suite_arrangement_agreement},
            {"arrangement-event-structure", suite_arrangement_structure},
            {"json-roundtrip", suite_json_roundtrip},
            {"svg-determinism", suite_svg_determinism},
        };

    SelftestReport report;
    report.seed = options.seed;
    report.suites.reserve(suites.size());
    for (std::size_t i = 0; i < suites.size(); ++i) {
        Rng rng(options.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
        Counter counter;
        suites[i].second(rng, options.scale, counter);
        report.suites.push_back({suites[i].first, counter.trials, counter.failures,
                                 counter.failures == 0});
    }
    report.all_passed =
        std::all_of(report.suites.begin(), report.suites.end(),
                    [](const SuiteResult& s) { return s.passed; });
    return report;
}

}  // namespace dualgeo
