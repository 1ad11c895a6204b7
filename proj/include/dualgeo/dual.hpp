#pragma once

// Two-parameter family of point<->line duality transforms.
//
// A transform is determined by (alpha, mu), both nonzero:
//
//   point (r,s)    ->  line  y = alpha*(r*x - mu*s)
//   line  y=m*x+c  ->  point (mu*m, -alpha*mu*c)
//
// Incidence is preserved for every member of the family: if p lies on L,
// the dual point of L lies on the dual line of p. The product alpha*mu
// controls everything else:
//
//   alpha*mu = 1   the map is an involution (its own inverse)
//   alpha*mu < 0   above/below relations are preserved
//   alpha*mu > 0   above/below relations are reversed
//   |alpha*mu|     scale factor of vertical point-line distances
//
// The first two conditions are mutually exclusive. The residual identity
// behind all of this: if rho = s - m*r - c is the signed vertical residual
// of p=(r,s) against L: y=m*x+c, the residual of the dual pair is exactly
// alpha*mu * rho.

#include <cmath>

#include "dualgeo/geometry.hpp"
#include "dualgeo/tolerance.hpp"

namespace dualgeo {

struct DualParams {
    double alpha = 1.0;
    double mu = 1.0;

    bool operator==(const DualParams&) const = default;
};

// Throws ValidationError unless both parameters are finite and nonzero.
void validate(const DualParams& params);

enum class Order { Preserving, Reversing };

struct DualityClass {
    bool is_involution = false;
    Order order = Order::Reversing;
    double vertical_scale = 1.0; // |alpha*mu|
};

enum class DualPreset { JaJaLeeChing, ORourke, BergEtAl };

// JaJaLeeChing: (r,s) -> y = r*x + s,   line -> (-m, c)    [alpha=1, mu=-1]
// ORourke:      (r,s) -> y = 2*r*x - s, line -> (m/2, -c)  [alpha=2, mu=1/2]
// BergEtAl:     (r,s) -> y = r*x - s,   line -> (m, -c)    [alpha=1, mu=1]
DualParams preset(DualPreset which);

Line2 dual_point(const Point2& p, const DualParams& params);
Point2 dual_line(const Line2& line, const DualParams& params);

// The unique line L with dual_line(L, params) == p; witnesses bijectivity.
Line2 dual_line_inverse(const Point2& p, const DualParams& params);

DualityClass classify(const DualParams& params, const Tolerance& tol = {});

enum class RelPos { Above, On, Below };

// Sign of s - m*r - c with a tolerance band mapping to On. The band scales
// with the magnitudes of the three terms.
RelPos relative_position(const Point2& p, const Line2& line,
                         const Tolerance& tol = {});

// |m*r + c - s|
double vertical_distance(const Point2& p, const Line2& line);

// |m*r + c - s| / sqrt(1 + m^2). No member of the family preserves this;
// the self-test hunts for witnesses.
double orthogonal_distance(const Point2& p, const Line2& line);

// Polar duality (r,s) <-> r*x + s*y + 1 = 0. Mutually inverse; undefined at
// the origin.
GeneralLine polar_dual_point(const Point2& p);
Point2 polar_dual_line(const GeneralLine& line);

bool on_general_line(const Point2& p, const GeneralLine& line,
                     const Tolerance& tol = {});

// Candidate map (p,q) -> line y = (a*p + b*q)*x + (c*p + d*q). Bijective
// iff the coefficient matrix is invertible; otherwise distinct points share
// a dual line.
struct AffineMapParams {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

bool affine_map_bijective(const AffineMapParams& map, const Tolerance& tol = {});

} // namespace dualgeo
