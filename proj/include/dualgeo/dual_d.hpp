#pragma once

// d-dimensional generalization of the duality family. A coefficient vector
// (a_1..a_d), all nonzero, defines
//
//   point (p_1..p_d)            ->  hyperplane x_d = sum(a_i*p_i*x_i) + a_d*p_d
//   hyperplane x_d = sum(m_i*x_i) + c
//                               ->  point (-a_d*m_1/a_1, .., -a_d*m_{d-1}/a_{d-1}, a_d*c)
//
// The last coefficient plays the role alpha*mu plays in 2D, with a sign
// flip: the signed vertical residual of the dual pair is -a_d times the
// primal one, so a_d = -1 gives an involution and a_d > 0 preserves
// above/below. The 2D family is the special case alpha = a_1, mu = -a_2/a_1.

#include <vector>

#include "dualgeo/dual.hpp"
#include "dualgeo/tolerance.hpp"

namespace dualgeo {

struct PointD {
    std::vector<double> coords;
};

// Non-vertical hyperplane x_d = sum(m_i * x_i) + c with d-1 slopes.
struct HyperplaneD {
    std::vector<double> m;
    double c = 0.0;
};

struct DualParamsD {
    std::vector<double> a;
};

// Throws ValidationError unless a has length >= 2 and every entry is finite
// and nonzero.
void validate(const DualParamsD& params);

struct DualityClassD {
    bool is_involution = false;
    Order order = Order::Reversing;
    double vertical_scale = 1.0; // |a_d|
};

// EdelsbrunnerP4: a_i = 1 for i < d, a_d = -1 (the self-inverse completion).
// EdelsbrunnerP13: a_i = 2 for i < d, a_d = -1.
enum class DPreset { EdelsbrunnerP4, EdelsbrunnerP13 };

DualParamsD preset_d(DPreset which, int d);

HyperplaneD dual_point_d(const PointD& p, const DualParamsD& params);
PointD dual_hyperplane_d(const HyperplaneD& h, const DualParamsD& params);

DualityClassD classify_d(const DualParamsD& params, const Tolerance& tol = {});

// Sign of p_d - sum(m_i*p_i) - c with a tolerance band mapping to On.
RelPos relative_position_d(const PointD& p, const HyperplaneD& h,
                           const Tolerance& tol = {});

// |p_d - sum(m_i*p_i) - c|
double vertical_distance_d(const PointD& p, const HyperplaneD& h);

// Polar duality P <-> {x : sum(p_i*x_i) = 1}. Self-inverse; undefined at the
// origin, and the image can never pass through the origin.
struct NormalizedHyperplane {
    std::vector<double> n;
};

NormalizedHyperplane polar_dual_d(const PointD& p);
PointD polar_dual_d_inverse(const NormalizedHyperplane& h);

bool on_normalized_hyperplane(const PointD& p, const NormalizedHyperplane& h,
                              const Tolerance& tol = {});

} // namespace dualgeo
