#include "dualgeo/dual.hpp"

#include <algorithm>
#include <cmath>

#include "dualgeo/error.hpp"

namespace dualgeo {

void validate(const DualParams& params) {
    if (!std::isfinite(params.alpha) || !std::isfinite(params.mu)) {
        throw ValidationError("dual params must be finite");
    }
    if (params.alpha == 0.0) {
        throw ValidationError("alpha must be nonzero");
    }
    if (params.mu == 0.0) {
        throw ValidationError("mu must be nonzero");
    }
}

DualParams preset(DualPreset which) {
    switch (which) {
    case DualPreset::JaJaLeeChing: return DualParams{1.0, -1.0};
    case DualPreset::ORourke:      return DualParams{2.0, 0.5};
    case DualPreset::BergEtAl:     return DualParams{1.0, 1.0};
    }
    throw ValidationError("unknown dual preset");
}

namespace {

void require_finite_result(double a, double b, const char* what) {
    if (!std::isfinite(a) || !std::isfinite(b)) {
        throw NumericError(std::string(what) + ": result is not finite");
    }
}

} // namespace

Line2 dual_point(const Point2& p, const DualParams& params) {
    validate(params);
    const double m = params.alpha * p.x;
    const double c = -params.alpha * params.mu * p.y;
    require_finite_result(m, c, "dual_point");
    return Line2{m, c};
}

Point2 dual_line(const Line2& line, const DualParams& params) {
    validate(params);
    const double x = params.mu * line.m;
    const double y = -params.alpha * params.mu * line.c;
    require_finite_result(x, y, "dual_line");
    return Point2{x, y};
}

Line2 dual_line_inverse(const Point2& p, const DualParams& params) {
    validate(params);
    const double m = p.x / params.mu;
    const double c = -p.y / (params.alpha * params.mu);
    require_finite_result(m, c, "dual_line_inverse");
    return Line2{m, c};
}

DualityClass classify(const DualParams& params, const Tolerance& tol) {
    validate(params);
    const double product = params.alpha * params.mu;
    if (tol.is_zero(product, 1.0)) {
        // Unreachable with validated params at sane magnitudes.
        throw ValidationError("alpha*mu is within tolerance of zero");
    }
    DualityClass result;
    result.is_involution = tol.is_zero(product - 1.0, product);
    result.order = product < 0.0 ? Order::Preserving : Order::Reversing;
    result.vertical_scale = std::abs(product);
    return result;
}

RelPos relative_position(const Point2& p, const Line2& line,
                         const Tolerance& tol) {
    const double mx = line.m * p.x;
    const double residual = p.y - mx - line.c;
    const double scale =
        std::max({std::abs(p.y), std::abs(mx), std::abs(line.c)});
    if (tol.is_zero(residual, scale)) return RelPos::On;
    return residual > 0.0 ? RelPos::Above : RelPos::Below;
}

double vertical_distance(const Point2& p, const Line2& line) {
    return std::abs(line.m * p.x + line.c - p.y);
}

double orthogonal_distance(const Point2& p, const Line2& line) {
    return vertical_distance(p, line) / std::sqrt(1.0 + line.m * line.m);
}

GeneralLine polar_dual_point(const Point2& p) {
    if (p.x == 0.0 && p.y == 0.0) {
        throw ValidationError(
            "polar dual of the origin is undefined (no line 0x+0y+1=0)");
    }
    return GeneralLine{p.x, p.y};
}

Point2 polar_dual_line(const GeneralLine& line) {
    if (line.a == 0.0 && line.b == 0.0) {
        throw ValidationError("general line requires (a,b) != (0,0)");
    }
    return Point2{line.a, line.b};
}

bool on_general_line(const Point2& p, const GeneralLine& line,
                     const Tolerance& tol) {
    const double ax = line.a * p.x;
    const double by = line.b * p.y;
    const double residual = ax + by + 1.0;
    return tol.is_zero(residual, std::max({std::abs(ax), std::abs(by), 1.0}));
}

bool affine_map_bijective(const AffineMapParams& map, const Tolerance& tol) {
    const double det = map.a * map.d - map.b * map.c;
    return std::abs(det) > tol.eps_abs;
}

} // namespace dualgeo
