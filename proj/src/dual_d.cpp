#include "dualgeo/dual_d.hpp"

#include <algorithm>
#include <cmath>

#include "dualgeo/error.hpp"

namespace dualgeo {

namespace {

void require_all_finite(const std::vector<double>& v, const char* what) {
    for (double x : v) {
        if (!std::isfinite(x)) {
            throw ValidationError(std::string(what) + " must be finite");
        }
    }
}

void require_dims(std::size_t point_dim, std::size_t param_dim) {
    if (point_dim != param_dim) {
        throw ValidationError("dimension mismatch between value and parameters");
    }
}

} // namespace

void validate(const DualParamsD& params) {
    if (params.a.size() < 2) {
        throw ValidationError("d-dimensional duality needs d >= 2 coefficients");
    }
    require_all_finite(params.a, "dual coefficients");
    for (double ai : params.a) {
        if (ai == 0.0) throw ValidationError("every coefficient must be nonzero");
    }
}

DualParamsD preset_d(DPreset which, int d) {
    if (d < 2) throw ValidationError("presets need dimension >= 2");
    DualParamsD params;
    params.a.assign(static_cast<std::size_t>(d),
                    which == DPreset::EdelsbrunnerP13 ? 2.0 : 1.0);
    params.a.back() = -1.0;
    return params;
}

HyperplaneD dual_point_d(const PointD& p, const DualParamsD& params) {
    validate(params);
    require_dims(p.coords.size(), params.a.size());
    require_all_finite(p.coords, "point coordinates");

    const std::size_t d = params.a.size();
    HyperplaneD h;
    h.m.resize(d - 1);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        h.m[i] = params.a[i] * p.coords[i];
        if (!std::isfinite(h.m[i])) {
            throw NumericError("dual_point_d: slope is not finite");
        }
    }
    h.c = params.a.back() * p.coords.back();
    if (!std::isfinite(h.c)) {
        throw NumericError("dual_point_d: offset is not finite");
    }
    return h;
}

PointD dual_hyperplane_d(const HyperplaneD& h, const DualParamsD& params) {
    validate(params);
    require_dims(h.m.size() + 1, params.a.size());
    require_all_finite(h.m, "hyperplane slopes");
    if (!std::isfinite(h.c)) throw ValidationError("hyperplane offset must be finite");

    const std::size_t d = params.a.size();
    const double ad = params.a.back();
    PointD p;
    p.coords.resize(d);
    for (std::size_t i = 0; i + 1 < d; ++i) {
        p.coords[i] = -ad * h.m[i] / params.a[i];
        if (!std::isfinite(p.coords[i])) {
            throw NumericError("dual_hyperplane_d: coordinate is not finite");
        }
    }
    p.coords.back() = ad * h.c;
    if (!std::isfinite(p.coords.back())) {
        throw NumericError("dual_hyperplane_d: coordinate is not finite");
    }
    return p;
}

DualityClassD classify_d(const DualParamsD& params, const Tolerance& tol) {
    validate(params);
    const double ad = params.a.back();
    DualityClassD result;
    result.is_involution = tol.is_zero(ad + 1.0, ad);
    result.order = ad > 0.0 ? Order::Preserving : Order::Reversing;
    result.vertical_scale = std::abs(ad);
    return result;
}

RelPos relative_position_d(const PointD& p, const HyperplaneD& h,
                           const Tolerance& tol) {
    require_dims(p.coords.size(), h.m.size() + 1);
    double acc = 0.0;
    double scale = std::max(std::abs(p.coords.back()), std::abs(h.c));
    for (std::size_t i = 0; i < h.m.size(); ++i) {
        const double term = h.m[i] * p.coords[i];
        acc += term;
        scale = std::max(scale, std::abs(term));
    }
    const double residual = p.coords.back() - acc - h.c;
    if (tol.is_zero(residual, scale)) return RelPos::On;
    return residual > 0.0 ? RelPos::Above : RelPos::Below;
}

double vertical_distance_d(const PointD& p, const HyperplaneD& h) {
    require_dims(p.coords.size(), h.m.size() + 1);
    double acc = h.c;
    for (std::size_t i = 0; i < h.m.size(); ++i) {
        acc += h.m[i] * p.coords[i];
    }
    return std::abs(p.coords.back() - acc);
}

NormalizedHyperplane polar_dual_d(const PointD& p) {
    if (p.coords.size() < 2) {
        throw ValidationError("polar duality needs dimension >= 2");
    }
    require_all_finite(p.coords, "point coordinates");
    bool all_zero = true;
    for (double x : p.coords) all_zero = all_zero && x == 0.0;
    if (all_zero) {
        throw ValidationError("polar dual of the origin is undefined");
    }
    return NormalizedHyperplane{p.coords};
}

PointD polar_dual_d_inverse(const NormalizedHyperplane& h) {
    if (h.n.size() < 2) {
        throw ValidationError("polar duality needs dimension >= 2");
    }
    require_all_finite(h.n, "hyperplane coefficients");
    bool all_zero = true;
    for (double x : h.n) all_zero = all_zero && x == 0.0;
    if (all_zero) {
        throw ValidationError("normalized hyperplane needs a nonzero normal");
    }
    return PointD{h.n};
}

bool on_normalized_hyperplane(const PointD& p, const NormalizedHyperplane& h,
                              const Tolerance& tol) {
    require_dims(p.coords.size(), h.n.size());
    double acc = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < h.n.size(); ++i) {
        const double term = h.n[i] * p.coords[i];
        acc += term;
        scale = std::max(scale, std::abs(term));
    }
    return tol.is_zero(acc - 1.0, scale);
}

} // namespace dualgeo
