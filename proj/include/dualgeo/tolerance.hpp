#pragma once

#include <algorithm>
#include <cmath>

namespace dualgeo {

// Hybrid absolute/relative tolerance used by every comparison band in the
// library. A residual r measured against a magnitude scale s counts as zero
// when |r| <= eps_abs + eps_rel * |s|.
struct Tolerance {
    double eps_abs = 1e-9;
    double eps_rel = 1e-9;

    bool is_zero(double residual, double scale) const {
        return std::abs(residual) <= eps_abs + eps_rel * std::abs(scale);
    }

    bool close(double a, double b) const {
        return is_zero(a - b, std::max(std::abs(a), std::abs(b)));
    }
};

} // namespace dualgeo
