#pragma once

#include <span>
#include <vector>

#include "dualgeo/dual_d.hpp"
#include "dualgeo/geometry.hpp"

namespace dualgeo {

// Lift of a site P to the hyperplane z = sum(2 p_i x_i) - sum(p_i^2).
// A query X is closer to P than to Q exactly when P's plane passes above
// Q's plane at X, so distance order turns into vertical order of planes.
struct LiftedPlane {
    int site_index = -1;
    std::vector<double> coeffs;  // 2 * p_i
    double offset = 0.0;         // -sum p_i^2, never positive
};

LiftedPlane lift(const PointD& site, int site_index = -1);

// Height of the lifted plane at x: sum(coeffs_i * x_i) + offset.
double f_eval(const LiftedPlane& plane, const PointD& x);

struct KnnEntry {
    int site_index = -1;
    double distance = 0.0;
    double f_value = 0.0;
};

// Entries run from nearest to farthest, so distances are non-decreasing
// and f_values non-increasing. Exact plane-height ties fall back to the
// squared distance and finally to ascending site index.
struct KnnResult {
    std::vector<KnnEntry> entries;
};

KnnResult knn_query(std::span<const PointD> sites, const PointD& query, int k);

// Independent oracle: sorts squared Euclidean distances directly.
KnnResult knn_bruteforce(std::span<const PointD> sites, const PointD& query, int k);

// Arrangement of the lifted lines of distinct 1-d sites. Events are the
// sorted pairwise crossing abscissae; between consecutive events the
// top-to-bottom order of the lines never changes.
struct LineArrangement1D {
    std::vector<PointD> sites;  // sites[i] lifts to lines[i]
    std::vector<Line2> lines;
    std::vector<double> events;
};

LineArrangement1D build_arrangement_1d(std::span<const PointD> sites);

// Indices of the k lines with the greatest height at x, top first.
// Matches knn_query on the source sites, tie handling included.
std::vector<int> topmost_at(const LineArrangement1D& arr, double x, int k);

}  // namespace dualgeo
