#include "dualgeo/hull.hpp"

#include <algorithm>
#include <numeric>

#include "dualgeo/error.hpp"

namespace dualgeo {

namespace {

// Keeps only strict turns: cross <= 0 pops, so collinear points never
// survive inside a chain.
void extend_chain(std::vector<int>& chain, int candidate,
                  std::span<const Point2> pts) {
    while (chain.size() >= 2) {
        const Point2& o = pts[chain[chain.size() - 2]];
        const Point2& a = pts[chain[chain.size() - 1]];
        if (cross(o, a, pts[candidate]) > 0.0) break;
        chain.pop_back();
    }
    chain.push_back(candidate);
}

} // namespace

ChainIndices monotone_chain_indices(std::span<const Point2> points) {
    if (points.empty()) {
        throw ValidationError("convex hull of an empty point set");
    }
    for (const Point2& p : points) {
        if (!is_finite(p)) {
            throw ValidationError("hull input points must be finite");
        }
    }

    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return lex_less(points[i], points[j]) ||
               (points[i] == points[j] && i < j);
    });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](int i, int j) {
                                return points[i] == points[j];
                            }),
                order.end());

    ChainIndices chains;
    for (int idx : order) {
        extend_chain(chains.lower, idx, points);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        extend_chain(chains.upper, *it, points);
    }
    // Both chains were built left-to-right / right-to-left; report the upper
    // one in ascending order too.
    std::reverse(chains.upper.begin(), chains.upper.end());
    return chains;
}

Hull convex_hull(std::span<const Point2> points) {
    const ChainIndices chains = monotone_chain_indices(points);

    Hull hull;
    hull.vertices.reserve(chains.lower.size() + chains.upper.size());
    for (int idx : chains.lower) {
        hull.vertices.push_back(points[idx]);
    }
    // Upper chain walked right-to-left, skipping the shared extremes.
    for (std::size_t k = chains.upper.size() - 1; k-- > 1;) {
        hull.vertices.push_back(points[chains.upper[k]]);
    }
    return hull;
}

} // namespace dualgeo
