#pragma once

#include <span>
#include <vector>

#include "dualgeo/geometry.hpp"

namespace dualgeo {

// Convex hull vertices, counter-clockwise, starting at the lexicographic
// minimum. Strictly convex: collinear interior vertices and duplicate
// points are dropped. Degenerate inputs give 1 (single point) or 2
// (collinear set) vertices.
struct Hull {
    std::vector<Point2> vertices;
};

Hull convex_hull(std::span<const Point2> points);

// Lower and upper hull chains as indices into the input span, each ordered
// by ascending (x, y) and sharing the two extreme points. Duplicate input
// points keep their first index. Building block for both convex_hull and
// the envelope-by-duality construction.
struct ChainIndices {
    std::vector<int> lower;
    std::vector<int> upper;
};

ChainIndices monotone_chain_indices(std::span<const Point2> points);

} // namespace dualgeo
