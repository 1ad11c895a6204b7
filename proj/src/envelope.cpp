#include "dualgeo/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dualgeo/error.hpp"
#include "dualgeo/hull.hpp"

namespace dualgeo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collapse every equal-slope group to its dominant member: max intercept
// for an upper envelope, min for a lower one. Exact (m, c) ties keep the
// lowest input index. The result is ordered by ascending slope.
std::vector<int> filter_dominant(std::span<const Line2> lines, bool want_upper) {
    std::vector<int> order(lines.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (lines[a].m != lines[b].m) return lines[a].m < lines[b].m;
        if (lines[a].c != lines[b].c) return lines[a].c < lines[b].c;
        return a < b;
    });

    std::vector<int> kept;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && lines[order[j + 1]].m == lines[order[i]].m) ++j;
        if (want_upper) {
            std::size_t k = j;
            while (k > i && lines[order[k - 1]].c == lines[order[j]].c) --k;
            kept.push_back(order[k]);
        } else {
            kept.push_back(order[i]);
        }
        i = j + 1;
    }
    return kept;
}

Envelope envelope_impl(std::span<const Line2> lines, const DualParams& params,
                       bool want_upper) {
    if (lines.empty()) throw ValidationError("envelope of an empty line set");
    validate(params);
    for (const Line2& line : lines) {
        if (!is_finite(line)) throw ValidationError("envelope input line must be finite");
    }

    std::vector<int> kept = filter_dominant(lines, want_upper);

    Envelope env;
    if (kept.size() == 1) {
        env.pieces.push_back({lines[kept[0]], -kInf, kInf, kept[0]});
        return env;
    }

    std::vector<Point2> duals;
    duals.reserve(kept.size());
    for (int idx : kept) duals.push_back(dual_line(lines[idx], params));

    // The envelope's support set is one hull chain of the dual points;
    // which chain depends only on sign(alpha*mu).
    ChainIndices chains = monotone_chain_indices(duals);
    const double product = params.alpha * params.mu;
    const bool use_lower = want_upper ? (product > 0.0) : (product < 0.0);
    const std::vector<int>& chain = use_lower ? chains.lower : chains.upper;

    std::vector<int> support;
    support.reserve(chain.size());
    for (int k : chain) support.push_back(kept[static_cast<std::size_t>(k)]);
    std::sort(support.begin(), support.end(), [&](int a, int b) {
        return want_upper ? lines[a].m < lines[b].m : lines[a].m > lines[b].m;
    });

    env.pieces.reserve(support.size());
    double prev = -kInf;
    for (std::size_t k = 0; k < support.size(); ++k) {
        double hi = kInf;
        if (k + 1 < support.size()) {
            hi = line_intersection(lines[support[k]], lines[support[k + 1]]).x;
            if (!(hi > prev)) throw InternalError("envelope breakpoints out of order");
        }
        env.pieces.push_back({lines[support[k]], prev, hi, support[k]});
        prev = hi;
    }
    return env;
}

} // namespace

const EnvelopePiece& Envelope::piece_at(double x) const {
    if (pieces.empty()) throw ValidationError("piece lookup on an empty envelope");
    if (!std::isfinite(x)) throw ValidationError("piece lookup needs a finite x");
    // Breakpoints belong to the piece on their left; both sides agree there.
    std::size_t lo = 0;
    std::size_t hi = pieces.size() - 1;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (pieces[mid].x_hi < x) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    return pieces[lo];
}

double Envelope::value_at(double x) const { return piece_at(x).line.value_at(x); }

Envelope upper_envelope(std::span<const Line2> lines, const DualParams& params) {
    return envelope_impl(lines, params, true);
}

Envelope lower_envelope(std::span<const Line2> lines, const DualParams& params) {
    return envelope_impl(lines, params, false);
}

bool is_on_hull_via_dual(const Point2& p, std::span<const Point2> points,
                         const DualParams& params) {
    validate(params);
    if (points.empty()) throw ValidationError("hull membership over an empty point set");
    bool member = false;
    for (const Point2& q : points) member = member || (q.x == p.x && q.y == p.y);
    if (!member) throw ValidationError("query point must be one of the input points");

    std::vector<Line2> duals;
    duals.reserve(points.size());
    for (const Point2& q : points) duals.push_back(dual_point(q, params));

    // A hull vertex shows up on exactly one of the two envelopes (both for
    // the extreme-x vertices), so probe both and compare coordinates; exact
    // duplicates may have been collapsed to a different index.
    for (bool upper : {true, false}) {
        Envelope env = upper ? upper_envelope(duals, params) : lower_envelope(duals, params);
        for (const EnvelopePiece& piece : env.pieces) {
            const Point2& q = points[static_cast<std::size_t>(piece.source)];
            if (q.x == p.x && q.y == p.y) return true;
        }
    }
    return false;
}

} // namespace dualgeo
