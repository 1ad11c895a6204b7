#pragma once

#include <span>
#include <vector>

#include "dualgeo/dual.hpp"
#include "dualgeo/geometry.hpp"

namespace dualgeo {

struct EnvelopePiece {
    Line2 line;
    double x_lo = 0.0; // -inf on the first piece
    double x_hi = 0.0; // +inf on the last piece
    int source = -1;   // index into the input line list, -1 if synthetic
};

// Piecewise-linear upper or lower envelope of a line set. Pieces partition
// the real axis in ascending x order; adjacent pieces meet at their lines'
// intersection. Along the sequence, slopes strictly increase for an upper
// envelope and strictly decrease for a lower envelope.
struct Envelope {
    std::vector<EnvelopePiece> pieces;

    bool empty() const { return pieces.empty(); }
    const EnvelopePiece& piece_at(double x) const;
    double value_at(double x) const;
};

// Pointwise max (upper) / min (lower) of the lines, computed through
// duality: dualize the lines to points, take the convex hull, and read the
// envelope off the hull chain selected by sign(alpha*mu). Among lines of
// equal slope only the dominant one survives (max c for upper, min c for
// lower). Any valid transform gives the same envelope; Berg is the default.
Envelope upper_envelope(std::span<const Line2> lines,
                        const DualParams& params = preset(DualPreset::BergEtAl));
Envelope lower_envelope(std::span<const Line2> lines,
                        const DualParams& params = preset(DualPreset::BergEtAl));

// True iff p is a vertex of the convex hull of S, decided entirely in dual
// space: p's dual line must carry a piece of the upper or the lower
// envelope of the dual lines of S. With alpha*mu > 0 the lower envelope
// corresponds to the upper hull chain and vice versa; alpha*mu < 0 swaps
// the pairing. Requires p to be an element of S.
bool is_on_hull_via_dual(const Point2& p, std::span<const Point2> points,
                         const DualParams& params);

} // namespace dualgeo
