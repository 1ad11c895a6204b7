#include "dualgeo/lifting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dualgeo/error.hpp"

namespace dualgeo {
namespace {

constexpr std::size_t kArrangementSiteCap = 2000;

void require_finite_point(const PointD& p, const char* what) {
    if (p.coords.empty()) {
        throw ValidationError(std::string(what) + " must have at least one coordinate");
    }
    for (double v : p.coords) {
        if (!std::isfinite(v)) {
            throw ValidationError(std::string(what) + " must be finite");
        }
    }
}

void require_query_range(std::size_t n, int k) {
    if (n == 0) {
        throw ValidationError("site set is empty");
    }
    if (k < 1 || static_cast<std::size_t>(k) > n) {
        throw ValidationError("k must be between 1 and the number of sites");
    }
}

struct RankedSite {
    int index = -1;
    double f = 0.0;   // height of the lifted plane at the query
    double sq = 0.0;  // squared Euclidean distance to the query
};

// Shared ranking kernel. knn_query and topmost_at must order sites with
// identical keys, or the two could disagree at a crossing abscissa.
std::vector<RankedSite> rank_sites(std::span<const PointD> sites, const PointD& query) {
    std::vector<RankedSite> ranked;
    ranked.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const PointD& site = sites[i];
        if (site.coords.size() != query.coords.size()) {
            throw ValidationError("site and query dimensions differ");
        }
        require_finite_point(site, "site");
        double sq = 0.0;
        for (std::size_t j = 0; j < site.coords.size(); ++j) {
            const double d = query.coords[j] - site.coords[j];
            sq += d * d;
        }
        const RankedSite entry{static_cast<int>(i),
                               f_eval(lift(site, static_cast<int>(i)), query), sq};
        ranked.push_back(entry);
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedSite& a, const RankedSite& b) {
        if (a.f != b.f) {
            return a.f > b.f;
        }
        if (a.sq != b.sq) {
            return a.sq < b.sq;
        }
        return a.index < b.index;
    });
    return ranked;
}

}  // namespace

LiftedPlane lift(const PointD& site, int site_index) {
    require_finite_point(site, "site");
    LiftedPlane plane;
    plane.site_index = site_index;
    plane.coeffs.reserve(site.coords.size());
    double sum_sq = 0.0;
    for (double p : site.coords) {
        plane.coeffs.push_back(2.0 * p);
        sum_sq += p * p;
    }
    plane.offset = -sum_sq;
    if (!std::isfinite(plane.offset)) {
        throw NumericError("lifted plane coefficients overflow");
    }
    return plane;
}

double f_eval(const LiftedPlane& plane, const PointD& x) {
    if (plane.coeffs.size() != x.coords.size()) {
        throw ValidationError("plane and point dimensions differ");
    }
    require_finite_point(x, "query point");
    double acc = 0.0;
    for (std::size_t i = 0; i < x.coords.size(); ++i) {
        acc += plane.coeffs[i] * x.coords[i];
    }
    return acc + plane.offset;
}

KnnResult knn_query(std::span<const PointD> sites, const PointD& query, int k) {
    require_query_range(sites.size(), k);
    require_finite_point(query, "query point");
    const std::vector<RankedSite> ranked = rank_sites(sites, query);
    KnnResult result;
    result.entries.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const RankedSite& r = ranked[static_cast<std::size_t>(i)];
        result.entries.push_back({r.index, std::sqrt(r.sq), r.f});
    }
    return result;
}

KnnResult knn_bruteforce(std::span<const PointD> sites, const PointD& query, int k) {
    require_query_range(sites.size(), k);
    require_finite_point(query, "query point");
    struct Item {
        int index;
        double sq;
    };
    std::vector<Item> items;
    items.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i].coords.size() != query.coords.size()) {
            throw ValidationError("site and query dimensions differ");
        }
        require_finite_point(sites[i], "site");
        double sq = 0.0;
        for (std::size_t j = 0; j < query.coords.size(); ++j) {
            const double d = query.coords[j] - sites[i].coords[j];
            sq += d * d;
        }
        items.push_back({static_cast<int>(i), sq});
    }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
        if (a.sq != b.sq) {
            return a.sq < b.sq;
        }
        return a.index < b.index;
    });
    KnnResult result;
    result.entries.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const Item& item = items[static_cast<std::size_t>(i)];
        const PointD& site = sites[static_cast<std::size_t>(item.index)];
        result.entries.push_back(
            {item.index, std::sqrt(item.sq), f_eval(lift(site, item.index), query)});
    }
    return result;
}

LineArrangement1D build_arrangement_1d(std::span<const PointD> sites) {
    if (sites.empty()) {
        throw ValidationError("site set is empty");
    }
    if (sites.size() > kArrangementSiteCap) {
        throw ValidationError("arrangement accepts at most 2000 sites");
    }
    LineArrangement1D arr;
    arr.sites.reserve(sites.size());
    arr.lines.reserve(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (sites[i].coords.size() != 1) {
            throw ValidationError("arrangement sites must be 1-dimensional");
        }
        require_finite_point(sites[i], "site");
        const LiftedPlane plane = lift(sites[i], static_cast<int>(i));
        arr.sites.push_back(sites[i]);
        arr.lines.push_back(Line2{plane.coeffs[0], plane.offset});
    }
    arr.events.reserve(sites.size() * (sites.size() - 1) / 2);
    for (std::size_t i = 0; i < arr.sites.size(); ++i) {
        for (std::size_t j = i + 1; j < arr.sites.size(); ++j) {
            const double pi = arr.sites[i].coords[0];
            const double pj = arr.sites[j].coords[0];
            // Equal sites lift to one line and make "k-th topmost" ambiguous.
            if (pi == pj) {
                throw ValidationError("duplicate sites are not allowed");
            }
            // z = 2*pi*x - pi^2 and z = 2*pj*x - pj^2 cross at the midpoint.
            arr.events.push_back((pi + pj) / 2.0);
        }
    }
    std::sort(arr.events.begin(), arr.events.end());
    return arr;
}

std::vector<int> topmost_at(const LineArrangement1D& arr, double x, int k) {
    require_query_range(arr.sites.size(), k);
    if (!std::isfinite(x)) {
        throw ValidationError("query abscissa must be finite");
    }
    PointD query;
    query.coords.push_back(x);
    const std::vector<RankedSite> ranked = rank_sites(arr.sites, query);
    std::vector<int> top;
    top.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        top.push_back(ranked[static_cast<std::size_t>(i)].index);
    }
    return top;
}

}  // namespace dualgeo
