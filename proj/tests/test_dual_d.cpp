#include "doctest.h"

#include <cmath>

#include "dualgeo/dual_d.hpp"
#include "dualgeo/error.hpp"
#include "test_util.hpp"

using namespace dualgeo;
using namespace dualgeo::testutil;

namespace {

DualParamsD random_params_d(std::mt19937_64& rng, int d) {
    DualParamsD params;
    for (int i = 0; i < d; ++i) params.a.push_back(signed_magnitude(rng));
    return params;
}

PointD random_point_d(std::mt19937_64& rng, int d, double extent = 20.0) {
    PointD p;
    for (int i = 0; i < d; ++i) p.coords.push_back(uniform(rng, -extent, extent));
    return p;
}

HyperplaneD random_hyperplane_d(std::mt19937_64& rng, int d, double extent = 20.0) {
    HyperplaneD h;
    for (int i = 0; i < d - 1; ++i) h.m.push_back(uniform(rng, -extent, extent));
    h.c = uniform(rng, -extent, extent);
    return h;
}

double signed_residual(const PointD& p, const HyperplaneD& h) {
    double acc = h.c;
    for (std::size_t i = 0; i < h.m.size(); ++i) acc += h.m[i] * p.coords[i];
    return p.coords.back() - acc;
}

} // namespace

TEST_CASE("point duals expand coefficientwise") {
    const HyperplaneD h =
        dual_point_d(PointD{{1, 2, 3}}, DualParamsD{{1, 1, -1}});
    CHECK_EQ(h.m, std::vector<double>{1, 2});
    CHECK_EQ(h.c, -3.0);

    const HyperplaneD p13 =
        dual_point_d(PointD{{1, 0, 4}}, preset_d(DPreset::EdelsbrunnerP13, 3));
    CHECK_EQ(p13.m, std::vector<double>{2, 0});
    CHECK_EQ(p13.c, -4.0);

    const HyperplaneD zero =
        dual_point_d(PointD{{0, 0, 0}}, DualParamsD{{3, -2, 5}});
    CHECK_EQ(zero.m, std::vector<double>{0, 0});
    CHECK_EQ(zero.c, 0.0);
}

TEST_CASE("hyperplane duals follow the derived coordinates") {
    const DualParamsD params{{1, 1, -1}};
    const PointD p = dual_hyperplane_d(HyperplaneD{{2, 0}, 5.0}, params);
    CHECK_EQ(p.coords, std::vector<double>{2, 0, -5});

    // Dualizing again returns the original hyperplane: a_d = -1.
    const HyperplaneD back = dual_point_d(p, params);
    CHECK_EQ(back.m, std::vector<double>{2, 0});
    CHECK_EQ(back.c, 5.0);

    const PointD q = dual_hyperplane_d(HyperplaneD{{1, 1}, 0.0}, DualParamsD{{1, 1, 1}});
    CHECK_EQ(q.coords, std::vector<double>{-1, -1, 0});
}

TEST_CASE("presets expand for any dimension") {
    CHECK_EQ(preset_d(DPreset::EdelsbrunnerP13, 3).a, std::vector<double>{2, 2, -1});
    CHECK_EQ(preset_d(DPreset::EdelsbrunnerP4, 2).a, std::vector<double>{1, -1});
    CHECK_EQ(preset_d(DPreset::EdelsbrunnerP13, 2).a, std::vector<double>{2, -1});
    CHECK_EQ(preset_d(DPreset::EdelsbrunnerP4, 5).a,
             std::vector<double>{1, 1, 1, 1, -1});
    CHECK_THROWS_AS(preset_d(DPreset::EdelsbrunnerP4, 1), ValidationError);
}

TEST_CASE("coefficient vectors are validated") {
    CHECK_THROWS_AS(validate(DualParamsD{{1.0}}), ValidationError);
    CHECK_THROWS_AS(validate(DualParamsD{{1.0, 0.0}}), ValidationError);
    CHECK_THROWS_AS(validate(DualParamsD{{1.0, std::nan("")}}), ValidationError);
    CHECK_NOTHROW(validate(DualParamsD{{-0.5, 2.0, 1.0}}));
    CHECK_THROWS_AS(dual_point_d(PointD{{1, 2}}, DualParamsD{{1, 1, -1}}),
                    ValidationError); // dimension mismatch
    CHECK_THROWS_AS(dual_hyperplane_d(HyperplaneD{{1, 1}, 0.0}, DualParamsD{{1, -1}}),
                    ValidationError);
    CHECK_THROWS_AS(vertical_distance_d(PointD{{1, 2, 3}}, HyperplaneD{{1}, 0.0}),
                    ValidationError);
}

TEST_CASE("classification tracks the last coefficient") {
    const DualityClassD p13 = classify_d(DualParamsD{{2, 2, -1}});
    CHECK(p13.is_involution);
    CHECK_EQ(p13.order, Order::Reversing);
    CHECK_EQ(p13.vertical_scale, 1.0);

    const DualityClassD ones = classify_d(DualParamsD{{1, 1, 1}});
    CHECK_FALSE(ones.is_involution);
    CHECK_EQ(ones.order, Order::Preserving);
    CHECK_EQ(ones.vertical_scale, 1.0);

    const DualityClassD stretched = classify_d(DualParamsD{{1, 1, -2}});
    CHECK_FALSE(stretched.is_involution);
    CHECK_EQ(stretched.order, Order::Reversing);
    CHECK_EQ(stretched.vertical_scale, 2.0);

    auto rng = make_rng(401);
    for (int iter = 0; iter < 1000; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const DualityClassD cls = classify_d(random_params_d(rng, d));
        CHECK_FALSE((cls.is_involution && cls.order == Order::Preserving));
    }
}

TEST_CASE("relative position in d dimensions") {
    const HyperplaneD flat{{0, 0}, 0.0};
    CHECK_EQ(relative_position_d(PointD{{0, 0, 1}}, flat), RelPos::Above);
    CHECK_EQ(relative_position_d(PointD{{0, 0, -1}}, flat), RelPos::Below);
    CHECK_EQ(relative_position_d(PointD{{3, 4, 0}}, flat), RelPos::On);
    CHECK_EQ(relative_position_d(PointD{{1, 1, 5}}, HyperplaneD{{2, 3}, 0.0}),
             RelPos::On);
}

TEST_CASE("incidence survives dualization in every dimension") {
    auto rng = make_rng(402);
    for (int iter = 0; iter < 1500; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const DualParamsD params = random_params_d(rng, d);
        const HyperplaneD h = random_hyperplane_d(rng, d);
        PointD p = random_point_d(rng, d);
        p.coords.back() = -signed_residual(p, h) + p.coords.back(); // place on h

        const PointD dual_h = dual_hyperplane_d(h, params);
        const HyperplaneD dual_p = dual_point_d(p, params);
        const double residual = signed_residual(dual_h, dual_p);
        CHECK_LE(std::abs(residual), 1e-9 * (1.0 + std::abs(params.a.back())));
    }
}

TEST_CASE("dual residuals scale by minus the last coefficient") {
    auto rng = make_rng(403);
    const Tolerance tol;
    for (int iter = 0; iter < 1500; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const DualParamsD params = random_params_d(rng, d);
        const double ad = params.a.back();
        const PointD p = random_point_d(rng, d);
        const HyperplaneD h = random_hyperplane_d(rng, d);

        const double rho = signed_residual(p, h);
        const double rho_dual =
            signed_residual(dual_hyperplane_d(h, params), dual_point_d(p, params));

        double scale = std::abs(ad) * (std::abs(p.coords.back()) + std::abs(h.c));
        for (std::size_t i = 0; i + 1 < p.coords.size(); ++i) {
            scale += std::abs(ad * h.m[i] * p.coords[i]);
        }
        CHECK(tol.is_zero(rho_dual + ad * rho, scale));

        // Public distance helper: dual distance = |a_d| * primal distance.
        const double vd = vertical_distance_d(p, h);
        const double vd_dual =
            vertical_distance_d(dual_hyperplane_d(h, params), dual_point_d(p, params));
        CHECK_LE(std::abs(vd_dual - std::abs(ad) * vd), 1e-9 * std::max(1.0, vd_dual));
    }
}

TEST_CASE("above/below flips exactly when the last coefficient is positive") {
    auto rng = make_rng(404);
    int checked = 0;
    for (int iter = 0; iter < 4000 && checked < 1500; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const DualParamsD params = random_params_d(rng, d);
        const PointD p = random_point_d(rng, d);
        const HyperplaneD h = random_hyperplane_d(rng, d);
        if (vertical_distance_d(p, h) < 1e-6) continue;
        ++checked;

        const RelPos primal = relative_position_d(p, h);
        const RelPos dual = relative_position_d(dual_hyperplane_d(h, params),
                                                dual_point_d(p, params));
        REQUIRE_NE(primal, RelPos::On);
        if (params.a.back() > 0.0) {
            CHECK_EQ(dual, primal == RelPos::Above ? RelPos::Below : RelPos::Above);
        } else {
            CHECK_EQ(dual, primal);
        }
    }
    CHECK_EQ(checked, 1500);
}

TEST_CASE("frozen vertical distance example") {
    const PointD p{{1, 1, 1}};
    const HyperplaneD h{{1, 1}, 3.0};
    CHECK_EQ(vertical_distance_d(p, h), 4.0);

    const DualParamsD params{{1, 1, -2}};
    const double dual_distance =
        vertical_distance_d(dual_hyperplane_d(h, params), dual_point_d(p, params));
    CHECK_EQ(dual_distance, 8.0);
}

TEST_CASE("double application is the identity exactly at a_d = -1") {
    auto rng = make_rng(405);
    for (int iter = 0; iter < 800; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        DualParamsD params = random_params_d(rng, d);
        params.a.back() = -1.0;
        const HyperplaneD h = random_hyperplane_d(rng, d);
        const HyperplaneD back = dual_point_d(dual_hyperplane_d(h, params), params);
        for (std::size_t i = 0; i < h.m.size(); ++i) {
            CHECK_LE(std::abs(back.m[i] - h.m[i]),
                     1e-12 * std::max(1.0, std::abs(h.m[i])));
        }
        CHECK_LE(std::abs(back.c - h.c), 1e-12 * std::max(1.0, std::abs(h.c)));
    }
}

TEST_CASE("witness hyperplane moves when a_d differs from -1") {
    auto rng = make_rng(406);
    int tested = 0;
    for (int iter = 0; iter < 3000 && tested < 500; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const DualParamsD params = random_params_d(rng, d);
        if (std::abs(params.a.back() + 1.0) < 0.1) continue;
        ++tested;

        HyperplaneD witness;
        witness.m.assign(static_cast<std::size_t>(d - 1), 1.0);
        witness.c = 1.0;
        const HyperplaneD back =
            dual_point_d(dual_hyperplane_d(witness, params), params);
        // m_i returns as -a_d*m_i and c as a_d^2*c; at least one of them
        // must move: |a_d + 1| >= 0.1 bounds the slope displacement below.
        double moved = std::abs(back.c - witness.c);
        for (std::size_t i = 0; i < witness.m.size(); ++i) {
            moved = std::max(moved, std::abs(back.m[i] - witness.m[i]));
        }
        CHECK_GE(moved, 0.01);
    }
    CHECK_EQ(tested, 500);
}

TEST_CASE("parallel hyperplanes share every dual coordinate but the last") {
    auto rng = make_rng(407);
    for (int iter = 0; iter < 500; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const DualParamsD params = random_params_d(rng, d);
        const HyperplaneD h1 = random_hyperplane_d(rng, d);
        HyperplaneD h2 = h1;
        h2.c = uniform(rng, -20.0, 20.0);

        const PointD p1 = dual_hyperplane_d(h1, params);
        const PointD p2 = dual_hyperplane_d(h2, params);
        for (std::size_t i = 0; i + 1 < p1.coords.size(); ++i) {
            CHECK_EQ(p1.coords[i], p2.coords[i]);
        }
        const double gap = std::abs(p1.coords.back() - p2.coords.back());
        const double want = std::abs(params.a.back()) * std::abs(h1.c - h2.c);
        CHECK_LE(std::abs(gap - want), 1e-12 * std::max(1.0, want));
    }
}

TEST_CASE("the 2d specialization coincides with the planar family") {
    auto rng = make_rng(408);
    for (int iter = 0; iter < 800; ++iter) {
        const double a1 = signed_magnitude(rng);
        const double a2 = signed_magnitude(rng);
        const DualParamsD dparams{{a1, a2}};
        const DualParams induced{a1, -a2 / a1};

        const Point2 p = random_point(rng, 20.0);
        const Line2 planar = dual_point(p, induced);
        const HyperplaneD lifted = dual_point_d(PointD{{p.x, p.y}}, dparams);
        CHECK_LE(std::abs(lifted.m[0] - planar.m), 1e-12 * std::max(1.0, std::abs(planar.m)));
        CHECK_LE(std::abs(lifted.c - planar.c), 1e-12 * std::max(1.0, std::abs(planar.c)));

        const Line2 line = random_line(rng, 20.0);
        const Point2 planar_pt = dual_line(line, induced);
        const PointD lifted_pt = dual_hyperplane_d(HyperplaneD{{line.m}, line.c}, dparams);
        CHECK_LE(std::abs(lifted_pt.coords[0] - planar_pt.x),
                 1e-12 * std::max(1.0, std::abs(planar_pt.x)));
        CHECK_LE(std::abs(lifted_pt.coords[1] - planar_pt.y),
                 1e-12 * std::max(1.0, std::abs(planar_pt.y)));

        const DualityClassD dcls = classify_d(dparams);
        const DualityClass cls = classify(induced);
        CHECK_EQ(dcls.is_involution, cls.is_involution);
        CHECK_EQ(dcls.order, cls.order);
        CHECK_LE(std::abs(dcls.vertical_scale - cls.vertical_scale),
                 1e-12 * std::max(1.0, cls.vertical_scale));
    }
}

TEST_CASE("polar duality in d dimensions") {
    const NormalizedHyperplane h = polar_dual_d(PointD{{1, 2}});
    CHECK_EQ(h.n, std::vector<double>{1, 2});
    CHECK(on_normalized_hyperplane(PointD{{1, 0}}, h));
    CHECK_EQ(polar_dual_d_inverse(h).coords, std::vector<double>{1, 2});

    CHECK_THROWS_AS(polar_dual_d(PointD{{0, 0, 0}}), ValidationError);
    CHECK_THROWS_AS(polar_dual_d_inverse(NormalizedHyperplane{{0, 0}}),
                    ValidationError);

    // Incidence is symmetric: Q on polar(P) iff P on polar(Q).
    auto rng = make_rng(409);
    for (int iter = 0; iter < 500; ++iter) {
        const int d = 2 + static_cast<int>(uniform(rng, 0.0, 5.0));
        const PointD p = random_point_d(rng, d, 5.0);
        const PointD q = random_point_d(rng, d, 5.0);
        CHECK_EQ(on_normalized_hyperplane(q, polar_dual_d(p)),
                 on_normalized_hyperplane(p, polar_dual_d(q)));
    }
}
