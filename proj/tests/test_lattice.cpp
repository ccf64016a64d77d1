#include "horolab/lattice.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace horolab;

namespace {

std::mt19937_64 rng(424242);

Point random_point(double log_r_lo, double log_r_hi, double box = 2.0) {
    std::uniform_real_distribution<double> zu(-box, box), ru(log_r_lo, log_r_hi);
    return Point(cplx(zu(rng), zu(rng)), std::exp(ru(rng)));
}

}  // namespace

TEST_CASE("ring arithmetic in O_d") {
    for (int d : {1, 2, 3, 7, 11}) {
        auto ctx = BianchiContext::bianchi(d);
        CHECK(std::abs(ctx.covolume() * ctx.cusp_scale() * ctx.cusp_scale() - 1.0) < 1e-12);
        // norm is multiplicative on a few random pairs
        std::uniform_int_distribution<long long> u(-9, 9);
        for (int i = 0; i < 50; ++i) {
            OdInt a{u(rng), u(rng)}, b{u(rng), u(rng)};
            CHECK(ctx.norm(ctx.mul(a, b)) == ctx.norm(a) * ctx.norm(b));
            cplx va = ctx.value(a), vb = ctx.value(b);
            CHECK(std::abs(ctx.value(ctx.mul(a, b)) - va * vb) < 1e-9);
            CHECK(std::abs(ctx.value(ctx.conj(a)) - std::conj(va)) < 1e-12);
        }
        // nearest is within the unit covering radius (Euclidean gcd works)
        std::uniform_real_distribution<double> w(-5.0, 5.0);
        for (int i = 0; i < 200; ++i) {
            cplx p(w(rng), w(rng));
            CHECK(std::abs(p - ctx.value(ctx.nearest(p))) < 1.0);
        }
    }
    auto gauss = BianchiContext::bianchi(1);
    CHECK(gauss.coprime({0, 0}, {1, 0}));
    CHECK(!gauss.coprime({0, 0}, {2, 0}));
    CHECK(!gauss.coprime({2, 0}, {1, 1}));  // 2 = -i (1+i)^2
    CHECK(gauss.coprime({3, 0}, {5, 0}));
    CHECK(gauss.units().size() == 4);
    CHECK(BianchiContext::bianchi(3).units().size() == 6);
    CHECK(BianchiContext::bianchi(7).units().size() == 2);
}

TEST_CASE("invariant height: Picard examples") {
    auto ctx = BianchiContext::bianchi(1);
    SUBCASE("identity gives 1, with the enumeration oracle agreeing") {
        auto h = invariant_height(ctx, GroupElement::identity());
        CHECK(h.value == doctest::Approx(1.0).epsilon(1e-13));
        auto bf = invariant_height_bruteforce(ctx, Point::j(), 3.0);
        CHECK(bf.value == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("a_t with e^t = 5 gives 5") {
        auto h = invariant_height(ctx, GroupElement::a_t(std::log(5.0)));
        CHECK(h.value == doctest::Approx(5.0).epsilon(1e-13));
    }
    SUBCASE("a_t with e^t = 1/10 gives 10 via the pair (1, 0)") {
        auto h = invariant_height(ctx, GroupElement::a_t(std::log(0.1)));
        CHECK(h.value == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(ctx.norm(h.c) == 1);
        CHECK(h.d.is_zero());
        auto bf = invariant_height_bruteforce(ctx, Point(cplx(0.0), 0.1), 12.0);
        CHECK(bf.value == doctest::Approx(h.value).epsilon(1e-12));
        CHECK(!bf.boundary_flag);
    }
    SUBCASE("n_{1/2} keeps height 1") {
        auto bf = invariant_height_bruteforce(ctx, Point(cplx(0.5, 0.0), 1.0), 3.0);
        CHECK(bf.value == doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("height equals r for r >= 1") {
        std::uniform_real_distribution<double> zu(-3.0, 3.0), ru(1.0, 60.0);
        for (int i = 0; i < 200; ++i) {
            double r = ru(rng);
            auto h = invariant_height(ctx, Point(cplx(zu(rng), zu(rng)), r));
            CHECK(h.value == doctest::Approx(r).epsilon(1e-12));
        }
    }
}

TEST_CASE("invariant height is Gamma-invariant") {
    auto ctx = BianchiContext::bianchi(1);
    std::vector<GroupElement> gammas = {
        GroupElement::s(), GroupElement::n_z(cplx(1.0, 0.0)), GroupElement::n_z(cplx(0.0, 1.0)),
        GroupElement::s() * GroupElement::n_z(cplx(2.0, -1.0)),
        GroupElement::n_z(cplx(-1.0, 1.0)) * GroupElement::s() * GroupElement::n_z(cplx(0.0, 3.0))};
    for (int i = 0; i < 100; ++i) {
        Point p = random_point(-3.0, 3.0);
        double y = invariant_height(ctx, p).value;
        for (const auto& g : gammas) {
            double yg = invariant_height(ctx, act(g, p)).value;
            CHECK(std::abs(yg - y) / y < 1e-10);
        }
    }
}

TEST_CASE("reduction equals brute force on random points, all five rings") {
    for (int d : {1, 2, 3, 7, 11}) {
        auto ctx = BianchiContext::bianchi(d);
        for (int i = 0; i < 60; ++i) {
            Point p = random_point(-4.0, 4.0);
            auto smart = invariant_height(ctx, p);
            double radius = 1.0 / p.r + 2.0;
            auto bf = invariant_height_bruteforce(ctx, p, radius);
            CHECK(!bf.boundary_flag);
            CHECK(std::abs(smart.value - bf.value) / bf.value < 1e-10);
        }
    }
}

TEST_CASE("height translate bounds suite") {
    auto ctx = BianchiContext::bianchi(1);
    auto rep = height_translate_bounds_suite(ctx, 2000, 7);
    CHECK(rep.ok());
    CHECK(rep.samples == 2000);
    CHECK(rep.max_ratio_a_translate <= 1.0 + 1e-9);
    CHECK(rep.max_ratio_n_sharp <= 1.0 + 1e-9);
    // The constant-1 form of the n_z bound can be exceeded, but never past
    // the 4/3 gap between (1+|z|^2) and the sharp factor.
    CHECK(rep.max_ratio_n_printed <= 4.0 / 3.0 + 1e-9);
    CHECK(rep.max_conjugation_mismatch < 1e-8);
}

TEST_CASE("sharp n-translate factor") {
    CHECK(n_translate_sharp_factor(cplx(0.0)) == doctest::Approx(1.0));
    // largest gap over (1+|z|^2) sits at |z|^2 = 1/2
    double z2 = 0.5;
    double gap = n_translate_sharp_factor(cplx(std::sqrt(z2), 0.0)) / (1.0 + z2);
    CHECK(gap == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    for (double s : {0.05, 0.2, 0.8, 2.0, 11.0}) {
        double g2 = n_translate_sharp_factor(cplx(std::sqrt(s), 0.0)) / (1.0 + s);
        CHECK(g2 <= 4.0 / 3.0 + 1e-12);
        CHECK(g2 >= 1.0 - 1e-12);
    }
}

TEST_CASE("cocompact context has constant height 1") {
    auto ctx = BianchiContext::cocompact();
    CHECK(invariant_height(ctx, random_point(-2.0, 2.0)).value == 1.0);
    auto rep = height_translate_bounds_suite(ctx, 50, 3);
    CHECK(rep.ok());
}

TEST_CASE("horoball decomposition") {
    auto ctx = BianchiContext::bianchi(1);
    SUBCASE("threshold below sqrt(2/sqrt(3)) is rejected") {
        CHECK_THROWS_AS(horoball_decomposition(ctx, 1.0, {-1, 1, -1, 1, 0.5, 3.0}),
                        std::invalid_argument);
    }
    SUBCASE("window touching the boundary is rejected") {
        CHECK_THROWS_AS(horoball_decomposition(ctx, 2.0, {-1, 1, -1, 1, 0.0, 3.0}),
                        std::invalid_argument);
    }
    SUBCASE("window around j contains the infinity piece; balls are disjoint") {
        auto balls = horoball_decomposition(ctx, 2.0, {-0.6, 0.6, -0.2, 0.7, 0.05, 3.0});
        bool has_inf = false;
        for (const auto& b : balls)
            if (b.at_infinity) {
                has_inf = true;
                CHECK(b.diameter == doctest::Approx(2.0));
            }
        CHECK(has_inf);
        CHECK(balls.size() > 1);
        for (size_t i = 0; i < balls.size(); ++i) {
            for (size_t j = i + 1; j < balls.size(); ++j) {
                const auto &a = balls[i], &b = balls[j];
                if (a.at_infinity || b.at_infinity) {
                    const auto& fin = a.at_infinity ? b : a;
                    const auto& inf = a.at_infinity ? a : b;
                    CHECK(fin.diameter <= inf.diameter + 1e-12);
                } else {
                    // Euclidean tangency test for balls tangent to the boundary
                    CHECK(std::norm(a.base - b.base) >= a.diameter * b.diameter - 1e-12);
                }
            }
        }
    }
    SUBCASE("ball based at 0 with diameter 1/2, membership matches the height") {
        auto balls = horoball_decomposition(ctx, 2.0, {-0.3, 0.3, -0.3, 0.3, 0.01, 0.4});
        bool found = false;
        for (const auto& b : balls)
            if (!b.at_infinity && std::abs(b.base) < 1e-12) {
                found = true;
                CHECK(b.diameter == doctest::Approx(0.5).epsilon(1e-12));
            }
        CHECK(found);
        // membership <-> invariant height > C on sample points in the window
        std::uniform_real_distribution<double> zu(-0.3, 0.3), ru(0.01, 0.4);
        int checked = 0;
        for (int i = 0; i < 100; ++i) {
            Point p(cplx(zu(rng), zu(rng)), ru(rng));
            double y = invariant_height(ctx, p).value;
            if (std::abs(y - 2.0) < 1e-6) continue;  // boundary of the region
            bool in_ball = false;
            for (const auto& b : balls) in_ball = in_ball || b.contains(p);
            CHECK(in_ball == (y > 2.0));
            ++checked;
        }
        CHECK(checked > 90);
    }
}

TEST_CASE("shimizu check") {
    CHECK(shimizu_check(cplx(1.0), cplx(1.0), cplx(1.0)));
    CHECK(!shimizu_check(cplx(0.5), cplx(1.0), cplx(1.0)));
    // cusp 0 of the d=1 lattice is reached by S, whose lower-left entry is 1
    CHECK(shimizu_check(GroupElement::s().c, cplx(1.0), cplx(1.0)));
}
