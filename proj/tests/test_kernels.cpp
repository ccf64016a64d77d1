#include "horolab/kernels.hpp"

#include "horolab/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace horolab::kernels;

namespace {

// Independent simplex-integral oracle: nested adaptive quadrature.
cplx nested_simplex(double x, std::vector<cplx> betas) {
    if (betas.empty()) return cplx(1.0);
    cplx beta = betas.front();
    std::vector<cplx> rest(betas.begin() + 1, betas.end());
    auto f = [&](double u) { return std::exp(beta * u) * nested_simplex(u, rest); };
    return horolab::quad::integrate_adaptive(f, 0.0, x, 1e-12).value;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * (1.0 + std::abs(b)); }

}  // namespace

TEST_CASE("representation parameter validation") {
    CHECK_THROWS(RepParams::complementary(0.0));
    CHECK_THROWS(RepParams::complementary(2.0));
    CHECK_THROWS(RepParams::principal(-1, 0.0));
    CHECK_THROWS(RepParams::principal(0, -1.0));
    CHECK(RepParams::principal(3, -2.5).cls == RepClass::principal_positive_n);
    CHECK(RepParams::principal(0, 1.0).cls == RepClass::principal_spherical);
    CHECK(RepParams::complementary(1.0).cls == RepClass::complementary);
}

TEST_CASE("casimir eigenvalues") {
    auto [l1a, l2a] = casimir_eigenvalues(RepParams::principal(0, 0.0));
    CHECK(std::abs(l1a - cplx(-1.0)) < 1e-15);
    CHECK(std::abs(l2a) < 1e-15);

    // nu = 2s - 2 for s in (1,2): lambda_1 = s(s-2)
    for (double s : {1.25, 1.5, 1.75}) {
        auto p = RepParams::complementary(2.0 * s - 2.0);
        auto [l1, l2] = casimir_eigenvalues(p);
        CHECK(std::abs(l1 - cplx(s * (s - 2.0))) < 1e-14);
        CHECK(std::abs(l2) < 1e-15);
    }

    auto [l1c, l2c] = casimir_eigenvalues(RepParams::principal(2, 0.0));
    CHECK(std::abs(l1c) < 1e-15);
    CHECK(std::abs(l2c) < 1e-15);
}

TEST_CASE("factored ODE polynomial matches the displayed coefficients") {
    // prod (x - alpha_i) = x^4 - 4x^3 + (5-l1)x^2 + 2(l1-1)x - (l1 + l2^2/4)
    for (auto p : {RepParams::principal(1, 0.7), RepParams::principal(3, 0.0),
                   RepParams::principal(2, -1.3)}) {
        auto a = p.alphas();
        auto [l1, l2] = casimir_eigenvalues(p);
        cplx e1 = a[0] + a[1] + a[2] + a[3];
        cplx e2 = a[0] * a[1] + a[0] * a[2] + a[0] * a[3] + a[1] * a[2] + a[1] * a[3] + a[2] * a[3];
        cplx e3 = a[0] * a[1] * a[2] + a[0] * a[1] * a[3] + a[0] * a[2] * a[3] + a[1] * a[2] * a[3];
        cplx e4 = a[0] * a[1] * a[2] * a[3];
        CHECK(std::abs(e1 - cplx(4.0)) < 1e-13);             // -e1 = -4, monic x^4
        CHECK(std::abs(e2 - (5.0 - l1)) < 1e-13);            // +e2
        CHECK(std::abs(-e3 - 2.0 * (l1 - 1.0)) < 1e-13);     // -e3
        CHECK(std::abs(e4 + (l1 + 0.25 * l2 * l2)) < 1e-13); // +e4 = -(l1 + l2^2/4)
    }
    // cubic case: prod_{i<4} (x - alpha_i) = x^3 - 3x^2 + (2-l1)x + l1
    for (auto p : {RepParams::principal(0, 1.1), RepParams::complementary(0.6)}) {
        auto a = p.alphas();
        auto [l1, l2] = casimir_eigenvalues(p);
        (void)l2;
        cplx e1 = a[0] + a[1] + a[2];
        cplx e2 = a[0] * a[1] + a[0] * a[2] + a[1] * a[2];
        cplx e3 = a[0] * a[1] * a[2];
        CHECK(std::abs(e1 - cplx(3.0)) < 1e-14);
        CHECK(std::abs(e2 - (2.0 - l1)) < 1e-14);
        CHECK(std::abs(-e3 - l1) < 1e-14);
    }
}

TEST_CASE("divided differences of exp") {
    SUBCASE("single and double nodes") {
        cplx a(0.3, -1.2), b(-0.8, 0.4);
        std::vector<cplx> one{a};
        CHECK(close(exp_divided_difference(one), std::exp(a), 1e-14));
        std::vector<cplx> two{a, b};
        CHECK(close(exp_divided_difference(two), (std::exp(a) - std::exp(b)) / (a - b), 1e-13));
    }
    SUBCASE("confluent nodes give derivative values") {
        cplx a(0.5, 0.2);
        std::vector<cplx> twice{a, a};
        CHECK(close(exp_divided_difference(twice), std::exp(a), 1e-13));
        std::vector<cplx> thrice{a, a, a};
        CHECK(close(exp_divided_difference(thrice), std::exp(a) / 2.0, 1e-13));
    }
    SUBCASE("near-confluent nodes stay stable") {
        cplx a(0.5, 0.0), eps(1e-9, 0.0);
        std::vector<cplx> nodes{a, a + eps, a - eps};
        CHECK(close(exp_divided_difference(nodes), std::exp(a) / 2.0, 1e-9));
    }
    SUBCASE("wide real spread") {
        std::vector<cplx> nodes{cplx(0.0), cplx(-50.0)};
        CHECK(close(exp_divided_difference(nodes), (1.0 - std::exp(-50.0)) / 50.0, 1e-13));
    }
}

TEST_CASE("simplex exponential integrals against nested quadrature") {
    std::vector<std::vector<cplx>> betas_list = {
        {cplx(0.4, 1.0)},
        {cplx(-0.5, 0.0), cplx(1.2, -0.3)},
        {cplx(0.0), cplx(0.0)},
        {cplx(-1.0, 2.0), cplx(0.5, -1.0), cplx(-2.0, 0.0)},
        {cplx(1e-7, 0.0), cplx(-2e-7, 0.0)},
    };
    for (const auto& betas : betas_list) {
        for (double x : {0.0, 0.3, 1.7, 4.0}) {
            cplx ours = simplex_exp_integral(x, betas);
            cplx ref = nested_simplex(x, betas);
            CHECK(close(ours, ref, 1e-9));
        }
    }
}

TEST_CASE("kernel F: structural examples") {
    SUBCASE("n = 0 vanishes at and below t = -T, continuously") {
        for (auto p : {RepParams::principal(0, 1.0), RepParams::complementary(0.7)}) {
            CHECK(kernel_F(p, 2.0, -2.0) == cplx(0.0));
            CHECK(kernel_F(p, 2.0, -3.5) == cplx(0.0));
            CHECK(std::abs(kernel_F(p, 2.0, -2.0 + 1e-8)) < 1e-6);
        }
    }
    SUBCASE("empty integration range at T = 0, t = 0") {
        for (auto p : {RepParams::principal(0, 1.0), RepParams::principal(2, 0.5),
                       RepParams::complementary(1.2)}) {
            CHECK(std::abs(kernel_F(p, 0.0, 0.0)) < 1e-15);
        }
    }
    SUBCASE("spherical nu = 0 closed form: F = -(T+t)^2 e^{-(T+t)} / 2") {
        auto p = RepParams::principal(0, 0.0);
        for (double T : {0.5, 2.0}) {
            for (double frac : {0.1, 0.5, 0.9}) {
                double t = -T * frac;
                double x = T + t;
                CHECK(close(kernel_F(p, T, t), cplx(-0.5 * x * x * std::exp(-x)), 1e-13));
            }
        }
    }
    SUBCASE("invalid ranges") {
        auto p = RepParams::principal(0, 1.0);
        CHECK_THROWS(kernel_F(p, -1.0, 0.0));
        CHECK_THROWS(kernel_F(p, 1.0, 0.5));
    }
}

TEST_CASE("kernel F case n > 0 against a direct triple-quadrature oracle") {
    auto p = RepParams::principal(1, 0.0);
    const double T = 1.0, t = -0.5;
    auto a = p.alphas();
    // F(T,t) = -e^{-a1 t - a4 T} Int_{max(t,-T)}^0 dt2 Int_{-T}^{t2} dt3
    //          Int_{-T}^{t3} dt4 e^{(a1-a2)t2 + (a2-a3)t3 + (a3-a4)t4}
    auto inner = [&](double t3) {
        return horolab::quad::integrate_adaptive(
                   [&](double t4) { return std::exp((a[2] - a[3]) * t4); }, -T, t3, 1e-12)
            .value;
    };
    auto mid = [&](double t2) {
        return horolab::quad::integrate_adaptive(
                   [&](double t3) { return std::exp((a[1] - a[2]) * t3) * inner(t3); }, -T, t2,
                   1e-11)
            .value;
    };
    cplx triple = horolab::quad::integrate_adaptive(
                      [&](double t2) { return std::exp((a[0] - a[1]) * t2) * mid(t2); },
                      std::max(t, -T), 0.0, 1e-10)
                      .value;
    cplx oracle = -std::exp(-a[0] * t - a[3] * T) * triple;
    CHECK(close(kernel_F(p, T, t), oracle, 1e-8));
    // frozen value from the oracle above
    CHECK(kernel_F(p, T, t).real() == doctest::Approx(-0.0670421319845064).epsilon(1e-8));
    CHECK(std::abs(kernel_F(p, T, t).imag()) < 1e-12);
}

TEST_CASE("kernel F_i trivial values") {
    for (auto p : {RepParams::principal(0, 1.0), RepParams::principal(1, 0.0),
                   RepParams::principal(4, 2.0), RepParams::complementary(0.3)}) {
        CHECK(close(kernel_Fi(p, 0.0, 0), cplx(1.0), 1e-14));
        CHECK(std::abs(kernel_Fi(p, 0.0, 1)) < 1e-14);
        CHECK(std::abs(kernel_Fi(p, 0.0, 2)) < 1e-14);
    }
}

TEST_CASE("kernel envelopes") {
    SUBCASE("stated forms and positivity") {
        auto p1 = RepParams::principal(2, 1.0);
        CHECK(kernel_envelope_F(p1, 1.0, -3.0) ==
              doctest::Approx(std::exp(0.0 * (1.0 - 3.0)) / 4.0));  // n=2: exponent 0
        CHECK(kernel_envelope_F(p1, 1.0, -0.5) > 0.0);
        auto p2 = RepParams::principal(0, 2.0);
        CHECK(kernel_envelope_F(p2, 1.0, -2.0) == 0.0);
        auto p3 = RepParams::complementary(0.5);
        double x = 1.2;  // T + t
        CHECK(kernel_envelope_F(p3, 2.0, x - 2.0) ==
              doctest::Approx(std::min(x, 2.0) * std::min(x, 2.0) *
                              std::exp((0.25 - 1.0) * x)));
    }
    SUBCASE("kernels live under a modest multiple of their envelopes") {
        std::vector<RepParams> reps = {RepParams::principal(1, 0.0), RepParams::principal(3, 2.0),
                                       RepParams::principal(0, 0.0), RepParams::principal(0, 3.0),
                                       RepParams::complementary(0.2),
                                       RepParams::complementary(1.7)};
        for (const auto& p : reps) {
            double sup = 0.0;
            for (double T : {0.25, 0.5, 1.0, 2.0, 4.0, 6.0}) {
                for (int k = 1; k < 40; ++k) {
                    double t = -T - 2.0 + (T + 2.0) * k / 40.0 * ((p.n > 0) ? 1.0 : 0.0) +
                               (p.n > 0 ? 0.0 : -T * (1.0 - k / 40.0));
                    if (t > 0) continue;
                    double env = kernel_envelope_F(p, T, t);
                    if (env <= 0) continue;
                    sup = std::max(sup, std::abs(kernel_F(p, T, t)) / env);
                }
                for (int i = 0; i < 3; ++i) {
                    double env = kernel_envelope_Fi(p, T, i);
                    sup = std::max(sup, std::abs(kernel_Fi(p, T, i)) / env);
                }
            }
            CHECK(sup > 0.0);
            CHECK(sup < 25.0);
        }
    }
}

TEST_CASE("degenerate-limit consistency: complementary nu -> 0 meets nu = 0") {
    auto p0 = RepParams::principal(0, 0.0);
    auto pe = RepParams::complementary(1e-6);
    for (double T : {0.5, 1.0, 3.0}) {
        for (double frac : {0.15, 0.5, 0.85}) {
            double t = -T * frac;
            cplx f0 = kernel_F(p0, T, t);
            cplx fe = kernel_F(pe, T, t);
            CHECK(std::abs(f0 - fe) <= 1e-4 * std::abs(f0));
        }
        for (int i = 0; i < 3; ++i) {
            cplx f0 = kernel_Fi(p0, T, i);
            cplx fe = kernel_Fi(pe, T, i);
            CHECK(std::abs(f0 - fe) <= 1e-4 * (std::abs(f0) + 1e-12));
        }
    }
}

TEST_CASE("ode oracle: zero forcing and zero data stay zero") {
    auto zero = [](double) { return cplx(0.0); };
    for (auto p : {RepParams::principal(0, 1.5), RepParams::principal(2, 1.0),
                   RepParams::complementary(0.9)}) {
        auto res = ode_oracle(p, zero, 2.0, {cplx(0.0), cplx(0.0), cplx(0.0)});
        CHECK(std::abs(res.value) < 1e-14);
    }
}

TEST_CASE("representation formula vs ode oracle: spot checks") {
    SUBCASE("case n=0, nu=i, forcing e^{2t}, zero data") {
        auto p = RepParams::principal(0, 1.0);
        auto forcing = [](double t) { return cplx(std::exp(2.0 * t)); };
        for (double T : {0.5, 1.0, 2.0}) {
            auto oracle = ode_oracle(p, forcing, T, {cplx(0.0), cplx(0.0), cplx(0.0)});
            auto formula = representation_formula(p, forcing, T, {cplx(0.0), cplx(0.0), cplx(0.0)});
            CHECK(std::abs(formula.value - oracle.value) <= 1e-8 * (1.0 + std::abs(oracle.value)));
        }
    }
    SUBCASE("case n=1, nu=0, decaying forcing, generic data") {
        auto p = RepParams::principal(1, 0.0);
        auto forcing = [](double t) { return cplx(std::exp(t) / (1.0 + t * t)); };
        std::array<cplx, 3> data{cplx(0.3, -0.1), cplx(-0.2, 0.4), cplx(0.05, 0.02)};
        for (double T : {0.5, 2.0}) {
            auto oracle = ode_oracle(p, forcing, T, data);
            auto formula = representation_formula(p, forcing, T, data);
            CHECK(std::abs(formula.value - oracle.value) <= 1e-7 * (1.0 + std::abs(oracle.value)));
        }
    }
}
