#include "horolab/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace horolab;

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
    for (int n : {2, 5, 16, 48}) {
        const auto& rule = quad::gauss_legendre(n);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        int degree = 2 * n - 1;
        double val = 0.0;
        for (int i = 0; i < n; ++i) val += rule.weights[i] * std::pow(rule.nodes[i], degree - 1);
        // Int_{-1}^{1} x^{2k} dx = 2/(2k+1); degree-1 is even
        CHECK(val == doctest::Approx(2.0 / degree).epsilon(1e-12));
    }
}

TEST_CASE("fixed-order helper") {
    double v = quad::gauss_legendre_integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 24);
    CHECK(v == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("adaptive gauss-kronrod") {
    SUBCASE("smooth integrand") {
        auto r = quad::integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 2.0);
        CHECK(r.value == doctest::Approx(std::exp(2.0) - 1.0).epsilon(1e-13));
    }
    SUBCASE("narrow spike triggers local bisection") {
        double eps = 1e-5;
        auto r = quad::integrate_adaptive(
            [&](double x) { return eps / (x * x + eps * eps); }, -1.0, 1.0, 1e-10);
        CHECK(r.value == doctest::Approx(2.0 * std::atan(1.0 / eps)).epsilon(1e-9));
    }
    SUBCASE("complex-valued integrand") {
        auto r = quad::integrate_adaptive(
            [](double x) { return std::exp(std::complex<double>(0.0, x)); }, 0.0, M_PI / 2);
        CHECK(std::abs(r.value - std::complex<double>(1.0, 1.0)) < 1e-12);
    }
    SUBCASE("refinement cap reported") {
        CHECK_THROWS_AS(quad::integrate_adaptive(
                            [](double x) { return x > 0 ? 1e300 * std::sin(1.0 / x) : 0.0; },
                            0.0, 1.0, 1e-15, 1e-300, 4),
                        quad::QuadratureError);
    }
}

TEST_CASE("tensor averages") {
    SUBCASE("rectangle: constants and moments") {
        auto one = [](std::complex<double>) { return 1.0; };
        CHECK(quad::rectangle_average(one, -0.3, 0.1, 2.0, 0.5, 12) ==
              doctest::Approx(1.0).epsilon(1e-14));
        auto f = [](std::complex<double> z) { return z.real() * z.real() * z.imag(); };
        // over [0,1]x[0,2]: mean of x^2 = 1/3, mean of y = 1
        CHECK(quad::rectangle_average(f, 0.0, 0.0, 1.0, 2.0, 16) ==
              doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    }
    SUBCASE("disk: radial moment") {
        auto f = [](std::complex<double> z) { return std::norm(z - std::complex<double>(0.4, -0.2)); };
        // mean of |z-c|^2 over a disk of radius rho about c is rho^2/2
        CHECK(quad::disk_average(f, std::complex<double>(0.4, -0.2), 1.5, 16) ==
              doctest::Approx(1.5 * 1.5 / 2.0).epsilon(1e-13));
    }
}
