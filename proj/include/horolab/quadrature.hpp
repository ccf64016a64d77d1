#pragma once

// Deterministic quadrature building blocks: Gauss-Legendre rules of arbitrary
// order, an adaptive Gauss-Kronrod 7/15 integrator, and tensor rules on
// rectangles and disks. All node sets are fixed by the inputs, so repeated
// runs produce identical results.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace horolab::quad {

struct Rule1D {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre rule by Newton iteration on the Legendre polynomial.
// Cached per order; map nodes are stable so returned references survive
// concurrent insertions.
inline const Rule1D& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    static std::map<int, Rule1D> cache;
    static std::mutex mtx;
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(n, std::move(rule)).first->second;
}

template <typename F>
auto gauss_legendre_integrate(F&& f, double a, double b, int order) {
    const Rule1D& rule = gauss_legendre(order);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    using R = decltype(f(a));
    R sum{};
    for (int i = 0; i < order; ++i) sum += R(rule.weights[i]) * f(mid + half * rule.nodes[i]);
    return R(half) * sum;
}

namespace detail {

// QUADPACK qk15 constants (positive half; Gauss nodes are the odd entries).
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename R, typename F>
void gk15(F& f, double a, double b, R& result, double& err, long& evals) {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    R fc = f(mid);
    R resk = R(kWgk[7]) * fc;
    R resg = R(kWg[3]) * fc;
    for (int j = 0; j < 7; ++j) {
        double dx = half * kXgk[j];
        R f1 = f(mid - dx), f2 = f(mid + dx);
        resk += R(kWgk[j]) * (f1 + f2);
        if (j % 2 == 1) resg += R(kWg[j / 2]) * (f1 + f2);
    }
    evals += 15;
    result = R(half) * resk;
    err = std::abs(half) * std::abs(resk - resg);
}

}  // namespace detail

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <typename R>
struct QuadResult {
    R value{};
    double error = 0.0;
    long evals = 0;
};

// Adaptive Gauss-Kronrod 7/15 by interval bisection. Intervals whose local
// error estimate exceeds their share of the tolerance are split; near-cusp
// spikes in the integrand therefore trigger local bisection automatically.
template <typename F>
auto integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                        double abs_tol = 1e-14, int max_depth = 48) {
    using R = decltype(f(a));
    QuadResult<R> out;
    struct Frame {
        double a, b;
        int depth;
    };

    // First pass to seed the global scale for the relative tolerance.
    R whole;
    double werr;
    detail::gk15(f, a, b, whole, werr, out.evals);
    double scale = std::abs(whole);

    std::function<void(double, double, R, double, int)> descend =
        [&](double lo, double hi, R val, double err, int depth) {
            double tol = std::max(abs_tol, rel_tol * std::max(scale, std::abs(out.value))) *
                         std::abs(hi - lo) / std::abs(b - a);
            if (err <= tol || err <= 1e-16 * std::abs(val)) {
                out.value += val;
                out.error += err;
                return;
            }
            if (depth >= max_depth)
                throw QuadratureError("adaptive quadrature failed to converge (interval [" +
                                      std::to_string(lo) + "," + std::to_string(hi) +
                                      "], local error " + std::to_string(err) + ")");
            double mid = 0.5 * (lo + hi);
            R v1, v2;
            double e1, e2;
            detail::gk15(f, lo, mid, v1, e1, out.evals);
            detail::gk15(f, mid, hi, v2, e2, out.evals);
            descend(lo, mid, v1, e1, depth + 1);
            descend(mid, hi, v2, e2, depth + 1);
        };
    descend(a, b, whole, werr, 0);
    return out;
}

// Tensor Gauss-Legendre average over an axis-aligned rectangle
// [x0, x0+w] x [y0, y0+h] in C, normalized by the area.
template <typename F>
double rectangle_average(F&& f, double x0, double y0, double w, double h, int order) {
    const Rule1D& rule = gauss_legendre(order);
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        double x = x0 + 0.5 * w * (1.0 + rule.nodes[i]);
        double row = 0.0;
        for (int j = 0; j < order; ++j) {
            double y = y0 + 0.5 * h * (1.0 + rule.nodes[j]);
            row += rule.weights[j] * f(std::complex<double>(x, y));
        }
        sum += rule.weights[i] * row;
    }
    return sum / 4.0;  // weights integrate to 2 per axis
}

// Area-average over a disk: Gauss-Legendre radially, uniform (spectrally
// accurate) rule in the angle.
template <typename F>
double disk_average(F&& f, std::complex<double> center, double radius, int order) {
    const Rule1D& rule = gauss_legendre(order);
    const int ntheta = 2 * order;
    double sum = 0.0;
    for (int i = 0; i < order; ++i) {
        double r = 0.5 * radius * (1.0 + rule.nodes[i]);
        double ring = 0.0;
        for (int j = 0; j < ntheta; ++j) {
            double th = 2.0 * M_PI * j / ntheta;
            ring += f(center + std::polar(r, th));
        }
        sum += rule.weights[i] * r * ring / ntheta;
    }
    return sum / radius;
}

}  // namespace horolab::quad
