#include "horolab/curve.hpp"

#include "horolab/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab {

namespace {

double circle_dist(double t1, double t2) {
    double d = std::abs(t1 - t2);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

}  // namespace

BoundaryCurve BoundaryCurve::rectangle(double w, double h, cplx corner) {
    if (!(w > 0) || !(h > 0)) throw std::invalid_argument("degenerate rectangle");
    BoundaryCurve c;
    c.kind_ = CurveKind::rectangle;
    c.corner_ = corner;
    c.w_ = w;
    c.h_ = h;
    c.length_ = 2.0 * (w + h);
    c.area_ = w * h;
    c.finalize();
    return c;
}

BoundaryCurve BoundaryCurve::disk(double radius, cplx center) {
    if (!(radius > 0)) throw std::invalid_argument("degenerate disk");
    BoundaryCurve c;
    c.kind_ = CurveKind::disk;
    c.center_ = center;
    c.radius_ = radius;
    c.length_ = 2.0 * M_PI * radius;
    c.area_ = M_PI * radius * radius;
    c.finalize();
    return c;
}

cplx BoundaryCurve::gamma(double t) const {
    t -= std::floor(t);
    if (kind_ == CurveKind::disk) return center_ + std::polar(radius_, 2.0 * M_PI * t);
    double s = t * length_;  // arc position, counterclockwise from the corner
    if (s <= w_) return corner_ + cplx(s, 0.0);
    s -= w_;
    if (s <= h_) return corner_ + cplx(w_, s);
    s -= h_;
    if (s <= w_) return corner_ + cplx(w_ - s, h_);
    s -= w_;
    return corner_ + cplx(0.0, h_ - s);
}

void BoundaryCurve::finalize() {
    if (kind_ == CurveKind::rectangle) {
        diam_ = std::hypot(w_, h_);
        double x = std::clamp(0.0, corner_.real(), corner_.real() + w_);
        double y = std::clamp(0.0, corner_.imag(), corner_.imag() + h_);
        z0_ = cplx(x, y);
    } else {
        diam_ = 2.0 * radius_;
        double a = std::abs(center_);
        z0_ = a <= radius_ ? cplx(0.0) : center_ * (1.0 - radius_ / a);
    }

    // Chord constant: numeric minimization of |gamma(t1)-gamma(t2)| / d(t1,t2)
    // over parameter pairs; coarse grid followed by local refinement.
    auto ratio = [&](double t1, double t2) {
        double dt = circle_dist(t1, t2);
        if (dt < 1e-14) return length_;  // limit |gamma'| on smooth arcs
        return std::abs(gamma(t1) - gamma(t2)) / dt;
    };
    const int n = 512;
    double best = length_;
    double b1 = 0.0, b2 = 0.5;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double v = ratio(double(i) / n, double(j) / n);
            if (v < best) {
                best = v;
                b1 = double(i) / n;
                b2 = double(j) / n;
            }
        }
    }
    double step = 1.0 / n;
    for (int level = 0; level < 24; ++level) {
        step *= 0.5;
        bool improved = true;
        while (improved) {
            improved = false;
            for (int di = -1; di <= 1; ++di) {
                for (int dj = -1; dj <= 1; ++dj) {
                    double v = ratio(b1 + di * step, b2 + dj * step);
                    if (v < best - 1e-15) {
                        best = v;
                        b1 += di * step;
                        b2 += dj * step;
                        improved = true;
                    }
                }
            }
        }
    }
    chord_ = best;
}

BoundaryIntegralResult boundary_height_integral(const BianchiContext& ctx,
                                                const GroupElement& g,
                                                const BoundaryCurve& curve, double s,
                                                double alpha,
                                                const BoundaryIntegralOptions& opts) {
    if (s < 0) throw std::invalid_argument("boundary integral requires s >= 0");
    if (alpha < 0 || alpha > 1) throw std::invalid_argument("alpha must lie in [0, 1]");

    BoundaryIntegralResult res;
    const double es = std::exp(-s);
    OdInt deepest_c{0, 0};
    bool deepest_at_infinity = true;
    auto integrand = [&](double t) {
        Point q = act(g, Point(curve.gamma(t) + cplx(0.0), es));
        HeightResult h = invariant_height(ctx, q);
        if (h.value > res.max_height) {
            res.max_height = h.value;
            deepest_c = h.c;
            deepest_at_infinity = h.c.is_zero();
        }
        return std::pow(h.value, alpha);
    };

    // Fixed segment tree: quarters of the parameter circle, each refined
    // independently; summation order is deterministic.
    const int segments = 4;
    for (int k = 0; k < segments; ++k) {
        auto piece = quad::integrate_adaptive(integrand, double(k) / segments,
                                              double(k + 1) / segments, opts.rel_tol,
                                              1e-14, opts.max_depth);
        res.value += piece.value;
        res.error_estimate += piece.error;
        res.evals += piece.evals;
    }
    res.value *= curve.arc_length();
    res.error_estimate *= curve.arc_length();

    // Diagnostic: diameter of the level-2 horoball the curve dipped into.
    if (res.max_height > 2.0) {
        res.delta_max = deepest_at_infinity
                            ? 2.0 / ctx.cusp_scale()
                            : ctx.cusp_scale() / (2.0 * std::norm(ctx.value(deepest_c)));
    }
    return res;
}

double prop6_bound(double L, double c, double R, double Y, double s) {
    return L * (1.0 + R * R) * (1.0 + Y) +
           (L * L / c) * (1.0 + std::log((1.0 + R) * (1.0 + Y)) + s);
}

double cor7_bound(double L, double c, double R, double Y, double s, double alpha) {
    return (L * L * (1.0 + R * R) / c) * (s + std::pow(Y, alpha));
}

}  // namespace horolab
