#pragma once

// Desk-scale equidistribution measurements: horospherical averages over
// expanding translates of a compact piece, Haar integrals of height test
// functions by fundamental-domain quadrature, the closed-form error bound,
// decay-rate fits, and the rectangle-decomposition average.

#include "horolab/curve.hpp"
#include "horolab/lattice.hpp"

#include <string>
#include <vector>

namespace horolab {

// K-invariant test functions f(p) = phi(Y_Gamma(p)) built from a 1D profile.
struct TestFunction {
    enum class Kind { constant, height_bump, height_indicator_smoothed };

    Kind kind = Kind::constant;
    double lo = 2.0, hi = 4.0;  // support of the profile
    double edge = 0.25;         // transition width of the smoothed indicator
    std::string description = "1";

    static TestFunction constant();
    // C-infinity bump supported on (lo, hi), peak value 1.
    static TestFunction height_bump(double lo, double hi);
    // Smoothed indicator of [lo, hi] with C-infinity shoulders of width edge.
    static TestFunction height_indicator_smoothed(double lo, double hi, double edge);

    double profile(double y) const;
    bool compactly_supported() const { return kind != Kind::constant; }
    double support_upper() const { return compactly_supported() ? hi : 0.0; }

    double eval(const BianchiContext& ctx, const Point& p) const {
        return profile(invariant_height(ctx, p).value);
    }
};

// Average of f(p n_z a_{-T}) over the piece (rectangle or disk interior),
// tensor quadrature with `order` nodes per axis (>= 8).
double horospherical_average(const BianchiContext& ctx, const TestFunction& f,
                             const GroupElement& p, const BoundaryCurve& piece, double T,
                             int order);

struct HaarOptions {
    int z_order = 40;  // per horizontal axis
    int r_order = 40;
};

// Integral of f against the probability Haar measure, by quadrature over the
// fundamental domain {|Re z| <= 1/2, 0 <= Im z <= 1/2, |z|^2 + r^2 >= 1} of
// the d = 1 lattice, self-normalized so that f == 1 integrates to exactly 1.
double haar_integral(const BianchiContext& ctx, const TestFunction& f,
                     const HaarOptions& opts = {});

// (e^{-T} Y)^{2-s1} + e^{-T} T^4 + e^{-T} (1+T^3) Y; callers supply the
// multiplicative constant.
double theorem_bound_bracket(double Y, double T, double s1);

// L^2 (1+R^2) (1+|z0|^2) (1+1/c) / m(B'), the piece-dependent constant mode.
double theorem_constant_for_piece(const BoundaryCurve& piece);

struct ExperimentConfig {
    int d = 1;
    GroupElement base_point;
    BoundaryCurve piece = BoundaryCurve::rectangle(1.0, 1.0);
    std::vector<double> T_grid;
    TestFunction f = TestFunction::height_bump(2.0, 4.0);
    int order = 64;  // quadrature order per axis, >= 8
    HaarOptions haar;
    double s1 = 1.0;
    int jobs = 1;
};

struct ExperimentRow {
    double T = 0.0;
    double average = 0.0;
    double haar = 0.0;
    double error = 0.0;       // |average - haar|
    double bound = 0.0;       // theorem bracket, constant 1
    double ratio = 0.0;       // error / bound
    double quad_noise = 0.0;  // refinement-difference estimate
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    double haar_value = 0.0;
    double noise_floor = 0.0;
    bool rate_resolvable = false;
    int fit_first = 0, fit_last = -1;  // row indices of the fitted window
    double fitted_exponent = 0.0;
    double fit_residual = 0.0;
    double fitted_constant = 0.0;  // sup error/bound over resolvable rows
    bool monotone_trend = false;   // distance-2 decreasing over resolvable rows
};

ExperimentResult error_curve(const BianchiContext& ctx, const ExperimentConfig& config);

// Least-squares fit of log e = a - b T over rows [first, last]; returns b.
double fit_decay_exponent(const std::vector<ExperimentRow>& rows, int first, int last,
                          double* residual = nullptr);

// Average of f(p n_{w1 x + w2 y} a_{-T}) over x in [0, d1], y in [0, d2],
// either directly or through the floor(d2/d1)-piece decomposition.
// Requires e^{-T} <= d1 <= d2.
double rect_decomposition_average(const BianchiContext& ctx, const TestFunction& f,
                                  const GroupElement& p, cplx w1, cplx w2, double d1,
                                  double d2, double T, int order, bool via_decomposition);

}  // namespace horolab
