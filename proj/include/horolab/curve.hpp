#pragma once

// Constant-speed boundary parametrizations of horosphere pieces (rectangles
// and disks), their chord constants, and line integrals of the invariant
// height along translated boundary curves, together with the closed-form
// bound they are compared against.

#include "horolab/lattice.hpp"

#include <optional>

namespace horolab {

enum class CurveKind { rectangle, disk };

class BoundaryCurve {
  public:
    // Boundary of [x0, x0+w] x [y0, y0+h]; corner defaults to the origin so
    // that 0 lies in the closed region.
    static BoundaryCurve rectangle(double w, double h, cplx corner = cplx(0.0));
    // Boundary of the disk of the given radius, centered at the origin by
    // default.
    static BoundaryCurve disk(double radius, cplx center = cplx(0.0));

    // Constant-speed parametrization on R/Z: |gamma'(t)| = L wherever smooth.
    cplx gamma(double t) const;

    CurveKind kind() const { return kind_; }
    double arc_length() const { return length_; }     // L
    double chord_constant() const { return chord_; }  // c
    double diameter() const { return diam_; }         // R
    double area() const { return area_; }             // m(B')
    cplx base_offset() const { return z0_; }          // point of B' nearest 0

    // Geometry accessors for interior quadrature.
    cplx corner() const { return corner_; }  // rectangle
    double width() const { return w_; }
    double height() const { return h_; }
    cplx center() const { return center_; }  // disk
    double radius() const { return radius_; }

  private:
    BoundaryCurve() = default;
    void finalize();  // computes chord constant, diameter, z0

    CurveKind kind_ = CurveKind::rectangle;
    cplx corner_{0.0};
    double w_ = 1.0, h_ = 1.0;
    cplx center_{0.0};
    double radius_ = 1.0;
    double length_ = 4.0, chord_ = 0.0, diam_ = 0.0, area_ = 0.0;
    cplx z0_{0.0};
};

struct BoundaryIntegralOptions {
    double rel_tol = 1e-6;
    int max_depth = 34;
};

struct BoundaryIntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evals = 0;
    double max_height = 0.0;  // largest invariant height met along the curve
    double delta_max = 0.0;   // diameter of the deepest level-2 horoball met
};

// Line integral of Y_Gamma(g n_z a_{-s})^alpha over the curve, by adaptive
// quadrature; cusp spikes along the curve trigger local bisection. Throws
// QuadratureError when the refinement cap is reached.
BoundaryIntegralResult boundary_height_integral(const BianchiContext& ctx,
                                                const GroupElement& g,
                                                const BoundaryCurve& curve, double s,
                                                double alpha,
                                                const BoundaryIntegralOptions& opts = {});

// L(1+R^2)(1+Y) + (L^2/c)(1 + log((1+R)(1+Y)) + s), implied constant 1.
double prop6_bound(double L, double c, double R, double Y, double s);

// (L^2 (1+R^2)/c) (s + Y^alpha), implied constant 1.
double cor7_bound(double L, double c, double R, double Y, double s, double alpha);

}  // namespace horolab
