#pragma once

// SL(2,C) arithmetic, its action on the upper half-space model of H^3,
// Iwasawa coordinates and the Haar weight convention. Double precision;
// exact matrices for identity tests live in gaussian_rational.hpp.

#include <complex>

namespace horolab {

using cplx = std::complex<double>;

// Point z + r j of the upper half-space, r > 0.
struct Point {
    cplx z;
    double r = 1.0;

    Point() = default;
    Point(cplx z_, double r_);

    double ht() const { return r; }
    static Point j() { return Point(cplx(0.0), 1.0); }
};

struct GroupElement {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    GroupElement() = default;
    GroupElement(cplx a_, cplx b_, cplx c_, cplx d_) : a(a_), b(b_), c(c_), d(d_) {}

    static GroupElement identity() { return {}; }
    // a_t = diag(e^{t/2}, e^{-t/2})
    static GroupElement a_t(double t);
    // n_z = (1 z; 0 1)
    static GroupElement n_z(cplx z);
    // S = (0 -1; 1 0)
    static GroupElement s() { return {0.0, -1.0, 1.0, 0.0}; }
    // SU(2) element (alpha beta; -conj(beta) conj(alpha)) from an unnormalized pair
    static GroupElement su2(cplx alpha, cplx beta);

    cplx det() const { return a * d - b * c; }
    GroupElement inverse() const { return {d, -b, -c, a}; }
    GroupElement adjoint() const;  // conjugate transpose
    bool is_special_unitary(double tol = 1e-9) const;

    friend GroupElement operator*(const GroupElement& g, const GroupElement& h) {
        return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
    }
};

struct IwasawaCoords {
    cplx z;
    double t = 0.0;
    GroupElement k;

    GroupElement recompose() const { return GroupElement::n_z(z) * GroupElement::a_t(t) * k; }
};

// Moebius action g.(z + rj); the result height is positive whenever r > 0.
Point act(const GroupElement& g, const Point& p);

// Unique g = n_z a_t k with k in SU(2).
IwasawaCoords iwasawa(const GroupElement& g);

// Hyperbolic distance: cosh(dist) = 1 + (|z1-z2|^2 + (r1-r2)^2) / (2 r1 r2).
double dist(const Point& p, const Point& q);

// Jacobian factor e^{-2t} of the Haar measure in n_z a_t k coordinates.
double haar_weight(double t);

double matrix_norm(const GroupElement& g);

}  // namespace horolab
