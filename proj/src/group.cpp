#include "horolab/group.hpp"

#include <cmath>
#include <stdexcept>

namespace horolab {

namespace {

double abs2(cplx z) { return std::norm(z); }

void check_unimodular(const GroupElement& g) {
    // Long products are deliberately not renormalized; drift past this
    // threshold indicates a bug upstream.
    if (std::abs(g.det() - cplx(1.0)) > 1e-9)
        throw std::domain_error("group element determinant drifted from 1");
}

}  // namespace

Point::Point(cplx z_, double r_) : z(z_), r(r_) {
    if (!(r > 0.0)) throw std::domain_error("point height must be positive");
}

GroupElement GroupElement::a_t(double t) {
    double e = std::exp(t / 2.0);
    return {cplx(e), 0.0, 0.0, cplx(1.0 / e)};
}

GroupElement GroupElement::n_z(cplx z) { return {1.0, z, 0.0, 1.0}; }

GroupElement GroupElement::su2(cplx alpha, cplx beta) {
    double n = std::sqrt(abs2(alpha) + abs2(beta));
    if (!(n > 0.0)) throw std::domain_error("su2: zero row");
    alpha /= n;
    beta /= n;
    return {alpha, beta, -std::conj(beta), std::conj(alpha)};
}

GroupElement GroupElement::adjoint() const {
    return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)};
}

bool GroupElement::is_special_unitary(double tol) const {
    GroupElement p = (*this) * adjoint();
    return std::abs(p.a - cplx(1.0)) < tol && std::abs(p.d - cplx(1.0)) < tol &&
           std::abs(p.b) < tol && std::abs(p.c) < tol && std::abs(det() - cplx(1.0)) < tol;
}

Point act(const GroupElement& g, const Point& p) {
    check_unimodular(g);
    double denom = abs2(g.c * p.z + g.d) + abs2(g.c) * p.r * p.r;
    cplx znew = ((g.a * p.z + g.b) * std::conj(g.c * p.z + g.d) + g.a * std::conj(g.c) * p.r * p.r) / denom;
    return Point(znew, p.r / denom);
}

IwasawaCoords iwasawa(const GroupElement& g) {
    check_unimodular(g);
    Point q = act(g, Point::j());
    IwasawaCoords coords;
    coords.z = q.z;
    coords.t = std::log(q.r);
    // k = a_{-t} n_{-z} g is special unitary up to rounding; Gram-Schmidt on
    // its first row restores exact structure.
    GroupElement m = GroupElement::a_t(-coords.t) * GroupElement::n_z(-coords.z) * g;
    coords.k = GroupElement::su2(m.a, m.b);
    return coords;
}

double dist(const Point& p, const Point& q) {
    double u = 1.0 + (abs2(p.z - q.z) + (p.r - q.r) * (p.r - q.r)) / (2.0 * p.r * q.r);
    return std::acosh(std::max(1.0, u));
}

double haar_weight(double t) { return std::exp(-2.0 * t); }

double matrix_norm(const GroupElement& g) {
    return std::sqrt(abs2(g.a) + abs2(g.b) + abs2(g.c) + abs2(g.d));
}

}  // namespace horolab
