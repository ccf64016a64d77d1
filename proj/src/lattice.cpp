#include "horolab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace horolab {

namespace {

double abs2(cplx z) { return std::norm(z); }

// Nearest integer of p/q for q > 0, exact.
long long round_div(long long p, long long q) {
    __int128 num = 2 * static_cast<__int128>(p) + q;
    __int128 den = 2 * static_cast<__int128>(q);
    __int128 fl = num >= 0 ? num / den : -((-num + den - 1) / den);
    return static_cast<long long>(fl);
}

}  // namespace

BianchiContext BianchiContext::bianchi(int d) {
    BianchiContext ctx;
    ctx.d_ = d;
    switch (d) {
        case 1:
        case 2:
            ctx.tau_ = cplx(0.0, std::sqrt(double(d)));
            ctx.tau_trace_ = 0;
            ctx.tau_norm_ = d;
            break;
        case 3:
        case 7:
        case 11:
            ctx.tau_ = cplx(0.5, 0.5 * std::sqrt(double(d)));
            ctx.tau_trace_ = 1;
            ctx.tau_norm_ = (1 + d) / 4;
            break;
        default:
            throw std::invalid_argument("d must be one of {1, 2, 3, 7, 11}");
    }
    ctx.covol_ = ctx.tau_.imag();
    ctx.scale_ = 1.0 / std::sqrt(ctx.covol_);
    return ctx;
}

BianchiContext BianchiContext::cocompact() {
    BianchiContext ctx;
    ctx.cocompact_ = true;
    return ctx;
}

OdInt BianchiContext::mul(OdInt a, OdInt b) const {
    // tau^2 = tau_trace*tau - tau_norm
    long long nn = a.n * b.n;
    return {a.m * b.m - nn * tau_norm_, a.m * b.n + a.n * b.m + nn * tau_trace_};
}

OdInt BianchiContext::conj(OdInt a) const { return {a.m + a.n * tau_trace_, -a.n}; }

long long BianchiContext::norm(OdInt a) const {
    return a.m * a.m + tau_trace_ * a.m * a.n + tau_norm_ * a.n * a.n;
}

OdInt BianchiContext::nearest(cplx w) const {
    long long n = std::llround(w.imag() / tau_.imag());
    long long m = std::llround(w.real() - double(n) * tau_.real());
    return {m, n};
}

OdInt BianchiContext::gcd(OdInt a, OdInt b) const {
    // Euclidean algorithm with nearest-lattice rounding; the covering radius
    // of O_d is < 1 for d in {1,2,3,7,11}, so norms strictly decrease.
    while (!b.is_zero()) {
        OdInt num = mul(a, conj(b));
        long long nb = norm(b);
        OdInt q{round_div(num.m, nb), round_div(num.n, nb)};
        OdInt r = a - mul(q, b);
        a = b;
        b = r;
    }
    return a;
}

bool BianchiContext::coprime(OdInt a, OdInt b) const {
    if (a.is_zero()) return norm(b) == 1;
    if (b.is_zero()) return norm(a) == 1;
    return norm(gcd(a, b)) == 1;
}

std::vector<OdInt> BianchiContext::units() const {
    std::vector<OdInt> out;
    for (long long m = -1; m <= 1; ++m)
        for (long long n = -1; n <= 1; ++n)
            if ((m || n) && norm({m, n}) == 1) out.push_back({m, n});
    return out;
}

void BianchiContext::points_in_disk(cplx center, double radius, std::vector<OdInt>& out) const {
    out.clear();
    if (radius < 0) return;
    double im_t = tau_.imag(), re_t = tau_.real();
    long long n_lo = static_cast<long long>(std::ceil((center.imag() - radius) / im_t - 1e-12));
    long long n_hi = static_cast<long long>(std::floor((center.imag() + radius) / im_t + 1e-12));
    for (long long n = n_lo; n <= n_hi; ++n) {
        double dy = double(n) * im_t - center.imag();
        double s2 = radius * radius - dy * dy;
        if (s2 < 0) continue;
        double s = std::sqrt(s2);
        long long m_lo = static_cast<long long>(std::ceil(center.real() - s - double(n) * re_t - 1e-12));
        long long m_hi = static_cast<long long>(std::floor(center.real() + s - double(n) * re_t + 1e-12));
        for (long long m = m_lo; m <= m_hi; ++m) out.push_back({m, n});
    }
}

namespace {

struct IntMat {
    OdInt a{1, 0}, b{0, 0}, c{0, 0}, d{1, 0};
};

// Bottom row of (* *; c2 d2) * gamma.
std::pair<OdInt, OdInt> compose_row(const BianchiContext& ctx, OdInt c2, OdInt d2,
                                    const IntMat& g) {
    return {ctx.mul(c2, g.a) + ctx.mul(d2, g.c), ctx.mul(c2, g.b) + ctx.mul(d2, g.d)};
}

double pair_value(const BianchiContext& ctx, cplx z, double r, OdInt c, OdInt d) {
    cplx cv = ctx.value(c);
    double den = abs2(cv * z + ctx.value(d)) + abs2(cv) * r * r;
    return r / den;
}

}  // namespace

HeightResult invariant_height(const BianchiContext& ctx, const Point& p) {
    if (ctx.is_cocompact()) return {1.0, {0, 0}, {1, 0}, false};

    cplx z = p.z;
    double r = p.r;
    IntMat gamma;

    // Phase 1: descend towards the fundamental domain. Each inversion
    // strictly increases r, so this terminates quickly.
    for (int iter = 0; iter < 256; ++iter) {
        OdInt lam = ctx.nearest(z);
        if (!lam.is_zero()) {
            z -= ctx.value(lam);
            gamma.a = gamma.a - ctx.mul(lam, gamma.c);
            gamma.b = gamma.b - ctx.mul(lam, gamma.d);
        }
        double den = abs2(z) + r * r;
        if (den < 1.0 - 1e-15) {
            z = -std::conj(z) / den;
            r = r / den;
            IntMat s;  // S * gamma
            s.a = -gamma.c;
            s.b = -gamma.d;
            s.c = gamma.a;
            s.d = gamma.b;
            gamma = s;
        } else {
            break;
        }
    }

    double v = r;
    auto [bc, bd] = std::pair<OdInt, OdInt>{gamma.c, gamma.d};

    // Phase 2: finite enumeration around the reduced point. Any pair with a
    // value above the current best v satisfies |c|^2 <= 1/(r v), and r, v are
    // both bounded below here, so the candidate set is small.
    std::vector<OdInt> cs, ds;
    ctx.points_in_disk(cplx(0.0), std::sqrt(1.0 / (r * v)) + 1e-12, cs);
    std::sort(cs.begin(), cs.end(), [&](OdInt x, OdInt y) { return ctx.norm(x) < ctx.norm(y); });
    for (const OdInt& c : cs) {
        if (c.is_zero()) continue;
        cplx cv = ctx.value(c);
        double c2 = abs2(cv);
        if (c2 > 1.0 / (r * v) + 1e-12) break;  // sorted by norm
        double rho2 = r / v - c2 * r * r;
        if (rho2 <= 0) continue;
        ctx.points_in_disk(-cv * z, std::sqrt(rho2) + 1e-12, ds);
        for (const OdInt& dd : ds) {
            if (!ctx.coprime(c, dd)) continue;
            double val = pair_value(ctx, z, r, c, dd);
            if (val > v) {
                v = val;
                std::tie(bc, bd) = compose_row(ctx, c, dd, gamma);
            }
        }
    }
    return {ctx.cusp_scale() * v, bc, bd, false};
}

HeightResult invariant_height(const BianchiContext& ctx, const GroupElement& g) {
    return invariant_height(ctx, act(g, Point::j()));
}

HeightResult invariant_height_bruteforce(const BianchiContext& ctx, const Point& p,
                                         double search_radius) {
    if (ctx.is_cocompact()) return {1.0, {0, 0}, {1, 0}, false};
    if (!(search_radius > 0)) throw std::invalid_argument("search radius must be positive");

    const cplx z = p.z;
    const double r = p.r;
    const double v_floor = r;  // value of the pair (0, 1), always a candidate

    double best = r, best_relaxed = r;
    OdInt bc{0, 0}, bd{1, 0};
    OdInt bc_relaxed{0, 0}, bd_relaxed{1, 0};

    std::vector<OdInt> cs, ds;
    ctx.points_in_disk(cplx(0.0), search_radius, cs);
    for (const OdInt& c : cs) {
        if (c.is_zero()) continue;
        cplx cv = ctx.value(c);
        double rho2 = r / v_floor - abs2(cv) * r * r;
        if (rho2 < 0) continue;  // cannot reach even the floor value
        ctx.points_in_disk(-cv * z, std::sqrt(rho2) + 1e-12, ds);
        for (const OdInt& dd : ds) {
            if (dd.is_zero() && c.is_zero()) continue;
            double val = pair_value(ctx, z, r, c, dd);
            if (val > best_relaxed) {
                best_relaxed = val;
                bc_relaxed = c;
                bd_relaxed = dd;
            }
            if (val > best && ctx.coprime(c, dd)) {
                best = val;
                bc = c;
                bd = dd;
            }
        }
    }
    // Non-coprime pairs never exceed coprime ones: dividing out a common
    // factor of norm k multiplies the value by k.
    if (best_relaxed > best * (1.0 + 1e-12))
        throw std::logic_error("relaxed enumeration exceeded the coprime maximum");

    HeightResult res{ctx.cusp_scale() * best, bc, bd, false};
    // Any pair beating the found maximum needs |c|^2 <= 1/(r * best). If the
    // search disk does not cover that bound the maximum is uncertified (this
    // subsumes the case of a maximizer sitting on the rim, where best is of
    // order 1/(radius^2 r)).
    if (search_radius * search_radius < 1.0 / (r * best) * (1.0 - 1e-12))
        res.boundary_flag = true;
    return res;
}

double invariant_height_conjugated(const BianchiContext& ctx, cplx w, double sigma,
                                   const GroupElement& g) {
    // Bottom rows of h^{-1} gamma h, h = n_w a_sigma, are (c e^sigma, cw+d);
    // normalizing the conjugated translation lattice contributes e^{s0+sigma}.
    // Altogether the maximum collapses to the height at the substituted point
    // (e^sigma z + w, e^sigma r).
    if (ctx.is_cocompact()) return 1.0;
    Point p = act(g, Point::j());
    double es = std::exp(sigma);
    return invariant_height(ctx, Point(es * p.z + w, es * p.r)).value;
}

double n_translate_sharp_factor(cplx z) {
    double az = std::abs(z);
    double root = az + std::sqrt(az * az + 4.0);
    return 0.25 * root * root;
}

Lemma5Report height_translate_bounds_suite(const BianchiContext& ctx, int n_samples,
                                           std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::uniform_real_distribution<double> tdist(-3.0, 3.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Lemma5Report rep;
    const double tol = 1e-9;
    for (int i = 0; i < n_samples; ++i) {
        cplx z(box(rng), box(rng));
        double t = tdist(rng);
        GroupElement k = GroupElement::su2(cplx(gauss(rng), gauss(rng)), cplx(gauss(rng), gauss(rng)));
        GroupElement g = GroupElement::n_z(z) * GroupElement::a_t(t) * k;
        double s = tdist(rng);
        cplx w(box(rng), box(rng));

        double y = invariant_height(ctx, g).value;
        double ya = invariant_height(ctx, g * GroupElement::a_t(s)).value;
        double yn = invariant_height(ctx, g * GroupElement::n_z(w)).value;

        double ra = ya / (std::max(std::exp(s), std::exp(-s)) * y);
        double rn_sharp = yn / (n_translate_sharp_factor(w) * y);
        double rn_printed = yn / ((1.0 + abs2(w)) * y);
        rep.max_ratio_a_translate = std::max(rep.max_ratio_a_translate, ra);
        rep.max_ratio_n_sharp = std::max(rep.max_ratio_n_sharp, rn_sharp);
        rep.max_ratio_n_printed = std::max(rep.max_ratio_n_printed, rn_printed);
        if (rn_printed > 1.0 + tol) ++rep.n_printed_exceedances;

        // a) for h = n_w a_s, via the conjugated-row evaluation.
        GroupElement h = GroupElement::n_z(w) * GroupElement::a_t(s);
        double lhs = invariant_height(ctx, h * g).value;
        double rhs = invariant_height_conjugated(ctx, w, s, g);
        double mismatch = std::abs(lhs - rhs) / std::max(lhs, rhs);
        rep.max_conjugation_mismatch = std::max(rep.max_conjugation_mismatch, mismatch);

        if (ra > 1.0 + tol || rn_sharp > 1.0 + tol || mismatch > 1e-8) {
            ++rep.violations;
            if (rep.first_violation.empty()) {
                std::ostringstream os;
                os << "sample " << i << ": z=" << z << " t=" << t << " s=" << s << " w=" << w
                   << " ratios a=" << ra << " n_sharp=" << rn_sharp << " conj=" << mismatch;
                rep.first_violation = os.str();
            }
        }
        ++rep.samples;
    }
    return rep;
}

bool Horoball::contains(const Point& p) const {
    if (at_infinity) return p.r > diameter;
    double dr = p.r - 0.5 * diameter;
    return abs2(p.z - base) + dr * dr < 0.25 * diameter * diameter;
}

std::vector<Horoball> horoball_decomposition(const BianchiContext& ctx, double C,
                                             const Window& window, std::size_t max_balls) {
    if (ctx.is_cocompact()) return {};
    if (C < kHoroballThreshold0 - 1e-12)
        throw std::invalid_argument("horoball threshold must be >= sqrt(2/sqrt(3))");
    if (!(window.r0 > 0))
        throw std::invalid_argument(
            "window reaches height 0: infinitely many horoballs (size cap)");

    const double scale = ctx.cusp_scale();
    std::vector<Horoball> out;
    if (window.r1 > C / scale)
        out.push_back({cplx(0.0), C / scale, true, OdInt{0, 0}, OdInt{1, 0}});

    // Finite balls H(-d/c, scale/(C |c|^2)) need diameter > window.r0.
    double c2_max = scale / (C * window.r0);
    std::vector<OdInt> cs, ds;
    ctx.points_in_disk(cplx(0.0), std::sqrt(c2_max) + 1e-12, cs);
    const auto units = ctx.units();
    const cplx center(0.5 * (window.x0 + window.x1), 0.5 * (window.y0 + window.y1));
    const double halfdiag =
        std::hypot(0.5 * (window.x1 - window.x0), 0.5 * (window.y1 - window.y0));
    for (const OdInt& c : cs) {
        if (c.is_zero()) continue;
        // One ball per cusp: keep a single unit representative of c.
        bool canonical = true;
        for (const OdInt& u : units) {
            OdInt uc = ctx.mul(u, c);
            if (std::tie(uc.n, uc.m) < std::tie(c.n, c.m)) canonical = false;
        }
        if (!canonical) continue;
        cplx cv = ctx.value(c);
        double c2 = abs2(cv);
        if (c2 > c2_max) continue;
        double delta = scale / (C * c2);
        // Ball meets the window only if its base is near the window in z and
        // the window's height range intersects (0, delta).
        if (window.r0 >= delta) continue;
        double reach = halfdiag + 0.5 * delta + 1e-9;
        ctx.points_in_disk(-cv * center, std::abs(cv) * reach, ds);
        for (const OdInt& dd : ds) {
            if (!ctx.coprime(c, dd)) continue;
            cplx base = -ctx.value(dd) / cv;
            // Precise window intersection test at the ball's widest height.
            double dx = std::max({window.x0 - base.real(), base.real() - window.x1, 0.0});
            double dy = std::max({window.y0 - base.imag(), base.imag() - window.y1, 0.0});
            if (dx * dx + dy * dy >= 0.25 * delta * delta) continue;
            out.push_back({base, delta, false, c, dd});
            if (out.size() > max_balls)
                throw std::runtime_error("horoball decomposition exceeded the size cap");
        }
    }
    return out;
}

bool shimizu_check(cplx c, cplx z1, cplx z2) { return std::abs(c * c * z1 * z2) >= 1.0; }

}  // namespace horolab
