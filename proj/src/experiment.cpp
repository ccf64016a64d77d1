#include "horolab/experiment.hpp"

#include "horolab/quadrature.hpp"

#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

namespace horolab {

namespace {

// C-infinity cutoff: 0 for x <= 0, 1 for x >= 1.
double smoothstep_inf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double a = std::exp(-1.0 / x);
    double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

}  // namespace

TestFunction TestFunction::constant() {
    TestFunction f;
    f.kind = Kind::constant;
    f.description = "1";
    return f;
}

TestFunction TestFunction::height_bump(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("bump needs lo < hi");
    TestFunction f;
    f.kind = Kind::height_bump;
    f.lo = lo;
    f.hi = hi;
    std::ostringstream os;
    os << "bump(" << lo << "," << hi << ")";
    f.description = os.str();
    return f;
}

TestFunction TestFunction::height_indicator_smoothed(double lo, double hi, double edge) {
    if (!(lo < hi) || !(edge > 0) || !(2 * edge < hi - lo))
        throw std::invalid_argument("smoothed indicator needs lo + 2*edge < hi");
    TestFunction f;
    f.kind = Kind::height_indicator_smoothed;
    f.lo = lo;
    f.hi = hi;
    f.edge = edge;
    std::ostringstream os;
    os << "step(" << lo << "," << hi << ";" << edge << ")";
    f.description = os.str();
    return f;
}

double TestFunction::profile(double y) const {
    switch (kind) {
        case Kind::constant: return 1.0;
        case Kind::height_bump: {
            double u = (2.0 * y - (lo + hi)) / (hi - lo);
            if (std::abs(u) >= 1.0) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - u * u));
        }
        case Kind::height_indicator_smoothed:
            return smoothstep_inf((y - lo) / edge) * smoothstep_inf((hi - y) / edge);
    }
    return 0.0;
}

double horospherical_average(const BianchiContext& ctx, const TestFunction& f,
                             const GroupElement& p, const BoundaryCurve& piece, double T,
                             int order) {
    if (order < 8) throw std::invalid_argument("quadrature order must be >= 8 per axis");
    const double r = std::exp(-T);
    auto value = [&](cplx z) { return f.eval(ctx, act(p, Point(z, r))); };
    if (piece.kind() == CurveKind::rectangle)
        return quad::rectangle_average(value, piece.corner().real(), piece.corner().imag(),
                                       piece.width(), piece.height(), order);
    return quad::disk_average(value, piece.center(), piece.radius(), order);
}

namespace {

// Shared quadrature for the Haar functionals: integrates phi(Y(z + rj)) r^-3
// over the d=1 fundamental domain; the measure of the domain itself is
// obtained by passing the constant profile through the same nodes, which
// makes the normalized integral of 1 exactly 1.
double haar_functional(const BianchiContext& ctx, const TestFunction& f,
                       const HaarOptions& opts) {
    const double r_cap = std::max(2.0, f.support_upper() + 0.5);
    const auto& zrule = quad::gauss_legendre(opts.z_order);
    const auto& rrule = quad::gauss_legendre(opts.r_order);

    auto r_slab = [&](cplx z, double rlo, double rhi) {
        double acc = 0.0;
        for (int k = 0; k < opts.r_order; ++k) {
            double r = rlo + 0.5 * (rhi - rlo) * (1.0 + rrule.nodes[k]);
            acc += rrule.weights[k] * f.eval(ctx, Point(z, r)) / (r * r * r);
        }
        return acc * 0.5 * (rhi - rlo);
    };

    // x in [-1/2, 1/2], y in [0, 1/2]
    double total = 0.0;
    for (int i = 0; i < opts.z_order; ++i) {
        double x = 0.5 * zrule.nodes[i];
        double wx = 0.5 * zrule.weights[i];
        for (int j = 0; j < opts.z_order; ++j) {
            double y = 0.25 * (1.0 + zrule.nodes[j]);
            double wy = 0.25 * zrule.weights[j];
            cplx z(x, y);
            double rmin = std::sqrt(std::max(0.0, 1.0 - std::norm(z)));
            double cell = 0.0;
            if (rmin < 1.0) cell += r_slab(z, rmin, 1.0);
            cell += r_slab(z, std::max(rmin, 1.0), r_cap);
            // Above r_cap the height equals r and compact profiles vanish;
            // the constant profile keeps the analytic tail.
            if (!f.compactly_supported()) cell += 1.0 / (2.0 * r_cap * r_cap);
            total += wx * wy * cell;
        }
    }
    return total;
}

}  // namespace

double haar_integral(const BianchiContext& ctx, const TestFunction& f, const HaarOptions& opts) {
    if (ctx.d() != 1 || ctx.is_cocompact())
        throw std::invalid_argument("haar_integral implements the d = 1 fundamental domain only");
    if (f.kind == TestFunction::Kind::constant) return 1.0;
    double numer = haar_functional(ctx, f, opts);
    double denom = haar_functional(ctx, TestFunction::constant(), opts);
    return numer / denom;
}

double theorem_bound_bracket(double Y, double T, double s1) {
    if (!(T >= 0.0)) throw std::invalid_argument("bound requires T >= 0");
    double e = std::exp(-T);
    return std::pow(e * Y, 2.0 - s1) + e * T * T * T * T + e * (1.0 + T * T * T) * Y;
}

double theorem_constant_for_piece(const BoundaryCurve& piece) {
    double L = piece.arc_length(), R = piece.diameter(), c = piece.chord_constant();
    double z0 = std::abs(piece.base_offset());
    return L * L * (1.0 + R * R) * (1.0 + z0 * z0) * (1.0 + 1.0 / c) / piece.area();
}

double fit_decay_exponent(const std::vector<ExperimentRow>& rows, int first, int last,
                          double* residual) {
    if (last - first + 1 < 3)
        throw std::invalid_argument("decay fit needs at least three resolvable points");
    double sT = 0, sy = 0, sTT = 0, sTy = 0;
    int n = 0;
    for (int i = first; i <= last; ++i) {
        double y = std::log(rows[i].error);
        sT += rows[i].T;
        sy += y;
        sTT += rows[i].T * rows[i].T;
        sTy += rows[i].T * y;
        ++n;
    }
    double slope = (n * sTy - sT * sy) / (n * sTT - sT * sT);
    double icept = (sy - slope * sT) / n;
    if (residual) {
        double rss = 0;
        for (int i = first; i <= last; ++i) {
            double d = std::log(rows[i].error) - (icept + slope * rows[i].T);
            rss += d * d;
        }
        *residual = std::sqrt(rss / n);
    }
    return -slope;
}

ExperimentResult error_curve(const BianchiContext& ctx, const ExperimentConfig& config) {
    ExperimentResult result;

    double haar1 = haar_integral(ctx, config.f, config.haar);
    HaarOptions fine{config.haar.z_order * 2, config.haar.r_order * 2};
    double haar2 = haar_integral(ctx, config.f, fine);
    result.haar_value = haar2;
    double haar_noise = std::abs(haar2 - haar1);

    double Yp = invariant_height(ctx, config.base_point).value;

    auto run_one = [&](double T) {
        ExperimentRow row;
        row.T = T;
        double coarse = horospherical_average(ctx, config.f, config.base_point, config.piece,
                                              T, config.order);
        double refined = horospherical_average(ctx, config.f, config.base_point, config.piece,
                                               T, 2 * config.order);
        row.average = refined;
        row.quad_noise = std::abs(refined - coarse);
        row.haar = result.haar_value;
        row.error = std::abs(row.average - row.haar);
        row.bound = theorem_bound_bracket(Yp, T, config.s1);
        row.ratio = row.error / row.bound;
        return row;
    };

    if (config.jobs > 1) {
        std::vector<std::future<ExperimentRow>> futs;
        futs.reserve(config.T_grid.size());
        for (double T : config.T_grid)
            futs.push_back(std::async(std::launch::async, run_one, T));
        for (auto& fu : futs) result.rows.push_back(fu.get());
    } else {
        for (double T : config.T_grid) result.rows.push_back(run_one(T));
    }

    double max_quad_noise = haar_noise;
    for (const auto& row : result.rows) max_quad_noise = std::max(max_quad_noise, row.quad_noise);
    result.noise_floor = 10.0 * max_quad_noise;

    // Longest prefix of rows whose error stays above the noise floor.
    int m = -1;
    for (size_t i = 0; i < result.rows.size(); ++i) {
        if (result.rows[i].error > result.noise_floor)
            m = static_cast<int>(i);
        else
            break;
    }
    if (m >= 2) {
        result.rate_resolvable = true;
        // Fit over the trailing half of the resolvable range (the decaying
        // regime), at least three points.
        result.fit_first = std::min(m - 2, (m + 1) / 2);
        result.fit_last = m;
        result.fitted_exponent = fit_decay_exponent(result.rows, result.fit_first,
                                                    result.fit_last, &result.fit_residual);
        result.fitted_constant = 0.0;
        for (int i = 0; i <= m; ++i)
            result.fitted_constant = std::max(result.fitted_constant, result.rows[i].ratio);
        result.monotone_trend = true;
        for (int i = 0; i + 2 <= m; ++i)
            if (!(result.rows[i + 2].error < result.rows[i].error)) result.monotone_trend = false;
    }
    return result;
}

double rect_decomposition_average(const BianchiContext& ctx, const TestFunction& f,
                                  const GroupElement& p, cplx w1, cplx w2, double d1,
                                  double d2, double T, int order, bool via_decomposition) {
    if (!(std::exp(-T) <= d1 * (1 + 1e-12)) || !(d1 <= d2))
        throw std::invalid_argument("rectangle average requires e^{-T} <= d1 <= d2");
    const double r = std::exp(-T);
    auto value = [&](double x, double y) {
        return f.eval(ctx, act(p, Point(w1 * x + w2 * y, r)));
    };
    const auto& rule = quad::gauss_legendre(order);
    auto cell_average = [&](double ylo, double yhi) {
        double acc = 0.0;
        for (int i = 0; i < order; ++i) {
            double x = 0.5 * d1 * (1.0 + rule.nodes[i]);
            double rowsum = 0.0;
            for (int j = 0; j < order; ++j) {
                double y = ylo + 0.5 * (yhi - ylo) * (1.0 + rule.nodes[j]);
                rowsum += rule.weights[j] * value(x, y);
            }
            acc += rule.weights[i] * rowsum;
        }
        return acc / 4.0;
    };
    if (!via_decomposition) return cell_average(0.0, d2);

    long q = static_cast<long>(std::floor(d2 / d1)) - 1;
    if (q < 0) q = 0;
    double acc = 0.0;
    for (long j = 0; j < q; ++j)
        acc += (d1 / d2) * cell_average(j * d1, (j + 1) * d1);
    acc += ((d2 - q * d1) / d2) * cell_average(q * d1, d2);
    return acc;
}

}  // namespace horolab
