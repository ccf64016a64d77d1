#include "horolab/kernels.hpp"

#include "horolab/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace horolab::kernels {

RepParams RepParams::principal(int n, double nu_imag) {
    if (n < 0) throw std::invalid_argument("principal series requires n >= 0");
    if (n == 0 && nu_imag < 0)
        throw std::invalid_argument("spherical principal series requires nu in i R_{>=0}");
    RepParams p;
    p.n = n;
    p.nu = cplx(0.0, nu_imag);
    p.cls = n > 0 ? RepClass::principal_positive_n : RepClass::principal_spherical;
    return p;
}

RepParams RepParams::complementary(double nu) {
    if (!(nu > 0.0 && nu < 2.0))
        throw std::invalid_argument("complementary series requires nu in (0, 2)");
    RepParams p;
    p.n = 0;
    p.nu = cplx(nu, 0.0);
    p.cls = RepClass::complementary;
    return p;
}

std::array<cplx, 4> RepParams::alphas() const {
    const double hn = 0.5 * n;
    return {cplx(1.0 - hn), 1.0 - 0.5 * nu, 1.0 + 0.5 * nu, cplx(1.0 + hn)};
}

std::pair<cplx, cplx> casimir_eigenvalues(const RepParams& p) {
    cplx l1 = (double(p.n) * double(p.n) + p.nu * p.nu) / 4.0 - 1.0;
    cplx l2 = cplx(0.0, 1.0) * double(p.n) * p.nu / 2.0;
    return {l1, l2};
}

cplx exp_divided_difference(std::span<const cplx> nodes) {
    const int k1 = static_cast<int>(nodes.size());
    if (k1 == 0) throw std::invalid_argument("divided difference needs at least one node");
    if (k1 == 1) return std::exp(nodes[0]);
    if (k1 > 8) throw std::invalid_argument("divided difference limited to 8 nodes");

    // Shift by the centroid; dd(exp; s) = e^mu dd(exp; s - mu).
    cplx mu{0.0};
    for (const cplx& s : nodes) mu += s;
    mu /= double(k1);

    double maxabs = 0.0;
    for (const cplx& s : nodes) maxabs = std::max(maxabs, std::abs(s - mu));
    int squarings = 0;
    while (maxabs > 1.0) {
        maxabs *= 0.5;
        ++squarings;
    }
    const double scale = std::ldexp(1.0, -squarings);

    // Bidiagonal Z: diag = scaled shifted nodes, superdiagonal = scale.
    // (e^Z)_{0,k} is the divided difference over the scaled nodes times the
    // product of superdiagonal entries; keeping the superdiagonal equal to
    // `scale` instead makes (e^Z)_{0,k} the dd over the *unscaled* nodes.
    const int dim = k1;
    std::vector<cplx> Z(dim * dim, cplx(0.0));
    for (int i = 0; i < dim; ++i) Z[i * dim + i] = (nodes[i] - mu) * scale;
    for (int i = 0; i + 1 < dim; ++i) Z[i * dim + (i + 1)] = cplx(scale);

    // exp by plain Taylor; ||Z|| <= 2 after scaling.
    std::vector<cplx> E(dim * dim, cplx(0.0)), term(Z), tmp(dim * dim);
    for (int i = 0; i < dim; ++i) E[i * dim + i] = 1.0;
    for (int i = 0; i < dim * dim; ++i) E[i] += term[i];
    for (int j = 2; j <= 32; ++j) {
        // term = term * Z / j  (upper triangular)
        for (int r = 0; r < dim; ++r) {
            for (int cidx = r; cidx < dim; ++cidx) {
                cplx acc{0.0};
                for (int m = r; m <= cidx; ++m) acc += term[r * dim + m] * Z[m * dim + cidx];
                tmp[r * dim + cidx] = acc / double(j);
            }
        }
        for (int r = 0; r < dim; ++r)
            for (int cidx = r; cidx < dim; ++cidx) {
                E[r * dim + cidx] += tmp[r * dim + cidx];
                term[r * dim + cidx] = tmp[r * dim + cidx];
            }
    }
    for (int sq = 0; sq < squarings; ++sq) {
        for (int r = 0; r < dim; ++r)
            for (int cidx = r; cidx < dim; ++cidx) {
                cplx acc{0.0};
                for (int m = r; m <= cidx; ++m) acc += E[r * dim + m] * E[m * dim + cidx];
                tmp[r * dim + cidx] = acc;
            }
        std::swap(E, tmp);
    }
    return std::exp(mu) * E[0 * dim + (dim - 1)];
}

cplx simplex_exp_integral(double x, std::span<const cplx> betas) {
    const int k = static_cast<int>(betas.size());
    if (k == 0) return cplx(1.0);
    if (x == 0.0) return cplx(0.0);
    std::vector<cplx> nodes(k + 1, cplx(0.0));
    cplx partial{0.0};
    for (int j = 0; j < k; ++j) {
        partial += betas[j];
        nodes[j + 1] = x * partial;
    }
    double xk = 1.0;
    for (int j = 0; j < k; ++j) xk *= x;
    return xk * exp_divided_difference(nodes);
}

namespace {

void check_range(double T, double t) {
    if (!(T >= 0.0)) throw std::invalid_argument("kernel requires T >= 0");
    if (!(t <= 0.0)) throw std::invalid_argument("kernel requires t <= 0");
}

}  // namespace

cplx kernel_F(const RepParams& p, double T, double t) {
    check_range(T, t);
    const auto a = p.alphas();
    if (p.n == 0) {
        if (t <= -T) return cplx(0.0);
        const std::array<cplx, 2> betas{a[0] - a[1], a[1] - a[2]};
        return -std::exp(-a[0] * (T + t)) * simplex_exp_integral(T + t, betas);
    }
    const std::array<cplx, 3> betas{a[0] - a[1], a[1] - a[2], a[2] - a[3]};
    cplx whole = simplex_exp_integral(T, betas);
    cplx inner = simplex_exp_integral(std::max(t, -T) + T, betas);
    return -std::exp(-a[0] * (T + t)) * (whole - inner);
}

cplx kernel_Fi(const RepParams& p, double T, int i) {
    if (!(T >= 0.0)) throw std::invalid_argument("kernel requires T >= 0");
    if (i < 0 || i > 2) throw std::invalid_argument("kernel index must be 0, 1 or 2");
    const auto a = p.alphas();
    if (p.n == 0) {
        const std::array<cplx, 1> b1{a[1] - a[2]};
        const std::array<cplx, 2> b2{a[0] - a[1], a[1] - a[2]};
        cplx S1 = std::exp(-a[1] * T) * simplex_exp_integral(T, b1);
        cplx S2 = std::exp(-a[0] * T) * simplex_exp_integral(T, b2);
        switch (i) {
            case 2: return S2;
            case 1: return -S1 - (a[1] + a[2]) * S2;
            default: return std::exp(-a[2] * T) + a[2] * S1 + a[1] * a[2] * S2;
        }
    }
    const std::array<cplx, 1> b1{a[2] - a[3]};
    const std::array<cplx, 2> b2{a[1] - a[2], a[2] - a[3]};
    cplx B = std::exp(-a[2] * T) * simplex_exp_integral(T, b1);
    cplx C = std::exp(-a[1] * T) * simplex_exp_integral(T, b2);
    switch (i) {
        case 2: return C;
        case 1: return -B - (a[2] + a[3]) * C;
        default: return std::exp(-a[3] * T) + a[3] * B + a[2] * a[3] * C;
    }
}

double kernel_envelope_F(const RepParams& p, double T, double t) {
    check_range(T, t);
    const double x = T + t;
    switch (p.cls) {
        case RepClass::principal_positive_n: {
            const double n = p.n;
            if (t <= -T) return std::exp((n / 2.0 - 1.0) * x) / (n * n);
            return (1.0 + x) * std::exp(-x) / (n * n);
        }
        case RepClass::principal_spherical:
            if (t <= -T) return 0.0;
            return x * x * std::exp(-x);
        case RepClass::complementary: {
            if (t <= -T) return 0.0;
            const double nu = p.nu.real();
            const double m = std::min(x, 1.0 / nu);
            return m * m * std::exp((nu / 2.0 - 1.0) * x);
        }
    }
    return 0.0;
}

double kernel_envelope_Fi(const RepParams& p, double T, int i) {
    if (i < 0 || i > 2) throw std::invalid_argument("kernel index must be 0, 1 or 2");
    switch (p.cls) {
        case RepClass::principal_positive_n: {
            const double n = p.n;
            if (i == 2) return (1.0 + T) * std::exp(-T) / n;
            return (1.0 + std::abs(p.nu)) * (1.0 + T) * std::exp(-T);
        }
        case RepClass::principal_spherical: {
            double base = (1.0 + T * T) * std::exp(-T);
            if (i == 0) base *= 1.0 + std::norm(p.nu);
            return base;
        }
        case RepClass::complementary: {
            const double nu = p.nu.real();
            return std::min(1.0 + T * T, 1.0 / (nu * nu)) * std::exp((nu / 2.0 - 1.0) * T);
        }
    }
    return 0.0;
}

double tail_cutoff(const RepParams& p, double T) {
    return -T - 40.0 / std::max(0.5 * p.n, 1.0);
}

namespace {

// RK4 on f' = rhs(t, f), integrating from 0 down to -T.
template <int Dim>
std::array<cplx, Dim> rk4_backward(const std::function<void(double, const std::array<cplx, Dim>&,
                                                            std::array<cplx, Dim>&)>& rhs,
                                   std::array<cplx, Dim> y, double T, double step) {
    if (T == 0.0) return y;
    long nsteps = std::lround(std::ceil(T / step));
    double h = -T / double(nsteps);
    std::array<cplx, Dim> k1, k2, k3, k4, tmp;
    double t = 0.0;
    for (long s = 0; s < nsteps; ++s) {
        rhs(t, y, k1);
        for (int i = 0; i < Dim; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        rhs(t + 0.5 * h, tmp, k2);
        for (int i = 0; i < Dim; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        rhs(t + 0.5 * h, tmp, k3);
        for (int i = 0; i < Dim; ++i) tmp[i] = y[i] + h * k3[i];
        rhs(t + h, tmp, k4);
        for (int i = 0; i < Dim; ++i)
            y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        t += h;
    }
    return y;
}

// Bound on |I(s)| e^{-s} near the cutoff, used to estimate truncated tails.
double forcing_scale(const std::function<cplx(double)>& forcing, double tmin) {
    double c = 0.0;
    for (int j = 0; j <= 8; ++j) {
        double s = tmin + 0.25 * j;
        c = std::max(c, std::abs(forcing(s)) * std::exp(-s));
    }
    return c;
}

}  // namespace

OdeOracleResult ode_oracle(const RepParams& p, const std::function<cplx(double)>& forcing,
                           double T, const std::array<cplx, 3>& data0,
                           const OdeOracleOptions& opts) {
    if (!(T >= 0.0)) throw std::invalid_argument("ode_oracle requires T >= 0");
    if (!(opts.step > 1e-12)) throw std::runtime_error("ode_oracle: step size underflow");
    const auto [l1, l2] = casimir_eigenvalues(p);
    OdeOracleResult res;

    if (p.n == 0) {
        std::function<void(double, const std::array<cplx, 3>&, std::array<cplx, 3>&)> rhs =
            [&](double t, const std::array<cplx, 3>& y, std::array<cplx, 3>& dy) {
                dy[0] = y[1];
                dy[1] = y[2];
                dy[2] = 3.0 * y[2] - (2.0 - l1) * y[1] - l1 * y[0] + forcing(t);
            };
        auto y = rk4_backward<3>(rhs, {data0[0], data0[1], data0[2]}, T, opts.step);
        res.value = y[0];
        return res;
    }

    // n > 0: the fourth initial datum comes from the tail condition
    //   [(d/dt - a2)(d/dt - a3)(d/dt - a4) f](0) = Int_{-inf}^0 e^{-a1 s} I(s) ds.
    const auto a = p.alphas();
    const double tmin = tail_cutoff(p, T);
    auto g1_integrand = [&](double s) { return std::exp(-a[0] * s) * forcing(s); };
    cplx G0 = quad::integrate_adaptive(g1_integrand, tmin, 0.0, opts.quad_tol).value;
    const double hn = 0.5 * p.n;
    res.tail_estimate = forcing_scale(forcing, tmin) * std::exp(hn * tmin) / hn;
    if (res.tail_estimate > opts.tail_tol)
        throw std::runtime_error("ode_oracle: tail truncation error above tolerance");

    cplx e1 = a[1] + a[2] + a[3];
    cplx e2 = a[1] * a[2] + a[1] * a[3] + a[2] * a[3];
    cplx e3 = a[1] * a[2] * a[3];
    cplx f3 = G0 + e1 * data0[2] - e2 * data0[1] + e3 * data0[0];

    std::function<void(double, const std::array<cplx, 4>&, std::array<cplx, 4>&)> rhs =
        [&](double t, const std::array<cplx, 4>& y, std::array<cplx, 4>& dy) {
            dy[0] = y[1];
            dy[1] = y[2];
            dy[2] = y[3];
            dy[3] = 4.0 * y[3] - (5.0 - l1) * y[2] - 2.0 * (l1 - 1.0) * y[1] +
                    (l1 + 0.25 * l2 * l2) * y[0] + forcing(t);
        };
    auto y = rk4_backward<4>(rhs, {data0[0], data0[1], data0[2], f3}, T, opts.step);
    res.value = y[0];
    return res;
}

OdeOracleResult representation_formula(const RepParams& p,
                                       const std::function<cplx(double)>& forcing, double T,
                                       const std::array<cplx, 3>& data0,
                                       const OdeOracleOptions& opts) {
    if (!(T >= 0.0)) throw std::invalid_argument("representation formula requires T >= 0");
    OdeOracleResult res;
    auto integrand = [&](double t) { return kernel_F(p, T, t) * forcing(t); };
    const double lower = p.n == 0 ? -T : tail_cutoff(p, T);
    cplx integral{0.0};
    if (T > 0.0 || p.n > 0) {
        // Split at -T: the kernel is smooth on each side but only C^0 across.
        if (p.n > 0 && lower < -T) {
            integral += quad::integrate_adaptive(integrand, lower, -T, opts.quad_tol).value;
            res.tail_estimate = forcing_scale(forcing, lower) *
                                std::abs(kernel_F(p, T, lower)) * std::exp(lower) /
                                std::max(0.5 * p.n, 1e-9);
        }
        if (T > 0.0)
            integral += quad::integrate_adaptive(integrand, -T, 0.0, opts.quad_tol).value;
    }
    cplx sum = integral;
    const std::array<cplx, 3> data{data0[0], data0[1], data0[2]};
    for (int m = 0; m < 3; ++m) sum += kernel_Fi(p, T, m) * data[m];
    res.value = sum;
    return res;
}

}  // namespace horolab::kernels
