#pragma once

// Closed-form spectral kernels for the irreducible unitary representation
// classes of SL(2,C), their decay envelopes, and a numerical ODE oracle for
// validating the integral representation the kernels come from.
//
// All kernels reduce to iterated exponential integrals over simplices; those
// are evaluated exactly as divided differences of the exponential, which
// stay numerically stable at and near degenerate exponent collisions.

#include <array>
#include <complex>
#include <functional>
#include <span>

namespace horolab::kernels {

using cplx = std::complex<double>;

enum class RepClass {
    principal_positive_n,  // n > 0, nu purely imaginary
    principal_spherical,   // n = 0, nu in i R_{>=0}
    complementary          // n = 0, nu in (0, 2)
};

struct RepParams {
    int n = 0;
    cplx nu{0.0, 0.0};
    RepClass cls = RepClass::principal_spherical;

    // n >= 0 and nu = i * nu_imag with nu_imag >= 0 for n = 0.
    static RepParams principal(int n, double nu_imag);
    // nu in (0, 2).
    static RepParams complementary(double nu);

    // alpha_1 = 1 - n/2, alpha_2 = 1 - nu/2, alpha_3 = 1 + nu/2, alpha_4 = 1 + n/2
    std::array<cplx, 4> alphas() const;
    int ode_order() const { return n > 0 ? 4 : 3; }
};

// (lambda_1, lambda_2) = ((n^2 + nu^2)/4 - 1, i n nu / 2).
std::pair<cplx, cplx> casimir_eigenvalues(const RepParams& p);

// Divided difference of exp over the given nodes (any multiplicities), via
// the exponential of the associated bidiagonal matrix.
cplx exp_divided_difference(std::span<const cplx> nodes);

// S_k(x; beta) = Int_{0 <= u_k <= ... <= u_1 <= x} exp(sum_i beta_i u_i) du,
// equal to x^k times the exp divided difference over the scaled partial sums.
cplx simplex_exp_integral(double x, std::span<const cplx> betas);

// Kernel F(T, t) for T >= 0, t <= 0. Vanishes for t <= -T when n = 0; decays
// like an explicit exponential there when n > 0.
cplx kernel_F(const RepParams& p, double T, double t);

// Kernels F_0, F_1, F_2 multiplying the derivative data at 0.
cplx kernel_Fi(const RepParams& p, double T, int i);

// Stated decay envelopes (sharpened forms in the complementary case). The
// implied absolute constants are fitted by callers, never asserted as 1.
double kernel_envelope_F(const RepParams& p, double T, double t);
double kernel_envelope_Fi(const RepParams& p, double T, int i);

struct OdeOracleOptions {
    double step = 1e-4;       // fixed RK4 step
    double tail_tol = 1e-7;   // cap on the truncated tail of the n > 0 case
    double quad_tol = 1e-11;  // adaptive tolerance for auxiliary integrals
};

struct OdeOracleResult {
    cplx value{};              // f(-T)
    double tail_estimate = 0;  // bound on the truncated tail contribution
};

// Integrates the scalar ODE prod_i (d/dt - alpha_i) f = I(t) from 0 down to
// -T with data (f(0), f'(0), f''(0)); for n > 0 the fourth datum is fixed by
// the tail condition on (d/dt - alpha_2)(d/dt - alpha_3)(d/dt - alpha_4) f.
OdeOracleResult ode_oracle(const RepParams& p, const std::function<cplx(double)>& forcing,
                           double T, const std::array<cplx, 3>& data0,
                           const OdeOracleOptions& opts = {});

// The closed-form side of the same quantity:
//   f(-T) = Int F(T,t) I(t) dt + sum_m F_m(T) f^(m)(0).
OdeOracleResult representation_formula(const RepParams& p,
                                       const std::function<cplx(double)>& forcing, double T,
                                       const std::array<cplx, 3>& data0,
                                       const OdeOracleOptions& opts = {});

// Lower truncation point for the n > 0 tail integrals.
double tail_cutoff(const RepParams& p, double T);

}  // namespace horolab::kernels
