#pragma once

// Exact noncommutative polynomial arithmetic in the universal enveloping
// algebra of the (complexified) Lie algebra of SL(2,C), with PBW normal
// forms over Gaussian-rational coefficients, plus the operator identities
// that the rest of the project relies on.

#include "horolab/gaussian_rational.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace horolab::uea {

// Fixed PBW order: H < J < E+ < K+ < E- < K-.
enum class Basis : std::uint8_t { H = 0, J = 1, Ep = 2, Kp = 3, Em = 4, Km = 5 };

inline constexpr std::array<const char*, 6> kBasisNames{"H", "J", "E+", "K+", "E-", "K-"};

// 2x2 matrix realization of a basis symbol (exact entries).
Mat2q matrix_of(Basis x);

// A PBW monomial: nondecreasing sequence of basis symbols.
using Monomial = std::vector<std::uint8_t>;

class UEAElement {
  public:
    UEAElement() = default;

    static UEAElement zero() { return {}; }
    static UEAElement one();
    static UEAElement generator(Basis x);
    static UEAElement monomial(const Monomial& m, const GaussianRational& coeff);

    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for the zero element

    const std::map<Monomial, GaussianRational>& terms() const { return terms_; }
    GaussianRational coefficient(const Monomial& m) const;

    UEAElement& operator+=(const UEAElement& o);
    UEAElement& operator-=(const UEAElement& o);
    friend UEAElement operator+(UEAElement a, const UEAElement& b) { return a += b; }
    friend UEAElement operator-(UEAElement a, const UEAElement& b) { return a -= b; }
    friend UEAElement operator*(const GaussianRational& s, const UEAElement& e);
    friend UEAElement operator*(const UEAElement& a, const UEAElement& b);
    friend bool operator==(const UEAElement& a, const UEAElement& b) { return a.terms_ == b.terms_; }

    std::string str() const;

  private:
    void add_term(const Monomial& m, const GaussianRational& c);
    // PBW-ordered monomials -> coefficients; zero coefficients are never stored
    std::map<Monomial, GaussianRational> terms_;

    friend UEAElement rewrite_word(const Monomial& word);
};

// Lie bracket of two basis symbols, expanded over the basis. The structure
// constants come from the 2x2 matrix realization and are computed once.
UEAElement bracket(Basis x, Basis y);

// The two generators of the center used throughout:
//   Omega1 = H^2 - J^2 - 2H + E+E- - K+K-
//   Omega2 = 2HJ - 2J + E+K- + K+E-
UEAElement omega1();
UEAElement omega2();

// U1, U2 (degree 3) and V1, V2 (degree 2) from the two operator identities.
UEAElement u1();
UEAElement u2();
UEAElement v1();
UEAElement v2();

struct IdentityReport {
    bool ok = false;
    UEAElement residual;  // exact normal form of LHS - RHS
};

// H^4 - 4H^3 + (5-Omega1)H^2 + 2(Omega1-1)H - (Omega1 + (1/4)Omega2^2)
//   == E+ U1 - K+ U2
IdentityReport verify_identity_quartic();

// H^3 - 3H^2 + (2-Omega1)H + Omega1 == (1/2)Omega2 J + E+ V1 + K+ V2
IdentityReport verify_identity_cubic();

struct CentralityReport {
    bool ok = false;
    std::string offending;  // name of the first basis symbol with a nonzero commutator
};

// [Omega1, X] = [Omega2, X] = 0 for every basis symbol X.
CentralityReport verify_centrality();

}  // namespace horolab::uea
