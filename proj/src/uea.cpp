#include "horolab/uea.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace horolab::uea {

namespace {

using GQ = GaussianRational;

Mat2q basis_matrix(Basis x) {
    const GQ half = GQ::frac(1, 2);
    const GQ ihalf = GQ(Rational(0), Rational(1) / 2);
    const GQ i = GQ::i();
    switch (x) {
        case Basis::H: return {half, 0, 0, -half};
        case Basis::Ep: return {0, 1, 0, 0};
        case Basis::Em: return {0, 0, 1, 0};
        case Basis::J: return {ihalf, 0, 0, -ihalf};
        case Basis::Kp: return {0, i, 0, 0};
        case Basis::Km: return {0, 0, i, 0};
    }
    throw std::logic_error("bad basis symbol");
}

// Expand a traceless matrix with Gaussian-rational entries over the REAL
// span of the six basis matrices. Valid because the six matrices form a
// basis of sl(2,C) viewed as a real Lie algebra.
std::array<Rational, 6> decompose(const Mat2q& m) {
    if (!(m.trace().is_zero()))
        throw std::logic_error("decompose: matrix is not traceless");
    std::array<Rational, 6> c{};
    c[0] = 2 * m.a.re;  // H
    c[1] = 2 * m.a.im;  // J
    c[2] = m.b.re;      // E+
    c[3] = m.b.im;      // K+
    c[4] = m.c.re;      // E-
    c[5] = m.c.im;      // K-
    return c;
}

// Structure constants [X_i, X_j] = sum_k table[i][j][k] X_k, built once from
// the matrix realization.
const std::array<std::array<std::array<Rational, 6>, 6>, 6>& structure_constants() {
    static const auto table = [] {
        std::array<std::array<std::array<Rational, 6>, 6>, 6> t{};
        for (int i = 0; i < 6; ++i) {
            for (int j = 0; j < 6; ++j) {
                Mat2q comm = basis_matrix(Basis(i)).commutator(basis_matrix(Basis(j)));
                auto coeffs = decompose(comm);
                // Closure check: reconstruct and compare.
                Mat2q rebuilt = Mat2q::zero();
                for (int k = 0; k < 6; ++k)
                    rebuilt = rebuilt + GQ(coeffs[k]) * basis_matrix(Basis(k));
                if (!(rebuilt == comm))
                    throw std::logic_error("structure constants do not close");
                t[i][j] = coeffs;
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

Mat2q matrix_of(Basis x) { return basis_matrix(x); }

UEAElement UEAElement::one() {
    UEAElement e;
    e.terms_[Monomial{}] = GQ(1);
    return e;
}

UEAElement UEAElement::generator(Basis x) {
    UEAElement e;
    e.terms_[Monomial{static_cast<std::uint8_t>(x)}] = GQ(1);
    return e;
}

UEAElement UEAElement::monomial(const Monomial& m, const GaussianRational& coeff) {
    for (size_t i = 0; i + 1 < m.size(); ++i)
        if (m[i] > m[i + 1]) throw std::invalid_argument("monomial is not PBW-ordered");
    UEAElement e;
    if (!coeff.is_zero()) e.terms_[m] = coeff;
    return e;
}

int UEAElement::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) d = std::max<int>(d, static_cast<int>(m.size()));
    return d;
}

GaussianRational UEAElement::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? GQ(0) : it->second;
}

void UEAElement::add_term(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

UEAElement& UEAElement::operator+=(const UEAElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

UEAElement& UEAElement::operator-=(const UEAElement& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

UEAElement operator*(const GaussianRational& s, const UEAElement& e) {
    UEAElement out;
    if (s.is_zero()) return out;
    for (const auto& [m, c] : e.terms_) out.terms_[m] = s * c;
    return out;
}

UEAElement bracket(Basis x, Basis y) {
    const auto& coeffs = structure_constants()[int(x)][int(y)];
    UEAElement out;
    for (int k = 0; k < 6; ++k)
        if (coeffs[k] != 0)
            out += GQ(coeffs[k]) * UEAElement::generator(Basis(k));
    return out;
}

// Straightens an arbitrary word into PBW normal form. Recursion terminates:
// every rewrite either lowers the degree or removes an inversion.
UEAElement rewrite_word(const Monomial& word) {
    for (size_t i = 0; i + 1 < word.size(); ++i) {
        if (word[i] <= word[i + 1]) continue;
        Monomial swapped = word;
        std::swap(swapped[i], swapped[i + 1]);
        UEAElement out = rewrite_word(swapped);
        const auto& coeffs = structure_constants()[word[i]][word[i + 1]];
        for (int k = 0; k < 6; ++k) {
            if (coeffs[k] == 0) continue;
            Monomial shorter;
            shorter.reserve(word.size() - 1);
            shorter.insert(shorter.end(), word.begin(), word.begin() + i);
            shorter.push_back(static_cast<std::uint8_t>(k));
            shorter.insert(shorter.end(), word.begin() + i + 2, word.end());
            out += GQ(coeffs[k]) * rewrite_word(shorter);
        }
        return out;
    }
    UEAElement out;
    out.add_term(word, GQ(1));
    return out;
}

namespace {

// Product of two normal monomials, memoized. The cache is guarded; workloads
// are degree <= 8 so contention is a non-issue.
const UEAElement& monomial_product(const Monomial& a, const Monomial& b) {
    static std::map<std::pair<Monomial, Monomial>, UEAElement> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_pair(a, b);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    Monomial word = a;
    word.insert(word.end(), b.begin(), b.end());
    return cache.emplace(std::move(key), rewrite_word(word)).first->second;
}

}  // namespace

UEAElement operator*(const UEAElement& a, const UEAElement& b) {
    UEAElement out;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            out += (ca * cb) * monomial_product(ma, mb);
    return out;
}

std::string UEAElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (auto s : m) os << " " << kBasisNames[s];
    }
    return os.str();
}

namespace {

UEAElement gen(Basis x) { return UEAElement::generator(x); }

}  // namespace

UEAElement omega1() {
    auto H = gen(Basis::H), J = gen(Basis::J), Ep = gen(Basis::Ep), Em = gen(Basis::Em),
         Kp = gen(Basis::Kp), Km = gen(Basis::Km);
    return H * H - J * J - GQ(2) * H + Ep * Em - Kp * Km;
}

UEAElement omega2() {
    auto H = gen(Basis::H), J = gen(Basis::J), Ep = gen(Basis::Ep), Em = gen(Basis::Em),
         Kp = gen(Basis::Kp), Km = gen(Basis::Km);
    return GQ(2) * (H * J) - GQ(2) * J + Ep * Km + Kp * Em;
}

UEAElement u1() {
    auto H = gen(Basis::H), J = gen(Basis::J), Ep = gen(Basis::Ep), Em = gen(Basis::Em),
         Kp = gen(Basis::Kp), Km = gen(Basis::Km);
    return GQ::frac(1, 2) * (H * Em) + GQ::frac(1, 2) * (J * Km) -
           GQ::frac(1, 4) * (Ep * Km * Km) - GQ::frac(1, 2) * (Kp * Em * Km) - H * H * Em -
           H * J * Km;
}

UEAElement u2() {
    auto H = gen(Basis::H), J = gen(Basis::J), Em = gen(Basis::Em), Kp = gen(Basis::Kp),
         Km = gen(Basis::Km);
    return GQ::frac(1, 2) * (H * Km) - GQ::frac(1, 2) * (J * Em) +
           GQ::frac(1, 4) * (Kp * Em * Em) - H * H * Km + H * J * Em;
}

UEAElement v1() {
    auto H = gen(Basis::H), J = gen(Basis::J), Em = gen(Basis::Em), Km = gen(Basis::Km);
    return Em - Em * H - GQ::frac(1, 2) * (Km * J);
}

UEAElement v2() {
    auto H = gen(Basis::H), J = gen(Basis::J), Em = gen(Basis::Em), Km = gen(Basis::Km);
    return GQ(-1) * Km + Km * H - GQ::frac(1, 2) * (Em * J);
}

IdentityReport verify_identity_quartic() {
    auto H = gen(Basis::H), Ep = gen(Basis::Ep), Kp = gen(Basis::Kp);
    auto O1 = omega1(), O2 = omega2();
    UEAElement lhs = H * H * H * H - GQ(4) * (H * H * H) +
                     (GQ(5) * UEAElement::one() - O1) * (H * H) +
                     GQ(2) * ((O1 - UEAElement::one()) * H) -
                     (O1 + GQ::frac(1, 4) * (O2 * O2));
    UEAElement rhs = Ep * u1() - Kp * u2();
    IdentityReport rep;
    rep.residual = lhs - rhs;
    rep.ok = rep.residual.is_zero();
    return rep;
}

IdentityReport verify_identity_cubic() {
    auto H = gen(Basis::H), J = gen(Basis::J), Ep = gen(Basis::Ep), Kp = gen(Basis::Kp);
    auto O1 = omega1();
    UEAElement lhs = H * H * H - GQ(3) * (H * H) +
                     (GQ(2) * UEAElement::one() - O1) * H + O1;
    UEAElement rhs = GQ::frac(1, 2) * (omega2() * J) + Ep * v1() + Kp * v2();
    IdentityReport rep;
    rep.residual = lhs - rhs;
    rep.ok = rep.residual.is_zero();
    return rep;
}

CentralityReport verify_centrality() {
    CentralityReport rep;
    rep.ok = true;
    for (const auto& omega : {omega1(), omega2()}) {
        for (int k = 0; k < 6; ++k) {
            auto X = gen(Basis(k));
            if (!(omega * X - X * omega).is_zero()) {
                rep.ok = false;
                rep.offending = kBasisNames[k];
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace horolab::uea
