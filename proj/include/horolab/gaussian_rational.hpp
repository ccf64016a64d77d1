#pragma once

// Exact arithmetic over Q(i): pairs of arbitrary-precision rationals.
// Used by the enveloping-algebra module and by identity tests that need
// exact 2x2 matrix computations.

#include <boost/multiprecision/cpp_int.hpp>

#include <ostream>
#include <sstream>
#include <string>

namespace horolab {

using Rational = boost::multiprecision::cpp_rational;

struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(long r) : re(r) {}
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    // p/q as a real rational
    static GaussianRational frac(long p, long q) { return {Rational(p) / q, Rational(0)}; }

    bool is_zero() const { return re == 0 && im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    friend std::ostream& operator<<(std::ostream& os, const GaussianRational& x) {
        if (x.im == 0) return os << x.re;
        if (x.re == 0) return os << x.im << "*i";
        return os << "(" << x.re << (x.im < 0 ? "" : "+") << x.im << "*i)";
    }

    std::string str() const {
        std::ostringstream os;
        os << *this;
        return os.str();
    }
};

// Exact 2x2 matrix over Q(i). Enough for the matrix realization of the
// Lie-algebra basis and for commutator oracles in tests.
struct Mat2q {
    GaussianRational a, b, c, d;  // (a b; c d)

    static Mat2q zero() { return {}; }
    static Mat2q identity() { return {1, 0, 0, 1}; }

    friend Mat2q operator+(const Mat2q& x, const Mat2q& y) {
        return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
    }
    friend Mat2q operator-(const Mat2q& x, const Mat2q& y) {
        return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
    }
    friend Mat2q operator*(const Mat2q& x, const Mat2q& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    friend Mat2q operator*(const GaussianRational& s, const Mat2q& y) {
        return {s * y.a, s * y.b, s * y.c, s * y.d};
    }
    friend bool operator==(const Mat2q& x, const Mat2q& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }

    Mat2q commutator(const Mat2q& y) const { return (*this) * y - y * (*this); }
    GaussianRational trace() const { return a + d; }
};

}  // namespace horolab
