#ifndef QG_SCALAR_HPP
#define QG_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qg {

using Rational = boost::multiprecision::cpp_rational;

/// Exact Gaussian-rational scalar: re + im*i with rational parts.
/// Closed under +, -, *, and / (for nonzero divisors); equality is exact.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() = default;
    Scalar(long v) : re(v) {}
    Scalar(int v) : re(v) {}
    Scalar(Rational r) : re(std::move(r)) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return re == 1 && im == 0; }

    Scalar conj() const { return {re, -im}; }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Scalar operator-(const Scalar& a) { return {-a.re, -a.im}; }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Scalar inverse() const {
        Rational d = re * re + im * im;
        if (d == 0) throw std::domain_error("Scalar: division by zero");
        return {re / d, -im / d};
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        return a * b.inverse();
    }
    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    // Prints "p/q", "r/s i", or "p/q+r/s i"; integers drop the denominator.
    std::string str() const {
        auto rat = [](const Rational& r) {
            std::string s = numerator(r).str();
            if (denominator(r) != 1) s += "/" + denominator(r).str();
            return s;
        };
        if (im == 0) return rat(re);
        std::string i = rat(im) + " i";
        if (re == 0) return i;
        return im > 0 ? rat(re) + "+" + i : rat(re) + i;
    }
};

inline Scalar sign_pow(unsigned exponent_parity) {
    return exponent_parity & 1u ? Scalar(-1) : Scalar(1);
}

} // namespace qg

#endif
