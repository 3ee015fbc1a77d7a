#ifndef QG_ALGEBRA_HPP
#define QG_ALGEBRA_HPP

#include <map>
#include <stdexcept>

#include "qg/group.hpp"
#include "qg/scalar.hpp"

namespace qg {

/// Finitely supported map GroupVector -> Scalar. Used both for group-algebra
/// elements (momentum coefficients of e_a) and for functions tabulated on
/// position space; the two pictures are related by fourier()/fourier_inverse().
/// Zero coefficients are never stored.
class AlgebraElement {
public:
    AlgebraElement() = default;
    explicit AlgebraElement(int n) : n_(check_dim(n)) {}

    static AlgebraElement basis(const GroupVector& a) {
        AlgebraElement r(a.n);
        r.set(a, Scalar(1));
        return r;
    }
    static AlgebraElement unit(int n) { return basis(GroupVector::zero(n)); }

    int dim() const { return n_; }

    const std::map<GroupVector, Scalar>& coeffs() const { return coeffs_; }

    Scalar coeff(const GroupVector& a) const {
        auto it = coeffs_.find(a);
        return it == coeffs_.end() ? Scalar(0) : it->second;
    }
    void set(const GroupVector& a, const Scalar& c) {
        if (a.n != n_) throw std::invalid_argument("AlgebraElement: dimension mismatch");
        if (c.is_zero()) coeffs_.erase(a);
        else coeffs_[a] = c;
    }
    void add(const GroupVector& a, const Scalar& c) { set(a, coeff(a) + c); }

    bool is_zero() const { return coeffs_.empty(); }

    friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
        AlgebraElement r = x;
        for (auto& [a, c] : y.coeffs_) r.add(a, c);
        return r;
    }
    friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
        AlgebraElement r = x;
        for (auto& [a, c] : y.coeffs_) r.add(a, -c);
        return r;
    }
    friend AlgebraElement operator*(const Scalar& s, const AlgebraElement& x) {
        AlgebraElement r(x.n_);
        if (s.is_zero()) return r;
        for (auto& [a, c] : x.coeffs_) r.coeffs_[a] = s * c;
        return r;
    }
    friend bool operator==(const AlgebraElement& x, const AlgebraElement& y) {
        return x.n_ == y.n_ && x.coeffs_ == y.coeffs_;
    }
    friend bool operator!=(const AlgebraElement& x, const AlgebraElement& y) { return !(x == y); }

    /// Value of the element as a position-space function, f(x) = sum_a f_a e_a(x).
    Scalar evaluate(const GroupVector& x) const {
        Scalar v(0);
        for (auto& [a, c] : coeffs_) v += plane_wave(a, x) * c;
        return v;
    }

private:
    static int check_dim(int n) {
        if (n < 1 || n > kMaxDim) throw std::invalid_argument("AlgebraElement: dimension out of range");
        return n;
    }
    int n_ = 0;
    std::map<GroupVector, Scalar> coeffs_;
};

/// Position-function table -> momentum coefficients, f_a = 2^{-n} sum_x f(x) e_a(x).
/// The 1/2^n normalisation sits entirely on this side of the pair.
inline AlgebraElement fourier(const AlgebraElement& f) {
    int n = f.dim();
    Scalar norm(Rational(1, std::uint64_t(1) << n));
    AlgebraElement out(n);
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
        GroupVector ga(a, n);
        Scalar s(0);
        for (auto& [x, fx] : f.coeffs()) s += plane_wave(ga, x) * fx;
        out.set(ga, norm * s);
    }
    return out;
}

/// Momentum coefficients -> position-function table, f(x) = sum_a f_a e_a(x).
inline AlgebraElement fourier_inverse(const AlgebraElement& coeffs) {
    int n = coeffs.dim();
    AlgebraElement out(n);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        GroupVector gx(x, n);
        out.set(gx, coeffs.evaluate(gx));
    }
    return out;
}

} // namespace qg

#endif
