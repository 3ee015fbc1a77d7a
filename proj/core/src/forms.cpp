#include "qg/forms.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace qg {

namespace {

// Sign of merging tau_S ^ tau_T into tau_{S|T}: count transpositions moving
// each element of T past the larger elements of S.
int merge_parity(std::uint32_t s, std::uint32_t t) {
    int parity = 0;
    for (int j = 0; j < kMaxDim; ++j) {
        if (t >> j & 1u) {
            std::uint32_t above = s & ~((2u << j) - 1u); // elements of S greater than j+1
            parity ^= std::popcount(above) & 1;
        }
    }
    return parity;
}

} // namespace

DifferentialForm DifferentialForm::from_function(const AlgebraElement& f) {
    DifferentialForm r(f.dim());
    for (auto& [a, c] : f.coeffs()) r.add(a, 0, c);
    return r;
}

DifferentialForm DifferentialForm::monomial(const GroupVector& a, std::uint32_t taus,
                                            const Scalar& c) {
    DifferentialForm r(a.n);
    if (taus >> a.n) throw std::invalid_argument("DifferentialForm: tau index out of range");
    r.add(a, taus, c);
    return r;
}

DifferentialForm DifferentialForm::theta(int n) {
    DifferentialForm r(n);
    for (int i = 1; i <= n; ++i) r.add(GroupVector::zero(n), 1u << (i - 1), Scalar(1));
    return r;
}

void DifferentialForm::add(const GroupVector& a, std::uint32_t taus, const Scalar& c) {
    if (a.n != n_) throw std::invalid_argument("DifferentialForm: dimension mismatch");
    auto key = std::make_pair(a, taus);
    auto it = terms_.find(key);
    Scalar v = (it == terms_.end() ? Scalar(0) : it->second) + c;
    if (v.is_zero()) {
        if (it != terms_.end()) terms_.erase(it);
    } else {
        terms_[key] = v;
    }
}

std::optional<int> DifferentialForm::degree() const {
    std::optional<int> deg;
    for (auto& [key, c] : terms_) {
        int k = std::popcount(key.second);
        if (deg && *deg != k) return std::nullopt;
        deg = k;
    }
    return deg;
}

DifferentialForm DifferentialForm::group_component(const GroupVector& a) const {
    DifferentialForm r(n_);
    for (auto& [key, c] : terms_)
        if (key.first == a) r.add(key.first, key.second, c);
    return r;
}

AlgebraElement DifferentialForm::tau_coefficient(int i) const {
    AlgebraElement r(n_);
    std::uint32_t mask = 1u << (i - 1);
    for (auto& [key, c] : terms_)
        if (key.second == mask) r.add(key.first, c);
    return r;
}

DifferentialForm operator+(const DifferentialForm& x, const DifferentialForm& y) {
    DifferentialForm r = x;
    for (auto& [key, c] : y.terms_) r.add(key.first, key.second, c);
    return r;
}

DifferentialForm operator-(const DifferentialForm& x, const DifferentialForm& y) {
    DifferentialForm r = x;
    for (auto& [key, c] : y.terms_) r.add(key.first, key.second, -c);
    return r;
}

DifferentialForm operator*(const Scalar& s, const DifferentialForm& x) {
    DifferentialForm r(x.n_);
    if (s.is_zero()) return r;
    for (auto& [key, c] : x.terms_) r.terms_[key] = s * c;
    return r;
}

DifferentialForm wedge(const DifferentialForm& x, const DifferentialForm& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    DifferentialForm r(x.dim());
    for (auto& [kx, cx] : x.terms()) {
        for (auto& [ky, cy] : y.terms()) {
            std::uint32_t s = kx.second, t = ky.second;
            if (s & t) continue;
            // move tau_S past e_b, then merge tau_S tau_T
            int parity = std::popcount(s & ky.first.bits) & 1;
            parity ^= merge_parity(s, t);
            Scalar c = sign_pow(unsigned(parity)) * cx * cy;
            r.add(group_add(kx.first, ky.first), s | t, c);
        }
    }
    return r;
}

DifferentialForm d(const DifferentialForm& x) {
    int n = x.dim();
    DifferentialForm r(n);
    for (auto& [key, c] : x.terms()) {
        for (int i = 1; i <= n; ++i) {
            if (!key.first.bit(i)) continue;
            std::uint32_t ti = 1u << (i - 1);
            if (key.second & ti) continue;
            Scalar coeff = Scalar(-2) * c * sign_pow(unsigned(merge_parity(ti, key.second)));
            r.add(key.first, ti | key.second, coeff);
        }
    }
    return r;
}

DifferentialForm bullet_wedge(const DifferentialForm& x, const DifferentialForm& y,
                              const TwistedAlgebra& alg) {
    if (x.dim() != alg.dim() || y.dim() != alg.dim())
        throw std::invalid_argument("bullet_wedge: dimension mismatch");
    DifferentialForm r(x.dim());
    for (auto& [kx, cx] : x.terms()) {
        DifferentialForm mx = DifferentialForm::monomial(kx.first, kx.second, cx);
        for (auto& [ky, cy] : y.terms()) {
            DifferentialForm my = DifferentialForm::monomial(ky.first, ky.second, cy);
            r = r + alg.f_inv(kx.first, ky.first) * wedge(mx, my);
        }
    }
    return r;
}

std::array<DifferentialForm, 3> bullet_invariant_forms(const TwistedAlgebra& alg) {
    if (alg.dim() != 3) throw std::invalid_argument("bullet_invariant_forms: requires n=3");
    std::array<DifferentialForm, 3> out;
    for (int i = 1; i <= 3; ++i) {
        AlgebraElement g = AlgebraElement::basis(GroupVector::unit(i, 3));
        DifferentialForm ginv = DifferentialForm::from_function(invert(g));
        DifferentialForm dg = d(DifferentialForm::from_function(g));
        out[i - 1] = Scalar(Rational(1, 2)) * bullet_wedge(ginv, dg, alg);
    }
    return out;
}

} // namespace qg
