#include "qg/gauge.hpp"

#include <stdexcept>

namespace qg {

namespace {

// Product of functions (convolution of momentum coefficients).
AlgebraElement times(const AlgebraElement& f, const AlgebraElement& g) {
    AlgebraElement r(f.dim());
    for (auto& [a, ca] : f.coeffs())
        for (auto& [b, cb] : g.coeffs()) r.add(group_add(a, b), ca * cb);
    return r;
}

// Translation R_i in momentum space: e_a -> (-1)^{a_i} e_a.
AlgebraElement translate(const AlgebraElement& f, int i) {
    AlgebraElement r(f.dim());
    for (auto& [a, c] : f.coeffs()) r.set(a, sign_pow(unsigned(a.bit(i))) * c);
    return r;
}

// del^i = R_i - 1 in momentum space: e_a -> -2 a_i e_a.
AlgebraElement partial(const AlgebraElement& f, int i) {
    AlgebraElement r(f.dim());
    for (auto& [a, c] : f.coeffs())
        if (a.bit(i)) r.set(a, Scalar(-2) * c);
    return r;
}

DifferentialForm func(const AlgebraElement& f) { return DifferentialForm::from_function(f); }

} // namespace

Connection::Connection(DifferentialForm alpha) : alpha_(std::move(alpha)) {
    if (!alpha_.is_zero() && alpha_.degree() != 1)
        throw std::invalid_argument("Connection: alpha must be a degree-1 form");
}

DifferentialForm curvature(const Connection& alpha) {
    const DifferentialForm& a = alpha.alpha();
    return d(a) + wedge(a, a);
}

AlgebraElement curvature_component(const Connection& alpha, int i, int j) {
    AlgebraElement ai = alpha.component(i), aj = alpha.component(j);
    return partial(aj, i) - partial(ai, j) + times(ai, translate(aj, i)) -
           times(aj, translate(ai, j));
}

Connection gauge_transform(const Connection& alpha, const GaugeTransform& gamma) {
    DifferentialForm gi = func(gamma.gamma_inv());
    DifferentialForm g = func(gamma.gamma());
    DifferentialForm conj = wedge(gi, wedge(alpha.alpha(), g));
    DifferentialForm inhom = wedge(gi, d(g));
    return Connection(conj + inhom);
}

DifferentialForm curvature_twisted(const Connection& alpha, const TwistedAlgebra& alg) {
    int n = alg.dim();
    const DifferentialForm& a = alpha.alpha();
    DifferentialForm r = d(a);
    for (std::uint32_t ga = 0; ga < (1u << n); ++ga)
        for (std::uint32_t gb = 0; gb < (1u << n); ++gb) {
            GroupVector va(ga, n), vb(gb, n);
            DifferentialForm pa = a.group_component(va);
            DifferentialForm pb = a.group_component(vb);
            if (pa.is_zero() || pb.is_zero()) continue;
            r = r + alg.f(va, vb) * bullet_wedge(pa, pb, alg);
        }
    return r;
}

namespace {

// Shared body of the two twisted gauge-transform routes; `weight` supplies
// the conjugation coefficient for degrees (a, b, c).
template <typename Weight>
Connection twisted_transform(const Connection& alpha, const GaugeTransform& gamma,
                             const TwistedAlgebra& alg, Weight weight) {
    int n = alg.dim();
    DifferentialForm result(n);
    std::uint32_t size = 1u << n;
    for (std::uint32_t a = 0; a < size; ++a) {
        GroupVector va(a, n);
        AlgebraElement gia = amplify(gamma.gamma_inv(), va);
        if (gia.is_zero()) continue;
        DifferentialForm fa = DifferentialForm::from_function(gia);
        for (std::uint32_t b = 0; b < size; ++b) {
            GroupVector vb(b, n);
            DifferentialForm ab = alpha.alpha().group_component(vb);
            if (ab.is_zero()) continue;
            DifferentialForm left = bullet_wedge(fa, ab, alg);
            for (std::uint32_t c = 0; c < size; ++c) {
                GroupVector vc(c, n);
                AlgebraElement gc = amplify(gamma.gamma(), vc);
                if (gc.is_zero()) continue;
                result = result + weight(va, vb, vc) *
                                      bullet_wedge(left, DifferentialForm::from_function(gc), alg);
            }
        }
        // inhomogeneous part: sum_c F(a,c) gamma^{-1}_a . d gamma_c
        for (std::uint32_t c = 0; c < size; ++c) {
            GroupVector vc(c, n);
            AlgebraElement gc = amplify(gamma.gamma(), vc);
            if (gc.is_zero()) continue;
            result = result + alg.f(va, vc) *
                                  bullet_wedge(fa, d(DifferentialForm::from_function(gc)), alg);
        }
    }
    return Connection(result);
}

} // namespace

Connection gauge_transform_twisted(const Connection& alpha, const GaugeTransform& gamma,
                                   const TwistedAlgebra& alg) {
    return twisted_transform(alpha, gamma, alg,
                             [&](const GroupVector& a, const GroupVector& b, const GroupVector& c) {
                                 return alg.f(a, b) * alg.f(group_add(a, b), c);
                             });
}

Connection gauge_transform_twisted_general(const Connection& alpha, const GaugeTransform& gamma,
                                           const TwistedAlgebra& alg) {
    return twisted_transform(alpha, gamma, alg,
                             [&](const GroupVector& a, const GroupVector& b, const GroupVector& c) {
                                 return alg.f(group_add(a, b), c);
                             });
}

Connection gauge_transform_twisted_specialized(const Connection& alpha,
                                               const GaugeTransform& gamma,
                                               const TwistedAlgebra& alg) {
    return twisted_transform(alpha, gamma, alg,
                             [&](const GroupVector& a, const GroupVector& b, const GroupVector& c) {
                                 return alg.f(a, c) * alg.f(b, c);
                             });
}

DifferentialForm twisted_conjugation(const DifferentialForm& omega, const GaugeTransform& gamma,
                                     const TwistedAlgebra& alg) {
    int n = alg.dim();
    DifferentialForm result(n);
    std::uint32_t size = 1u << n;
    for (std::uint32_t a = 0; a < size; ++a) {
        GroupVector va(a, n);
        AlgebraElement gia = amplify(gamma.gamma_inv(), va);
        if (gia.is_zero()) continue;
        DifferentialForm fa = func(gia);
        for (std::uint32_t b = 0; b < size; ++b) {
            GroupVector vb(b, n);
            DifferentialForm wb = omega.group_component(vb);
            if (wb.is_zero()) continue;
            DifferentialForm left = bullet_wedge(fa, wb, alg);
            GroupVector vab = group_add(va, vb);
            for (std::uint32_t c = 0; c < size; ++c) {
                GroupVector vc(c, n);
                AlgebraElement gc = amplify(gamma.gamma(), vc);
                if (gc.is_zero()) continue;
                result = result + alg.f(va, vb) * alg.f(vab, vc) *
                                      bullet_wedge(left, func(gc), alg);
            }
        }
    }
    return result;
}

DifferentialForm amplify(const DifferentialForm& field, const GroupVector& a) {
    return field.group_component(a);
}

AlgebraElement amplify(const AlgebraElement& field, const GroupVector& a) {
    AlgebraElement r(field.dim());
    r.set(a, field.coeff(a));
    return r;
}

MatterField matter_transform(const MatterField& sigma, const GaugeTransform& gamma) {
    MatterField r;
    r.sigma.reserve(sigma.sigma.size());
    for (auto& s : sigma.sigma) r.sigma.push_back(times(s, gamma.gamma()));
    return r;
}

std::vector<DifferentialForm> covariant_derivative(const MatterField& sigma,
                                                   const Connection& alpha) {
    std::vector<DifferentialForm> r;
    r.reserve(sigma.sigma.size());
    for (auto& s : sigma.sigma) {
        DifferentialForm fs = DifferentialForm::from_function(s);
        r.push_back(d(fs) - wedge(fs, alpha.alpha()));
    }
    return r;
}

} // namespace qg
