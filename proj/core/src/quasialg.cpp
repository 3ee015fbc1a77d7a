#include "qg/quasialg.hpp"

#include <stdexcept>

namespace qg {

TwistedAlgebra::TwistedAlgebra(Cochain f) : f_(std::move(f)), phi_(f_) {
    if (!f_.is_normalized())
        throw std::invalid_argument("TwistedAlgebra: cochain must be normalized");
}

AlgebraElement bullet(const AlgebraElement& x, const AlgebraElement& y, const TwistedAlgebra& alg) {
    if (x.dim() != alg.dim() || y.dim() != alg.dim())
        throw std::invalid_argument("bullet: dimension mismatch");
    AlgebraElement r(alg.dim());
    for (auto& [a, ca] : x.coeffs())
        for (auto& [b, cb] : y.coeffs())
            r.add(group_add(a, b), alg.f_inv(a, b) * ca * cb);
    return r;
}

bool associator_identity(const GroupVector& a, const GroupVector& b, const GroupVector& c,
                         const TwistedAlgebra& alg) {
    AlgebraElement ea = AlgebraElement::basis(a);
    AlgebraElement eb = AlgebraElement::basis(b);
    AlgebraElement ec = AlgebraElement::basis(c);
    AlgebraElement lhs = bullet(bullet(ea, eb, alg), ec, alg);
    AlgebraElement rhs = alg.phi(a, b, c) * bullet(ea, bullet(eb, ec, alg), alg);
    return lhs == rhs;
}

AlgebraElement e_normalized(const GroupVector& a) {
    if (a.n != 3) throw std::invalid_argument("e_normalized: requires n=3");
    unsigned e = unsigned(a.bit(1) & a.bit(2)) ^ unsigned(a.bit(1) & a.bit(3)) ^
                 unsigned(a.bit(2) & a.bit(3));
    return sign_pow(e) * AlgebraElement::basis(a);
}

AlgebraElement invert(const AlgebraElement& gamma) {
    int n = gamma.dim();
    AlgebraElement recip(n);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        GroupVector gx(x, n);
        Scalar v = gamma.evaluate(gx);
        if (v.is_zero()) throw SingularGaugeElement(gx);
        recip.set(gx, v.inverse());
    }
    return fourier(recip);
}

AlgebraElement finite_difference(const AlgebraElement& f, int i) {
    int n = f.dim();
    GroupVector ei = GroupVector::unit(i, n);
    AlgebraElement r(n);
    for (std::uint32_t x = 0; x < (1u << n); ++x) {
        GroupVector gx(x, n);
        r.set(gx, f.coeff(group_add(gx, ei)) - f.coeff(gx));
    }
    return r;
}

AlgebraElement BidiffOperator::apply(const AlgebraElement& f, const AlgebraElement& g) const {
    AlgebraElement result(n);
    for (auto& [key, c] : terms) {
        AlgebraElement df = f, dg = g;
        for (int i = 1; i <= n; ++i) {
            if (key.first >> (i - 1) & 1u) df = finite_difference(df, i);
            if (key.second >> (i - 1) & 1u) dg = finite_difference(dg, i);
        }
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
            GroupVector gx(x, n);
            result.add(gx, c * df.coeff(gx) * dg.coeff(gx));
        }
    }
    return result;
}

BidiffOperator star_expand(const Cochain& f_pos) {
    int n = f_pos.dim();
    // (1+d^i)^{y_i} with y_i in {0,1} expands to sum over subsets S of y,
    // so the coefficient of d^S (x) d^T is 2^{-2n} sum_{y >= S, z >= T} F(y,z).
    Scalar norm(Rational(1, std::uint64_t(1) << (2 * n)));
    BidiffOperator op;
    op.n = n;
    for (std::uint32_t s = 0; s < (1u << n); ++s)
        for (std::uint32_t t = 0; t < (1u << n); ++t) {
            Scalar c(0);
            for (std::uint32_t y = 0; y < (1u << n); ++y) {
                if ((y & s) != s) continue;
                for (std::uint32_t z = 0; z < (1u << n); ++z) {
                    if ((z & t) != t) continue;
                    c += f_pos.value(GroupVector(y, n), GroupVector(z, n));
                }
            }
            c = norm * c;
            if (!c.is_zero()) op.terms[{s, t}] = c;
        }
    return op;
}

AlgebraElement bullet_position(const AlgebraElement& f, const AlgebraElement& g,
                               const TwistedAlgebra& alg) {
    return fourier_inverse(bullet(fourier(f), fourier(g), alg));
}

} // namespace qg
