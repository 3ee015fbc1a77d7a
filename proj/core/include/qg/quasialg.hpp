#ifndef QG_QUASIALG_HPP
#define QG_QUASIALG_HPP

#include <map>
#include <utility>

#include "qg/algebra.hpp"
#include "qg/cochain.hpp"

namespace qg {

/// Raised when a gauge element vanishes at some position; carries the point.
struct SingularGaugeElement : std::runtime_error {
    GroupVector position;
    explicit SingularGaugeElement(const GroupVector& x)
        : std::runtime_error("gauge element vanishes at position " + x.str()), position(x) {}
};

/// The twisted group algebra A_F: same vector space as the group algebra,
/// product e_a . e_b = F^{-1}(a,b) e_{a+b}. All built-in cochains are
/// +-1 valued, so F^{-1} = F and the octonion convention is recovered.
class TwistedAlgebra {
public:
    explicit TwistedAlgebra(Cochain f);

    static TwistedAlgebra octonions() { return TwistedAlgebra(octonion_cochain()); }
    static TwistedAlgebra clifford(int n) { return TwistedAlgebra(clifford_cochain(n)); }

    int dim() const { return f_.dim(); }
    const Cochain& cochain() const { return f_; }
    const Associator& associator() const { return phi_; }

    Scalar f(const GroupVector& a, const GroupVector& b) const { return f_.value(a, b); }
    Scalar f_inv(const GroupVector& a, const GroupVector& b) const {
        return Scalar(1) / f_.value(a, b);
    }
    Scalar phi(const GroupVector& a, const GroupVector& b, const GroupVector& c) const {
        return phi_.value(a, b, c);
    }

private:
    Cochain f_;
    Associator phi_;
};

/// Bilinear extension of e_a . e_b = F^{-1}(a,b) e_{a+b}.
AlgebraElement bullet(const AlgebraElement& x, const AlgebraElement& y, const TwistedAlgebra& alg);

/// (e_a . e_b) . e_c == Phi(a,b,c) e_a . (e_b . e_c), checked exactly.
bool associator_identity(const GroupVector& a, const GroupVector& b, const GroupVector& c,
                         const TwistedAlgebra& alg);

/// E_a = (u^{a1} . v^{a2}) . w^{a3} = (-1)^{a1a2+a1a3+a2a3} e_a (n=3).
AlgebraElement e_normalized(const GroupVector& a);

/// Pointwise inverse by Fourier transform: gamma^{-1}_a = 2^{-n} sum_x e_a(x)/gamma(x).
/// Requires gamma(x) != 0 at every position; throws SingularGaugeElement otherwise.
AlgebraElement invert(const AlgebraElement& gamma);

/// Finite bidifferential operator sum c_{S,T} d^S (x) d^T in the monomial
/// basis, with d^i the forward finite difference (R_i - 1). Exponents are
/// capped at one per direction since (d^i)^2 = -2 d^i on Z_2.
struct BidiffOperator {
    int n = 0;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Scalar> terms; // (left mask, right mask)

    Scalar coeff(std::uint32_t left, std::uint32_t right) const {
        auto it = terms.find({left, right});
        return it == terms.end() ? Scalar(0) : it->second;
    }

    /// Apply to position-space functions and multiply pointwise.
    AlgebraElement apply(const AlgebraElement& f, const AlgebraElement& g) const;
};

/// Finite difference in direction i on a position-space table.
AlgebraElement finite_difference(const AlgebraElement& f, int i);

/// Expand 2^{-2n} sum_{y,z} F_pos(y,z) (1+d)^y (x) (1+d)^z into monomials.
/// F_pos must come from fourier_cochain (it carries the 2^n factor).
BidiffOperator star_expand(const Cochain& f_pos);

/// Position-space bullet product (f.g)(x) via the momentum picture; the
/// independent check target for star_expand.
AlgebraElement bullet_position(const AlgebraElement& f, const AlgebraElement& g,
                               const TwistedAlgebra& alg);

} // namespace qg

#endif
