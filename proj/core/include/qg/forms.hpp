#ifndef QG_FORMS_HPP
#define QG_FORMS_HPP

#include <map>
#include <optional>
#include <utility>

#include "qg/algebra.hpp"
#include "qg/quasialg.hpp"

namespace qg {

/// Element of the exterior algebra Omega(Z_2^n): a sum of monomials
/// c e_a tau_S stored normal-ordered (function coefficient to the left,
/// tau indices strictly increasing, encoded as a bitmask). Mixed-degree
/// sums are allowed.
class DifferentialForm {
public:
    DifferentialForm() = default;
    explicit DifferentialForm(int n) : n_(n) {}

    static DifferentialForm from_function(const AlgebraElement& f);
    static DifferentialForm monomial(const GroupVector& a, std::uint32_t taus, const Scalar& c);
    static DifferentialForm tau(int i, int n) {
        return monomial(GroupVector::zero(n), 1u << (i - 1), Scalar(1));
    }
    /// theta = sum_i tau_i, the flat reference connection.
    static DifferentialForm theta(int n);

    int dim() const { return n_; }
    const std::map<std::pair<GroupVector, std::uint32_t>, Scalar>& terms() const { return terms_; }

    Scalar coeff(const GroupVector& a, std::uint32_t taus) const {
        auto it = terms_.find({a, taus});
        return it == terms_.end() ? Scalar(0) : it->second;
    }
    void add(const GroupVector& a, std::uint32_t taus, const Scalar& c);

    bool is_zero() const { return terms_.empty(); }
    /// Degree if homogeneous, nullopt for inhomogeneous or zero forms.
    std::optional<int> degree() const;

    /// Group-degree-a part (the delta_a action of amplification).
    DifferentialForm group_component(const GroupVector& a) const;
    /// The coefficient function of tau_i (for degree-1 forms): sum_a c_{a,{i}} e_a.
    AlgebraElement tau_coefficient(int i) const;

    friend DifferentialForm operator+(const DifferentialForm& x, const DifferentialForm& y);
    friend DifferentialForm operator-(const DifferentialForm& x, const DifferentialForm& y);
    friend DifferentialForm operator*(const Scalar& s, const DifferentialForm& x);
    friend bool operator==(const DifferentialForm& x, const DifferentialForm& y) {
        return x.n_ == y.n_ && x.terms_ == y.terms_;
    }
    friend bool operator!=(const DifferentialForm& x, const DifferentialForm& y) {
        return !(x == y);
    }

private:
    int n_ = 0;
    std::map<std::pair<GroupVector, std::uint32_t>, Scalar> terms_;
};

/// Untwisted graded wedge. tau_i move past e_b with sign (-1)^{b_i} and
/// anticommute among themselves; overlapping tau directions vanish.
DifferentialForm wedge(const DifferentialForm& x, const DifferentialForm& y);

/// Exterior derivative: d(c e_a tau_S) = sum_i (-2 a_i c) e_a tau_i ^ tau_S.
DifferentialForm d(const DifferentialForm& x);

/// Cochain-deformed wedge: F^{-1}(a,b) acts through the group degrees only.
DifferentialForm bullet_wedge(const DifferentialForm& x, const DifferentialForm& y,
                              const TwistedAlgebra& alg);

/// Verifies tau_i = 1/2 g^{-1} . dg for the octonion generators g = u, v, w,
/// where g^{-1} is the pointwise (convolution) inverse. Returns the computed
/// (tau_1, tau_2, tau_3).
std::array<DifferentialForm, 3> bullet_invariant_forms(const TwistedAlgebra& alg);

} // namespace qg

#endif
