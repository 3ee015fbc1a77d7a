#ifndef QG_GAUGE_HPP
#define QG_GAUGE_HPP

#include <vector>

#include "qg/forms.hpp"

namespace qg {

/// U(1) connection, represented by its value at 1: a degree-1 form
/// alpha = sum_i alpha^i tau_i. The zero form is allowed (alpha = 0).
class Connection {
public:
    explicit Connection(DifferentialForm alpha);
    static Connection zero(int n) { return Connection(DifferentialForm(n)); }

    int dim() const { return alpha_.dim(); }
    const DifferentialForm& alpha() const { return alpha_; }
    /// alpha^i as momentum coefficients.
    AlgebraElement component(int i) const { return alpha_.tau_coefficient(i); }
    /// phi^i = 1 + alpha^i, the link variable of the i-th direction.
    AlgebraElement phi_component(int i) const {
        return AlgebraElement::unit(dim()) + component(i);
    }

    friend bool operator==(const Connection& x, const Connection& y) {
        return x.alpha_ == y.alpha_;
    }

private:
    DifferentialForm alpha_;
};

/// Pointwise invertible gauge element with its cached convolution inverse.
class GaugeTransform {
public:
    explicit GaugeTransform(AlgebraElement gamma)
        : gamma_(std::move(gamma)), gamma_inv_(invert(gamma_)) {}
    static GaugeTransform identity(int n) { return GaugeTransform(AlgebraElement::unit(n)); }

    int dim() const { return gamma_.dim(); }
    const AlgebraElement& gamma() const { return gamma_; }
    const AlgebraElement& gamma_inv() const { return gamma_inv_; }

private:
    AlgebraElement gamma_;
    AlgebraElement gamma_inv_;
};

/// Multiplet of matter fields, one function per index p.
struct MatterField {
    std::vector<AlgebraElement> sigma;
    int dim() const { return sigma.empty() ? 0 : sigma.front().dim(); }
};

/// F(alpha) = d alpha + alpha ^ alpha.
DifferentialForm curvature(const Connection& alpha);

/// Component F^{ij} = del^i alpha^j - del^j alpha^i + alpha^i R_i alpha^j
/// - alpha^j R_j alpha^i, as momentum coefficients. Equals rho_i phi^j -
/// rho_j phi^i with rho_i = phi^i R_i.
AlgebraElement curvature_component(const Connection& alpha, int i, int j);

/// alpha -> gamma^{-1} alpha gamma + gamma^{-1} d gamma.
Connection gauge_transform(const Connection& alpha, const GaugeTransform& gamma);

/// F_bullet(alpha) = d alpha + sum_{a,b} F(a,b) alpha_a . alpha_b over the
/// homogeneous group-degree components.
DifferentialForm curvature_twisted(const Connection& alpha, const TwistedAlgebra& alg);

/// Twisted gauge transform over homogeneous group-degree components,
/// bracketed to the left:
///   sum F(a,b) F(a+b,c) ((gamma^{-1}_a . alpha_b) . gamma_c)
///     + sum F(a,c) gamma^{-1}_a . d gamma_c.
/// The conjugation weights come from splitting the unit twice through the
/// deformed coproduct Delta_bullet = F Delta, which gives F_12 (Delta (x) id)F;
/// they are exactly the factors that convert each left-bracketed bullet
/// product back to the pointwise one, so the result equals the untwisted
/// gauge_transform (twist equivalence, exact).
Connection gauge_transform_twisted(const Connection& alpha, const GaugeTransform& gamma,
                                   const TwistedAlgebra& alg);

/// Conjugation-only variant with bare (Delta (x) id)F weights F(a+b,c) on the
/// cubic term (inhomogeneous term unchanged), i.e. splitting through the
/// undeformed coproduct. Kept for comparison with the specialization below;
/// it omits the F_12 factor and does not reproduce the untwisted transform.
Connection gauge_transform_twisted_general(const Connection& alpha, const GaugeTransform& gamma,
                                           const TwistedAlgebra& alg);

/// Conjugation-only variant with F13 F23 weights F(a,c) F(b,c). Agrees with
/// gauge_transform_twisted_general exactly when the cochain exponent is
/// additive in its first argument, i.e. F(a+b,c) = F(a,c)F(b,c): true for the
/// Clifford cochains (bilinear exponent), false for the octonion cochain,
/// whose cubic exponent term is additive in the second argument instead.
Connection gauge_transform_twisted_specialized(const Connection& alpha,
                                               const GaugeTransform& gamma,
                                               const TwistedAlgebra& alg);

/// gamma^{-1} . omega . gamma in the twisted calculus with the same
/// F(a,b) F(a+b,c) weights as gauge_transform_twisted; equals the untwisted
/// conjugation. Curvature covariance reads
/// curvature_twisted(gauge_transform_twisted(alpha, gamma)) =
/// twisted_conjugation(curvature_twisted(alpha), gamma).
DifferentialForm twisted_conjugation(const DifferentialForm& omega, const GaugeTransform& gamma,
                                     const TwistedAlgebra& alg);

/// delta_a action: the group-degree-a component of a field's value at 1.
DifferentialForm amplify(const DifferentialForm& field, const GroupVector& a);
AlgebraElement amplify(const AlgebraElement& field, const GroupVector& a);

/// sigma^gamma(v_p) = sigma(v_p) gamma(1).
MatterField matter_transform(const MatterField& sigma, const GaugeTransform& gamma);

/// (nabla sigma)(v_p) = d sigma(v_p) - sigma(v_p) alpha(1), per index.
std::vector<DifferentialForm> covariant_derivative(const MatterField& sigma,
                                                   const Connection& alpha);

} // namespace qg

#endif
