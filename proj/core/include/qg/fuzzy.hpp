#ifndef QG_FUZZY_HPP
#define QG_FUZZY_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qg/scalar.hpp"

namespace qg {

struct NonInvertibleJet : std::runtime_error {
    NonInvertibleJet() : std::runtime_error("jet has zero constant term, no inverse") {}
};

/// Exponent vector of a monomial x_1^{p_1} ... x_n^{p_n}.
using MultiIndex = std::vector<int>;

/// Truncated multivariate power series (jet) over n coordinates, with exact
/// scalar coefficients and every operation closed under truncation at total
/// degree K: products drop terms above K, so all identities hold exactly
/// modulo degree K. Jets rather than polynomials so that inverses exist
/// whenever the constant term is nonzero.
class Jet {
public:
    Jet(int n, int K);

    static Jet constant(int n, int K, const Scalar& value);
    static Jet unit(int n, int K) { return constant(n, K, Scalar(1)); }
    /// The coordinate x_mu, mu = 1..n.
    static Jet coordinate(int n, int K, int mu);
    static Jet monomial(int n, int K, const MultiIndex& p, const Scalar& coeff);

    int dim() const { return n_; }
    int truncation() const { return K_; }
    Scalar coeff(const MultiIndex& p) const;
    const std::map<MultiIndex, Scalar>& terms() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// The same coefficients viewed at a different truncation degree
    /// (lowering drops the excess terms). Compound operations lift their
    /// inputs this way to give intermediate products headroom.
    Jet with_truncation(int K) const;

    /// d/dx_i, i = 1..n; closed on jets (degree can only drop).
    Jet derivative(int i) const;
    /// Multiplicative inverse modulo degree K; throws NonInvertibleJet when
    /// the constant term vanishes.
    Jet inverse() const;

    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator*(const Scalar& s, const Jet& a);
    friend bool operator==(const Jet& a, const Jet& b);
    friend bool operator!=(const Jet& a, const Jet& b) { return !(a == b); }

    std::string str() const;

private:
    void add_term(const MultiIndex& p, const Scalar& c);
    int n_ = 0;
    int K_ = 0;
    std::map<MultiIndex, Scalar> coeffs_;
};

/// The tensor eta_{ij} contracting the two derivative slots of the box
/// operator box = sum_{ij} eta_{ij} d^i (x) d^j. Euclidean by default;
/// antisymmetric eta with an exponential cochain gives the Moyal product.
struct Metric {
    std::vector<std::vector<Rational>> eta;

    static Metric euclidean(int n);
    /// n = 2 antisymmetric form theta * (e_12 - e_21).
    static Metric symplectic(Rational theta);
    static Metric general(std::vector<std::vector<Rational>> entries);

    int dim() const { return int(eta.size()); }
};

/// A differential cochain F(d_1, d_2) = f(box): a normalized (f(0) = 1)
/// power series f in one variable applied to the box operator. The stored f
/// is the cochain itself; the bullet product applies the inverse series
/// (a bullet b = . F^{-1}(a (x) b)), which is a finite sum on jets.
class DiffCochain {
public:
    /// f = (1 + lambda t / m)^{-m}; the inverse series (1 + lambda t / m)^m
    /// is a finite binomial sum.
    static DiffCochain negative_power(int m, Rational lambda, Metric eta);
    /// The string-theory specialization lambda = 1/m.
    static DiffCochain negative_power(int m, Metric eta);
    /// f = exp(-lambda t^2 / 2).
    static DiffCochain gaussian(Rational lambda, Metric eta);
    /// f = exp(lambda t); the associator is identically 1 (Moyal for
    /// antisymmetric eta).
    static DiffCochain exponential(Rational lambda, Metric eta);
    /// Arbitrary normalized series: f = sum_k series[k] t^k, series[0] = 1
    /// (throws std::invalid_argument otherwise); coefficients beyond the
    /// list are zero.
    static DiffCochain custom(std::vector<Scalar> series, Metric eta);

    const Metric& metric() const { return eta_; }
    bool is_exponential() const { return family_ == Family::Exponential; }

    /// Coefficient of t^k in f.
    Scalar forward_coeff(int k) const;
    /// Coefficient of t^k in 1/f.
    Scalar inverse_coeff(int k) const;

private:
    enum class Family { NegativePower, Gaussian, Exponential, Custom };
    DiffCochain(Family f, Metric eta) : family_(f), eta_(std::move(eta)) {}
    Family family_;
    Metric eta_;
    int m_ = 0;
    Rational lambda_;
    std::vector<Scalar> series_; // custom forward coefficients
};

/// a bullet b = . F^{-1}(a (x) b): the inverse series of the cochain applied
/// through iterated boxes, then multiplied. Finite on jets because each box
/// lowers the degree on both sides. For the negative-power family this is
/// the binomial sum sum_r C(m,r) (lambda/m)^r (d^{i_1}..d^{i_r} a)
/// (d_{i_1}..d_{i_r} b).
Jet bullet_jet(const Jet& a, const Jet& b, const DiffCochain& F);

/// bullet_jet with the box series cut at max_order. Equal to bullet_jet for
/// every max_order >= min(deg a, deg b): past the automatic bound the extra
/// terms annihilate the jets (truncation idempotence).
Jet bullet_jet_capped(const Jet& a, const Jet& b, const DiffCochain& F, int max_order);

/// The associator defect (a bullet b) bullet c - .(id (x) .)(Phi (a (x) b (x) c))
/// with Phi = f(box_23) f(box_12 + box_13) / (f(box_13 + box_23) f(box_12))
/// evaluated by composing the four commuting operator series (the closed
/// forms are cross-checks, not the evaluation route). Exactly zero for every
/// cochain: quasi-associativity is an identity, not an approximation. The
/// nested products are computed with lifted truncation (3K) so that no
/// intermediate term that could be differentiated back below degree K is
/// lost; the returned defect lives at the inputs' truncation.
Jet associator_jet(const Jet& a, const Jet& b, const Jet& c, const DiffCochain& F);

/// Iterated derivative d^{i_1} ... d^{i_p} of a jet: the amplification
/// gamma(f^{i_1}...f^{i_p}) of the field with gamma(1) = g.
Jet amplify_fuzzy(const Jet& g, const std::vector<int>& dirs);

/// Differential form with jet coefficients in the coordinate basis: a map
/// from dx subsets (bit mu-1 set when dx_mu is a factor, factors ordered by
/// index) to coefficient jets. The dx anticommute; relations between
/// functions and dx are undeformed (a bullet dx_mu = a dx_mu).
class FuzzyForm {
public:
    FuzzyForm(int n, int K) : n_(n), K_(K) {}

    static FuzzyForm from_function(const Jet& a);
    static FuzzyForm monomial(const Jet& coeff, std::uint32_t dx_mask);

    int dim() const { return n_; }
    int truncation() const { return K_; }
    Jet component(std::uint32_t dx_mask) const;
    const std::map<std::uint32_t, Jet>& components() const { return comps_; }
    bool is_zero() const { return comps_.empty(); }

    friend FuzzyForm operator+(const FuzzyForm& a, const FuzzyForm& b);
    friend FuzzyForm operator-(const FuzzyForm& a, const FuzzyForm& b);
    friend FuzzyForm operator*(const Scalar& s, const FuzzyForm& a);
    friend bool operator==(const FuzzyForm& a, const FuzzyForm& b);
    friend bool operator!=(const FuzzyForm& a, const FuzzyForm& b) { return !(a == b); }

    std::string str() const;

private:
    void add_term(std::uint32_t mask, const Jet& c);
    friend FuzzyForm wedge_fuzzy(const FuzzyForm&, const FuzzyForm&);
    friend FuzzyForm d_fuzzy(const FuzzyForm&);
    friend FuzzyForm bullet_wedge_fuzzy(const FuzzyForm&, const FuzzyForm&, const DiffCochain&);
    int n_ = 0;
    int K_ = 0;
    std::map<std::uint32_t, Jet> comps_;
};

/// Undeformed exterior derivative (the calculus deforms through the product,
/// not through d); d of d is zero.
FuzzyForm d_fuzzy(const FuzzyForm& omega);

/// Undeformed wedge product.
FuzzyForm wedge_fuzzy(const FuzzyForm& a, const FuzzyForm& b);

/// Deformed wedge: the inverse cochain series acts on the coefficient jets
/// through Lie derivatives (componentwise in the coordinate basis) and the
/// dx factors wedge classically.
FuzzyForm bullet_wedge_fuzzy(const FuzzyForm& a, const FuzzyForm& b, const DiffCochain& F);

/// Componentwise iterated Lie derivative of a form.
FuzzyForm amplify_fuzzy(const FuzzyForm& omega, const std::vector<int>& dirs);

/// Deformed curvature of a degree-1 form:
///   F_bullet(alpha)(1) = d alpha + sum_r C(m+r-1, r) (-lambda/m)^r
///       (d^{i_1}..d^{i_r} alpha) bullet (d_{i_1}..d_{i_r} alpha),
/// i.e. the forward cochain series applied before the deformed wedge (for
/// general cochains the forward series replaces the binomial weights). The
/// forward and inverse series cancel exactly, so the result equals the
/// untwisted d alpha + alpha wedge alpha (twist equivalence, exact).
FuzzyForm curvature_fuzzy(const FuzzyForm& alpha, const DiffCochain& F);

/// Untwisted curvature d alpha + alpha wedge alpha for comparison.
FuzzyForm curvature_untwisted_fuzzy(const FuzzyForm& alpha);

/// Deformed gauge transform of a degree-1 form by an invertible jet gamma:
///   ((. ) .)(F_12 (Delta (x) id)F)(gamma^{-1} (x) alpha (x) gamma)
///     + (.)(F)(gamma^{-1} (x) d gamma),
/// left-bracketed. Splitting the unit through the deformed coproduct
/// Delta_bullet = F Delta twice gives (Delta_bullet (x) id)Delta_bullet(1) =
/// F_12 ((Delta (x) id)F), whose factors are exactly the bullet-to-pointwise
/// conversion weights, so the result equals the untwisted
/// gamma^{-1} alpha gamma + gamma^{-1} d gamma (twist equivalence, exact).
/// The nested bullets run at lifted truncation 3K (see associator_jet).
/// Throws NonInvertibleJet when gamma has zero constant term.
FuzzyForm gauge_transform_fuzzy(const FuzzyForm& alpha, const Jet& gamma, const DiffCochain& F);

/// Variant with the conjugation weighted by (Delta (x) id)F =
/// f(box_13 + box_23) alone, omitting the F_12 factor from the deformed
/// coproduct of the unit. Does not reproduce the untwisted transform in
/// general (the pure-gauge term is the same F series on
/// gamma^{-1} (x) d gamma in both variants).
FuzzyForm gauge_transform_fuzzy_displayed(const FuzzyForm& alpha, const Jet& gamma,
                                          const DiffCochain& F);

/// Untwisted gauge transform gamma^{-1} alpha gamma + gamma^{-1} d gamma.
FuzzyForm gauge_transform_untwisted_fuzzy(const FuzzyForm& alpha, const Jet& gamma);

/// The pure-gauge series sum_r C(m+r-1, r) (-lambda/m)^r
/// (d^{i_1}..d^{i_r} gamma^{-1}) bullet d(d_{i_1}..d_{i_r} gamma)
/// (forward series for general cochains); equals gamma^{-1} d gamma exactly,
/// hence has zero curvature.
FuzzyForm pure_gauge_fuzzy(const Jet& gamma, const DiffCochain& F);

} // namespace qg

#endif
