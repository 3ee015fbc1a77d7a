#ifndef QG_COCHAIN_HPP
#define QG_COCHAIN_HPP

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "qg/algebra.hpp"
#include "qg/group.hpp"
#include "qg/scalar.hpp"

namespace qg {

/// Sign-valued exponent form (-1)^{a^T M b + cubic(a,b)} for a cochain.
/// M is stored row-wise as bitmasks; the cubic flag turns on the term
/// b1 a2 a3 + a1 b2 a3 + a1 a2 b3 (n=3 only), which is additive in the
/// second argument.
struct ExponentForm {
    int n = 0;
    std::array<std::uint32_t, kMaxDim> rows{};
    bool cubic = false;

    unsigned bilinear(const GroupVector& a, const GroupVector& b) const;
    unsigned exponent(const GroupVector& a, const GroupVector& b) const;
    Scalar value(const GroupVector& a, const GroupVector& b) const {
        return sign_pow(exponent(a, b));
    }
};

/// 2-argument scalar function F(a,b) on Z_2^n. Built-ins carry an exponent
/// form which is authoritative; a tabulated variant supports user data and
/// Fourier transforms (which are not normalised and may carry a 2^n factor).
class Cochain {
public:
    Cochain() = default;

    static Cochain from_exponent(const ExponentForm& e);
    static Cochain from_table(int n, std::map<std::pair<GroupVector, GroupVector>, Scalar> values);
    static Cochain trivial(int n);

    int dim() const { return n_; }
    const std::optional<ExponentForm>& exponent_form() const { return exp_; }

    Scalar value(const GroupVector& a, const GroupVector& b) const;

    /// F(0,b)=F(a,0)=1 and nowhere vanishing.
    bool is_normalized() const;
    bool nowhere_vanishing() const;

    /// Table divided by 2^n; the accessor for Fourier-transformed cochains.
    Cochain normalized_by_volume() const;

private:
    int n_ = 0;
    std::optional<ExponentForm> exp_;
    std::map<std::pair<GroupVector, GroupVector>, Scalar> table_;
};

/// Associator Phi = dF; evaluates the coboundary formula pointwise.
class Associator {
public:
    Associator() = default;
    explicit Associator(Cochain f);

    int dim() const { return f_.dim(); }
    Scalar value(const GroupVector& a, const GroupVector& b, const GroupVector& c) const;

private:
    Cochain f_;
};

Associator coboundary(const Cochain& f);

/// Standard normalized 3-cocycle identity:
///   Phi(b,c,d) Phi(a,b+c,d) Phi(a,b,c) = Phi(a+b,c,d) Phi(a,b,c+d)
/// checked over all quadruples.
bool is_cocycle(int n, const std::function<Scalar(const GroupVector&, const GroupVector&,
                                                  const GroupVector&)>& phi);
bool is_cocycle(const Associator& phi);

/// The octonion cochain on Z_2^3: upper-triangular all-ones matrix plus the
/// symmetric cubic term.
Cochain octonion_cochain();

/// Clifford cochain on Z_2^n: upper-triangular all-ones matrix, no cubic.
/// n=2 gives the quaternions.
Cochain clifford_cochain(int n);

/// Position-space transform F(y,z) = sum_{a,b} F(a,b) e_a(y) e_b(z).
/// Carries an explicit 2^n factor; see Cochain::normalized_by_volume().
Cochain fourier_cochain(const Cochain& f);

} // namespace qg

#endif
