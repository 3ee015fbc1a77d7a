#include "qg/cochain.hpp"

#include <bit>
#include <stdexcept>

namespace qg {

unsigned ExponentForm::bilinear(const GroupVector& a, const GroupVector& b) const {
    unsigned e = 0;
    for (int i = 1; i <= n; ++i)
        if (a.bit(i)) e ^= unsigned(std::popcount(rows[i - 1] & b.bits)) & 1u;
    return e;
}

unsigned ExponentForm::exponent(const GroupVector& a, const GroupVector& b) const {
    unsigned e = bilinear(a, b);
    if (cubic) {
        // b1 a2 a3 + a1 b2 a3 + a1 a2 b3 -- the convention whose Fourier
        // transform reproduces the rotated position-space exponent form
        e ^= unsigned(b.bit(1) & a.bit(2) & a.bit(3));
        e ^= unsigned(a.bit(1) & b.bit(2) & a.bit(3));
        e ^= unsigned(a.bit(1) & a.bit(2) & b.bit(3));
    }
    return e;
}

Cochain Cochain::from_exponent(const ExponentForm& e) {
    if (e.n < 1 || e.n > kMaxDim) throw std::invalid_argument("Cochain: dimension out of range");
    if (e.cubic && e.n != 3) throw std::invalid_argument("Cochain: cubic term requires n=3");
    Cochain c;
    c.n_ = e.n;
    c.exp_ = e;
    return c;
}

Cochain Cochain::from_table(int n, std::map<std::pair<GroupVector, GroupVector>, Scalar> values) {
    if (n < 1 || n > kMaxDim) throw std::invalid_argument("Cochain: dimension out of range");
    Cochain c;
    c.n_ = n;
    c.table_ = std::move(values);
    return c;
}

Cochain Cochain::trivial(int n) {
    ExponentForm e;
    e.n = n;
    return from_exponent(e);
}

Scalar Cochain::value(const GroupVector& a, const GroupVector& b) const {
    if (a.n != n_ || b.n != n_) throw std::invalid_argument("Cochain: dimension mismatch");
    if (exp_) return exp_->value(a, b);
    auto it = table_.find({a, b});
    return it == table_.end() ? Scalar(0) : it->second;
}

bool Cochain::is_normalized() const {
    GroupVector z = GroupVector::zero(n_);
    for (std::uint32_t m = 0; m < (1u << n_); ++m) {
        GroupVector g(m, n_);
        if (!value(z, g).is_one() || !value(g, z).is_one()) return false;
    }
    return nowhere_vanishing();
}

bool Cochain::nowhere_vanishing() const {
    for (std::uint32_t a = 0; a < (1u << n_); ++a)
        for (std::uint32_t b = 0; b < (1u << n_); ++b)
            if (value(GroupVector(a, n_), GroupVector(b, n_)).is_zero()) return false;
    return true;
}

Cochain Cochain::normalized_by_volume() const {
    Scalar inv(Rational(1, std::uint64_t(1) << n_));
    std::map<std::pair<GroupVector, GroupVector>, Scalar> t;
    for (std::uint32_t a = 0; a < (1u << n_); ++a)
        for (std::uint32_t b = 0; b < (1u << n_); ++b) {
            GroupVector ga(a, n_), gb(b, n_);
            t[{ga, gb}] = inv * value(ga, gb);
        }
    return from_table(n_, std::move(t));
}

Associator::Associator(Cochain f) : f_(std::move(f)) {
    if (!f_.nowhere_vanishing())
        throw std::invalid_argument("Associator: cochain must be nowhere vanishing");
}

Scalar Associator::value(const GroupVector& a, const GroupVector& b, const GroupVector& c) const {
    // Phi(a,b,c) = F(b,c) F(a,b+c) / (F(a+b,c) F(a,b))
    Scalar num = f_.value(b, c) * f_.value(a, group_add(b, c));
    Scalar den = f_.value(group_add(a, b), c) * f_.value(a, b);
    return num / den;
}

Associator coboundary(const Cochain& f) { return Associator(f); }

bool is_cocycle(int n, const std::function<Scalar(const GroupVector&, const GroupVector&,
                                                  const GroupVector&)>& phi) {
    std::uint32_t size = 1u << n;
    GroupVector zero = GroupVector::zero(n);
    for (std::uint32_t a = 0; a < size; ++a)
        for (std::uint32_t b = 0; b < size; ++b) {
            GroupVector ga(a, n), gb(b, n);
            if (!phi(zero, ga, gb).is_one() || !phi(ga, zero, gb).is_one() ||
                !phi(ga, gb, zero).is_one())
                return false;
        }
    for (std::uint32_t a = 0; a < size; ++a)
        for (std::uint32_t b = 0; b < size; ++b)
            for (std::uint32_t c = 0; c < size; ++c)
                for (std::uint32_t d = 0; d < size; ++d) {
                    GroupVector ga(a, n), gb(b, n), gc(c, n), gd(d, n);
                    Scalar lhs = phi(gb, gc, gd) * phi(ga, group_add(gb, gc), gd) * phi(ga, gb, gc);
                    Scalar rhs = phi(group_add(ga, gb), gc, gd) * phi(ga, gb, group_add(gc, gd));
                    if (lhs != rhs) return false;
                }
    return true;
}

bool is_cocycle(const Associator& phi) {
    return is_cocycle(phi.dim(), [&](const GroupVector& a, const GroupVector& b,
                                     const GroupVector& c) { return phi.value(a, b, c); });
}

Cochain octonion_cochain() {
    ExponentForm e;
    e.n = 3;
    e.rows[0] = 0b111;
    e.rows[1] = 0b110;
    e.rows[2] = 0b100;
    e.cubic = true;
    return Cochain::from_exponent(e);
}

Cochain clifford_cochain(int n) {
    if (n < 1) throw std::invalid_argument("clifford_cochain: n >= 1 required");
    ExponentForm e;
    e.n = n;
    // row i has ones in columns i..n
    for (int i = 1; i <= n; ++i)
        e.rows[i - 1] = ((1u << n) - 1u) & ~((1u << (i - 1)) - 1u);
    return Cochain::from_exponent(e);
}

Cochain fourier_cochain(const Cochain& f) {
    int n = f.dim();
    std::map<std::pair<GroupVector, GroupVector>, Scalar> t;
    for (std::uint32_t y = 0; y < (1u << n); ++y)
        for (std::uint32_t z = 0; z < (1u << n); ++z) {
            GroupVector gy(y, n), gz(z, n);
            Scalar s(0);
            for (std::uint32_t a = 0; a < (1u << n); ++a)
                for (std::uint32_t b = 0; b < (1u << n); ++b) {
                    GroupVector ga(a, n), gb(b, n);
                    s += f.value(ga, gb) * plane_wave(ga, gy) * plane_wave(gb, gz);
                }
            t[{gy, gz}] = s;
        }
    return Cochain::from_table(n, std::move(t));
}

} // namespace qg
