#ifndef QG_GROUP_HPP
#define QG_GROUP_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "qg/scalar.hpp"

namespace qg {

inline constexpr int kMaxDim = 16;

/// Element of Z_2^n, written additively. Bit i-1 of `bits` is component i.
struct GroupVector {
    std::uint32_t bits = 0;
    int n = 0;

    GroupVector() = default;
    GroupVector(std::uint32_t b, int dim) : bits(b), n(dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("GroupVector: dimension out of range");
        if (b >> dim) throw std::invalid_argument("GroupVector: bits exceed dimension");
    }

    static GroupVector zero(int n) { return GroupVector(0, n); }
    static GroupVector unit(int i, int n) { return GroupVector(1u << (i - 1), n); }

    int bit(int i) const { return (bits >> (i - 1)) & 1u; }
    bool is_zero() const { return bits == 0; }

    friend bool operator==(const GroupVector& a, const GroupVector& b) {
        return a.n == b.n && a.bits == b.bits;
    }
    friend bool operator!=(const GroupVector& a, const GroupVector& b) { return !(a == b); }
    friend bool operator<(const GroupVector& a, const GroupVector& b) {
        return a.bits < b.bits;
    }

    // Bitstring with component 1 first, e.g. (1,0,1) -> "101".
    std::string str() const {
        std::string s;
        for (int i = 1; i <= n; ++i) s += char('0' + bit(i));
        return s;
    }
    static GroupVector parse(const std::string& s) {
        if (s.empty() || s.size() > kMaxDim) throw std::invalid_argument("GroupVector: bad bitstring");
        std::uint32_t b = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1') b |= 1u << i;
            else if (s[i] != '0') throw std::invalid_argument("GroupVector: bad bitstring");
        }
        return GroupVector(b, int(s.size()));
    }
};

inline void require_same_dim(const GroupVector& a, const GroupVector& b) {
    if (a.n != b.n) throw std::invalid_argument("GroupVector: dimension mismatch");
}

inline GroupVector group_add(const GroupVector& a, const GroupVector& b) {
    require_same_dim(a, b);
    return GroupVector(a.bits ^ b.bits, a.n);
}

inline int dot(const GroupVector& a, const GroupVector& b) {
    require_same_dim(a, b);
    return std::popcount(a.bits & b.bits) & 1;
}

inline GroupVector cross(const GroupVector& a, const GroupVector& b) {
    require_same_dim(a, b);
    if (a.n != 3) throw std::invalid_argument("cross: requires n=3");
    std::uint32_t c = 0;
    c |= std::uint32_t((a.bit(2) & b.bit(3)) ^ (a.bit(3) & b.bit(2)));
    c |= std::uint32_t((a.bit(3) & b.bit(1)) ^ (a.bit(1) & b.bit(3))) << 1;
    c |= std::uint32_t((a.bit(1) & b.bit(2)) ^ (a.bit(2) & b.bit(1))) << 2;
    return GroupVector(c, 3);
}

/// Character e_a(x) = (-1)^{a.x}.
inline Scalar plane_wave(const GroupVector& a, const GroupVector& x) {
    return sign_pow(unsigned(dot(a, x)));
}

} // namespace qg

#endif
