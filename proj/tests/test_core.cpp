#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qg/algebra.hpp"
#include "qg/group.hpp"
#include "test_util.hpp"

using namespace qg;

TEST_CASE("group addition is componentwise mod 2") {
    GroupVector a = GroupVector::parse("100");
    GroupVector b = GroupVector::parse("010");
    CHECK(group_add(a, b) == GroupVector::parse("110"));
    CHECK(group_add(GroupVector::parse("110"), GroupVector::parse("100")) ==
          GroupVector::parse("010"));
}

TEST_CASE("group laws hold exhaustively for n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        GroupVector zero = GroupVector::zero(n);
        for (std::uint32_t a = 0; a < (1u << n); ++a) {
            GroupVector ga(a, n);
            CHECK(group_add(ga, ga) == zero);
            CHECK(group_add(ga, zero) == ga);
            for (std::uint32_t b = 0; b < (1u << n); ++b)
                for (std::uint32_t c = 0; c < (1u << n); ++c) {
                    GroupVector gb(b, n), gc(c, n);
                    CHECK(group_add(group_add(ga, gb), gc) == group_add(ga, group_add(gb, gc)));
                }
        }
    }
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(group_add(GroupVector::parse("10"), GroupVector::parse("100")),
                    std::invalid_argument);
    CHECK_THROWS_AS(cross(GroupVector::parse("10"), GroupVector::parse("01")),
                    std::invalid_argument);
}

TEST_CASE("dot and cross") {
    CHECK(cross(GroupVector::parse("010"), GroupVector::parse("001")) == GroupVector::parse("100"));
    CHECK(dot(GroupVector::parse("100"), GroupVector::parse("100")) == 1);
    // degenerate triple product a.(b x c) with a = b
    for (std::uint32_t b = 0; b < 8; ++b)
        for (std::uint32_t c = 0; c < 8; ++c) {
            GroupVector gb(b, 3), gc(c, 3);
            CHECK(dot(gb, cross(gb, gc)) == 0);
        }
}

TEST_CASE("plane waves") {
    CHECK(plane_wave(GroupVector::parse("100"), GroupVector::parse("111")) == Scalar(-1));
    CHECK(plane_wave(GroupVector::parse("110"), GroupVector::parse("110")) == Scalar(1));
    for (std::uint32_t x = 0; x < 8; ++x)
        CHECK(plane_wave(GroupVector::zero(3), GroupVector(x, 3)) == Scalar(1));
}

TEST_CASE("character orthogonality, exhaustive n <= 4") {
    for (int n = 1; n <= 4; ++n) {
        Scalar norm(Rational(1, std::uint64_t(1) << n));
        for (std::uint32_t a = 0; a < (1u << n); ++a)
            for (std::uint32_t b = 0; b < (1u << n); ++b) {
                Scalar s(0);
                for (std::uint32_t x = 0; x < (1u << n); ++x) {
                    GroupVector gx(x, n);
                    s += plane_wave(GroupVector(a, n), gx) * plane_wave(GroupVector(b, n), gx);
                }
                CHECK(norm * s == (a == b ? Scalar(1) : Scalar(0)));
            }
    }
}

TEST_CASE("fourier of a constant is a delta at zero") {
    int n = 3;
    AlgebraElement one(n);
    for (std::uint32_t x = 0; x < 8; ++x) one.set(GroupVector(x, n), Scalar(1));
    AlgebraElement co = fourier(one);
    CHECK(co == AlgebraElement::basis(GroupVector::zero(n)));
}

TEST_CASE("fourier of a plane wave is a delta at its momentum") {
    int n = 3;
    GroupVector b = GroupVector::parse("011");
    AlgebraElement f(n);
    for (std::uint32_t x = 0; x < 8; ++x) {
        GroupVector gx(x, n);
        f.set(gx, plane_wave(b, gx));
    }
    CHECK(fourier(f) == AlgebraElement::basis(b));
}

TEST_CASE("fourier round-trip is the exact identity") {
    std::mt19937 rng(12345);
    for (int n = 1; n <= 4; ++n)
        for (int rep = 0; rep < 20; ++rep) {
            AlgebraElement f = qgtest::random_element(n, rng);
            CHECK(fourier_inverse(fourier(f)) == f);
            CHECK(fourier(fourier_inverse(f)) == f);
        }
}

TEST_CASE("scalar arithmetic and printing") {
    Scalar a(Rational(1, 2), Rational(-3, 4));
    CHECK(a * a.inverse() == Scalar(1));
    CHECK(a.str() == "1/2-3/4 i");
    CHECK(Scalar(Rational(5)).str() == "5");
    CHECK(Scalar(Rational(0), Rational(2, 3)).str() == "2/3 i");
    CHECK_THROWS_AS(Scalar(0).inverse(), std::domain_error);
    CHECK(GroupVector::parse("101").str() == "101");
}
