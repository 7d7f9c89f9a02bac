#include <doctest.h>

#include "handlecalc/errors.hpp"
#include "handlecalc/linalg.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace handlecalc;
namespace tg = handlecalc::testgen;

namespace {

void check_smith(const IntMatrix& m) {
    const SmithDecomposition s = smith_normal_form(m);
    REQUIRE(s.U.rows() == m.rows());
    REQUIRE(s.V.rows() == m.cols());
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    for (std::size_t i = 0; i < s.D.rows(); ++i) {
        for (std::size_t j = 0; j < s.D.cols(); ++j) {
            if (i != j) {
                CHECK(s.D(i, j) == 0);
            }
        }
    }
    const IntVector d = s.diagonal();
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (d[i] != 0) {
            CHECK(d[i + 1] % d[i] == 0);
        } else {
            CHECK(d[i + 1] == 0);
        }
    }
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("smith normal form of small fixed matrices") {
    const SmithDecomposition id = smith_normal_form(IntMatrix::identity(2));
    CHECK(id.D == IntMatrix::identity(2));

    const IntMatrix m{{2, 4}, {6, 8}};
    // gcd of entries is 2 and |det| is 8, so the invariants are 2 and 4
    const IntVector inv = oracle::smith_invariants(m);
    REQUIRE(inv.size() == 2);
    CHECK(inv[0] == 2);
    CHECK(inv[1] == 4);
    const SmithDecomposition s = smith_normal_form(m);
    CHECK(s.D == IntMatrix{{2, 0}, {0, 4}});
    CHECK(s.U * m * s.V == s.D);

    const SmithDecomposition z = smith_normal_form(IntMatrix{{0}});
    CHECK(z.D == IntMatrix{{0}});
    CHECK(z.rank == 0);
}

TEST_CASE("smith normal form agrees with determinantal divisors") {
    tg::Rng rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const auto r = static_cast<std::size_t>(tg::uniform(rng, 0, 4));
        const auto c = static_cast<std::size_t>(tg::uniform(rng, 0, 4));
        const IntMatrix m = tg::random_matrix(rng, r, c, 9);
        check_smith(m);
        const SmithDecomposition s = smith_normal_form(m);
        const IntVector expected = oracle::smith_invariants(m);
        IntVector got;
        for (const auto& d : s.diagonal()) {
            if (d != 0) {
                got.push_back(d);
            }
        }
        CHECK(got == expected);
        CHECK(s.rank == expected.size());
    }
}

TEST_CASE("smith normal form on degenerate shapes") {
    check_smith(IntMatrix(0, 3));
    check_smith(IntMatrix(3, 0));
    check_smith(IntMatrix(2, 3));
    check_smith(IntMatrix{{0, 0, 6}, {0, 4, 0}});
    check_smith(IntMatrix{{-3}});
}

TEST_CASE("smith normal form handles entry growth beyond machine words") {
    IntMatrix m(3, 3);
    m(0, 0) = Integer("123456789012345678901234567890");
    m(0, 1) = Integer("987654321098765432109876543210");
    m(1, 0) = 7;
    m(1, 2) = Integer("-55555555555555555555555555");
    m(2, 1) = 3;
    m(2, 2) = 1;
    check_smith(m);
    CHECK(abs(determinant(m)) == abs(oracle::cofactor_determinant(m)));
}

TEST_CASE("cokernel") {
    CHECK(cokernel(IntMatrix{{2}}).to_string() == "Z/2");
    CHECK(cokernel(IntMatrix{{1}}).is_trivial());
    CHECK(cokernel(IntMatrix{{0, 1}, {1, 0}}).is_trivial());
    CHECK(cokernel(IntMatrix(2, 0)).to_string() == "Z^2");
    CHECK(cokernel(IntMatrix{{2, 0}, {0, 0}}).to_string() == "Z + Z/2");
    CHECK(cokernel(IntMatrix{{2, 0}, {0, 3}}).to_string() == "Z/6");
}

TEST_CASE("cokernel is invariant under unimodular changes") {
    tg::Rng rng(12);
    for (int iter = 0; iter < 200; ++iter) {
        const auto r = static_cast<std::size_t>(tg::uniform(rng, 1, 4));
        const auto c = static_cast<std::size_t>(tg::uniform(rng, 1, 4));
        const IntMatrix m = tg::random_matrix(rng, r, c, 5);
        const IntMatrix changed = tg::random_unimodular(rng, r, 6) * m * tg::random_unimodular(rng, c, 6);
        CHECK(cokernel(m) == cokernel(changed));
    }
}

TEST_CASE("kernel basis") {
    const IntMatrix k = kernel_basis(IntMatrix{{1, 1}});
    REQUIRE(k.cols() == 1);
    CHECK(abs(k(0, 0)) == 1);
    CHECK(k(0, 0) == -k(1, 0));
    CHECK(kernel_basis(IntMatrix::identity(2)).cols() == 0);
    CHECK(kernel_basis(IntMatrix(1, 2)).cols() == 2);

    tg::Rng rng(13);
    for (int iter = 0; iter < 200; ++iter) {
        const auto r = static_cast<std::size_t>(tg::uniform(rng, 1, 4));
        const auto c = static_cast<std::size_t>(tg::uniform(rng, 1, 5));
        const IntMatrix m = tg::random_matrix(rng, r, c, 4);
        const IntMatrix kb = kernel_basis(m);
        CHECK(kb.cols() == c - rank(m));
        CHECK((m * kb).is_zero());
        // saturated: the cokernel of the basis inclusion is free
        if (kb.cols() > 0) {
            CHECK(cokernel(kb).is_torsion_free());
        }
    }
}

TEST_CASE("determinant") {
    CHECK(determinant(IntMatrix::identity(3)) == 1);
    CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
    for (long f = -20; f <= 20; ++f) {
        CHECK(determinant(IntMatrix{{0, 1}, {1, f}}) == -1);
    }
    CHECK(determinant(IntMatrix(0, 0)) == 1);
    CHECK_THROWS_AS(determinant(IntMatrix(2, 3)), DimensionError);
}

TEST_CASE("determinant agrees with cofactor expansion up to 4x4") {
    tg::Rng rng(14);
    for (int iter = 0; iter < 2000; ++iter) {
        const auto n = static_cast<std::size_t>(tg::uniform(rng, 1, 4));
        const IntMatrix m = tg::random_matrix(rng, n, n, 3);
        CHECK(determinant(m) == oracle::cofactor_determinant(m));
    }
}

TEST_CASE("solve and unimodular inverse") {
    const IntMatrix m{{2, 0}, {0, 3}};
    CHECK(solve(m, {4, 9}) == IntVector{2, 3});
    CHECK_FALSE(solve(m, {1, 0}).has_value());
    tg::Rng rng(15);
    for (int iter = 0; iter < 100; ++iter) {
        const auto n = static_cast<std::size_t>(tg::uniform(rng, 1, 4));
        const IntMatrix u = tg::random_unimodular(rng, n, 8);
        CHECK(is_unimodular(u));
        CHECK(u * unimodular_inverse(u) == IntMatrix::identity(n));
    }
    CHECK_FALSE(is_unimodular(m));
}

TEST_CASE("inertia") {
    const Inertia a = inertia(IntMatrix{{0, 1}, {1, 0}});
    CHECK(a.positive == 1);
    CHECK(a.negative == 1);
    CHECK(a.signature() == 0);
    CHECK(inertia(IntMatrix{{-1, 0}, {0, -1}}).signature() == -2);
    const Inertia d = inertia(IntMatrix{{1, 1}, {1, 1}});
    CHECK(d.zero == 1);
    CHECK(d.positive == 1);
    CHECK(inertia(IntMatrix{{-2, 1}, {1, -2}}).negative == 2);
}

TEST_CASE("inertia is invariant under congruence") {
    tg::Rng rng(16);
    for (int iter = 0; iter < 200; ++iter) {
        const auto n = static_cast<std::size_t>(tg::uniform(rng, 1, 4));
        const IntMatrix q = tg::random_symmetric(rng, n, 3);
        const IntMatrix p = tg::random_unimodular(rng, n, 6);
        const Inertia a = inertia(q);
        const Inertia b = inertia(p.transpose() * q * p);
        CHECK(a.positive == b.positive);
        CHECK(a.negative == b.negative);
        CHECK(a.zero == b.zero);
    }
}

}  // TEST_SUITE
