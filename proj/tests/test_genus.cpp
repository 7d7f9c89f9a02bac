#include <doctest.h>

#include "handlecalc/errors.hpp"
#include "handlecalc/genus.hpp"
#include "handlecalc/isometry.hpp"
#include "support/generators.hpp"

using namespace handlecalc;
namespace tg = handlecalc::testgen;

namespace {

// Some characteristic vector of q: solve q x = diag(q) mod 2 by search over {0,1}^n.
std::optional<IntVector> characteristic_vector(const IntMatrix& q) {
    const std::size_t n = q.rows();
    for (unsigned mask = 0; mask < (1U << n); ++mask) {
        IntVector v(n);
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = (mask >> i) & 1U;
        }
        if (is_characteristic(q, v)) {
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace

TEST_SUITE("genus") {

TEST_CASE("a_g on the identity table") {
    const DiskBundleTable t = DiskBundleTable::identity(10, -3, 3);
    CHECK(a_g(OrderedValue(3L), 0, t).value == 3);
    CHECK(a_g(OrderedValue(-2L), 1, t).value == 0);
    CHECK(a_g(OrderedValue::neg_inf(), 1, t).value == 0);
    const GenusBound over = a_g(OrderedValue(11L), 0, t);
    CHECK(over.is_infinite());
    CHECK(over.coverage_caveat);
    CHECK(over.to_string() == "inf (beyond table, g > 10)");
    CHECK(a_g(OrderedValue::pos_inf(), 0, t).coverage_caveat);
    CHECK_THROWS_AS(a_g(OrderedValue(1L), 4, t), RangeError);
}

TEST_CASE("a_g fills gaps with the next genus") {
    DiskBundleTable t;
    for (long g = 0; g <= 5; ++g) {
        t.set(g, 0, OrderedValue(2 * g));
    }
    CHECK(a_g(OrderedValue(3L), 0, t).value == 2);
    CHECK(a_g(OrderedValue(4L), 0, t).value == 2);
    CHECK(a_g(OrderedValue(-1L), 0, t).value == 0);
}

TEST_CASE("table validation") {
    DiskBundleTable t;
    t.set(0, 0, OrderedValue(1L));
    t.set(1, 0, OrderedValue(0L));
    CHECK_THROWS_AS(t.validate(), InvariantError);
    DiskBundleTable holes;
    holes.set(0, 0, OrderedValue(0L));
    holes.set(1, 1, OrderedValue(0L));
    CHECK_THROWS_AS(holes.validate(), InvariantError);
    CHECK_THROWS_AS(DiskBundleTable().validate(), InvariantError);
}

TEST_CASE("a_g is monotone in r") {
    const DiskBundleTable t = DiskBundleTable::identity(10, -2, 2);
    for (long n = -2; n <= 2; ++n) {
        long prev = 0;
        for (long r = -15; r <= 10; ++r) {
            const GenusBound b = a_g(OrderedValue(r), n, t);
            REQUIRE(b.value.has_value());
            CHECK(*b.value >= prev);
            prev = *b.value;
        }
    }
}

TEST_CASE("genus lower bound") {
    const DiskBundleTable t = DiskBundleTable::identity(10, -4, 4);
    CHECK(genus_lower_bound(OrderedValue(2L), 0, t).value == 2);
    CHECK(genus_lower_bound(OrderedValue(-5L), 0, t).value == 0);
    CHECK(genus_claim_consistent(3, genus_lower_bound(OrderedValue(2L), 0, t)));
    CHECK_FALSE(genus_claim_consistent(1, genus_lower_bound(OrderedValue(2L), 0, t)));
    const GenusBound inf = genus_lower_bound(OrderedValue(20L), 0, t);
    CHECK_FALSE(genus_claim_consistent(10, inf));
    CHECK(genus_claim_consistent(11, inf));
}

TEST_CASE("adjunction-style table replays its bound") {
    // entry(g, n) = 2g - 2 - n with G(alpha) = |K . alpha|: the bound is the
    // least g with 2g - 2 >= n + |K . alpha|.
    const long gmax = 12;
    DiskBundleTable t;
    for (long n = -4; n <= 4; ++n) {
        for (long g = 0; g <= gmax; ++g) {
            t.set(g, n, OrderedValue(2 * g - 2 - n));
        }
    }
    for (long n = -4; n <= 4; ++n) {
        for (long k = 0; k <= 8; ++k) {
            long expected = 0;
            while (2 * expected - 2 < n + k) {
                ++expected;
            }
            CHECK(genus_lower_bound(OrderedValue(k), n, t).value == expected);
        }
    }
}

TEST_CASE("kervaire-milnor fixtures") {
    const auto forced = kervaire_milnor_obstruction(IntMatrix{{-1, 0}, {0, -1}}, {3, 1});
    CHECK(forced.self_intersection == -10);
    CHECK(forced.signature == -2);
    CHECK(forced.residue == -8);
    CHECK(forced.positive_genus_forced);

    const auto sphere = kervaire_milnor_obstruction(IntMatrix{{1}}, {1});
    CHECK(sphere.residue == 0);
    CHECK_FALSE(sphere.positive_genus_forced);

    const auto two = kervaire_milnor_obstruction(IntMatrix{{1, 0}, {0, 1}}, {1, 1});
    CHECK(two.residue == 0);
    CHECK_FALSE(two.positive_genus_forced);

    CHECK_THROWS_AS(kervaire_milnor_obstruction(IntMatrix{{-1, 0}, {0, -1}}, {2, 1}), PreconditionError);
    CHECK(is_characteristic(IntMatrix{{0, 1}, {1, 0}}, {0, 0}));
    CHECK_FALSE(is_characteristic(IntMatrix{{0, 1}, {1, 0}}, {1, 0}));
}

TEST_CASE("residue is invariant under change of basis") {
    tg::Rng rng(71);
    int tested = 0;
    for (int iter = 0; iter < 200; ++iter) {
        const auto n = static_cast<std::size_t>(tg::uniform(rng, 1, 3));
        const IntMatrix q = tg::random_symmetric(rng, n, 3);
        auto base = characteristic_vector(q);
        if (!base) {
            continue;
        }
        IntVector alpha = *base;
        for (auto& a : alpha) {
            a += 2 * tg::uniform(rng, -2, 2);
        }
        const IntMatrix p = tg::random_unimodular(rng, n, 5);
        const IntMatrix q2 = p.transpose() * q * p;
        const IntVector alpha2 = unimodular_inverse(p).apply(alpha);
        const auto a = kervaire_milnor_obstruction(q, alpha);
        const auto b = kervaire_milnor_obstruction(q2, alpha2);
        CHECK(a.residue == b.residue);
        CHECK(a.residue >= -8);
        CHECK(a.residue < 8);
        ++tested;
    }
    CHECK(tested > 100);
}

TEST_CASE("torsion-free reduction") {
    const DecoratedModule free = DecoratedModule::free_module(IntMatrix{{1}}, {{{1}, OrderedValue(2L)}});
    const auto same = torsion_free_reduce(free);
    CHECK(same.module.gvalues() == free.gvalues());
    CHECK(same.partial_keys.empty());

    const DecoratedModule t({0, 2}, IntMatrix{{1, 0}, {0, 0}}, {{{1, 0}, OrderedValue(2L)}, {{1, 1}, OrderedValue(0L)}});
    const auto r = torsion_free_reduce(t);
    CHECK(r.module.g({1}) == OrderedValue(0L));
    CHECK(r.partial_keys.empty());

    const DecoratedModule partial({0, 2}, IntMatrix{{1, 0}, {0, 0}}, {{{1, 0}, OrderedValue(2L)}, {{2, 1}, OrderedValue(1L)}});
    const auto p = torsion_free_reduce(partial);
    CHECK(p.partial_keys.size() == 2);
    CHECK(torsion_free_reduce(p.module).module.gvalues() == p.module.gvalues());
}

TEST_CASE("sum model") {
    const DecoratedModule x = DecoratedModule::free_module(IntMatrix{{1}}, {{{1}, OrderedValue(1L)}});
    const DecoratedModule z = DecoratedModule::free_module(IntMatrix{{0}}, {{{0}, OrderedValue(0L)}, {{1}, OrderedValue(2L)}});
    const DecoratedModule s = sum_model(x, z);
    CHECK(s.g({1, 0}) == OrderedValue(1L));
    CHECK(s.g({0, 1}) == OrderedValue(2L));
    CHECK(s.g({1, 1}) == OrderedValue(3L));
    CHECK(s.form() == IntMatrix{{1, 0}, {0, 0}});
    CHECK(sum_model(x, DecoratedModule()).gvalues() == x.gvalues());
    CHECK_THROWS_AS(sum_model(x, DecoratedModule::free_module(IntMatrix{{1}})), PreconditionError);
}

TEST_CASE("sum stability with H2(Z) = 0") {
    const DecoratedModule z;
    const DecoratedModule d = DecoratedModule::free_module(IntMatrix{{1, 0}, {0, -1}}, {{{1, 0}, OrderedValue(1L)}});
    const auto same = sum_stability_check(d, d, z, z, SumMode::H2Zero, 2);
    CHECK(same.equivalent_before);
    CHECK(same.equivalent_after);
    CHECK(same.verdict == SumStabilityReport::Verdict::Consistent);

    const DecoratedModule e = DecoratedModule::free_module(IntMatrix{{1, 0}, {0, 1}});
    const auto diff = sum_stability_check(d, e, z, z, SumMode::H2Zero, 2);
    CHECK_FALSE(diff.equivalent_before);
    CHECK_FALSE(diff.equivalent_after);
    CHECK(diff.verdict == SumStabilityReport::Verdict::Consistent);

    const DecoratedModule zz = DecoratedModule::free_module(IntMatrix{{0}});
    CHECK_THROWS_AS(sum_stability_check(d, d, zz, zz, SumMode::H2Zero, 2), PreconditionError);
}

TEST_CASE("sum stability in the non-degenerate mode") {
    tg::Rng rng(72);
    for (int iter = 0; iter < 30; ++iter) {
        const DecoratedModule x1 = tg::random_free_module(rng, 2, 2, true);
        const IntMatrix p = tg::random_unimodular(rng, x1.generators(), 2);
        const DecoratedModule x2 = DecoratedModule::free_module(p.transpose() * x1.form() * p);
        const auto nz = static_cast<std::size_t>(tg::uniform(rng, 1, 2));
        const DecoratedModule z0 = DecoratedModule::free_module(IntMatrix(nz, nz));
        std::vector<long> w(nz);
        for (auto& v : w) {
            v = tg::uniform(rng, 0, 2);
        }
        const DecoratedModule z = z0.with_gvalues(tg::weighted_table(z0, w, 1));
        const auto rep = sum_stability_check(x1, x2, z, z, SumMode::Nondegenerate, 2);
        CHECK(rep.verdict != SumStabilityReport::Verdict::Violation);
    }
    const DecoratedModule deg = DecoratedModule::free_module(IntMatrix{{0}});
    const DecoratedModule z = DecoratedModule::free_module(IntMatrix{{0}});
    CHECK_THROWS_AS(sum_stability_check(deg, deg, z, z, SumMode::Nondegenerate, 2), PreconditionError);
}

}  // TEST_SUITE
