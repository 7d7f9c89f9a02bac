#include <doctest.h>

#include "handlecalc/errors.hpp"
#include "handlecalc/form_algebra.hpp"
#include "handlecalc/isometry.hpp"
#include "support/generators.hpp"

using namespace handlecalc;
namespace tg = handlecalc::testgen;

namespace {

DecoratedModule z_form(long q, GTable g = {}) {
    return DecoratedModule::free_module(IntMatrix{{q}}, std::move(g));
}

// All 2x2 matrices with entries in [-1, 1] that preserve the hyperbolic form
// and are invertible over Z.
std::size_t brute_force_hyperbolic_isometries() {
    const IntMatrix h{{0, 1}, {1, 0}};
    std::size_t count = 0;
    for (long a = -1; a <= 1; ++a) {
        for (long b = -1; b <= 1; ++b) {
            for (long c = -1; c <= 1; ++c) {
                for (long d = -1; d <= 1; ++d) {
                    const IntMatrix m{{a, b}, {c, d}};
                    if (m.transpose() * h * m == h && abs(determinant(m)) == 1) {
                        ++count;
                    }
                }
            }
        }
    }
    return count;
}

}  // namespace

TEST_SUITE("form_algebra") {

TEST_CASE("ordered values") {
    CHECK(OrderedValue::neg_inf() < OrderedValue(-1000L));
    CHECK(OrderedValue(1000L) < OrderedValue::pos_inf());
    CHECK(OrderedValue::parse("-inf") == OrderedValue::neg_inf());
    CHECK(OrderedValue::parse("inf") == OrderedValue::pos_inf());
    CHECK(OrderedValue::parse("+inf") == OrderedValue::pos_inf());
    CHECK(OrderedValue::parse("-17") == OrderedValue(-17L));
    CHECK_FALSE(OrderedValue::parse("x").has_value());
    CHECK((OrderedValue(2L) + OrderedValue(3L)) == OrderedValue(5L));
    CHECK((OrderedValue(2L) + OrderedValue::pos_inf()) == OrderedValue::pos_inf());
    CHECK_THROWS_AS(OrderedValue::neg_inf() + OrderedValue::pos_inf(), PreconditionError);
    CHECK(OrderedValue::pos_inf().to_string() == "inf");
}

TEST_CASE("decorated module validation and canonical keys") {
    CHECK_THROWS_AS(DecoratedModule({0, 1}, IntMatrix(2, 2)), InvariantError);
    CHECK_THROWS_AS(DecoratedModule({0}, IntMatrix{{1, 0}}), DimensionError);
    CHECK_THROWS_AS(DecoratedModule({0, 0}, IntMatrix{{0, 1}, {2, 0}}), InvariantError);
    CHECK_THROWS_AS(DecoratedModule({0, 2}, IntMatrix{{1, 1}, {1, 0}}), InvariantError);

    const DecoratedModule d({0, 4}, IntMatrix{{3, 0}, {0, 0}}, GTable{{{1, 5}, OrderedValue(2L)}});
    CHECK(d.canonical({1, -3}) == IntVector{1, 1});
    CHECK(d.g({1, 1}) == OrderedValue(2L));
    CHECK(d.g({1, -7}) == OrderedValue(2L));
    CHECK_FALSE(d.g({0, 1}).has_value());
    CHECK(d.element_order({0, 2}) == 2);
    CHECK(d.element_order({0, 1}) == 4);
    CHECK_THROWS_AS(d.element_order({1, 0}), PreconditionError);
    CHECK(d.is_torsion_element({0, 3}));
    CHECK(d.group().to_string() == "Z + Z/4");
    CHECK(d.pairing({2, 1}, {1, 3}) == 6);
    CHECK(d.is_nondegenerate());

    CHECK_THROWS_AS(DecoratedModule({0, 4}, IntMatrix{{3, 0}, {0, 0}},
                                    GTable{{{1, 1}, OrderedValue(2L)}, {{1, 5}, OrderedValue(3L)}}),
                    InvariantError);
}

TEST_CASE("preserves_form examples") {
    const DecoratedModule z1 = z_form(1);
    CHECK(preserves_form(ModuleHom::identity(z1)));
    CHECK(preserves_form(ModuleHom::negation(z1)));
    CHECK_FALSE(preserves_form(ModuleHom(IntMatrix{{2}}, z1, z1)));
    const DecoratedModule t({0, 2}, IntMatrix{{1, 0}, {0, 0}});
    CHECK(preserves_form(ModuleHom::identity(t)));
    CHECK(preserves_form(ModuleHom::negation(t)));
}

TEST_CASE("negation is an isometry of random modules") {
    tg::Rng rng(21);
    for (int iter = 0; iter < 100; ++iter) {
        const auto inst = tg::random_split_instance(rng);
        CHECK(preserves_form(ModuleHom::negation(inst.s1.total())));
    }
}

TEST_CASE("homomorphism checks relations") {
    const DecoratedModule z2({2}, IntMatrix(1, 1));
    const DecoratedModule z4({4}, IntMatrix(1, 1));
    const DecoratedModule z({0}, IntMatrix(1, 1));
    CHECK_NOTHROW(ModuleHom(IntMatrix{{2}}, z2, z4));
    CHECK_THROWS_AS(ModuleHom(IntMatrix{{1}}, z2, z4), InvariantError);
    CHECK_THROWS_AS(ModuleHom(IntMatrix{{1}}, z2, z), InvariantError);
    const ModuleHom proj(IntMatrix{{1}}, z, z4);
    CHECK(proj.is_surjective());
    CHECK_FALSE(proj.is_isomorphism());
    CHECK_FALSE(is_injective(proj));
    CHECK(kernel(proj).module.group().to_string() == "Z");
    CHECK(image(proj).module.group().to_string() == "Z/4");
}

TEST_CASE("isomorphism inverse") {
    tg::Rng rng(22);
    for (int iter = 0; iter < 100; ++iter) {
        const auto inst = tg::random_split_instance(rng);
        const ModuleHom phi(inst.phi, inst.s1.total(), inst.s2.total());
        REQUIRE(phi.is_isomorphism());
        const ModuleHom inv = phi.inverse();
        const ModuleHom id1 = compose(inv, phi);
        const ModuleHom id2 = compose(phi, inv);
        for (std::size_t i = 0; i < inst.s1.total().generators(); ++i) {
            IntVector e(inst.s1.total().generators());
            e[i] = 1;
            CHECK(id1(e) == inst.s1.total().canonical(e));
            CHECK(id2(e) == inst.s2.total().canonical(e));
        }
        CHECK(preserves_form(phi));
        CHECK(preserves_form(inv));
    }
}

TEST_CASE("submodule generated by elements") {
    const DecoratedModule m({0, 0}, IntMatrix{{1, 0}, {0, -1}});
    // span of (2, 0) and (1, 1): index 2 sublattice, free of rank 2
    const Submodule s = submodule_generated(m, IntMatrix{{2, 1}, {0, 1}});
    CHECK(s.module.group().to_string() == "Z^2");
    CHECK(abs(determinant(s.module.free_form())) == 4);
    CHECK(is_injective(s.inclusion));

    const DecoratedModule t({0, 6}, IntMatrix{{1, 0}, {0, 0}});
    const Submodule st = submodule_generated(t, IntMatrix{{0}, {2}});
    CHECK(st.module.group().to_string() == "Z/3");
}

TEST_CASE("split_projection examples") {
    const DecoratedModule a = z_form(1);
    const DecoratedModule b({0}, IntMatrix(1, 1));
    const SplitModule s(a, b);
    const auto [pa, pb] = split_projection(ModuleHom::identity(s.total()), s, s);
    CHECK(pa.matrix() == IntMatrix{{1}});
    CHECK(pb.matrix() == IntMatrix{{1}});

    // shear a -> a + b, b -> b with Q_A = [2]
    const SplitModule s2(z_form(2), b);
    const ModuleHom shear(IntMatrix{{1, 0}, {1, 1}}, s2.total(), s2.total());
    CHECK(preserves_form(shear));
    const auto [qa, qb] = split_projection(shear, s2, s2);
    CHECK(qa.matrix() == IntMatrix{{1}});
    CHECK(qb.matrix() == IntMatrix{{1}});
}

TEST_CASE("split_projection on A = Z^2 diag(1,-1), B = Z/2") {
    tg::Rng rng(23);
    const DecoratedModule a = DecoratedModule::free_module(IntMatrix{{1, 0}, {0, -1}});
    const DecoratedModule b({2}, IntMatrix(1, 1));
    const SplitModule s(a, b);
    const auto isos = enumerate_isometries(a, a, 2);
    REQUIRE_FALSE(isos.empty());
    for (int iter = 0; iter < 50; ++iter) {
        const IntMatrix& psi = isos[static_cast<std::size_t>(tg::uniform(rng, 0, static_cast<long>(isos.size()) - 1))].matrix();
        IntMatrix phi = IntMatrix::identity(3);
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                phi(i, j) = psi(i, j);
            }
        }
        phi(2, 0) = tg::uniform(rng, 0, 1);
        phi(2, 1) = tg::uniform(rng, 0, 1);
        const ModuleHom f(phi, s.total(), s.total());
        REQUIRE(preserves_form(f));
        const auto [pa, pb] = split_projection(f, s, s);
        CHECK(pa.is_isomorphism());
        CHECK(pb.is_isomorphism());
        CHECK(preserves_form(pa));
        CHECK(pa.matrix() == psi);
    }
}

TEST_CASE("split_projection rejects bad hypotheses") {
    const DecoratedModule a({0, 2}, IntMatrix{{1, 0}, {0, 0}});
    const DecoratedModule b({0, 2}, IntMatrix(2, 2));
    const SplitModule s(a, b);
    CHECK_THROWS_AS(split_projection(ModuleHom::identity(s.total()), s, s), PreconditionError);

    const SplitModule ok(z_form(1), DecoratedModule({0}, IntMatrix(1, 1)));
    const ModuleHom not_iso(IntMatrix{{1, 0}, {0, 2}}, ok.total(), ok.total());
    CHECK_THROWS_AS(split_projection(not_iso, ok, ok), PreconditionError);
    CHECK_THROWS_AS(SplitModule(z_form(0), DecoratedModule({0}, IntMatrix(1, 1))), InvariantError);
}

TEST_CASE("split_preserving_g_on_b examples") {
    const DecoratedModule b({0}, IntMatrix(1, 1));
    GTable g;
    for (long x = -3; x <= 3; ++x) {
        for (long y = -3; y <= 3; ++y) {
            g.emplace(IntVector{x, y}, OrderedValue(std::abs(y) + 2 * std::abs(x)));
        }
    }
    const SplitModule s(z_form(1), b, g);
    const auto id = split_preserving_g_on_b(ModuleHom::identity(s.total()), s, s);
    CHECK(id.map.matrix() == IntMatrix{{1}});
    CHECK(id.coverage.uncovered.empty());
    CHECK(id.coverage.verified.size() == 7);

    const ModuleHom flip(IntMatrix{{1, 0}, {0, -1}}, s.total(), s.total());
    const auto r = split_preserving_g_on_b(flip, s, s);
    CHECK(r.map.matrix() == IntMatrix{{-1}});
    for (long y = -3; y <= 3; ++y) {
        CHECK(s.b_part().canonical({-y}) == r.map({y}));
        CHECK(s.total().g({0, y}) == s.total().g({0, -y}));
    }
    CHECK(r.coverage.unsupported_conflicts.empty());
}

TEST_CASE("split_preserving_g_on_a with the identity") {
    const DecoratedModule b({0}, IntMatrix(1, 1));
    GTable g;
    for (long x = -2; x <= 2; ++x) {
        for (long y = -2; y <= 2; ++y) {
            g.emplace(IntVector{x, y}, OrderedValue(std::abs(x) + std::abs(y)));
        }
    }
    const SplitModule s(z_form(1), b, g);
    const auto r = split_preserving_g_on_a(ModuleHom::identity(s.total()), s, s);
    CHECK(r.map.matrix() == IntMatrix{{1}});
    CHECK(r.coverage.verified.size() == 5);
}

TEST_CASE("split_preserving_g_on_a replays the torsion chase of length 2") {
    // A = Z + Z/2 (generators a, t), B = Z (generator b), phi: a -> a + b, t -> t, b -> b + t.
    const DecoratedModule a({0, 2}, IntMatrix{{1, 0}, {0, 0}});
    const DecoratedModule b({0}, IntMatrix(1, 1));
    const IntMatrix m{{1, 0, 0}, {0, 1, 1}, {1, 0, 1}};
    const SplitModule bare(a, b);
    const ModuleHom phi0(m, bare.total(), bare.total());
    REQUIRE(phi0.is_isomorphism());

    // G(x a + y t + z b) = |x| on both sides; phi preserves it.
    GTable g;
    tg::for_each_vector(bare.total().orders(), 3, [&](const IntVector& v) {
        g.emplace(bare.total().canonical(v), OrderedValue(abs(v[0])));
    });
    const SplitModule s = bare.with_gvalues(g);
    const ModuleHom phi(m, s.total(), s.total());

    // By hand: phi(a) = a + b, whose B-part b has preimage b + t, so t has order 2
    // and the chase visits a and a - t before closing.
    const IntVector pre = phi.inverse()({0, 0, 1});
    CHECK(pre == IntVector{0, 1, 1});

    const auto r = split_preserving_g_on_a(phi, s, s);
    CHECK(r.map.matrix() == IntMatrix{{1, 0}, {0, 1}});
    CHECK(r.coverage.unsupported_conflicts.empty());
    const IntVector key{1, 0};
    CHECK(std::find(r.coverage.verified.begin(), r.coverage.verified.end(), key) != r.coverage.verified.end());
}

TEST_CASE("split_preserving_g_on_a rejects non-monotone tables") {
    const DecoratedModule b({0}, IntMatrix(1, 1));
    GTable g{{{1, 0}, OrderedValue(3L)}, {{1, 1}, OrderedValue(1L)}};
    const SplitModule s(z_form(1), b, g);
    CHECK(monotonicity_violation(s).has_value());
    CHECK_THROWS_AS(split_preserving_g_on_a(ModuleHom::identity(s.total()), s, s), PreconditionError);
}

TEST_CASE("split_preserving_g_on_a on generated instances") {
    tg::Rng rng(24);
    for (int iter = 0; iter < 40; ++iter) {
        const tg::GOnAInstance g = tg::random_g_on_a_instance(rng);
        const auto [t1, t2] = tg::g_on_a_tables(g, 2);
        const SplitModule s1 = g.split.s1.with_gvalues(t1);
        const SplitModule s2 = g.split.s2.with_gvalues(t2);
        const ModuleHom phi(g.split.phi, s1.total(), s2.total());
        const auto r = split_preserving_g_on_a(phi, s1, s2);
        CHECK(r.coverage.unsupported_conflicts.empty());
        tg::for_each_vector(s1.a_part().orders(), 2, [&](const IntVector& a) {
            CHECK(g.g2(s2.embed_a(r.map(a))) == g.g1(s1.embed_a(a)));
        });
    }
}

}  // TEST_SUITE

TEST_SUITE("isometry") {

TEST_CASE("rank one examples") {
    const auto plus_minus = enumerate_isometries(z_form(1), z_form(1), 1);
    REQUIRE(plus_minus.size() == 2);
    CHECK(plus_minus[0].matrix() == IntMatrix{{-1}});
    CHECK(plus_minus[1].matrix() == IntMatrix{{1}});
    CHECK(enumerate_isometries(z_form(1), z_form(2), 5).empty());
}

TEST_CASE("hyperbolic plane isometries with entries in [-1, 1]") {
    const std::size_t expected = brute_force_hyperbolic_isometries();
    CHECK(expected == 4);
    const DecoratedModule h = DecoratedModule::free_module(IntMatrix{{0, 1}, {1, 0}});
    CHECK(enumerate_isometries(h, h, 1).size() == 4);
    CHECK(enumerate_isometries_reference(h, h, 1).size() == 4);
}

TEST_CASE("parallel search matches the serial reference") {
    tg::Rng rng(31);
    for (int iter = 0; iter < 60; ++iter) {
        const auto n = static_cast<std::size_t>(tg::uniform(rng, 1, 2));
        const bool torsion = tg::coin(rng);
        IntVector orders(n + (torsion ? 1 : 0), Integer(0));
        if (torsion) {
            orders.back() = tg::uniform(rng, 2, 3);
        }
        const IntMatrix q = tg::form_on(orders, tg::random_symmetric(rng, n, 2));
        const DecoratedModule d1(orders, q);
        const IntMatrix p = tg::random_unimodular(rng, n, 2);
        const DecoratedModule d2(orders, tg::form_on(orders, p.transpose() * d1.free_form() * p));
        // the reference visits every matrix, so keep torsion cases at bound 1
        const long bound = torsion ? 1 : tg::uniform(rng, 1, 2);
        const auto fast = enumerate_isometries(d1, d2, bound);
        const auto slow = enumerate_isometries_reference(d1, d2, bound);
        REQUIRE(fast.size() == slow.size());
        for (std::size_t i = 0; i < fast.size(); ++i) {
            CHECK(fast[i].matrix() == slow[i].matrix());
        }
    }
}

TEST_CASE("capacity guard") {
    const DecoratedModule big = DecoratedModule::free_module(IntMatrix::identity(5));
    CHECK_THROWS_AS(enumerate_isometries(big, big, 1), CapacityError);
    CHECK_THROWS_AS(enumerate_isometries(z_form(1), z_form(1), 0), RangeError);
}

TEST_CASE("algebraic equivalence examples") {
    const DecoratedModule d = z_form(1, {{{1}, OrderedValue(0L)}});
    const auto self = algebraically_equivalent(d, d, 1);
    REQUIRE(self.equivalent());
    CHECK(self.witness->matrix() == IntMatrix{{1}});
    const DecoratedModule h({0, 0, 2}, IntMatrix{{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}, {{{1, 0, 0}, OrderedValue(1L)}, {{0, 1, 0}, OrderedValue(1L)}});
    const auto hh = algebraically_equivalent(h, h, 2);
    REQUIRE(hh.equivalent());
    CHECK(hh.witness->matrix() == IntMatrix::identity(3));

    const DecoratedModule g0 = z_form(0, {{{1}, OrderedValue(0L)}});
    const DecoratedModule g5 = z_form(0, {{{1}, OrderedValue(5L)}});
    const auto r = algebraically_equivalent(g0, g5, 3);
    CHECK_FALSE(r.equivalent());

    const DecoratedModule both = z_form(1, {{{-1}, OrderedValue(0L)}, {{1}, OrderedValue(0L)}});
    CHECK(algebraically_equivalent(d, both, 1).equivalent());
    CHECK(algebraically_equivalent(both, d, 1).equivalent());
}

TEST_CASE("algebraic equivalence is symmetric") {
    tg::Rng rng(32);
    for (int iter = 0; iter < 60; ++iter) {
        const DecoratedModule a = tg::random_free_module(rng, 2, 2, false);
        std::vector<long> w1, w2;
        for (std::size_t i = 0; i < a.generators(); ++i) {
            w1.push_back(tg::uniform(rng, 0, 2));
            w2.push_back(tg::uniform(rng, 0, 2));
        }
        const IntMatrix p = tg::random_unimodular(rng, a.generators(), 2);
        const DecoratedModule b0 = DecoratedModule::free_module(p.transpose() * a.form() * p);
        const DecoratedModule x = a.with_gvalues(tg::weighted_table(a, w1, 1));
        const DecoratedModule y = b0.with_gvalues(tg::weighted_table(b0, w2, 1));
        const long bound = tg::uniform(rng, 1, 2);
        const auto xy = algebraically_equivalent(x, y, bound);
        const auto yx = algebraically_equivalent(y, x, bound);
        CHECK(xy.equivalent() == yx.equivalent());
        if (xy.equivalent()) {
            CHECK(witnesses_equivalence(*xy.witness));
            CHECK(yx.witness->inverse().matrix() == xy.witness->matrix());
        }
    }
}

}  // TEST_SUITE
