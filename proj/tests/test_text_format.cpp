#include <doctest.h>

#include "handlecalc/errors.hpp"
#include "handlecalc/text_format.hpp"
#include "support/generators.hpp"

using namespace handlecalc;
namespace tg = handlecalc::testgen;

namespace {

std::size_t error_line(std::string_view text) {
    try {
        parse_handlebody(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

bool same_module(const DecoratedModule& a, const DecoratedModule& b) {
    return a.orders() == b.orders() && a.form() == b.form() && a.gvalues() == b.gvalues();
}

}  // namespace

TEST_SUITE("text_format") {

TEST_CASE("minimal handlebody files") {
    const Handlebody2 empty = parse_handlebody("handlebody v1\none_handles 0\n");
    CHECK(empty == Handlebody2());

    const Handlebody2 s = parse_handlebody("# S2 x D2\nhandlebody v1\n\none_handles 0\ntwo_handle 1 word= framing=0\n");
    REQUIRE(s.two_handle_count() == 1);
    CHECK(s.framing(0) == 0);
    CHECK(s.two_handle(0).word.empty());
}

TEST_CASE("a full handlebody file") {
    const std::string text =
        "handlebody v1\n"
        "one_handles 2\n"
        "two_handle 1 word=1 -2 1 framing=-3\n"
        "two_handle 2 word=2 framing=0\n"
        "linking 1 2 4\n"
        "front 1 writhe=-1 right=1 up=1 down=1\n"
        "tag qi:one-handles\n";
    const Handlebody2 h = parse_handlebody(text);
    CHECK(h.one_handles() == 2);
    CHECK(h.two_handle(0).word == Word{1, -2, 1});
    CHECK(h.framing(0) == -3);
    CHECK(h.linking()(0, 1) == 4);
    CHECK(h.linking()(1, 0) == 4);
    REQUIRE(h.two_handle(0).front.has_value());
    CHECK_FALSE(h.two_handle(1).front.has_value());
    CHECK(h.has_tag("qi:one-handles"));
    CHECK(render_handlebody(h) == text);
}

TEST_CASE("handlebody round trips") {
    tg::Rng rng(81);
    tg::HandlebodyShape shape;
    shape.fronts = true;
    shape.tags = true;
    for (int iter = 0; iter < 200; ++iter) {
        const Handlebody2 h = tg::random_handlebody(rng, shape);
        const std::string text = render_handlebody(h);
        const Handlebody2 back = parse_handlebody(text);
        CHECK(back == h);
        CHECK(render_handlebody(back) == text);
    }
}

TEST_CASE("handlebody parse errors carry positions") {
    CHECK_THROWS_AS(parse_handlebody(""), ParseError);
    CHECK(error_line("handlebody v2\n") == 1);
    CHECK(error_line("handlebody v1\none_handles -1\n") == 2);
    CHECK(error_line("handlebody v1\none_handles 2\ntwo_handle oops\n") == 3);
    CHECK(error_line("handlebody v1\none_handles 0\ntwo_handle 2 word= framing=0\n") == 3);
    CHECK(error_line("handlebody v1\none_handles 1\ntwo_handle 1 word=2 framing=0\n") == 3);
    CHECK(error_line("handlebody v1\none_handles 0\ntwo_handle 1 word= framing=0\nlinking 1 1 3\n") == 4);
    CHECK(error_line("handlebody v1\none_handles 0\ntwo_handle 1 word= framing=0\nbogus\n") == 4);
    CHECK(error_line("handlebody v1\none_handles 0\ntwo_handle 1 word= framing=x\n") == 3);
    try {
        parse_handlebody("handlebody v1\none_handles 0\n  bogus\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() >= 1);
    }
}

TEST_CASE("module round trips") {
    tg::Rng rng(82);
    for (int iter = 0; iter < 100; ++iter) {
        const auto inst = tg::random_split_instance(rng);
        const DecoratedModule d = inst.s1.total();
        std::vector<long> w(d.generators());
        for (auto& x : w) {
            x = tg::uniform(rng, 0, 2);
        }
        GTable g;
        tg::for_each_vector(d.orders(), 1, [&](const IntVector& v) {
            long value = 0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                value += w[i] * std::abs(v[i].get_si());
            }
            g[d.canonical(v)] = OrderedValue(value);
        });
        const DecoratedModule dg = d.with_gvalues(g);
        const DecoratedModule back = parse_module(render_module(dg));
        CHECK(same_module(back, dg));
        CHECK(render_module(back) == render_module(dg));
    }
    const DecoratedModule inf = DecoratedModule::free_module(IntMatrix{{0}}, {{{1}, OrderedValue::pos_inf()}, {{-1}, OrderedValue::neg_inf()}});
    CHECK(same_module(parse_module(render_module(inf)), inf));
}

TEST_CASE("module parse errors") {
    CHECK_THROWS_AS(parse_module("module v1\ngenerators 1\nform 1 2 1\n"), ParseError);
    CHECK_THROWS_AS(parse_module("module v1\ngenerators 2\norder 1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_module("module v1\ngenerators 1\ng 1 2 value=0\n"), ParseError);
    CHECK_THROWS_AS(parse_module("module v1\ngenerators 1\ng 1 value=abc\n"), ParseError);
    CHECK_THROWS_AS(parse_module("module v1\ngenerators 2\nform 1 2 1\nform 2 1 2\n"), Error);
}

TEST_CASE("table round trips") {
    const DiskBundleTable t = DiskBundleTable::identity(6, -2, 3);
    const DiskBundleTable back = parse_table(render_table(t));
    CHECK(back.entries() == t.entries());
    const DiskBundleTable parsed = parse_table("# small\nentry g=0 n=0 value=-inf\nentry g=1 n=0 value=inf\n");
    CHECK(parsed.get(0, 0) == OrderedValue::neg_inf());
    CHECK(parsed.get(1, 0) == OrderedValue::pos_inf());
    CHECK_THROWS_AS(parse_table("entry g=0 value=1\n"), ParseError);
    CHECK_THROWS_AS(parse_table("entry g=-1 n=0 value=1\n"), Error);
}

}  // TEST_SUITE
