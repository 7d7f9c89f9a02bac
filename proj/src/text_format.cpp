#include "handlecalc/text_format.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "handlecalc/errors.hpp"

namespace handlecalc {

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
    std::string raw;
};

// Non-blank, non-comment lines split on whitespace.
std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view raw = text.substr(pos, end - pos);
        if (!raw.empty() && raw.back() == '\r') {
            raw.remove_suffix(1);
        }
        ++number;
        Line line{number, {}, std::string(raw)};
        std::size_t i = 0;
        while (i < raw.size()) {
            while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
            }
            const std::size_t start = i;
            while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) {
                ++i;
            }
            if (i > start) {
                line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
            }
        }
        if (!line.tokens.empty() && line.tokens[0].text[0] != '#') {
            out.push_back(std::move(line));
        }
        if (end == text.size()) {
            break;
        }
        pos = end + 1;
    }
    return out;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& what) {
    throw ParseError(l.number, t.column, what);
}

[[noreturn]] void fail_end(const Line& l, const std::string& what) {
    throw ParseError(l.number, l.raw.size() + 1, what);
}

Integer parse_integer(const Line& l, const Token& t, std::string_view s) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) {
        fail(l, t, "expected an integer, got '" + std::string(s) + "'");
    }
    for (std::size_t i = start; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            fail(l, t, "expected an integer, got '" + std::string(s) + "'");
        }
    }
    Integer v;
    v.set_str(std::string(s[0] == '+' ? s.substr(1) : s), 10);
    return v;
}

long parse_long(const Line& l, const Token& t, std::string_view s) {
    const Integer v = parse_integer(l, t, s);
    if (!v.fits_slong_p()) {
        fail(l, t, "integer out of range");
    }
    return v.get_si();
}

// 1-based index in [1, limit].
std::size_t parse_index(const Line& l, const Token& t, std::size_t limit, const char* what) {
    const long v = parse_long(l, t, t.text);
    if (v < 1 || static_cast<std::size_t>(v) > limit) {
        fail(l, t, std::string("no ") + what + " with index " + t.text);
    }
    return static_cast<std::size_t>(v);
}

// Value of a "key=value" token.
std::string_view keyed(const Line& l, const Token& t, std::string_view key) {
    const std::string prefix = std::string(key) + "=";
    if (t.text.rfind(prefix, 0) != 0) {
        fail(l, t, "expected " + prefix + "...");
    }
    return std::string_view(t.text).substr(prefix.size());
}

OrderedValue parse_value(const Line& l, const Token& t, std::string_view s) {
    auto v = OrderedValue::parse(std::string(s));
    if (!v) {
        fail(l, t, "expected an integer, inf or -inf, got '" + std::string(s) + "'");
    }
    return *v;
}

void expect_count(const Line& l, std::size_t n) {
    if (l.tokens.size() < n) {
        fail_end(l, "too few fields for '" + l.tokens[0].text + "'");
    }
    if (l.tokens.size() > n) {
        fail(l, l.tokens[n], "unexpected field");
    }
}

void expect_header(const std::vector<Line>& lines, const char* kind) {
    if (lines.empty()) {
        throw ParseError(1, 1, std::string("missing '") + kind + " v1' header");
    }
    const Line& h = lines[0];
    if (h.tokens[0].text != kind) {
        fail(h, h.tokens[0], std::string("expected '") + kind + " v1' header");
    }
    if (h.tokens.size() < 2 || h.tokens[1].text != "v1") {
        if (h.tokens.size() < 2) {
            fail_end(h, "missing format version");
        }
        fail(h, h.tokens[1], "unsupported format version '" + h.tokens[1].text + "'");
    }
    expect_count(h, 2);
}

// Symmetric off-diagonal entries, conflicts rejected.
void set_symmetric(IntMatrix& m, std::map<std::pair<std::size_t, std::size_t>, bool>& seen, std::size_t i,
                   std::size_t j, const Integer& v, const Line& l, const Token& t) {
    const auto key = std::minmax(i, j);
    if (seen.count(key) != 0 && m(i, j) != v) {
        fail(l, t, "conflicts with an earlier value " + m(i, j).get_str() + " for this pair");
    }
    seen[key] = true;
    m(i, j) = v;
    m(j, i) = v;
}

}  // namespace

Handlebody2 parse_handlebody(std::string_view text) {
    const auto lines = split_lines(text);
    expect_header(lines, "handlebody");
    if (lines.size() < 2 || lines[1].tokens[0].text != "one_handles") {
        if (lines.size() < 2) {
            throw ParseError(lines[0].number + 1, 1, "missing 'one_handles' line");
        }
        fail(lines[1], lines[1].tokens[0], "expected 'one_handles' line");
    }
    expect_count(lines[1], 2);
    const long k = parse_long(lines[1], lines[1].tokens[1], lines[1].tokens[1].text);
    if (k < 0) {
        fail(lines[1], lines[1].tokens[1], "count must be non-negative");
    }

    std::vector<TwoHandle> handles;
    std::vector<Integer> framings;
    // Checked once all 2-handles are known.
    std::vector<std::pair<Integer, const Line*>> links;
    std::map<std::size_t, std::pair<FrontCounts, const Line*>> fronts;
    std::vector<std::string> tags;

    for (std::size_t li = 2; li < lines.size(); ++li) {
        const Line& l = lines[li];
        const std::string& kind = l.tokens[0].text;
        if (kind == "two_handle") {
            if (l.tokens.size() < 4) {
                fail_end(l, "expected 'two_handle <id> word=... framing=<int>'");
            }
            const long id = parse_long(l, l.tokens[1], l.tokens[1].text);
            if (id != static_cast<long>(handles.size()) + 1) {
                fail(l, l.tokens[1], "2-handle ids must be 1, 2, ... in order; expected " +
                                         std::to_string(handles.size() + 1));
            }
            TwoHandle h;
            const std::string_view first = keyed(l, l.tokens[2], "word");
            auto add_letter = [&](const Token& t, std::string_view s) {
                const long letter = parse_long(l, t, s);
                const long g = letter < 0 ? -letter : letter;
                if (g < 1 || g > k) {
                    fail(l, t, "unknown generator " + std::string(s));
                }
                h.word.push_back(letter);
            };
            if (!first.empty()) {
                add_letter(l.tokens[2], first);
            }
            const std::size_t last = l.tokens.size() - 1;
            for (std::size_t t = 3; t < last; ++t) {
                add_letter(l.tokens[t], l.tokens[t].text);
            }
            const Integer framing = parse_integer(l, l.tokens[last], keyed(l, l.tokens[last], "framing"));
            handles.push_back(std::move(h));
            framings.push_back(framing);
        } else if (kind == "linking") {
            expect_count(l, 4);
            links.emplace_back(parse_integer(l, l.tokens[3], l.tokens[3].text), &l);
        } else if (kind == "front") {
            expect_count(l, 6);
            const long id = parse_long(l, l.tokens[1], l.tokens[1].text);
            FrontCounts f;
            f.writhe = parse_long(l, l.tokens[2], keyed(l, l.tokens[2], "writhe"));
            f.right_cusps = parse_long(l, l.tokens[3], keyed(l, l.tokens[3], "right"));
            f.up_cusps = parse_long(l, l.tokens[4], keyed(l, l.tokens[4], "up"));
            f.down_cusps = parse_long(l, l.tokens[5], keyed(l, l.tokens[5], "down"));
            try {
                f.validate();
            } catch (const InvariantError& e) {
                fail(l, l.tokens[2], e.what());
            }
            if (id < 1) {
                fail(l, l.tokens[1], "no 2-handle with index " + l.tokens[1].text);
            }
            if (!fronts.emplace(static_cast<std::size_t>(id), std::make_pair(f, &l)).second) {
                fail(l, l.tokens[1], "second front for 2-handle " + l.tokens[1].text);
            }
        } else if (kind == "tag") {
            if (l.tokens.size() < 2) {
                fail_end(l, "empty tag");
            }
            const std::size_t start = l.tokens[1].column - 1;
            const std::size_t end = l.tokens.back().column - 1 + l.tokens.back().text.size();
            tags.push_back(l.raw.substr(start, end - start));
        } else if (kind == "one_handles") {
            fail(l, l.tokens[0], "duplicate 'one_handles' line");
        } else {
            fail(l, l.tokens[0], "unknown line kind '" + kind + "'");
        }
    }

    const std::size_t n = handles.size();
    IntMatrix linking(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        linking(j, j) = framings[j];
    }
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    for (const auto& [value, line] : links) {
        const Line& l = *line;
        const std::size_t i = parse_index(l, l.tokens[1], n, "2-handle");
        const std::size_t j = parse_index(l, l.tokens[2], n, "2-handle");
        if (i == j) {
            fail(l, l.tokens[2], "diagonal linking is the framing; set it on the two_handle line");
        }
        set_symmetric(linking, seen, i - 1, j - 1, value, l, l.tokens[3]);
    }
    for (auto& [id, fl] : fronts) {
        if (id > n) {
            const Line& l = *fl.second;
            fail(l, l.tokens[1], "no 2-handle with index " + std::to_string(id));
        }
        handles[id - 1].front = fl.first;
    }
    return Handlebody2(static_cast<std::size_t>(k), std::move(handles), std::move(linking), std::move(tags));
}

std::string render_handlebody(const Handlebody2& h) {
    std::ostringstream out;
    out << "handlebody v1\n";
    out << "one_handles " << h.one_handles() << "\n";
    const std::size_t n = h.two_handle_count();
    for (std::size_t j = 0; j < n; ++j) {
        out << "two_handle " << j + 1 << " word=";
        const auto& w = h.two_handle(j).word;
        for (std::size_t i = 0; i < w.size(); ++i) {
            out << (i == 0 ? "" : " ") << w[i];
        }
        out << " framing=" << h.framing(j) << "\n";
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (sgn(h.linking()(i, j)) != 0) {
                out << "linking " << i + 1 << " " << j + 1 << " " << h.linking()(i, j) << "\n";
            }
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (const auto& f = h.two_handle(j).front) {
            out << "front " << j + 1 << " writhe=" << f->writhe << " right=" << f->right_cusps << " up=" << f->up_cusps
                << " down=" << f->down_cusps << "\n";
        }
    }
    for (const auto& t : h.tags()) {
        out << "tag " << t << "\n";
    }
    return out.str();
}

DecoratedModule parse_module(std::string_view text) {
    const auto lines = split_lines(text);
    expect_header(lines, "module");
    if (lines.size() < 2 || lines[1].tokens[0].text != "generators") {
        if (lines.size() < 2) {
            throw ParseError(lines[0].number + 1, 1, "missing 'generators' line");
        }
        fail(lines[1], lines[1].tokens[0], "expected 'generators' line");
    }
    expect_count(lines[1], 2);
    const long nl = parse_long(lines[1], lines[1].tokens[1], lines[1].tokens[1].text);
    if (nl < 0) {
        fail(lines[1], lines[1].tokens[1], "count must be non-negative");
    }
    const auto n = static_cast<std::size_t>(nl);

    IntVector orders(n);
    IntMatrix form(n, n);
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    std::vector<std::pair<IntVector, std::pair<OrderedValue, const Line*>>> entries;
    for (std::size_t li = 2; li < lines.size(); ++li) {
        const Line& l = lines[li];
        const std::string& kind = l.tokens[0].text;
        if (kind == "order") {
            expect_count(l, 3);
            const std::size_t i = parse_index(l, l.tokens[1], n, "generator");
            const Integer d = parse_integer(l, l.tokens[2], l.tokens[2].text);
            if (d < 2) {
                fail(l, l.tokens[2], "torsion order must be at least 2");
            }
            if (sgn(orders[i - 1]) != 0 && orders[i - 1] != d) {
                fail(l, l.tokens[2], "conflicting order for generator " + l.tokens[1].text);
            }
            orders[i - 1] = d;
        } else if (kind == "form") {
            expect_count(l, 4);
            const std::size_t i = parse_index(l, l.tokens[1], n, "generator");
            const std::size_t j = parse_index(l, l.tokens[2], n, "generator");
            set_symmetric(form, seen, i - 1, j - 1, parse_integer(l, l.tokens[3], l.tokens[3].text), l, l.tokens[3]);
        } else if (kind == "g") {
            expect_count(l, n + 2);
            IntVector key(n);
            for (std::size_t i = 0; i < n; ++i) {
                key[i] = parse_integer(l, l.tokens[i + 1], l.tokens[i + 1].text);
            }
            const Token& vt = l.tokens[n + 1];
            entries.push_back({std::move(key), {parse_value(l, vt, keyed(l, vt, "value")), &l}});
        } else if (kind == "generators") {
            fail(l, l.tokens[0], "duplicate 'generators' line");
        } else {
            fail(l, l.tokens[0], "unknown line kind '" + kind + "'");
        }
    }

    DecoratedModule bare;
    try {
        bare = DecoratedModule(orders, form);
    } catch (const InvariantError& e) {
        throw ParseError(lines[0].number, 1, e.what());
    }
    GTable table;
    for (auto& [key, vl] : entries) {
        auto c = bare.canonical(key);
        auto [it, inserted] = table.emplace(c, vl.first);
        if (!inserted && it->second != vl.first) {
            fail(*vl.second, vl.second->tokens[1], "conflicting value for class " + to_string(c));
        }
    }
    return bare.with_gvalues(std::move(table));
}

std::string render_module(const DecoratedModule& d) {
    std::ostringstream out;
    const std::size_t n = d.generators();
    out << "module v1\n";
    out << "generators " << n << "\n";
    for (std::size_t i = 0; i < n; ++i) {
        if (d.is_torsion_generator(i)) {
            out << "order " << i + 1 << " " << d.orders()[i] << "\n";
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (sgn(d.form()(i, j)) != 0) {
                out << "form " << i + 1 << " " << j + 1 << " " << d.form()(i, j) << "\n";
            }
        }
    }
    for (const auto& [key, value] : d.gvalues()) {
        out << "g";
        for (const auto& c : key) {
            out << " " << c;
        }
        out << " value=" << value.to_string() << "\n";
    }
    return out.str();
}

DiskBundleTable parse_table(std::string_view text) {
    DiskBundleTable t;
    std::map<std::pair<long, long>, OrderedValue> seen;
    for (const auto& l : split_lines(text)) {
        if (l.tokens[0].text != "entry") {
            fail(l, l.tokens[0], "unknown line kind '" + l.tokens[0].text + "'");
        }
        expect_count(l, 4);
        const long g = parse_long(l, l.tokens[1], keyed(l, l.tokens[1], "g"));
        const long n = parse_long(l, l.tokens[2], keyed(l, l.tokens[2], "n"));
        const OrderedValue v = parse_value(l, l.tokens[3], keyed(l, l.tokens[3], "value"));
        if (g < 0) {
            fail(l, l.tokens[1], "genus must be non-negative");
        }
        auto [it, inserted] = seen.emplace(std::make_pair(g, n), v);
        if (!inserted && it->second != v) {
            fail(l, l.tokens[3], "conflicting value for g=" + std::to_string(g) + " n=" + std::to_string(n));
        }
        t.set(g, n, v);
    }
    return t;
}

std::string render_table(const DiskBundleTable& t) {
    std::ostringstream out;
    for (const auto& [key, value] : t.entries()) {
        out << "entry g=" << key.first << " n=" << key.second << " value=" << value.to_string() << "\n";
    }
    return out.str();
}

}  // namespace handlecalc
