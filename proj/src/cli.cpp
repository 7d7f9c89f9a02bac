#include "handlecalc/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "handlecalc/cobordism.hpp"
#include "handlecalc/errors.hpp"
#include "handlecalc/genus.hpp"
#include "handlecalc/handlebody.hpp"
#include "handlecalc/isometry.hpp"
#include "handlecalc/legendrian.hpp"
#include "handlecalc/text_format.hpp"

namespace handlecalc::cli {

Verbosity verbosity_from_env() {
    const char* v = std::getenv("HANDLECALC_REPORT");
    if (v == nullptr) {
        return Verbosity::Full;
    }
    const std::string s(v);
    if (s == "report") {
        return Verbosity::Report;
    }
    if (s == "summary") {
        return Verbosity::Summary;
    }
    return Verbosity::Full;
}

namespace {

class InputError : public Error {
public:
    using Error::Error;
};

struct Context {
    std::istream& in;
    std::ostream& out;
    Verbosity verbosity;
    bool stdin_used = false;
};

std::string read_input(Context& ctx, const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        if (ctx.stdin_used) {
            throw InputError("standard input can be used for only one argument");
        }
        ctx.stdin_used = true;
        buf << ctx.in.rdbuf();
        return buf.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw InputError(path + ": cannot open file");
    }
    buf << f.rdbuf();
    return buf.str();
}

// Attaches the file name to parse errors.
template <class F>
auto parse_file(Context& ctx, const std::string& path, F parse) {
    const std::string text = read_input(ctx, path);
    try {
        return parse(text);
    } catch (const ParseError& e) {
        throw InputError((path == "-" ? std::string("<stdin>") : path) + ": " + e.what());
    }
}

Handlebody2 load_handlebody(Context& ctx, const std::string& path) {
    return parse_file(ctx, path, [](const std::string& t) { return parse_handlebody(t); });
}

DecoratedModule load_module(Context& ctx, const std::string& path) {
    return parse_file(ctx, path, [](const std::string& t) { return parse_module(t); });
}

DiskBundleTable load_table(Context& ctx, const std::string& path) {
    return parse_file(ctx, path, [](const std::string& t) { return parse_table(t); });
}

class Report {
public:
    explicit Report(std::string command) { add("command", std::move(command)); }

    Report& add(std::string key, std::string value) {
        kv_.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    Report& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "yes" : "no")); }
    Report& add(std::string key, long value) { return add(std::move(key), std::to_string(value)); }
    Report& add(std::string key, std::size_t value) { return add(std::move(key), std::to_string(value)); }
    Report& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }

    void summary(std::string s) { summary_ = std::move(s); }

    // With `comments`, every line is prefixed so the output stays parseable.
    void print(const Context& ctx, bool comments) const {
        const std::string p = comments ? "# " : "";
        if (ctx.verbosity != Verbosity::Summary) {
            ctx.out << p << "[report]\n";
            for (const auto& [k, v] : kv_) {
                ctx.out << p << k << "=" << v << "\n";
            }
            ctx.out << p << "[/report]\n";
        }
        if (ctx.verbosity != Verbosity::Report && !summary_.empty()) {
            ctx.out << p << summary_ << "\n";
        }
    }

private:
    std::vector<std::pair<std::string, std::string>> kv_;
    std::string summary_;
};

void emit_handlebody(const Context& ctx, const Handlebody2& h, const Report& r) {
    ctx.out << render_handlebody(h);
    r.print(ctx, true);
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        s += (i == 0 ? "" : sep) + parts[i];
    }
    return s;
}

int cmd_info(Context& ctx, const std::string& file) {
    const Handlebody2 h = load_handlebody(ctx, file);
    std::vector<std::string> framings;
    std::size_t fronts = 0;
    for (std::size_t j = 0; j < h.two_handle_count(); ++j) {
        framings.push_back(h.framing(j).get_str());
        fronts += h.two_handle(j).front ? 1 : 0;
    }
    const auto cert = quasi_invertibility_certificate(moves_from_tags(h.tags()));
    std::vector<std::string> steps;
    for (const auto& line : cert.lines) {
        steps.push_back(to_string(line.step));
    }
    const bool stein = fronts == h.two_handle_count() && is_stein(h);
    Report r("info");
    r.add("one_handles", h.one_handles())
        .add("two_handles", h.two_handle_count())
        .add("framings", join(framings, ","))
        .add("fronts", fronts)
        .add("stein", stein)
        .add("tags", join(h.tags(), ";"))
        .add("qi_steps", join(steps, ","))
        .add("qi_invertible", cert.invertible);
    r.summary(std::to_string(h.one_handles()) + " one-handles, " + std::to_string(h.two_handle_count()) +
              " two-handles, Stein: " + (stein ? "yes" : "no"));
    r.print(ctx, false);
    return 0;
}

int cmd_homology(Context& ctx, const std::string& file) {
    const HomologyProfile p = homology(load_handlebody(ctx, file));
    Report r("homology");
    r.add("h1", p.h1.to_string())
        .add("h2_rank", p.h2_rank)
        .add("intersection_form", to_string(p.intersection_form))
        .add("boundary_h1", p.boundary_h1.to_string());
    r.summary("H1: " + p.h1.to_string() + ", H2 rank: " + std::to_string(p.h2_rank) +
              ", boundary H1: " + p.boundary_h1.to_string());
    r.print(ctx, false);
    return 0;
}

int cmd_boundary(Context& ctx, const std::string& file) {
    const Handlebody2 h = load_handlebody(ctx, file);
    const IntMatrix pres = boundary_presentation(h);
    const FgAbelianGroup b = cokernel(pres);
    const Integer det = determinant(pres);
    const bool sphere = abs(det) == 1;
    Report r("boundary");
    r.add("boundary_h1", b.to_string()).add("presentation_det", det.get_str()).add("homology_sphere", sphere);
    r.summary("boundary H1: " + b.to_string() + ", homology sphere: " + (sphere ? "yes" : "no"));
    r.print(ctx, false);
    return 0;
}

int cmd_cork(Context& ctx, long rr, long s, long m) {
    const Handlebody2 h = mazur_cork_template(rr, s, m);
    long exponent = 0;
    for (long letter : h.two_handle(0).word) {
        exponent += letter < 0 ? -1 : 1;
    }
    Report r("cork");
    r.add("r", rr).add("s", s).add("m", m).add("exponent_sum", exponent);
    r.summary("cork template r=" + std::to_string(rr) + " s=" + std::to_string(s) + " m=" + std::to_string(m));
    emit_handlebody(ctx, h, r);
    return 0;
}

std::size_t handle_index(long idx, const Handlebody2& h) {
    if (idx < 1 || static_cast<std::size_t>(idx) > h.two_handle_count()) {
        throw RangeError("no 2-handle with index " + std::to_string(idx));
    }
    return static_cast<std::size_t>(idx - 1);
}

int cmd_w(Context& ctx, bool plus, const std::string& file, long idx, long p) {
    const Handlebody2 h = load_handlebody(ctx, file);
    const std::size_t target = handle_index(idx, h);
    const Handlebody2 out = plus ? w_plus(h, target, p) : w_minus(h, target, p);
    Report r(plus ? "wplus" : "wminus");
    r.add("target", idx).add("p", p).add("new_generator", out.one_handles()).add("new_two_handle", out.two_handle_count());
    if (plus && out.two_handle(target).front) {
        r.add("target_tb", thurston_bennequin(*out.two_handle(target).front));
    }
    r.summary(std::string(plus ? "W+" : "W-") + "(" + std::to_string(p) + ") applied to 2-handle " +
              std::to_string(idx) + ", framing unchanged");
    emit_handlebody(ctx, out, r);
    return 0;
}

int cmd_steinify(Context& ctx, const std::string& file) {
    const Handlebody2 h = load_handlebody(ctx, file);
    SteinTrace trace;
    const Handlebody2 out = steinify_traced(h, trace);
    std::size_t stabilizations = 0;
    std::vector<std::string> wplus;
    for (const auto& s : trace.steps) {
        if (s.kind == SteinStep::Kind::Stabilize) {
            ++stabilizations;
        } else {
            wplus.push_back(std::to_string(s.handle + 1) + ":" + std::to_string(s.amount));
        }
    }
    Report r("steinify");
    r.add("stabilizations", stabilizations).add("wplus", join(wplus, ",")).add("stein", is_stein(out));
    r.summary(std::to_string(stabilizations) + " stabilizations, " + std::to_string(wplus.size()) + " W+ moves");
    emit_handlebody(ctx, out, r);
    return 0;
}

int cmd_hihc(Context& ctx, const std::string& f1, const std::string& f2, long bound) {
    const Handlebody2 a = load_handlebody(ctx, f1);
    const Handlebody2 b = load_handlebody(ctx, f2);
    const HihcReport rep = hihc_certificate(a, b, bound);
    Report r("hihc");
    r.add("verdict", rep.pass ? "PASS" : "FAIL")
        .add("failing", rep.failing_invariant)
        .add("h1", rep.first.h1.to_string() + " | " + rep.second.h1.to_string())
        .add("h2_rank", std::to_string(rep.first.h2_rank) + " | " + std::to_string(rep.second.h2_rank))
        .add("intersection_form", to_string(rep.first.intersection_form) + " | " + to_string(rep.second.intersection_form))
        .add("boundary_h1", rep.first.boundary_h1.to_string() + " | " + rep.second.boundary_h1.to_string())
        .add("bound", bound);
    r.summary(rep.pass ? "PASS: the computable necessary conditions hold (this does not prove equivalence)"
                       : "FAIL: " + rep.failing_invariant + " differs");
    r.print(ctx, false);
    return rep.pass ? 0 : 1;
}

int cmd_sum(Context& ctx, const std::string& f1, const std::string& f2, bool boundary) {
    const Handlebody2 a = load_handlebody(ctx, f1);
    const Handlebody2 b = load_handlebody(ctx, f2);
    const Handlebody2 out = boundary ? boundary_sum(a, b) : connected_sum_model(a, b);
    Report r("sum");
    r.add("kind", boundary ? "boundary" : "connected");
    r.summary(std::string(boundary ? "boundary" : "connected") + " sum of " + std::to_string(out.one_handles()) +
              " one-handles, " + std::to_string(out.two_handle_count()) + " two-handles");
    emit_handlebody(ctx, out, r);
    return 0;
}

int cmd_equiv(Context& ctx, const std::string& f1, const std::string& f2, long bound) {
    const DecoratedModule a = load_module(ctx, f1);
    const DecoratedModule b = load_module(ctx, f2);
    const EquivalenceResult res = algebraically_equivalent(a, b, bound);
    Report r("equiv");
    r.add("verdict", res.equivalent() ? "equivalent" : "not-within-bound").add("bound", bound);
    if (res.witness) {
        r.add("witness", to_string(res.witness->matrix()))
            .add("undecided_first", res.undecided_domain.size())
            .add("undecided_second", res.undecided_codomain.size());
        r.summary("equivalent, witness " + to_string(res.witness->matrix()));
    } else {
        r.summary("no equivalence with entries within " + std::to_string(bound) + " (not a proof of inequivalence)");
    }
    r.print(ctx, false);
    return res.equivalent() ? 0 : 1;
}

int cmd_ag(Context& ctx, const std::string& file, const std::string& rtext, long n) {
    const DiskBundleTable t = load_table(ctx, file);
    const auto rv = OrderedValue::parse(rtext);
    if (!rv) {
        throw InputError("R must be an integer, inf or -inf");
    }
    const GenusBound b = a_g(*rv, n, t);
    Report r("ag");
    r.add("r", rv->to_string()).add("n", n).add("a_g", b.value ? std::to_string(*b.value) : std::string("inf"));
    r.add("coverage_caveat", b.coverage_caveat);
    r.summary("A_G = " + b.to_string());
    r.print(ctx, false);
    return 0;
}

IntVector parse_vector(const std::string& text) {
    IntVector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Integer x;
        if (item.empty() || x.set_str(item[0] == '+' ? item.substr(1) : item, 10) != 0) {
            throw InputError("malformed class '" + text + "', expected comma-separated integers");
        }
        v.push_back(x);
    }
    return v;
}

int cmd_kmbound(Context& ctx, const std::string& file, const std::string& alpha_text) {
    const DecoratedModule d = load_module(ctx, file);
    const IntVector alpha = parse_vector(alpha_text);
    if (alpha.size() != d.generators()) {
        throw InputError("class has " + std::to_string(alpha.size()) + " coordinates, module has " +
                         std::to_string(d.generators()) + " generators");
    }
    const auto res = kervaire_milnor_obstruction(d.form(), alpha);
    Report r("kmbound");
    r.add("alpha", to_string(alpha))
        .add("alpha_squared", res.self_intersection.get_str())
        .add("signature", res.signature)
        .add("residue", res.residue)
        .add("positive_genus_forced", res.positive_genus_forced);
    r.summary("alpha.alpha - signature = " + std::to_string(res.residue) + " mod 16: " +
              (res.positive_genus_forced ? "positive genus forced" : "no obstruction"));
    r.print(ctx, false);
    return 0;
}

int cmd_stability_sum(Context& ctx, const std::string& mode, const std::vector<std::string>& files, long bound) {
    SumMode m;
    if (mode == "h2zero") {
        m = SumMode::H2Zero;
    } else if (mode == "nondegenerate") {
        m = SumMode::Nondegenerate;
    } else {
        throw InputError("mode must be h2zero or nondegenerate");
    }
    const DecoratedModule x1 = load_module(ctx, files[0]);
    const DecoratedModule x2 = load_module(ctx, files[1]);
    const DecoratedModule z1 = load_module(ctx, files[2]);
    const DecoratedModule z2 = load_module(ctx, files[3]);
    const auto rep = sum_stability_check(x1, x2, z1, z2, m, bound);
    Report r("stability-sum");
    r.add("mode", to_string(m))
        .add("equivalent_before", rep.equivalent_before)
        .add("equivalent_after", rep.equivalent_after)
        .add("verdict", to_string(rep.verdict))
        .add("note", rep.note)
        .add("bound", bound);
    r.summary("sum stability (" + to_string(m) + "): " + to_string(rep.verdict));
    r.print(ctx, false);
    return rep.verdict == SumStabilityReport::Verdict::Violation ? 1 : 0;
}

AttachmentModel kernel_attachment(const DecoratedModule& x, const DecoratedModule& k) {
    if (!k.form().is_zero()) {
        throw InputError("kernel module must carry the zero form");
    }
    const DecoratedModule empty;
    return {x, CobordismModel::with_kernel(empty, k.orders(), k.gvalues()), ModuleHom(IntMatrix(x.generators(), 0), empty, x)};
}

int cmd_stability_quasi(Context& ctx, const std::vector<std::string>& files, long bound) {
    const DecoratedModule x1 = load_module(ctx, files[0]);
    const DecoratedModule k1 = load_module(ctx, files[1]);
    const DecoratedModule x2 = load_module(ctx, files[2]);
    const DecoratedModule k2 = load_module(ctx, files[3]);
    const auto rep = stability_check_quasi(kernel_attachment(x1, k1), kernel_attachment(x2, k2), bound);
    Report r("stability-quasi");
    r.add("mode", rep.mode == StabilityReport::Mode::Iff ? "iff" : "one-way")
        .add("equivalent_before", rep.equivalent_before)
        .add("equivalent_after", rep.equivalent_after)
        .add("verdict", to_string(rep.verdict))
        .add("note", rep.note)
        .add("bound", bound);
    r.summary("attachment stability: " + to_string(rep.verdict));
    r.print(ctx, false);
    return rep.verdict == StabilityReport::Verdict::Violation ? 1 : 0;
}

int cmd_certificate(Context& ctx, const std::vector<std::string>& moves) {
    std::vector<QiStep> steps;
    for (const auto& m : moves) {
        steps.push_back(parse_qi_move(m));
    }
    const auto cert = quasi_invertibility_certificate(steps);
    Report r("certificate");
    for (std::size_t i = 0; i < cert.lines.size(); ++i) {
        const auto& l = cert.lines[i];
        r.add("step" + std::to_string(i + 1),
              to_string(l.step) + ": " + l.clause + (l.invertibility_retained ? " (invertible)" : " (quasi-invertible)"));
    }
    r.add("invertible", cert.invertible);
    r.summary(cert.invertible ? "invertible cobordism" : "quasi-invertible cobordism");
    r.print(ctx, false);
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        Verbosity verbosity) {
    Context ctx{in, out, verbosity};
    CLI::App app{"Exact invariants of 4-dimensional 2-handlebodies", "handlecalc"};
    app.require_subcommand(1);
    int code = 0;

    std::string f1, f2, mode, rtext, alpha;
    long r = 0, s = 0, m = 0, idx = 0, p = 0, n = 0, bound = 2;
    std::vector<std::string> files, moves;
    bool boundary = false, connected = false;

    auto* info = app.add_subcommand("info", "Summarize a handlebody file");
    info->add_option("file", f1, "handlebody file or -")->required();
    info->callback([&] { code = cmd_info(ctx, f1); });

    auto* hom = app.add_subcommand("homology", "H1, H2, intersection form and boundary H1");
    hom->add_option("file", f1, "handlebody file or -")->required();
    hom->callback([&] { code = cmd_homology(ctx, f1); });

    auto* bdy = app.add_subcommand("boundary", "Homology of the boundary 3-manifold");
    bdy->add_option("file", f1, "handlebody file or -")->required();
    bdy->callback([&] { code = cmd_boundary(ctx, f1); });

    auto* cork = app.add_subcommand("cork", "Print the Mazur-type cork template with parameters r s m");
    cork->add_option("r", r)->required();
    cork->add_option("s", s)->required();
    cork->add_option("m", m)->required();
    cork->callback([&] { code = cmd_cork(ctx, r, s, m); });

    for (bool plus : {false, true}) {
        auto* w = app.add_subcommand(plus ? "wplus" : "wminus",
                                     plus ? "Apply W+(p) to a 2-handle (1-based index)" : "Apply W-(p) to a 2-handle (1-based index)");
        w->add_option("file", f1)->required();
        w->add_option("index", idx)->required();
        w->add_option("p", p)->required();
        w->callback([&, plus] { code = cmd_w(ctx, plus, f1, idx, p); });
    }

    auto* stein = app.add_subcommand("steinify", "Make framing = tb - 1 on every 2-handle");
    stein->add_option("file", f1)->required();
    stein->callback([&] { code = cmd_steinify(ctx, f1); });

    auto* hihc = app.add_subcommand("hihc", "Check necessary conditions for HIHC-equivalence");
    hihc->add_option("first", f1)->required();
    hihc->add_option("second", f2)->required();
    hihc->add_option("--bound", bound, "isometry search bound")->check(CLI::PositiveNumber);
    hihc->callback([&] { code = cmd_hihc(ctx, f1, f2, bound); });

    auto* sum = app.add_subcommand("sum", "Boundary sum or connected sum model");
    sum->add_option("first", f1)->required();
    sum->add_option("second", f2)->required();
    auto* ob = sum->add_flag("--boundary", boundary);
    auto* oc = sum->add_flag("--connected", connected);
    ob->excludes(oc);
    sum->callback([&] {
        if (!boundary && !connected) {
            throw InputError("sum needs --boundary or --connected");
        }
        code = cmd_sum(ctx, f1, f2, boundary);
    });

    auto* equiv = app.add_subcommand("equiv", "Bounded search for an algebraic equivalence of two module files");
    equiv->add_option("first", f1)->required();
    equiv->add_option("second", f2)->required();
    equiv->add_option("--bound", bound)->check(CLI::PositiveNumber);
    equiv->callback([&] { code = cmd_equiv(ctx, f1, f2, bound); });

    auto* ag = app.add_subcommand("ag", "Evaluate A_G(R, N) on a disk-bundle table");
    ag->add_option("table", f1)->required();
    ag->add_option("r", rtext)->required();
    ag->add_option("n", n)->required();
    ag->callback([&] { code = cmd_ag(ctx, f1, rtext, n); });

    auto* km = app.add_subcommand("kmbound", "Mod 16 obstruction for a characteristic class");
    km->add_option("module", f1)->required();
    km->add_option("alpha", alpha, "comma-separated coefficients")->required();
    km->callback([&] { code = cmd_kmbound(ctx, f1, alpha); });

    auto* stab = app.add_subcommand("stability", "Check stability of equivalence under sums or attachments");
    stab->require_subcommand(1);
    auto* ssum = stab->add_subcommand("sum", "X1 X2 Z1 Z2 module files");
    ssum->add_option("--mode", mode)->required()->check(CLI::IsMember({"h2zero", "nondegenerate"}));
    ssum->add_option("files", files)->required()->expected(4);
    ssum->add_option("--bound", bound)->check(CLI::PositiveNumber);
    ssum->callback([&] { code = cmd_stability_sum(ctx, mode, files, bound); });
    auto* squasi = stab->add_subcommand("quasi", "X1 K1 X2 K2 module files");
    squasi->add_option("files", files)->required()->expected(4);
    squasi->add_option("--bound", bound)->check(CLI::PositiveNumber);
    squasi->callback([&] { code = cmd_stability_quasi(ctx, files, bound); });

    auto* cert = app.add_subcommand("certificate", "Name the rule behind each cobordism construction step");
    cert->add_option("moves", moves);
    cert->callback([&] { code = cmd_certificate(ctx, moves); });

    if (!args.empty() && !args[0].empty() && args[0][0] != '-' && app.get_subcommand_no_throw(args[0]) == nullptr) {
        err << "error: unknown command '" << args[0] << "'\n";
        return 2;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

}  // namespace handlecalc::cli
