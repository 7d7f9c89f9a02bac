#include "handlecalc/cobordism.hpp"

#include "handlecalc/errors.hpp"
#include "handlecalc/isometry.hpp"

namespace handlecalc {

CobordismModel::CobordismModel(ModuleHom m_to_p, ModuleHom p_to_r, CobordismFlags flags,
                               std::vector<std::string> assertions)
    : m_to_p_(std::move(m_to_p)), p_to_r_(std::move(p_to_r)), flags_(flags), assertions_(std::move(assertions)) {
    if (!m_to_p_.codomain().same_structure(p_to_r_.domain())) {
        throw DimensionError("H2(M) -> H2(P) and H2(P) -> H2(R) do not compose");
    }
    if (!h2_m().is_torsion_free()) {
        throw InvariantError("H2(M) of a closed 3-manifold is torsion-free");
    }
    const Submodule k = kernel_part();
    if (flags_.strongly_quasi_invertible) {
        if (!is_injective(m_to_p_)) {
            throw InvariantError("strongly quasi-invertible, but H2(M) -> H2(P) is not injective");
        }
        const Submodule i = image_part();
        const IntMatrix joint = IntMatrix::hstack(i.inclusion.matrix(), k.inclusion.matrix());
        const DecoratedModule sum(
            [&] {
                IntVector o = i.module.orders();
                o.insert(o.end(), k.module.orders().begin(), k.module.orders().end());
                return o;
            }(),
            IntMatrix(i.module.generators() + k.module.generators(), i.module.generators() + k.module.generators()));
        const ModuleHom split(joint, sum, h2_p().with_gvalues({}));
        if (!split.is_isomorphism()) {
            throw InvariantError("strongly quasi-invertible, but H2(P) is not the direct sum of I and K");
        }
    }
    if (flags_.strongly_quasi_product && !compose(p_to_r_, m_to_p_).is_isomorphism()) {
        throw InvariantError("strongly quasi-product, but H2(M) -> H2(R) is not an isomorphism");
    }
    if (flags_.invertible && (!h2_p().is_torsion_free() || !k.module.is_torsion_free())) {
        throw InvariantError("invertible, but H2(P) or K has torsion");
    }
    if (flags_.h2_surjective && !m_to_p_.is_surjective()) {
        throw InvariantError("H2-surjective, but H2(M) -> H2(P) is not surjective");
    }
}

CobordismModel CobordismModel::product(const DecoratedModule& m) {
    const DecoratedModule bare = m.with_gvalues({});
    CobordismFlags flags;
    flags.invertible = true;
    flags.strongly_quasi_invertible = true;
    flags.h2_surjective = true;
    flags.strongly_quasi_product = true;
    return CobordismModel(ModuleHom::identity(bare), ModuleHom::identity(bare), flags);
}

CobordismModel CobordismModel::with_kernel(const DecoratedModule& m, const IntVector& k_orders, const GTable& k_table) {
    const DecoratedModule bare_m = m.with_gvalues({});
    const DecoratedModule k(k_orders, IntMatrix(k_orders.size(), k_orders.size()));
    const std::size_t nm = bare_m.generators();
    const std::size_t nk = k.generators();

    GTable p_table;
    for (const auto& [key, value] : k_table) {
        IntVector full(nm, 0);
        full.insert(full.end(), key.begin(), key.end());
        p_table.emplace(std::move(full), value);
    }
    const DecoratedModule p = DecoratedModule::direct_sum(bare_m, k).with_gvalues(std::move(p_table));

    IntMatrix inc(nm + nk, nm);
    IntMatrix proj(nm, nm + nk);
    for (std::size_t i = 0; i < nm; ++i) {
        inc(i, i) = 1;
        proj(i, i) = 1;
    }
    CobordismFlags flags;
    flags.strongly_quasi_invertible = true;
    flags.invertible = k.is_torsion_free();
    flags.h2_surjective = nk == 0;
    return CobordismModel(ModuleHom(inc, bare_m, p), ModuleHom(proj, p, bare_m), flags);
}

Submodule CobordismModel::image_part() const {
    return image(m_to_p_);
}

Submodule CobordismModel::kernel_part() const {
    return kernel(p_to_r_);
}

GenusInterval genus_interval(const OrderedValue& gx_alpha, const OrderedValue& gp_beta) {
    if (gx_alpha.kind() == OrderedValue::Kind::PosInf || gp_beta.kind() == OrderedValue::Kind::PosInf) {
        return {gx_alpha, OrderedValue::pos_inf()};
    }
    return {gx_alpha, gx_alpha + gp_beta};
}

namespace {

bool is_zero_map(const ModuleHom& phi) {
    for (std::size_t c = 0; c < phi.matrix().cols(); ++c) {
        if (!phi.codomain().is_zero(phi.matrix().column(c))) {
            return false;
        }
    }
    return true;
}

// Sufficient condition for H2(X') = H2(X) + K, or empty when none holds.
std::string direct_sum_condition(const AttachmentModel& a) {
    if (a.cob.flags().strongly_quasi_invertible) {
        return "strongly-quasi-invertible";
    }
    if (is_zero_map(a.glue)) {
        return "zero-glue";
    }
    if (a.x.is_torsion_free() && a.x.is_nondegenerate()) {
        return "nondegenerate-torsion-free";
    }
    return {};
}

SplitModule as_split(const DecoratedModule& x, const AttachResult& r) {
    const auto& orders = r.x_prime.orders();
    IntVector k_orders(orders.begin() + static_cast<std::ptrdiff_t>(r.x_generators), orders.end());
    const std::size_t nk = k_orders.size();
    return SplitModule(x.with_gvalues({}), DecoratedModule(std::move(k_orders), IntMatrix(nk, nk)), r.x_prime.gvalues());
}

}  // namespace

AttachResult attach(const AttachmentModel& a) {
    if (!a.glue.domain().same_structure(a.cob.h2_m()) || !a.glue.codomain().same_structure(a.x)) {
        throw DimensionError("glue map must run from H2(M) to H2(X)");
    }
    AttachResult out;
    out.condition = direct_sum_condition(a);
    if (out.condition.empty()) {
        throw PreconditionError(
            "no sufficient condition for H2(X') = H2(X) + K holds: P is not strongly quasi-invertible, "
            "H2(M) -> H2(X) is nonzero, and X is degenerate or has torsion");
    }
    const Submodule k = a.cob.kernel_part();
    if (!k.module.form().is_zero()) {
        throw PreconditionError("the form of P does not vanish on the kernel of H2(P) -> H2(R)");
    }

    const std::size_t nx = a.x.generators();
    out.x_generators = nx;
    const DecoratedModule bare = DecoratedModule::direct_sum(a.x, k.module);
    const IntVector k_zero(k.module.generators());

    GTable table;
    for (const auto& [alpha, gx] : a.x.gvalues()) {
        IntVector key = alpha;
        key.insert(key.end(), k_zero.begin(), k_zero.end());
        table.emplace(bare.canonical(std::move(key)), gx);
        for (const auto& [beta, gp] : k.module.gvalues()) {
            if (k.module.is_zero(beta)) {
                continue;
            }
            IntVector mixed = alpha;
            mixed.insert(mixed.end(), beta.begin(), beta.end());
            mixed = bare.canonical(std::move(mixed));
            const GenusInterval iv = genus_interval(gx, gp);
            if (iv.determined()) {
                table.emplace(std::move(mixed), iv.lo);
            } else {
                out.open_entries.push_back({std::move(mixed), iv});
            }
        }
    }
    out.x_prime = bare.with_gvalues(std::move(table));
    return out;
}

std::string to_string(StabilityReport::Verdict v) {
    switch (v) {
        case StabilityReport::Verdict::Consistent:
            return "consistent";
        case StabilityReport::Verdict::Violation:
            return "violation";
        case StabilityReport::Verdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

StabilityReport stability_check_quasi(const AttachmentModel& a1, const AttachmentModel& a2, long bound) {
    const AttachResult r1 = attach(a1);
    const AttachResult r2 = attach(a2);
    StabilityReport rep;
    if (r1.x_prime.generators() == r1.x_generators && r2.x_prime.generators() == r2.x_generators) {
        rep.mode = StabilityReport::Mode::Iff;
    } else {
        const bool nondegenerate = a1.x.is_nondegenerate() && a2.x.is_nondegenerate();
        const bool x_free = a1.x.is_torsion_free() && a2.x.is_torsion_free();
        const bool k_free = a1.cob.kernel_part().module.is_torsion_free() && a2.cob.kernel_part().module.is_torsion_free();
        if (!nondegenerate || !(x_free || k_free)) {
            throw PreconditionError(
                "stability needs either H2(X) -> H2(X') onto on both sides, or non-degenerate X_i with "
                "H2(X_i) or K_i torsion-free on both sides");
        }
        rep.mode = StabilityReport::Mode::OneWay;
    }

    const auto before = algebraically_equivalent(a1.x, a2.x, bound);
    const auto after = algebraically_equivalent(r1.x_prime, r2.x_prime, bound);
    rep.equivalent_before = before.equivalent();
    rep.equivalent_after = after.equivalent();

    if (rep.mode == StabilityReport::Mode::Iff) {
        if (rep.equivalent_before != rep.equivalent_after) {
            rep.verdict = StabilityReport::Verdict::Violation;
            rep.note = "X' equals X on both sides but the verdicts differ";
        }
        return rep;
    }
    if (!rep.equivalent_after || rep.equivalent_before) {
        return rep;
    }

    // X' equivalent, X not: the projected witness decides which.
    const SplitModule s1 = as_split(a1.x, r1);
    const SplitModule s2 = as_split(a2.x, r2);
    const auto projected = split_projection(*after.witness, s1, s2).first;
    const ModuleHom psi(projected.matrix(), a1.x, a2.x);
    if (witnesses_equivalence(psi)) {
        rep.verdict = StabilityReport::Verdict::Violation;
        rep.note = "the projected witness " + to_string(psi.matrix()) + " is valid but the search missed it";
    } else {
        rep.verdict = StabilityReport::Verdict::Inconclusive;
        rep.note = "the projected witness " + to_string(psi.matrix()) + " is not covered by the tables of X";
    }
    return rep;
}

namespace {

struct MoveInfo {
    QiMove move;
    const char* name;
    const char* clause;
};

constexpr MoveInfo kMoves[] = {
    {QiMove::Restriction, "restriction", "codimension-0 submanifold containing the incoming end"},
    {QiMove::ConnectedSum, "connected-sum", "connected sum with a submanifold of a 2-link complement"},
    {QiMove::BoundarySum, "boundary-sum", "boundary sum with a submanifold of a 2-link complement"},
    {QiMove::OneHandles, "one-handles", "1-handles attached along one boundary component"},
    {QiMove::CancelingPairs, "canceling-pairs", "homotopically canceling 1-/2-handle pairs"},
    {QiMove::SliceZeroFramed, "slice-zero-framed", "0-framed 2-handles along a strongly slice link"},
};

const MoveInfo& info(QiMove m) {
    for (const auto& i : kMoves) {
        if (i.move == m) {
            return i;
        }
    }
    throw PreconditionError("unrecognized move");
}

bool is_sum(QiMove m) {
    return m == QiMove::ConnectedSum || m == QiMove::BoundarySum;
}

}  // namespace

QiCertificate quasi_invertibility_certificate(const std::vector<QiStep>& trace, bool start_invertible) {
    QiCertificate cert;
    cert.invertible = start_invertible;
    for (const auto& step : trace) {
        QiCertificateLine line{step, info(step.move).clause, cert.invertible};
        if (is_sum(step.move) && !step.link_empty) {
            line.invertibility_retained = false;
        }
        cert.invertible = line.invertibility_retained;
        cert.lines.push_back(std::move(line));
    }
    return cert;
}

QiStep parse_qi_move(const std::string& text) {
    std::string name = text;
    bool link = false;
    const std::string suffix = ":link";
    if (name.size() > suffix.size() && name.ends_with(suffix)) {
        name.resize(name.size() - suffix.size());
        link = true;
    }
    for (const auto& i : kMoves) {
        if (name == i.name && (!link || is_sum(i.move))) {
            return {i.move, !link};
        }
    }
    throw PreconditionError("unrecognized move '" + text + "'");
}

std::string to_string(const QiStep& step) {
    std::string s = info(step.move).name;
    if (is_sum(step.move) && !step.link_empty) {
        s += ":link";
    }
    return s;
}

std::vector<QiStep> moves_from_tags(const std::vector<std::string>& tags) {
    std::vector<QiStep> out;
    for (const auto& t : tags) {
        if (t.starts_with("qi:")) {
            out.push_back(parse_qi_move(t.substr(3)));
        }
    }
    return out;
}

}  // namespace handlecalc
