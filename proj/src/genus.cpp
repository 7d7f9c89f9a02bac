#include "handlecalc/genus.hpp"

#include <algorithm>
#include <limits>

#include "handlecalc/errors.hpp"
#include "handlecalc/isometry.hpp"

namespace handlecalc {

DiskBundleTable DiskBundleTable::identity(long g_max, long n_min, long n_max) {
    DiskBundleTable t;
    for (long n = n_min; n <= n_max; ++n) {
        for (long g = 0; g <= g_max; ++g) {
            t.set(g, n, OrderedValue(g));
        }
    }
    return t;
}

void DiskBundleTable::set(long g, long n, OrderedValue value) {
    if (g < 0) {
        throw RangeError("genus must be non-negative");
    }
    entries_[{g, n}] = std::move(value);
}

std::optional<OrderedValue> DiskBundleTable::get(long g, long n) const {
    auto it = entries_.find({g, n});
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

long DiskBundleTable::g_max() const {
    long m = -1;
    for (const auto& [key, v] : entries_) {
        m = std::max(m, key.first);
    }
    return m;
}

long DiskBundleTable::n_min() const {
    long m = std::numeric_limits<long>::max();
    for (const auto& [key, v] : entries_) {
        m = std::min(m, key.second);
    }
    return m;
}

long DiskBundleTable::n_max() const {
    long m = std::numeric_limits<long>::min();
    for (const auto& [key, v] : entries_) {
        m = std::max(m, key.second);
    }
    return m;
}

void DiskBundleTable::validate() const {
    if (entries_.empty()) {
        throw InvariantError("disk-bundle table is empty");
    }
    const long gm = g_max();
    const long lo = n_min();
    const long hi = n_max();
    const auto expected = static_cast<std::size_t>(gm + 1) * static_cast<std::size_t>(hi - lo + 1);
    if (entries_.size() != expected) {
        throw InvariantError("disk-bundle table does not cover the box g in [0, " + std::to_string(gm) + "], n in [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
    for (long n = lo; n <= hi; ++n) {
        for (long g = 0; g < gm; ++g) {
            if (entries_.at({g + 1, n}) < entries_.at({g, n})) {
                throw InvariantError("table decreases from g=" + std::to_string(g) + " to g=" + std::to_string(g + 1) +
                                     " at n=" + std::to_string(n));
            }
        }
    }
}

std::string GenusBound::to_string() const {
    if (value) {
        return std::to_string(*value);
    }
    if (coverage_caveat) {
        return "inf (beyond table, g > " + std::to_string(covered_up_to) + ")";
    }
    return "inf";
}

GenusBound a_g(const OrderedValue& r, long n, const DiskBundleTable& t) {
    t.validate();
    if (n < t.n_min() || n > t.n_max()) {
        throw RangeError("n = " + std::to_string(n) + " outside the table range [" + std::to_string(t.n_min()) + ", " +
                         std::to_string(t.n_max()) + "]");
    }
    const long gm = t.g_max();
    GenusBound b;
    b.covered_up_to = gm;
    for (long g = 0; g <= gm; ++g) {
        const OrderedValue& v = t.entries().at({g, n});
        if (r == v) {
            b.value = g;
            return b;
        }
        if (r < v) {
            // below entry(0, n) gives 0, otherwise entry(g-1, n) < r < entry(g, n)
            b.value = g;
            return b;
        }
    }
    b.coverage_caveat = true;
    return b;
}

GenusBound genus_lower_bound(const OrderedValue& g_value, long self_intersection, const DiskBundleTable& t) {
    return a_g(g_value, self_intersection, t);
}

bool genus_claim_consistent(long claimed, const GenusBound& bound) {
    if (bound.value) {
        return claimed >= *bound.value;
    }
    return bound.coverage_caveat && claimed > bound.covered_up_to;
}

bool is_characteristic(const IntMatrix& form, const IntVector& alpha) {
    if (!form.is_square() || form.rows() != alpha.size()) {
        throw DimensionError("class and form sizes differ");
    }
    const IntVector qa = form.apply(alpha);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const Integer diff = qa[i] - form(i, i);
        if (mpz_even_p(diff.get_mpz_t()) == 0) {
            return false;
        }
    }
    return true;
}

KervaireMilnorResult kervaire_milnor_obstruction(const IntMatrix& form, const IntVector& alpha) {
    if (!form.is_symmetric()) {
        throw InvariantError("form is not symmetric");
    }
    if (!is_characteristic(form, alpha)) {
        throw PreconditionError("class " + to_string(alpha) + " is not characteristic");
    }
    KervaireMilnorResult r;
    const IntVector qa = form.apply(alpha);
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        r.self_intersection += alpha[i] * qa[i];
    }
    r.signature = inertia(form).signature();
    Integer diff = r.self_intersection - r.signature + 8;
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), diff.get_mpz_t(), 16);
    r.residue = m.get_si() - 8;
    r.positive_genus_forced = r.residue != 0;
    return r;
}

TorsionFreeReduction torsion_free_reduce(const DecoratedModule& d) {
    const auto free_idx = d.free_indices();
    const auto tors_idx = d.torsion_indices();

    Integer torsion_size = 1;
    for (auto i : tors_idx) {
        torsion_size *= d.orders()[i];
    }
    if (torsion_size > 1000000) {
        throw CapacityError("torsion subgroup too large to check table coverage");
    }
    const auto tsize = torsion_size.get_ui();

    std::map<IntVector, OrderedValue> best;
    std::map<IntVector, std::size_t> seen;
    for (const auto& [key, value] : d.gvalues()) {
        IntVector a;
        for (auto i : free_idx) {
            a.push_back(key[i]);
        }
        auto it = best.find(a);
        if (it == best.end()) {
            best.emplace(a, value);
        } else if (value < it->second) {
            it->second = value;
        }
        ++seen[a];
    }

    TorsionFreeReduction out;
    GTable table;
    for (auto& [a, value] : best) {
        // Keys are canonical, so distinct keys with one free part are distinct torsion companions.
        if (seen[a] < tsize) {
            out.partial_keys.push_back(a);
        }
        table.emplace(a, value);
    }
    out.module = DecoratedModule::free_module(d.free_form(), std::move(table));
    return out;
}

std::string to_string(SumMode m) {
    return m == SumMode::H2Zero ? "h2zero" : "nondegenerate";
}

std::string to_string(SumStabilityReport::Verdict v) {
    switch (v) {
        case SumStabilityReport::Verdict::Consistent:
            return "consistent";
        case SumStabilityReport::Verdict::Violation:
            return "violation";
        case SumStabilityReport::Verdict::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

DecoratedModule sum_model(const DecoratedModule& x, const DecoratedModule& z) {
    if (!z.form().is_zero()) {
        throw PreconditionError("the summand Z must carry the zero form");
    }
    const IntVector z_zero(z.generators());
    const IntVector x_zero(x.generators());
    if (auto g0 = z.g(z_zero); g0 && *g0 != OrderedValue(0L)) {
        throw PreconditionError("the table of Z must vanish on the zero class");
    }
    const DecoratedModule bare = DecoratedModule::direct_sum(x, z);
    auto join = [&](const IntVector& a, const IntVector& b) {
        IntVector k = a;
        k.insert(k.end(), b.begin(), b.end());
        return bare.canonical(std::move(k));
    };
    GTable table;
    for (const auto& [b, gz] : z.gvalues()) {
        table.emplace(join(x_zero, b), gz);
    }
    for (const auto& [a, gx] : x.gvalues()) {
        table[join(a, z_zero)] = gx;
        for (const auto& [b, gz] : z.gvalues()) {
            table.emplace(join(a, b), gx + gz);
        }
    }
    return bare.with_gvalues(std::move(table));
}

SumStabilityReport sum_stability_check(const DecoratedModule& x1, const DecoratedModule& x2,
                                       const DecoratedModule& z1, const DecoratedModule& z2, SumMode mode,
                                       long bound) {
    SumStabilityReport rep;
    rep.mode = mode;
    if (mode == SumMode::H2Zero) {
        if (!z1.group().is_trivial() || !z2.group().is_trivial()) {
            throw PreconditionError("h2zero mode needs H2(Z_i) = 0");
        }
    } else {
        if (!x1.is_nondegenerate() || !x2.is_nondegenerate()) {
            throw PreconditionError("nondegenerate mode needs non-degenerate forms on X_1 and X_2");
        }
        if (!z1.form().is_zero() || !z2.form().is_zero()) {
            throw PreconditionError("nondegenerate mode needs the zero form on Z_1 and Z_2");
        }
        const bool x_free = x1.is_torsion_free() && x2.is_torsion_free();
        const bool z_free = z1.is_torsion_free() && z2.is_torsion_free();
        if (!x_free && !z_free) {
            throw PreconditionError("nondegenerate mode needs H2(X_i) or H2(Z_i) torsion-free on both sides");
        }
    }

    const DecoratedModule s1 = sum_model(x1, z1);
    const DecoratedModule s2 = sum_model(x2, z2);
    const auto before = algebraically_equivalent(x1, x2, bound);
    const auto after = algebraically_equivalent(s1, s2, bound);
    rep.equivalent_before = before.equivalent();
    rep.equivalent_after = after.equivalent();

    if (mode == SumMode::H2Zero) {
        if (rep.equivalent_before != rep.equivalent_after) {
            rep.verdict = SumStabilityReport::Verdict::Violation;
            rep.note = "verdicts differ although Z_i carry no second homology";
        }
        return rep;
    }
    if (!rep.equivalent_after || rep.equivalent_before) {
        return rep;
    }
    const SplitModule sp1(x1.with_gvalues({}), z1.with_gvalues({}), s1.gvalues());
    const SplitModule sp2(x2.with_gvalues({}), z2.with_gvalues({}), s2.gvalues());
    const ModuleHom psi(split_projection(*after.witness, sp1, sp2).first.matrix(), x1, x2);
    if (witnesses_equivalence(psi)) {
        rep.verdict = SumStabilityReport::Verdict::Violation;
        rep.note = "the projected witness " + to_string(psi.matrix()) + " is valid but the search missed it";
    } else {
        rep.verdict = SumStabilityReport::Verdict::Inconclusive;
        rep.note = "the projected witness " + to_string(psi.matrix()) + " is not covered by the tables of X";
    }
    return rep;
}

}  // namespace handlecalc
