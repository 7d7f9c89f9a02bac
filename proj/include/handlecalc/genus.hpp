#pragma once

// Genus-function-type invariants: lower bounds from disk-bundle tables,
// the mod 16 obstruction for characteristic classes, torsion-free
// reduction and stability of equivalence under sums.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "handlecalc/form_algebra.hpp"

namespace handlecalc {

/// Values G(gamma(g, n)) on the D^2-bundles S(g, n) over a genus g surface
/// with Euler number n. Coverage is the box [0, g_max] x [n_min, n_max].
class DiskBundleTable {
public:
    DiskBundleTable() = default;

    /// entry(g, n) = g on the given box.
    static DiskBundleTable identity(long g_max, long n_min, long n_max);

    /// Throws RangeError for g < 0.
    void set(long g, long n, OrderedValue value);
    std::optional<OrderedValue> get(long g, long n) const;
    const std::map<std::pair<long, long>, OrderedValue>& entries() const noexcept { return entries_; }

    bool empty() const noexcept { return entries_.empty(); }
    long g_max() const;
    long n_min() const;
    long n_max() const;

    /// Throws InvariantError when the box has holes or an entry decreases in g.
    void validate() const;

private:
    std::map<std::pair<long, long>, OrderedValue> entries_;  // (g, n)
};

/// A count in Z>=0, or infinity. An infinity read off a finite table only
/// says the answer exceeds the covered genera; `coverage_caveat` marks that.
struct GenusBound {
    std::optional<long> value;
    bool coverage_caveat = false;
    /// Largest genus the table covered, meaningful with the caveat.
    long covered_up_to = 0;

    bool is_infinite() const { return !value.has_value(); }
    /// "3", or "inf" (with " (beyond table, g > 10)" when caveated).
    std::string to_string() const;

    friend bool operator==(const GenusBound&, const GenusBound&) = default;
};

/// Smallest g with entry(g, n) = r; else g+1 when r lies strictly between
/// entry(g, n) and entry(g+1, n); else 0 when r is below every entry; else
/// infinity with a coverage caveat. Throws RangeError when n is outside the
/// table, InvariantError when the table is not a valid box.
GenusBound a_g(const OrderedValue& r, long n, const DiskBundleTable& t);

/// a_g(G_X(alpha), alpha . alpha): a lower bound for the genus of alpha.
GenusBound genus_lower_bound(const OrderedValue& g_value, long self_intersection, const DiskBundleTable& t);

/// Whether a claimed genus is compatible with the bound. Against a caveated
/// infinity the claim must exceed the covered genera.
bool genus_claim_consistent(long claimed, const GenusBound& bound);

struct KervaireMilnorResult {
    Integer self_intersection;
    long signature = 0;
    /// (alpha . alpha - signature) reduced into [-8, 8).
    long residue = 0;
    /// Nonzero residue: alpha cannot be represented by a sphere.
    bool positive_genus_forced = false;
};

/// Throws PreconditionError when alpha is not characteristic, i.e. when
/// alpha . e_i and e_i . e_i differ mod 2 for some basis vector e_i.
KervaireMilnorResult kervaire_milnor_obstruction(const IntMatrix& form, const IntVector& alpha);

bool is_characteristic(const IntMatrix& form, const IntVector& alpha);

struct TorsionFreeReduction {
    /// Module on the free generators, with g*(A) = min g(alpha) over table
    /// keys alpha whose free part is A.
    DecoratedModule module;
    /// Keys of the reduced table for which some alpha + tau is missing from
    /// the original table, so the minimum may be too large.
    std::vector<IntVector> partial_keys;
};

TorsionFreeReduction torsion_free_reduce(const DecoratedModule& d);

enum class SumMode { H2Zero, Nondegenerate };

struct SumStabilityReport {
    enum class Verdict { Consistent, Violation, Inconclusive };

    SumMode mode = SumMode::H2Zero;
    bool equivalent_before = false;
    bool equivalent_after = false;
    Verdict verdict = Verdict::Consistent;
    std::string note;
};

std::string to_string(SumMode m);
std::string to_string(SumStabilityReport::Verdict v);

/// X + Z with the form of X extended by zero. Table: g_X(a) on (a, 0),
/// g_Z(b) on (0, b), g_X(a) + g_Z(b) on (a, b) for keys of both tables.
/// Requires the zero form on Z and g_Z(0) = 0 when present.
DecoratedModule sum_model(const DecoratedModule& x, const DecoratedModule& z);

/// H2Zero: Z_i trivial; bounded equivalence of the X_i and of the sums must agree.
/// Nondegenerate: X_i non-degenerate, Z_i zero forms, X_i or Z_i torsion-free
/// on both sides; equivalence of the sums must give equivalence of the X_i.
/// A failed implication is reported as in stability_check_quasi. Throws
/// PreconditionError when the mode's hypotheses fail.
SumStabilityReport sum_stability_check(const DecoratedModule& x1, const DecoratedModule& x2,
                                       const DecoratedModule& z1, const DecoratedModule& z2, SumMode mode,
                                       long bound);

}  // namespace handlecalc
