#pragma once

// Homology-level models of attaching a quasi-invertible cobordism P from M
// to N, with R = P u Q the quasi-product completion.

#include <cstddef>
#include <string>
#include <vector>

#include "handlecalc/form_algebra.hpp"

namespace handlecalc {

/// Properties that cannot be read off module data. They are set by the
/// constructors or asserted by the caller; whatever is checkable about them
/// is checked when the model is built.
struct CobordismFlags {
    bool invertible = false;
    bool strongly_quasi_invertible = false;
    /// H2(M) -> H2(P) surjective.
    bool h2_surjective = false;
    bool strongly_quasi_product = false;
};

class CobordismModel {
public:
    /// `m_to_p`: H2(M) -> H2(P), `p_to_r`: H2(P) -> H2(R). Throws
    /// InvariantError when a flag contradicts the data:
    ///  - strongly_quasi_invertible: M -> P injective and H2(P) = I + K
    ///  - strongly_quasi_product: the composite M -> R is an isomorphism
    ///  - invertible: H2(P) and K torsion-free
    ///  - h2_surjective: M -> P surjective
    /// H2(M) must be torsion-free (M is a closed 3-manifold).
    CobordismModel(ModuleHom m_to_p, ModuleHom p_to_r, CobordismFlags flags, std::vector<std::string> assertions = {});

    /// I x M.
    static CobordismModel product(const DecoratedModule& m);
    /// H2(P) = H2(M) + K with K carrying the zero form and mapping to zero in
    /// H2(R) = H2(M). Strongly quasi-invertible; invertible when K is
    /// torsion-free. `k_table` is the G table of P restricted to K, keyed by
    /// K coordinates.
    static CobordismModel with_kernel(const DecoratedModule& m, const IntVector& k_orders, const GTable& k_table = {});

    const DecoratedModule& h2_m() const { return m_to_p_.domain(); }
    const DecoratedModule& h2_p() const { return m_to_p_.codomain(); }
    const DecoratedModule& h2_r() const { return p_to_r_.codomain(); }
    const ModuleHom& m_to_p() const noexcept { return m_to_p_; }
    const ModuleHom& p_to_r() const noexcept { return p_to_r_; }
    const CobordismFlags& flags() const noexcept { return flags_; }
    /// Flags asserted by the caller rather than established by a constructor.
    const std::vector<std::string>& assertions() const noexcept { return assertions_; }

    /// Image of H2(M) in H2(P).
    Submodule image_part() const;
    /// Kernel of H2(P) -> H2(R), with the table of P pulled back.
    Submodule kernel_part() const;

private:
    ModuleHom m_to_p_;
    ModuleHom p_to_r_;
    CobordismFlags flags_;
    std::vector<std::string> assertions_;
};

struct AttachmentModel {
    DecoratedModule x;
    CobordismModel cob;
    /// H2(M) -> H2(X).
    ModuleHom glue;
};

struct GenusInterval {
    OrderedValue lo;
    OrderedValue hi;

    bool determined() const { return lo == hi; }
    bool contains(const OrderedValue& v) const { return lo <= v && v <= hi; }
};

/// [g_X(a), g_X(a) + g_P(b)]. An infinite input gives an infinite endpoint.
GenusInterval genus_interval(const OrderedValue& gx_alpha, const OrderedValue& gp_beta);

struct IntervalEntry {
    IntVector key;
    GenusInterval interval;
};

struct AttachResult {
    /// H2(X) + K with the form of X extended by zero. Generators of X come first.
    DecoratedModule x_prime;
    std::size_t x_generators = 0;
    /// Which sufficient condition for the direct sum was used.
    std::string condition;
    /// Classes (a, b) where the table of X' is not forced, with their bounds.
    std::vector<IntervalEntry> open_entries;
};

/// Requires one of: strongly quasi-invertible P, zero glue map, or X
/// non-degenerate and torsion-free. Throws PreconditionError otherwise, and
/// when the form of P does not vanish on K.
///
/// The table of X' holds g_X(a) on (a, 0), and on (a, b) whenever g_P(b) = 0
/// pins the value. Other (a, b) with both values known go to open_entries.
AttachResult attach(const AttachmentModel& a);

struct StabilityReport {
    enum class Mode { Iff, OneWay };
    enum class Verdict { Consistent, Violation, Inconclusive };

    Mode mode = Mode::Iff;
    bool equivalent_before = false;
    bool equivalent_after = false;
    Verdict verdict = Verdict::Consistent;
    std::string note;
};

std::string to_string(StabilityReport::Verdict v);

/// Compares bounded equivalence of (X1, X2) with that of (X1', X2').
///  - Iff mode: both K parts vanish, so X_i' = X_i and the verdicts must agree.
///  - OneWay mode: X_i non-degenerate, H2(X_i) or K_i torsion-free on both
///    sides. Equivalence of the X_i' must give equivalence of the X_i.
/// A failed implication is a Violation when the split projection of the
/// witness is itself a valid witness, Inconclusive when the tables do not
/// cover it. Throws PreconditionError when neither mode applies.
StabilityReport stability_check_quasi(const AttachmentModel& a1, const AttachmentModel& a2, long bound);

enum class QiMove { Restriction, ConnectedSum, BoundarySum, OneHandles, CancelingPairs, SliceZeroFramed };

struct QiStep {
    QiMove move;
    /// For sums: the 2-link L of the S^4(L) piece is empty.
    bool link_empty = true;
};

struct QiCertificateLine {
    QiStep step;
    std::string clause;
    bool invertibility_retained = false;
};

struct QiCertificate {
    std::vector<QiCertificateLine> lines;
    /// Quasi-invertible always; invertible when every step retained it.
    bool invertible = true;
};

/// Starting from a product cobordism (or an invertible one when
/// `start_invertible`), names the rule behind each step.
QiCertificate quasi_invertibility_certificate(const std::vector<QiStep>& trace, bool start_invertible = true);

/// "restriction", "connected-sum", "boundary-sum", "one-handles",
/// "canceling-pairs", "slice-zero-framed"; sums take a ":link" suffix for a
/// nonempty link. Throws PreconditionError on anything else.
QiStep parse_qi_move(const std::string& text);
std::string to_string(const QiStep& step);

/// Steps recorded as "qi:<move>" handlebody tags; other tags are ignored.
std::vector<QiStep> moves_from_tags(const std::vector<std::string>& tags);

}  // namespace handlecalc
