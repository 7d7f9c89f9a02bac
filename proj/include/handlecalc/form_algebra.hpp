#pragma once

// Finitely generated abelian groups carrying an integral symmetric form and
// a partial, ordered-set-valued "genus-type" map, together with the maps
// between them.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "handlecalc/linalg.hpp"

namespace handlecalc {

/// An element of Z extended by -inf and +inf.
class OrderedValue {
public:
    enum class Kind { NegInf, Finite, PosInf };

    OrderedValue() = default;
    OrderedValue(long v) : kind_(Kind::Finite), value_(v) {}  // NOLINT(google-explicit-constructor)
    OrderedValue(Integer v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

    static OrderedValue neg_inf() { return OrderedValue(Kind::NegInf); }
    static OrderedValue pos_inf() { return OrderedValue(Kind::PosInf); }

    Kind kind() const noexcept { return kind_; }
    bool is_finite() const noexcept { return kind_ == Kind::Finite; }
    /// Only meaningful when finite.
    const Integer& value() const noexcept { return value_; }

    /// "inf", "-inf" or the decimal value.
    std::string to_string() const;
    /// Accepts the output of to_string(). Returns nullopt on malformed text.
    static std::optional<OrderedValue> parse(const std::string& text);

    friend std::strong_ordering operator<=>(const OrderedValue& a, const OrderedValue& b);
    friend bool operator==(const OrderedValue& a, const OrderedValue& b) { return (a <=> b) == 0; }

    /// Sum with the convention that a finite value plus +-inf is +-inf.
    /// Throws PreconditionError on -inf + inf.
    friend OrderedValue operator+(const OrderedValue& a, const OrderedValue& b);

private:
    explicit OrderedValue(Kind k) : kind_(k) {}

    Kind kind_ = Kind::Finite;
    Integer value_ = 0;
};

using GTable = std::map<IntVector, OrderedValue>;

/// Z^free + (+) Z/d_i presented by one generator per summand, with a
/// symmetric form on generators and a partial genus-type table.
///
/// `orders[i] == 0` marks a free generator, `orders[i] >= 2` a generator of
/// order d. Coefficient vectors are reduced so torsion coordinates lie in
/// [0, d); table keys are stored reduced.
class DecoratedModule {
public:
    DecoratedModule() = default;
    DecoratedModule(IntVector orders, IntMatrix form, GTable gvalues = {});

    /// Torsion-free module Z^n with the given form.
    static DecoratedModule free_module(IntMatrix form, GTable gvalues = {});
    /// Block sum; the table of the result is empty.
    static DecoratedModule direct_sum(const DecoratedModule& a, const DecoratedModule& b);

    std::size_t generators() const noexcept { return orders_.size(); }
    const IntVector& orders() const noexcept { return orders_; }
    const IntMatrix& form() const noexcept { return form_; }
    const GTable& gvalues() const noexcept { return gvalues_; }

    bool is_torsion_generator(std::size_t i) const { return sgn(orders_[i]) != 0; }
    std::size_t free_rank() const;
    bool is_torsion_free() const { return free_rank() == generators(); }
    std::vector<std::size_t> free_indices() const;
    std::vector<std::size_t> torsion_indices() const;

    /// Canonical abelian-group form.
    FgAbelianGroup group() const;
    /// diag(orders): columns generate the relations.
    IntMatrix relation_matrix() const;

    IntVector canonical(IntVector v) const;
    /// True when every torsion coordinate of v is zero mod its order and all free coordinates vanish.
    bool is_zero(const IntVector& v) const;
    bool is_torsion_element(const IntVector& v) const;
    /// Order of a torsion element (1 for zero). Throws PreconditionError for elements of infinite order.
    Integer element_order(const IntVector& v) const;

    Integer pairing(const IntVector& x, const IntVector& y) const;
    std::optional<OrderedValue> g(const IntVector& v) const;

    /// The form restricted to the free generators; nonzero determinant means
    /// the induced form on the module modulo torsion is non-degenerate.
    IntMatrix free_form() const;
    bool is_nondegenerate() const;

    DecoratedModule with_gvalues(GTable gvalues) const;

    /// Same orders and form (tables are ignored).
    bool same_structure(const DecoratedModule& other) const;

private:
    IntVector orders_;
    IntMatrix form_;
    GTable gvalues_;
};

/// Homomorphism given by its matrix on generators (codomain x domain).
class ModuleHom {
public:
    ModuleHom(IntMatrix matrix, DecoratedModule domain, DecoratedModule codomain);

    static ModuleHom identity(const DecoratedModule& d);
    static ModuleHom negation(const DecoratedModule& d);

    const IntMatrix& matrix() const noexcept { return matrix_; }
    const DecoratedModule& domain() const noexcept { return *domain_; }
    const DecoratedModule& codomain() const noexcept { return *codomain_; }

    /// Image of a coefficient vector, reduced in the codomain.
    IntVector operator()(const IntVector& v) const;
    /// Some preimage (reduced), or nullopt when y is not in the image.
    std::optional<IntVector> preimage(const IntVector& y) const;

    bool is_surjective() const;
    bool is_isomorphism() const;
    /// Throws PreconditionError when not an isomorphism.
    ModuleHom inverse() const;

private:
    IntMatrix matrix_;
    std::shared_ptr<const DecoratedModule> domain_;
    std::shared_ptr<const DecoratedModule> codomain_;
};

/// g o f
ModuleHom compose(const ModuleHom& g, const ModuleHom& f);

/// True when phi(x).phi(y) = x.y for all x, y.
bool preserves_form(const ModuleHom& phi);

/// A submodule presented on its own generators, with its inclusion.
struct Submodule {
    DecoratedModule module;
    ModuleHom inclusion;
};

/// Submodule of m generated by the columns of `gens` (coefficient vectors).
/// The form is pulled back; table keys of m inside the submodule are kept.
Submodule submodule_generated(const DecoratedModule& m, const IntMatrix& gens);
Submodule kernel(const ModuleHom& phi);
Submodule image(const ModuleHom& phi);
bool is_injective(const ModuleHom& phi);

/// Outcome of comparing G tables through a map on every key where both
/// sides are known.
struct GComparison {
    /// First key x with G1(x) != G2(phi(x)), if any.
    std::optional<std::pair<IntVector, IntVector>> mismatch;
    std::size_t covered_pairs = 0;
    /// Domain keys whose image is missing from the codomain table.
    std::vector<IntVector> undecided_domain;
    /// Codomain keys whose preimage is missing from the domain table.
    std::vector<IntVector> undecided_codomain;
};

/// Requires phi to be an isomorphism.
GComparison compare_gvalues(const ModuleHom& phi);

/// A' = A + B with Q(a+b, a'+b') = Q_A(a, a'). Generators of A come first.
class SplitModule {
public:
    /// `total_g` is the table on A + B. Throws InvariantError when B carries a
    /// nonzero form or Q_A is degenerate modulo torsion.
    SplitModule(DecoratedModule a_part, DecoratedModule b_part, GTable total_g = {});

    const DecoratedModule& a_part() const noexcept { return a_; }
    const DecoratedModule& b_part() const noexcept { return b_; }
    const DecoratedModule& total() const noexcept { return total_; }

    std::size_t a_generators() const { return a_.generators(); }
    std::size_t b_generators() const { return b_.generators(); }

    IntVector embed_a(const IntVector& a) const;
    IntVector embed_b(const IntVector& b) const;
    IntVector project_a(const IntVector& x) const;
    IntVector project_b(const IntVector& x) const;
    bool lies_in_a(const IntVector& x) const;
    bool lies_in_b(const IntVector& x) const;

    SplitModule with_gvalues(GTable total_g) const;

private:
    DecoratedModule a_;
    DecoratedModule b_;
    DecoratedModule total_;
};

/// p_{A2} o phi|_{A1} and p_{B2} o phi|_{B1}, both verified to be
/// isomorphisms preserving the respective forms.
std::pair<ModuleHom, ModuleHom> split_projection(const ModuleHom& phi, const SplitModule& s1, const SplitModule& s2);

/// Which table keys a G-preservation claim was actually established on.
struct GCoverage {
    std::vector<IntVector> verified;
    /// Keys whose verification needed classes missing from a table.
    std::vector<IntVector> uncovered;
    /// Uncovered keys where both endpoint values are known and differ.
    /// Not an error: the hypotheses could not be checked along the way.
    std::vector<IntVector> unsupported_conflicts;
};

struct SplitGResult {
    ModuleHom map;
    GCoverage coverage;
};

/// Isomorphism B1 -> B2 preserving the zero forms and G restricted to B.
/// Requires torsion-free A parts.
SplitGResult split_preserving_g_on_b(const ModuleHom& phi, const SplitModule& s1, const SplitModule& s2);

/// Isomorphism A1 -> A2 preserving Q_A and G restricted to A, under
/// G(a) <= G(a + b). Requires torsion-free A parts or torsion-free B parts.
SplitGResult split_preserving_g_on_a(const ModuleHom& phi, const SplitModule& s1, const SplitModule& s2);

/// First pair (a, a + b) in the table with G(a) > G(a + b), if any.
std::optional<std::pair<IntVector, IntVector>> monotonicity_violation(const SplitModule& s);

std::string describe(const DecoratedModule& d);

}  // namespace handlecalc
