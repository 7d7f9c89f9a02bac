#pragma once

// 4-dimensional 2-handlebodies: dotted 1-handles plus framed 2-handles
// described by attaching words and a linking matrix.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "handlecalc/form_algebra.hpp"
#include "handlecalc/legendrian.hpp"
#include "handlecalc/linalg.hpp"

namespace handlecalc {

/// Signed 1-handle indices, 1-based: +i runs over handle i positively.
using Word = std::vector<long>;

struct TwoHandle {
    Word word;
    std::optional<FrontCounts> front;

    friend bool operator==(const TwoHandle&, const TwoHandle&) = default;
};

/// Dotted circles form a 0-framed unlink; the diagonal of the linking matrix
/// holds the framings.
class Handlebody2 {
public:
    Handlebody2() = default;
    /// Throws InvariantError / DimensionError on bad words or linking data.
    Handlebody2(std::size_t one_handles, std::vector<TwoHandle> two_handles, IntMatrix linking,
                std::vector<std::string> tags = {});

    std::size_t one_handles() const noexcept { return one_handles_; }
    std::size_t two_handle_count() const noexcept { return handles_.size(); }
    const std::vector<TwoHandle>& two_handles() const noexcept { return handles_; }
    const TwoHandle& two_handle(std::size_t j) const;
    const IntMatrix& linking() const noexcept { return linking_; }
    const Integer& framing(std::size_t j) const;
    const std::vector<std::string>& tags() const noexcept { return tags_; }
    bool has_tag(const std::string& tag) const;

    /// Returns the new 1-based generator index.
    long add_one_handle();
    /// `links[i]` is the linking number with existing 2-handle i.
    /// Returns the 0-based index of the new handle.
    std::size_t add_two_handle(Word word, const Integer& framing, const IntVector& links,
                               std::optional<FrontCounts> front = std::nullopt);
    void set_front(std::size_t j, std::optional<FrontCounts> front);
    void add_tag(std::string tag);

    friend bool operator==(const Handlebody2&, const Handlebody2&) = default;

private:
    void check_word(const Word& w) const;

    std::size_t one_handles_ = 0;
    std::vector<TwoHandle> handles_;
    IntMatrix linking_;
    std::vector<std::string> tags_;
};

struct HomologyProfile {
    FgAbelianGroup h1;
    std::size_t h2_rank = 0;
    /// Columns in Z^n (one coordinate per 2-handle).
    IntMatrix h2_basis;
    IntMatrix intersection_form;
    FgAbelianGroup boundary_h1;

    /// H2 as a free module carrying the intersection form.
    DecoratedModule h2_module() const;
};

/// k x n matrix of exponent sums: entry (i, j) counts generator i+1 in word j.
IntMatrix run_over_matrix(const Handlebody2& h);

/// [[0, A], [A^T, linking]]: surgery presentation of the boundary with the
/// dotted circles read as 0-framed unknots.
IntMatrix boundary_presentation(const Handlebody2& h);

HomologyProfile homology(const Handlebody2& h);

/// H1, H2 rank and boundary H1 equal, and the forms isometric within bound.
bool profiles_isomorphic(const HomologyProfile& a, const HomologyProfile& b, long bound);

/// One 1-handle and one 0-framed 2-handle running over it along
/// x^(r+1) x^-r (x^s x^-s)^m. Contractible with homology-sphere boundary.
/// Throws RangeError unless r, s, m >= 1.
Handlebody2 mazur_cork_template(long r, long s, long m);

/// Adds a 1-handle g and a 2-handle running once over g, and appends
/// (g, g^-1) p times to the target word. The framing of the target does not
/// change. The front of the target is dropped since its Legendrian type is
/// not tracked by this move.
/// `target` is 0-based. Throws RangeError on bad index or p < 1.
Handlebody2 w_minus(const Handlebody2& h, std::size_t target, long p);

/// Same handle structure as w_minus. The target front (if any) gains p in tb
/// and the new 2-handle gets a front with tb +2 and rotation 0.
Handlebody2 w_plus(const Handlebody2& h, std::size_t target, long p, const Integer& w_handle_framing = 0);

/// Appends 0-framed 2-handles. `linking` has one row per new handle and one
/// column per 2-handle of the result; the block among the new handles must be
/// symmetric with zero diagonal.
Handlebody2 attach_two_handles_zero_framed(const Handlebody2& h, const std::vector<Word>& words,
                                           const IntMatrix& linking, bool slice_marked);
Handlebody2 attach_one_handle(const Handlebody2& h);
/// `count` pairs, each a 1-handle with a 2-handle running once over it.
Handlebody2 attach_canceling_pairs(const Handlebody2& h, std::size_t count);

/// Block sums of all data. Both model the homology of the geometric sums.
Handlebody2 boundary_sum(const Handlebody2& a, const Handlebody2& b);
Handlebody2 connected_sum_model(const Handlebody2& a, const Handlebody2& b);

// Certificate tags added by the attachment operations.
inline constexpr const char* kTagOneHandles = "qi:one-handles";
inline constexpr const char* kTagCancelingPairs = "qi:canceling-pairs";
inline constexpr const char* kTagSliceZeroFramed = "qi:slice-zero-framed";

struct HihcReport {
    bool pass = false;
    /// Empty on PASS, otherwise one of "h1", "h2_rank", "boundary_h1", "intersection_form".
    std::string failing_invariant;
    HomologyProfile first;
    HomologyProfile second;
};

/// Checks the computable necessary conditions for the two handlebodies to be
/// homotopy equivalent with isomorphic forms and homology cobordant
/// boundaries. PASS never asserts the equivalence itself.
HihcReport hihc_certificate(const Handlebody2& a, const Handlebody2& b, long bound);

}  // namespace handlecalc
