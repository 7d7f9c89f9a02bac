#pragma once

// Legendrian front bookkeeping and Steinification of 2-handlebodies.

#include <cstddef>
#include <vector>

#include "handlecalc/linalg.hpp"

namespace handlecalc {

class Handlebody2;

/// Combinatorial shadow of a Legendrian front: writhe and cusp counts.
struct FrontCounts {
    long writhe = 0;
    long right_cusps = 1;
    long up_cusps = 1;
    long down_cusps = 1;

    /// The standard Legendrian unknot (tb -1, rotation 0).
    static FrontCounts unknot() { return {}; }

    /// Throws InvariantError unless up + down = 2 * right and right >= 1.
    void validate() const;

    friend bool operator==(const FrontCounts&, const FrontCounts&) = default;
};

/// writhe - right cusps
long thurston_bennequin(const FrontCounts& f);
/// (down - up) / 2; InvariantError on odd difference.
long rotation(const FrontCounts& f);
/// Adds a zig-zag. sign +1 adds two down cusps, -1 two up cusps.
FrontCounts stabilize(const FrontCounts& f, int sign);

struct SteinOptions {
    /// Framing given to the extra 2-handle of each W+ move. Must be <= 1,
    /// otherwise that handle would itself need a W+ move and the process
    /// would not terminate.
    long w_handle_framing = 0;
};

struct SteinStep {
    enum class Kind { Stabilize, WPlus };
    Kind kind;
    /// 0-based 2-handle index in the result.
    std::size_t handle;
    /// Stabilization sign (+1/-1) or the W+ parameter p.
    long amount;
};

/// Moves applied by steinify_traced, in order.
struct SteinTrace {
    std::vector<SteinStep> steps;
};

/// Makes framing = tb - 1 hold on every 2-handle by stabilizing (framing
/// below tb - 1) or applying one W+ move with p = framing - tb + 1 (framing
/// at least tb). Handles created by W+ are processed the same way.
/// Framings are never changed. Throws PreconditionError when a 2-handle has
/// no front.
Handlebody2 steinify(const Handlebody2& h, const SteinOptions& options = {});
Handlebody2 steinify_traced(const Handlebody2& h, SteinTrace& trace, const SteinOptions& options = {});

/// framing = tb - 1 on every 2-handle (all fronts present).
bool is_stein(const Handlebody2& h);

}  // namespace handlecalc
