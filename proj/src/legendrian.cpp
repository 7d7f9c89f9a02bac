#include "handlecalc/legendrian.hpp"

#include "handlecalc/errors.hpp"
#include "handlecalc/handlebody.hpp"

namespace handlecalc {

void FrontCounts::validate() const {
    if (right_cusps < 1) {
        throw InvariantError("a front needs at least one right cusp");
    }
    if (up_cusps < 0 || down_cusps < 0) {
        throw InvariantError("cusp counts must be non-negative");
    }
    if (up_cusps + down_cusps != 2 * right_cusps) {
        throw InvariantError("up + down cusps must equal twice the right cusps");
    }
}

long thurston_bennequin(const FrontCounts& f) {
    return f.writhe - f.right_cusps;
}

long rotation(const FrontCounts& f) {
    const long diff = f.down_cusps - f.up_cusps;
    if (diff % 2 != 0) {
        throw InvariantError("down - up cusps must be even");
    }
    return diff / 2;
}

FrontCounts stabilize(const FrontCounts& f, int sign) {
    if (sign != 1 && sign != -1) {
        throw RangeError("stabilization sign must be +1 or -1");
    }
    FrontCounts out = f;
    out.right_cusps += 1;
    (sign > 0 ? out.down_cusps : out.up_cusps) += 2;
    return out;
}

namespace {

long to_long(const Integer& v, const char* what) {
    if (!v.fits_slong_p()) {
        throw RangeError(std::string(what) + " out of range");
    }
    return v.get_si();
}

}  // namespace

Handlebody2 steinify_traced(const Handlebody2& h, SteinTrace& trace, const SteinOptions& options) {
    if (options.w_handle_framing > 1) {
        throw RangeError("W handle framing must be at most 1");
    }
    for (std::size_t j = 0; j < h.two_handle_count(); ++j) {
        if (!h.two_handle(j).front) {
            throw PreconditionError("2-handle " + std::to_string(j + 1) + " has no front data");
        }
    }
    Handlebody2 out = h;
    // New W handles are appended, so the loop bound grows with them.
    for (std::size_t j = 0; j < out.two_handle_count(); ++j) {
        const long f = to_long(out.framing(j), "framing");
        const FrontCounts front = *out.two_handle(j).front;
        const long t = thurston_bennequin(front);
        if (f <= t - 1) {
            FrontCounts stabilized = front;
            int sign = 1;
            for (long i = 0; i < t - 1 - f; ++i) {
                stabilized = stabilize(stabilized, sign);
                trace.steps.push_back({SteinStep::Kind::Stabilize, j, sign});
                sign = -sign;
            }
            out.set_front(j, stabilized);
        } else {
            const long p = f - t + 1;
            out = w_plus(out, j, p, options.w_handle_framing);
            trace.steps.push_back({SteinStep::Kind::WPlus, j, p});
        }
    }
    return out;
}

Handlebody2 steinify(const Handlebody2& h, const SteinOptions& options) {
    SteinTrace trace;
    return steinify_traced(h, trace, options);
}

bool is_stein(const Handlebody2& h) {
    for (std::size_t j = 0; j < h.two_handle_count(); ++j) {
        const auto& front = h.two_handle(j).front;
        if (!front || h.framing(j) != thurston_bennequin(*front) - 1) {
            return false;
        }
    }
    return true;
}

}  // namespace handlecalc
