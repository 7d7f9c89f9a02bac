#include "handlecalc/handlebody.hpp"

#include <algorithm>

#include "handlecalc/errors.hpp"
#include "handlecalc/isometry.hpp"

namespace handlecalc {

Handlebody2::Handlebody2(std::size_t one_handles, std::vector<TwoHandle> two_handles, IntMatrix linking,
                         std::vector<std::string> tags)
    : one_handles_(one_handles), handles_(std::move(two_handles)), linking_(std::move(linking)), tags_(std::move(tags)) {
    const std::size_t n = handles_.size();
    if (linking_.rows() != n || linking_.cols() != n) {
        throw DimensionError("linking matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!linking_.is_symmetric()) {
        throw InvariantError("linking matrix is not symmetric");
    }
    for (const auto& hnd : handles_) {
        check_word(hnd.word);
        if (hnd.front) {
            hnd.front->validate();
        }
    }
}

void Handlebody2::check_word(const Word& w) const {
    for (long letter : w) {
        const long g = letter < 0 ? -letter : letter;
        if (g < 1 || static_cast<std::size_t>(g) > one_handles_) {
            throw InvariantError("word letter " + std::to_string(letter) + " does not name a 1-handle (have " +
                                 std::to_string(one_handles_) + ")");
        }
    }
}

const TwoHandle& Handlebody2::two_handle(std::size_t j) const {
    if (j >= handles_.size()) {
        throw RangeError("no 2-handle with index " + std::to_string(j + 1));
    }
    return handles_[j];
}

const Integer& Handlebody2::framing(std::size_t j) const {
    if (j >= handles_.size()) {
        throw RangeError("no 2-handle with index " + std::to_string(j + 1));
    }
    return linking_(j, j);
}

bool Handlebody2::has_tag(const std::string& tag) const {
    return std::find(tags_.begin(), tags_.end(), tag) != tags_.end();
}

long Handlebody2::add_one_handle() {
    return static_cast<long>(++one_handles_);
}

std::size_t Handlebody2::add_two_handle(Word word, const Integer& framing, const IntVector& links,
                                        std::optional<FrontCounts> front) {
    const std::size_t n = handles_.size();
    if (links.size() != n) {
        throw DimensionError("expected " + std::to_string(n) + " linking numbers, got " + std::to_string(links.size()));
    }
    check_word(word);
    if (front) {
        front->validate();
    }
    IntMatrix grown(n + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            grown(i, j) = linking_(i, j);
        }
        grown(i, n) = links[i];
        grown(n, i) = links[i];
    }
    grown(n, n) = framing;
    linking_ = std::move(grown);
    handles_.push_back({std::move(word), front});
    return n;
}

void Handlebody2::set_front(std::size_t j, std::optional<FrontCounts> front) {
    if (j >= handles_.size()) {
        throw RangeError("no 2-handle with index " + std::to_string(j + 1));
    }
    if (front) {
        front->validate();
    }
    handles_[j].front = front;
}

void Handlebody2::add_tag(std::string tag) {
    if (!has_tag(tag)) {
        tags_.push_back(std::move(tag));
    }
}

DecoratedModule HomologyProfile::h2_module() const {
    return DecoratedModule::free_module(intersection_form);
}

IntMatrix run_over_matrix(const Handlebody2& h) {
    IntMatrix a(h.one_handles(), h.two_handle_count());
    for (std::size_t j = 0; j < h.two_handle_count(); ++j) {
        for (long letter : h.two_handle(j).word) {
            const std::size_t g = static_cast<std::size_t>(letter < 0 ? -letter : letter) - 1;
            a(g, j) += letter < 0 ? -1 : 1;
        }
    }
    return a;
}

IntMatrix boundary_presentation(const Handlebody2& h) {
    const IntMatrix a = run_over_matrix(h);
    const IntMatrix top = IntMatrix::hstack(IntMatrix(h.one_handles(), h.one_handles()), a);
    const IntMatrix bottom = IntMatrix::hstack(a.transpose(), h.linking());
    return IntMatrix::vstack(top, bottom);
}

HomologyProfile homology(const Handlebody2& h) {
    HomologyProfile p;
    const IntMatrix a = run_over_matrix(h);
    p.h1 = cokernel(a);
    p.h2_basis = kernel_basis(a);
    p.h2_rank = p.h2_basis.cols();
    p.intersection_form = p.h2_basis.transpose() * h.linking() * p.h2_basis;
    p.boundary_h1 = cokernel(boundary_presentation(h));
    return p;
}

bool profiles_isomorphic(const HomologyProfile& a, const HomologyProfile& b, long bound) {
    if (a.h1 != b.h1 || a.h2_rank != b.h2_rank || a.boundary_h1 != b.boundary_h1) {
        return false;
    }
    return !enumerate_isometries(a.h2_module(), b.h2_module(), bound).empty();
}

Handlebody2 mazur_cork_template(long r, long s, long m) {
    if (r < 1 || s < 1 || m < 1) {
        throw RangeError("cork parameters r, s, m must all be at least 1");
    }
    Word w;
    w.insert(w.end(), static_cast<std::size_t>(r + 1), 1);
    w.insert(w.end(), static_cast<std::size_t>(r), -1);
    for (long i = 0; i < m; ++i) {
        w.insert(w.end(), static_cast<std::size_t>(s), 1);
        w.insert(w.end(), static_cast<std::size_t>(s), -1);
    }
    Handlebody2 h;
    h.add_one_handle();
    h.add_two_handle(std::move(w), 0, {});
    h.add_tag("cork r=" + std::to_string(r) + " s=" + std::to_string(s) + " m=" + std::to_string(m));
    return h;
}

namespace {

// Shared handle-structure part of the two W moves.
Handlebody2 w_structure(const Handlebody2& h, std::size_t target, long p, const Integer& w_framing,
                        std::optional<FrontCounts> target_front, std::optional<FrontCounts> new_front) {
    if (target >= h.two_handle_count()) {
        throw RangeError("no 2-handle with index " + std::to_string(target + 1));
    }
    if (p < 1) {
        throw RangeError("W move parameter p must be at least 1");
    }
    std::vector<TwoHandle> handles = h.two_handles();
    const long g = static_cast<long>(h.one_handles()) + 1;
    for (long i = 0; i < p; ++i) {
        handles[target].word.push_back(g);
        handles[target].word.push_back(-g);
    }
    handles[target].front = target_front;
    Handlebody2 out(h.one_handles() + 1, std::move(handles), h.linking(), h.tags());
    out.add_two_handle({g}, w_framing, IntVector(h.two_handle_count()), new_front);
    return out;
}

}  // namespace

Handlebody2 w_minus(const Handlebody2& h, std::size_t target, long p) {
    return w_structure(h, target, p, 0, std::nullopt, std::nullopt);
}

Handlebody2 w_plus(const Handlebody2& h, std::size_t target, long p, const Integer& w_handle_framing) {
    std::optional<FrontCounts> front = h.two_handle(target).front;
    if (front) {
        front->writhe += p;
    }
    // writhe 3 with a single right cusp: tb +2, rotation 0
    const FrontCounts w_front{3, 1, 1, 1};
    return w_structure(h, target, p, w_handle_framing, front, w_front);
}

Handlebody2 attach_two_handles_zero_framed(const Handlebody2& h, const std::vector<Word>& words,
                                           const IntMatrix& linking, bool slice_marked) {
    const std::size_t n = h.two_handle_count();
    const std::size_t add = words.size();
    if (linking.rows() != add || linking.cols() != n + add) {
        throw DimensionError("linking data must be " + std::to_string(add) + "x" + std::to_string(n + add));
    }
    for (std::size_t i = 0; i < add; ++i) {
        if (sgn(linking(i, n + i)) != 0) {
            throw InvariantError("attached 2-handles must be 0-framed");
        }
        for (std::size_t j = 0; j < add; ++j) {
            if (linking(i, n + j) != linking(j, n + i)) {
                throw InvariantError("linking among the new 2-handles is not symmetric");
            }
        }
    }
    Handlebody2 out = h;
    for (std::size_t i = 0; i < add; ++i) {
        IntVector links(n + i);
        for (std::size_t j = 0; j < n + i; ++j) {
            links[j] = linking(i, j);
        }
        out.add_two_handle(words[i], 0, links);
    }
    if (slice_marked) {
        out.add_tag(kTagSliceZeroFramed);
    }
    return out;
}

Handlebody2 attach_one_handle(const Handlebody2& h) {
    Handlebody2 out = h;
    out.add_one_handle();
    out.add_tag(kTagOneHandles);
    return out;
}

Handlebody2 attach_canceling_pairs(const Handlebody2& h, std::size_t count) {
    Handlebody2 out = h;
    for (std::size_t i = 0; i < count; ++i) {
        const long g = out.add_one_handle();
        out.add_two_handle({g}, 0, IntVector(out.two_handle_count()));
    }
    out.add_tag(kTagCancelingPairs);
    return out;
}

namespace {

Handlebody2 block_sum(const Handlebody2& a, const Handlebody2& b, const std::string& tag) {
    std::vector<TwoHandle> handles = a.two_handles();
    const long shift = static_cast<long>(a.one_handles());
    for (TwoHandle hnd : b.two_handles()) {
        for (long& letter : hnd.word) {
            letter += letter < 0 ? -shift : shift;
        }
        handles.push_back(std::move(hnd));
    }
    std::vector<std::string> tags = a.tags();
    for (const auto& t : b.tags()) {
        if (std::find(tags.begin(), tags.end(), t) == tags.end()) {
            tags.push_back(t);
        }
    }
    Handlebody2 out(a.one_handles() + b.one_handles(), std::move(handles),
                    IntMatrix::direct_sum(a.linking(), b.linking()), std::move(tags));
    out.add_tag(tag);
    return out;
}

}  // namespace

Handlebody2 boundary_sum(const Handlebody2& a, const Handlebody2& b) {
    return block_sum(a, b, "sum:boundary");
}

Handlebody2 connected_sum_model(const Handlebody2& a, const Handlebody2& b) {
    return block_sum(a, b, "sum:connected");
}

HihcReport hihc_certificate(const Handlebody2& a, const Handlebody2& b, long bound) {
    if (bound < 1) {
        throw RangeError("search bound must be at least 1");
    }
    HihcReport r;
    r.first = homology(a);
    r.second = homology(b);
    if (r.first.h1 != r.second.h1) {
        r.failing_invariant = "h1";
    } else if (r.first.h2_rank != r.second.h2_rank) {
        r.failing_invariant = "h2_rank";
    } else if (enumerate_isometries(r.first.h2_module(), r.second.h2_module(), bound).empty()) {
        r.failing_invariant = "intersection_form";
    } else if (r.first.boundary_h1 != r.second.boundary_h1) {
        r.failing_invariant = "boundary_h1";
    }
    r.pass = r.failing_invariant.empty();
    return r;
}

}  // namespace handlecalc
