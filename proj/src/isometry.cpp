#include "handlecalc/isometry.hpp"

#include <algorithm>
#include <atomic>
#include <functional>

#include "handlecalc/errors.hpp"

namespace handlecalc {

namespace {

void check_inputs(const DecoratedModule& d1, const DecoratedModule& d2, long bound, const SearchLimits& limits) {
    if (bound < 1) {
        throw RangeError("search bound must be at least 1");
    }
    for (const auto* d : {&d1, &d2}) {
        if (d->free_rank() > limits.max_free_rank || d->generators() > limits.max_generators) {
            throw CapacityError("module too large for exhaustive isometry search (free rank " +
                                std::to_string(d->free_rank()) + ", " + std::to_string(d->generators()) +
                                " generators)");
        }
    }
}

bool matrix_less(const ModuleHom& a, const ModuleHom& b) {
    const auto ea = a.matrix().entries();
    const auto eb = b.matrix().entries();
    return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

// Every admissible image of domain generator j in the codomain, restricted
// to the box and to vectors with the right self-pairing.
std::vector<IntVector> column_candidates(const DecoratedModule& dom, const DecoratedModule& cod, std::size_t j,
                                         long bound) {
    const std::size_t m = cod.generators();
    const bool torsion_source = dom.is_torsion_generator(j);
    std::vector<std::vector<Integer>> choices(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (cod.is_torsion_generator(i)) {
            const Integer& di = cod.orders()[i];
            for (Integer c = 0; c < di; ++c) {
                if (torsion_source) {
                    const Integer image = dom.orders()[j] * c;
                    if (mpz_divisible_p(image.get_mpz_t(), di.get_mpz_t()) == 0) {
                        continue;
                    }
                }
                choices[i].push_back(c);
            }
        } else if (torsion_source) {
            choices[i].push_back(0);
        } else {
            for (long c = -bound; c <= bound; ++c) {
                choices[i].emplace_back(c);
            }
        }
    }

    std::vector<IntVector> out;
    IntVector v(m);
    const Integer& target = dom.form()(j, j);
    std::function<void(std::size_t)> fill = [&](std::size_t i) {
        if (i == m) {
            if (cod.pairing(v, v) == target) {
                out.push_back(v);
            }
            return;
        }
        for (const auto& c : choices[i]) {
            v[i] = c;
            fill(i + 1);
        }
    };
    fill(0);
    return out;
}

}  // namespace

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Table keys of the domain whose highest nonzero coordinate is j; their image
// is fixed once column j is chosen. A directed search only looks for maps
// that carry the whole domain table into the codomain table.
using KeyChecks = std::vector<std::vector<std::pair<IntVector, OrderedValue>>>;

KeyChecks key_checks(const DecoratedModule& d1) {
    KeyChecks out(d1.generators());
    for (const auto& [key, value] : d1.gvalues()) {
        std::size_t level = 0;
        for (std::size_t i = 0; i < key.size(); ++i) {
            if (sgn(key[i]) != 0) {
                level = i;
            }
        }
        out[level].emplace_back(key, value);
    }
    return out;
}

// Depth-first search over columns. First-column subtrees run in parallel;
// `leaf(subtree, cols)` returns true to stop. The reported subtree is the
// smallest one with a hit, and within a subtree the search is sequential, so
// the hit is the first in plain DFS order whatever the scheduling.
template <class Leaf>
std::size_t column_search(const DecoratedModule& d1, const DecoratedModule& d2, long bound, const SearchLimits& limits,
                          const KeyChecks* checks, Leaf&& leaf) {
    const std::size_t n = d1.generators();
    const std::size_t m = d2.generators();
    std::vector<std::vector<IntVector>> cand(n);
    for (std::size_t j = 0; j < n; ++j) {
        cand[j] = column_candidates(d1, d2, j, bound);
        if (cand[j].empty()) {
            return kNone;
        }
    }

    std::atomic<std::size_t> nodes{0};
    std::atomic<bool> over_capacity{false};
    std::atomic<std::size_t> best{kNone};

    const auto first_count = static_cast<long>(cand[0].size());
#pragma omp parallel
    {
        std::vector<IntVector> cols(n);
        std::size_t subtree = 0;
        bool done = false;

        auto consistent = [&](std::size_t j) {
            for (std::size_t k = 0; k < j; ++k) {
                if (d2.pairing(cols[k], cols[j]) != d1.form()(k, j)) {
                    return false;
                }
            }
            if (checks == nullptr) {
                return true;
            }
            for (const auto& [key, value] : (*checks)[j]) {
                IntVector image(m);
                for (std::size_t i = 0; i <= j; ++i) {
                    if (sgn(key[i]) == 0) {
                        continue;
                    }
                    for (std::size_t r = 0; r < m; ++r) {
                        image[r] += key[i] * cols[i][r];
                    }
                }
                const auto g = d2.g(image);
                if (!g || *g != value) {
                    return false;
                }
            }
            return true;
        };

        std::function<void(std::size_t)> extend = [&](std::size_t j) {
            if (done || over_capacity.load(std::memory_order_relaxed) || best.load(std::memory_order_relaxed) < subtree) {
                return;
            }
            if (j == n) {
                if (leaf(subtree, cols)) {
                    done = true;
                    std::size_t cur = best.load();
                    while (subtree < cur && !best.compare_exchange_weak(cur, subtree)) {
                    }
                }
                return;
            }
            for (const auto& v : cand[j]) {
                if (nodes.fetch_add(1, std::memory_order_relaxed) >= limits.max_nodes) {
                    over_capacity = true;
                    return;
                }
                cols[j] = v;
                if (consistent(j)) {
                    extend(j + 1);
                }
                if (done) {
                    return;
                }
            }
        };
#pragma omp for schedule(dynamic)
        for (long c = 0; c < first_count; ++c) {
            subtree = static_cast<std::size_t>(c);
            done = false;
            if (best.load(std::memory_order_relaxed) < subtree) {
                continue;
            }
            cols[0] = cand[0][subtree];
            if (consistent(0)) {
                extend(1);
            }
        }
    }
    if (over_capacity) {
        throw CapacityError("isometry search exceeded " + std::to_string(limits.max_nodes) + " nodes");
    }
    return best.load();
}

// Cheap rejection before the exact isomorphism test.
bool maybe_invertible(const DecoratedModule& d1, const DecoratedModule& d2, const IntMatrix& mat) {
    if (d1.is_torsion_free() && d2.is_torsion_free()) {
        return mat.is_square() && abs(determinant(mat)) == 1;
    }
    return true;
}

}  // namespace

std::vector<ModuleHom> enumerate_isometries(const DecoratedModule& d1, const DecoratedModule& d2, long bound,
                                            const SearchLimits& limits) {
    check_inputs(d1, d2, bound, limits);
    if (d1.group() != d2.group()) {
        return {};
    }
    const std::size_t m = d2.generators();
    if (d1.generators() == 0) {
        return {ModuleHom(IntMatrix(m, 0), d1, d2)};
    }
    const DecoratedModule bare1 = d1.with_gvalues({});
    const DecoratedModule bare2 = d2.with_gvalues({});

    std::vector<std::vector<IntMatrix>> found(column_candidates(d1, d2, 0, bound).size());
    column_search(bare1, bare2, bound, limits, nullptr, [&](std::size_t subtree, const std::vector<IntVector>& cols) {
        IntMatrix mat = IntMatrix::from_columns(cols, m);
        if (maybe_invertible(bare1, bare2, mat)) {
            found[subtree].push_back(std::move(mat));
        }
        return false;
    });

    std::vector<ModuleHom> out;
    for (auto& list : found) {
        for (auto& mat : list) {
            ModuleHom phi(std::move(mat), d1, d2);
            if (phi.is_isomorphism()) {
                out.push_back(std::move(phi));
            }
        }
    }
    std::sort(out.begin(), out.end(), matrix_less);
    return out;
}

std::vector<ModuleHom> enumerate_isometries_reference(const DecoratedModule& d1, const DecoratedModule& d2,
                                                      long bound, std::size_t max_matrices) {
    if (bound < 1) {
        throw RangeError("search bound must be at least 1");
    }
    const std::size_t n = d1.generators();
    const std::size_t m = d2.generators();

    // Range of entry (i, j) depends only on the row.
    std::vector<std::vector<Integer>> row_values(m);
    double total = 1;
    for (std::size_t i = 0; i < m; ++i) {
        if (d2.is_torsion_generator(i)) {
            for (Integer c = 0; c < d2.orders()[i]; ++c) {
                row_values[i].push_back(c);
            }
        } else {
            for (long c = -bound; c <= bound; ++c) {
                row_values[i].emplace_back(c);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            total *= static_cast<double>(row_values[i].size());
        }
    }
    if (total > static_cast<double>(max_matrices)) {
        throw CapacityError("reference search would visit more than " + std::to_string(max_matrices) + " matrices");
    }

    std::vector<ModuleHom> out;
    IntMatrix mat(m, n);
    const std::size_t cells = m * n;
    std::function<void(std::size_t)> fill = [&](std::size_t cell) {
        if (cell == cells) {
            try {
                ModuleHom phi(mat, d1, d2);
                if (preserves_form(phi) && phi.is_isomorphism()) {
                    out.push_back(std::move(phi));
                }
            } catch (const InvariantError&) {
                // not a homomorphism
            }
            return;
        }
        const std::size_t i = cell / n;
        const std::size_t j = cell % n;
        for (const auto& c : row_values[i]) {
            mat(i, j) = c;
            fill(cell + 1);
        }
    };
    fill(0);
    std::sort(out.begin(), out.end(), matrix_less);
    return out;
}

bool witnesses_equivalence(const ModuleHom& phi) {
    const auto cmp = compare_gvalues(phi);
    return !cmp.mismatch && (cmp.undecided_domain.empty() || cmp.undecided_codomain.empty());
}

namespace {

// One search direction. Returns a witness from d1 to d2 if one is found.
std::optional<ModuleHom> directed_witness(const DecoratedModule& d1, const DecoratedModule& d2, long bound,
                                          const SearchLimits& limits) {
    const std::size_t m = d2.generators();
    if (d1.generators() == 0) {
        ModuleHom phi(IntMatrix(m, 0), d1, d2);
        if (witnesses_equivalence(phi)) {
            return phi;
        }
        return std::nullopt;
    }
    const KeyChecks checks = key_checks(d1);
    const std::size_t subtrees = column_candidates(d1, d2, 0, bound).size();
    std::vector<std::optional<ModuleHom>> hits(subtrees);
    const std::size_t winner =
        column_search(d1, d2, bound, limits, &checks, [&](std::size_t subtree, const std::vector<IntVector>& cols) {
            IntMatrix mat = IntMatrix::from_columns(cols, m);
            if (!maybe_invertible(d1, d2, mat)) {
                return false;
            }
            ModuleHom phi(std::move(mat), d1, d2);
            if (!phi.is_isomorphism()) {
                return false;
            }
            if (witnesses_equivalence(phi)) {
                hits[subtree] = std::move(phi);
                return true;
            }
            return false;
        });
    if (winner == kNone) {
        return std::nullopt;
    }
    return std::move(hits[winner]);
}

}  // namespace

namespace {

// A fixed order on presentations so that swapping the arguments swaps the
// search and the witness comes back inverted.
bool presentation_less(const DecoratedModule& a, const DecoratedModule& b) {
    if (a.orders() != b.orders()) {
        return a.orders() < b.orders();
    }
    if (a.form() != b.form()) {
        const auto ea = a.form().entries();
        const auto eb = b.form().entries();
        return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
    }
    return a.gvalues() < b.gvalues();
}

std::optional<ModuleHom> find_witness(const DecoratedModule& d1, const DecoratedModule& d2, long bound,
                                      const SearchLimits& limits) {
    // Same presentation: the identity is the natural witness, and it is cheap to try.
    if (d1.orders() == d2.orders() && d1.form() == d2.form()) {
        ModuleHom id(IntMatrix::identity(d1.generators()), d1, d2);
        if (witnesses_equivalence(id)) {
            return id;
        }
    }
    if (auto phi = directed_witness(d1, d2, bound, limits)) {
        return phi;
    }
    if (auto psi = directed_witness(d2, d1, bound, limits)) {
        return psi->inverse();
    }
    return std::nullopt;
}

}  // namespace

EquivalenceResult algebraically_equivalent(const DecoratedModule& d1, const DecoratedModule& d2, long bound,
                                           const SearchLimits& limits) {
    check_inputs(d1, d2, bound, limits);
    EquivalenceResult result;
    if (d1.group() != d2.group()) {
        return result;
    }
    std::optional<ModuleHom> phi;
    if (presentation_less(d2, d1)) {
        if (auto psi = find_witness(d2, d1, bound, limits)) {
            phi = psi->inverse();
        }
    } else {
        phi = find_witness(d1, d2, bound, limits);
    }
    if (phi) {
        auto cmp = compare_gvalues(*phi);
        result.undecided_domain = std::move(cmp.undecided_domain);
        result.undecided_codomain = std::move(cmp.undecided_codomain);
        result.witness = std::move(phi);
    }
    return result;
}

}  // namespace handlecalc
