#include "excal/limits.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "excal/functor_ops.hpp"
#include "excal/linalg.hpp"

namespace excal {

namespace {

// Collects homogeneous constraints  a * x_src - x_dst = 0  on a product of
// blocks and solves for their common kernel.  Fields go through the
// incremental echelon accumulator; Z assembles one integer matrix and takes
// the saturated kernel lattice.
class product_constraint_solver {
  public:
    product_constraint_solver(RingSpec ring, std::vector<int> offsets)
        : ring_(std::move(ring)), offsets_(std::move(offsets)) {
        if (ring_.is_field()) acc_.emplace(ring_, offsets_.back());
    }

    int ambient() const { return offsets_.back(); }

    // a must map the src block to the dst block; blocks may coincide.
    void add_transport(const ExactMatrix& a, int src_block, int dst_block) {
        const int src = offsets_[size_t(src_block)];
        const int dst = offsets_[size_t(dst_block)];
        if (a.cols() != offsets_[size_t(src_block) + 1] - src ||
            a.rows() != offsets_[size_t(dst_block) + 1] - dst)
            throw DimensionMismatch("constraint block does not fit its source and target");
        const Scalar one = scalar_from_long(ring_, 1);
        for (int r = 0; r < a.rows(); ++r) {
            std::vector<Scalar> row(size_t(ambient()), Scalar(0));
            for (int c = 0; c < a.cols(); ++c)
                row[size_t(src + c)] = ring_add(ring_, row[size_t(src + c)], a.at(r, c));
            row[size_t(dst + r)] = ring_sub(ring_, row[size_t(dst + r)], one);
            if (acc_) {
                acc_->add_row(std::move(row));
            } else {
                rows_.push_back(std::move(row));
            }
        }
    }

    ExactMatrix kernel() const {
        if (acc_) return acc_->kernel_basis();
        if (rows_.empty()) return ExactMatrix::identity(ring_, ambient());
        ExactMatrix m(ring_, int(rows_.size()), ambient());
        for (size_t r = 0; r < rows_.size(); ++r)
            for (int c = 0; c < ambient(); ++c) m.at(int(r), c) = rows_[r][size_t(c)];
        return kernel_basis(m);
    }

  private:
    RingSpec ring_;
    std::vector<int> offsets_;
    std::optional<KernelAccumulator> acc_;
    std::vector<std::vector<Scalar>> rows_;
};

// The map from the value at `from` into the product over the listed
// vertices: stack the collapse actions in vertex order.
ExactMatrix stack_cone(const FunctorData& g, const HypercubeDiagram& cube,
                       const std::vector<unsigned>& masks, unsigned from) {
    std::vector<ExactMatrix> blocks;
    blocks.reserve(masks.size());
    for (unsigned v : masks) blocks.push_back(g.action(cube.arrow(from, v)));
    return vstack(blocks, g.ring(), g.rank(cube.vertex_size(from)));
}

}  // namespace

LimitResult limit_over_surjections(const FunctorData& g, int ell) {
    if (ell < 1) throw PreconditionViolated("limit_over_surjections: ell must be at least 1");
    if (ell > g.max_size())
        throw BudgetExceeded("limit_over_surjections: ell exceeds the functor's size budget");

    std::vector<int> offsets(size_t(ell) + 1, 0);
    for (int m = 1; m <= ell; ++m) offsets[size_t(m)] = offsets[size_t(m) - 1] + g.rank(m);

    // Adjacent transpositions and single merges generate every surjection
    // between sizes <= ell, and a family compatible with a generating set is
    // compatible with all composites because the functor laws hold.
    product_constraint_solver solver(g.ring(), offsets);
    for (int m = 2; m <= ell; ++m) {
        for (int i = 1; i < m; ++i) {
            std::vector<int> swap_im(static_cast<size_t>(m)), merge_im(static_cast<size_t>(m));
            for (int j = 1; j <= m; ++j) {
                swap_im[size_t(j) - 1] = j == i ? i + 1 : j == i + 1 ? i : j;
                merge_im[size_t(j) - 1] = j <= i ? j : j - 1;
            }
            solver.add_transport(g.action(Surjection(m, m, std::move(swap_im))), m - 1, m - 1);
            solver.add_transport(g.action(Surjection(m, m - 1, std::move(merge_im))), m - 1, m - 2);
        }
    }
    ExactMatrix basis = solver.kernel();
    const int r = basis.cols();

    // Certify the full invariant on the result: every surjection between
    // sizes <= ell carries the size-m slice of the basis to the size-m'
    // slice, not only the generating ones the kernel was assembled from.
    for (int m = 1; m <= ell; ++m) {
        const ExactMatrix from = basis.submatrix(offsets[size_t(m) - 1], offsets[size_t(m)], 0, r);
        for (int mp = 1; mp <= m; ++mp) {
            const ExactMatrix to =
                basis.submatrix(offsets[size_t(mp) - 1], offsets[size_t(mp)], 0, r);
            for (const Surjection& s : enumerate_surjections(m, mp))
                if (multiply(g.action(s), from) != to)
                    throw std::logic_error("limit_over_surjections: basis violates compatibility for " +
                                           s.to_string());
        }
    }

    ExactMatrix comparison =
        multiply(g.action(psi_map({}, 1)), basis.submatrix(offsets[0], offsets[1], 0, r));
    return LimitResult{g.ring(), ell, std::move(offsets), std::move(basis), std::move(comparison)};
}

ExactMatrix restriction_map(const FunctorData& g, int ell, int ell_prime) {
    if (ell_prime < 1 || ell_prime > ell)
        throw PreconditionViolated("restriction_map: need 1 <= ell' <= ell");
    const LimitResult big = limit_over_surjections(g, ell);
    const LimitResult small = limit_over_surjections(g, ell_prime);
    const ExactMatrix trunc = big.basis.submatrix(0, small.offsets.back(), 0, big.rank());
    auto coords = solve(small.basis, trunc);
    // Truncations of compatible families stay compatible, and over Z the
    // smaller basis is saturated, so coordinates always exist.
    if (!coords) throw std::logic_error("restriction_map: truncated family escapes the smaller limit");
    return *coords;
}

VanishingVerdict check_vanishing(const FunctorData& g, int n, int ell) {
    if (n < 0 || n + 2 > ell || ell > g.max_size())
        throw PreconditionViolated("check_vanishing: need 0 <= n and n + 2 <= ell <= max size");
    const int deg = degree(g);
    if (deg > n)
        throw PreconditionViolated("check_vanishing: functor degree " + std::to_string(deg) +
                                   " exceeds the requested bound " + std::to_string(n));

    const LimitResult lim = limit_over_surjections(g, ell);
    VanishingVerdict v;
    v.limit_rank = lim.rank();
    v.target_rank = g.rank(0);
    const bool square = lim.comparison.rows() == lim.comparison.cols();
    if (square && is_invertible(lim.comparison)) {
        v.holds = true;
        v.detail = "comparison is an isomorphism onto the basepoint value";
        return v;
    }
    const ExactMatrix null_coords = kernel_basis(lim.comparison);
    if (null_coords.cols() > 0) v.witness = multiply(lim.basis, null_coords.column(0));
    v.detail = "limit rank " + std::to_string(v.limit_rank) + " vs basepoint rank " +
               std::to_string(v.target_rank) +
               (square ? "; comparison not invertible over the ring" : "");
    return v;
}

ExactMatrix counterexample_family(const RingSpec& ring, int ell) {
    if (ell < 1 || ell > kSizeBudget)
        throw PreconditionViolated("counterexample_family: need 1 <= ell <= size budget");
    std::vector<int> offsets{0};
    for (int m = 1; m <= ell; ++m) offsets.push_back(offsets.back() + (1 << m) - 1);
    ExactMatrix fam = ExactMatrix::zero(ring, offsets.back(), 1);
    for (int m = 1; m <= ell; ++m) fam.set(offsets[size_t(m)] - 1, 0, 1L);
    return fam;
}

CubeLimit limit_over_cube_vertices(const FunctorData& g, const HypercubeDiagram& cube,
                                   std::vector<unsigned> masks) {
    if (cube.spec().total_size() > g.max_size())
        throw PreconditionViolated("limit_over_cube_vertices: hypercube exceeds the size budget");
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    for (unsigned v : masks)
        if (v > cube.full_mask())
            throw SubsetOutOfRange("limit_over_cube_vertices: vertex outside the cube");
    const auto position = [&masks](unsigned v) -> int {
        const auto it = std::lower_bound(masks.begin(), masks.end(), v);
        return it != masks.end() && *it == v ? int(it - masks.begin()) : -1;
    };

    std::vector<int> offsets(masks.size() + 1, 0);
    for (size_t i = 0; i < masks.size(); ++i)
        offsets[i + 1] = offsets[i] + g.rank(cube.vertex_size(masks[i]));

    // Covering arrows (clear one bit) generate every arrow of a
    // downward-closed sub-poset, so they cut out the full limit.
    product_constraint_solver solver(g.ring(), offsets);
    for (size_t i = 0; i < masks.size(); ++i) {
        const unsigned v = masks[i];
        for (int b = 0; b < cube.block_count(); ++b) {
            if (!(v & (1u << b))) continue;
            const unsigned u = v & ~(1u << b);
            const int j = position(u);
            if (j < 0)
                throw PreconditionViolated(
                    "limit_over_cube_vertices: vertex set is not downward closed");
            solver.add_transport(g.action(cube.arrow(v, u)), int(i), j);
        }
    }
    ExactMatrix basis = solver.kernel();
    return CubeLimit{g.ring(), std::move(masks), std::move(offsets), std::move(basis)};
}

bool is_weakly_cartesian(const FunctorData& g, const HypercubeSpec& spec) {
    if (spec.total_size() > g.max_size())
        throw PreconditionViolated("is_weakly_cartesian: hypercube exceeds the size budget");
    const HypercubeDiagram cube(spec);
    if (cube.block_count() == 0) return g.rank(0) == 0;
    std::vector<unsigned> masks;
    for (unsigned v = 0; v < cube.full_mask(); ++v) masks.push_back(v);
    const CubeLimit lim = limit_over_cube_vertices(g, cube, std::move(masks));
    const ExactMatrix cone = stack_cone(g, cube, lim.masks, cube.full_mask());
    const auto coords = solve(lim.basis, cone);
    return coords && coords->rows() == coords->cols() && is_invertible(*coords);
}

bool is_n_excisive(const FunctorData& g, int n) {
    if (n < 0) throw PreconditionViolated("is_n_excisive: n must be nonnegative");
    std::vector<int> parts;
    const std::function<bool(int)> extend = [&](int remaining) -> bool {
        if (remaining == 0)
            return int(parts.size()) <= n || is_weakly_cartesian(g, HypercubeSpec{parts});
        for (int next = 1; next <= remaining; ++next) {
            parts.push_back(next);
            const bool ok = extend(remaining - next);
            parts.pop_back();
            if (!ok) return false;
        }
        return true;
    };
    for (int total = 1; total <= g.max_size(); ++total)
        if (!extend(total)) return false;
    return true;
}

TruncatedCubeLimit truncated_cube_limit(const FunctorData& g, const HypercubeSpec& spec, int h) {
    if (spec.total_size() > g.max_size())
        throw PreconditionViolated("truncated_cube_limit: hypercube exceeds the size budget");
    const HypercubeDiagram cube(spec);
    if (h < 0 || h > cube.block_count())
        throw PreconditionViolated("truncated_cube_limit: height out of range");
    std::vector<unsigned> masks;
    for (unsigned v = 0; v <= cube.full_mask(); ++v)
        if (std::popcount(v) <= h) masks.push_back(v);
    CubeLimit lim = limit_over_cube_vertices(g, cube, std::move(masks));
    const ExactMatrix cone = stack_cone(g, cube, lim.masks, cube.full_mask());
    auto coords = solve(lim.basis, cone);
    if (!coords) throw std::logic_error("truncated_cube_limit: cone escapes the computed limit");
    TruncatedCubeLimit out{std::move(lim), std::move(*coords), false};
    out.iso = out.comparison.rows() == out.comparison.cols() && is_invertible(out.comparison);
    return out;
}

int pair_index(int n, int i, int j) {
    assert(1 <= i && i < j && j <= n);
    int idx = 0;
    for (int a = 1; a < i; ++a) idx += n - a;
    return idx + (j - i - 1);
}

SkeletonData skeleton_of(const FunctorData& g, int n) {
    if (n < 3 || n > g.max_size())
        throw PreconditionViolated("skeleton_of: need 3 <= block count <= max size");
    HypercubeSpec spec;
    spec.block_sizes.assign(size_t(n), 1);
    const HypercubeDiagram cube(spec);
    SkeletonData s{g.ring(), n, g.rank(0), {}, {}, {}, {}, {}};
    for (int i = 1; i <= n; ++i) {
        s.singleton_ranks.push_back(g.rank(1));
        s.to_empty.push_back(g.action(cube.arrow(1u << (i - 1), 0u)));
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const unsigned pm = (1u << (i - 1)) | (1u << (j - 1));
            s.pair_ranks.push_back(g.rank(2));
            s.pair_to_first.push_back(g.action(cube.arrow(pm, 1u << (i - 1))));
            s.pair_to_second.push_back(g.action(cube.arrow(pm, 1u << (j - 1))));
        }
    return s;
}

Reconstruction cube_reconstruct(const SkeletonData& skeleton) {
    const int n = skeleton.block_count;
    if (n < 3) throw PreconditionViolated("cube_reconstruct: need at least three blocks");
    const int pairs = n * (n - 1) / 2;
    if (int(skeleton.singleton_ranks.size()) != n || int(skeleton.to_empty.size()) != n ||
        int(skeleton.pair_ranks.size()) != pairs ||
        int(skeleton.pair_to_first.size()) != pairs ||
        int(skeleton.pair_to_second.size()) != pairs)
        throw DimensionMismatch("cube_reconstruct: entry counts do not match the block count");
    for (int i = 1; i <= n; ++i) {
        const ExactMatrix& down = skeleton.to_empty[size_t(i) - 1];
        if (down.rows() != skeleton.empty_rank ||
            down.cols() != skeleton.singleton_ranks[size_t(i) - 1])
            throw DimensionMismatch("cube_reconstruct: singleton collapse has the wrong shape");
    }
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const int p = pair_index(n, i, j);
            const ExactMatrix& first = skeleton.pair_to_first[size_t(p)];
            const ExactMatrix& second = skeleton.pair_to_second[size_t(p)];
            if (first.cols() != skeleton.pair_ranks[size_t(p)] ||
                second.cols() != skeleton.pair_ranks[size_t(p)] ||
                first.rows() != skeleton.singleton_ranks[size_t(i) - 1] ||
                second.rows() != skeleton.singleton_ranks[size_t(j) - 1])
                throw DimensionMismatch("cube_reconstruct: pair collapse has the wrong shape");
            if (multiply(skeleton.to_empty[size_t(i) - 1], first) !=
                multiply(skeleton.to_empty[size_t(j) - 1], second))
                throw InconsistentSkeleton("cube_reconstruct: square at pair {" +
                                           std::to_string(i) + "," + std::to_string(j) +
                                           "} does not commute");
        }

    std::vector<int> offsets{0, skeleton.empty_rank};
    for (int i = 0; i < n; ++i)
        offsets.push_back(offsets.back() + skeleton.singleton_ranks[size_t(i)]);
    for (int p = 0; p < pairs; ++p)
        offsets.push_back(offsets.back() + skeleton.pair_ranks[size_t(p)]);

    product_constraint_solver solver(skeleton.ring, offsets);
    for (int i = 1; i <= n; ++i) solver.add_transport(skeleton.to_empty[size_t(i) - 1], i, 0);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const int p = pair_index(n, i, j);
            solver.add_transport(skeleton.pair_to_first[size_t(p)], 1 + n + p, i);
            solver.add_transport(skeleton.pair_to_second[size_t(p)], 1 + n + p, j);
        }
    ExactMatrix basis = solver.kernel();
    const int r = basis.cols();
    return Reconstruction{r, std::move(offsets), std::move(basis)};
}

ReconstructionCheck cube_reconstruct_certified(const FunctorData& g, int n) {
    Reconstruction rec = cube_reconstruct(skeleton_of(g, n));
    HypercubeSpec spec;
    spec.block_sizes.assign(size_t(n), 1);
    const HypercubeDiagram cube(spec);
    std::vector<ExactMatrix> blocks;
    blocks.push_back(g.action(cube.arrow(cube.full_mask(), 0u)));
    for (int i = 1; i <= n; ++i)
        blocks.push_back(g.action(cube.arrow(cube.full_mask(), 1u << (i - 1))));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            blocks.push_back(
                g.action(cube.arrow(cube.full_mask(), (1u << (i - 1)) | (1u << (j - 1)))));
    const ExactMatrix cone = vstack(blocks, g.ring(), g.rank(n));
    auto coords = solve(rec.basis, cone);
    if (!coords) throw std::logic_error("cube_reconstruct_certified: cone escapes the reconstruction");
    ReconstructionCheck out{std::move(rec), std::move(*coords), false};
    out.iso = out.comparison.rows() == out.comparison.cols() && is_invertible(out.comparison);
    return out;
}

DerivedLimits derived_limits(const FunctorData& g, int ell) {
    if (!g.ring().is_field()) throw WrongRing("derived_limits: field coefficients required");
    if (ell < 1) throw PreconditionViolated("derived_limits: ell must be at least 1");
    if (ell > g.max_size())
        throw BudgetExceeded("derived_limits: ell exceeds the functor's size budget");

    // Every surjection between sizes <= ell, identities included, in a fixed
    // order; composable pairs index the degree-two cochains.
    struct Arrow {
        int src, dst;
        Surjection map;
    };
    std::vector<Arrow> arrows;
    std::map<std::pair<int, int>, std::vector<Surjection>> table;
    std::map<std::pair<int, int>, int> first_of;
    for (int a = 1; a <= ell; ++a)
        for (int b = 1; b <= a; ++b) {
            first_of[{a, b}] = int(arrows.size());
            auto& list = table[{a, b}];
            list = enumerate_surjections(a, b);
            for (const Surjection& s : list) arrows.push_back(Arrow{a, b, s});
        }
    const auto arrow_position = [&](const Surjection& s) -> int {
        const auto key = std::make_pair(s.source_size(), s.target_size());
        const auto& list = table.at(key);
        const auto it = std::lower_bound(
            list.begin(), list.end(), s,
            [](const Surjection& x, const Surjection& y) { return x.images() < y.images(); });
        assert(it != list.end() && *it == s);
        return first_of.at(key) + int(it - list.begin());
    };

    std::vector<int> obj_off(size_t(ell) + 1, 0);
    for (int a = 1; a <= ell; ++a) obj_off[size_t(a)] = obj_off[size_t(a) - 1] + g.rank(a);
    std::vector<int> arr_off{0};
    for (const Arrow& f : arrows) arr_off.push_back(arr_off.back() + g.rank(f.dst));

    const int c0_dim = obj_off.back();
    const int c1_dim = arr_off.back();
    const Scalar one = scalar_from_long(g.ring(), 1);

    // (d0 x)_f = G(f) x_src - x_dst
    KernelAccumulator d0(g.ring(), c0_dim);
    for (const Arrow& f : arrows) {
        const ExactMatrix& a = g.action(f.map);
        for (int r = 0; r < a.rows(); ++r) {
            std::vector<Scalar> row(size_t(c0_dim), Scalar(0));
            for (int c = 0; c < a.cols(); ++c) {
                const int col = obj_off[size_t(f.src) - 1] + c;
                row[size_t(col)] = ring_add(g.ring(), row[size_t(col)], a.at(r, c));
            }
            const int col = obj_off[size_t(f.dst) - 1] + r;
            row[size_t(col)] = ring_sub(g.ring(), row[size_t(col)], one);
            d0.add_row(std::move(row));
        }
    }
    const int rank_d0 = d0.rank();
    const int h0 = c0_dim - rank_d0;

    const LimitResult lim = limit_over_surjections(g, ell);
    if (h0 != lim.rank())
        throw std::logic_error("derived_limits: degree-zero rank disagrees with the limit");

    // (d1 y)_{(f, k)} = G(k) y_f - y_{k o f} + y_k over composable pairs.
    KernelAccumulator d1(g.ring(), c1_dim);
    for (size_t fi = 0; fi < arrows.size(); ++fi) {
        const Arrow& f = arrows[fi];
        for (size_t ki = 0; ki < arrows.size(); ++ki) {
            const Arrow& k = arrows[ki];
            if (k.src != f.dst) continue;
            const int composed = arrow_position(compose(k.map, f.map));
            const ExactMatrix& a = g.action(k.map);
            for (int r = 0; r < a.rows(); ++r) {
                std::vector<Scalar> row(size_t(c1_dim), Scalar(0));
                for (int c = 0; c < a.cols(); ++c) {
                    const int col = arr_off[fi] + c;
                    row[size_t(col)] = ring_add(g.ring(), row[size_t(col)], a.at(r, c));
                }
                int col = arr_off[size_t(composed)] + r;
                row[size_t(col)] = ring_sub(g.ring(), row[size_t(col)], one);
                col = arr_off[ki] + r;
                row[size_t(col)] = ring_add(g.ring(), row[size_t(col)], one);
                d1.add_row(std::move(row));
            }
        }
    }
    const int h1 = (c1_dim - d1.rank()) - rank_d0;
    return DerivedLimits{h0, h1};
}

}  // namespace excal
