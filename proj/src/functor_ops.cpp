#include "excal/functor_ops.hpp"

#include <algorithm>
#include <memory>
#include <string>

#include "excal/errors.hpp"

namespace excal {

namespace {

std::vector<int> complement_of(int i, int m) {
    std::vector<int> out;
    for (int j = 1; j <= m; ++j)
        if (j != i) out.push_back(j);
    return out;
}

// positions (1-based) of inner's elements inside outer; both ascending
std::vector<int> relative_subset(const std::vector<int>& inner, const std::vector<int>& outer) {
    std::vector<int> rel;
    for (int x : inner) {
        auto it = std::lower_bound(outer.begin(), outer.end(), x);
        rel.push_back(int(it - outer.begin()) + 1);
    }
    return rel;
}

void paste_block(ExactMatrix& out, const ExactMatrix& block, int row0, int col0) {
    for (int i = 0; i < block.rows(); ++i)
        for (int j = 0; j < block.cols(); ++j)
            if (!scalar_is_zero(block.at(i, j))) out.at(row0 + i, col0 + j) = block.at(i, j);
}

ExactMatrix primitive_space(const FunctorData& g, int m) {
    if (m == 0) return ExactMatrix::identity(g.ring(), g.rank(0));
    std::vector<ExactMatrix> retractions;
    for (int i = 1; i <= m; ++i) retractions.push_back(g.action(psi_map(complement_of(i, m), m)));
    return intersect_kernels(g.ring(), g.rank(m), retractions);
}

class IndProvider : public ActionProvider {
  public:
    explicit IndProvider(SurjFunctorData inner) : inner_(std::move(inner)) {}

    ExactMatrix compute(const PointedMap& f) const override {
        const int m = f.source_size(), t = f.target_size();
        const std::vector<int> src_off = ind_offsets(inner_, m);
        const std::vector<int> tgt_off = ind_offsets(inner_, t);
        const auto& src_subsets = subset_order(m);
        ExactMatrix out(inner_.ring(), tgt_off.back(), src_off.back());
        for (size_t si = 0; si < src_subsets.size(); ++si) {
            const auto& s = src_subsets[si];
            if (inner_.rank(int(s.size())) == 0) continue;
            bool dies = false;
            std::vector<int> image;
            for (int x : s) {
                const int v = f.image_of(x);
                if (v == 0) {
                    dies = true;
                    break;
                }
                image.push_back(v);
            }
            if (dies) continue;
            std::vector<int> target_subset = image;
            std::sort(target_subset.begin(), target_subset.end());
            target_subset.erase(std::unique(target_subset.begin(), target_subset.end()),
                                target_subset.end());
            const std::vector<int> induced = relative_subset(image, target_subset);
            const ExactMatrix& block = inner_.action(
                Surjection(int(s.size()), int(target_subset.size()), induced));
            paste_block(out, block, tgt_off[subset_index(t, target_subset)], src_off[si]);
        }
        return out;
    }

  private:
    SurjFunctorData inner_;
};

class ConstantProvider : public ActionProvider {
  public:
    ConstantProvider(RingSpec ring, int rank) : ring_(ring), rank_(rank) {}
    ExactMatrix compute(const PointedMap&) const override {
        return ExactMatrix::identity(ring_, rank_);
    }

  private:
    RingSpec ring_;
    int rank_;
};

class DirectSumProvider : public ActionProvider {
  public:
    DirectSumProvider(FunctorData a, FunctorData b) : a_(std::move(a)), b_(std::move(b)) {}
    ExactMatrix compute(const PointedMap& f) const override {
        return direct_sum(a_.action(f), b_.action(f));
    }

  private:
    FunctorData a_, b_;
};

class ConjugateProvider : public ActionProvider {
  public:
    ConjugateProvider(FunctorData base, std::vector<ExactMatrix> change,
                      std::vector<ExactMatrix> change_inv)
        : base_(std::move(base)), change_(std::move(change)), change_inv_(std::move(change_inv)) {}
    ExactMatrix compute(const PointedMap& f) const override {
        return multiply(change_[size_t(f.target_size())],
                        multiply(base_.action(f), change_inv_[size_t(f.source_size())]));
    }

  private:
    FunctorData base_;
    std::vector<ExactMatrix> change_, change_inv_;
};

class SubProvider : public ActionProvider {
  public:
    SubProvider(FunctorData parent, std::vector<ExactMatrix> embed)
        : parent_(std::move(parent)), embed_(std::move(embed)) {}
    ExactMatrix compute(const PointedMap& f) const override {
        const ExactMatrix pushed =
            multiply(parent_.action(f), embed_[size_t(f.source_size())]);
        auto x = solve(embed_[size_t(f.target_size())], pushed);
        if (!x)
            throw PreconditionViolated("subfunctor: action leaves the subspace at " + f.to_string());
        return *x;
    }

  private:
    FunctorData parent_;
    std::vector<ExactMatrix> embed_;
};

class QuotProvider : public ActionProvider {
  public:
    QuotProvider(FunctorData parent, std::vector<ExactMatrix> project,
                 std::vector<ExactMatrix> section)
        : parent_(std::move(parent)), project_(std::move(project)), section_(std::move(section)) {}
    ExactMatrix compute(const PointedMap& f) const override {
        return multiply(project_[size_t(f.target_size())],
                        multiply(parent_.action(f), section_[size_t(f.source_size())]));
    }

  private:
    FunctorData parent_;
    std::vector<ExactMatrix> project_, section_;
};

}  // namespace

// --- induced functors -------------------------------------------------------

std::vector<int> ind_offsets(const SurjFunctorData& f, int m) {
    const auto& subsets = subset_order(m);
    std::vector<int> off(subsets.size() + 1, 0);
    for (size_t k = 0; k < subsets.size(); ++k)
        off[k + 1] = off[k] + f.rank(int(subsets[k].size()));
    return off;
}

FunctorData ind(const SurjFunctorData& f, int max_size) {
    if (max_size > f.max_size())
        throw PreconditionViolated("ind: inner functor stops at size " +
                                   std::to_string(f.max_size()));
    std::vector<int> ranks;
    for (int m = 0; m <= max_size; ++m) ranks.push_back(ind_offsets(f, m).back());
    return FunctorData(f.ring(), max_size, std::move(ranks), std::make_shared<IndProvider>(f));
}

// --- primitives and the decomposition ---------------------------------------

PrimData prim(const FunctorData& g) {
    const int n = g.max_size();
    std::vector<ExactMatrix> embed;
    std::vector<int> ranks;
    for (int m = 0; m <= n; ++m) {
        embed.push_back(primitive_space(g, m));
        ranks.push_back(embed.back().cols());
    }
    SurjFunctorData p(g.ring(), n, std::move(ranks), [&](const Surjection& s) {
        const ExactMatrix pushed = multiply(g.action(s), embed[size_t(s.source_size())]);
        auto x = solve(embed[size_t(s.target_size())], pushed);
        if (!x)
            throw PreconditionViolated(
                "prim: action does not preserve the primitive part under " +
                s.as_pointed_map().to_string());
        return *x;
    });
    return {std::move(p), std::move(embed)};
}

Decomposition decompose(const FunctorData& g) {
    PrimData p = prim(g);
    FunctorData induced = ind(p.functor, g.max_size());
    std::vector<ExactMatrix> iso;
    for (int m = 0; m <= g.max_size(); ++m) {
        std::vector<ExactMatrix> blocks;
        for (const auto& s : subset_order(m))
            blocks.push_back(multiply(g.action(phi_map(s, m)), p.embed[s.size()]));
        ExactMatrix c = hstack(blocks, g.ring(), g.rank(m));
        if (!is_invertible(c))
            throw PreconditionViolated("decompose: comparison at size " + std::to_string(m) +
                                       " is not invertible over " + g.ring().name());
        iso.push_back(std::move(c));
    }
    return {std::move(p), std::move(induced), std::move(iso)};
}

// --- degree -----------------------------------------------------------------

int degree(const FunctorData& g) {
    for (int m = g.max_size(); m >= 1; --m)
        if (primitive_space(g, m).cols() > 0) return m;
    return 0;
}

bool degree_le_joint_image(const FunctorData& g, int n) {
    for (int m = n + 1; m <= g.max_size(); ++m) {
        std::vector<ExactMatrix> sections;
        for (int i = 1; i <= m; ++i)
            sections.push_back(g.action(phi_map(complement_of(i, m), m)));
        if (!is_surjective(hstack(sections, g.ring(), g.rank(m)))) return false;
    }
    return true;
}

bool degree_le_kernel_meet(const FunctorData& g, int n) {
    for (int m = n + 1; m <= g.max_size(); ++m)
        if (primitive_space(g, m).cols() != 0) return false;
    return true;
}

bool degree_le_equalizer(const FunctorData& g, int n) {
    const RingSpec ring = g.ring();
    for (int m = n + 1; m <= g.max_size(); ++m) {
        std::vector<ExactMatrix> restriction_blocks;
        for (int i = 1; i <= m; ++i)
            restriction_blocks.push_back(g.action(psi_map(complement_of(i, m), m)));
        const ExactMatrix f = vstack(restriction_blocks, ring, g.rank(m));
        if (kernel_basis(f).cols() != 0) return false;

        // difference of the two further restrictions, one row block per i < j
        const int small = m >= 2 ? g.rank(m - 2) : 0;
        const int mid = g.rank(m - 1);
        const int pairs = m * (m - 1) / 2;
        ExactMatrix diff(ring, pairs * small, m * mid);
        int pair_row = 0;
        for (int i = 1; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) {
                const std::vector<int> both = [&] {
                    std::vector<int> out;
                    for (int x = 1; x <= m; ++x)
                        if (x != i && x != j) out.push_back(x);
                    return out;
                }();
                const ExactMatrix via_i =
                    g.action(psi_map(relative_subset(both, complement_of(i, m)), m - 1));
                const ExactMatrix via_j =
                    g.action(psi_map(relative_subset(both, complement_of(j, m)), m - 1));
                paste_block(diff, via_i, pair_row * small, (i - 1) * mid);
                ExactMatrix negated = scale(via_j, scalar_from_long(ring, -1));
                for (int r = 0; r < negated.rows(); ++r)
                    for (int c = 0; c < negated.cols(); ++c)
                        diff.set(pair_row * small + r, (j - 1) * mid + c,
                                 ring_add(ring, diff.at(pair_row * small + r, (j - 1) * mid + c),
                                          negated.at(r, c)));
                ++pair_row;
            }
        if (!multiply(diff, f).is_zero()) return false;
        if (!solve(f, kernel_basis(diff))) return false;
    }
    return true;
}

bool degree_le_primitives(const FunctorData& g, int n) {
    const PrimData p = prim(g);
    for (int m = n + 1; m <= g.max_size(); ++m)
        if (p.functor.rank(m) != 0) return false;
    return true;
}

// --- kernels and cokernels --------------------------------------------------

SubFunctor nat_kernel(const NatTransform& t) {
    const int n = t.source().max_size();
    std::vector<ExactMatrix> embed;
    std::vector<int> ranks;
    for (int m = 0; m <= n; ++m) {
        embed.push_back(kernel_basis(t.component(m)));
        ranks.push_back(embed.back().cols());
    }
    FunctorData k(t.source().ring(), n, std::move(ranks),
                  std::make_shared<SubProvider>(t.source(), embed));
    return {std::move(k), std::move(embed)};
}

QuotFunctor nat_cokernel(const NatTransform& t) {
    const int n = t.target().max_size();
    const RingSpec ring = t.target().ring();
    std::vector<ExactMatrix> project, section;
    std::vector<int> ranks;
    for (int m = 0; m <= n; ++m) {
        const ExactMatrix& tau = t.component(m);
        if (ring.kind() == RingKind::integers) {
            const SmithForm s = smith_normal_form(tau);
            for (int i = 0; i < s.rank; ++i)
                if (s.d.at(i, i) != 1)
                    throw NonFreeCokernel("cokernel at size " + std::to_string(m) +
                                          " has torsion: invariant factor " +
                                          scalar_to_string(s.d.at(i, i)));
            project.push_back(s.u_inv.submatrix(s.rank, tau.rows(), 0, tau.rows()));
            section.push_back(s.u.submatrix(0, tau.rows(), s.rank, tau.rows()));
        } else {
            const ExactMatrix pi = kernel_basis(tau.transpose()).transpose();
            project.push_back(pi);
            auto sigma = solve(pi, ExactMatrix::identity(ring, pi.rows()));
            section.push_back(*sigma);  // pi has full row rank, always solvable
        }
        ranks.push_back(project.back().rows());
    }
    FunctorData q(ring, n, std::move(ranks),
                  std::make_shared<QuotProvider>(t.target(), project, section));
    return {std::move(q), std::move(project), std::move(section)};
}

// --- building blocks --------------------------------------------------------

FunctorData constant_functor(RingSpec ring, int max_size, int rank) {
    return FunctorData(ring, max_size, std::vector<int>(size_t(max_size) + 1, rank),
                       std::make_shared<ConstantProvider>(ring, rank));
}

SurjFunctorData constant_surj_functor(RingSpec ring, int max_size, bool include_empty) {
    std::vector<int> ranks(size_t(max_size) + 1, 1);
    if (!include_empty) ranks[0] = 0;
    return SurjFunctorData(ring, max_size, std::move(ranks), [&](const Surjection& s) {
        return ExactMatrix::identity(ring, s.target_size() >= 1 ? 1 : (include_empty ? 1 : 0));
    });
}

FunctorData ind_constant(RingSpec ring, int max_size) {
    return ind(constant_surj_functor(ring, max_size, false), max_size);
}

FunctorData direct_sum(const FunctorData& a, const FunctorData& b) {
    if (a.ring() != b.ring()) throw WrongRing("direct_sum: rings differ");
    if (a.max_size() != b.max_size())
        throw PreconditionViolated("direct_sum: max sizes differ");
    std::vector<int> ranks;
    for (int m = 0; m <= a.max_size(); ++m) ranks.push_back(a.rank(m) + b.rank(m));
    return FunctorData(a.ring(), a.max_size(), std::move(ranks),
                       std::make_shared<DirectSumProvider>(a, b));
}

SurjFunctorData direct_sum(const SurjFunctorData& a, const SurjFunctorData& b) {
    if (a.ring() != b.ring()) throw WrongRing("direct_sum: rings differ");
    if (a.max_size() != b.max_size())
        throw PreconditionViolated("direct_sum: max sizes differ");
    std::vector<int> ranks;
    for (int m = 0; m <= a.max_size(); ++m) ranks.push_back(a.rank(m) + b.rank(m));
    return SurjFunctorData(a.ring(), a.max_size(), std::move(ranks), [&](const Surjection& s) {
        return direct_sum(a.action(s), b.action(s));
    });
}

FunctorData conjugate(const FunctorData& g, const std::vector<ExactMatrix>& change) {
    if (int(change.size()) != g.max_size() + 1)
        throw PreconditionViolated("conjugate: need one change of basis per size");
    std::vector<ExactMatrix> inv;
    for (int m = 0; m <= g.max_size(); ++m) {
        if (change[size_t(m)].rows() != g.rank(m) || change[size_t(m)].cols() != g.rank(m))
            throw DimensionMismatch("conjugate: change of basis at size " + std::to_string(m));
        inv.push_back(inverse(change[size_t(m)]));
    }
    return FunctorData(g.ring(), g.max_size(), g.ranks(),
                       std::make_shared<ConjugateProvider>(g, change, std::move(inv)));
}

SurjFunctorData conjugate(const SurjFunctorData& f, const std::vector<ExactMatrix>& change) {
    if (int(change.size()) != f.max_size() + 1)
        throw PreconditionViolated("conjugate: need one change of basis per size");
    std::vector<ExactMatrix> inv;
    for (int m = 0; m <= f.max_size(); ++m) {
        if (change[size_t(m)].rows() != f.rank(m) || change[size_t(m)].cols() != f.rank(m))
            throw DimensionMismatch("conjugate: change of basis at size " + std::to_string(m));
        inv.push_back(inverse(change[size_t(m)]));
    }
    return SurjFunctorData(f.ring(), f.max_size(), f.ranks(), [&](const Surjection& s) {
        return multiply(change[size_t(s.target_size())],
                        multiply(f.action(s), inv[size_t(s.source_size())]));
    });
}

}  // namespace excal
