#pragma once

#include <vector>

#include "excal/functor_data.hpp"

namespace excal {

// Induced pointed-set functor of a surjection functor f: value at size m is
// the direct sum of f(|S|) over all subsets S of [m] in subset_order, and a
// pointed map acts blockwise through the surjections it induces on surviving
// subsets.  Requires f.max_size() >= max_size.
FunctorData ind(const SurjFunctorData& f, int max_size);

// Offsets of the blocks of ind(f) at size m, following subset_order(m); the
// last entry is the total rank.
std::vector<int> ind_offsets(const SurjFunctorData& f, int m);

// Primitive part of a pointed-set functor: at size m >= 1 the intersection of
// the kernels of the m retractions onto the maximal proper subsets, at size 0
// the whole value.  embed[m] is a basis of that subspace (over Z: of the
// saturated sublattice) inside g(m); the surjection action is computed by
// solving through the embeddings.
struct PrimData {
    SurjFunctorData functor;
    std::vector<ExactMatrix> embed;
};
PrimData prim(const FunctorData& g);

// Natural isomorphism ind(prim(g)) -> g.  iso[m] assembles the sections
// g(phi_S) applied to the primitive embeddings, one block per subset; the
// constructor-level checks guarantee blocks, naturality is the caller's to
// verify where needed.  Throws PreconditionViolated when some iso[m] fails to
// be invertible over the ring, which does not happen for valid functors.
struct Decomposition {
    PrimData primitives;
    FunctorData induced;
    std::vector<ExactMatrix> iso;
};
Decomposition decompose(const FunctorData& g);

// Largest size 1..max_size with nonvanishing primitive part, 0 when none.
int degree(const FunctorData& g);

// Four characterisations of "degree at most n", equivalent on valid functors:
// the sections from the maximal proper subsets jointly hit g(m); the
// retractions to the maximal proper subsets have no common kernel; the
// retraction tuple embeds g(m) as the equalizer of the two further
// restriction maps; the primitive functor vanishes above n.
bool degree_le_joint_image(const FunctorData& g, int n);
bool degree_le_kernel_meet(const FunctorData& g, int n);
bool degree_le_equalizer(const FunctorData& g, int n);
bool degree_le_primitives(const FunctorData& g, int n);

// Kernel of a natural transformation, as a functor with embeddings into the
// source values.  Free over every ring (kernels of maps of free modules over
// the rings here are free and saturated).
struct SubFunctor {
    FunctorData functor;
    std::vector<ExactMatrix> embed;
};
SubFunctor nat_kernel(const NatTransform& t);

// Cokernel of a natural transformation.  project[m] presents the quotient of
// the target value, section[m] is a right inverse of project[m].  Over Z the
// quotient must be free; otherwise NonFreeCokernel is thrown naming the
// offending invariant factor.
struct QuotFunctor {
    FunctorData functor;
    std::vector<ExactMatrix> project;
    std::vector<ExactMatrix> section;
};
QuotFunctor nat_cokernel(const NatTransform& t);

// Constant functor: every value R^rank, every action the identity.
FunctorData constant_functor(RingSpec ring, int max_size, int rank);

// Rank one at every size >= 1 (and at 0 when include_empty), all actions 1.
SurjFunctorData constant_surj_functor(RingSpec ring, int max_size, bool include_empty);

// ind of the rank-one-on-nonempty surjection functor: rank 2^m - 1 at size m,
// zero at the basepoint-only object.
FunctorData ind_constant(RingSpec ring, int max_size);

FunctorData direct_sum(const FunctorData& a, const FunctorData& b);
SurjFunctorData direct_sum(const SurjFunctorData& a, const SurjFunctorData& b);

// Change of basis: value at m becomes change[m] * g(f) * change[m]^{-1}.
// Every change[m] must be invertible over the ring (over Z: unimodular).
FunctorData conjugate(const FunctorData& g, const std::vector<ExactMatrix>& change);
SurjFunctorData conjugate(const SurjFunctorData& f, const std::vector<ExactMatrix>& change);

}  // namespace excal
