#pragma once

#include <optional>
#include <string>
#include <vector>

#include "excal/functor_data.hpp"
#include "excal/hypercube.hpp"
#include "excal/matrix.hpp"

namespace excal {

// Limit of a pointed-set functor over the category of nonempty sizes 1..ell
// with surjections as the only maps.  Families live in the product of the
// values at sizes 1..ell; offsets[m-1] locates the size-m component and
// offsets[ell] is the ambient dimension.  The basis columns span the
// compatible families -- over Z a basis of the saturated lattice, so integral
// families are exactly the integral combinations.  comparison is the matrix
// of the canonical map to the value at the basepoint-only object: project a
// family to its size-1 component and collapse the one point.
struct LimitResult {
    RingSpec ring;
    int ell = 0;
    std::vector<int> offsets;
    ExactMatrix basis;        // ambient x limit rank
    ExactMatrix comparison;   // rank g(0) x limit rank

    int rank() const { return basis.cols(); }
};

// The kernel is assembled from a generating set of surjections (adjacent
// transpositions and single merges); the returned basis is then certified
// against the constraint of every surjection between sizes <= ell, so the
// full compatibility invariant holds by direct check.
LimitResult limit_over_surjections(const FunctorData& g, int ell);

// Matrix of the canonical map lim_{<=ell} -> lim_{<=ell_prime} in the bases
// computed by limit_over_surjections: truncate each basis family to sizes
// <= ell_prime and re-express it in the smaller limit's basis.
ExactMatrix restriction_map(const FunctorData& g, int ell, int ell_prime);

struct VanishingVerdict {
    bool holds = false;
    int limit_rank = 0;
    int target_rank = 0;       // rank of the value at the basepoint-only object
    // A compatible family annihilated by the comparison map, when one exists.
    std::optional<ExactMatrix> witness;
    std::string detail;
};

// Asserts that the comparison map of limit_over_surjections(g, ell) is an
// isomorphism onto the value at size 0.  Requires degree(g) <= n and
// n + 2 <= ell <= max size; throws PreconditionViolated otherwise.
VanishingVerdict check_vanishing(const FunctorData& g, int n, int ell);

// The compatible family for ind_constant(ring, N) that the comparison map
// kills: a single unit in the last (S = [m]) coordinate of every size
// m = 1..ell, zero elsewhere.  The layout matches the ambient product of
// limit_over_surjections for any N >= ell.
ExactMatrix counterexample_family(const RingSpec& ring, int ell);

// Limit of g over a downward-closed set of vertices of a hypercube diagram
// (every mask obtained by clearing a bit of a listed mask is listed too).
// Compatibility is imposed along the covering arrows, which generate all
// arrows of the sub-poset; offsets follow the masks in ascending order.
struct CubeLimit {
    RingSpec ring;
    std::vector<unsigned> masks;
    std::vector<int> offsets;   // one entry per mask plus the ambient total
    ExactMatrix basis;          // ambient x rank

    int rank() const { return basis.cols(); }
};

CubeLimit limit_over_cube_vertices(const FunctorData& g, const HypercubeDiagram& cube,
                                   std::vector<unsigned> masks);

// The map from the value at the full vertex of the cube into the punctured
// cube's limit is an isomorphism.
bool is_weakly_cartesian(const FunctorData& g, const HypercubeSpec& spec);

// Every hypercube with more than n blocks and total size within the functor's
// budget is weakly cartesian; block size lists are enumerated as ordered
// compositions.
bool is_n_excisive(const FunctorData& g, int n);

struct TruncatedCubeLimit {
    CubeLimit limit;
    ExactMatrix comparison;   // limit coordinates of the map from the full vertex
    bool iso = false;
};

// Limit over the vertices with at most h blocks present, together with the
// canonical map from the value at the full vertex.  With h equal to the block
// count the full vertex itself sits initially in the index poset, so the map
// is an isomorphism for every functor.
TruncatedCubeLimit truncated_cube_limit(const FunctorData& g, const HypercubeSpec& spec, int h);

// Free-floating values and maps on the vertices of the (1,...,1) hypercube
// with at most two blocks present.  Pairs {i < j} are listed in
// lexicographic order; pair_to_first[p] maps the pair value to the value at
// {i}, pair_to_second[p] to the value at {j}, and to_empty[i-1] maps the
// singleton value to the value at the empty vertex.
struct SkeletonData {
    RingSpec ring;
    int block_count = 0;
    int empty_rank = 0;
    std::vector<int> singleton_ranks;
    std::vector<int> pair_ranks;
    std::vector<ExactMatrix> to_empty;
    std::vector<ExactMatrix> pair_to_first;
    std::vector<ExactMatrix> pair_to_second;
};

// Position of the pair {i < j} in the lexicographic listing of pairs of [n].
int pair_index(int n, int i, int j);

// The restriction of g to the height-<= 2 part of the (1,...,1) cube with n
// blocks.
SkeletonData skeleton_of(const FunctorData& g, int n);

struct Reconstruction {
    int rank = 0;
    std::vector<int> offsets;   // empty vertex, singletons, then pairs
    ExactMatrix basis;          // ambient x rank
};

// Limit of the skeleton diagram.  Shapes are validated and the
// singleton/pair squares must commute; throws InconsistentSkeleton naming
// the first violated square otherwise.  Requires at least three blocks.
Reconstruction cube_reconstruct(const SkeletonData& skeleton);

struct ReconstructionCheck {
    Reconstruction reconstruction;
    ExactMatrix comparison;   // reconstruction coordinates of the map from g(size n)
    bool iso = false;
};

// Reconstructs from the skeleton of g itself and certifies whether the
// canonical map from g(size n) to the reconstruction is an isomorphism --
// true exactly when no primitive part of g above size 2 reaches size n.
ReconstructionCheck cube_reconstruct_certified(const FunctorData& g, int n);

struct DerivedLimits {
    int h0 = 0;
    int h1 = 0;
};

// Degree-0 and degree-1 cohomology of the nerve of the truncated surjection
// category with coefficients in g: cochains are indexed by objects, by
// morphisms, and by composable pairs (identities included).  Field rings
// only; throws WrongRing for Z.  The degree-0 rank is checked against
// limit_over_surjections before returning.
DerivedLimits derived_limits(const FunctorData& g, int ell);

}  // namespace excal
