#pragma once

#include <cstdint>
#include <random>

#include "excal/functor_ops.hpp"

namespace excal {

// Rank one concentrated at size k, where permutations act trivially or by
// sign.  The empty-support variant is k = 0.
SurjFunctorData character_surj_functor(RingSpec ring, int max_size, int k, bool sign_twist);

// Linearization of the surjections out of a fixed k-element set: rank at
// size m is m! S(k, m), and a surjection acts by postcomposition on the
// basis.  Concentrated in sizes 1..k.
SurjFunctorData corep_surj_functor(RingSpec ring, int max_size, int k);

// Same functor with every value above size cutoff replaced by zero; always
// functorial because surjections never increase the size.
SurjFunctorData truncate_surj_functor(const SurjFunctorData& f, int cutoff);

// Product of a unit lower and a unit upper triangular matrix with small
// entries; determinant 1 over every ring.
ExactMatrix random_unimodular(const RingSpec& ring, int n, std::mt19937_64& rng);

struct RandomFunctorOptions {
    int max_size = 4;
    int max_rank = 3;          // cap on the surjection-level rank at each size
    int degree_cap = -1;       // restrict support to sizes <= cap when >= 0
    bool allow_size_zero = true;
    bool conjugate_values = true;
    int max_atoms = 3;
};

// Seeded direct sum of the atoms above (with random truncations), conjugated
// by random unimodular changes of basis.  Identical seeds give identical
// functors on every platform; the generator only draws through mt19937_64.
SurjFunctorData random_surj_functor(const RingSpec& ring, std::uint64_t seed,
                                    const RandomFunctorOptions& opt);

// ind of a random surjection functor, conjugated at the pointed-set level.
// With degree_cap = n the result has degree at most n.
FunctorData random_functor(const RingSpec& ring, std::uint64_t seed,
                           const RandomFunctorOptions& opt);

}  // namespace excal
