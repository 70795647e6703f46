#pragma once

#include <string>
#include <vector>

#include "excal/errors.hpp"

namespace excal {

// Pointed finite sets are kept skeletal: the object of "size m" is
// {*} u {1, ..., m}, and a map is recorded by the images of 1..m, with 0
// standing for the basepoint.  Maps always preserve the basepoint, so only
// the non-base part is stored.

// Enumerations refuse to run above this size: (m'+1)^m map tables stop being
// enumerable very quickly.
inline constexpr int kSizeBudget = 6;

class PointedMap {
  public:
    PointedMap(int source_size, int target_size, std::vector<int> images);
    static PointedMap identity(int m);

    int source_size() const { return source_size_; }
    int target_size() const { return target_size_; }
    const std::vector<int>& images() const { return images_; }
    // 1-based element of the source; returns 0 for the basepoint image.
    int image_of(int i) const { return images_[size_t(i) - 1]; }

    // Position in the lexicographic enumeration of all maps with these sizes.
    long lex_index() const;

    bool operator==(const PointedMap& other) const = default;
    std::string to_string() const;

  private:
    int source_size_, target_size_;
    std::vector<int> images_;
};

// g after f; throws DimensionMismatch unless sizes line up.
PointedMap compose(const PointedMap& g, const PointedMap& f);

// A surjection of non-based parts: images hit every element of [m'] and never
// the basepoint.  These are the arrows of the surjection category; identity
// maps and permutations are the special case m = m'.
class Surjection {
  public:
    Surjection(int source_size, int target_size, std::vector<int> images);
    static Surjection identity(int m);

    int source_size() const { return source_size_; }
    int target_size() const { return target_size_; }
    const std::vector<int>& images() const { return images_; }
    int image_of(int i) const { return images_[size_t(i) - 1]; }

    // The same map seen in the ambient pointed-set category.
    PointedMap as_pointed_map() const { return PointedMap(source_size_, target_size_, images_); }

    bool operator==(const Surjection& other) const = default;
    std::string to_string() const;

  private:
    int source_size_, target_size_;
    std::vector<int> images_;
};

Surjection compose(const Surjection& g, const Surjection& f);

// Section and retraction attached to a subset S of [m].  phi_map embeds
// {*} u S (renumbered order-preservingly as [|S|]) into {*} u [m]; psi_map
// fixes S and sends everything else to the basepoint.  psi o phi = id.
PointedMap phi_map(const std::vector<int>& subset, int m);
PointedMap psi_map(const std::vector<int>& subset, int m);

// All pointed maps [m] -> [m'] in lexicographic order of their image lists,
// starting from the constant basepoint map.
std::vector<PointedMap> enumerate_pointed_maps(int m, int target);

// All surjections [m] ->> [m'] in lexicographic order; empty when m < m'
// (or m' = 0 != m).  Count is m'! * S(m, m').
std::vector<Surjection> enumerate_surjections(int m, int target);

// [d+1] ->> [d] by i -> min(i, d): images (1, 2, ..., d, d).
Surjection collapse_map(int d);

// Smash product f ^ g on non-based parts [m1] x [m2], linearized
// lexicographically: (i, j) -> (i-1)*m2 + j.  A pair dies iff either
// coordinate dies.
PointedMap smash(const PointedMap& f, const PointedMap& g);

// Wedge f v g on [m1] + [m2], first block first.
PointedMap wedge(const PointedMap& f, const PointedMap& g);

// All subsets of [m], ordered by cardinality and lexicographically inside
// each cardinality; the order every direct-sum decomposition indexes by.
const std::vector<std::vector<int>>& subset_order(int m);

// Position of a subset inside subset_order(m).
size_t subset_index(int m, const std::vector<int>& subset);

// Inverse of PointedMap::lex_index for the given sizes.
PointedMap pointed_map_from_index(int m, int target, long index);

// Checks 1 <= s_1 < s_2 < ... <= m; throws SubsetOutOfRange otherwise.
void require_subset(const std::vector<int>& subset, int m, const char* where);

}  // namespace excal
