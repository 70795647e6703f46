#pragma once

#include <vector>

#include "excal/pointed_maps.hpp"

namespace excal {

// Block sizes (I_b)_{b in B} of a wedge-of-blocks hypercube; every block is a
// nonempty finite set recorded by its size.
struct HypercubeSpec {
    std::vector<int> block_sizes;

    int block_count() const { return int(block_sizes.size()); }
    int total_size() const;
    bool operator==(const HypercubeSpec& other) const = default;
    std::string to_string() const;
};

// The |B|-dimensional diagram whose vertex at B' (a subset of blocks, encoded
// as a bitmask) is the wedge of the blocks in B', and whose arrow B1 -> B2
// for B2 inside B1 collapses the blocks of B1 \ B2 to the basepoint.  The
// union of all blocks is linearized block by block, each block keeping its
// internal order; a vertex renumbers its surviving slots order-preservingly.
// All squares commute by construction; the constructor re-checks this.
class HypercubeDiagram {
  public:
    explicit HypercubeDiagram(HypercubeSpec spec);

    const HypercubeSpec& spec() const { return spec_; }
    int block_count() const { return spec_.block_count(); }
    unsigned full_mask() const { return (1u << block_count()) - 1; }

    int vertex_size(unsigned mask) const;
    // Global slot numbers alive at the vertex, ascending.
    std::vector<int> vertex_elements(unsigned mask) const;
    // The collapse map from vertex `from` to vertex `to`; `to` must be a
    // subset of `from`.
    PointedMap arrow(unsigned from, unsigned to) const;

  private:
    HypercubeSpec spec_;
    std::vector<int> offsets_;  // block b occupies slots offsets_[b]+1 .. offsets_[b+1]
};

}  // namespace excal
