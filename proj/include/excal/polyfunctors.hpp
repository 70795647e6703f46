#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "excal/functor_data.hpp"
#include "excal/hypercube.hpp"
#include "excal/ring.hpp"

namespace excal {

// Monomial in the variables x_{c,i}: c in [n] is the coordinate batch, i the
// slot of the finite set.  Exponents are stored sparsely with values >= 1;
// an empty map is the monomial 1.
struct Monomial {
    std::map<std::pair<int, int>, int> exponents;

    int degree() const;
    // Sorted distinct slots i carrying a live variable.
    std::vector<int> slots() const;
    bool operator==(const Monomial& other) const = default;
    bool operator<(const Monomial& other) const { return exponents < other.exponents; }
    std::string to_string() const;
};

// All exponent vectors over `vars` slots with total degree exactly d, in
// descending lexicographic order.  Degree 0 gives the single empty monomial;
// vars = 0 with d >= 1 gives nothing.
std::vector<std::vector<int>> monomial_exponents(int vars, int d);

// Homogeneous polynomial functions of degree d on n-jets: the value at size
// m is the free module on degree-d monomials in x_{c,i}, c in [n], i in [m],
// flattened block-major (position (c-1)m + (i-1)) and listed in descending
// lexicographic order.  A pointed map acts by the substitution
// x_{c,i} -> x_{c,f(i)}, killing the monomial when a used slot dies, so every
// action matrix is a partial permutation of the bases.
FunctorData build_P(const RingSpec& ring, int n, int d, int max_size);

// Direct sum of build_P over degrees 0..d, ascending: polynomial functions
// of degree at most d.  Rank at size m is C(nm + d, d).
FunctorData build_P_le(const RingSpec& ring, int n, int d, int max_size);

// One basis monomial of the full-wedge value of build_P, followed through a
// block hypercube.  The monomial survives at exactly the vertices containing
// its support blocks, with identity transitions between survivors; `present`
// is that indicator, indexed by vertex bitmask.
struct MonomialOrbit {
    Monomial monomial;
    std::vector<int> support;      // blocks (1-based) whose slots occur in the monomial
    std::vector<char> present;     // one entry per vertex mask 0..2^blocks-1
    bool squares_cartesian = false;
    bool high_faces_weakly_cartesian = false;
};

// Per-monomial decomposition of build_P(ring, n, d, total) over the block
// hypercube of `spec`, with every structural claim re-checked against the
// actual action matrices.  `identity_transitions` certifies that every arrow
// of the diagram is the claimed partial permutation, column by column, which
// makes the diagram the direct sum of the orbits; `reassembles` re-counts the
// ranks.  A two-face of an orbit fails the direct cartesian rank check
// exactly when it drops two distinct support blocks at once (the corner
// keeps the monomial, all three other vertices lose it), so
// `squares_cartesian` holds for an orbit precisely when its support has at
// most one block.  Faces of dimension above d always pass the weak check:
// the survivor region of the punctured face is an interval with a minimum,
// so its limit is one copy of the ground ring.
struct OrbitDecomposition {
    int n = 0;
    int d = 0;
    HypercubeSpec spec;
    std::vector<MonomialOrbit> orbits;
    bool reassembles = false;        // per-vertex orbit counts match build_P ranks
    bool supports_proper = false;    // every support misses some block
    bool identity_transitions = false;
    bool all_squares_cartesian = false;
    bool high_faces_weakly_cartesian = false;
    bool weakly_cartesian = false;   // rank-level check on the whole diagram
    std::string failing_square;      // one failing two-face, when any orbit has one
};

OrbitDecomposition monomial_orbit_decomposition(const RingSpec& ring, int n, int d,
                                                const HypercubeSpec& spec);

// Symmetric polynomial in a handful of variables, kept as an exact
// coefficient map.  Variables print as x, y, z, w.
struct SymPoly {
    RingSpec ring;
    int vars = 0;
    int degree = 0;
    std::map<Monomial, Scalar> coefficients;

    bool is_zero() const { return coefficients.empty(); }
    Scalar coefficient(const Monomial& m) const;
    void add_term(const std::vector<int>& exponents, const Scalar& c);
    // x_i -> x_{images[i-1]} into `target_vars` variables; images are 1-based.
    SymPoly substitute(const std::vector<int>& images, int target_vars) const;
    bool is_symmetric() const;
    std::string to_string() const;
};

// Oracle for the three-variable implication: among symmetric homogeneous
// degree-d f(x, y, z) whose fold f(x, x, y) is again symmetric, must the
// diagonal f(x, x, x) vanish?  Assembles the constrained space exactly and
// evaluates the diagonal functional on a basis.
struct SymPolyVerdict {
    bool zero_map = false;
    int space_rank = 0;
    std::optional<SymPoly> witness;           // f with nonzero diagonal, when any
    std::optional<SymPoly> witness_folded;    // f(x, x, y)
    std::optional<SymPoly> witness_diagonal;  // f(x, x, x)
};

// Ring must be Q or a prime field; cap = 0 means the default bound (12 over
// Q, p + 3 over F_p).  Throws WrongRing over Z, BudgetExceeded above the cap.
SymPolyVerdict sym_poly_implication(const RingSpec& ring, int d, int cap = 0);

// The degree-p counterexample over F_p to the three-variable implication:
// f = xyz(x^{p-3} + y^{p-3} + z^{p-3}
//         + ((p+1)/2) sum_cyc(x^{p-4}y + ... + xy^{p-4})).
// The fold comes out as x^{p-2}y^2 + x^{p-3}y^3 + ... + x^2y^{p-2}, which is
// symmetric, and the diagonal is (p-3)x^p, nonzero for p >= 5.  (Expanding
// the fold at y = x gives p-3 equal terms; the count is sometimes misquoted
// as p-1, but p-3 is what the formula yields and either way it is nonzero.)
struct CharPWitness {
    SymPoly f;
    SymPoly folded;
    SymPoly diagonal;
};

// Throws PrimeTooSmall for p < 5.  Every claimed identity is re-verified on
// construction.
CharPWitness charp_counterexample(long p);

}  // namespace excal
