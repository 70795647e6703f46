#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "excal/matrix.hpp"

namespace excal {

// Exact linear algebra over Q, F_p, and Z.  Everything here is deterministic:
// elimination pivots on the first nonzero entry (smallest row index wins) and
// the Smith reduction pivots on the smallest absolute value (row-major
// tie-break), so equal inputs give identical bases on every run.

int rank(const ExactMatrix& m);

// Columns form a basis of ker(m).  Over a field this is the standard basis
// read off the reduced echelon form (one column per free variable, ordered by
// free column).  Over Z the result is a basis of the full kernel lattice
// ker(m) = ker_Q(m) intersect Z^n, i.e. saturated, so integer solutions of
// m x = 0 are exactly the integer combinations of the columns.
ExactMatrix kernel_basis(const ExactMatrix& m);

// Basis of the intersection of the kernels of the given matrices, all of
// which must act on `ambient`-dimensional columns.  An empty list yields the
// identity (the full space).
ExactMatrix intersect_kernels(const RingSpec& ring, int ambient,
                              const std::vector<ExactMatrix>& ms);

// For idempotent e (e*e = e) returns (p, q) with e = p*q and q*p = I_r where
// r = rank(e); the columns of p are a basis of the image of e.  Over Z the
// image of an idempotent is a direct summand, hence free, and p is a basis of
// that summand.  Throws NotIdempotent otherwise.
std::pair<ExactMatrix, ExactMatrix> split_idempotent(const ExactMatrix& e);

struct SmithForm {
    ExactMatrix u, d, v;        // m = u * d * v, with u and v unimodular
    ExactMatrix u_inv, v_inv;   // carried along since the reduction knows them
    int rank = 0;               // number of nonzero diagonal entries of d
};

// Smith normal form over Z: d diagonal with nonnegative entries, each
// dividing the next, zeros last.  Throws WrongRing for Q or F_p inputs.
SmithForm smith_normal_form(const ExactMatrix& m);

// Basis of span_Q(columns) intersect Z^n for a full-column-rank rational
// matrix; turns a Q-kernel basis into a basis of the integral kernel lattice.
ExactMatrix saturate_to_integer_lattice(const ExactMatrix& rational_basis);

// One solution of m x = rhs (rhs may have several columns; each is solved
// independently and the solutions are returned side by side).  Over a field
// free variables are set to zero; over Z the solution is integral or absent.
// Returns nullopt when any column has no solution in the ring.
std::optional<ExactMatrix> solve(const ExactMatrix& m, const ExactMatrix& rhs);

// Inverse over the ring: over Z this requires the matrix to be unimodular.
// Throws SingularMatrix when no inverse exists in the ring.
ExactMatrix inverse(const ExactMatrix& m);

Scalar determinant(const ExactMatrix& m);

// Square and invertible over the ring (over Z: determinant +-1).
bool is_invertible(const ExactMatrix& m);

// The cokernel of m vanishes: over a field, rank equals the row count; over
// Z every invariant factor is 1 and the rank equals the row count.
bool is_surjective(const ExactMatrix& m);

// Incremental kernel tracker: feed constraint rows one at a time; at any
// point kernel_basis() spans the vectors annihilated by every row so far.
// Rows are reduced against a fully reduced echelon form, which keeps the
// cost per row proportional to its fill-in rather than to the total row
// count.  Field rings only; Z callers reduce over Q and saturate afterwards.
class KernelAccumulator {
  public:
    KernelAccumulator(RingSpec ring, int ambient);

    void add_row(std::vector<Scalar> row);
    void add_constraint_rows(const ExactMatrix& m);

    int ambient() const { return ambient_; }
    int rank() const { return int(pivot_rows_.size()); }
    ExactMatrix kernel_basis() const;

  private:
    RingSpec ring_;
    int ambient_;
    std::vector<std::vector<Scalar>> pivot_rows_;
    std::vector<int> pivot_cols_;           // pivot column of each stored row
    std::vector<int> col_to_pivot_;         // ambient-sized, -1 when free
};

}  // namespace excal
