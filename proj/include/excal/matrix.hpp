#pragma once

#include <cassert>
#include <initializer_list>
#include <string>
#include <vector>

#include "excal/ring.hpp"

namespace excal {

// Dense row-major matrix over a RingSpec.  Entries are kept in canonical form
// (reduced fractions, nonnegative residues); every operation checks that the
// rings of its operands agree.
class ExactMatrix {
  public:
    ExactMatrix(RingSpec ring, int rows, int cols)
        : ring_(ring), rows_(rows), cols_(cols), entries_(size_t(rows) * size_t(cols)) {
        assert(rows >= 0 && cols >= 0);
    }

    // Row-major literal, mainly for tests: {{1,2},{3,4}}.
    ExactMatrix(RingSpec ring, std::initializer_list<std::initializer_list<long>> rows);

    static ExactMatrix identity(RingSpec ring, int n);
    static ExactMatrix zero(RingSpec ring, int rows, int cols) { return ExactMatrix(ring, rows, cols); }

    const RingSpec& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const Scalar& at(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return entries_[size_t(i) * cols_ + j];
    }
    // Direct mutable access; caller keeps entries canonical (use set() otherwise).
    Scalar& at(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return entries_[size_t(i) * cols_ + j];
    }
    void set(int i, int j, const Scalar& value) { at(i, j) = ring_normalize(ring_, value); }
    void set(int i, int j, long value) { at(i, j) = scalar_from_long(ring_, value); }

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const ExactMatrix& other) const;
    bool operator!=(const ExactMatrix& other) const { return !(*this == other); }

    ExactMatrix transpose() const;
    ExactMatrix column(int j) const;
    // Rows [r0, r1) and columns [c0, c1).
    ExactMatrix submatrix(int r0, int r1, int c0, int c1) const;
    ExactMatrix select_columns(const std::vector<int>& cols) const;

    std::string to_string() const;

  private:
    RingSpec ring_;
    int rows_, cols_;
    std::vector<Scalar> entries_;
};

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix subtract(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix scale(const ExactMatrix& a, const Scalar& c);
// [a | b] side by side, resp. a on top of b.
ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix hstack(const std::vector<ExactMatrix>& blocks, RingSpec ring, int rows);
ExactMatrix vstack(const std::vector<ExactMatrix>& blocks, RingSpec ring, int cols);
ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b);

}  // namespace excal
