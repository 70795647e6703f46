#include "excal/matrix.hpp"

#include <sstream>

#include "excal/errors.hpp"

namespace excal {

namespace {

void require_same_ring(const ExactMatrix& a, const ExactMatrix& b, const char* op) {
    if (a.ring() != b.ring())
        throw WrongRing(std::string(op) + ": ring mismatch (" + a.ring().name() + " vs " +
                        b.ring().name() + ")");
}

}  // namespace

ExactMatrix::ExactMatrix(RingSpec ring, std::initializer_list<std::initializer_list<long>> rows)
    : ring_(ring), rows_(int(rows.size())), cols_(0) {
    for (const auto& r : rows) cols_ = std::max(cols_, int(r.size()));
    entries_.resize(size_t(rows_) * size_t(cols_));
    int i = 0;
    for (const auto& r : rows) {
        int j = 0;
        for (long v : r) set(i, j++, v);
        ++i;
    }
}

ExactMatrix ExactMatrix::identity(RingSpec ring, int n) {
    ExactMatrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

bool ExactMatrix::is_zero() const {
    for (const auto& e : entries_)
        if (!scalar_is_zero(e)) return false;
    return true;
}

bool ExactMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != Scalar(i == j ? 1 : 0)) return false;
    return true;
}

bool ExactMatrix::operator==(const ExactMatrix& other) const {
    return ring_ == other.ring_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           entries_ == other.entries_;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

ExactMatrix ExactMatrix::column(int j) const {
    ExactMatrix c(ring_, rows_, 1);
    for (int i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
    return c;
}

ExactMatrix ExactMatrix::submatrix(int r0, int r1, int c0, int c1) const {
    assert(0 <= r0 && r0 <= r1 && r1 <= rows_ && 0 <= c0 && c0 <= c1 && c1 <= cols_);
    ExactMatrix s(ring_, r1 - r0, c1 - c0);
    for (int i = r0; i < r1; ++i)
        for (int j = c0; j < c1; ++j) s.at(i - r0, j - c0) = at(i, j);
    return s;
}

ExactMatrix ExactMatrix::select_columns(const std::vector<int>& cols) const {
    ExactMatrix s(ring_, rows_, int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        assert(cols[j] >= 0 && cols[j] < cols_);
        for (int i = 0; i < rows_; ++i) s.at(i, int(j)) = at(i, cols[j]);
    }
    return s;
}

std::string ExactMatrix::to_string() const {
    std::ostringstream out;
    out << "[";
    for (int i = 0; i < rows_; ++i) {
        out << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) out << (j ? " " : "") << scalar_to_string(at(i, j));
    }
    out << "] (" << rows_ << "x" << cols_ << " over " << ring_.name() << ")";
    return out.str();
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_ring(a, b, "multiply");
    if (a.cols() != b.rows())
        throw DimensionMismatch("multiply: " + std::to_string(a.cols()) + " cols vs " +
                                std::to_string(b.rows()) + " rows");
    ExactMatrix c(a.ring(), a.rows(), b.cols());
    // Skipping zero entries of a pays off: functor action matrices are
    // block-sparse almost everywhere.
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a.at(i, k);
            if (scalar_is_zero(aik)) continue;
            for (int j = 0; j < b.cols(); ++j) {
                const Scalar& bkj = b.at(k, j);
                if (scalar_is_zero(bkj)) continue;
                ring_addmul(a.ring(), c.at(i, j), aik, bkj);
            }
        }
    return c;
}

ExactMatrix add(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_ring(a, b, "add");
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("add: shape mismatch");
    ExactMatrix c(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = ring_add(a.ring(), a.at(i, j), b.at(i, j));
    return c;
}

ExactMatrix subtract(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_ring(a, b, "subtract");
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("subtract: shape mismatch");
    ExactMatrix c(a.ring(), a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = ring_sub(a.ring(), a.at(i, j), b.at(i, j));
    return c;
}

ExactMatrix scale(const ExactMatrix& a, const Scalar& c) {
    ExactMatrix s(a.ring(), a.rows(), a.cols());
    Scalar cc = ring_normalize(a.ring(), c);
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) s.at(i, j) = ring_mul(a.ring(), a.at(i, j), cc);
    return s;
}

ExactMatrix hstack(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_ring(a, b, "hstack");
    if (a.rows() != b.rows()) throw DimensionMismatch("hstack: row mismatch");
    ExactMatrix c(a.ring(), a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j) c.at(i, a.cols() + j) = b.at(i, j);
    }
    return c;
}

ExactMatrix vstack(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_ring(a, b, "vstack");
    if (a.cols() != b.cols()) throw DimensionMismatch("vstack: column mismatch");
    ExactMatrix c(a.ring(), a.rows() + b.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) c.at(a.rows() + i, j) = b.at(i, j);
    return c;
}

ExactMatrix hstack(const std::vector<ExactMatrix>& blocks, RingSpec ring, int rows) {
    int cols = 0;
    for (const auto& b : blocks) cols += b.cols();
    ExactMatrix c(ring, rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        require_same_ring(c, b, "hstack");
        if (b.rows() != rows) throw DimensionMismatch("hstack: row mismatch");
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < b.cols(); ++j) c.at(i, off + j) = b.at(i, j);
        off += b.cols();
    }
    return c;
}

ExactMatrix vstack(const std::vector<ExactMatrix>& blocks, RingSpec ring, int cols) {
    int rows = 0;
    for (const auto& b : blocks) rows += b.rows();
    ExactMatrix c(ring, rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        require_same_ring(c, b, "vstack");
        if (b.cols() != cols) throw DimensionMismatch("vstack: column mismatch");
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < cols; ++j) c.at(off + i, j) = b.at(i, j);
        off += b.rows();
    }
    return c;
}

ExactMatrix direct_sum(const ExactMatrix& a, const ExactMatrix& b) {
    require_same_ring(a, b, "direct_sum");
    ExactMatrix c(a.ring(), a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) c.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return c;
}

}  // namespace excal
