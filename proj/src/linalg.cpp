#include "excal/linalg.hpp"

#include <algorithm>

#include "excal/errors.hpp"

namespace excal {

namespace {

ExactMatrix with_ring(const ExactMatrix& m, RingSpec ring) {
    ExactMatrix out(ring, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
    return out;
}

// Z matrices are eliminated over Q; kernels are saturated back afterwards.
ExactMatrix field_view(const ExactMatrix& m) {
    if (m.ring().kind() == RingKind::integers) return with_ring(m, RingSpec::rationals());
    return m;
}

struct Echelon {
    ExactMatrix r;
    std::vector<int> pivot_cols;
};

// Reduced row echelon form over a field.  Pivot choice is the first nonzero
// entry in column order, smallest row index first, which pins the output
// down completely.  pivot_col_limit restricts where pivots may live (used by
// the augmented-solve path).
Echelon reduced_echelon(ExactMatrix m, int pivot_col_limit = -1) {
    const RingSpec ring = m.ring();
    assert(ring.is_field());
    const int limit = pivot_col_limit < 0 ? m.cols() : pivot_col_limit;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < limit && row < m.rows(); ++col) {
        int found = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!scalar_is_zero(m.at(i, col))) {
                found = i;
                break;
            }
        if (found < 0) continue;
        if (found != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(row, j), m.at(found, j));
        const Scalar inv = ring_inv(ring, m.at(row, col));
        for (int j = col; j < m.cols(); ++j)
            if (!scalar_is_zero(m.at(row, j))) m.at(row, j) = ring_mul(ring, m.at(row, j), inv);
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || scalar_is_zero(m.at(i, col))) continue;
            const Scalar f = m.at(i, col);
            m.at(i, col) = Scalar(0);
            for (int j = col + 1; j < m.cols(); ++j)
                if (!scalar_is_zero(m.at(row, j))) ring_submul(ring, m.at(i, j), f, m.at(row, j));
        }
        pivots.push_back(col);
        ++row;
    }
    return {std::move(m), std::move(pivots)};
}

ExactMatrix field_kernel_basis(const ExactMatrix& m) {
    const RingSpec ring = m.ring();
    Echelon ech = reduced_echelon(m);
    std::vector<int> free_cols;
    {
        size_t k = 0;
        for (int c = 0; c < m.cols(); ++c) {
            if (k < ech.pivot_cols.size() && ech.pivot_cols[k] == c)
                ++k;
            else
                free_cols.push_back(c);
        }
    }
    ExactMatrix basis(ring, m.cols(), int(free_cols.size()));
    for (size_t b = 0; b < free_cols.size(); ++b) {
        const int f = free_cols[b];
        basis.at(f, int(b)) = Scalar(1);
        for (size_t k = 0; k < ech.pivot_cols.size(); ++k)
            basis.at(ech.pivot_cols[k], int(b)) = ring_neg(ring, ech.r.at(int(k), f));
    }
    return basis;
}

std::optional<ExactMatrix> field_solve(const ExactMatrix& m, const ExactMatrix& rhs) {
    const RingSpec ring = m.ring();
    Echelon ech = reduced_echelon(hstack(m, rhs), m.cols());
    const int r = int(ech.pivot_cols.size());
    for (int i = r; i < ech.r.rows(); ++i)
        for (int j = 0; j < rhs.cols(); ++j)
            if (!scalar_is_zero(ech.r.at(i, m.cols() + j))) return std::nullopt;
    ExactMatrix x(ring, m.cols(), rhs.cols());
    for (int k = 0; k < r; ++k)
        for (int j = 0; j < rhs.cols(); ++j) x.at(ech.pivot_cols[k], j) = ech.r.at(k, m.cols() + j);
    return x;
}

// --- Smith normal form ------------------------------------------------------

// Worker keeps the invariant  original = u * w * v  (and the inverses of u, v)
// while elementary row/column operations drive w to diagonal form.
struct SmithWorker {
    int rows, cols;
    std::vector<mpz_class> w, u, ui, v, vi;

    mpz_class& W(int i, int j) { return w[size_t(i) * cols + j]; }
    mpz_class& U(int i, int j) { return u[size_t(i) * rows + j]; }
    mpz_class& UI(int i, int j) { return ui[size_t(i) * rows + j]; }
    mpz_class& V(int i, int j) { return v[size_t(i) * cols + j]; }
    mpz_class& VI(int i, int j) { return vi[size_t(i) * cols + j]; }

    explicit SmithWorker(const ExactMatrix& m) : rows(m.rows()), cols(m.cols()) {
        w.resize(size_t(rows) * cols);
        u.assign(size_t(rows) * rows, 0);
        ui.assign(size_t(rows) * rows, 0);
        v.assign(size_t(cols) * cols, 0);
        vi.assign(size_t(cols) * cols, 0);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) W(i, j) = m.at(i, j).get_num();
        for (int i = 0; i < rows; ++i) U(i, i) = UI(i, i) = 1;
        for (int j = 0; j < cols; ++j) V(j, j) = VI(j, j) = 1;
    }

    void swap_rows(int a, int b) {
        if (a == b) return;
        for (int j = 0; j < cols; ++j) std::swap(W(a, j), W(b, j));
        for (int i = 0; i < rows; ++i) std::swap(U(i, a), U(i, b));
        for (int j = 0; j < rows; ++j) std::swap(UI(a, j), UI(b, j));
    }
    void swap_cols(int a, int b) {
        if (a == b) return;
        for (int i = 0; i < rows; ++i) std::swap(W(i, a), W(i, b));
        for (int j = 0; j < cols; ++j) std::swap(V(a, j), V(b, j));
        for (int i = 0; i < cols; ++i) std::swap(VI(i, a), VI(i, b));
    }
    // row a -= q * row b
    void row_submul(int a, int b, const mpz_class& q) {
        for (int j = 0; j < cols; ++j) W(a, j) -= q * W(b, j);
        for (int i = 0; i < rows; ++i) U(i, b) += q * U(i, a);
        for (int j = 0; j < rows; ++j) UI(a, j) -= q * UI(b, j);
    }
    // col a -= q * col b
    void col_submul(int a, int b, const mpz_class& q) {
        for (int i = 0; i < rows; ++i) W(i, a) -= q * W(i, b);
        for (int j = 0; j < cols; ++j) V(b, j) += q * V(a, j);
        for (int i = 0; i < cols; ++i) VI(i, a) -= q * VI(i, b);
    }
    void negate_row(int a) {
        for (int j = 0; j < cols; ++j) W(a, j) = -W(a, j);
        for (int i = 0; i < rows; ++i) U(i, a) = -U(i, a);
        for (int j = 0; j < rows; ++j) UI(a, j) = -UI(a, j);
    }

    // Smallest |entry| in the submatrix from (t, t), row-major tie-break.
    bool find_pivot(int t, int& pi, int& pj) {
        pi = -1;
        pj = -1;
        for (int i = t; i < rows; ++i)
            for (int j = t; j < cols; ++j) {
                if (sgn(W(i, j)) == 0) continue;
                if (pi < 0 || mpz_cmpabs(W(i, j).get_mpz_t(), W(pi, pj).get_mpz_t()) < 0) {
                    pi = i;
                    pj = j;
                }
            }
        return pi >= 0;
    }

    // Clears row t and column t outside (t, t); pivot shrinks monotonically.
    void eliminate_at(int t) {
        for (;;) {
            int pi, pj;
            if (!find_pivot(t, pi, pj)) return;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                if (sgn(W(i, t)) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), W(i, t).get_mpz_t(), W(t, t).get_mpz_t());
                row_submul(i, t, q);
                if (sgn(W(i, t)) != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                if (sgn(W(t, j)) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), W(t, j).get_mpz_t(), W(t, t).get_mpz_t());
                col_submul(j, t, q);
                if (sgn(W(t, j)) != 0) clean = false;
            }
            if (clean) {
                bool col_zero = true, row_zero = true;
                for (int i = t + 1; i < rows && col_zero; ++i) col_zero = sgn(W(i, t)) == 0;
                for (int j = t + 1; j < cols && row_zero; ++j) row_zero = sgn(W(t, j)) == 0;
                if (col_zero && row_zero) return;
            }
        }
    }

    // Replaces the diagonal pair (d_i, d_j), i < j, by (gcd, +-lcm) using
    // operations confined to rows/columns i and j.
    void fix_pair(int i, int j) {
        col_submul(i, j, mpz_class(-1));  // col i += col j, so W(j, i) = d_j
        while (sgn(W(j, i)) != 0) {
            mpz_class q;
            mpz_tdiv_q(q.get_mpz_t(), W(i, i).get_mpz_t(), W(j, i).get_mpz_t());
            row_submul(i, j, q);
            // remainder now sits at (i, i); rotate so euclid keeps shrinking
            swap_rows(i, j);
        }
        // gcd is at (i, i); the leftover at (i, j) is divisible by it
        if (sgn(W(i, j)) != 0) {
            mpz_class q = W(i, j) / W(i, i);
            col_submul(j, i, q);
        }
    }
};

}  // namespace

int rank(const ExactMatrix& m) {
    return int(reduced_echelon(field_view(m)).pivot_cols.size());
}

SmithForm smith_normal_form(const ExactMatrix& m) {
    if (m.ring().kind() != RingKind::integers)
        throw WrongRing("smith_normal_form requires ring Z, got " + m.ring().name());
    SmithWorker sw(m);
    const int bound = std::min(m.rows(), m.cols());
    int r = 0;
    for (; r < bound; ++r) {
        int pi, pj;
        if (!sw.find_pivot(r, pi, pj)) break;
        sw.eliminate_at(r);
    }
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            if (!mpz_divisible_p(sw.W(j, j).get_mpz_t(), sw.W(i, i).get_mpz_t())) sw.fix_pair(i, j);
    for (int i = 0; i < r; ++i)
        if (sgn(sw.W(i, i)) < 0) sw.negate_row(i);

    const RingSpec z = RingSpec::integers();
    SmithForm out{ExactMatrix(z, m.rows(), m.rows()), ExactMatrix(z, m.rows(), m.cols()),
                  ExactMatrix(z, m.cols(), m.cols()), ExactMatrix(z, m.rows(), m.rows()),
                  ExactMatrix(z, m.cols(), m.cols()), r};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.rows(); ++j) {
            out.u.at(i, j) = Scalar(sw.U(i, j));
            out.u_inv.at(i, j) = Scalar(sw.UI(i, j));
        }
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out.d.at(i, j) = Scalar(sw.W(i, j));
    for (int i = 0; i < m.cols(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            out.v.at(i, j) = Scalar(sw.V(i, j));
            out.v_inv.at(i, j) = Scalar(sw.VI(i, j));
        }
    return out;
}

namespace {

// Integer matrix with the same column span over Q: scale each column by the
// lcm of its denominators, then divide out the content.
ExactMatrix primitive_integer_columns(const ExactMatrix& q) {
    ExactMatrix out(RingSpec::integers(), q.rows(), q.cols());
    for (int j = 0; j < q.cols(); ++j) {
        mpz_class l(1);
        for (int i = 0; i < q.rows(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.at(i, j).get_den().get_mpz_t());
        mpz_class g(0);
        std::vector<mpz_class> col(q.rows());
        for (int i = 0; i < q.rows(); ++i) {
            col[i] = q.at(i, j).get_num() * (l / q.at(i, j).get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), col[i].get_mpz_t());
        }
        if (sgn(g) == 0) g = 1;
        for (int i = 0; i < q.rows(); ++i) out.at(i, j) = Scalar(col[i] / g);
    }
    return out;
}

}  // namespace

// Basis of the saturation span_Q(columns) intersect Z^n, for a full
// column-rank input: with b = u d v in Smith form the saturation is spanned
// by the first rank(b) columns of u.
ExactMatrix saturate_to_integer_lattice(const ExactMatrix& rational_basis) {
    ExactMatrix b = primitive_integer_columns(rational_basis);
    if (b.cols() == 0) return b;
    SmithForm sf = smith_normal_form(b);
    if (sf.rank != b.cols())
        throw DimensionMismatch("saturate_to_integer_lattice: input columns are dependent");
    return sf.u.submatrix(0, b.rows(), 0, sf.rank);
}

ExactMatrix kernel_basis(const ExactMatrix& m) {
    if (m.ring().kind() == RingKind::integers)
        return saturate_to_integer_lattice(field_kernel_basis(field_view(m)));
    return field_kernel_basis(m);
}

ExactMatrix intersect_kernels(const RingSpec& ring, int ambient,
                              const std::vector<ExactMatrix>& ms) {
    for (const auto& m : ms) {
        if (m.ring() != ring) throw WrongRing("intersect_kernels: ring mismatch");
        if (m.cols() != ambient)
            throw DimensionMismatch("intersect_kernels: matrix has " + std::to_string(m.cols()) +
                                    " columns, ambient is " + std::to_string(ambient));
    }
    if (ms.empty()) return ExactMatrix::identity(ring, ambient);
    std::vector<ExactMatrix> blocks(ms.begin(), ms.end());
    return kernel_basis(vstack(blocks, ring, ambient));
}

std::optional<ExactMatrix> solve(const ExactMatrix& m, const ExactMatrix& rhs) {
    if (m.ring() != rhs.ring()) throw WrongRing("solve: ring mismatch");
    if (m.rows() != rhs.rows())
        throw DimensionMismatch("solve: lhs has " + std::to_string(m.rows()) + " rows, rhs has " +
                                std::to_string(rhs.rows()));
    if (m.ring().kind() != RingKind::integers) return field_solve(m, rhs);
    // Z: m = u d v, so m x = b iff d (v x) = u^{-1} b with exact divisions.
    SmithForm sf = smith_normal_form(m);
    ExactMatrix c = multiply(sf.u_inv, rhs);
    ExactMatrix y(m.ring(), m.cols(), rhs.cols());
    for (int j = 0; j < rhs.cols(); ++j) {
        for (int i = 0; i < m.rows(); ++i) {
            if (i < sf.rank) {
                const mpz_class& d = sf.d.at(i, i).get_num();
                if (!mpz_divisible_p(c.at(i, j).get_num().get_mpz_t(), d.get_mpz_t()))
                    return std::nullopt;
                y.at(i, j) = Scalar(c.at(i, j).get_num() / d);
            } else if (!scalar_is_zero(c.at(i, j))) {
                return std::nullopt;
            }
        }
    }
    return multiply(sf.v_inv, y);
}

std::pair<ExactMatrix, ExactMatrix> split_idempotent(const ExactMatrix& e) {
    if (e.rows() != e.cols()) throw DimensionMismatch("split_idempotent: matrix is not square");
    if (multiply(e, e) != e) throw NotIdempotent("split_idempotent: e*e != e");
    ExactMatrix p(e.ring(), e.rows(), 0);
    if (e.ring().kind() == RingKind::integers) {
        // The image lattice of an idempotent is saturated (nv = e(nv) forces
        // v = e v), hence a free summand; read a basis off the Smith form.
        SmithForm sf = smith_normal_form(e);
        p = ExactMatrix(e.ring(), e.rows(), sf.rank);
        for (int j = 0; j < sf.rank; ++j)
            for (int i = 0; i < e.rows(); ++i)
                p.at(i, j) = ring_mul(e.ring(), sf.u.at(i, j), sf.d.at(j, j));
    } else {
        Echelon ech = reduced_echelon(e);
        p = e.select_columns(ech.pivot_cols);
    }
    auto q = solve(p, e);
    if (!q) throw std::logic_error("split_idempotent: image basis does not span the image");
    if (!multiply(*q, p).is_identity())
        throw std::logic_error("split_idempotent: q*p is not the identity");
    return {std::move(p), std::move(*q)};
}

ExactMatrix inverse(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("inverse: matrix is not square");
    const ExactMatrix fv = field_view(m);
    Echelon ech = reduced_echelon(hstack(fv, ExactMatrix::identity(fv.ring(), fv.rows())), fv.cols());
    if (int(ech.pivot_cols.size()) != m.cols())
        throw SingularMatrix("inverse: rank " + std::to_string(ech.pivot_cols.size()) + " < " +
                             std::to_string(m.cols()));
    ExactMatrix inv = ech.r.submatrix(0, m.rows(), m.cols(), 2 * m.cols());
    if (m.ring().kind() == RingKind::integers) {
        for (int i = 0; i < inv.rows(); ++i)
            for (int j = 0; j < inv.cols(); ++j)
                if (inv.at(i, j).get_den() != 1)
                    throw SingularMatrix("inverse: matrix is not unimodular over Z");
        return with_ring(inv, m.ring());
    }
    return inv;
}

Scalar determinant(const ExactMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("determinant: matrix is not square");
    ExactMatrix a = field_view(m);
    const RingSpec ring = a.ring();
    bool negate = false;
    Scalar det(1);
    for (int col = 0; col < a.cols(); ++col) {
        int found = -1;
        for (int i = col; i < a.rows(); ++i)
            if (!scalar_is_zero(a.at(i, col))) {
                found = i;
                break;
            }
        if (found < 0) return Scalar(0);
        if (found != col) {
            negate = !negate;
            for (int j = 0; j < a.cols(); ++j) std::swap(a.at(col, j), a.at(found, j));
        }
        det = ring_mul(ring, det, a.at(col, col));
        const Scalar inv = ring_inv(ring, a.at(col, col));
        for (int i = col + 1; i < a.rows(); ++i) {
            if (scalar_is_zero(a.at(i, col))) continue;
            const Scalar f = ring_mul(ring, a.at(i, col), inv);
            for (int j = col; j < a.cols(); ++j)
                if (!scalar_is_zero(a.at(col, j))) ring_submul(ring, a.at(i, j), f, a.at(col, j));
        }
    }
    if (negate) det = ring_neg(ring, det);
    return ring_normalize(m.ring(), det);
}

bool is_invertible(const ExactMatrix& m) {
    if (m.rows() != m.cols()) return false;
    const Scalar det = determinant(m);
    if (m.ring().kind() == RingKind::integers) return det == 1 || det == -1;
    return !scalar_is_zero(det);
}

bool is_surjective(const ExactMatrix& m) {
    if (m.ring().kind() != RingKind::integers) return rank(m) == m.rows();
    const SmithForm s = smith_normal_form(m);
    if (s.rank != m.rows()) return false;
    for (int i = 0; i < s.rank; ++i)
        if (s.d.at(i, i) != 1) return false;
    return true;
}

// --- KernelAccumulator ------------------------------------------------------

KernelAccumulator::KernelAccumulator(RingSpec ring, int ambient)
    : ring_(ring), ambient_(ambient), col_to_pivot_(ambient, -1) {
    if (!ring.is_field())
        throw WrongRing("KernelAccumulator needs a field; reduce Z systems over Q and saturate");
}

void KernelAccumulator::add_row(std::vector<Scalar> row) {
    assert(int(row.size()) == ambient_);
    int pivot = -1;
    for (int c = 0; c < ambient_; ++c) {
        if (scalar_is_zero(row[c])) continue;
        const int k = col_to_pivot_[c];
        if (k < 0) {
            if (pivot < 0) pivot = c;
            continue;  // keep going: later pivot columns still need clearing
        }
        const Scalar f = row[c];
        row[c] = Scalar(0);
        const auto& pr = pivot_rows_[k];
        for (int j = c + 1; j < ambient_; ++j)
            if (!scalar_is_zero(pr[j])) ring_submul(ring_, row[j], f, pr[j]);
    }
    if (pivot < 0) return;  // row already implied
    const Scalar inv = ring_inv(ring_, row[pivot]);
    for (int j = pivot; j < ambient_; ++j)
        if (!scalar_is_zero(row[j])) row[j] = ring_mul(ring_, row[j], inv);
    for (size_t k = 0; k < pivot_rows_.size(); ++k) {
        auto& pr = pivot_rows_[k];
        if (scalar_is_zero(pr[pivot])) continue;
        const Scalar f = pr[pivot];
        pr[pivot] = Scalar(0);
        for (int j = pivot + 1; j < ambient_; ++j)
            if (!scalar_is_zero(row[j])) ring_submul(ring_, pr[j], f, row[j]);
    }
    col_to_pivot_[pivot] = int(pivot_rows_.size());
    pivot_cols_.push_back(pivot);
    pivot_rows_.push_back(std::move(row));
}

void KernelAccumulator::add_constraint_rows(const ExactMatrix& m) {
    if (m.cols() != ambient_) throw DimensionMismatch("add_constraint_rows: ambient mismatch");
    for (int i = 0; i < m.rows(); ++i) {
        std::vector<Scalar> row(ambient_);
        for (int j = 0; j < ambient_; ++j) row[j] = m.at(i, j);
        add_row(std::move(row));
    }
}

ExactMatrix KernelAccumulator::kernel_basis() const {
    std::vector<std::pair<int, int>> by_col;  // (pivot col, row index)
    for (size_t k = 0; k < pivot_cols_.size(); ++k) by_col.emplace_back(pivot_cols_[k], int(k));
    std::sort(by_col.begin(), by_col.end());
    std::vector<int> free_cols;
    for (int c = 0; c < ambient_; ++c)
        if (col_to_pivot_[c] < 0) free_cols.push_back(c);
    ExactMatrix basis(ring_, ambient_, int(free_cols.size()));
    for (size_t b = 0; b < free_cols.size(); ++b) {
        const int f = free_cols[b];
        basis.at(f, int(b)) = Scalar(1);
        for (const auto& [col, k] : by_col) basis.at(col, int(b)) = ring_neg(ring_, pivot_rows_[k][f]);
    }
    return basis;
}

}  // namespace excal
