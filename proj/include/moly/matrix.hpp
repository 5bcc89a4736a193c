#ifndef MOLY_MATRIX_HPP
#define MOLY_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace moly {

/// Dense rational matrix, row-major.  All operations are pure; row reduction
/// is fraction-free (integer Bareiss pivoting with a machine-word fast path,
/// rational normalization at the end) and uses a first-pivot rule so results
/// are bit-identical across runs.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols, Rat(0)) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("RatMatrix: negative shape");
    }
    RatMatrix(int rows, int cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != static_cast<size_t>(rows) * cols)
            throw std::invalid_argument("RatMatrix: entry count does not match shape");
    }
    RatMatrix(std::initializer_list<std::initializer_list<long>> data) {
        rows_ = static_cast<int>(data.size());
        cols_ = rows_ ? static_cast<int>(data.begin()->size()) : 0;
        entries_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : data) {
            if (static_cast<int>(row.size()) != cols_)
                throw std::invalid_argument("RatMatrix: ragged initializer");
            for (long v : row) entries_.emplace_back(v);
        }
    }

    static RatMatrix identity(int n) {
        RatMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }
    static RatMatrix zero(int rows, int cols) { return RatMatrix(rows, cols); }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return entries_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return entries_[static_cast<size_t>(i) * cols_ + j]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
    }
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const Rat& e : entries_)
            if (e != 0) return false;
        return true;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    RatMatrix operator*(const RatMatrix& b) const {
        if (cols_ != b.rows_) throw std::invalid_argument("RatMatrix: shape mismatch in product");
        RatMatrix c(rows_, b.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const Rat& aik = at(i, k);
                if (aik == 0) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const Rat& bkj = b.at(k, j);
                    if (bkj != 0) c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }
    RatMatrix operator+(const RatMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("RatMatrix: shape mismatch in sum");
        RatMatrix c(rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) c.entries_[i] = entries_[i] + b.entries_[i];
        return c;
    }
    RatMatrix operator-(const RatMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("RatMatrix: shape mismatch in difference");
        RatMatrix c(rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) c.entries_[i] = entries_[i] - b.entries_[i];
        return c;
    }
    RatMatrix operator-() const {
        RatMatrix c(rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) c.entries_[i] = -entries_[i];
        return c;
    }
    RatMatrix operator*(const Rat& s) const {
        RatMatrix c(rows_, cols_);
        for (size_t i = 0; i < entries_.size(); ++i) c.entries_[i] = entries_[i] * s;
        return c;
    }

    RatMatrix col(int j) const { return block(0, j, rows_, 1); }

    RatMatrix block(int i0, int j0, int nrows, int ncols) const {
        if (i0 < 0 || j0 < 0 || i0 + nrows > rows_ || j0 + ncols > cols_)
            throw std::invalid_argument("RatMatrix: block out of range");
        RatMatrix b(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) b.at(i, j) = at(i0 + i, j0 + j);
        return b;
    }

    void set_block(int i0, int j0, const RatMatrix& b) {
        if (i0 < 0 || j0 < 0 || i0 + b.rows_ > rows_ || j0 + b.cols_ > cols_)
            throw std::invalid_argument("RatMatrix: set_block out of range");
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
    }

private:
    int rows_, cols_;
    std::vector<Rat> entries_;
};

inline RatMatrix hstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    RatMatrix c(a.rows(), a.cols() + b.cols());
    c.set_block(0, 0, a);
    c.set_block(0, a.cols(), b);
    return c;
}

inline RatMatrix vstack(const RatMatrix& a, const RatMatrix& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    RatMatrix c(a.rows() + b.rows(), a.cols());
    c.set_block(0, 0, a);
    c.set_block(a.rows(), 0, b);
    return c;
}

/// Kronecker product, row index of A major: (A⊗B)[(i,p),(j,q)] = A[i][j]·B[p][q].
inline RatMatrix kron(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (a.at(i, j) == 0) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    c.at(i * b.rows() + p, j * b.cols() + q) = a.at(i, j) * b.at(p, q);
        }
    return c;
}

namespace detail {

/// Fraction-free forward elimination state: the surviving pivot rows of the
/// integerized matrix in echelon order, and their pivot columns.
struct EchelonCore {
    std::vector<std::vector<Int>> rows;
    std::vector<int> pivots;
    int cols = 0;
};

inline bool fits_int64(const Int& v) {
    return v.fits_slong_p();  // long is 64-bit on this platform
}

/// Bareiss elimination over int64 with __int128 intermediates; returns false
/// (leaving `out` untouched) on overflow so the caller can redo in bignum.
inline bool forward_int64(std::vector<std::vector<std::int64_t>>& a, EchelonCore& out) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    constexpr std::int64_t LIMIT = INT64_MAX / 2;
    std::int64_t prev = 1;
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r) std::swap(a[p], a[r]);
        const std::int64_t piv = a[r][c];
        for (int i = r + 1; i < rows; ++i) {
            const std::int64_t fac = a[i][c];
            if (fac == 0 && piv == 1 && prev == 1) continue;  // genuine no-op
            for (int j = c; j < cols; ++j) {
                __int128 t = static_cast<__int128>(a[i][j]) * piv -
                             static_cast<__int128>(fac) * a[r][j];
                t /= prev;  // exact by Bareiss
                if (t > LIMIT || t < -LIMIT) return false;
                a[i][j] = static_cast<std::int64_t>(t);
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    out.rows.clear();
    out.cols = cols;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) {
        std::vector<Int> row(cols);
        for (int j = 0; j < cols; ++j) row[j] = Int(static_cast<long>(a[i][j]));
        out.rows.push_back(std::move(row));
    }
    out.pivots = std::move(pivots);
    return true;
}

inline void forward_bignum(std::vector<std::vector<Int>>& a, EchelonCore& out) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    Int prev(1);
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) { p = i; break; }
        if (p < 0) continue;
        if (p != r) std::swap(a[p], a[r]);
        const Int piv = a[r][c];
        for (int i = r + 1; i < rows; ++i) {
            const Int fac = a[i][c];
            for (int j = c; j < cols; ++j) {
                Int t = a[i][j] * piv - fac * a[r][j];
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = t;
            }
        }
        prev = piv;
        pivots.push_back(c);
        ++r;
    }
    out.rows.clear();
    out.cols = cols;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) out.rows.push_back(std::move(a[i]));
    out.pivots = std::move(pivots);
}

inline EchelonCore forward_eliminate(const RatMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (int i = 0; i < rows; ++i) {
        Int l(1);
        for (int j = 0; j < cols; ++j) l = lcm(l, m.at(i, j).get_den());
        for (int j = 0; j < cols; ++j) {
            Rat v = m.at(i, j) * Rat(l);
            v.canonicalize();
            a[i][j] = v.get_num();
        }
    }
    EchelonCore out;
    out.cols = cols;
    bool small = true;
    for (int i = 0; i < rows && small; ++i)
        for (int j = 0; j < cols; ++j)
            if (!fits_int64(a[i][j])) { small = false; break; }
    if (small) {
        std::vector<std::vector<std::int64_t>> fast(rows, std::vector<std::int64_t>(cols));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) fast[i][j] = a[i][j].get_si();
        if (forward_int64(fast, out)) return out;
    }
    forward_bignum(a, out);
    return out;
}

/// Back-substitute one column against the echelon core.  `rhs` maps row
/// index → value for the column being solved (values of the echelon rows at
/// that column); the result assigns values to pivot variables with all free
/// variables fixed to zero, after which x_free may be patched in by caller.
inline std::vector<Rat> back_substitute(const EchelonCore& e, const std::vector<Rat>& x_init,
                                        const std::vector<Rat>& rhs_col) {
    std::vector<Rat> x = x_init;
    const int nr = static_cast<int>(e.pivots.size());
    for (int i = nr - 1; i >= 0; --i) {
        Rat acc = rhs_col[i];
        const auto& row = e.rows[i];
        for (int j = i + 1; j < nr; ++j) {
            const int pc = e.pivots[j];
            if (row[pc] != 0 && x[pc] != 0) acc -= Rat(row[pc]) * x[pc];
        }
        // Free-variable contributions folded into rhs by the caller.
        Rat v = acc / Rat(row[e.pivots[i]]);
        v.canonicalize();
        x[e.pivots[i]] = v;
    }
    return x;
}

} // namespace detail

struct RowEchelon {
    RatMatrix rref;           // reduced row echelon form (leading ones)
    std::vector<int> pivots;  // pivot column per pivot row
};

/// Full reduced row echelon form (canonical for the row space).
inline RowEchelon row_reduce(const RatMatrix& m) {
    detail::EchelonCore e = detail::forward_eliminate(m);
    const int cols = m.cols();
    const int nr = static_cast<int>(e.pivots.size());
    std::vector<std::vector<Rat>> q(nr, std::vector<Rat>(cols, Rat(0)));
    for (int i = 0; i < nr; ++i) {
        const Int& piv = e.rows[i][e.pivots[i]];
        for (int j = e.pivots[i]; j < cols; ++j) {
            if (e.rows[i][j] == 0) continue;
            q[i][j] = Rat(e.rows[i][j]) / Rat(piv);
            q[i][j].canonicalize();
        }
    }
    for (int i = nr - 1; i >= 0; --i)
        for (int k = 0; k < i; ++k) {
            const Rat fac = q[k][e.pivots[i]];
            if (fac == 0) continue;
            for (int j = e.pivots[i]; j < cols; ++j)
                if (q[i][j] != 0) q[k][j] -= fac * q[i][j];
        }
    RatMatrix out(nr, cols);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < cols; ++j) out.at(i, j) = q[i][j];
    return {std::move(out), std::move(e.pivots)};
}

inline int rank(const RatMatrix& m) {
    return static_cast<int>(detail::forward_eliminate(m).pivots.size());
}

/// Columns form a basis of the null space {x : m·x = 0}; one column per free
/// column, in increasing column order.
inline RatMatrix kernel_basis(const RatMatrix& m) {
    detail::EchelonCore e = detail::forward_eliminate(m);
    const int cols = m.cols();
    const int nr = static_cast<int>(e.pivots.size());
    std::vector<bool> is_pivot(cols, false);
    for (int c : e.pivots) is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    RatMatrix k(cols, static_cast<int>(free_cols.size()));
    for (int idx = 0; idx < static_cast<int>(free_cols.size()); ++idx) {
        const int f = free_cols[idx];
        std::vector<Rat> x(cols, Rat(0));
        x[f] = 1;
        std::vector<Rat> rhs(nr);
        for (int i = 0; i < nr; ++i) rhs[i] = -Rat(e.rows[i][f]);
        x = detail::back_substitute(e, x, rhs);
        for (int c = 0; c < cols; ++c) k.at(c, idx) = x[c];
    }
    return k;
}

/// Original columns of m at the pivot positions: a deterministic (first-pivot
/// rule) basis of the column space, cheap because only forward elimination is
/// needed.  Not canonical across different spanning sets.
inline RatMatrix pivot_columns(const RatMatrix& m) {
    detail::EchelonCore e = detail::forward_eliminate(m);
    RatMatrix out(m.rows(), static_cast<int>(e.pivots.size()));
    for (size_t j = 0; j < e.pivots.size(); ++j)
        out.set_block(0, static_cast<int>(j), m.col(e.pivots[j]));
    return out;
}

/// Canonical basis of the column space: reduced column echelon form.  Two
/// column spans are equal iff their RCEFs are equal.
inline RatMatrix column_space_basis(const RatMatrix& m) {
    RowEchelon re = row_reduce(m.transpose());
    const int r = static_cast<int>(re.pivots.size());
    return re.rref.block(0, 0, r, m.rows()).transpose();
}

/// Scale each column by the positive rational that makes it a primitive
/// integer vector (identical span, deterministic, keeps later eliminations
/// on the machine-word fast path).
inline RatMatrix primitive_columns(const RatMatrix& m) {
    RatMatrix out = m;
    for (int j = 0; j < m.cols(); ++j) {
        Int l(1), g(0);
        for (int i = 0; i < m.rows(); ++i) l = lcm(l, m.at(i, j).get_den());
        for (int i = 0; i < m.rows(); ++i) {
            Rat v = m.at(i, j) * Rat(l);
            v.canonicalize();
            g = gcd(g, v.get_num());
        }
        if (g == 0) continue;
        const Rat scale = Rat(l) / Rat(g);
        for (int i = 0; i < m.rows(); ++i) {
            out.at(i, j) = m.at(i, j) * scale;
            out.at(i, j).canonicalize();
        }
    }
    return out;
}

/// Solve a·x = b for all columns of b.  Returns nothing if inconsistent.
/// Free variables are set to zero (deterministic particular solution).
inline std::optional<RatMatrix> solve(const RatMatrix& a, const RatMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: row mismatch");
    detail::EchelonCore e = detail::forward_eliminate(hstack(a, b));
    for (int c : e.pivots)
        if (c >= a.cols()) return std::nullopt;
    const int nr = static_cast<int>(e.pivots.size());
    RatMatrix x(a.cols(), b.cols());
    for (int j = 0; j < b.cols(); ++j) {
        std::vector<Rat> xi(a.cols() + b.cols(), Rat(0));
        std::vector<Rat> rhs(nr);
        for (int i = 0; i < nr; ++i) rhs[i] = Rat(e.rows[i][a.cols() + j]);
        xi = detail::back_substitute(e, xi, rhs);
        for (int c = 0; c < a.cols(); ++c) x.at(c, j) = xi[c];
    }
    return x;
}

inline std::optional<RatMatrix> inverse(const RatMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse: not square");
    if (rank(a) != a.rows()) return std::nullopt;
    return solve(a, RatMatrix::identity(a.rows()));
}

/// Incrementally maintained column span with Gaussian reduction, so that
/// membership tests and greedy basis extension stay O(rank·dim) per column.
class IncrementalSpan {
public:
    explicit IncrementalSpan(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(echelon_.size()); }

    bool contains(const RatMatrix& column) const {
        return reduce(column).is_zero();
    }

    /// Add the column if it enlarges the span; true when it did.
    bool add(const RatMatrix& column) {
        RatMatrix r = reduce(column);
        int p = -1;
        for (int i = 0; i < dim_; ++i)
            if (r.at(i, 0) != 0) { p = i; break; }
        if (p < 0) return false;
        const Rat inv = Rat(1) / r.at(p, 0);
        for (int i = 0; i < dim_; ++i) r.at(i, 0) *= inv;
        echelon_.push_back(std::move(r));
        pivots_.push_back(p);
        return true;
    }

    void add_columns(const RatMatrix& m) {
        for (int j = 0; j < m.cols(); ++j) add(m.col(j));
    }

private:
    RatMatrix reduce(const RatMatrix& column) const {
        if (column.rows() != dim_ || column.cols() != 1)
            throw std::invalid_argument("IncrementalSpan: bad column shape");
        RatMatrix r = column;
        for (size_t k = 0; k < echelon_.size(); ++k) {
            const Rat fac = r.at(pivots_[k], 0);
            if (fac == 0) continue;
            for (int i = 0; i < dim_; ++i) r.at(i, 0) -= fac * echelon_[k].at(i, 0);
        }
        return r;
    }

    int dim_;
    std::vector<RatMatrix> echelon_;
    std::vector<int> pivots_;
};

/// Greedily extend the columns of `base` by columns of `cand` that increase
/// the rank; returns the indices of the chosen candidate columns.
inline std::vector<int> greedy_extend(RatMatrix& base, const RatMatrix& cand) {
    IncrementalSpan span(base.rows());
    span.add_columns(base);
    std::vector<int> chosen;
    for (int j = 0; j < cand.cols(); ++j) {
        if (span.add(cand.col(j))) {
            base = hstack(base, cand.col(j));
            chosen.push_back(j);
        }
    }
    return chosen;
}

} // namespace moly

#endif
