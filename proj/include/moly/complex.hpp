#ifndef MOLY_COMPLEX_HPP
#define MOLY_COMPLEX_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "matrix.hpp"

namespace moly {

/// Bounded cochain complex of finite-dimensional rational vector spaces.
/// dims[k] lives in cohomological degree offset+k and diffs[k] is the map
/// dims[k] -> dims[k+1].  d∘d = 0 is checked at construction.
class VectComplex {
public:
    VectComplex() : offset_(0) {}
    /// `check_composition = false` skips the d∘d = 0 products; callers may
    /// use it when the identity is already guaranteed at a coarser level
    /// (shape checks always run).
    VectComplex(int offset, std::vector<int> dims, std::vector<RatMatrix> diffs,
                bool check_composition = true)
        : offset_(offset), dims_(std::move(dims)), diffs_(std::move(diffs)) {
        if (!dims_.empty() && diffs_.size() + 1 != dims_.size())
            throw std::invalid_argument("VectComplex: need one differential per adjacent pair");
        for (size_t k = 0; k < diffs_.size(); ++k) {
            if (diffs_[k].rows() != dims_[k + 1] || diffs_[k].cols() != dims_[k])
                throw std::invalid_argument("VectComplex: differential shape mismatch at index " +
                                            std::to_string(k));
            if (check_composition && k > 0 && !(diffs_[k] * diffs_[k - 1]).is_zero())
                throw std::invalid_argument("VectComplex: d∘d != 0 at index " +
                                            std::to_string(k - 1));
        }
    }

    int offset() const { return offset_; }
    int terms() const { return static_cast<int>(dims_.size()); }
    int first_degree() const { return offset_; }
    int last_degree() const { return offset_ + terms() - 1; }

    int dim_at(int degree) const {
        const int k = degree - offset_;
        if (k < 0 || k >= terms()) return 0;
        return dims_[k];
    }

    /// Differential leaving `degree` (zero matrix outside the stored range).
    RatMatrix diff_at(int degree) const {
        const int k = degree - offset_;
        if (k >= 0 && k + 1 < terms()) return diffs_[k];
        return RatMatrix::zero(dim_at(degree + 1), dim_at(degree));
    }

    /// Total Euler characteristic Σ(−1)^k dim.
    long euler() const {
        long e = 0;
        for (int k = 0; k < terms(); ++k)
            e += ((offset_ + k) % 2 == 0 ? 1 : -1) * static_cast<long>(dims_[k]);
        return e;
    }

    /// Same terms, shifted: shift(s) puts old degree k in degree k−s and
    /// multiplies the differentials by (−1)^s.
    VectComplex shift(int s) const {
        std::vector<RatMatrix> d = diffs_;
        if (s % 2 != 0)
            for (auto& m : d) m = -m;
        return VectComplex(offset_ - s, dims_, std::move(d));
    }

private:
    int offset_;
    std::vector<int> dims_;
    std::vector<RatMatrix> diffs_;
};

/// Basis data for one cohomology space H^k: `section` embeds H^k as chosen
/// cycle representatives, `projection` retracts cycles onto those
/// representatives (it kills boundaries and a fixed complement of the cycle
/// space).  projection · section = identity.
struct CohomologySpace {
    int dim = 0;
    RatMatrix projection;  // dim × dim_at(k)
    RatMatrix section;     // dim_at(k) × dim
};

inline CohomologySpace cohomology(const VectComplex& c, int degree) {
    const int n = c.dim_at(degree);
    if (n == 0) return {0, RatMatrix(0, 0), RatMatrix(0, 0)};

    const RatMatrix cycles = primitive_columns(kernel_basis(c.diff_at(degree)));
    const RatMatrix boundaries = primitive_columns(pivot_columns(c.diff_at(degree - 1)));

    // Boundaries always sit inside the cycles (d∘d = 0 is checked at
    // construction), so the dimension is known before any basis is chosen
    // and the common zero case costs nothing further.
    if (cycles.cols() == boundaries.cols())
        return {0, RatMatrix(0, n), RatMatrix(n, 0)};

    RatMatrix basis = RatMatrix(n, 0);
    IncrementalSpan span(n);
    for (int j = 0; j < boundaries.cols(); ++j) {
        span.add(boundaries.col(j));
        basis = hstack(basis, boundaries.col(j));
    }
    const int b = basis.cols();
    std::vector<int> chosen;
    for (int j = 0; j < cycles.cols(); ++j)
        if (span.add(cycles.col(j))) {
            basis = hstack(basis, cycles.col(j));
            chosen.push_back(j);
        }
    const int h = static_cast<int>(chosen.size());
    for (int j = 0; j < n && span.rank() < n; ++j) {
        RatMatrix e(n, 1);
        e.at(j, 0) = 1;
        if (span.add(e)) basis = hstack(basis, e);
    }
    if (basis.cols() != n) throw std::logic_error("cohomology: basis completion failed");

    // Only the h projection rows of the basis inverse are needed:
    // p·basis = (0 | I_h | 0) with the identity block over the section.
    RatMatrix eblock(n, h);
    for (int i = 0; i < h; ++i) eblock.at(b + i, i) = 1;
    const auto pt = solve(basis.transpose(), eblock);
    if (!pt) throw std::logic_error("cohomology: projection solve failed");
    CohomologySpace out;
    out.dim = h;
    out.projection = pt->transpose();
    out.section = basis.block(0, b, n, h);
    return out;
}

/// Degreewise map of complexes; commutation with both differentials is
/// checked and a violation reports the offending degree.
class ChainMap {
public:
    ChainMap(VectComplex source, VectComplex target, int offset, std::vector<RatMatrix> maps,
             bool check = true)
        : source_(std::move(source)), target_(std::move(target)), offset_(offset),
          maps_(std::move(maps)) {
        for (size_t k = 0; k < maps_.size(); ++k) {
            const int deg = offset_ + static_cast<int>(k);
            if (maps_[k].rows() != target_.dim_at(deg) || maps_[k].cols() != source_.dim_at(deg))
                throw std::invalid_argument("ChainMap: component shape mismatch at degree " +
                                            std::to_string(deg));
        }
        if (check) {
            const int lo = std::min(source_.first_degree(), target_.first_degree()) - 1;
            const int hi = std::max(source_.last_degree(), target_.last_degree());
            for (int deg = lo; deg <= hi; ++deg) {
                const RatMatrix lhs = map_at(deg + 1) * source_.diff_at(deg);
                const RatMatrix rhs = target_.diff_at(deg) * map_at(deg);
                if (lhs != rhs)
                    throw std::invalid_argument(
                        "ChainMap: does not commute with differentials at degree " +
                        std::to_string(deg));
            }
        }
    }

    const VectComplex& source() const { return source_; }
    const VectComplex& target() const { return target_; }

    RatMatrix map_at(int degree) const {
        const int k = degree - offset_;
        if (k >= 0 && k < static_cast<int>(maps_.size())) return maps_[k];
        return RatMatrix::zero(target_.dim_at(degree), source_.dim_at(degree));
    }

    /// Induced map on cohomology at `degree` with respect to the given bases.
    RatMatrix induced(int degree, const CohomologySpace& src_h, const CohomologySpace& tgt_h) const {
        return tgt_h.projection * (map_at(degree) * src_h.section);
    }

private:
    VectComplex source_, target_;
    int offset_;
    std::vector<RatMatrix> maps_;
};

/// Mapping cone of f: A → B, with C^k = A^{k+1} ⊕ B^k and differential
/// (a, b) ↦ (−d a, f a + d b).
inline VectComplex cone(const ChainMap& f) {
    const VectComplex& a = f.source();
    const VectComplex& b = f.target();
    const int lo = std::min(a.first_degree() - 1, b.first_degree());
    const int hi = std::max(a.last_degree() - 1, b.last_degree());
    std::vector<int> dims;
    for (int deg = lo; deg <= hi; ++deg) dims.push_back(a.dim_at(deg + 1) + b.dim_at(deg));
    std::vector<RatMatrix> diffs;
    for (int deg = lo; deg < hi; ++deg) {
        const int sa = a.dim_at(deg + 1), sb = b.dim_at(deg);
        const int ta = a.dim_at(deg + 2), tb = b.dim_at(deg + 1);
        RatMatrix d(ta + tb, sa + sb);
        d.set_block(0, 0, -a.diff_at(deg + 1));
        d.set_block(ta, 0, f.map_at(deg + 1));
        d.set_block(ta, sa, b.diff_at(deg));
        diffs.push_back(std::move(d));
    }
    return VectComplex(lo, std::move(dims), std::move(diffs));
}

/// The two structural maps around the cone: B → cone(f) is (0, id), and
/// cone(f) → A[1] is (id, 0); both are chain maps.
inline ChainMap cone_inclusion(const ChainMap& f, const VectComplex& c) {
    const VectComplex& a = f.source();
    const VectComplex& b = f.target();
    std::vector<RatMatrix> maps;
    const int lo = c.first_degree();
    for (int deg = lo; deg <= c.last_degree(); ++deg) {
        RatMatrix m(c.dim_at(deg), b.dim_at(deg));
        m.set_block(a.dim_at(deg + 1), 0, RatMatrix::identity(b.dim_at(deg)));
        maps.push_back(std::move(m));
    }
    return ChainMap(b, c, lo, std::move(maps));
}

inline ChainMap cone_projection(const ChainMap& f, const VectComplex& c) {
    const VectComplex& a = f.source();
    VectComplex ashift = a.shift(1);
    std::vector<RatMatrix> maps;
    const int lo = c.first_degree();
    for (int deg = lo; deg <= c.last_degree(); ++deg) {
        RatMatrix m(ashift.dim_at(deg), c.dim_at(deg));
        m.set_block(0, 0, RatMatrix::identity(a.dim_at(deg + 1)));
        maps.push_back(std::move(m));
    }
    return ChainMap(c, std::move(ashift), lo, std::move(maps));
}

} // namespace moly

#endif
