#ifndef MOLY_ALGEBRA_HPP
#define MOLY_ALGEBRA_HPP

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace moly {

/// One algebra element, concretely: a matrix per ambient slot (vertex).
using MatrixTuple = std::vector<RatMatrix>;

inline RatMatrix flatten_tuple(const MatrixTuple& t) {
    int total = 0;
    for (const auto& m : t) total += m.rows() * m.cols();
    RatMatrix f(total, 1);
    int pos = 0;
    for (const auto& m : t)
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) f.at(pos++, 0) = m.at(i, j);
    return f;
}

inline MatrixTuple identity_tuple(const std::vector<int>& dims) {
    MatrixTuple t;
    t.reserve(dims.size());
    for (int d : dims) t.push_back(RatMatrix::identity(d));
    return t;
}

inline MatrixTuple multiply_tuples(const MatrixTuple& a, const MatrixTuple& b) {
    MatrixTuple c;
    c.reserve(a.size());
    for (size_t v = 0; v < a.size(); ++v) c.push_back(a[v] * b[v]);
    return c;
}

/// Finite-dimensional associative unital algebra over Q, presented by a
/// linearly independent basis of matrix tuples inside Π_v End(Q^{d_v}).
/// Construction checks closure under multiplication (every pairwise product
/// is re-expressed in the basis) and that the identity tuple lies in the
/// span; the structure constants are kept for later use.
class FDAlgebra {
public:
    FDAlgebra(std::vector<int> ambient, std::vector<MatrixTuple> basis)
        : ambient_(std::move(ambient)), basis_(std::move(basis)) {
        for (const auto& t : basis_) {
            if (t.size() != ambient_.size())
                throw std::invalid_argument("FDAlgebra: tuple arity mismatch");
            for (size_t v = 0; v < t.size(); ++v)
                if (t[v].rows() != ambient_[v] || t[v].cols() != ambient_[v])
                    throw std::invalid_argument("FDAlgebra: tuple slot shape mismatch");
        }
        const int d = dim();
        int total = 0;
        for (int dv : ambient_) total += dv * dv;
        flat_ = RatMatrix(total, d);
        for (int j = 0; j < d; ++j) flat_.set_block(0, j, flatten_tuple(basis_[j]));
        if (rank(flat_) != d)
            throw std::invalid_argument("FDAlgebra: basis tuples are linearly dependent");

        auto u = solve(flat_, flatten_tuple(identity_tuple(ambient_)));
        if (!u) throw std::invalid_argument("FDAlgebra: identity tuple not in span");
        unit_.resize(d);
        for (int i = 0; i < d; ++i) unit_[i] = u->at(i, 0);

        mult_.assign(d, std::vector<std::vector<Rat>>(d));
        RatMatrix products(total, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                products.set_block(0, i * d + j, flatten_tuple(multiply_tuples(basis_[i], basis_[j])));
        auto coords = solve(flat_, products);
        if (!coords) throw std::invalid_argument("FDAlgebra: span not closed under multiplication");
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                mult_[i][j].resize(d);
                for (int k = 0; k < d; ++k) mult_[i][j][k] = coords->at(k, i * d + j);
            }
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<int>& ambient() const { return ambient_; }
    const std::vector<MatrixTuple>& basis() const { return basis_; }
    const std::vector<Rat>& unit_coords() const { return unit_; }
    const std::vector<Rat>& structure(int i, int j) const { return mult_[i][j]; }

    std::optional<std::vector<Rat>> coords(const MatrixTuple& t) const {
        auto x = solve(flat_, flatten_tuple(t));
        if (!x) return std::nullopt;
        std::vector<Rat> out(dim());
        for (int i = 0; i < dim(); ++i) out[i] = x->at(i, 0);
        return out;
    }

    MatrixTuple element(const std::vector<Rat>& coords) const {
        MatrixTuple t;
        for (size_t v = 0; v < ambient_.size(); ++v) t.push_back(RatMatrix::zero(ambient_[v], ambient_[v]));
        for (int i = 0; i < dim(); ++i) {
            if (coords[i] == 0) continue;
            for (size_t v = 0; v < ambient_.size(); ++v) t[v] = t[v] + basis_[i][v] * coords[i];
        }
        return t;
    }

    std::vector<Rat> multiply(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
        std::vector<Rat> out(dim(), Rat(0));
        for (int i = 0; i < dim(); ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < dim(); ++j) {
                if (y[j] == 0) continue;
                const Rat f = x[i] * y[j];
                for (int k = 0; k < dim(); ++k) out[k] += f * mult_[i][j][k];
            }
        }
        return out;
    }

    /// Matrix of left multiplication by basis element i, in basis coordinates.
    RatMatrix left_mult(int i) const {
        RatMatrix m(dim(), dim());
        for (int j = 0; j < dim(); ++j)
            for (int k = 0; k < dim(); ++k) m.at(k, j) = mult_[i][j][k];
        return m;
    }

    /// Gram matrix of the trace form (x, y) ↦ tr(L_{xy}).
    RatMatrix trace_form() const {
        const int d = dim();
        std::vector<Rat> ltr(d, Rat(0));  // traces of left multiplications
        for (int k = 0; k < d; ++k)
            for (int j = 0; j < d; ++j) ltr[k] += mult_[k][j][j];
        RatMatrix t(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Rat s(0);
                for (int k = 0; k < d; ++k) s += mult_[i][j][k] * ltr[k];
                t.at(i, j) = s;
            }
        return t;
    }

    /// Jacobson radical in characteristic zero: the kernel of the trace form
    /// (Dickson's criterion).  Columns are coordinates of a canonical basis.
    RatMatrix radical() const { return column_space_basis(kernel_basis(trace_form())); }

private:
    std::vector<int> ambient_;
    std::vector<MatrixTuple> basis_;
    std::vector<Rat> unit_;
    RatMatrix flat_;
    std::vector<std::vector<std::vector<Rat>>> mult_;
};

/// Finite-dimensional left module over an FDAlgebra: one action matrix per
/// algebra basis element.  validate() checks the structure constants and that
/// the unit acts as the identity.
struct AModule {
    int dim = 0;
    std::vector<RatMatrix> action;

    RatMatrix act(const FDAlgebra& a, const std::vector<Rat>& coords) const {
        RatMatrix m = RatMatrix::zero(dim, dim);
        for (size_t i = 0; i < action.size(); ++i)
            if (coords[i] != 0) m = m + action[i] * coords[i];
        return m;
    }

    void validate(const FDAlgebra& a) const {
        if (static_cast<int>(action.size()) != a.dim())
            throw std::invalid_argument("AModule: one action matrix per basis element required");
        for (const auto& m : action)
            if (m.rows() != dim || m.cols() != dim)
                throw std::invalid_argument("AModule: action shape mismatch");
        for (int i = 0; i < a.dim(); ++i)
            for (int j = 0; j < a.dim(); ++j) {
                RatMatrix lhs = action[i] * action[j];
                RatMatrix rhs = act(a, a.structure(i, j));
                if (lhs != rhs)
                    throw std::invalid_argument("AModule: action violates structure constants at (" +
                                                std::to_string(i) + "," + std::to_string(j) + ")");
            }
        if (act(a, a.unit_coords()) != RatMatrix::identity(dim))
            throw std::invalid_argument("AModule: unit does not act as identity");
    }
};

/// Direct sum of modules.
inline AModule direct_sum(const AModule& m, const AModule& n) {
    AModule s;
    s.dim = m.dim + n.dim;
    for (size_t i = 0; i < m.action.size(); ++i) {
        RatMatrix a(s.dim, s.dim);
        a.set_block(0, 0, m.action[i]);
        a.set_block(m.dim, m.dim, n.action[i]);
        s.action.push_back(std::move(a));
    }
    return s;
}

/// Conjugate module: action matrices g·act·g⁻¹ (an isomorphic copy).
inline AModule conjugate(const AModule& m, const RatMatrix& g) {
    auto gi = inverse(g);
    if (!gi) throw std::invalid_argument("conjugate: matrix not invertible");
    AModule out;
    out.dim = m.dim;
    for (const auto& a : m.action) out.action.push_back(g * a * *gi);
    return out;
}

/// Basis of Hom_A(m, n) = {f : f·act_m(i) = act_n(i)·f for all i}.
inline std::vector<RatMatrix> hom_space(const FDAlgebra& a, const AModule& m, const AModule& n) {
    const int rows = n.dim, cols = m.dim;
    const int unknowns = rows * cols;
    RatMatrix sys(a.dim() * unknowns, unknowns);
    int r = 0;
    for (int i = 0; i < a.dim(); ++i) {
        // f·act_m(i) − act_n(i)·f = 0, entry (p,q).
        for (int p = 0; p < rows; ++p)
            for (int q = 0; q < cols; ++q) {
                for (int k = 0; k < cols; ++k)
                    sys.at(r, p * cols + k) += m.action[i].at(k, q);
                for (int k = 0; k < rows; ++k)
                    sys.at(r, k * cols + q) -= n.action[i].at(p, k);
                ++r;
            }
    }
    RatMatrix ker = kernel_basis(sys);
    std::vector<RatMatrix> out;
    for (int j = 0; j < ker.cols(); ++j) {
        RatMatrix f(rows, cols);
        for (int p = 0; p < rows; ++p)
            for (int q = 0; q < cols; ++q) f.at(p, q) = ker.at(p * cols + q, j);
        out.push_back(std::move(f));
    }
    return out;
}

/// Smallest A-submodule containing the given columns, as a canonical basis.
/// A single pass suffices because the basis action spans the algebra.
inline RatMatrix submodule_closure(const FDAlgebra& a, const AModule& m, const RatMatrix& seed) {
    RatMatrix all = seed;
    for (const auto& act : m.action) all = hstack(all, act * seed);
    return column_space_basis(all);
}

/// Module structure on a submodule (columns of `basis` must span an invariant
/// subspace).
inline AModule restrict_action(const FDAlgebra& a, const AModule& m, const RatMatrix& basis) {
    AModule out;
    out.dim = basis.cols();
    for (const auto& act : m.action) {
        auto x = solve(basis, act * basis);
        if (!x) throw std::invalid_argument("restrict_action: subspace is not invariant");
        out.action.push_back(std::move(*x));
    }
    return out;
}

/// Quotient module m / span(basis); also returns the chosen complement
/// columns (unit vectors, greedy first-pivot order) used as the carrier.
inline std::pair<AModule, RatMatrix> quotient_action(const FDAlgebra& a, const AModule& m,
                                                     const RatMatrix& basis) {
    const int n = m.dim;
    RatMatrix full = basis;
    IncrementalSpan span(n);
    span.add_columns(basis);
    RatMatrix complement(n, 0);
    for (int j = 0; j < n && span.rank() < n; ++j) {
        RatMatrix e(n, 1);
        e.at(j, 0) = 1;
        if (span.add(e)) {
            complement = hstack(complement, e);
            full = hstack(full, e);
        }
    }
    AModule q;
    q.dim = complement.cols();
    const int s = basis.cols();
    for (const auto& act : m.action) {
        auto x = solve(full, act * complement);
        if (!x) throw std::logic_error("quotient_action: basis completion failed");
        q.action.push_back(x->block(s, 0, q.dim, q.dim));
    }
    return {q, complement};
}

struct CompositionSeries {
    int length = 0;
    /// Strictly increasing chain 0 = M_0 ⊂ … ⊂ M_length = M (canonical bases,
    /// the zero step omitted when dim = 0).
    std::vector<RatMatrix> series;
    /// False when some layer was declared simple only because the idempotent
    /// search exhausted its budget; lengths are then upper bounds.
    bool certified = true;
};

namespace detail {

/// Search for a proper nonzero submodule of a *semisimple* module.  Returns
/// a canonical basis, or nullopt with `certified` telling whether simplicity
/// was actually proved (endomorphism algebra of dimension one) rather than
/// assumed after the budget ran out.
struct SubmoduleSearch {
    std::optional<RatMatrix> submodule;
    bool certified = false;
};

inline SubmoduleSearch find_proper_submodule(const FDAlgebra& a, const AModule& m,
                                             std::mt19937_64& rng, int random_budget) {
    SubmoduleSearch out;
    if (m.dim <= 1) {
        out.certified = true;
        return out;
    }
    // Cyclic submodules from coordinate vectors.
    for (int p = 0; p < m.dim; ++p) {
        RatMatrix e(m.dim, 1);
        e.at(p, 0) = 1;
        RatMatrix w = submodule_closure(a, m, e);
        if (w.cols() > 0 && w.cols() < m.dim) {
            out.submodule = w;
            return out;
        }
    }
    const std::vector<RatMatrix> endos = hom_space(a, m, m);
    if (endos.size() == 1) {
        out.certified = true;  // End = Q, hence simple
        return out;
    }
    // Elements of End(m) whose minimal polynomial is not irreducible yield
    // invariant kernels: coprime factor kernels or kernels of nilpotent parts.
    auto try_element = [&](const RatMatrix& x) -> std::optional<RatMatrix> {
        const Poly mu = min_poly(x);
        if (mu.degree() <= 1) return std::nullopt;
        auto parts = squarefree_decomposition(mu);
        Poly g;
        if (parts.size() > 1) {
            g = poly_pow(parts[0].first, parts[0].second);
        } else if (parts.size() == 1 && parts[0].second > 1) {
            g = parts[0].first;  // radical part: g(x) is nilpotent and nonzero
        } else {
            FactorResult fr = split_squarefree(mu);
            if (fr.status != FactorStatus::Split) return std::nullopt;
            g = fr.g;
        }
        RatMatrix w = column_space_basis(kernel_basis(eval_at(g, x)));
        if (w.cols() == 0 || w.cols() >= m.dim) return std::nullopt;
        return w;
    };
    std::vector<RatMatrix> candidates;
    for (const auto& e : endos) candidates.push_back(e);
    for (size_t i = 0; i < endos.size(); ++i)
        for (size_t j = 0; j < endos.size(); ++j) candidates.push_back(endos[i] * endos[j]);
    for (const auto& x : candidates)
        if (auto w = try_element(x)) {
            out.submodule = *w;
            return out;
        }
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < random_budget; ++t) {
        RatMatrix x = RatMatrix::zero(m.dim, m.dim);
        for (const auto& e : endos) x = x + e * Rat(coeff(rng));
        if (auto w = try_element(x)) {
            out.submodule = *w;
            return out;
        }
    }
    return out;  // budget exhausted, simplicity unconfirmed
}

/// Ascending chain 0 ⊂ … ⊂ m with simple quotients, for semisimple m.
/// Chain entries are bases expressed in the coordinates of m; the final full
/// step is included, the zero step is not.
inline void semisimple_chain(const FDAlgebra& a, const AModule& m, std::mt19937_64& rng,
                             int random_budget, std::vector<RatMatrix>& chain_out, bool& certified) {
    if (m.dim == 0) return;
    SubmoduleSearch found = find_proper_submodule(a, m, rng, random_budget);
    if (!found.submodule) {
        if (!found.certified) certified = false;
        chain_out.push_back(RatMatrix::identity(m.dim));
        return;
    }
    const RatMatrix& w = *found.submodule;
    AModule sub = restrict_action(a, m, w);
    std::vector<RatMatrix> sub_chain;
    semisimple_chain(a, sub, rng, random_budget, sub_chain, certified);
    for (const auto& c : sub_chain) chain_out.push_back(column_space_basis(w * c));
    auto [quot, complement] = quotient_action(a, m, w);
    std::vector<RatMatrix> quot_chain;
    semisimple_chain(a, quot, rng, random_budget, quot_chain, certified);
    for (const auto& c : quot_chain)
        chain_out.push_back(column_space_basis(hstack(w, complement * c)));
}

} // namespace detail

/// Composition length and a full composition series of m, computed through
/// the radical filtration with each semisimple layer split by idempotent /
/// kernel search in its endomorphism algebra.  The random part of the search
/// is driven entirely by `seed`.
inline CompositionSeries composition_series(const FDAlgebra& a, const AModule& m,
                                            unsigned long seed = 0, int random_budget = 64) {
    CompositionSeries out;
    if (m.dim == 0) return out;
    std::mt19937_64 rng(seed);

    const RatMatrix rad = a.radical();
    std::vector<RatMatrix> rad_elems;
    for (int j = 0; j < rad.cols(); ++j) {
        std::vector<Rat> coords(a.dim());
        for (int i = 0; i < a.dim(); ++i) coords[i] = rad.at(i, j);
        rad_elems.push_back(m.act(a, coords));
    }

    // Radical filtration m ⊇ J·m ⊇ J²·m ⊇ … ⊇ 0.
    std::vector<RatMatrix> filtration{RatMatrix::identity(m.dim)};
    for (;;) {
        const RatMatrix& prev = filtration.back();
        if (prev.cols() == 0) break;
        RatMatrix next(m.dim, 0);
        for (const auto& r : rad_elems) next = hstack(next, r * prev);
        next = column_space_basis(next);
        if (next.cols() == prev.cols())
            throw std::logic_error("composition_series: radical filtration stalled (radical not nilpotent?)");
        filtration.push_back(std::move(next));
        if (filtration.back().cols() == 0) break;
    }

    out.series.push_back(RatMatrix(m.dim, 0));  // the zero submodule
    for (int k = static_cast<int>(filtration.size()) - 2; k >= 0; --k) {
        const RatMatrix& big = filtration[k];
        const RatMatrix& small = filtration[k + 1];
        // Carrier of the layer big/small inside the coordinates of big.
        AModule big_mod = restrict_action(a, m, big);
        auto small_in_big = solve(big, small);
        if (!small_in_big) throw std::logic_error("composition_series: filtration not nested");
        auto [layer, complement] = quotient_action(a, big_mod, *small_in_big);
        std::vector<RatMatrix> chain;
        detail::semisimple_chain(a, layer, rng, random_budget, chain, out.certified);
        for (const auto& c : chain)
            out.series.push_back(column_space_basis(hstack(small, big * (complement * c))));
    }
    out.length = static_cast<int>(out.series.size()) - 1;
    return out;
}

inline int composition_length(const FDAlgebra& a, const AModule& m, unsigned long seed = 0) {
    return composition_series(a, m, seed).length;
}

/// Finite-dimensional comodule over the dual coalgebra A^∨, with the
/// coalgebra data carried along.  Tensor index conventions: M⊗C ordered
/// M-major ((p,i) ↦ p·dim(C)+i), C⊗C ordered (i,j) ↦ i·dim(C)+j.
struct Comodule {
    int coalgebra_dim = 0;
    RatMatrix comultiplication;  // C → C⊗C, (a²)×a
    RatMatrix counit;            // C → Q, 1×a
    int dim = 0;
    RatMatrix coaction;          // M → M⊗C, (dim·a)×dim

    void validate() const {
        const int a = coalgebra_dim, m = dim;
        const RatMatrix ia = RatMatrix::identity(a), im = RatMatrix::identity(m);
        // Coalgebra axioms.
        if (kron(comultiplication, ia) * comultiplication !=
            kron(ia, comultiplication) * comultiplication)
            throw std::invalid_argument("Comodule: comultiplication not coassociative");
        if (kron(counit, ia) * comultiplication != ia ||
            kron(ia, counit) * comultiplication != ia)
            throw std::invalid_argument("Comodule: counit axiom fails");
        // Comodule axioms.
        if (kron(coaction, ia) * coaction != kron(im, comultiplication) * coaction)
            throw std::invalid_argument("Comodule: coaction not coassociative");
        if (kron(im, counit) * coaction != im)
            throw std::invalid_argument("Comodule: coaction counit axiom fails");
    }
};

/// The comodule M^∨ over A^∨ attached to a left A-module (finite-dimensional
/// case of the module/comodule equivalence); written in dual-basis
/// coordinates, so the carrier has the same dimension.
inline Comodule dual_comodule(const FDAlgebra& a, const AModule& m) {
    const int d = a.dim();
    Comodule c;
    c.coalgebra_dim = d;
    c.comultiplication = RatMatrix(d * d, d);
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) c.comultiplication.at(i * d + j, k) = a.structure(i, j)[k];
    c.counit = RatMatrix(1, d);
    for (int k = 0; k < d; ++k) c.counit.at(0, k) = a.unit_coords()[k];
    c.dim = m.dim;
    c.coaction = RatMatrix(m.dim * d, m.dim);
    for (int p = 0; p < m.dim; ++p)
        for (int q = 0; q < m.dim; ++q)
            for (int i = 0; i < d; ++i) c.coaction.at(q * d + i, p) = m.action[i].at(p, q);
    return c;
}

/// Inverse construction: recover the left A-module from a comodule over A^∨.
inline AModule dualize_back(const FDAlgebra& a, const Comodule& c) {
    if (c.coalgebra_dim != a.dim())
        throw std::invalid_argument("dualize_back: coalgebra dimension mismatch");
    AModule m;
    m.dim = c.dim;
    for (int i = 0; i < a.dim(); ++i) {
        RatMatrix act(c.dim, c.dim);
        for (int p = 0; p < c.dim; ++p)
            for (int q = 0; q < c.dim; ++q) act.at(p, q) = c.coaction.at(q * a.dim() + i, p);
        m.action.push_back(std::move(act));
    }
    m.validate(a);
    return m;
}

/// Explicit isomorphism between two modules, if one exists among rational
/// combinations of a Hom basis (identity candidates are found immediately).
inline std::optional<RatMatrix> find_module_isomorphism(const FDAlgebra& a, const AModule& m,
                                                        const AModule& n, unsigned long seed = 0,
                                                        int tries = 64) {
    if (m.dim != n.dim) return std::nullopt;
    const auto homs = hom_space(a, m, n);
    for (const auto& f : homs)
        if (rank(f) == m.dim) return f;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int t = 0; t < tries; ++t) {
        RatMatrix f = RatMatrix::zero(n.dim, m.dim);
        for (const auto& h : homs) f = f + h * Rat(coeff(rng));
        if (m.dim == 0 || rank(f) == m.dim) return f;
    }
    return std::nullopt;
}

} // namespace moly

#endif
