#ifndef MOLY_DIAGRAM_HPP
#define MOLY_DIAGRAM_HPP

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "matrix.hpp"

namespace moly {

/// Finite oriented graph; loops and parallel edges allowed.  Vertices are
/// kept sorted by identifier so every downstream basis is deterministic.
class Diagram {
public:
    struct Edge {
        std::string id, src, dst;
    };

    Diagram() = default;
    Diagram(std::vector<std::string> vertices, std::vector<Edge> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::sort(vertices_.begin(), vertices_.end());
        if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
            throw std::invalid_argument("Diagram: duplicate vertex id");
        std::stable_sort(edges_.begin(), edges_.end(),
                         [](const Edge& a, const Edge& b) { return a.id < b.id; });
        std::set<std::string> edge_ids;
        for (const auto& e : edges_) {
            if (!edge_ids.insert(e.id).second)
                throw std::invalid_argument("Diagram: duplicate edge id '" + e.id + "'");
            if (!has_vertex(e.src) || !has_vertex(e.dst))
                throw std::invalid_argument("Diagram: edge '" + e.id + "' references missing vertex");
        }
    }

    const std::vector<std::string>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_vertex(const std::string& v) const {
        return std::binary_search(vertices_.begin(), vertices_.end(), v);
    }
    int vertex_index(const std::string& v) const {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end() || *it != v)
            throw std::invalid_argument("Diagram: unknown vertex '" + v + "'");
        return static_cast<int>(it - vertices_.begin());
    }

private:
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
};

/// Representation of a diagram in finite-dimensional rational vector spaces:
/// a dimension per vertex, a matrix per edge mapping T(src) → T(dst).
struct Representation {
    Diagram diagram;
    std::vector<int> vdim;          // by vertex index
    std::vector<RatMatrix> emat;    // by edge index (diagram order)

    void validate() const {
        if (vdim.size() != diagram.vertices().size() || emat.size() != diagram.edges().size())
            throw std::invalid_argument("Representation: size mismatch");
        for (size_t e = 0; e < emat.size(); ++e) {
            const auto& edge = diagram.edges()[e];
            if (emat[e].rows() != vdim[diagram.vertex_index(edge.dst)] ||
                emat[e].cols() != vdim[diagram.vertex_index(edge.src)])
                throw std::invalid_argument("Representation: edge matrix shape mismatch at '" +
                                            edge.id + "'");
        }
    }
};

/// Vertex subset; the induced edge set is always the full set of edges with
/// both endpoints inside (fullness is not a choice).
class FullSubdiagram {
public:
    FullSubdiagram(const Diagram& d, std::vector<std::string> verts) {
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        for (const auto& v : verts) indices_.push_back(d.vertex_index(v));
        std::sort(indices_.begin(), indices_.end());
        for (size_t e = 0; e < d.edges().size(); ++e) {
            const auto& edge = d.edges()[e];
            if (contains(d.vertex_index(edge.src)) && contains(d.vertex_index(edge.dst)))
                induced_edges_.push_back(static_cast<int>(e));
        }
    }

    static FullSubdiagram whole(const Diagram& d) { return FullSubdiagram(d, d.vertices()); }

    const std::vector<int>& vertex_indices() const { return indices_; }
    const std::vector<int>& induced_edges() const { return induced_edges_; }

    bool contains(int vertex_index) const {
        return std::binary_search(indices_.begin(), indices_.end(), vertex_index);
    }
    bool subset_of(const FullSubdiagram& o) const {
        return std::includes(o.indices_.begin(), o.indices_.end(), indices_.begin(),
                             indices_.end());
    }
    /// Position of a diagram vertex inside this subdiagram's ordering.
    int position(int vertex_index) const {
        auto it = std::lower_bound(indices_.begin(), indices_.end(), vertex_index);
        if (it == indices_.end() || *it != vertex_index)
            throw std::invalid_argument("FullSubdiagram: vertex not in subdiagram");
        return static_cast<int>(it - indices_.begin());
    }

private:
    std::vector<int> indices_;
    std::vector<int> induced_edges_;
};

namespace detail {

/// Basis of all tuples (X_v) with X_v: Q^{cd[v]} → Q^{rd[v]} satisfying
/// X_w·B_e = A_e·X_v for every listed edge (v, w, A_e, B_e).  This is the
/// stacked-kernel solve behind both the commutant computation and its
/// per-block variants.
struct IntertwinerEdge {
    int src, dst;
    RatMatrix a;  // rd[src] → rd[dst]
    RatMatrix b;  // cd[src] → cd[dst]
};

inline std::vector<std::vector<RatMatrix>> intertwiner_tuples(
    const std::vector<int>& rd, const std::vector<int>& cd,
    const std::vector<IntertwinerEdge>& edges) {
    const int nv = static_cast<int>(rd.size());
    std::vector<int> offs(nv + 1, 0);
    for (int v = 0; v < nv; ++v) offs[v + 1] = offs[v] + rd[v] * cd[v];
    const int unknowns = offs[nv];
    int eqs = 0;
    for (const auto& e : edges) eqs += rd[e.dst] * cd[e.src];
    RatMatrix sys(eqs, unknowns);
    int r = 0;
    for (const auto& e : edges) {
        // (X_dst·B − A·X_src)[p][q] = 0
        for (int p = 0; p < rd[e.dst]; ++p)
            for (int q = 0; q < cd[e.src]; ++q) {
                for (int k = 0; k < cd[e.dst]; ++k)
                    if (e.b.at(k, q) != 0)
                        sys.at(r, offs[e.dst] + p * cd[e.dst] + k) += e.b.at(k, q);
                for (int k = 0; k < rd[e.src]; ++k)
                    if (e.a.at(p, k) != 0)
                        sys.at(r, offs[e.src] + k * cd[e.src] + q) -= e.a.at(p, k);
                ++r;
            }
    }
    const RatMatrix ker = kernel_basis(sys);
    std::vector<std::vector<RatMatrix>> out;
    for (int j = 0; j < ker.cols(); ++j) {
        std::vector<RatMatrix> tuple;
        for (int v = 0; v < nv; ++v) {
            RatMatrix x(rd[v], cd[v]);
            for (int p = 0; p < rd[v]; ++p)
                for (int q = 0; q < cd[v]; ++q) x.at(p, q) = ker.at(offs[v] + p * cd[v] + q, j);
            tuple.push_back(std::move(x));
        }
        out.push_back(std::move(tuple));
    }
    return out;
}

} // namespace detail

/// Basis tuples of End(T|_f): all (φ_v)_{v∈f} commuting with every induced
/// edge matrix.  Deterministic (kernel of the stacked commutator system).
inline std::vector<MatrixTuple> commutant_basis(const Representation& rep,
                                                const FullSubdiagram& f) {
    std::vector<int> dims;
    for (int vi : f.vertex_indices()) dims.push_back(rep.vdim[vi]);
    std::vector<detail::IntertwinerEdge> edges;
    for (int ei : f.induced_edges()) {
        const auto& edge = rep.diagram.edges()[ei];
        const int s = f.position(rep.diagram.vertex_index(edge.src));
        const int d = f.position(rep.diagram.vertex_index(edge.dst));
        edges.push_back({s, d, rep.emat[ei], rep.emat[ei]});
    }
    return detail::intertwiner_tuples(dims, dims, edges);
}

/// End(T|_f) as a concrete algebra.  Construction re-checks closure and the
/// identity tuple (the commutant is closed by definition; the check guards
/// the solver).
inline FDAlgebra end_algebra(const Representation& rep, const FullSubdiagram& f) {
    if (f.vertex_indices().empty())
        throw std::invalid_argument("end_algebra: empty subdiagram");
    std::vector<int> dims;
    for (int vi : f.vertex_indices()) dims.push_back(rep.vdim[vi]);
    return FDAlgebra(dims, commutant_basis(rep, f));
}

/// Algebra homomorphism given by its matrix on basis coordinates; validation
/// checks multiplicativity on basis pairs and unit preservation.
struct AlgebraHom {
    FDAlgebra source, target;
    RatMatrix matrix;  // target coords × source coords

    std::vector<Rat> apply(const std::vector<Rat>& x) const {
        std::vector<Rat> out(target.dim(), Rat(0));
        for (int i = 0; i < target.dim(); ++i)
            for (int j = 0; j < source.dim(); ++j) out[i] += matrix.at(i, j) * x[j];
        return out;
    }

    void validate() const {
        const int ds = source.dim();
        for (int i = 0; i < ds; ++i)
            for (int j = 0; j < ds; ++j) {
                std::vector<Rat> ei(ds, Rat(0)), ej(ds, Rat(0));
                ei[i] = 1;
                ej[j] = 1;
                if (apply(source.multiply(ei, ej)) != target.multiply(apply(ei), apply(ej)))
                    throw std::invalid_argument("AlgebraHom: not multiplicative");
            }
        if (apply(source.unit_coords()) != target.unit_coords())
            throw std::invalid_argument("AlgebraHom: unit not preserved");
    }
};

/// Restriction of scalars map End(T|_{f2}) → End(T|_{f1}) for f1 ⊆ f2:
/// drop the tuple components outside f1 and re-express in the target basis.
inline AlgebraHom restriction_hom(const Representation& rep, const FullSubdiagram& f1,
                                  const FullSubdiagram& f2) {
    if (!f1.subset_of(f2))
        throw std::invalid_argument("restriction_hom: f1 is not a subset of f2");
    FDAlgebra a2 = end_algebra(rep, f2);
    FDAlgebra a1 = end_algebra(rep, f1);
    RatMatrix m(a1.dim(), a2.dim());
    for (int j = 0; j < a2.dim(); ++j) {
        MatrixTuple dropped;
        for (int vi : f1.vertex_indices()) dropped.push_back(a2.basis()[j][f2.position(vi)]);
        auto coords = a1.coords(dropped);
        if (!coords)
            throw std::logic_error("restriction_hom: restricted tuple escapes the target span");
        for (int i = 0; i < a1.dim(); ++i) m.at(i, j) = (*coords)[i];
    }
    AlgebraHom hom{std::move(a2), std::move(a1), std::move(m)};
    hom.validate();
    return hom;
}

/// The vertex module: End(T|_f) acting on T(v) through its v-component.
inline AModule vertex_module(const Representation& rep, const FullSubdiagram& f,
                             const std::string& v) {
    const int vi = rep.diagram.vertex_index(v);
    if (!f.contains(vi)) throw std::invalid_argument("vertex_module: vertex not in subdiagram");
    const int pos = f.position(vi);
    AModule m;
    m.dim = rep.vdim[vi];
    for (const auto& t : commutant_basis(rep, f)) m.action.push_back(t[pos]);
    return m;
}

/// Pull a module over `hom.target` back to a module over `hom.source`.
inline AModule restrict_scalars(const AlgebraHom& hom, const AModule& m) {
    AModule out;
    out.dim = m.dim;
    for (int i = 0; i < hom.source.dim(); ++i) {
        std::vector<Rat> ei(hom.source.dim(), Rat(0));
        ei[i] = 1;
        out.action.push_back(m.act(hom.target, hom.apply(ei)));
    }
    return out;
}

namespace detail {

/// Canonical span of the flattened block-diagonal action of an algebra on
/// X ⊕ Y; equality of these spans means equality of image subalgebras.
inline RatMatrix action_image_span(const FDAlgebra& a, const AModule& x, const AModule& y) {
    const int n = x.dim + y.dim;
    RatMatrix flat(n * n, a.dim());
    for (int b = 0; b < a.dim(); ++b) {
        for (int i = 0; i < x.dim; ++i)
            for (int j = 0; j < x.dim; ++j) flat.at(i * n + j, b) = x.action[b].at(i, j);
        for (int i = 0; i < y.dim; ++i)
            for (int j = 0; j < y.dim; ++j)
                flat.at((x.dim + i) * n + (x.dim + j), b) = y.action[b].at(i, j);
    }
    return column_space_basis(flat);
}

} // namespace detail

struct DiagramHom {
    int dim = 0;
    std::vector<RatMatrix> basis;  // intertwiners X → Y over End(T|_{f3})
    bool stabilized = false;       // image subalgebra already equals the whole-diagram one
};

/// Hom in the diagram category via the colimit formula: restrict both
/// modules to End(T|_{f3}) and compute intertwiners.  `stabilized` reports
/// whether enlarging f3 to the full diagram can still change the acting
/// image subalgebra on X ⊕ Y (if not, the colimit value is attained).
inline DiagramHom hom_diagram_cat(const Representation& rep, const FullSubdiagram& f1,
                                  const AModule& x, const FullSubdiagram& f2, const AModule& y,
                                  const FullSubdiagram& f3) {
    if (!f1.subset_of(f3) || !f2.subset_of(f3))
        throw std::invalid_argument("hom_diagram_cat: f3 must contain f1 and f2");
    AlgebraHom r1 = restriction_hom(rep, f1, f3);
    AlgebraHom r2 = restriction_hom(rep, f2, f3);
    if (static_cast<int>(x.action.size()) != r1.target.dim() ||
        static_cast<int>(y.action.size()) != r2.target.dim())
        throw std::invalid_argument("hom_diagram_cat: module/algebra pairing mismatch");
    x.validate(r1.target);
    y.validate(r2.target);
    AModule x3 = restrict_scalars(r1, x);
    AModule y3 = restrict_scalars(r2, y);

    DiagramHom out;
    out.basis = hom_space(r1.source, x3, y3);
    out.dim = static_cast<int>(out.basis.size());

    FullSubdiagram whole = FullSubdiagram::whole(rep.diagram);
    AlgebraHom w1 = restriction_hom(rep, f1, whole);
    AlgebraHom w2 = restriction_hom(rep, f2, whole);
    RatMatrix span3 = detail::action_image_span(r1.source, x3, y3);
    RatMatrix spanW =
        detail::action_image_span(w1.source, restrict_scalars(w1, x), restrict_scalars(w2, y));
    out.stabilized = (span3 == spanW);
    return out;
}

/// Witness that a module is a subquotient of a direct sum of vertex modules:
/// m is a quotient of A^g (g = greedy generating-set size) and A^g embeds in
/// ⊕_v (Tv)^{g·vdim(v)} by columns.  Both maps are verified module maps.
struct SubquotientWitness {
    int generators = 0;
    std::vector<int> multiplicities;  // per subdiagram vertex: g·vdim(v)
    RatMatrix surjection;             // A^g → m
    RatMatrix injection;              // A^g → ⊕_v (Tv)^{g·vdim(v)}
};

inline SubquotientWitness subquotient_witness(const Representation& rep, const FullSubdiagram& f,
                                              const FDAlgebra& a, const AModule& m) {
    m.validate(a);
    const int d = a.dim();

    // Greedy generating set.
    std::vector<RatMatrix> gens;
    IncrementalSpan tracker(m.dim);
    for (int p = 0; p < m.dim && tracker.rank() < m.dim; ++p) {
        RatMatrix e(m.dim, 1);
        e.at(p, 0) = 1;
        if (tracker.contains(e)) continue;
        gens.push_back(e);
        RatMatrix closure = submodule_closure(a, m, e);
        tracker.add_columns(closure);
    }
    const int g = static_cast<int>(gens.size());

    SubquotientWitness w;
    w.generators = g;

    // Surjection A^g → m, (a_1, …, a_g) ↦ Σ a_i · v_i.
    w.surjection = RatMatrix(m.dim, g * d);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < d; ++j) w.surjection.set_block(0, i * d + j, m.action[j] * gens[i]);
    if (rank(w.surjection) != m.dim)
        throw std::logic_error("subquotient_witness: generating set failed to surject");

    // Embedding A → ⊕_v (Tv)^{vdim v} by tuple columns, repeated g times.
    int cols_total = 0;
    for (int vi : f.vertex_indices()) cols_total += rep.vdim[vi] * rep.vdim[vi];
    RatMatrix embed(cols_total, d);
    for (int j = 0; j < d; ++j) {
        int pos = 0;
        for (size_t p = 0; p < f.vertex_indices().size(); ++p) {
            const RatMatrix& comp = a.basis()[j][p];
            for (int c = 0; c < comp.cols(); ++c)
                for (int r = 0; r < comp.rows(); ++r) embed.at(pos++, j) = comp.at(r, c);
        }
    }
    if (rank(embed) != d) throw std::logic_error("subquotient_witness: embedding not injective");
    w.injection = RatMatrix(g * cols_total, g * d);
    for (int i = 0; i < g; ++i) w.injection.set_block(i * cols_total, i * d, embed);

    w.multiplicities.clear();
    for (int vi : f.vertex_indices()) w.multiplicities.push_back(g * rep.vdim[vi]);

    // Verify both maps are module maps: the regular action on A^g against m,
    // and against the direct sum of vertex-module copies.
    for (int j = 0; j < d; ++j) {
        RatMatrix reg(g * d, g * d);
        for (int i = 0; i < g; ++i) reg.set_block(i * d, i * d, a.left_mult(j));
        if (w.surjection * reg != m.action[j] * w.surjection)
            throw std::logic_error("subquotient_witness: surjection is not a module map");
        RatMatrix big(g * cols_total, g * cols_total);
        for (int i = 0; i < g; ++i) {
            int pos = 0;
            for (size_t p = 0; p < f.vertex_indices().size(); ++p) {
                const int dv = rep.vdim[f.vertex_indices()[p]];
                for (int c = 0; c < dv; ++c) {
                    big.set_block(i * cols_total + pos, i * cols_total + pos, a.basis()[j][p]);
                    pos += dv;
                }
            }
        }
        if (w.injection * reg != big * w.injection)
            throw std::logic_error("subquotient_witness: injection is not a module map");
    }
    return w;
}

} // namespace moly

#endif
