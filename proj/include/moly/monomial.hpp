#ifndef MOLY_MONOMIAL_HPP
#define MOLY_MONOMIAL_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "complex.hpp"
#include "matrix.hpp"
#include "parallel.hpp"

namespace moly {

/// Subset of the variable set [n], bit j (0-based) = variable j+1.
using Mask = std::uint32_t;

inline int popcount(Mask m) { return std::popcount(m); }

inline std::string mask_to_bits(Mask s, int n) {
    std::string out(n, '0');
    for (int j = 0; j < n; ++j)
        if (s & (Mask(1) << j)) out[j] = '1';
    return out;
}

/// Z^n-graded module determined by its components on the degree box
/// {0,−1}^n: one space per subset S (the coordinates that are −1) and one
/// multiplication-by-x_j map per j ∈ S, going from S to S∖{j}.
struct StraightModule {
    int n = 0;
    std::vector<int> comp;                      // size 1<<n
    std::vector<std::vector<RatMatrix>> up;     // up[S][j] for j ∈ S

    static StraightModule zero(int n) {
        StraightModule m;
        m.n = n;
        m.comp.assign(size_t(1) << n, 0);
        m.up.assign(size_t(1) << n, std::vector<RatMatrix>(n));
        for (Mask s = 0; s < (Mask(1) << n); ++s)
            for (int j = 0; j < n; ++j)
                if (s & (Mask(1) << j)) m.up[s][j] = RatMatrix(0, 0);
        return m;
    }

    const RatMatrix& up_map(Mask s, int j) const { return up[s][j]; }

    bool is_zero() const {
        for (int d : comp)
            if (d) return false;
        return true;
    }

    int total_dim() const {
        int t = 0;
        for (int d : comp) t += d;
        return t;
    }

    void validate() const {
        const Mask top = Mask(1) << n;
        if (comp.size() != top || up.size() != top)
            throw std::invalid_argument("StraightModule: component table size mismatch");
        for (Mask s = 0; s < top; ++s)
            for (int j = 0; j < n; ++j) {
                if (!(s & (Mask(1) << j))) continue;
                const RatMatrix& m = up[s][j];
                if (m.rows() != comp[s & ~(Mask(1) << j)] || m.cols() != comp[s])
                    throw std::invalid_argument("StraightModule: up map shape mismatch");
            }
        // Square commutativity: up_j ∘ up_k = up_k ∘ up_j out of S.
        for (Mask s = 0; s < top; ++s)
            for (int j = 0; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    const Mask bj = Mask(1) << j, bk = Mask(1) << k;
                    if (!(s & bj) || !(s & bk)) continue;
                    if (up[s & ~bj][k] * up[s][j] != up[s & ~bk][j] * up[s][k])
                        throw std::invalid_argument("StraightModule: up maps do not commute");
                }
    }
};

/// Degreewise map of straight modules: one matrix per subset, commuting with
/// all multiplication maps.
struct StraightMap {
    std::vector<RatMatrix> comp;  // size 1<<n

    void validate(const StraightModule& src, const StraightModule& tgt) const {
        const Mask top = Mask(1) << src.n;
        if (comp.size() != top) throw std::invalid_argument("StraightMap: size mismatch");
        for (Mask s = 0; s < top; ++s) {
            if (comp[s].rows() != tgt.comp[s] || comp[s].cols() != src.comp[s])
                throw std::invalid_argument("StraightMap: component shape mismatch");
            for (int j = 0; j < src.n; ++j) {
                if (!(s & (Mask(1) << j))) continue;
                const Mask sj = s & ~(Mask(1) << j);
                if (comp[sj] * src.up[s][j] != tgt.up[s][j] * comp[s])
                    throw std::invalid_argument("StraightMap: naturality square fails");
            }
        }
    }

    bool is_zero() const {
        for (const auto& m : comp)
            if (!m.is_zero()) return false;
        return true;
    }
};

inline StraightMap compose(const StraightMap& g, const StraightMap& f) {
    StraightMap out;
    out.comp.reserve(f.comp.size());
    for (size_t s = 0; s < f.comp.size(); ++s) out.comp.push_back(g.comp[s] * f.comp[s]);
    return out;
}

inline StraightModule direct_sum(const std::vector<const StraightModule*>& parts, int n) {
    StraightModule out = StraightModule::zero(n);
    const Mask top = Mask(1) << n;
    for (Mask s = 0; s < top; ++s) {
        int d = 0;
        for (const auto* p : parts) d += p->comp[s];
        out.comp[s] = d;
    }
    for (Mask s = 0; s < top; ++s)
        for (int j = 0; j < n; ++j) {
            if (!(s & (Mask(1) << j))) continue;
            const Mask sj = s & ~(Mask(1) << j);
            RatMatrix m(out.comp[sj], out.comp[s]);
            int ro = 0, co = 0;
            for (const auto* p : parts) {
                m.set_block(ro, co, p->up[s][j]);
                ro += p->comp[sj];
                co += p->comp[s];
            }
            out.up[s][j] = std::move(m);
        }
    return out;
}

/// Bounded complex of straight modules.  Checked: shapes, naturality of every
/// differential, d∘d = 0 in every subset.
struct StraightComplex {
    int n = 0;
    int offset = 0;
    std::vector<StraightModule> terms;
    std::vector<StraightMap> diffs;

    void validate() const {
        if (!terms.empty() && diffs.size() + 1 != terms.size())
            throw std::invalid_argument("StraightComplex: differential count mismatch");
        for (size_t k = 0; k < diffs.size(); ++k) {
            diffs[k].validate(terms[k], terms[k + 1]);
            if (k > 0) {
                StraightMap dd = compose(diffs[k], diffs[k - 1]);
                if (!dd.is_zero())
                    throw std::invalid_argument("StraightComplex: d∘d != 0 at index " +
                                                std::to_string(k - 1));
            }
        }
    }

    int first_degree() const { return offset; }
    int last_degree() const { return offset + static_cast<int>(terms.size()) - 1; }

    VectComplex subset_complex(Mask s) const {
        std::vector<int> dims;
        std::vector<RatMatrix> ds;
        for (const auto& t : terms) dims.push_back(t.comp[s]);
        for (const auto& d : diffs) ds.push_back(d.comp[s]);
        return VectComplex(offset, std::move(dims), std::move(ds), /*check_composition=*/false);
    }

    RatMatrix up_component(int degree, Mask s, int j) const {
        const int k = degree - offset;
        if (k < 0 || k >= static_cast<int>(terms.size()))
            return RatMatrix(0, 0);
        return terms[k].up[s][j];
    }
};

/// The ring localized at the product of the variables in U: one-dimensional
/// exactly on the subsets S ⊆ U, with identity multiplication maps.
inline StraightModule monomial_localization(int n, Mask u) {
    StraightModule m = StraightModule::zero(n);
    const Mask top = Mask(1) << n;
    for (Mask s = 0; s < top; ++s)
        if ((s & ~u) == 0) m.comp[s] = 1;
    for (Mask s = 0; s < top; ++s)
        for (int j = 0; j < n; ++j) {
            if (!(s & (Mask(1) << j))) continue;
            const Mask sj = s & ~(Mask(1) << j);
            m.up[s][j] = RatMatrix(m.comp[sj], m.comp[s]);
            if (m.comp[s] == 1 && m.comp[sj] == 1) m.up[s][j].at(0, 0) = 1;
        }
    return m;
}

/// Localization of a straight module at the variables in U: component at S
/// becomes the component at S∖U, multiplication by an inverted variable
/// becomes the identity.
inline StraightModule localize_module(const StraightModule& m, Mask u) {
    StraightModule out = StraightModule::zero(m.n);
    const Mask top = Mask(1) << m.n;
    for (Mask s = 0; s < top; ++s) out.comp[s] = m.comp[s & ~u];
    for (Mask s = 0; s < top; ++s)
        for (int j = 0; j < m.n; ++j) {
            const Mask bj = Mask(1) << j;
            if (!(s & bj)) continue;
            if (u & bj)
                out.up[s][j] = RatMatrix::identity(out.comp[s]);
            else
                out.up[s][j] = m.up[s & ~u][j];
        }
    return out;
}

/// The canonical localization map M → M[x_U^{-1}]: at subset S it is the
/// composite of the multiplication maps that clear the inverted variables.
inline StraightMap localization_unit(const StraightModule& m, Mask u) {
    StraightMap f;
    const Mask top = Mask(1) << m.n;
    f.comp.resize(top);
    for (Mask s = 0; s < top; ++s) {
        // Multiply by x_j for each j ∈ S ∩ U, in increasing j order.
        RatMatrix acc = RatMatrix::identity(m.comp[s]);
        Mask cur = s;
        for (int j = 0; j < m.n; ++j) {
            const Mask bj = Mask(1) << j;
            if ((s & bj) && (u & bj)) {
                acc = m.up[cur][j] * acc;
                cur &= ~bj;
            }
        }
        f.comp[s] = acc;  // m.comp[s] → m.comp[s∖U] = out.comp[s]
    }
    return f;
}

/// Squarefree monomial ideal: a minimal antichain of variable supports.
class SqfIdeal {
public:
    SqfIdeal(int n, std::vector<Mask> gens) : n_(n) {
        if (n < 1 || n > 20) throw std::invalid_argument("SqfIdeal: variable count out of range");
        const Mask all = (Mask(1) << n) - 1;
        for (Mask g : gens) {
            if (g == 0)
                throw std::invalid_argument("SqfIdeal: unit ideal (empty-support generator) rejected");
            if (g & ~all) throw std::invalid_argument("SqfIdeal: generator uses unknown variable");
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        for (Mask g : gens) {
            bool redundant = false;
            for (Mask h : gens)
                if (h != g && (h & ~g) == 0) { redundant = true; break; }
            if (!redundant) gens_.push_back(g);
        }
    }

    /// 1-based variable index lists, per the JSON schema.
    static SqfIdeal from_supports(int n, const std::vector<std::vector<int>>& supports) {
        std::vector<Mask> gens;
        for (const auto& sup : supports) {
            Mask g = 0;
            for (int v : sup) {
                if (v < 1 || v > n) throw std::invalid_argument("SqfIdeal: variable index out of range");
                g |= Mask(1) << (v - 1);
            }
            gens.push_back(g);
        }
        return SqfIdeal(n, std::move(gens));
    }

    int n() const { return n_; }
    const std::vector<Mask>& gens() const { return gens_; }
    bool is_zero() const { return gens_.empty(); }

    bool contains_monomial(Mask m) const {
        for (Mask g : gens_)
            if ((g & ~m) == 0) return true;
        return false;
    }
    bool contains(const SqfIdeal& other) const {
        for (Mask g : other.gens_)
            if (!contains_monomial(g)) return false;
        return true;
    }

    SqfIdeal sum(const SqfIdeal& other) const {
        std::vector<Mask> g = gens_;
        g.insert(g.end(), other.gens_.begin(), other.gens_.end());
        return SqfIdeal(n_, std::move(g));
    }
    SqfIdeal intersect(const SqfIdeal& other) const {
        std::vector<Mask> g;
        for (Mask a : gens_)
            for (Mask b : other.gens_) g.push_back(a | b);  // lcm of squarefree monomials
        return SqfIdeal(n_, std::move(g));
    }

    bool operator==(const SqfIdeal& o) const { return n_ == o.n_ && gens_ == o.gens_; }
    bool operator!=(const SqfIdeal& o) const { return !(*this == o); }

private:
    int n_;
    std::vector<Mask> gens_;
};

/// Minimal primes, as variable subsets P minimal with the property that every
/// generator meets P.  Brute force over all subsets, minimality filtered.
inline std::vector<Mask> minimal_primes(const SqfIdeal& i) {
    if (i.is_zero()) throw std::invalid_argument("minimal_primes: zero ideal rejected");
    std::vector<Mask> covers;
    const Mask top = Mask(1) << i.n();
    for (Mask p = 0; p < top; ++p) {
        bool cover = true;
        for (Mask g : i.gens())
            if ((g & p) == 0) { cover = false; break; }
        if (cover) covers.push_back(p);
    }
    std::vector<Mask> minimal;
    for (Mask p : covers) {
        bool is_min = true;
        for (Mask q : covers)
            if (q != p && (q & ~p) == 0) { is_min = false; break; }
        if (is_min) minimal.push_back(p);
    }
    std::sort(minimal.begin(), minimal.end(), [](Mask a, Mask b) {
        if (popcount(a) != popcount(b)) return popcount(a) < popcount(b);
        return a < b;
    });
    return minimal;
}

inline int height(const SqfIdeal& i) {
    const auto primes = minimal_primes(i);
    int h = i.n();
    for (Mask p : primes) h = std::min(h, popcount(p));
    return h;
}

/// Dimension of the zero locus V(i) ⊆ Q^n.
inline int variety_dim(const SqfIdeal& i) { return i.n() - height(i); }

// ---------------------------------------------------------------------------
// Sparse summand-level model for Čech-type complexes.
//
// Every big complex in this artifact is a complex whose terms are direct
// sums of monomial localizations R_U and whose differentials carry rational
// constants between summands, always from a smaller U to a larger one.  That
// monotonicity makes summand-level identities (d∘d = 0, chain-map squares)
// equivalent to the same identities in every box subset at once, so cones,
// pullbacks and homotopies can be manipulated without touching the
// exponentially many subsets.
// ---------------------------------------------------------------------------

struct SparseEntry {
    int row, col;
    Rat val;
};
using SparseBlockMap = std::vector<SparseEntry>;

struct LocComplex {
    int n = 0;
    int offset = 0;
    std::vector<std::vector<Mask>> summands;  // per level: U of each localization summand
    std::vector<SparseBlockMap> diffs;        // level k → k+1

    int levels() const { return static_cast<int>(summands.size()); }
    int first_degree() const { return offset; }
    int last_degree() const { return offset + levels() - 1; }

    const std::vector<Mask>& level(int degree) const {
        static const std::vector<Mask> empty;
        const int k = degree - offset;
        if (k < 0 || k >= levels()) return empty;
        return summands[k];
    }

    LocComplex shift(int s) const {
        LocComplex out = *this;
        out.offset -= s;
        if (s % 2 != 0)
            for (auto& d : out.diffs)
                for (auto& e : d) e.val = -e.val;
        return out;
    }

    std::vector<int> active(int degree, Mask s) const {
        std::vector<int> idx;
        const auto& lv = level(degree);
        for (int i = 0; i < static_cast<int>(lv.size()); ++i)
            if ((s & ~lv[i]) == 0) idx.push_back(i);
        return idx;
    }

    VectComplex subset_complex(Mask s) const {
        std::vector<std::vector<int>> act;
        std::vector<int> dims;
        for (int k = 0; k < levels(); ++k) {
            act.push_back(active(offset + k, s));
            dims.push_back(static_cast<int>(act.back().size()));
        }
        std::vector<RatMatrix> ds;
        for (int k = 0; k + 1 < levels(); ++k) {
            RatMatrix d(dims[k + 1], dims[k]);
            std::vector<int> rowpos(summands[k + 1].size(), -1), colpos(summands[k].size(), -1);
            for (int i = 0; i < dims[k + 1]; ++i) rowpos[act[k + 1][i]] = i;
            for (int i = 0; i < dims[k]; ++i) colpos[act[k][i]] = i;
            for (const auto& e : diffs[k]) {
                // U-monotone: the source being active forces the target active.
                if (colpos[e.col] >= 0) d.at(rowpos[e.row], colpos[e.col]) = e.val;
            }
            ds.push_back(std::move(d));
        }
        return VectComplex(offset, std::move(dims), std::move(ds), /*check_composition=*/false);
    }

    RatMatrix up_component(int degree, Mask s, int j) const {
        const std::vector<int> cols = active(degree, s);
        const std::vector<int> rows = active(degree, s & ~(Mask(1) << j));
        RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        std::vector<int> rowpos(level(degree).size(), -1);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) rowpos[rows[i]] = i;
        for (int c = 0; c < static_cast<int>(cols.size()); ++c)
            m.at(rowpos[cols[c]], c) = 1;
        return m;
    }

    void validate() const {
        for (size_t k = 0; k < diffs.size(); ++k) {
            for (const auto& e : diffs[k]) {
                if (e.row < 0 || e.row >= static_cast<int>(summands[k + 1].size()) || e.col < 0 ||
                    e.col >= static_cast<int>(summands[k].size()))
                    throw std::invalid_argument("LocComplex: sparse entry out of range");
                if (summands[k][e.col] & ~summands[k + 1][e.row])
                    throw std::invalid_argument("LocComplex: differential not U-monotone");
            }
            if (k > 0) {
                std::map<std::pair<int, int>, Rat> acc;
                for (const auto& e1 : diffs[k - 1])
                    for (const auto& e2 : diffs[k])
                        if (e2.col == e1.row) acc[{e2.row, e1.col}] += e2.val * e1.val;
                for (const auto& [key, v] : acc)
                    if (v != 0)
                        throw std::invalid_argument("LocComplex: d∘d != 0 at level " +
                                                    std::to_string(k - 1));
            }
        }
    }
};

/// Degreewise map between two LocComplexes; entries must be U-monotone.
struct LocMap {
    int offset = 0;                   // degree of maps[0]
    std::vector<SparseBlockMap> maps;

    const SparseBlockMap& map_at(int degree) const {
        static const SparseBlockMap empty;
        const int k = degree - offset;
        if (k < 0 || k >= static_cast<int>(maps.size())) return empty;
        return maps[k];
    }

    /// Dense component at a given degree and subset, on active summands.
    RatMatrix component(const LocComplex& src, const LocComplex& tgt, int degree, Mask s) const {
        const std::vector<int> cols = src.active(degree, s);
        const std::vector<int> rows = tgt.active(degree, s);
        RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
        std::vector<int> rowpos(tgt.level(degree).size(), -1), colpos(src.level(degree).size(), -1);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) rowpos[rows[i]] = i;
        for (int i = 0; i < static_cast<int>(cols.size()); ++i) colpos[cols[i]] = i;
        for (const auto& e : map_at(degree))
            if (colpos[e.col] >= 0) m.at(rowpos[e.row], colpos[e.col]) = e.val;
        return m;
    }
};

namespace locdetail {

inline std::map<std::pair<int, int>, Rat> sparse_compose(const SparseBlockMap& second,
                                                         const SparseBlockMap& first) {
    std::map<std::pair<int, int>, Rat> acc;
    std::map<int, std::vector<const SparseEntry*>> by_col;
    for (const auto& e : second) by_col[e.col].push_back(&e);
    for (const auto& e1 : first) {
        auto it = by_col.find(e1.row);
        if (it == by_col.end()) continue;
        for (const auto* e2 : it->second) acc[{e2->row, e1.col}] += e2->val * e1.val;
    }
    return acc;
}

inline void sparse_accumulate(std::map<std::pair<int, int>, Rat>& acc, const SparseBlockMap& m,
                              const Rat& scale) {
    for (const auto& e : m) acc[{e.row, e.col}] += e.val * scale;
}

inline bool all_zero(const std::map<std::pair<int, int>, Rat>& acc) {
    for (const auto& [k, v] : acc)
        if (v != 0) return false;
    return true;
}

} // namespace locdetail

/// Check f: src → tgt commutes with the differentials, summand-level (which
/// is equivalent to commuting in every subset at once, by U-monotonicity).
inline void validate_loc_chain_map(const LocComplex& src, const LocComplex& tgt, const LocMap& f) {
    const int lo = std::min(src.first_degree(), tgt.first_degree());
    const int hi = std::max(src.last_degree(), tgt.last_degree());
    for (int deg = lo; deg < hi; ++deg) {
        auto get_diff = [](const LocComplex& c, int degree) -> const SparseBlockMap& {
            static const SparseBlockMap empty;
            const int k = degree - c.offset;
            if (k < 0 || k >= static_cast<int>(c.diffs.size())) return empty;
            return c.diffs[k];
        };
        auto lhs = locdetail::sparse_compose(f.map_at(deg + 1), get_diff(src, deg));
        auto rhs = locdetail::sparse_compose(get_diff(tgt, deg), f.map_at(deg));
        for (const auto& [k, v] : rhs) lhs[k] -= v;
        if (!locdetail::all_zero(lhs))
            throw std::invalid_argument("LocMap: does not commute with differentials at degree " +
                                        std::to_string(deg));
    }
}

/// Čech complex of a family of squarefree monomials (supports as masks):
/// level k = ⊕ over k-element subfamilies T of the localization at ∪T, with
/// alternating-sign inclusion differentials.  Level 0 is the ring itself.
inline LocComplex cech_from_family(int n, const std::vector<Mask>& family) {
    const int r = static_cast<int>(family.size());
    if (r > 20) throw std::invalid_argument("cech_from_family: family too large");
    LocComplex c;
    c.n = n;
    c.offset = 0;
    std::vector<std::vector<std::uint32_t>> subsets(r + 1);
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << r); ++t)
        subsets[std::popcount(t)].push_back(t);
    c.summands.resize(r + 1);
    for (int k = 0; k <= r; ++k)
        for (std::uint32_t t : subsets[k]) {
            Mask u = 0;
            for (int i = 0; i < r; ++i)
                if (t & (std::uint32_t(1) << i)) u |= family[i];
            c.summands[k].push_back(u);
        }
    c.diffs.resize(r);
    for (int k = 0; k < r; ++k) {
        std::map<std::uint32_t, int> pos;
        for (int i = 0; i < static_cast<int>(subsets[k + 1].size()); ++i) pos[subsets[k + 1][i]] = i;
        for (int ci = 0; ci < static_cast<int>(subsets[k].size()); ++ci) {
            const std::uint32_t t = subsets[k][ci];
            for (int f = 0; f < r; ++f) {
                const std::uint32_t bf = std::uint32_t(1) << f;
                if (t & bf) continue;
                const std::uint32_t t2 = t | bf;
                int sign_pos = std::popcount(t2 & (bf - 1));  // index of f within sorted t2
                Rat sign((sign_pos % 2 == 0) ? 1 : -1);
                c.diffs[k].push_back({pos[t2], ci, sign});
            }
        }
    }
    return c;
}

/// Index-map pullback: for φ: F′ → F with x^{φ(g)} | x^{g}, the chain map
/// C(F) → C(F′) sending the T-component to the φ(T′)-components with
/// alternating signs.  This is the natural map RΓ_{V(F)} → RΓ_{V(F′)} for
/// V(F) ⊆ V(F′).
inline LocMap cech_pullback(const std::vector<Mask>& src_family,
                            const std::vector<Mask>& tgt_family, const std::vector<int>& phi) {
    const int r_src = static_cast<int>(src_family.size());
    const int r_tgt = static_cast<int>(phi.size());
    if (r_tgt != static_cast<int>(tgt_family.size()))
        throw std::invalid_argument("cech_pullback: index map arity mismatch");
    for (int i = 0; i < r_tgt; ++i)
        if (src_family[phi[i]] & ~tgt_family[i])
            throw std::invalid_argument("cech_pullback: index map is not a divisor map");
    LocMap f;
    f.offset = 0;
    const int levels = std::min(r_src, r_tgt) + 1;
    f.maps.resize(levels);
    // Rebuild the subset enumerations to locate row/column indices.
    std::vector<std::vector<std::uint32_t>> src_subsets(r_src + 1), tgt_subsets(r_tgt + 1);
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << r_src); ++t)
        src_subsets[std::popcount(t)].push_back(t);
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << r_tgt); ++t)
        tgt_subsets[std::popcount(t)].push_back(t);
    for (int k = 0; k < levels; ++k) {
        std::map<std::uint32_t, int> src_pos;
        for (int i = 0; i < static_cast<int>(src_subsets[k].size()); ++i)
            src_pos[src_subsets[k][i]] = i;
        for (int ri = 0; ri < static_cast<int>(tgt_subsets[k].size()); ++ri) {
            const std::uint32_t tp = tgt_subsets[k][ri];
            // Map the sorted elements of tp through φ; degenerate → 0.
            std::vector<int> image;
            for (int i = 0; i < r_tgt; ++i)
                if (tp & (std::uint32_t(1) << i)) image.push_back(phi[i]);
            // Parity of the permutation sorting `image`, zero on repeats.
            bool degenerate = false;
            int inversions = 0;
            for (size_t a = 0; a < image.size() && !degenerate; ++a)
                for (size_t b = a + 1; b < image.size(); ++b) {
                    if (image[a] == image[b]) { degenerate = true; break; }
                    if (image[a] > image[b]) ++inversions;
                }
            if (degenerate) continue;
            std::uint32_t ts = 0;
            for (int v : image) ts |= std::uint32_t(1) << v;
            f.maps[k].push_back({ri, src_pos[ts], Rat(inversions % 2 == 0 ? 1 : -1)});
        }
    }
    return f;
}

/// First (sorted order) divisor in `family` of each monomial in `targets`.
/// Exists whenever the ideal generated by `targets` sits inside the one
/// generated by `family`.
inline std::vector<int> divisor_index_map(const std::vector<Mask>& family,
                                          const std::vector<Mask>& targets) {
    std::vector<int> phi;
    for (Mask t : targets) {
        int found = -1;
        for (int i = 0; i < static_cast<int>(family.size()); ++i)
            if ((family[i] & ~t) == 0) { found = i; break; }
        if (found < 0)
            throw std::invalid_argument("divisor_index_map: monomial has no divisor in family");
        phi.push_back(found);
    }
    return phi;
}

inline std::vector<int> compose_index_maps(const std::vector<int>& outer,
                                           const std::vector<int>& inner) {
    std::vector<int> out;
    out.reserve(inner.size());
    for (int i : inner) out.push_back(outer[i]);
    return out;
}

/// Prism homotopy between the pullbacks of two divisor maps φ, ψ: F′ → F:
/// returns h of degree −1 from C(F) to C(F′) with d∘h + h∘d = ψ^* − φ^*.
/// The simplicial sign convention is verified at construction.
inline LocMap prism_homotopy(const std::vector<Mask>& src_family,
                             const std::vector<Mask>& tgt_family, const std::vector<int>& phi,
                             const std::vector<int>& psi) {
    const int r_src = static_cast<int>(src_family.size());
    const int r_tgt = static_cast<int>(tgt_family.size());
    LocMap h;
    h.offset = 1;  // maps[k] is the component C(F)^{k+1} → C(F′)^{k}... indexed by source degree
    // We index `maps` by source degree: maps[d] : C(F)^{d} → C(F′)^{d−1}, d ≥ 1.
    std::vector<std::vector<std::uint32_t>> src_subsets(r_src + 1), tgt_subsets(r_tgt + 1);
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << r_src); ++t)
        src_subsets[std::popcount(t)].push_back(t);
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << r_tgt); ++t)
        tgt_subsets[std::popcount(t)].push_back(t);
    const int hi = std::min(r_src, r_tgt + 1);
    for (int d = 1; d <= hi; ++d) {
        SparseBlockMap m;
        std::map<std::uint32_t, int> src_pos;
        for (int i = 0; i < static_cast<int>(src_subsets[d].size()); ++i)
            src_pos[src_subsets[d][i]] = i;
        for (int ri = 0; ri < static_cast<int>(tgt_subsets[d - 1].size()); ++ri) {
            const std::uint32_t tp = tgt_subsets[d - 1][ri];
            std::vector<int> elems;
            for (int i = 0; i < r_tgt; ++i)
                if (tp & (std::uint32_t(1) << i)) elems.push_back(i);
            for (int j = 0; j < d; ++j) {
                // (φe_0, …, φe_j, ψe_j, …, ψe_{d−2}), of length d.
                std::vector<int> image;
                for (int t = 0; t <= j && t < d - 1; ++t) image.push_back(phi[elems[t]]);
                if (j < d - 1)
                    for (int t = j; t < d - 1; ++t) image.push_back(psi[elems[t]]);
                // j = d−1 would duplicate the trailing element; the loop above
                // keeps exactly the tuples of length d.
                if (static_cast<int>(image.size()) != d) continue;
                bool degenerate = false;
                int inversions = 0;
                for (size_t a = 0; a < image.size() && !degenerate; ++a)
                    for (size_t b = a + 1; b < image.size(); ++b) {
                        if (image[a] == image[b]) { degenerate = true; break; }
                        if (image[a] > image[b]) ++inversions;
                    }
                if (degenerate) continue;
                std::uint32_t ts = 0;
                for (int v : image) ts |= std::uint32_t(1) << v;
                Rat val(((j + inversions) % 2 == 0) ? 1 : -1);
                m.push_back({ri, src_pos[ts], val});
            }
        }
        h.maps.push_back(std::move(m));
    }
    // Verify d∘h + h∘d = ψ^* − φ^*, flipping the global sign if the opposite
    // simplicial orientation was produced.
    const LocComplex cf = cech_from_family(0, src_family);  // box arity irrelevant here
    const LocComplex cf2 = cech_from_family(0, tgt_family);
    const LocMap pphi = cech_pullback(src_family, tgt_family, phi);
    const LocMap ppsi = cech_pullback(src_family, tgt_family, psi);
    auto holds = [&](const LocMap& hc) {
        for (int d = 0; d <= std::min(r_src, r_tgt); ++d) {
            std::map<std::pair<int, int>, Rat> acc;
            if (d >= 1 && d - 1 < static_cast<int>(cf2.diffs.size()))
                for (auto& [k, v] : locdetail::sparse_compose(cf2.diffs[d - 1], hc.map_at(d)))
                    acc[k] += v;
            if (d < static_cast<int>(cf.diffs.size()))
                for (auto& [k, v] : locdetail::sparse_compose(hc.map_at(d + 1), cf.diffs[d]))
                    acc[k] += v;
            locdetail::sparse_accumulate(acc, pphi.map_at(d), Rat(1));
            locdetail::sparse_accumulate(acc, ppsi.map_at(d), Rat(-1));
            if (!locdetail::all_zero(acc)) return false;
        }
        return true;
    };
    if (holds(h)) return h;
    for (auto& m : h.maps)
        for (auto& e : m) e.val = -e.val;
    if (!holds(h)) throw std::logic_error("prism_homotopy: homotopy identity failed");
    return h;
}

struct ConeModel {
    LocComplex cone;
    // Structural maps: target → cone and cone → source[1].
    LocMap include_target;
    LocMap project_source;
};

/// Mapping cone of f: A → B at the summand level; degree d holds A^{d+1}
/// first, then B^d, with differential (a, b) ↦ (−d a, f a + d b).
inline ConeModel loc_cone(const LocComplex& a, const LocComplex& b, const LocMap& f) {
    ConeModel out;
    LocComplex& c = out.cone;
    c.n = a.n;
    const int lo = std::min(a.first_degree() - 1, b.first_degree());
    const int hi = std::max(a.last_degree() - 1, b.last_degree());
    c.offset = lo;
    for (int deg = lo; deg <= hi; ++deg) {
        std::vector<Mask> lv = a.level(deg + 1);
        const auto& bl = b.level(deg);
        lv.insert(lv.end(), bl.begin(), bl.end());
        c.summands.push_back(std::move(lv));
    }
    auto asize = [&](int deg) { return static_cast<int>(a.level(deg).size()); };
    auto diff_of = [](const LocComplex& x, int degree) -> const SparseBlockMap& {
        static const SparseBlockMap empty;
        const int k = degree - x.offset;
        if (k < 0 || k >= static_cast<int>(x.diffs.size())) return empty;
        return x.diffs[k];
    };
    for (int deg = lo; deg < hi; ++deg) {
        SparseBlockMap d;
        for (const auto& e : diff_of(a, deg + 1)) d.push_back({e.row, e.col, -e.val});
        for (const auto& e : f.map_at(deg + 1)) d.push_back({e.row + asize(deg + 2), e.col, e.val});
        for (const auto& e : diff_of(b, deg))
            d.push_back({e.row + asize(deg + 2), e.col + asize(deg + 1), e.val});
        c.diffs.push_back(std::move(d));
    }
    out.include_target.offset = lo;
    out.project_source.offset = lo;
    for (int deg = lo; deg <= hi; ++deg) {
        SparseBlockMap inc, prj;
        for (int i = 0; i < static_cast<int>(b.level(deg).size()); ++i)
            inc.push_back({i + asize(deg + 1), i, Rat(1)});
        for (int i = 0; i < asize(deg + 1); ++i) prj.push_back({i, i, Rat(1)});
        out.include_target.maps.push_back(std::move(inc));
        out.project_source.maps.push_back(std::move(prj));
    }
    return out;
}

/// The connecting chain map cone(v) → cone(u)[1] for composable u: W → Z,
/// v: Z → Y, sending (z, y) ↦ (0, z).  Both cones must be the loc_cone of
/// their maps so the block layout matches.
inline LocMap octahedron_connecting(const LocComplex& cone_v, const LocComplex& z_complex,
                                    const LocComplex& w_complex) {
    LocMap f;
    f.offset = cone_v.first_degree();
    for (int deg = cone_v.first_degree(); deg <= cone_v.last_degree(); ++deg) {
        SparseBlockMap m;
        const int zcount = static_cast<int>(z_complex.level(deg + 1).size());
        const int wcount = static_cast<int>(w_complex.level(deg + 2).size());
        for (int i = 0; i < zcount; ++i) m.push_back({wcount + i, i, Rat(1)});
        f.maps.push_back(std::move(m));
    }
    return f;
}

// ---------------------------------------------------------------------------
// Cohomology extraction: per-subset complexes + induced multiplication maps.
// ---------------------------------------------------------------------------

struct StraightCohomology {
    StraightModule module;
    std::vector<CohomologySpace> spaces;  // per subset mask
};

/// Cohomology at a fixed degree of any model that can produce per-subset
/// complexes and term-level multiplication components.
template <typename Model>
StraightCohomology cohomology_at(const Model& model, int degree) {
    const int n = model.n;
    const Mask top = Mask(1) << n;
    StraightCohomology out;
    out.module = StraightModule::zero(n);
    out.spaces.resize(top);
    parallel_for(static_cast<int>(top), [&](int si) {
        const Mask s = static_cast<Mask>(si);
        out.spaces[s] = cohomology(model.subset_complex(s), degree);
        out.module.comp[s] = out.spaces[s].dim;
    });
    for (Mask s = 0; s < top; ++s)
        for (int j = 0; j < n; ++j) {
            if (!(s & (Mask(1) << j))) continue;
            const Mask sj = s & ~(Mask(1) << j);
            out.module.up[s][j] =
                out.spaces[sj].projection * (model.up_component(degree, s, j) * out.spaces[s].section);
        }
    return out;
}

/// Induced map on cohomology from degreewise components: supply a callable
/// (Mask) → RatMatrix giving the chain-map component at `degree`.
template <typename ComponentAt>
StraightMap induced_on_cohomology(ComponentAt&& component_at, const StraightCohomology& src,
                                  const StraightCohomology& tgt) {
    StraightMap f;
    const Mask top = static_cast<Mask>(src.spaces.size());
    f.comp.resize(top);
    for (Mask s = 0; s < top; ++s)
        f.comp[s] = tgt.spaces[s].projection * (component_at(s) * src.spaces[s].section);
    return f;
}

/// Dimension table over a degree window: per subset, the complex is built and
/// each differential eliminated exactly once.  table[deg − lo][subset].
template <typename Model>
std::vector<std::vector<int>> cohomology_dims_table(const Model& model, int lo, int hi) {
    const Mask top = Mask(1) << model.n;
    std::vector<std::vector<int>> table(static_cast<size_t>(hi - lo + 1),
                                        std::vector<int>(top, 0));
    parallel_for(static_cast<int>(top), [&](int si) {
        const Mask s = static_cast<Mask>(si);
        const VectComplex c = model.subset_complex(s);
        std::vector<int> ranks(static_cast<size_t>(hi - lo + 2), 0);
        for (int deg = lo - 1; deg <= hi; ++deg) {
            if (c.dim_at(deg) == 0 || c.dim_at(deg + 1) == 0) continue;
            ranks[static_cast<size_t>(deg - lo + 1)] = rank(c.diff_at(deg));
        }
        for (int deg = lo; deg <= hi; ++deg) {
            const int dk = c.dim_at(deg);
            if (dk == 0) continue;
            table[static_cast<size_t>(deg - lo)][s] =
                dk - ranks[static_cast<size_t>(deg - lo + 1)] - ranks[static_cast<size_t>(deg - lo)];
        }
    });
    return table;
}

/// Dimensions only (no projections/sections): cheap path for vanishing and
/// dimension-table checks.
template <typename Model>
std::vector<int> cohomology_dims_at(const Model& model, int degree) {
    const Mask top = Mask(1) << model.n;
    std::vector<int> dims(top, 0);
    parallel_for(static_cast<int>(top), [&](int si) {
        const Mask s = static_cast<Mask>(si);
        const VectComplex c = model.subset_complex(s);
        const int dk = c.dim_at(degree);
        if (dk == 0) return;
        const int z = dk - rank(c.diff_at(degree));
        const int b = rank(c.diff_at(degree - 1));
        dims[s] = z - b;
    });
    return dims;
}

/// Čech complex of an ideal on its minimal generators.
inline LocComplex cech_complex(const SqfIdeal& i) {
    if (i.is_zero()) throw std::invalid_argument("cech_complex: zero ideal rejected");
    return cech_from_family(i.n(), i.gens());
}

/// Local cohomology H^deg_I(R) as a straight module (box components plus
/// induced multiplication maps).
inline StraightModule local_cohomology(const SqfIdeal& i, int deg) {
    if (i.is_zero()) throw std::invalid_argument("local_cohomology: zero ideal rejected");
    if (deg < 0 || deg > static_cast<int>(i.gens().size())) return StraightModule::zero(i.n());
    return cohomology_at(cech_complex(i), deg).module;
}

// ---------------------------------------------------------------------------
// Extended-box oracle: evaluates the Čech complex degree-by-degree over an
// arbitrary integer window, straight from the Laurent description of the
// localizations, with no box encoding and no clamp rule.
// ---------------------------------------------------------------------------

struct OracleWindow {
    int lo = -2, hi = 1;  // inclusive, per coordinate
};

namespace oracledetail {

/// The graded piece (R_U)_a is nonzero iff a_j ≥ 0 for every j ∉ U.
inline bool laurent_nonzero(Mask u, const std::vector<int>& a) {
    for (size_t j = 0; j < a.size(); ++j)
        if (a[j] < 0 && !(u & (Mask(1) << j))) return false;
    return true;
}

struct DegreeComplex {
    std::vector<std::vector<int>> active;  // per level: indices of active subfamilies
    std::vector<RatMatrix> diffs;
};

/// Build the Čech complex of the generator family evaluated at one Z^n-degree.
inline DegreeComplex degree_complex(const std::vector<Mask>& gens, const std::vector<int>& a) {
    const int r = static_cast<int>(gens.size());
    DegreeComplex out;
    std::vector<std::vector<std::uint32_t>> subsets(r + 1);
    for (std::uint32_t t = 0; t < (std::uint32_t(1) << r); ++t)
        subsets[std::popcount(t)].push_back(t);
    out.active.resize(r + 1);
    std::vector<std::map<std::uint32_t, int>> pos(r + 1);
    for (int k = 0; k <= r; ++k)
        for (int i = 0; i < static_cast<int>(subsets[k].size()); ++i) {
            Mask u = 0;
            for (int g = 0; g < r; ++g)
                if (subsets[k][i] & (std::uint32_t(1) << g)) u |= gens[g];
            if (laurent_nonzero(u, a)) {
                pos[k][subsets[k][i]] = static_cast<int>(out.active[k].size());
                out.active[k].push_back(i);
            }
        }
    for (int k = 0; k < r; ++k) {
        RatMatrix d(static_cast<int>(pos[k + 1].size()), static_cast<int>(pos[k].size()));
        for (const auto& [t, ci] : pos[k]) {
            for (int f = 0; f < r; ++f) {
                const std::uint32_t bf = std::uint32_t(1) << f;
                if (t & bf) continue;
                auto it = pos[k + 1].find(t | bf);
                if (it == pos[k + 1].end()) continue;
                const int sgn = std::popcount((t | bf) & (bf - 1)) % 2 == 0 ? 1 : -1;
                d.at(it->second, ci) = sgn;
            }
        }
        out.diffs.push_back(std::move(d));
    }
    return out;
}

inline int degree_cohomology_dim(const DegreeComplex& c, int deg) {
    const int r = static_cast<int>(c.diffs.size());
    if (deg < 0 || deg > r) return 0;
    const int dk = static_cast<int>(c.active[deg].size());
    if (dk == 0) return 0;
    const int out_rank = (deg < r) ? rank(c.diffs[deg]) : 0;
    const int in_rank = (deg > 0) ? rank(c.diffs[deg - 1]) : 0;
    return dk - out_rank - in_rank;
}

} // namespace oracledetail

/// Exact graded dimensions of H^deg_I(R) at every degree in the window.
inline std::map<std::vector<int>, int> oracle_extended(const SqfIdeal& i, int deg,
                                                       const OracleWindow& window) {
    if (i.is_zero()) throw std::invalid_argument("oracle_extended: zero ideal rejected");
    std::map<std::vector<int>, int> out;
    std::vector<int> a(i.n(), window.lo);
    for (;;) {
        out[a] = oracledetail::degree_cohomology_dim(oracledetail::degree_complex(i.gens(), a), deg);
        int j = 0;
        while (j < i.n() && a[j] == window.hi) a[j++] = window.lo;
        if (j == i.n()) break;
        ++a[j];
    }
    return out;
}

/// Clamp a Z^n-degree onto the box {0,−1}^n: the subset of coordinates ≤ −1.
inline Mask clamp_subset(const std::vector<int>& a) {
    Mask s = 0;
    for (size_t j = 0; j < a.size(); ++j)
        if (a[j] < 0) s |= Mask(1) << j;
    return s;
}

/// Rank data of multiplication by x_j on oracle cohomology: H^deg at a →
/// H^deg at a+e_j.  Used to confirm that multiplication between degrees with
/// a_j ≤ −2 (or ≥ 0) is an isomorphism in the honest graded model.
struct OracleMult {
    int dim_from = 0, dim_to = 0, rank = 0;
};

inline OracleMult oracle_multiplication(const SqfIdeal& i, int deg, const std::vector<int>& a,
                                        int j) {
    using namespace oracledetail;
    std::vector<int> b = a;
    b[static_cast<size_t>(j)] += 1;
    const DegreeComplex ca = degree_complex(i.gens(), a);
    const DegreeComplex cb = degree_complex(i.gens(), b);
    const int r = static_cast<int>(i.gens().size());
    // Chain map: identity on summands active at both degrees.
    std::vector<RatMatrix> f(r + 1);
    for (int k = 0; k <= r; ++k) {
        f[k] = RatMatrix(static_cast<int>(cb.active[k].size()),
                         static_cast<int>(ca.active[k].size()));
        std::map<int, int> bpos;
        for (int x = 0; x < static_cast<int>(cb.active[k].size()); ++x) bpos[cb.active[k][x]] = x;
        for (int x = 0; x < static_cast<int>(ca.active[k].size()); ++x) {
            auto it = bpos.find(ca.active[k][x]);
            if (it != bpos.end()) f[k].at(it->second, x) = 1;
        }
    }
    // Assemble the two complexes and induce on cohomology.
    std::vector<int> da, db;
    for (int k = 0; k <= r; ++k) {
        da.push_back(static_cast<int>(ca.active[k].size()));
        db.push_back(static_cast<int>(cb.active[k].size()));
    }
    VectComplex va(0, da, ca.diffs), vb(0, db, cb.diffs);
    ChainMap cm(va, vb, 0, f);
    CohomologySpace ha = cohomology(va, deg), hb = cohomology(vb, deg);
    OracleMult out;
    out.dim_from = ha.dim;
    out.dim_to = hb.dim;
    out.rank = rank(cm.induced(deg, ha, hb));
    return out;
}

} // namespace moly

#endif
