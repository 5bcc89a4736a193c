#ifndef MOLY_POLY_HPP
#define MOLY_POLY_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "matrix.hpp"
#include "rational.hpp"

namespace moly {

/// Univariate rational polynomial, coefficients ascending (c[0] + c[1]x + …).
struct Poly {
    std::vector<Rat> c;

    Poly() = default;
    explicit Poly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const Rat& v) { return Poly({v}); }
    static Poly x_minus(const Rat& a) { return Poly({-a, Rat(1)}); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    const Rat& lead() const { return c.back(); }

    Rat operator()(const Rat& x) const {
        Rat v(0);
        for (int i = degree(); i >= 0; --i) v = v * x + c[i];
        return v;
    }

    bool operator==(const Poly& o) const { return c == o.c; }
};

inline Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return Poly(std::move(r));
}
inline Poly operator-(const Poly& a, const Poly& b) {
    std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
    return Poly(std::move(r));
}
inline Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return Poly(std::move(r));
}

inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::invalid_argument("poly divmod: division by zero");
    Poly rem = a, quot;
    quot.c.assign(a.c.size(), Rat(0));
    while (!rem.is_zero() && rem.degree() >= b.degree()) {
        const int shift = rem.degree() - b.degree();
        const Rat f = rem.lead() / b.lead();
        quot.c[shift] += f;
        for (int i = 0; i <= b.degree(); ++i) rem.c[shift + i] -= f * b.c[i];
        rem.trim();
    }
    quot.trim();
    return {quot, rem};
}

inline Poly monic(const Poly& p) {
    if (p.is_zero()) return p;
    Poly r = p;
    const Rat inv = Rat(1) / p.lead();
    for (auto& v : r.c) v *= inv;
    return r;
}

inline Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = y;
        y = r;
    }
    return monic(x);
}

inline Poly derivative(const Poly& p) {
    if (p.degree() <= 0) return Poly();
    std::vector<Rat> r(p.degree());
    for (int i = 1; i <= p.degree(); ++i) r[i - 1] = p.c[i] * Rat(i);
    return Poly(std::move(r));
}

/// Yun's squarefree decomposition: returns (p_i, m_i) with p = Π p_i^{m_i},
/// the p_i squarefree, pairwise coprime, nonconstant, multiplicities strictly
/// increasing.
inline std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1) return out;
    Poly f = monic(p);
    Poly g = gcd(f, derivative(f));
    Poly w = divmod(f, g).first;  // product of distinct irreducible factors
    int m = 1;
    while (w.degree() > 0) {
        Poly y = gcd(w, g);
        Poly part = divmod(w, y).first;
        if (part.degree() > 0) out.emplace_back(monic(part), m);
        w = y;
        g = divmod(g, y).first;
        ++m;
    }
    return out;
}

inline Poly poly_pow(const Poly& p, int e) {
    Poly r = Poly::constant(Rat(1));
    for (int i = 0; i < e; ++i) r = r * p;
    return r;
}

namespace detail {

/// Divisors of |n| (positive only), via trial division.  Returns nullopt when
/// the cofactor cannot be fully factored within the bound or the divisor list
/// explodes; callers treat that as "don't know".
inline std::optional<std::vector<Int>> positive_divisors(Int n, long trial_bound = 1000000,
                                                         size_t max_divisors = 4096) {
    if (n < 0) n = -n;
    if (n == 0) return std::nullopt;
    std::vector<std::pair<Int, int>> factors;
    Int rest = n;
    for (Int p = 2; p * p <= rest && p <= trial_bound; ++p) {
        if (rest % p == 0) {
            int e = 0;
            while (rest % p == 0) { rest /= p; ++e; }
            factors.emplace_back(p, e);
        }
    }
    if (rest > 1) {
        if (rest > trial_bound && mpz_probab_prime_p(rest.get_mpz_t(), 25) == 0)
            return std::nullopt;  // composite leftover we failed to split
        factors.emplace_back(rest, 1);
    }
    std::vector<Int> divs{Int(1)};
    for (const auto& [p, e] : factors) {
        const size_t base = divs.size();
        Int pk(1);
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pk);
                if (divs.size() > max_divisors) return std::nullopt;
            }
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

/// Monic rational polynomial -> monic integer polynomial via x = y/s:
/// returns (integer coefficients ascending, scale s) with q(y) = s^n p(y/s).
inline std::pair<std::vector<Int>, Int> monic_integerize(const Poly& p) {
    const int n = p.degree();
    Int s(1);
    for (int i = 0; i < n; ++i) s = lcm(s, p.c[i].get_den());
    std::vector<Int> q(n + 1);
    Int power(1);  // s^(n-i)
    q[n] = 1;
    for (int i = n - 1; i >= 0; --i) {
        power *= s;
        Rat v = p.c[i] * Rat(power);
        v.canonicalize();
        q[i] = v.get_num();
    }
    return {q, s};
}

inline Int eval_int_poly(const std::vector<Int>& q, const Int& y) {
    Int v(0);
    for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) v = v * y + q[i];
    return v;
}

} // namespace detail

/// All rational roots of a monic polynomial (each once).  The flag is false
/// when the search was abandoned (constant-term factorization too hard), in
/// which case the list may be incomplete.
inline std::pair<std::vector<Rat>, bool> rational_roots(const Poly& p) {
    std::vector<Rat> roots;
    if (p.degree() < 1) return {roots, true};
    Poly f = monic(p);
    while (!f.is_zero() && f.c[0] == 0) {  // factor out x
        if (std::find(roots.begin(), roots.end(), Rat(0)) == roots.end())
            roots.push_back(Rat(0));
        f = divmod(f, Poly({Rat(0), Rat(1)})).first;
    }
    if (f.degree() < 1) return {roots, true};
    auto [q, s] = detail::monic_integerize(f);
    auto divs = detail::positive_divisors(q[0]);
    if (!divs) return {roots, false};
    for (const Int& d : *divs)
        for (int sign : {1, -1}) {
            const Int y = sign * d;
            if (detail::eval_int_poly(q, y) == 0) {
                Rat r = Rat(y) / Rat(s);
                r.canonicalize();
                if (std::find(roots.begin(), roots.end(), r) == roots.end()) roots.push_back(r);
            }
        }
    std::sort(roots.begin(), roots.end());
    return {roots, true};
}

/// Try to write a squarefree monic polynomial as a product of two nonconstant
/// coprime monic factors.  Handles rational roots and, failing that, closed
/// forms through degree 4.  Outcomes: factors found, certified irreducible,
/// or unknown (degree ≥ 5 with no rational root, or aborted factorization).
enum class FactorStatus { Split, Irreducible, Unknown };
struct FactorResult {
    FactorStatus status = FactorStatus::Unknown;
    Poly g, h;  // valid when status == Split; p = g·h with gcd(g,h) = 1
};

inline FactorResult split_squarefree(const Poly& p_in) {
    FactorResult res;
    const Poly p = monic(p_in);
    const int n = p.degree();
    if (n <= 1) {
        res.status = FactorStatus::Irreducible;
        return res;
    }
    auto [roots, complete] = rational_roots(p);
    if (!roots.empty()) {
        Poly g = Poly::x_minus(roots[0]);
        Poly h = divmod(p, g).first;
        if (h.degree() == 0) {
            res.status = FactorStatus::Irreducible;  // degree-1 input, handled above anyway
            return res;
        }
        res.status = FactorStatus::Split;
        res.g = g;
        res.h = h;
        return res;
    }
    if (!complete) return res;  // Unknown: might have missed a root
    if (n == 2 || n == 3) {
        // Squarefree quadratic/cubic with no rational root is irreducible.
        res.status = FactorStatus::Irreducible;
        return res;
    }
    if (n == 4) {
        // Monic integer model; factor as (y² + a y + b)(y² + c y + d) over Z.
        auto [q, s] = detail::monic_integerize(p);
        const Int A = q[3], B = q[2], C = q[1], D = q[0];
        auto divs = detail::positive_divisors(D);
        if (!divs) return res;
        auto build = [&](const Int& a, const Int& b, const Int& c, const Int& d) {
            // y = s·x: (y²+ay+b) ↦ x² + (a/s)x + b/s².
            Poly g({Rat(b) / Rat(s * s), Rat(a) / Rat(s), Rat(1)});
            Poly h({Rat(d) / Rat(s * s), Rat(c) / Rat(s), Rat(1)});
            for (auto* f : {&g, &h})
                for (auto& v : f->c) v.canonicalize();
            res.status = FactorStatus::Split;
            res.g = g;
            res.h = h;
        };
        for (const Int& babs : *divs)
            for (int bsign : {1, -1}) {
                const Int b = bsign * babs;
                if (b == 0 || D % b != 0) continue;
                const Int d = D / b;
                if (b == d) {
                    if (C != A * b) continue;
                    // a + c = A, a·c = B − 2b: both roots of t² − A t + (B−2b).
                    const Int disc = A * A - 4 * (B - 2 * b);
                    if (disc < 0) continue;
                    Int sq;
                    mpz_sqrt(sq.get_mpz_t(), disc.get_mpz_t());
                    if (sq * sq != disc) continue;
                    if ((A + sq) % 2 != 0) continue;
                    const Int a = (A + sq) / 2, c = A - a;
                    build(a, b, c, d);
                    return res;
                }
                // a·(d − b) = C − A·b determines a.
                const Int num = C - A * b, den = d - b;
                if (num % den != 0) continue;
                const Int a = num / den, c = A - a;
                if (b + d + a * c != B) continue;
                build(a, b, c, d);
                return res;
            }
        res.status = FactorStatus::Irreducible;
        return res;
    }
    return res;  // degree ≥ 5: Unknown
}

/// Evaluate p at a square matrix (Horner).
inline RatMatrix eval_at(const Poly& p, const RatMatrix& x) {
    const int n = x.rows();
    RatMatrix v = RatMatrix::zero(n, n);
    for (int i = p.degree(); i >= 0; --i) {
        v = v * x;
        for (int d = 0; d < n; ++d) v.at(d, d) += p.c[i];
    }
    return v;
}

/// Minimal polynomial of a square matrix, monic, via Krylov iteration on the
/// flattened powers.
inline Poly min_poly(const RatMatrix& x) {
    const int n = x.rows();
    if (n != x.cols()) throw std::invalid_argument("min_poly: not square");
    if (n == 0) return Poly({Rat(1)});
    const int nn = n * n;
    auto flatten = [&](const RatMatrix& m) {
        RatMatrix f(nn, 1);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) f.at(i * n + j, 0) = m.at(i, j);
        return f;
    };
    IncrementalSpan span(nn);
    RatMatrix powers(nn, 0);
    RatMatrix cur = RatMatrix::identity(n);
    for (int k = 0;; ++k) {
        RatMatrix fc = flatten(cur);
        if (!span.add(fc)) {
            auto coeffs = solve(powers, fc);
            if (!coeffs) throw std::logic_error("min_poly: inconsistent Krylov solve");
            std::vector<Rat> c(k + 1);
            for (int i = 0; i < k; ++i) c[i] = -coeffs->at(i, 0);
            c[k] = 1;
            return Poly(std::move(c));
        }
        powers = hstack(powers, fc);
        cur = cur * x;
    }
}

} // namespace moly

#endif
