#ifndef MOLY_RATIONAL_HPP
#define MOLY_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace moly {

// Exact arithmetic throughout: Rat is an arbitrary-precision rational kept
// canonical (gcd(|num|, den) = 1, den > 0, zero is 0/1), Int its integer
// counterpart.  mpq_class maintains the canonical form for us as long as
// values are built through the helpers below.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

/// Parse "p/q" or "p" (q > 0 after canonicalization).
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("rat_from_string: empty string");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
    if (q.get_den() == 0)
        throw std::invalid_argument("rat_from_string: zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

/// Emit "p/q", or just "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace moly

#endif
