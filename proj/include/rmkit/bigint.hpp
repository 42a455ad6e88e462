// Arbitrary-precision integer/rational substrate and small number-theoretic
// helpers. Everything downstream computes exactly; no operation here may
// round or overflow.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmkit/errors.hpp"

namespace rmkit {

using Int = mpz_class;
using Rat = mpq_class;

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int gcd3(const Int& a, const Int& b, const Int& c) {
    return gcd(gcd(a, b), c);
}

inline int sign_of(const Int& a) {
    return a < 0 ? -1 : (a > 0 ? 1 : 0);
}

inline Int abs_int(const Int& a) {
    Int r;
    mpz_abs(r.get_mpz_t(), a.get_mpz_t());
    return r;
}

// floor(a / b), b != 0
inline Int fdiv(const Int& a, const Int& b) {
    if (b == 0) throw DivisionByZeroError("fdiv: division by zero");
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

// a mod m in [0, m), m > 0
inline Int mod_floor(const Int& a, const Int& m) {
    if (m <= 0) throw DivisionByZeroError("mod_floor: modulus must be positive");
    Int r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// n = squarefree * root^2 with squarefree ... squarefree. Trial division;
// desk-scale inputs only.
struct SquarefreeSplit {
    Int squarefree;
    Int root;
};

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace detail {

// Pollard rho with Floyd cycle detection; n odd composite > 1.
inline Int rho_factor(const Int& n) {
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            Int diff = (x > y) ? Int(x - y) : Int(y - x);
            if (diff == 0) break;
            d = gcd(diff, n);
        }
        if (d != 1 && d != n) return d;
    }
}

inline void collect_factors(const Int& m, std::map<Int, unsigned>& out) {
    if (m == 1) return;
    if (is_probable_prime(m)) {
        ++out[m];
        return;
    }
    if (is_perfect_square(m)) {
        std::map<Int, unsigned> half;
        collect_factors(isqrt(m), half);
        for (const auto& [p, e] : half) out[p] += 2 * e;
        return;
    }
    Int f = rho_factor(m);
    collect_factors(f, out);
    collect_factors(m / f, out);
}

}  // namespace detail

inline SquarefreeSplit squarefree_split(Int n) {
    if (n < 1) throw NonCanonicalRadicandError("squarefree_split: argument must be >= 1");
    if (is_perfect_square(n)) return {Int(1), isqrt(n)};
    Int sf = 1, root = 1;
    Int p = 2;
    while (p <= 40000 && p * p <= n) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e % 2 == 1) sf *= p;
            for (unsigned i = 0; i + 1 < e; i += 2) root *= p;
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) {
        if (n < Int(40000) * 40000 || is_probable_prime(n)) {
            sf *= n;  // cofactor below the trial bound squared is prime
        } else if (is_perfect_square(n)) {
            root *= isqrt(n);
        } else {
            std::map<Int, unsigned> fac;
            detail::collect_factors(n, fac);
            for (const auto& [q, e] : fac) {
                if (e % 2 == 1) sf *= q;
                for (unsigned i = 0; i + 1 < e; i += 2) root *= q;
            }
        }
    }
    return {sf, root};
}

inline bool is_squarefree(const Int& n) {
    if (n < 1) return false;
    return squarefree_split(n).root == 1;
}

inline std::vector<Int> distinct_prime_factors(Int n) {
    std::vector<Int> ps;
    Int p = 2;
    while (p * p <= n) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
        p += (p == 2) ? 1 : 2;
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

inline std::vector<long> squarefree_radicands_upto(long d_max) {
    std::vector<long> out;
    for (long d = 2; d <= d_max; ++d)
        if (is_squarefree(Int(d))) out.push_back(d);
    return out;
}

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw DivisionByZeroError("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) {
    return q.get_den() == 1;
}

}  // namespace rmkit
