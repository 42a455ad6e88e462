// Shared helpers for the test suite: a fixed-seed RNG and generators for
// random canonical values and unimodular matrices.
#pragma once

#include <random>

#include "rmkit/matrix2z.hpp"
#include "rmkit/quadratic.hpp"

namespace rmtest {

using namespace rmkit;

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234abcdULL);
    return gen;
}

inline long rand_long(long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    return dist(rng());
}

inline QuadraticIrrational random_quadratic(long bound = 40) {
    for (;;) {
        long p = rand_long(-bound, bound);
        long q = rand_long(-bound, bound);
        long r = rand_long(1, bound);
        long d = rand_long(2, bound);
        if (q == 0) continue;
        try {
            return QuadraticIrrational::canonicalize(p, q, r, d);
        } catch (const RationalValueError&) {
        }
    }
}

// Random product of unipotent generators; always det 1.
inline Matrix2Z random_sl2(int len = 8, long emax = 4) {
    Matrix2Z m = Matrix2Z::identity();
    for (int i = 0; i < len; ++i) {
        m = m * Matrix2Z{1, Int(rand_long(-emax, emax)), 0, 1};
        m = m * Matrix2Z{1, 0, Int(rand_long(-emax, emax)), 1};
    }
    return m;
}

// Det +1 or -1 with equal probability.
inline Matrix2Z random_gl2(int len = 8, long emax = 4) {
    Matrix2Z m = random_sl2(len, emax);
    if (rand_long(0, 1) == 1) m = m * Matrix2Z{0, 1, 1, 0};
    return m;
}

}  // namespace rmtest
