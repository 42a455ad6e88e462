// Integer 2x2 matrices: hyperbolic isometries, endomorphisms, congruence
// group elements. Row-major (a, b; c, d).
#pragma once

#include <cstdint>

#include "rmkit/bigint.hpp"

namespace rmkit {

struct Matrix2Z {
    Int a, b, c, d;

    Matrix2Z() : a(0), b(0), c(0), d(0) {}
    Matrix2Z(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {}

    static Matrix2Z identity() { return {Int(1), Int(0), Int(0), Int(1)}; }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }

    Matrix2Z adjugate() const { return {d, -b, -c, a}; }
    Matrix2Z negated() const { return {-a, -b, -c, -d}; }

    bool is_unimodular() const {
        Int dt = det();
        return dt == 1 || dt == -1;
    }

    // Inverse as an integer matrix; requires det = +-1.
    Matrix2Z inverse_unimodular() const {
        Int dt = det();
        if (dt == 1) return adjugate();
        if (dt == -1) return adjugate().negated();
        throw NotUnimodularError("inverse_unimodular: determinant is not +-1");
    }

    Matrix2Z operator*(const Matrix2Z& o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d,
                c * o.a + d * o.c, c * o.b + d * o.d};
    }

    Matrix2Z pow(unsigned long k) const {
        Matrix2Z acc = identity();
        Matrix2Z base = *this;
        while (k > 0) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    // Entrywise residues in [0, n).
    Matrix2Z mod(const Int& n) const {
        return {mod_floor(a, n), mod_floor(b, n), mod_floor(c, n), mod_floor(d, n)};
    }

    bool operator==(const Matrix2Z&) const = default;
};

}  // namespace rmkit
