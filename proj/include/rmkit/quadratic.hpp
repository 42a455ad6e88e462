// Exact arithmetic for quadratic irrationals (p + q*sqrt(d))/r.
//
// Values are kept in a unique canonical form: d squarefree and > 1, r > 0,
// gcd(p, q, r) = 1, q != 0. Two values are equal iff their fields are equal.
// A value is either real, or formal-imaginary: (p + q*sqrt(-d))/r carried
// symbolically with a sign tag (trace and norm stay exact rationals; order
// comparisons are undefined for it).
#pragma once

#include <string>
#include <utility>

#include "rmkit/bigint.hpp"
#include "rmkit/errors.hpp"
#include "rmkit/matrix2z.hpp"

namespace rmkit {

enum class Sign { real, imaginary };

// Primitive integral polynomial a x^2 + b x + c with a > 0, gcd(a,b,c) = 1.
struct IntPoly2 {
    Int a, b, c;

    Int discriminant() const { return b * b - 4 * a * c; }
    bool operator==(const IntPoly2&) const = default;
};

// Exact sign of A + B*sqrt(d) for squarefree d > 1. Never returns 0 unless
// A = B = 0: A + B*sqrt(d) = 0 with B != 0 would make sqrt(d) rational.
inline int surd_sign(const Int& A, const Int& B, const Int& d) {
    int sa = sign_of(A), sb = sign_of(B);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: |A| vs |B|*sqrt(d), decided by squaring.
    Int lhs = A * A, rhs = B * B * d;
    if (lhs == rhs) return 0;  // impossible for d squarefree > 1
    return (lhs > rhs) ? sa : sb;
}

class QuadraticIrrational {
public:
    // Canonical constructor: reduces (p + q*sqrt(d))/r. Square factors of d
    // are absorbed into q, r is normalized positive, gcd(p, q, r) reduced.
    static QuadraticIrrational canonicalize(Int p, Int q, Int r, Int d,
                                            Sign sign = Sign::real) {
        if (r == 0) throw DivisionByZeroError("quadratic irrational: r = 0");
        if (d < 0)
            throw NonCanonicalRadicandError(
                "quadratic irrational: negative radicand; use Sign::imaginary");
        if (q == 0 || d <= 1)
            throw RationalValueError("quadratic irrational: value is rational");
        SquarefreeSplit s = squarefree_split(d);
        if (s.squarefree == 1)
            throw RationalValueError(
                "quadratic irrational: radicand is a perfect square");
        q *= s.root;
        d = s.squarefree;
        return reduced(std::move(p), std::move(q), std::move(r), std::move(d), sign);
    }

    static QuadraticIrrational sqrt_of(const Int& d, Sign sign = Sign::real) {
        return canonicalize(0, 1, 1, d, sign);
    }

    const Int& p() const { return p_; }
    const Int& q() const { return q_; }
    const Int& r() const { return r_; }
    const Int& d() const { return d_; }
    Sign sign() const { return sign_; }
    bool is_real() const { return sign_ == Sign::real; }

    QuadraticIrrational conjugate() const {
        return QuadraticIrrational(p_, -q_, r_, d_, sign_);
    }

    IntPoly2 minpoly() const {
        Int a0 = r_ * r_;
        Int b0 = -2 * p_ * r_;
        Int c0 = p_ * p_ - q_ * q_ * effective_radicand();
        Int g = gcd3(a0, b0, c0);
        return {a0 / g, b0 / g, c0 / g};
    }

    // trace = x + conj(x) = 2p/r; norm = x * conj(x) = (p^2 -+ q^2 d)/r^2.
    Rat trace() const { return make_rat(2 * p_, r_); }
    Rat norm() const {
        return make_rat(p_ * p_ - q_ * q_ * effective_radicand(), r_ * r_);
    }
    std::pair<Rat, Rat> trace_norm() const { return {trace(), norm()}; }

    QuadraticIrrational scaled_by(const Int& k) const {
        if (k == 0) throw RationalValueError("scaled_by: zero multiple is rational");
        return reduced(k * p_, k * q_, r_, d_, sign_);
    }

    QuadraticIrrational plus_int(const Int& t) const {
        // gcd(p + t r, q, r) = gcd(p, q, r) = 1, so the result is canonical.
        return QuadraticIrrational(p_ + t * r_, q_, r_, d_, sign_);
    }

    // Exact total order on real values; -1 / 0 / +1.
    int compare(const QuadraticIrrational& y) const {
        require_real("compare");
        y.require_real("compare");
        if (d_ == y.d_) {
            Int A = p_ * y.r_ - y.p_ * r_;
            Int B = q_ * y.r_ - y.q_ * r_;
            return surd_sign(A, B, d_);
        }
        // x - y = (u + v*sqrt(d) + w*sqrt(d')) / (r r'), r r' > 0, v, w != 0.
        Int u = p_ * y.r_ - y.p_ * r_;
        Int v = q_ * y.r_;
        Int w = -y.q_ * r_;
        int sl = surd_sign(u, v, d_);  // sign of u + v*sqrt(d)
        int sw = sign_of(w);
        if (sl >= 0 && sw > 0) return 1;
        if (sl <= 0 && sw < 0) return -1;
        // Opposite sides: compare (u + v*sqrt(d))^2 with w^2 d'.
        Int A2 = u * u + v * v * d_ - w * w * y.d_;
        Int B2 = 2 * u * v;
        int s2 = surd_sign(A2, B2, d_);
        return (sl > 0) ? s2 : -s2;
    }

    int compare(const Rat& y) const {
        require_real("compare");
        return surd_sign(p_ * y.get_den() - y.get_num() * r_, q_ * y.get_den(), d_);
    }

    // Exact floor, real values only. floor((p + t)/r) = floor((p + floor(t))/r)
    // because t = q*sqrt(d) is irrational.
    Int floor() const {
        require_real("floor");
        Int s = isqrt(q_ * q_ * d_);
        Int m = (q_ > 0) ? s : -s - 1;
        return fdiv(p_ + m, r_);
    }

    // Approximate; display and test cross-checks only.
    double to_double() const {
        require_real("to_double");
        return (p_.get_d() + q_.get_d() * std::sqrt(d_.get_d())) / r_.get_d();
    }

    bool operator==(const QuadraticIrrational&) const = default;

    friend QuadraticIrrational mobius_apply(const Matrix2Z& M,
                                            const QuadraticIrrational& x);

private:
    QuadraticIrrational(Int p, Int q, Int r, Int d, Sign s)
        : p_(std::move(p)), q_(std::move(q)), r_(std::move(r)), d_(std::move(d)),
          sign_(s) {}

    // Fast path when d is already squarefree > 1 and q != 0.
    static QuadraticIrrational reduced(Int p, Int q, Int r, Int d, Sign sign) {
        if (r < 0) {
            p = -p;
            q = -q;
            r = -r;
        }
        Int g = gcd3(p, q, r);
        if (g > 1) {
            p /= g;
            q /= g;
            r /= g;
        }
        return QuadraticIrrational(std::move(p), std::move(q), std::move(r),
                                   std::move(d), sign);
    }

    void require_real(const char* op) const {
        if (!is_real())
            throw NotRealError(std::string(op) + ": formal-imaginary operand");
    }

    // d for real values, -d for formal-imaginary ones.
    Int effective_radicand() const { return is_real() ? d_ : Int(-d_); }

    Int p_, q_, r_, d_;
    Sign sign_;
};

inline bool operator<(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    return x.compare(y) < 0;
}
inline bool operator>(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    return x.compare(y) > 0;
}
inline bool operator<=(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    return x.compare(y) <= 0;
}
inline bool operator>=(const QuadraticIrrational& x, const QuadraticIrrational& y) {
    return x.compare(y) >= 0;
}

// (a x + b) / (c x + d), computed in Q(sqrt(radicand)). The radicand is
// preserved. Singular matrices give rational images and are rejected.
inline QuadraticIrrational mobius_apply(const Matrix2Z& M,
                                        const QuadraticIrrational& x) {
    if (M.c == 0 && M.d == 0)
        throw DegenerateMatrixError("mobius_apply: c = d = 0");
    Int eff = x.is_real() ? x.d_ : Int(-x.d_);
    Int U = M.a * x.p_ + M.b * x.r_;
    Int V = M.a * x.q_;
    Int W = M.c * x.p_ + M.d * x.r_;
    Int Z = M.c * x.q_;
    Int den = W * W - Z * Z * eff;  // r^2 * Norm(c x + d) != 0
    if (den == 0)
        throw DegenerateMatrixError("mobius_apply: c x + d = 0");
    Int np = U * W - V * Z * eff;
    Int nq = V * W - U * Z;  // equals q * r * det(M)
    if (nq == 0)
        throw RationalValueError("mobius_apply: image is rational (det = 0)");
    return QuadraticIrrational::reduced(std::move(np), std::move(nq),
                                        std::move(den), x.d_, x.sign_);
}

// The real root of A x^2 + B x + C whose radical term is positive:
// x = ((-B)*sgn(A) + sqrt(B^2 - 4AC)) / (2|A|). The coefficients are
// content-reduced first; matrix-derived equations carry huge common factors
// and the primitive polynomial keeps the discriminant small.
inline QuadraticIrrational plus_radical_root(Int A, Int B, Int C) {
    if (A == 0) throw DivisionByZeroError("plus_radical_root: leading coefficient 0");
    Int g = gcd3(A, B, C);
    if (g > 1) {
        A /= g;
        B /= g;
        C /= g;
    }
    Int disc = B * B - 4 * A * C;
    if (disc <= 0) throw NotRealError("plus_radical_root: no real roots");
    int s = sign_of(A);
    return QuadraticIrrational::canonicalize(-B * s, 1, 2 * abs_int(A), disc);
}

}  // namespace rmkit
