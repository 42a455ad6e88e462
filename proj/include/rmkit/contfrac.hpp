// Periodic continued fractions of real quadratic irrationals: exact
// expansion, convergents, tail equivalence with unimodular witnesses,
// stabilizer matrices, and partial multiplicity data.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rmkit/bigint.hpp"
#include "rmkit/errors.hpp"
#include "rmkit/matrix2z.hpp"
#include "rmkit/quadratic.hpp"

namespace rmkit {

inline Matrix2Z digit_matrix(const Int& a) { return Matrix2Z{a, 1, 1, 0}; }

inline Matrix2Z digit_product(const std::vector<Int>& digits) {
    Matrix2Z m = Matrix2Z::identity();
    for (const Int& a : digits) m = m * digit_matrix(a);
    return m;
}

// Eventually periodic expansion [a0; a1, ..., (p1, ..., pk)] in canonical
// form: the period is the minimal cycle and the preperiod is the shortest
// prefix after which the expansion is purely periodic. Canonical form makes
// structural equality coincide with value equality.
class ContinuedFraction {
public:
    ContinuedFraction(std::vector<Int> preperiod, std::vector<Int> period)
        : preperiod_(std::move(preperiod)), period_(std::move(period)) {
        if (period_.empty())
            throw ParseError("continued fraction: period must be nonempty");
        for (std::size_t i = 1; i < preperiod_.size(); ++i)
            if (preperiod_[i] < 1)
                throw ParseError("continued fraction: digit after index 0 below 1");
        for (const Int& a : period_)
            if (a < 1) throw ParseError("continued fraction: period digit below 1");

        // Reduce to the minimal cycle.
        std::size_t k = period_.size();
        for (std::size_t len = 1; len < k; ++len) {
            if (k % len != 0) continue;
            bool rep = true;
            for (std::size_t i = len; i < k && rep; ++i)
                rep = (period_[i] == period_[i % len]);
            if (rep) {
                period_.resize(len);
                break;
            }
        }
        // Absorb a preperiod tail that merely restates the period.
        while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
            preperiod_.pop_back();
            std::rotate(period_.begin(), period_.end() - 1, period_.end());
        }
    }

    const std::vector<Int>& preperiod() const { return preperiod_; }
    const std::vector<Int>& period() const { return period_; }

    Int digit(std::size_t i) const {
        if (i < preperiod_.size()) return preperiod_[i];
        return period_[(i - preperiod_.size()) % period_.size()];
    }

    bool purely_periodic() const { return preperiod_.empty(); }

    // Exact value: the purely periodic tail solves its own period equation,
    // then the preperiod acts as a fractional-linear map.
    QuadraticIrrational value() const {
        Matrix2Z pm = digit_product(period_);
        QuadraticIrrational tail =
            plus_radical_root(pm.c, pm.d - pm.a, -pm.b);
        if (preperiod_.empty()) return tail;
        return mobius_apply(digit_product(preperiod_), tail);
    }

    bool operator==(const ContinuedFraction&) const = default;

private:
    std::vector<Int> preperiod_;
    std::vector<Int> period_;
};

// Standard surd recurrence x_i = (P_i + sqrt(N)) / Q_i with Q_i | N - P_i^2;
// exact integer floors, period detected by first repeated (P, Q) state. The
// state determines the tail value and vice versa, so the first repeat yields
// the minimal preperiod and minimal period.
inline ContinuedFraction cf_expand(const QuadraticIrrational& x) {
    if (!x.is_real()) throw NotRealError("cf_expand: formal-imaginary input");
    Int P, Q, N = x.q() * x.q() * x.d();
    if (x.q() > 0) {
        P = x.p();
        Q = x.r();
    } else {
        P = -x.p();
        Q = -x.r();
    }
    if ((N - P * P) % Q != 0) {
        Int aq = abs_int(Q);
        N *= aq * aq;
        P *= aq;
        Q *= aq;
    }
    Int t = isqrt(N);
    std::vector<Int> digits;
    std::map<std::pair<Int, Int>, std::size_t> seen;
    std::size_t start;
    for (;;) {
        auto it = seen.find({P, Q});
        if (it != seen.end()) {
            start = it->second;
            break;
        }
        seen.emplace(std::make_pair(P, Q), digits.size());
        Int a = (Q > 0) ? fdiv(P + t, Q) : fdiv(-P - t - 1, -Q);
        digits.push_back(a);
        P = a * Q - P;
        Q = (N - P * P) / Q;
    }
    return ContinuedFraction(
        std::vector<Int>(digits.begin(), digits.begin() + start),
        std::vector<Int>(digits.begin() + start, digits.end()));
}

// First k convergents as coprime pairs (h_i, q_i).
inline std::vector<std::pair<Int, Int>> convergent_pairs(
    const ContinuedFraction& cf, std::size_t k) {
    std::vector<std::pair<Int, Int>> out;
    out.reserve(k);
    Int h1 = 1, h2 = 0, q1 = 0, q2 = 1;
    for (std::size_t i = 0; i < k; ++i) {
        Int a = cf.digit(i);
        Int h = a * h1 + h2;
        Int q = a * q1 + q2;
        out.emplace_back(h, q);
        h2 = h1;
        h1 = h;
        q2 = q1;
        q1 = q;
    }
    return out;
}

inline std::vector<Rat> convergents(const ContinuedFraction& cf, std::size_t k) {
    std::vector<Rat> out;
    out.reserve(k);
    for (const auto& [h, q] : convergent_pairs(cf, k)) out.push_back(make_rat(h, q));
    return out;
}

// Tail equivalence: x and y are related by a unimodular fractional-linear
// map iff their expansions share a tail, iff their minimal periods are
// cyclic rotations of each other. On success returns W with
// mobius_apply(W, y) = x and det W = +-1.
inline std::optional<Matrix2Z> gl2_equivalent(const QuadraticIrrational& x,
                                              const QuadraticIrrational& y) {
    ContinuedFraction cx = cf_expand(x);
    ContinuedFraction cy = cf_expand(y);
    const std::vector<Int>& px = cx.period();
    const std::vector<Int>& py = cy.period();
    if (px.size() != py.size()) return std::nullopt;
    std::size_t k = px.size();
    std::size_t sigma = k;
    for (std::size_t s = 0; s < k && sigma == k; ++s) {
        bool ok = true;
        for (std::size_t i = 0; i < k && ok; ++i) ok = (px[(s + i) % k] == py[i]);
        if (ok) sigma = s;
    }
    if (sigma == k) return std::nullopt;
    // x = Apre * M(px[0]) ... M(px[sigma-1]) * tail and y = Bpre * tail for the
    // common purely periodic tail, so W = Apre * R * Bpre^{-1} sends y to x.
    Matrix2Z A = digit_product(cx.preperiod());
    for (std::size_t i = 0; i < sigma; ++i) A = A * digit_matrix(px[i]);
    return A * digit_product(cy.preperiod()).inverse_unimodular();
}

// Hyperbolic fixer of x and conjugate(x): the period matrix of the purely
// periodic tail, conjugated back through the preperiod, squared once if its
// determinant is -1 so the result lands in SL2(Z).
inline Matrix2Z stabilizer_matrix(const QuadraticIrrational& x) {
    ContinuedFraction cf = cf_expand(x);
    Matrix2Z A = digit_product(cf.preperiod());
    Matrix2Z G = A * digit_product(cf.period()) * A.inverse_unimodular();
    if (G.det() == -1) G = G * G;
    if (G.trace() < 0) G = G.negated();
    return G;
}

// Partial multiplicity matrices (a_i, 1; 1, 0) drawn from the digit stream.
struct BratteliData {
    std::vector<Matrix2Z> matrices;

    bool operator==(const BratteliData&) const = default;
};

inline BratteliData bratteli_data(const ContinuedFraction& cf, std::size_t n) {
    BratteliData out;
    out.matrices.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.matrices.push_back(digit_matrix(cf.digit(i)));
    return out;
}

}  // namespace rmkit
