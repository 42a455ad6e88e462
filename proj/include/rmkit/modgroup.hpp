// Congruence subgroups of SL2(Z), hyperbolic fixed points, enumeration of
// SL2(Z/N), and the desk-scale verification harnesses for stabilizer
// congruence data and the principal-subgroup index.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rmkit/bigint.hpp"
#include "rmkit/contfrac.hpp"
#include "rmkit/errors.hpp"
#include "rmkit/lattices.hpp"
#include "rmkit/matrix2z.hpp"
#include "rmkit/quadratic.hpp"

namespace rmkit {

enum class CongruenceKind { principal, gamma1, gamma0 };

struct CongruenceSpec {
    CongruenceKind kind;
    Int N;  // level, >= 1

    bool operator==(const CongruenceSpec&) const = default;
};

inline bool is_hyperbolic(const Matrix2Z& m) {
    if (m.det() != 1) throw NotUnimodularError("is_hyperbolic: det must be 1");
    return abs_int(m.trace()) > 2;
}

// Fixed points of the fractional-linear action: roots of c x^2 + (d-a) x - b.
// The root with the positive radical comes first; the second is its
// conjugate. Both are fixed exactly.
inline std::pair<QuadraticIrrational, QuadraticIrrational> fixed_points(
    const Matrix2Z& m) {
    if (m.det() != 1) throw NotUnimodularError("fixed_points: det must be 1");
    if (m.c == 0)
        throw FixedPointAtInfinityError("fixed_points: c = 0 fixes infinity");
    if (abs_int(m.trace()) <= 2)
        throw NotHyperbolicError("fixed_points: |trace| must exceed 2");
    QuadraticIrrational x = plus_radical_root(m.c, m.d - m.a, -m.b);
    QuadraticIrrational xbar = x.conjugate();
    return {std::move(x), std::move(xbar)};
}

// Congruence pattern a = d = 1, c = 0 mod modulus, with no determinant
// validation; the raw conclusion of the stabilizer congruence computation.
inline bool gamma1_pattern(const Matrix2Z& m, const Int& modulus) {
    if (modulus < 1) throw BoundExceededError("gamma1_pattern: modulus must be >= 1");
    return mod_floor(m.a - 1, modulus) == 0 && mod_floor(m.d - 1, modulus) == 0 &&
           mod_floor(m.c, modulus) == 0;
}

inline bool in_congruence_group(const Matrix2Z& m, const CongruenceSpec& spec) {
    if (m.det() != 1)
        throw NotUnimodularError("in_congruence_group: det must be 1");
    if (spec.N < 1)
        throw BoundExceededError("in_congruence_group: level must be >= 1");
    const Int& N = spec.N;
    switch (spec.kind) {
        case CongruenceKind::principal:
            return gamma1_pattern(m, N) && mod_floor(m.b, N) == 0;
        case CongruenceKind::gamma1:
            return gamma1_pattern(m, N);
        case CongruenceKind::gamma0:
            return mod_floor(m.c, N) == 0;
    }
    return false;  // unreachable
}

// Exhaustive SL2(Z/N): group order plus a membership oracle. Elements are
// packed as ((a*N + b)*N + c)*N + d in a sorted vector.
class Sl2ModN {
public:
    explicit Sl2ModN(long N) : N_(N) {
        if (N < 2 || N > 30)
            throw BoundExceededError("sl2_modN: level must lie in [2, 30]");
        for (long a = 0; a < N; ++a)
            for (long b = 0; b < N; ++b)
                for (long c = 0; c < N; ++c)
                    for (long d = 0; d < N; ++d)
                        if (((a * d - b * c) % N + N) % N == 1)
                            elems_.push_back(pack(a, b, c, d));
        std::sort(elems_.begin(), elems_.end());
    }

    long level() const { return N_; }
    std::size_t order() const { return elems_.size(); }
    const std::vector<std::uint32_t>& elements() const { return elems_; }

    bool contains(const Matrix2Z& m) const {
        std::uint32_t key = pack(residue(m.a), residue(m.b), residue(m.c),
                                 residue(m.d));
        return std::binary_search(elems_.begin(), elems_.end(), key);
    }

    Matrix2Z unpack(std::uint32_t key) const {
        long d = key % N_;
        key /= N_;
        long c = key % N_;
        key /= N_;
        long b = key % N_;
        long a = key / N_;
        return Matrix2Z{a, b, c, d};
    }

private:
    std::uint32_t pack(long a, long b, long c, long d) const {
        return std::uint32_t(((a * N_ + b) * N_ + c) * N_ + d);
    }
    long residue(const Int& v) const { return mod_floor(v, N_).get_si(); }

    long N_;
    std::vector<std::uint32_t> elems_;
};

inline Sl2ModN sl2_modN(long N) { return Sl2ModN(N); }

// |SL2(Z/N)| = N^3 * prod over primes p | N of (1 - 1/p^2), evaluated
// exactly.
inline Int sl2_order_formula(const Int& N) {
    Int order = N * N * N;
    for (const Int& p : distinct_prime_factors(N)) {
        order /= p * p;
        order *= p * p - 1;
    }
    return order;
}

struct Lemma4Report {
    Int N;
    Int sl2_order;
    Int formula_order;
    bool order_ok;
    Int gamma1_image_order;
    Int gamma_image_order;
    Int index;
    bool index_ok;
    bool normal;
    Int cover_degree;
};

// Index of the principal congruence subgroup inside gamma1 at level N,
// decided by enumeration in SL2(Z/N): the gamma1 image is the upper
// unipotent subgroup of order N, the principal image is trivial.
inline Lemma4Report verify_lemma4(long N) {
    Sl2ModN g = sl2_modN(N);
    Int levelN(N);
    std::vector<Matrix2Z> g1_image;
    long gamma_count = 0;
    for (std::uint32_t key : g.elements()) {
        Matrix2Z m = g.unpack(key);
        if (gamma1_pattern(m, levelN)) {
            g1_image.push_back(m);
            if (mod_floor(m.b, levelN) == 0) ++gamma_count;
        }
    }
    // The principal image is the identity coset; conjugating it by every
    // gamma1-image element must land inside it.
    bool normal = true;
    for (const Matrix2Z& m : g1_image) {
        Matrix2Z conj = m * Matrix2Z::identity() * m.inverse_unimodular();
        conj = conj.mod(levelN);
        if (!(gamma1_pattern(conj, levelN) && mod_floor(conj.b, levelN) == 0)) {
            normal = false;
            break;
        }
    }

    Lemma4Report r{levelN,
                   Int(long(g.order())),
                   sl2_order_formula(levelN),
                   false,
                   Int(long(g1_image.size())),
                   Int(gamma_count),
                   Int(0),
                   false,
                   normal,
                   Int(0)};
    r.order_ok = (r.sl2_order == r.formula_order);
    r.index = r.gamma_image_order == 0 ? Int(0)
                                       : Int(r.gamma1_image_order / r.gamma_image_order);
    r.index_ok = (r.index == levelN);
    r.cover_degree = r.index;
    return r;
}

// Least k in [1, k_max] with M^k = (1, *; 0, 1) mod N; powers are computed
// exactly and reduced mod N at each step.
inline std::optional<unsigned long> minimal_power_in_gamma1(const Matrix2Z& m,
                                                            const Int& N,
                                                            unsigned long k_max) {
    if (N < 1)
        throw BoundExceededError("minimal_power_in_gamma1: level must be >= 1");
    Matrix2Z base = m.mod(N);
    Matrix2Z power = Matrix2Z::identity();
    for (unsigned long k = 1; k <= k_max; ++k) {
        power = (power * base).mod(N);
        if (gamma1_pattern(power, N)) return k;
    }
    return std::nullopt;
}

struct PowerRecord {
    unsigned long k;
    bool pattern_plus;   // M^k matches the congruence pattern mod N
    bool pattern_minus;  // -M^k matches it
};

struct Lemma1Report {
    Int D;
    Int f;
    Int N;  // f * D
    Matrix2Z M;
    QuadraticIrrational theta;
    QuadraticIrrational x;
    QuadraticIrrational xbar;
    bool fixed_set_ok;
    bool x_in_lattice;
    bool xbar_in_lattice;
    std::optional<std::pair<Int, Int>> z_x;
    std::optional<std::pair<Int, Int>> z_xbar;
    std::optional<unsigned long> k;
    std::optional<unsigned long> k_signed;
    std::vector<PowerRecord> powers;
};

// Stabilizer congruence data for theta = f*omega(D): fixed points of the
// stabilizer land in Z + (f*omega)Z with integer witnesses (asserted by
// callers via the flags), and the minimal power of the stabilizer matching
// the congruence pattern mod fD is probed up to k_max. Congruences of both
// M^k and -M^k are recorded per power; nothing here interprets them.
inline Lemma1Report lemma1_harness(const Int& D, const Int& f,
                                   unsigned long k_max = 64) {
    QuadraticIrrational theta = order_omega(D).scaled_by(f);
    Matrix2Z M = stabilizer_matrix(theta);
    auto [x, xbar] = fixed_points(M);
    PseudoLattice lattice = pseudo_lattice_of(D, f);

    bool fixed_set_ok = (x == theta && xbar == theta.conjugate()) ||
                        (xbar == theta && x == theta.conjugate());
    auto z_x = lattice.contains_witness(x);
    auto z_xbar = lattice.contains_witness(xbar);

    Int N = f * D;
    Matrix2Z base = M.mod(N);
    Matrix2Z power = Matrix2Z::identity();
    std::vector<PowerRecord> powers;
    std::optional<unsigned long> k, k_signed;
    for (unsigned long i = 1; i <= k_max; ++i) {
        power = (power * base).mod(N);
        bool plus = gamma1_pattern(power, N);
        bool minus = gamma1_pattern(power.negated(), N);
        powers.push_back({i, plus, minus});
        if (plus && !k) k = i;
        if ((plus || minus) && !k_signed) k_signed = i;
        if (k) break;
    }

    return Lemma1Report{D,
                        f,
                        std::move(N),
                        std::move(M),
                        std::move(theta),
                        std::move(x),
                        std::move(xbar),
                        fixed_set_ok,
                        z_x.has_value(),
                        z_xbar.has_value(),
                        std::move(z_x),
                        std::move(z_xbar),
                        k,
                        k_signed,
                        std::move(powers)};
}

}  // namespace rmkit
