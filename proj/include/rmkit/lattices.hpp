// Pseudo-lattices Z + Z*theta, their endomorphism orders (radicand D,
// conductor f), and the canonical order generator omega.
#pragma once

#include <optional>
#include <utility>

#include "rmkit/bigint.hpp"
#include "rmkit/errors.hpp"
#include "rmkit/quadratic.hpp"

namespace rmkit {

// Order of radicand D and conductor f inside the quadratic field of sqrt(D)
// (real) or sqrt(-D) (imaginary).
struct QuadraticOrder {
    Int D;
    Int f;
    Sign sign = Sign::real;

    bool operator==(const QuadraticOrder&) const = default;
};

// Generator of the maximal order: (1+sqrt(D))/2 when D = 1 mod 4, sqrt(D)
// otherwise; the imaginary variant carries sqrt(-D) formally.
inline QuadraticIrrational order_omega(const Int& D, Sign sign = Sign::real) {
    if (D <= 1 || !is_squarefree(D))
        throw NonCanonicalRadicandError("order_omega: D must be squarefree and > 1");
    if (mod_floor(D, 4) == 1)
        return QuadraticIrrational::canonicalize(1, 1, 2, D, sign);
    return QuadraticIrrational::canonicalize(0, 1, 1, D, sign);
}

// The order End(Z + Z*x), reported as (D, f): the minimal polynomial
// discriminant factors as f^2 * d_K with d_K = D or 4D per the residue of
// D mod 4.  A formal-imaginary value is the sign-tagged twin of a real one
// and carries its twin's (D, f), so the conductor is computed from the real
// polynomial in both cases.
inline QuadraticOrder endomorphism_order(const QuadraticIrrational& x) {
    Int a = x.r() * x.r();
    Int b = -2 * x.p() * x.r();
    Int c = x.p() * x.p() - x.q() * x.q() * x.d();
    Int g = gcd3(a, b, c);
    Int delta = (b * b - 4 * a * c) / (g * g);
    SquarefreeSplit s = squarefree_split(delta);
    Int D = s.squarefree;
    Int f = (mod_floor(D, 4) == 1) ? s.root : s.root / 2;
    return {std::move(D), std::move(f), x.sign()};
}

// Z + Z*theta. Membership is exact linear algebra in the basis {1, sqrt(D)};
// equality is set equality via mutual generator containment.
class PseudoLattice {
public:
    explicit PseudoLattice(QuadraticIrrational theta) : theta_(std::move(theta)) {}

    const QuadraticIrrational& theta() const { return theta_; }

    // Integer pair (z1, z2) with x = z1 + z2 * theta, if one exists.
    std::optional<std::pair<Int, Int>> contains_witness(
        const QuadraticIrrational& x) const {
        if (x.d() != theta_.d() || x.sign() != theta_.sign()) return std::nullopt;
        Rat z2 = make_rat(x.q() * theta_.r(), x.r() * theta_.q());
        if (!is_integer(z2)) return std::nullopt;
        Rat z1 = make_rat(x.p(), x.r()) - z2 * make_rat(theta_.p(), theta_.r());
        if (!is_integer(z1)) return std::nullopt;
        return std::make_pair(z1.get_num(), z2.get_num());
    }

    bool contains(const QuadraticIrrational& x) const {
        return contains_witness(x).has_value();
    }

    // Set equality: both lattices contain Z, so mutual containment of the
    // generators decides it.
    bool operator==(const PseudoLattice& other) const {
        return contains(other.theta_) && other.contains(theta_);
    }

private:
    QuadraticIrrational theta_;
};

inline PseudoLattice pseudo_lattice_of(const Int& D, const Int& f) {
    if (f < 1) throw BoundExceededError("pseudo_lattice_of: conductor must be >= 1");
    return PseudoLattice(order_omega(D).scaled_by(f));
}

// Every real quadratic irrational generates a lattice with multiplication by
// an order larger than Z; the witness order is returned. Formal-imaginary
// values are complex-multiplication territory and yield no witness.
inline std::optional<QuadraticOrder> is_real_multiplication(
    const QuadraticIrrational& x) {
    if (!x.is_real()) return std::nullopt;
    return endomorphism_order(x);
}

}  // namespace rmkit
