#pragma once

#include <array>
#include <cstddef>

#include "cptk/cmatrix.hpp"
#include "cptk/halfint.hpp"
#include "cptk/phase.hpp"
#include "cptk/verdict.hpp"

namespace cptk {

/// Finite-dimensional Lorentz representation label (A,B), optionally doubled
/// so that space inversion ((A,B)(+)(B,A)) and charge conjugation (the
/// opposite-charge partner pair) act within one operator.
///
/// Component ordering inside a doubled block is frozen as: charge (+) half
/// first, then (-) half; within each charge half, (A,B) rows first, then
/// (B,A). Rows of one irreducible factor run over (a,b) with a = A..-A outer,
/// b = B..-B inner (highest weight first).
struct RepBlock {
    HalfInt A;
    HalfInt B;
    bool parity_doubled{false}; // forced false when A == B
    bool charge_doubled{false};

    RepBlock() = default;
    RepBlock(HalfInt a, HalfInt b, bool parity = false, bool charge = false);

    std::size_t base_dimension() const {
        return static_cast<std::size_t>(A.multiplicity()) * B.multiplicity();
    }

    friend bool operator==(const RepBlock&, const RepBlock&) = default;
};

/// Total component count: (2A+1)(2B+1) times 2 per active doubling flag.
std::size_t rep_dimension(const RepBlock& block);

/// Rotation and boost generators for one (A,B) block, exact entries.
/// Invariants: [J_i,J_j] = i e_ijk J_k, [J_i,K_j] = i e_ijk K_k,
/// [K_i,K_j] = -i e_ijk J_k.
struct AlgebraGenerators {
    std::array<CMatrix, 3> J;
    std::array<CMatrix, 3> K;
};

/// Standard (2j+1)-dimensional angular momentum matrices {Jx, Jy, Jz} with
/// exact entries (ladder coefficients sqrt((j-+m)(j+-m+1)) live in the radical
/// scalar field when the radicand is not a perfect square).
std::array<CMatrix, 3> su2_generators(HalfInt j);

/// Generators of the (A,B) representation: J = A(x)1 + 1(x)B,
/// K = -i(A(x)1 - 1(x)B) on the (2A+1)(2B+1) product space.
AlgebraGenerators ab_generators(HalfInt A, HalfInt B);

/// Exact entrywise verification of all commutator families. Throws
/// std::invalid_argument on J/K dimension mismatch.
Verdict verify_lorentz_algebra(const AlgebraGenerators& g);

/// The rotation-by-pi matrix Y_j with entries Y[m',m] = (-1)^(j-m) for
/// m' = -m and zero otherwise; satisfies Y*Y = (-1)^(2j) I.
CMatrix pi_rotation_matrix(HalfInt j);

enum class DiscreteKind { P, C, T };

/// Block matrix of the requested discrete transformation acting on one
/// field's components, times the given phase.
///
///  - P: swap of the (A,B)/(B,A) halves when A != B (requires parity
///    doubling), identity when A == B.
///  - C: diag(+I, -I) over the charge pair; identity-scaled phase when the
///    block is not charge-doubled.
///  - T: kappa_j * (Y_A (x) Y_B) per irreducible factor, with kappa_j = 1 for
///    integer A+B and kappa_j = i for half-integer A+B. This is a fixed
///    convention; any variant differing by a block phase passes the same
///    reality checks.
CMatrix discrete_matrix(DiscreteKind kind, const RepBlock& block,
                        const Phase& phase = Phase::one());

enum class RealityClass { Real, Imaginary };

/// Real for integer spin, Imaginary for half-integer spin.
RealityClass reality_class(HalfInt j);

/// Passes iff conj(D) == D (Real class) or conj(D) == -D (Imaginary class),
/// with the class fixed by the spin parity.
Verdict verify_t_reality(const CMatrix& D, HalfInt j);

std::string to_string(RealityClass c);

} // namespace cptk
