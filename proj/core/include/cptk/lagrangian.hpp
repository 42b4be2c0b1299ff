#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cptk/field_model.hpp"
#include "cptk/umatrix.hpp"
#include "cptk/verdict.hpp"

namespace cptk {

/// Spacetime argument tag of an operator factor. The discrete maps act as the
/// Klein four-group on the x-variants; x' marks the second point of a bracket
/// relation and is never transformed.
enum class PointLabel { X, XPrime, IsX, ItX, MinusX };

PointLabel space_invert(PointLabel p);
PointLabel time_invert(PointLabel p);
PointLabel negate_point(PointLabel p);
std::string to_string(PointLabel p);

/// One field slot of a polynomial term. Slots are formal graded symbols:
/// component detail beyond the field is carried by the coupling chains, and
/// swapping two Fermi slots costs a sign.
struct OperatorFactor {
    std::size_t field{0};
    bool conjugated{false};
    PointLabel point{PointLabel::X};
    Statistics grading{Statistics::Unknown};

    friend bool operator==(const OperatorFactor& a, const OperatorFactor& b) {
        return a.field == b.field && a.conjugated == b.conjugated &&
               a.point == b.point;
    }
};

/// Canonical slot order: by field, then point, then conjugation flag.
bool factor_key_less(const OperatorFactor& a, const OperatorFactor& b);

/// Polynomial term  coeff * chi (U)^{k_1} chi (U)^{k_2} ... chi  with the
/// coupling powers positional between consecutive slots. The sum of the
/// powers must be even; this is what the construction enforces and what the
/// combined antiunitary check consumes.
struct DynTerm {
    QComplex coeff;
    std::vector<OperatorFactor> factors;
    std::vector<int> k_powers; // size == factors.size() - 1

    /// Pre-conjugation state of the combined antiunitary map: every chain
    /// factor carries a sign that resolves only once the final complex
    /// conjugation applies the reality classes of the two coupling parts.
    bool chain_flip_pending{false};

    int power_sum() const;

    /// Validating constructor; throws std::invalid_argument on a malformed
    /// shape or an odd power sum.
    static DynTerm make(QComplex coeff, std::vector<OperatorFactor> factors,
                        std::vector<int> k_powers);
    /// Shape-checked but parity-unchecked; for exercising the rejection paths.
    static DynTerm make_unchecked(QComplex coeff,
                                  std::vector<OperatorFactor> factors,
                                  std::vector<int> k_powers);
};

/// The derivative bilinear part (1/2)[chi U^mu d_mu chi - (d_mu chi) U^mu chi],
/// kept structurally as its defining matrix pencil. Derivatives are formal;
/// transformations act on the matrices, the point tag and the conjugation
/// flag exactly.
struct KinematicPart {
    bool present{false};
    UMatrixSet matrices;
    PointLabel point{PointLabel::X};
    bool conjugated{false};

    friend bool operator==(const KinematicPart&, const KinematicPart&);
};

struct Lagrangian {
    KinematicPart kinematic;
    std::vector<DynTerm> terms;
};

/// Kinematic part built from the coupling matrices; zero couplings give a
/// zero kinematic pencil.
Lagrangian build_kinematic(const FSystem& sys, const UMatrixSet& u);

/// Resolves slot gradings from the assignment and stable-sorts the slots by
/// the canonical key; each crossing of two Fermi slots with strictly ordered
/// keys negates the coefficient (equal-key Fermi slots do not). Idempotent.
DynTerm graded_canonicalize(const DynTerm& term,
                            const FSystem& sys,
                            const StatisticsAssignment& stats);

/// Canonicalizes every term and merges equal (slots, powers) keys, dropping
/// zero coefficients. Term order in the result is the canonical key order.
Lagrangian canonicalize_lagrangian(const Lagrangian& lag, const FSystem& sys,
                                   const StatisticsAssignment& stats);

bool lagrangian_equal(const Lagrangian& a, const Lagrangian& b,
                      const FSystem& sys, const StatisticsAssignment& stats);

/// Well-formedness of the polynomial part: every term has an even coupling
/// power sum.
Verdict check_term_form(const Lagrangian& lag, const FSystem& sys);

/// Hermiticity: the kinematic pencil must be antihermitian; the adjoint image
/// of the polynomial part (slots reversed, powers reversed, coefficient
/// conjugated, one sign per chain factor) must re-canonicalize to the
/// original. Coefficients must be real.
Verdict check_hermiticity(const Lagrangian& lag, const FSystem& sys,
                          const StatisticsAssignment& stats);

/// First-kind gauge invariance with the diagonal per-field charges: every
/// polynomial term's signed charge sum (conjugated slots count -q) must
/// vanish, and every nonzero kinematic coupling must pair components of
/// opposite charge.
Verdict check_gauge(const Lagrangian& lag, const FSystem& sys);

enum class LagrangianTransform { P, C, T, CPT };

std::string to_string(LagrangianTransform k);

/// Applies the discrete transformation. The kinematic pencil transforms by
/// the exact matrix similarity together with the derivative sign per mu; the
/// polynomial slots map their point tags (and conjugation flags under the
/// antiunitary kinds). Chain powers transform by the sign laws: under C they
/// are invariant; under P or T alone every chain power must be even (the sign
/// is then +1 regardless of the symmetry split) or std::domain_error is
/// thrown; under the combined CPT map each chain factor is left sign-pending
/// until conjugate_lagrangian resolves it.
Lagrangian transform_lagrangian(const Lagrangian& lag, LagrangianTransform kind,
                                const FSystem& sys, const UMatrixSet& u,
                                const StatisticsAssignment& stats,
                                const Phase& phase_s = Phase::one(),
                                const Phase& phase_c = Phase::one());

/// Complex conjugation: conjugates coefficients and kinematic entries,
/// toggles conjugation flags, and resolves pending chain signs (each chain
/// factor contributes -1, so a term picks up (-1)^{sum of powers}).
Lagrangian conjugate_lagrangian(const Lagrangian& lag);

/// The combined antiunitary invariance check: the conjugated CPT image must
/// re-canonicalize to the original Lagrangian with every point at -x.
/// Failure witnesses carry the offending power parity or residual phase.
Verdict cpt_verdict(const Lagrangian& lag, const FSystem& sys,
                    const UMatrixSet& u, const StatisticsAssignment& stats,
                    const Phase& phase_s = Phase::one(),
                    const Phase& phase_c = Phase::one());

/// Renders a term like "2 * A(x) (U^2) psi1(x) (U^2) psi1(x)".
std::string term_to_string(const DynTerm& t, const FSystem& sys);

} // namespace cptk
