#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cptk/cmatrix.hpp"
#include "cptk/field_model.hpp"
#include "cptk/verdict.hpp"

namespace cptk {

/// The four coupling matrices defining the generalized momenta
/// pi^mu = chi * U^mu over the general field's components. Each U^mu must be
/// antihermitian; its symmetric part is imaginary and its antisymmetric part
/// real, which is what separates Fermi from Bose couplings.
struct UMatrixSet {
    std::array<CMatrix, 4> mu;

    std::size_t dimension() const { return mu[0].rows(); }
};

/// Symmetric/antisymmetric split: U_S = (U + U^T)/2, U_A = (U - U^T)/2.
/// Reconstruction U_S + U_A = U is exact.
struct UDecomposition {
    CMatrix symmetric;
    CMatrix antisymmetric;
};

UDecomposition decompose_u(const CMatrix& u);

/// Checks dimensions against the system, antihermiticity of every U^mu, and
/// the reality classes of the split parts.
Verdict validate_u(const FSystem& sys, const UMatrixSet& u);

/// Per-field statistics derived from which part of U couples its components,
/// with the witnessing entries. A field coupled by no part stays Unknown.
struct StatisticsAssignment {
    std::vector<Statistics> field_statistics;
    std::vector<std::vector<Witness>> evidence;

    Statistics of(std::size_t field) const { return field_statistics.at(field); }
    bool resolved(std::size_t field) const {
        return field_statistics.at(field) != Statistics::Unknown;
    }
    bool all_resolved() const;

    /// Statistics used downstream: a declared value wins the bookkeeping (the
    /// conflict is still reported), otherwise the inferred one.
    std::vector<Statistics> effective;
};

struct StatisticsResult {
    StatisticsAssignment assignment;
    Verdict verdict; // fail on coupling conflicts or declared/inferred clashes
};

/// Tags components touched by nonzero entries of any U^mu symmetric part as
/// Fermi and of any antisymmetric part as Bose, lifts the tags to fields, and
/// validates declared statistics against the inference. A system where no
/// field couples at all is an error (no momentum exists).
StatisticsResult infer_statistics(const FSystem& sys, const UMatrixSet& u);

enum class TransformKind { P, C, T, PT };

std::string to_string(TransformKind k);

/// Entrywise verification of the discrete-transformation sign laws, per mu
/// and per symmetry part:
///   P :  D U^mu D^-1 = -(-1)^{delta_mu0} U^mu           (both parts)
///   T :  D U_A D^-1 = (-1)^{delta_mu0} U_A,  D U_S D^-1 = -(-1)^{delta_mu0} U_S
///   PT:  D U_A D^-1 = -U_A,                  D U_S D^-1 = +U_S
///   C :  D U^mu D^-1 = U^mu                              (both parts)
/// For T the per-field blocks of D must additionally be imaginary on Fermi
/// fields and real on Bose fields. Throws std::domain_error on singular D.
Verdict check_u_transform(TransformKind kind, const CMatrix& D,
                          const UMatrixSet& u, const FSystem& sys,
                          const StatisticsAssignment& stats);

/// Passes iff every half-integer-spin field is Fermi and every integer-spin
/// field is Bose (time-reversal law versus reality class). Uncoupled fields
/// make the verdict indeterminate rather than a failure.
Verdict spin_statistics_verdict(const FSystem& sys,
                                const StatisticsAssignment& stats);

} // namespace cptk
