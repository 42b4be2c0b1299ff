#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cptk/cmatrix.hpp"
#include "cptk/field_model.hpp"
#include "cptk/umatrix.hpp"

namespace cptk {

/// Covariant surface normal, exact components (n_t, n_x, n_y, n_z).
struct SurfaceNormal {
    std::array<Rat, 4> n{Rat(1), Rat(0), Rat(0), Rat(0)};

    static SurfaceNormal time_axis() { return {}; }
    static SurfaceNormal axis(int mu);

    /// n.n under the (+,-,-,-) form; the action-principle surface normal must
    /// be timelike (positive norm).
    Rat minkowski_norm() const {
        return n[0] * n[0] - n[1] * n[1] - n[2] * n[2] - n[3] * n[3];
    }
    std::string str() const;
};

/// One contribution  coeff * chi[source] * (variation of chi[varied])  to a
/// surface-integral generator; varied_first marks the dual display order
/// coeff * (variation of chi[varied]) * chi[source].
struct GeneratorTerm {
    std::size_t source;
    std::size_t varied;
    Scalar coeff;
    bool varied_first{false};
};

enum class GeneratorVariant { FieldVariation, MomentumVariation, Symmetric };

/// A generator as a symbolic surface integral: F = Int ds sum(terms).
struct GeneratorExpr {
    GeneratorVariant variant{GeneratorVariant::FieldVariation};
    SurfaceNormal normal;
    std::vector<GeneratorTerm> terms; // sorted by (varied, source)
};

/// Terms brought to the common chi-first order, swapping factor pairs with
/// the graded sign (two Fermi components anticommute). The three generator
/// variants of one system normalize to the same list; that is the content of
/// the equivalence between them.
std::vector<GeneratorTerm> normalized_terms(const GeneratorExpr& g,
                                            const FSystem& sys,
                                            const StatisticsAssignment& stats);

/// The three equivalent generating operators for one system:
///   F(dchi) =  Int ds pi_l dchi^l           with pi_l = n_mu chi U^mu
///   F(dpi)  = -Int ds dpi_l chi^l
///   F(sym)  = (F(dchi) + F(dpi)) / 2
struct GeneratorSet {
    GeneratorExpr field_variation;
    GeneratorExpr momentum_variation;
    GeneratorExpr symmetric;
    CMatrix projected_coupling; // n_mu U^mu
};

/// Builds all three generators. Throws std::domain_error when the normal is
/// not timelike and std::invalid_argument on dimension mismatch.
GeneratorSet derive_generator(const FSystem& sys, const UMatrixSet& u,
                              const SurfaceNormal& n);

/// Components that appear in the generators for the given surface normal:
/// those with a nonzero projected momentum and those the momenta are built
/// from. The rest obey constraint equations instead.
struct FundamentalPartition {
    std::vector<std::size_t> fundamental;
    std::vector<std::size_t> non_fundamental;
};

FundamentalPartition classify_fundamental(const FSystem& sys,
                                          const UMatrixSet& u,
                                          const SurfaceNormal& n);

enum class BracketKind { Commutator, Anticommutator };

std::string to_string(BracketKind k);

/// One family of derived equal-time relations, instantiated with the
/// system's coupling parts:
///   [U_A phi(x), phi(x') U_A]_-  = i U_A delta_s(x-x')
///   [U_S psi(x), psi(x') U_S]_+  = i U_S delta_s(x-x')
///   [U_S psi(x), phi(x') U_A]_+- = 0
/// delta_s is the opaque surface distribution token.
struct BracketRelation {
    BracketKind kind;
    Statistics left_sector;
    Statistics right_sector;
    bool rhs_zero{false};
    std::array<CMatrix, 4> coupling_parts; // per mu; empty matrices when zero
};

/// Emits the relation families present in the system. Throws
/// std::invalid_argument when statistics are unresolved.
std::vector<BracketRelation> derive_commutators(const FSystem& sys,
                                                const UMatrixSet& u,
                                                const StatisticsAssignment& stats);

/// Canonical line-oriented renderings (stable across runs; used for golden
/// comparisons and reports).
std::string render_generator(const GeneratorExpr& g, const FSystem& sys);
std::string render_partition(const FundamentalPartition& p, const FSystem& sys);
std::string render_bracket(const BracketRelation& r, const FSystem& sys);

} // namespace cptk
