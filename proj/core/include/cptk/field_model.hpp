#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cptk/cmatrix.hpp"
#include "cptk/lorentz.hpp"
#include "cptk/phase.hpp"
#include "cptk/rational.hpp"

namespace cptk {

enum class Statistics { Unknown, Bose, Fermi };

std::string to_string(Statistics s);

/// One basic field: a Hermitian multi-component operator carrying a Lorentz
/// representation block, a spin, a charge and (possibly inferred) statistics.
///
/// Discrete-transformation matrices default to the structural forms of
/// discrete_matrix(); a template or caller may install explicit per-kind
/// overrides when the field's components live in a basis (e.g. Cartesian
/// vector components) where the structural form does not apply.
struct FieldSpec {
    std::string name;
    RepBlock block;
    HalfInt spin;
    Rat charge{0};
    Statistics statistics{Statistics::Unknown};
    bool hermitian{true};

    std::optional<CMatrix> transform_override_p;
    std::optional<CMatrix> transform_override_c;
    std::optional<CMatrix> transform_override_t;

    std::size_t dimension() const { return rep_dimension(block); }
};

/// Validates |A-B| <= spin <= A+B and matching integer/half-integer parity;
/// throws std::invalid_argument on violation.
void validate_field_spec(const FieldSpec& f);

/// Component address: which field, which doubling slot, which row of the
/// irreducible factor. Bijective with the flat index of the general field.
struct ComponentIndex {
    std::size_t field;
    std::size_t slot;
    std::size_t row;

    friend bool operator==(const ComponentIndex&, const ComponentIndex&) = default;
};

/// A closed system of basic fields; the general field operator is their
/// concatenation in declaration order.
class FSystem {
  public:
    FSystem() = default;
    explicit FSystem(std::vector<FieldSpec> fields);

    const std::vector<FieldSpec>& fields() const { return fields_; }
    const FieldSpec& field(std::size_t i) const { return fields_.at(i); }
    std::size_t field_count() const { return fields_.size(); }

    std::size_t total_components() const { return total_; }
    std::size_t field_offset(std::size_t i) const { return offsets_.at(i); }
    std::optional<std::size_t> field_index(const std::string& name) const;

    /// Field owning a flat component index.
    std::size_t owner_of(std::size_t flat) const;

    ComponentIndex component_at(std::size_t flat) const;
    std::size_t flat_index(const ComponentIndex& c) const;

    /// Display name "<field>[<k>]" with k the per-field component index.
    std::string component_name(std::size_t flat) const;

    Statistics statistics_of_field(std::size_t i) const {
        return fields_.at(i).statistics;
    }

  private:
    std::vector<FieldSpec> fields_;
    std::vector<std::size_t> offsets_;
    std::size_t total_{0};
};

/// Deterministic flat component table of the general field. Rejects
/// duplicate names and empty systems (the composition is nonempty).
FSystem assemble_general_field(std::vector<FieldSpec> fields);

/// Block-diagonal discrete transformation of the whole system, one block per
/// field in declaration order. Respects per-field overrides.
CMatrix system_transform(const FSystem& sys, DiscreteKind kind,
                         const Phase& phase_s = Phase::one(),
                         const Phase& phase_c = Phase::one());

/// The matrix the given kind contributes for one field (override or
/// structural form).
CMatrix field_transform(const FieldSpec& f, DiscreteKind kind,
                        const Phase& phase_s = Phase::one(),
                        const Phase& phase_c = Phase::one());

} // namespace cptk
