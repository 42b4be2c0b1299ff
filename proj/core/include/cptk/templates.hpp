#pragma once

#include <string>
#include <vector>

#include "cptk/field_model.hpp"
#include "cptk/umatrix.hpp"

namespace cptk {

/// Built-in coupling templates. Each one fills the four U blocks for the
/// fields it is bound to and installs the discrete-transformation matrices
/// that go with the component basis it defines. Conventions are frozen and
/// pinned by golden files:
///
///  spin0 (2 fields, each (0,0) spin 0: a scalar and its momentum partner):
///    U^0 = [[0,1],[-1,0]] over the pair, U^k = 0; time reversal diag(1,-1).
///
///  vector-fieldstrength (2 fields: (1/2,1/2) spin 1 with Cartesian
///    components v_0..v_3, and (0,1)(+)(1,0) spin 1 with components
///    t_01,t_02,t_03,t_12,t_13,t_23):
///    U^m couples v and t as the momenta of the derivative bilinear
///    -t^{mn} d_m v_n + v_n d_m t^{mn}; space inversion diag(1,-1,-1,-1) on v
///    with (-1,-1,-1,+1,+1,+1) on t, time reversal diag(1,-1,-1,-1) on v with
///    (+1,+1,+1,-1,-1,-1) on t.
///
///  dirac-doubled (2 fields, each (0,1/2)(+)(1/2,0) spin 1/2): U^m = i alpha^m
///    duplicated per field, with the real symmetric convention
///      alpha^0 = I,
///      alpha^1 = diag-block(s1, -s1),
///      alpha^2 = diag-block(s3, -s3),
///      alpha^3 = diag-block(s1+s3, -(s1+s3)),
///    where s1, s3 are the corresponding Pauli matrices on the 2-spinor index.
///    The structural swap/kappa*Y transformation matrices apply unchanged.
enum class TemplateKind { Spin0, VectorFieldStrength, DiracDoubled };

struct TemplateInfo {
    TemplateKind kind;
    std::string name;
    std::size_t arity;
};

const std::vector<TemplateInfo>& builtin_templates();

/// Looks a template up by its spec-file name ("spin0",
/// "vector-fieldstrength", "dirac-doubled").
const TemplateInfo* find_template(const std::string& name);

/// Validates the bound fields' blocks/spins, writes the template's U blocks
/// at the fields' offsets into `u` (which must be pre-sized to the system
/// dimension) and installs transformation overrides on the fields. Throws
/// std::invalid_argument on a binding mismatch.
void apply_template(TemplateKind kind, std::vector<FieldSpec>& fields,
                    const std::vector<std::size_t>& bound,
                    const std::vector<std::size_t>& offsets, UMatrixSet& u);

/// The bundled interacting spin-1 / spin-1/2 example document.
const std::string& example_interacting_1_half();

} // namespace cptk
