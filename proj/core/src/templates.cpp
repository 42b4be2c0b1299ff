#include "cptk/templates.hpp"

#include <stdexcept>

namespace cptk {

const std::vector<TemplateInfo>& builtin_templates() {
    static const std::vector<TemplateInfo> kTemplates = {
        {TemplateKind::Spin0, "spin0", 2},
        {TemplateKind::VectorFieldStrength, "vector-fieldstrength", 2},
        {TemplateKind::DiracDoubled, "dirac-doubled", 2},
    };
    return kTemplates;
}

const TemplateInfo* find_template(const std::string& name) {
    for (const auto& t : builtin_templates())
        if (t.name == name) return &t;
    return nullptr;
}

namespace {

void require_block(const FieldSpec& f, const RepBlock& block, HalfInt spin,
                   const std::string& tmpl) {
    if (!(f.block == block) || !(f.spin == spin))
        throw std::invalid_argument(
            "template " + tmpl + ": field '" + f.name +
            "' does not carry the expected representation block");
}

Scalar one() { return Scalar(1); }
Scalar minus_one() { return Scalar(-1); }

// Pauli matrices on the 2-spinor index.
CMatrix sigma1() {
    return CMatrix::from_rows({{Scalar(0), Scalar(1)}, {Scalar(1), Scalar(0)}});
}
CMatrix sigma3() {
    return CMatrix::from_rows({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(-1)}});
}

// diag-block(a, -a) on the doubled 4-spinor.
CMatrix chiral_diag(const CMatrix& a) { return direct_sum({a, Scalar(-1) * a}); }

CMatrix alpha_matrix(int mu) {
    switch (mu) {
        case 0: return CMatrix::identity(4);
        case 1: return chiral_diag(sigma1());
        case 2: return chiral_diag(sigma3());
        case 3: return chiral_diag(sigma1() + sigma3());
    }
    throw std::invalid_argument("alpha index out of range");
}

void apply_spin0(std::vector<FieldSpec>& fields,
                 const std::vector<std::size_t>& bound,
                 const std::vector<std::size_t>& offsets, UMatrixSet& u) {
    RepBlock scalar_block(HalfInt(0), HalfInt(0));
    for (auto i : bound)
        require_block(fields[i], scalar_block, HalfInt(0), "spin0");
    std::size_t a = offsets[bound[0]], b = offsets[bound[1]];
    u.mu[0].at(a, b) = one();
    u.mu[0].at(b, a) = minus_one();
    // The momentum partner flips under time reversal; the structural scalar
    // form (identity) does not satisfy the transform law for this pair.
    fields[bound[0]].transform_override_t = CMatrix::identity(1);
    fields[bound[1]].transform_override_t = Scalar(-1) * CMatrix::identity(1);
}

// Component order of the antisymmetric rank-2 field: 01, 02, 03, 12, 13, 23.
int tensor_slot(int r, int s) {
    static const int idx[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5},
                                  {2, 4, 5, -1}};
    return idx[r][s];
}

void apply_vector_fieldstrength(std::vector<FieldSpec>& fields,
                                const std::vector<std::size_t>& bound,
                                const std::vector<std::size_t>& offsets,
                                UMatrixSet& u) {
    RepBlock vector_block(HalfInt(1), HalfInt(1));
    RepBlock tensor_block(HalfInt(0), HalfInt::from_int(1), true);
    require_block(fields[bound[0]], vector_block, HalfInt::from_int(1),
                  "vector-fieldstrength");
    require_block(fields[bound[1]], tensor_block, HalfInt::from_int(1),
                  "vector-fieldstrength");

    std::size_t v0 = offsets[bound[0]]; // v_nu, nu = 0..3
    std::size_t t0 = offsets[bound[1]]; // t_{rho sigma}, rho < sigma

    // Momenta of the bilinear -t^{mn} d_m v_n + v_n d_m t^{mn}:
    //   pi^m(v_n) = -t^{mn}   and   pi^rho(t_{rho sigma}) = v_sigma,
    //   pi^sigma(t_{rho sigma}) = -v_rho.
    for (int m = 0; m < 4; ++m) {
        for (int nu = 0; nu < 4; ++nu) {
            if (nu == m) continue;
            if (m < nu)
                u.mu[m].at(t0 + tensor_slot(m, nu), v0 + nu) = minus_one();
            else
                u.mu[m].at(t0 + tensor_slot(nu, m), v0 + nu) = one();
        }
    }
    for (int rho = 0; rho < 4; ++rho)
        for (int sigma = rho + 1; sigma < 4; ++sigma) {
            int slot = tensor_slot(rho, sigma);
            u.mu[rho].at(v0 + sigma, t0 + slot) = one();
            u.mu[sigma].at(v0 + rho, t0 + slot) = minus_one();
        }

    // Cartesian components transform with explicit sign patterns; the
    // structural forms on the (A,B) basis do not apply here.
    std::vector<Scalar> vp = {one(), minus_one(), minus_one(), minus_one()};
    std::vector<Scalar> tp = {minus_one(), minus_one(), minus_one(),
                              one(),       one(),       one()};
    std::vector<Scalar> vt = vp;
    std::vector<Scalar> tt = {one(),      one(),      one(),
                              minus_one(), minus_one(), minus_one()};
    fields[bound[0]].transform_override_p = CMatrix::diagonal(vp);
    fields[bound[1]].transform_override_p = CMatrix::diagonal(tp);
    fields[bound[0]].transform_override_t = CMatrix::diagonal(vt);
    fields[bound[1]].transform_override_t = CMatrix::diagonal(tt);
}

void apply_dirac_doubled(std::vector<FieldSpec>& fields,
                         const std::vector<std::size_t>& bound,
                         const std::vector<std::size_t>& offsets, UMatrixSet& u) {
    RepBlock spinor_block(HalfInt(0), HalfInt(1), true);
    for (auto i : bound)
        require_block(fields[i], spinor_block, HalfInt(1), "dirac-doubled");
    Scalar i_unit = Scalar::i_unit();
    for (int m = 0; m < 4; ++m) {
        CMatrix block = i_unit * alpha_matrix(m);
        for (auto f : bound) u.mu[m].set_block(offsets[f], offsets[f], block);
    }
}

} // namespace

void apply_template(TemplateKind kind, std::vector<FieldSpec>& fields,
                    const std::vector<std::size_t>& bound,
                    const std::vector<std::size_t>& offsets, UMatrixSet& u) {
    for (auto i : bound)
        if (i >= fields.size())
            throw std::invalid_argument("template binding out of range");
    std::size_t arity = 0;
    for (const auto& t : builtin_templates())
        if (t.kind == kind) arity = t.arity;
    if (bound.size() != arity)
        throw std::invalid_argument("template expects " + std::to_string(arity) +
                                    " fields, got " + std::to_string(bound.size()));
    switch (kind) {
        case TemplateKind::Spin0: apply_spin0(fields, bound, offsets, u); break;
        case TemplateKind::VectorFieldStrength:
            apply_vector_fieldstrength(fields, bound, offsets, u);
            break;
        case TemplateKind::DiracDoubled:
            apply_dirac_doubled(fields, bound, offsets, u);
            break;
    }
}

const std::string& example_interacting_1_half() {
    static const std::string kDoc = R"(# Interacting spin-1 / spin-1/2 system: a vector field with its
# field-strength partner, coupled to a doubled spinor pair.
# This bundled example demands gauge invariance of the first kind only;
# it makes no claim of reproducing electrodynamics conventions.

[fields]
A : (1/2,1/2) spin=1 charge=0
F : (0,1)+(1,0) spin=1 charge=0
psi1 : (0,1/2)+(1/2,0) spin=1/2 charge=0
psi2 : (0,1/2)+(1/2,0) spin=1/2 charge=0

[umatrix]
template vector-fieldstrength : A F
template dirac-doubled : psi1 psi2

[lagrangian]
term -1 : A (2) A
term -1 : F (2) F
term -1 : psi1 (2) psi1
term -1 : psi2 (2) psi2
term 1/2 : A (2) psi1 (2) psi1
term 1/2 : A (2) psi2 (2) psi2

[options]
phase_s = 1
phase_c = 1
normal = t
)";
    return kDoc;
}

} // namespace cptk
