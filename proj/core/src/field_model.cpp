#include "cptk/field_model.hpp"

#include <set>
#include <stdexcept>

namespace cptk {

std::string to_string(Statistics s) {
    switch (s) {
        case Statistics::Unknown: return "unknown";
        case Statistics::Bose: return "bose";
        case Statistics::Fermi: return "fermi";
    }
    return "?";
}

void validate_field_spec(const FieldSpec& f) {
    if (f.name.empty())
        throw std::invalid_argument("field must have a name");
    if (!f.hermitian)
        throw std::invalid_argument("field '" + f.name +
                                    "': components must be hermitian");
    HalfInt lo = (f.block.A - f.block.B).abs();
    HalfInt hi = f.block.A + f.block.B;
    if (f.spin < lo || hi < f.spin)
        throw std::invalid_argument(
            "field '" + f.name + "': spin " + to_string(f.spin) +
            " outside |A-B| <= j <= A+B for (" + to_string(f.block.A) + "," +
            to_string(f.block.B) + ")");
    if (f.spin.is_integer() != hi.is_integer())
        throw std::invalid_argument(
            "field '" + f.name + "': spin " + to_string(f.spin) +
            " has the wrong integer/half-integer parity for (" +
            to_string(f.block.A) + "," + to_string(f.block.B) + ")");
    for (const auto* ov :
         {&f.transform_override_p, &f.transform_override_c, &f.transform_override_t}) {
        if (*ov && ((*ov)->rows() != f.dimension() || (*ov)->cols() != f.dimension()))
            throw std::invalid_argument("field '" + f.name +
                                        "': transform override has wrong dimension");
    }
}

FSystem::FSystem(std::vector<FieldSpec> fields) : fields_(std::move(fields)) {
    offsets_.reserve(fields_.size());
    for (const auto& f : fields_) {
        offsets_.push_back(total_);
        total_ += f.dimension();
    }
}

std::optional<std::size_t> FSystem::field_index(const std::string& name) const {
    for (std::size_t i = 0; i < fields_.size(); ++i)
        if (fields_[i].name == name) return i;
    return std::nullopt;
}

std::size_t FSystem::owner_of(std::size_t flat) const {
    if (flat >= total_) throw std::out_of_range("component index out of range");
    std::size_t i = fields_.size();
    while (i > 0 && offsets_[i - 1] > flat) --i;
    return i - 1;
}

ComponentIndex FSystem::component_at(std::size_t flat) const {
    std::size_t f = owner_of(flat);
    std::size_t local = flat - offsets_[f];
    std::size_t base = fields_[f].block.base_dimension();
    return ComponentIndex{f, local / base, local % base};
}

std::size_t FSystem::flat_index(const ComponentIndex& c) const {
    const FieldSpec& f = fields_.at(c.field);
    std::size_t base = f.block.base_dimension();
    std::size_t slots = f.dimension() / base;
    if (c.slot >= slots || c.row >= base)
        throw std::out_of_range("ComponentIndex out of range");
    return offsets_[c.field] + c.slot * base + c.row;
}

std::string FSystem::component_name(std::size_t flat) const {
    std::size_t f = owner_of(flat);
    return fields_[f].name + "[" + std::to_string(flat - offsets_[f]) + "]";
}

FSystem assemble_general_field(std::vector<FieldSpec> fields) {
    if (fields.empty())
        throw std::invalid_argument("a field system needs at least one field");
    std::set<std::string> names;
    for (const auto& f : fields) {
        validate_field_spec(f);
        if (!names.insert(f.name).second)
            throw std::invalid_argument("duplicate field name '" + f.name + "'");
    }
    return FSystem(std::move(fields));
}

CMatrix field_transform(const FieldSpec& f, DiscreteKind kind,
                        const Phase& phase_s, const Phase& phase_c) {
    const std::optional<CMatrix>* ov = nullptr;
    switch (kind) {
        case DiscreteKind::P: ov = &f.transform_override_p; break;
        case DiscreteKind::C: ov = &f.transform_override_c; break;
        case DiscreteKind::T: ov = &f.transform_override_t; break;
    }
    const Phase& phase = kind == DiscreteKind::P   ? phase_s
                         : kind == DiscreteKind::C ? phase_c
                                                   : Phase::one();
    if (*ov) return Scalar(phase.to_qcomplex()) * **ov;
    return discrete_matrix(kind, f.block, phase);
}

CMatrix system_transform(const FSystem& sys, DiscreteKind kind,
                         const Phase& phase_s, const Phase& phase_c) {
    std::vector<CMatrix> blocks;
    blocks.reserve(sys.field_count());
    for (const auto& f : sys.fields())
        blocks.push_back(field_transform(f, kind, phase_s, phase_c));
    return direct_sum(std::span<const CMatrix>(blocks));
}

} // namespace cptk
