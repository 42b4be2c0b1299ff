#include <doctest.h>

#include "cptk/field_model.hpp"

using namespace cptk;

namespace {

FieldSpec make_field(std::string name, RepBlock block, HalfInt spin) {
    FieldSpec f;
    f.name = std::move(name);
    f.block = block;
    f.spin = spin;
    return f;
}

FSystem scalar_vector_system() {
    return assemble_general_field(
        {make_field("phi", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0)),
         make_field("v", RepBlock(HalfInt(1), HalfInt(1)), HalfInt(2))});
}

} // namespace

TEST_CASE("field spec validation") {
    CHECK_NOTHROW(validate_field_spec(
        make_field("ok", RepBlock(HalfInt(0), HalfInt(1), true), HalfInt(1))));
    // spin outside |A-B| <= j <= A+B
    CHECK_THROWS_AS(validate_field_spec(make_field(
                        "bad", RepBlock(HalfInt(0), HalfInt(1)), HalfInt(2))),
                    std::invalid_argument);
    // right range, wrong parity
    CHECK_THROWS_AS(validate_field_spec(make_field(
                        "bad", RepBlock(HalfInt(1), HalfInt(1)), HalfInt(1))),
                    std::invalid_argument);
    FieldSpec nonherm = make_field("h", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0));
    nonherm.hermitian = false;
    CHECK_THROWS_AS(validate_field_spec(nonherm), std::invalid_argument);
}

TEST_CASE("general field assembly") {
    CHECK_THROWS_AS(assemble_general_field({}), std::invalid_argument);

    FSystem one = assemble_general_field(
        {make_field("phi", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0))});
    CHECK(one.total_components() == 1);
    CHECK(one.component_name(0) == "phi[0]");

    CHECK_THROWS_AS(
        assemble_general_field(
            {make_field("x", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0)),
             make_field("x", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0))}),
        std::invalid_argument);

    // the bundled interacting example layout: 10 + 8 components
    FSystem sys = assemble_general_field(
        {make_field("A", RepBlock(HalfInt(1), HalfInt(1)), HalfInt(2)),
         make_field("F", RepBlock(HalfInt(0), HalfInt(2), true), HalfInt(2)),
         make_field("psi1", RepBlock(HalfInt(0), HalfInt(1), true), HalfInt(1)),
         make_field("psi2", RepBlock(HalfInt(0), HalfInt(1), true), HalfInt(1))});
    CHECK(sys.total_components() == 18);
    CHECK(sys.field_offset(1) == 4);
    CHECK(sys.field_offset(2) == 10);
}

TEST_CASE("component index round-trips through the flat index") {
    FSystem sys = assemble_general_field(
        {make_field("a", RepBlock(HalfInt(0), HalfInt(1), true, true), HalfInt(1)),
         make_field("b", RepBlock(HalfInt(1), HalfInt(1)), HalfInt(0))});
    CHECK(sys.total_components() == 12);
    for (std::size_t flat = 0; flat < sys.total_components(); ++flat) {
        ComponentIndex c = sys.component_at(flat);
        CHECK(sys.flat_index(c) == flat);
    }
    // slots: charge-outer, parity-inner over the 2-dim base
    ComponentIndex c = sys.component_at(5);
    CHECK(c.field == 0);
    CHECK(c.slot == 2);
    CHECK(c.row == 1);
    CHECK_THROWS_AS(sys.component_at(12), std::out_of_range);
}

TEST_CASE("system transforms are block diagonal in field order") {
    FSystem sys = scalar_vector_system();
    CMatrix p = system_transform(sys, DiscreteKind::P, Phase::minus_one());
    CHECK(p.rows() == 5);
    CHECK(p == Scalar(-1) * CMatrix::identity(5));

    // structural check: blocks equal the per-field matrices
    CMatrix t = system_transform(sys, DiscreteKind::T);
    CHECK(t.block(0, 0, 1, 1) ==
          field_transform(sys.field(0), DiscreteKind::T));
    CHECK(t.block(1, 1, 4, 4) ==
          field_transform(sys.field(1), DiscreteKind::T));
    CHECK(t.block(0, 1, 1, 4).is_zero());

    CMatrix p2 = system_transform(sys, DiscreteKind::P, Phase::i());
    CHECK(p2 * p2 == Scalar(-1) * CMatrix::identity(5));
}

TEST_CASE("per-field transform overrides take precedence") {
    FieldSpec f = make_field("phi", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0));
    f.transform_override_t = Scalar(-1) * CMatrix::identity(1);
    FSystem sys = assemble_general_field({f});
    CHECK(system_transform(sys, DiscreteKind::T) ==
          Scalar(-1) * CMatrix::identity(1));
    // phases still multiply overrides
    FieldSpec g = make_field("w", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0));
    g.transform_override_p = Scalar(-1) * CMatrix::identity(1);
    FSystem sys2 = assemble_general_field({g});
    CHECK(system_transform(sys2, DiscreteKind::P, Phase::minus_one()) ==
          CMatrix::identity(1));

    FieldSpec bad = make_field("b", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0));
    bad.transform_override_p = CMatrix::identity(2);
    CHECK_THROWS_AS(validate_field_spec(bad), std::invalid_argument);
}
