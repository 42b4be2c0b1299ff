#include <doctest.h>

#include <set>

#include "cptk/lorentz.hpp"

using namespace cptk;

namespace {

const HalfInt kZero{0};
const HalfInt kHalf{1};
const HalfInt kOne{2};
const HalfInt kThreeHalves{3};
const HalfInt kTwo{4};

CMatrix casimir(const std::array<CMatrix, 3>& j) {
    return j[0] * j[0] + j[1] * j[1] + j[2] * j[2];
}

} // namespace

TEST_CASE("spin ladder matrices") {
    SUBCASE("j = 0 gives three 1x1 zeros") {
        auto j = su2_generators(kZero);
        for (const auto& m : j) {
            CHECK(m.rows() == 1);
            CHECK(m.is_zero());
        }
    }
    SUBCASE("j = 1/2: commutator closes exactly") {
        auto j = su2_generators(kHalf);
        CHECK(j[2] == CMatrix::diagonal({Scalar(Rat(1, 2)), Scalar(Rat(-1, 2))}));
        CHECK(j[0] * j[1] - j[1] * j[0] == Scalar::i_unit() * j[2]);
        CHECK(casimir(j) == Scalar(Rat(3, 4)) * CMatrix::identity(2));
    }
    SUBCASE("j = 1: diagonal and casimir") {
        auto j = su2_generators(kOne);
        CHECK(j[2] == CMatrix::diagonal({Scalar(1), Scalar(0), Scalar(-1)}));
        CHECK(casimir(j) == Scalar(2) * CMatrix::identity(3));
    }
    SUBCASE("j = 3/2 carries radical entries and still closes") {
        auto j = su2_generators(kThreeHalves);
        CHECK(j[0].at(0, 1) == Scalar(Rat(1, 2)) * Scalar::sqrt_of(Rat(3)));
        CHECK(j[0] * j[1] - j[1] * j[0] == Scalar::i_unit() * j[2]);
        CHECK(casimir(j) == Scalar(Rat(15, 4)) * CMatrix::identity(4));
    }
}

TEST_CASE("representation generators satisfy the algebra exactly") {
    SUBCASE("(0,0): all six generators vanish") {
        auto g = ab_generators(kZero, kZero);
        for (int i = 0; i < 3; ++i) {
            CHECK(g.J[i].is_zero());
            CHECK(g.K[i].is_zero());
        }
        CHECK(verify_lorentz_algebra(g).passed());
    }
    SUBCASE("(1/2,0) is self-dual: K = -iJ") {
        auto g = ab_generators(kHalf, kZero);
        for (int i = 0; i < 3; ++i)
            CHECK(g.K[i] == Scalar(QComplex(Rat(0), Rat(-1))) * g.J[i]);
        CHECK(verify_lorentz_algebra(g).passed());
    }
    SUBCASE("(1/2,1/2): rotation spectrum 1,0,0,-1") {
        auto g = ab_generators(kHalf, kHalf);
        CHECK(g.J[2] ==
              CMatrix::diagonal({Scalar(1), Scalar(0), Scalar(0), Scalar(-1)}));
        CHECK(verify_lorentz_algebra(g).passed());
    }
    SUBCASE("all blocks with 2A,2B <= 3") {
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; b <= 3; ++b)
                CHECK(verify_lorentz_algebra(ab_generators(HalfInt{a}, HalfInt{b}))
                          .passed());
    }
    SUBCASE("a corrupted boost generator fails with the relation named") {
        auto g = ab_generators(kOne, kHalf);
        g.K[0].at(0, 0) += Scalar(1);
        Verdict v = verify_lorentz_algebra(g);
        CHECK(v.failed());
        bool names_jk = false, names_kk = false;
        for (const auto& w : v.witnesses) {
            names_jk |= w.location.find("[J,K]") != std::string::npos;
            names_kk |= w.location.find("[K,K]") != std::string::npos;
        }
        CHECK((names_jk || names_kk));
    }
    SUBCASE("dimension mismatch throws") {
        auto g = ab_generators(kHalf, kZero);
        g.K[1] = CMatrix::identity(3);
        CHECK_THROWS_AS(verify_lorentz_algebra(g), std::invalid_argument);
    }
}

TEST_CASE("boost-diagonal spectrum reproduces the phase dichotomy") {
    // J_z(A) - J_z(B) is diagonal with eigenvalues a-b; e^{2 pi i (a-b)} is
    // constant over the block and fixed by the parity of A+B.
    for (int ta = 0; ta <= 3; ++ta)
        for (int tb = 0; tb <= 3; ++tb) {
            HalfInt A{ta}, B{tb};
            auto a = su2_generators(A);
            auto b = su2_generators(B);
            CMatrix j34 = kron(a[2], CMatrix::identity(B.multiplicity())) -
                          kron(CMatrix::identity(A.multiplicity()), b[2]);
            // collect diagonal eigenvalues a-b
            std::multiset<Rat> expected, found;
            for (int ma = 0; ma < A.multiplicity(); ++ma)
                for (int mb = 0; mb < B.multiplicity(); ++mb)
                    expected.insert(Rat(A.twice - 2 * ma, 2) -
                                    Rat(B.twice - 2 * mb, 2));
            for (std::size_t k = 0; k < j34.rows(); ++k) {
                const Scalar& d = j34.at(k, k);
                CHECK(d.is_rational_complex());
                found.insert(d.rational_part().re);
            }
            CHECK(expected == found);
            // phase constancy: all eigenvalues differ by integers
            bool half = (A + B).is_half_integer();
            for (const Rat& ev : found) {
                Rat twice = ev * 2;
                CHECK(is_integer(twice));
                bool ev_half = numerator(twice) % 2 != 0;
                CHECK(ev_half == half);
            }
        }
}

TEST_CASE("pi rotation matrix") {
    CHECK(pi_rotation_matrix(kZero) == CMatrix::identity(1));
    CMatrix y_half = pi_rotation_matrix(kHalf);
    CHECK(y_half == CMatrix::from_rows({{Scalar(0), Scalar(-1)},
                                        {Scalar(1), Scalar(0)}}));
    for (HalfInt j : {kHalf, kOne, kThreeHalves}) {
        CMatrix y = pi_rotation_matrix(j);
        Scalar sign = Scalar(j.is_integer() ? 1 : -1);
        CHECK(y * y == sign * CMatrix::identity(j.multiplicity()));
    }
}

TEST_CASE("rep dimension follows the doubling flags") {
    CHECK(rep_dimension(RepBlock(kZero, kZero)) == 1);
    CHECK(rep_dimension(RepBlock(kZero, kHalf, true, true)) == 8);
    CHECK(rep_dimension(RepBlock(kOne, kOne)) == 9);
    // parity doubling is forced off when A == B
    RepBlock same(kHalf, kHalf, true, false);
    CHECK(!same.parity_doubled);
    CHECK(rep_dimension(same) == 4);
    CHECK(rep_dimension(RepBlock(kZero, kHalf, true)) == 4);
}

TEST_CASE("discrete transformation matrices") {
    SUBCASE("space inversion swaps the doubled halves") {
        RepBlock spinor(kZero, kHalf, true);
        CMatrix p = discrete_matrix(DiscreteKind::P, spinor);
        CMatrix expected(4, 4);
        expected.set_block(0, 2, CMatrix::identity(2));
        expected.set_block(2, 0, CMatrix::identity(2));
        CHECK(p == expected);
        CHECK(p * p == CMatrix::identity(4));
        // with a phase: square picks up the phase squared
        CMatrix pi = discrete_matrix(DiscreteKind::P, spinor, Phase::i());
        CHECK(pi * pi == Scalar(-1) * CMatrix::identity(4));
    }
    SUBCASE("space inversion on A == B is the phase itself") {
        CMatrix p = discrete_matrix(DiscreteKind::P, RepBlock(kHalf, kHalf),
                                    Phase::minus_one());
        CHECK(p == Scalar(-1) * CMatrix::identity(4));
        CHECK_THROWS_AS(
            discrete_matrix(DiscreteKind::P, RepBlock(kZero, kHalf)),
            std::invalid_argument);
    }
    SUBCASE("charge conjugation splits the charge pair") {
        RepBlock pair(kZero, kZero, false, true);
        CHECK(discrete_matrix(DiscreteKind::C, pair) ==
              CMatrix::diagonal({Scalar(1), Scalar(-1)}));
        CMatrix c = discrete_matrix(DiscreteKind::C, pair);
        CHECK(c * c == CMatrix::identity(2));
        // undoubled: identity-scaled phase
        CHECK(discrete_matrix(DiscreteKind::C, RepBlock(kZero, kZero),
                              Phase::i()) ==
              Scalar::i_unit() * CMatrix::identity(1));
    }
    SUBCASE("time reversal on a scalar is real") {
        CHECK(discrete_matrix(DiscreteKind::T, RepBlock(kZero, kZero)) ==
              CMatrix::identity(1));
    }
}

TEST_CASE("time-reversal reality dichotomy") {
    CHECK(reality_class(kOne) == RealityClass::Real);
    CHECK(reality_class(kThreeHalves) == RealityClass::Imaginary);

    struct Case {
        RepBlock block;
        HalfInt spin;
    };
    const Case cases[] = {
        {RepBlock(kZero, kZero), kZero},
        {RepBlock(kZero, kHalf, true), kHalf},
        {RepBlock(kHalf, kHalf), kOne},
        {RepBlock(kZero, kThreeHalves, true), kThreeHalves},
        {RepBlock(kOne, kOne), kTwo},
    };
    for (const auto& c : cases) {
        CMatrix d = discrete_matrix(DiscreteKind::T, c.block);
        CHECK(verify_t_reality(d, c.spin).passed());
        bool real = d.is_real();
        CHECK(real == (reality_class(c.spin) == RealityClass::Real));
    }

    // a real matrix claimed for half-integer spin contradicts the law
    CHECK(verify_t_reality(CMatrix::identity(2), kHalf).failed());
}
