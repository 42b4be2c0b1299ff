#include <doctest.h>

#include <random>

#include "cptk/cmatrix.hpp"

using namespace cptk;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            m.at(r, c) = Scalar(QComplex(Rat(num(rng), den(rng)),
                                         Rat(num(rng), den(rng))));
    return m;
}

} // namespace

TEST_CASE("kron identity cases") {
    CMatrix i2 = CMatrix::identity(2);
    CHECK(kron(i2, i2) == CMatrix::identity(4));
    CMatrix d = CMatrix::diagonal({Scalar(1), Scalar(-1)});
    CHECK(kron(d, i2) ==
          CMatrix::diagonal({Scalar(1), Scalar(1), Scalar(-1), Scalar(-1)}));
}

TEST_CASE("kron mixed-product identity on random matrices") {
    std::mt19937_64 rng(1234);
    for (int i = 0; i < 25; ++i) {
        CMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2);
        CMatrix c = random_matrix(rng, 2), d = random_matrix(rng, 2);
        CHECK(kron(a, b) * kron(c, d) == kron(a * c, b * d));
    }
}

TEST_CASE("direct_sum") {
    CMatrix one(1, 1);
    one.at(0, 0) = Scalar(2);
    CHECK(direct_sum({one}) == one);
    CHECK(direct_sum({CMatrix::identity(1), CMatrix::identity(2)}) ==
          CMatrix::identity(3));
    CHECK_THROWS_AS(direct_sum(std::span<const CMatrix>{}),
                    std::invalid_argument);

    std::mt19937_64 rng(5);
    std::vector<CMatrix> blocks{random_matrix(rng, 2), random_matrix(rng, 3),
                                random_matrix(rng, 1)};
    Scalar summed;
    for (const auto& b : blocks) summed += b.trace();
    CHECK(direct_sum(std::span<const CMatrix>(blocks)).trace() == summed);
}

TEST_CASE("kron and direct_sum associate under the induced ordering") {
    std::mt19937_64 rng(77);
    CMatrix a = random_matrix(rng, 2), b = random_matrix(rng, 2),
            c = random_matrix(rng, 2);
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
    CHECK(direct_sum({direct_sum({a, b}), c}) == direct_sum({a, direct_sum({b, c})}));
}

TEST_CASE("dagger is an involution and anti-multiplicative") {
    CHECK(CMatrix::identity(3).dagger() == CMatrix::identity(3));
    Scalar i = Scalar::i_unit();
    CMatrix pauli2 = CMatrix::from_rows({{Scalar(0), i}, {-i, Scalar(0)}});
    CHECK(pauli2.dagger() == pauli2);

    std::mt19937_64 rng(31);
    for (int t = 0; t < 20; ++t) {
        CMatrix m = random_matrix(rng, 3), n = random_matrix(rng, 3);
        CHECK(m.dagger().dagger() == m);
        CHECK((m * n).dagger() == n.dagger() * m.dagger());
    }
}

TEST_CASE("exact inverse via gauss-jordan") {
    std::mt19937_64 rng(8);
    int inverted = 0;
    while (inverted < 15) {
        CMatrix m = random_matrix(rng, 4);
        try {
            CMatrix inv = m.inverse();
            CHECK(m * inv == CMatrix::identity(4));
            CHECK(inv * m == CMatrix::identity(4));
            ++inverted;
        } catch (const std::domain_error&) {
            // singular draw; try another
        }
    }
    CHECK_THROWS_AS(CMatrix::zero(2, 2).inverse(), std::domain_error);
}

TEST_CASE("inverse handles radical entries") {
    CMatrix m(2, 2);
    m.at(0, 0) = Scalar::sqrt_of(Rat(2));
    m.at(0, 1) = Scalar(1);
    m.at(1, 0) = Scalar(1);
    m.at(1, 1) = Scalar::sqrt_of(Rat(2));
    CHECK(m * m.inverse() == CMatrix::identity(2));
}

TEST_CASE("block access") {
    CMatrix m = CMatrix::zero(3, 3);
    m.set_block(1, 1, CMatrix::identity(2));
    CHECK(m.block(1, 1, 2, 2) == CMatrix::identity(2));
    CHECK(m.at(0, 0).is_zero());
    CHECK_THROWS_AS(m.set_block(2, 2, CMatrix::identity(2)), std::out_of_range);
}
