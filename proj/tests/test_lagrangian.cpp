#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "test_helpers.hpp"

using namespace cptk;
using namespace cptk::testing;

namespace {

// Five scalar fields with hand-assigned gradings: enough to exercise the
// graded reordering in isolation.
struct GradedFixture {
    FSystem sys;
    StatisticsAssignment stats;
};

GradedFixture graded_fixture(const std::vector<Statistics>& gradings) {
    std::vector<FieldSpec> fields;
    for (std::size_t i = 0; i < gradings.size(); ++i)
        fields.push_back(basic_field("g" + std::to_string(i),
                                     RepBlock(HalfInt(0), HalfInt(0)),
                                     HalfInt(0)));
    GradedFixture fx{assemble_general_field(std::move(fields)), {}};
    fx.stats.field_statistics = gradings;
    fx.stats.effective = gradings;
    fx.stats.evidence.resize(gradings.size());
    return fx;
}

OperatorFactor slot(std::size_t field) {
    return OperatorFactor{field, false, PointLabel::X, Statistics::Unknown};
}

// Independent sign oracle: repeatedly swap the first adjacent out-of-order
// pair (never a tied pair), counting a sign for each Fermi-Fermi swap.
int adjacent_swap_sign(std::vector<OperatorFactor> fs,
                       const std::vector<Statistics>& grading_of_field) {
    int sign = 1;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
            if (factor_key_less(fs[i + 1], fs[i])) {
                bool ff =
                    grading_of_field[fs[i].field] == Statistics::Fermi &&
                    grading_of_field[fs[i + 1].field] == Statistics::Fermi;
                if (ff) sign = -sign;
                std::swap(fs[i], fs[i + 1]);
                changed = true;
                break;
            }
        }
    }
    return sign;
}

// Second independent route: parity of the permutation induced on the Fermi
// subsequence, by cycle decomposition.
int fermi_cycle_sign(const std::vector<OperatorFactor>& permuted,
                     const std::vector<Statistics>& grading_of_field) {
    std::vector<std::size_t> fermi_fields;
    for (const auto& f : permuted)
        if (grading_of_field[f.field] == Statistics::Fermi)
            fermi_fields.push_back(f.field);
    std::vector<std::size_t> sorted = fermi_fields;
    std::sort(sorted.begin(), sorted.end());
    // map each element to its target position (distinct keys assumed)
    std::vector<std::size_t> perm;
    for (auto v : fermi_fields)
        perm.push_back(std::find(sorted.begin(), sorted.end(), v) -
                       sorted.begin());
    std::vector<bool> seen(perm.size(), false);
    int sign = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0, j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = perm[j];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

} // namespace

TEST_CASE("graded canonicalization basics") {
    GradedFixture fx = graded_fixture(
        {Statistics::Bose, Statistics::Fermi, Statistics::Fermi});

    SUBCASE("already sorted terms are unchanged") {
        DynTerm t = DynTerm::make(QComplex(3), {slot(0), slot(1), slot(2)},
                                  {1, 1});
        DynTerm c = graded_canonicalize(t, fx.sys, fx.stats);
        CHECK(c.coeff == QComplex(3));
        CHECK(c.factors.size() == 3);
        CHECK(c.factors[0].field == 0);
        CHECK(c.k_powers == std::vector<int>{1, 1});
    }
    SUBCASE("one fermi swap negates the coefficient") {
        DynTerm t = DynTerm::make(QComplex(1), {slot(2), slot(1)}, {0});
        DynTerm c = graded_canonicalize(t, fx.sys, fx.stats);
        CHECK(c.coeff == QComplex(-1));
        CHECK(c.factors[0].field == 1);
    }
    SUBCASE("bose swaps are free") {
        DynTerm t = DynTerm::make(QComplex(1), {slot(1), slot(0)}, {0});
        DynTerm c = graded_canonicalize(t, fx.sys, fx.stats);
        CHECK(c.coeff == QComplex(1));
    }
    SUBCASE("idempotent") {
        DynTerm t = DynTerm::make(QComplex(5), {slot(2), slot(0), slot(1)},
                                  {2, 0});
        DynTerm once = graded_canonicalize(t, fx.sys, fx.stats);
        DynTerm twice = graded_canonicalize(once, fx.sys, fx.stats);
        CHECK(once.coeff == twice.coeff);
        CHECK(once.factors.size() == twice.factors.size());
        for (std::size_t i = 0; i < once.factors.size(); ++i)
            CHECK(once.factors[i] == twice.factors[i]);
    }
    SUBCASE("equal fermi slots carry no sign") {
        DynTerm t = DynTerm::make(QComplex(7), {slot(1), slot(1)}, {2});
        DynTerm c = graded_canonicalize(t, fx.sys, fx.stats);
        CHECK(c.coeff == QComplex(7));
    }
}

TEST_CASE("canonicalization sign matches two independent oracles, exhaustively") {
    // all grading patterns over 5 distinct slots, all 120 permutations
    for (int mask = 0; mask < 32; ++mask) {
        std::vector<Statistics> gradings;
        for (int b = 0; b < 5; ++b)
            gradings.push_back((mask >> b) & 1 ? Statistics::Fermi
                                               : Statistics::Bose);
        GradedFixture fx = graded_fixture(gradings);

        std::vector<std::size_t> idx(5);
        std::iota(idx.begin(), idx.end(), 0);
        do {
            std::vector<OperatorFactor> factors;
            for (auto i : idx) factors.push_back(slot(i));
            DynTerm t = DynTerm::make(QComplex(1), factors,
                                      std::vector<int>{2, 0, 0, 0});
            DynTerm c = graded_canonicalize(t, fx.sys, fx.stats);
            // canonical order is always the identity arrangement
            for (std::size_t i = 0; i < 5; ++i) CHECK(c.factors[i].field == i);
            int got = c.coeff == QComplex(1) ? 1 : -1;
            CHECK(got == adjacent_swap_sign(factors, gradings));
            CHECK(got == fermi_cycle_sign(factors, gradings));
        } while (std::next_permutation(idx.begin(), idx.end()));
    }
}

TEST_CASE("term construction enforces the even power rule") {
    CHECK_THROWS_AS(DynTerm::make(QComplex(1), {slot(0), slot(0)}, {1}),
                    std::invalid_argument);
    CHECK_NOTHROW(DynTerm::make(QComplex(1), {slot(0), slot(0)}, {2}));
    CHECK_NOTHROW(
        DynTerm::make(QComplex(1), {slot(0), slot(0), slot(0)}, {1, 1}));
    CHECK_THROWS_AS(DynTerm::make(QComplex(1), {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(DynTerm::make(QComplex(1), {slot(0)}, {2}),
                    std::invalid_argument);
    // the unchecked factory admits the odd form for the rejection paths
    DynTerm odd = DynTerm::make_unchecked(QComplex(1), {slot(0), slot(0)}, {1});
    CHECK(odd.power_sum() == 1);
}

TEST_CASE("hermiticity") {
    Instantiated inst = sec6();
    StatisticsAssignment stats = infer_statistics(inst.system, inst.u).assignment;

    SUBCASE("the bundled lagrangian is hermitian") {
        CHECK(check_hermiticity(inst.lagrangian, inst.system, stats).passed());
    }
    SUBCASE("imaginary coefficient fails") {
        Lagrangian lag = inst.lagrangian;
        lag.terms.push_back(DynTerm::make(QComplex(Rat(0), Rat(1)),
                                          {slot(0), slot(0)}, {2}));
        Verdict v = check_hermiticity(lag, inst.system, stats);
        CHECK(v.failed());
        bool mentions = false;
        for (const auto& w : v.witnesses)
            mentions |= w.expected.find("real coefficient") != std::string::npos;
        CHECK(mentions);
    }
    SUBCASE("a non-antihermitian kinematic pencil fails") {
        Lagrangian lag = inst.lagrangian;
        lag.kinematic.matrices.mu[1].at(0, 0) = Scalar(1);
        CHECK(check_hermiticity(lag, inst.system, stats).failed());
    }
    SUBCASE("a lone cross-field fermi bilinear is not self-adjoint") {
        // reversing psi1 U^2 psi2 costs one graded crossing; a single real
        // term of this shape cannot be hermitian in the polynomial model
        Lagrangian lag;
        lag.terms.push_back(DynTerm::make(
            QComplex(1), {slot(2), slot(3)}, std::vector<int>{2}));
        CHECK(check_hermiticity(lag, inst.system, stats).failed());
    }
}

TEST_CASE("gauge invariance of the first kind") {
    // charged pair in the charge eigenbasis plus a neutral boson
    std::vector<FieldSpec> fields = {
        basic_field("a", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0), Rat(0)),
        basic_field("wp", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0), Rat(1)),
        basic_field("wm", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0), Rat(-1))};
    FSystem sys = assemble_general_field(fields);

    SUBCASE("a term with one charged factor fails") {
        Lagrangian lag;
        lag.terms.push_back(DynTerm::make(QComplex(1), {slot(1)}, {}));
        CHECK(check_gauge(lag, sys).failed());
    }
    SUBCASE("opposite weights cancel") {
        Lagrangian lag;
        lag.terms.push_back(DynTerm::make(
            QComplex(1), {slot(0), slot(1), slot(2)}, std::vector<int>{2, 2}));
        CHECK(check_gauge(lag, sys).passed());
    }
    SUBCASE("a conjugated factor contributes the opposite weight") {
        Lagrangian lag;
        OperatorFactor conj_wp = slot(1);
        conj_wp.conjugated = true;
        lag.terms.push_back(
            DynTerm::make(QComplex(1), {conj_wp, slot(1)}, {0}));
        CHECK(check_gauge(lag, sys).passed());
    }
    SUBCASE("neutral-only lagrangians pass vacuously") {
        Instantiated inst = sec6();
        CHECK(check_gauge(inst.lagrangian, inst.system).passed());
    }
    SUBCASE("kinematic couplings must pair opposite charges") {
        UMatrixSet u;
        for (auto& m : u.mu) m = CMatrix::zero(3, 3);
        u.mu[0].at(1, 2) = Scalar(1);
        u.mu[0].at(2, 1) = Scalar(-1);
        Lagrangian ok = build_kinematic(sys, u);
        CHECK(check_gauge(ok, sys).passed());

        UMatrixSet bad_u = u;
        bad_u.mu[0].at(0, 1) = Scalar(1);
        bad_u.mu[0].at(1, 0) = Scalar(-1);
        Lagrangian bad = build_kinematic(sys, bad_u);
        CHECK(check_gauge(bad, sys).failed());
    }
}

TEST_CASE("discrete transformations of the lagrangian") {
    Instantiated inst = sec6();
    const FSystem& sys = inst.system;
    StatisticsAssignment stats = infer_statistics(sys, inst.u).assignment;
    const Lagrangian& lag = inst.lagrangian;

    SUBCASE("space inversion leaves the kinematic pencil invariant") {
        Lagrangian img = transform_lagrangian(lag, LagrangianTransform::P, sys,
                                              inst.u, stats);
        CHECK(img.kinematic.matrices.mu == lag.kinematic.matrices.mu);
        CHECK(img.kinematic.point == PointLabel::IsX);
        CHECK(!img.kinematic.conjugated);
    }
    SUBCASE("charge conjugation is the identity on the pencil and terms") {
        Lagrangian img = transform_lagrangian(lag, LagrangianTransform::C, sys,
                                              inst.u, stats);
        CHECK(img.kinematic.matrices.mu == lag.kinematic.matrices.mu);
        CHECK(img.kinematic.point == PointLabel::X);
        CHECK(lagrangian_equal(img, lag, sys, stats));
    }
    SUBCASE("time reversal gives the conjugate image at the reversed point") {
        Lagrangian img = transform_lagrangian(lag, LagrangianTransform::T, sys,
                                              inst.u, stats);
        CHECK(img.kinematic.point == PointLabel::ItX);
        CHECK(img.kinematic.conjugated);
        for (int m = 0; m < 4; ++m)
            CHECK(img.kinematic.matrices.mu[m] ==
                  lag.kinematic.matrices.mu[m].conj());
    }
    SUBCASE("space inversion applied twice is the identity") {
        Lagrangian img = transform_lagrangian(
            transform_lagrangian(lag, LagrangianTransform::P, sys, inst.u, stats),
            LagrangianTransform::P, sys, inst.u, stats);
        CHECK(lagrangian_equal(img, lag, sys, stats));
    }
    SUBCASE("odd chain powers have no resolved transform under P or T alone") {
        Lagrangian odd;
        odd.terms.push_back(DynTerm::make(
            QComplex(1), {slot(0), slot(0), slot(0)}, std::vector<int>{1, 1}));
        CHECK_THROWS_AS(transform_lagrangian(odd, LagrangianTransform::P, sys,
                                             inst.u, stats),
                        std::domain_error);
        CHECK_THROWS_AS(transform_lagrangian(odd, LagrangianTransform::T, sys,
                                             inst.u, stats),
                        std::domain_error);
        // the combined antiunitary map handles them fine
        CHECK_NOTHROW(transform_lagrangian(odd, LagrangianTransform::CPT, sys,
                                           inst.u, stats));
    }
}

TEST_CASE("combined antiunitary invariance") {
    Instantiated inst = sec6();
    const FSystem& sys = inst.system;
    StatisticsAssignment stats = infer_statistics(sys, inst.u).assignment;

    SUBCASE("the full bundled lagrangian passes") {
        CHECK(cpt_verdict(inst.lagrangian, sys, inst.u, stats).passed());
    }
    SUBCASE("the kinematic part alone passes") {
        Lagrangian kin = inst.lagrangian;
        kin.terms.clear();
        CHECK(cpt_verdict(kin, sys, inst.u, stats).passed());
    }
    SUBCASE("a forced odd-power term flips the verdict with a parity witness") {
        Lagrangian lag = inst.lagrangian;
        lag.terms.push_back(DynTerm::make_unchecked(
            QComplex(1), {slot(0), slot(0)}, std::vector<int>{1}));
        Verdict v = cpt_verdict(lag, sys, inst.u, stats);
        CHECK(v.failed());
        bool parity_witness = false;
        for (const auto& w : v.witnesses)
            parity_witness |= w.expected.find("even sum") != std::string::npos &&
                              w.found.find("sign -1") != std::string::npos;
        CHECK(parity_witness);
    }
    SUBCASE("applying the map twice returns the original") {
        auto once = [&](const Lagrangian& l) {
            return conjugate_lagrangian(transform_lagrangian(
                l, LagrangianTransform::CPT, sys, inst.u, stats));
        };
        Lagrangian tw = once(once(inst.lagrangian));
        CHECK(lagrangian_equal(tw, inst.lagrangian, sys, stats));
    }
}

TEST_CASE("combined antiunitary invariance holds for random valid systems") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> nslots(1, 4);
    std::uniform_int_distribution<int> power(0, 3);
    std::uniform_int_distribution<int> coeff(-9, 9);
    for (int trial = 0; trial < 60; ++trial) {
        RandomSystem rs = random_valid_system(rng, 6);
        StatisticsAssignment stats =
            infer_statistics(rs.system, rs.u).assignment;
        Lagrangian lag = build_kinematic(rs.system, rs.u);
        std::uniform_int_distribution<std::size_t> field(
            0, rs.system.field_count() - 1);
        for (int t = 0; t < 5; ++t) {
            int s = nslots(rng);
            std::vector<OperatorFactor> factors;
            for (int i = 0; i < s; ++i) factors.push_back(slot(field(rng)));
            std::vector<int> ks;
            for (int i = 0; i + 1 < s; ++i) ks.push_back(power(rng));
            int sum = 0;
            for (int k : ks) sum += k;
            if (sum % 2 != 0) {
                if (ks.empty())
                    continue;
                else if (ks.back() > 0)
                    --ks.back();
                else
                    ++ks.back();
            }
            int c = coeff(rng);
            if (c == 0) c = 1;
            lag.terms.push_back(DynTerm::make(QComplex(c), factors, ks));
        }
        CAPTURE(trial);
        CHECK(cpt_verdict(lag, rs.system, rs.u, stats).passed());
    }
}

TEST_CASE("lagrangian equality is canonical-multiset equality") {
    Instantiated inst = sec6();
    StatisticsAssignment stats = infer_statistics(inst.system, inst.u).assignment;

    Lagrangian a = build_kinematic(inst.system, inst.u);
    a.terms.push_back(DynTerm::make(QComplex(1), {slot(2), slot(3)}, {2}));
    Lagrangian b = build_kinematic(inst.system, inst.u);
    // the same term written with swapped fermi slots and a compensating sign
    b.terms.push_back(DynTerm::make(QComplex(-1), {slot(3), slot(2)}, {2}));
    CHECK(lagrangian_equal(a, b, inst.system, stats));

    b.terms.push_back(DynTerm::make(QComplex(1), {slot(0), slot(0)}, {2}));
    CHECK(!lagrangian_equal(a, b, inst.system, stats));

    // terms cancelling to zero equal the empty term list
    Lagrangian c = build_kinematic(inst.system, inst.u);
    c.terms.push_back(DynTerm::make(QComplex(2), {slot(0), slot(1)}, {2}));
    c.terms.push_back(DynTerm::make(QComplex(-2), {slot(0), slot(1)}, {2}));
    Lagrangian d = build_kinematic(inst.system, inst.u);
    CHECK(lagrangian_equal(c, d, inst.system, stats));
}

TEST_CASE("zero couplings give a zero kinematic pencil") {
    FSystem sys = assemble_general_field(
        {basic_field("phi", RepBlock(HalfInt(0), HalfInt(0)), HalfInt(0))});
    UMatrixSet u;
    for (auto& m : u.mu) m = CMatrix::zero(1, 1);
    Lagrangian lag = build_kinematic(sys, u);
    CHECK(lag.kinematic.present);
    for (const auto& m : lag.kinematic.matrices.mu) CHECK(m.is_zero());
}
