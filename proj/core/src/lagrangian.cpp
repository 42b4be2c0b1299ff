#include "cptk/lagrangian.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace cptk {

PointLabel space_invert(PointLabel p) {
    switch (p) {
        case PointLabel::X: return PointLabel::IsX;
        case PointLabel::IsX: return PointLabel::X;
        case PointLabel::ItX: return PointLabel::MinusX;
        case PointLabel::MinusX: return PointLabel::ItX;
        case PointLabel::XPrime: return PointLabel::XPrime;
    }
    return p;
}

PointLabel time_invert(PointLabel p) {
    switch (p) {
        case PointLabel::X: return PointLabel::ItX;
        case PointLabel::ItX: return PointLabel::X;
        case PointLabel::IsX: return PointLabel::MinusX;
        case PointLabel::MinusX: return PointLabel::IsX;
        case PointLabel::XPrime: return PointLabel::XPrime;
    }
    return p;
}

PointLabel negate_point(PointLabel p) { return space_invert(time_invert(p)); }

std::string to_string(PointLabel p) {
    switch (p) {
        case PointLabel::X: return "x";
        case PointLabel::XPrime: return "x'";
        case PointLabel::IsX: return "Is.x";
        case PointLabel::ItX: return "It.x";
        case PointLabel::MinusX: return "-x";
    }
    return "?";
}

bool factor_key_less(const OperatorFactor& a, const OperatorFactor& b) {
    return std::tie(a.field, a.point, a.conjugated) <
           std::tie(b.field, b.point, b.conjugated);
}

int DynTerm::power_sum() const {
    int s = 0;
    for (int k : k_powers) s += k;
    return s;
}

DynTerm DynTerm::make_unchecked(QComplex coeff,
                                std::vector<OperatorFactor> factors,
                                std::vector<int> k_powers) {
    if (factors.empty())
        throw std::invalid_argument("term needs at least one field slot");
    if (k_powers.size() + 1 != factors.size())
        throw std::invalid_argument("term needs one coupling power between "
                                    "each pair of adjacent slots");
    for (int k : k_powers)
        if (k < 0) throw std::invalid_argument("coupling powers must be >= 0");
    DynTerm t;
    t.coeff = std::move(coeff);
    t.factors = std::move(factors);
    t.k_powers = std::move(k_powers);
    return t;
}

DynTerm DynTerm::make(QComplex coeff, std::vector<OperatorFactor> factors,
                      std::vector<int> k_powers) {
    DynTerm t = make_unchecked(std::move(coeff), std::move(factors),
                               std::move(k_powers));
    if (t.power_sum() % 2 != 0)
        throw std::invalid_argument(
            "sum of coupling powers must be even, got " +
            std::to_string(t.power_sum()));
    return t;
}

bool operator==(const KinematicPart& a, const KinematicPart& b) {
    if (a.present != b.present) return false;
    if (!a.present) return true;
    return a.point == b.point && a.conjugated == b.conjugated &&
           a.matrices.mu == b.matrices.mu;
}

Lagrangian build_kinematic(const FSystem& sys, const UMatrixSet& u) {
    for (const auto& m : u.mu)
        if (m.rows() != sys.total_components() || !m.is_square())
            throw std::invalid_argument(
                "build_kinematic: coupling dimension does not match the system");
    Lagrangian lag;
    lag.kinematic.present = true;
    lag.kinematic.matrices = u;
    return lag;
}

namespace {

Statistics grading_of(const FSystem& sys, const StatisticsAssignment& stats,
                      std::size_t field) {
    if (!stats.effective.empty()) return stats.effective.at(field);
    return stats.of(field);
}

// Stable sort with the number of strict-key crossings of Fermi slot pairs.
// Equal keys never cross, so identical Fermi slots carry no sign ambiguity.
std::pair<std::vector<OperatorFactor>, int>
sorted_with_fermi_parity(std::vector<OperatorFactor> fs) {
    int crossings = 0;
    for (std::size_t i = 1; i < fs.size(); ++i) {
        for (std::size_t j = i; j > 0 && factor_key_less(fs[j], fs[j - 1]); --j) {
            if (fs[j].grading == Statistics::Fermi &&
                fs[j - 1].grading == Statistics::Fermi)
                ++crossings;
            std::swap(fs[j], fs[j - 1]);
        }
    }
    return {std::move(fs), crossings};
}

} // namespace

DynTerm graded_canonicalize(const DynTerm& term, const FSystem& sys,
                            const StatisticsAssignment& stats) {
    DynTerm out = term;
    for (auto& f : out.factors) {
        if (f.field >= sys.field_count())
            throw std::out_of_range("term references an unknown field");
        f.grading = grading_of(sys, stats, f.field);
    }
    auto [sorted, crossings] = sorted_with_fermi_parity(out.factors);
    out.factors = std::move(sorted);
    if (crossings % 2 != 0) out.coeff = -out.coeff;
    return out;
}

namespace {

// Canonical identity of a term: slot keys plus positional powers.
using TermKey = std::pair<std::vector<std::tuple<std::size_t, PointLabel, bool>>,
                          std::vector<int>>;

TermKey key_of(const DynTerm& t) {
    TermKey k;
    k.first.reserve(t.factors.size());
    for (const auto& f : t.factors)
        k.first.emplace_back(f.field, f.point, f.conjugated);
    k.second = t.k_powers;
    return k;
}

std::map<TermKey, DynTerm> canonical_terms(const Lagrangian& lag,
                                           const FSystem& sys,
                                           const StatisticsAssignment& stats) {
    std::map<TermKey, DynTerm> out;
    for (const auto& t : lag.terms) {
        if (t.chain_flip_pending)
            throw std::logic_error(
                "canonicalize: unresolved chain signs; conjugate first");
        DynTerm c = graded_canonicalize(t, sys, stats);
        TermKey k = key_of(c);
        auto it = out.find(k);
        if (it == out.end()) {
            out.emplace(std::move(k), std::move(c));
        } else {
            it->second.coeff += c.coeff;
        }
    }
    for (auto it = out.begin(); it != out.end();) {
        if (it->second.coeff.is_zero())
            it = out.erase(it);
        else
            ++it;
    }
    return out;
}

} // namespace

Lagrangian canonicalize_lagrangian(const Lagrangian& lag, const FSystem& sys,
                                   const StatisticsAssignment& stats) {
    Lagrangian out;
    out.kinematic = lag.kinematic;
    for (auto& [k, t] : canonical_terms(lag, sys, stats))
        out.terms.push_back(t);
    return out;
}

bool lagrangian_equal(const Lagrangian& a, const Lagrangian& b,
                      const FSystem& sys, const StatisticsAssignment& stats) {
    if (!(a.kinematic == b.kinematic)) return false;
    auto ca = canonical_terms(a, sys, stats);
    auto cb = canonical_terms(b, sys, stats);
    if (ca.size() != cb.size()) return false;
    for (const auto& [k, t] : ca) {
        auto it = cb.find(k);
        if (it == cb.end() || !(it->second.coeff == t.coeff)) return false;
    }
    return true;
}

Verdict check_term_form(const Lagrangian& lag, const FSystem& sys) {
    Verdict v = Verdict::pass();
    for (std::size_t i = 0; i < lag.terms.size(); ++i) {
        const DynTerm& t = lag.terms[i];
        if (t.power_sum() % 2 != 0)
            v.absorb(Verdict::fail(
                "term " + std::to_string(i) + ": " + term_to_string(t, sys),
                "even sum of coupling powers",
                "sum = " + std::to_string(t.power_sum())));
    }
    return v;
}

namespace {

// Adjoint image of one term: slots reversed, powers reversed, coefficient
// conjugated, and one sign per chain factor (each coupling is antihermitian).
DynTerm dagger_term(const DynTerm& t) {
    DynTerm out = t;
    std::reverse(out.factors.begin(), out.factors.end());
    std::reverse(out.k_powers.begin(), out.k_powers.end());
    out.coeff = out.coeff.conj();
    if (t.power_sum() % 2 != 0) out.coeff = -out.coeff;
    return out;
}

} // namespace

Verdict check_hermiticity(const Lagrangian& lag, const FSystem& sys,
                          const StatisticsAssignment& stats) {
    Verdict v = Verdict::pass();
    if (lag.kinematic.present) {
        for (int m = 0; m < 4; ++m) {
            const CMatrix& um = lag.kinematic.matrices.mu[m];
            if (!um.is_antihermitian())
                v.absorb(Verdict::fail("kinematic coupling U^" + std::to_string(m),
                                       "antihermitian matrix",
                                       um.str()));
        }
    }
    for (std::size_t i = 0; i < lag.terms.size(); ++i) {
        if (!lag.terms[i].coeff.is_real())
            v.absorb(Verdict::fail(
                "term " + std::to_string(i) + ": " +
                    term_to_string(lag.terms[i], sys),
                "real coefficient", to_string(lag.terms[i].coeff)));
    }
    if (v.failed()) return v;

    Lagrangian image;
    image.kinematic = lag.kinematic;
    for (const auto& t : lag.terms) image.terms.push_back(dagger_term(t));
    if (!lagrangian_equal(image, lag, sys, stats)) {
        auto orig = canonical_terms(lag, sys, stats);
        auto img = canonical_terms(image, sys, stats);
        for (const auto& [k, t] : orig) {
            auto it = img.find(k);
            std::string found = it == img.end()
                                    ? "term missing from the adjoint image"
                                    : "adjoint image has coefficient " +
                                          to_string(it->second.coeff);
            if (it == img.end() || !(it->second.coeff == t.coeff))
                v.absorb(Verdict::fail(term_to_string(t, sys),
                                       "self-adjoint up to graded reordering",
                                       found));
        }
        for (const auto& [k, t] : img)
            if (orig.find(k) == orig.end())
                v.absorb(Verdict::fail(term_to_string(t, sys),
                                       "adjoint image term present in the original",
                                       "no matching term"));
        if (!v.failed())
            v.absorb(Verdict::fail("polynomial part", "self-adjoint",
                                   "adjoint image differs"));
    }
    return v;
}

Verdict check_gauge(const Lagrangian& lag, const FSystem& sys) {
    Verdict v = Verdict::pass();
    if (lag.kinematic.present) {
        for (int m = 0; m < 4; ++m) {
            const CMatrix& um = lag.kinematic.matrices.mu[m];
            for (std::size_t r = 0; r < um.rows(); ++r)
                for (std::size_t c = 0; c < um.cols(); ++c) {
                    if (um.at(r, c).is_zero()) continue;
                    Rat qr = sys.field(sys.owner_of(r)).charge;
                    Rat qc = sys.field(sys.owner_of(c)).charge;
                    if (qr + qc != 0)
                        v.absorb(Verdict::fail(
                            "kinematic coupling U^" + std::to_string(m) + "[" +
                                sys.component_name(r) + "," +
                                sys.component_name(c) + "]",
                            "coupled components with opposite charge",
                            "charges " + to_string(qr) + " and " + to_string(qc)));
                }
        }
    }
    for (std::size_t i = 0; i < lag.terms.size(); ++i) {
        const DynTerm& t = lag.terms[i];
        Rat sum{0};
        for (const auto& f : t.factors) {
            Rat q = sys.field(f.field).charge;
            sum += f.conjugated ? -q : q;
        }
        if (sum != 0)
            v.absorb(Verdict::fail(
                "term " + std::to_string(i) + ": " + term_to_string(t, sys),
                "signed charge sum 0", to_string(sum)));
    }
    return v;
}

std::string to_string(LagrangianTransform k) {
    switch (k) {
        case LagrangianTransform::P: return "P";
        case LagrangianTransform::C: return "C";
        case LagrangianTransform::T: return "T";
        case LagrangianTransform::CPT: return "CPT";
    }
    return "?";
}

namespace {

// Derivative sign picked up by d_mu under the point map of each kind.
int derivative_sign(LagrangianTransform kind, int m) {
    switch (kind) {
        case LagrangianTransform::P: return m == 0 ? 1 : -1;
        case LagrangianTransform::T: return m == 0 ? -1 : 1;
        case LagrangianTransform::C: return 1;
        case LagrangianTransform::CPT: return -1; // P and T signs compose
    }
    return 1;
}

KinematicPart transform_kinematic(const KinematicPart& kin,
                                  LagrangianTransform kind, const CMatrix& D) {
    KinematicPart out = kin;
    if (!kin.present) return out;
    CMatrix dinv = D.inverse();
    for (int m = 0; m < 4; ++m) {
        CMatrix v = D * kin.matrices.mu[m] * dinv;
        out.matrices.mu[m] =
            derivative_sign(kind, m) == 1 ? v : Scalar(-1) * v;
    }
    switch (kind) {
        case LagrangianTransform::P: out.point = space_invert(kin.point); break;
        case LagrangianTransform::T:
            out.point = time_invert(kin.point);
            out.conjugated = !kin.conjugated;
            break;
        case LagrangianTransform::C: break;
        case LagrangianTransform::CPT:
            out.point = negate_point(kin.point);
            out.conjugated = !kin.conjugated;
            break;
    }
    return out;
}

} // namespace

Lagrangian transform_lagrangian(const Lagrangian& lag, LagrangianTransform kind,
                                const FSystem& sys, const UMatrixSet& u,
                                const StatisticsAssignment& stats,
                                const Phase& phase_s, const Phase& phase_c) {
    (void)u;
    (void)stats;
    CMatrix D;
    switch (kind) {
        case LagrangianTransform::P:
            D = system_transform(sys, DiscreteKind::P, phase_s, phase_c);
            break;
        case LagrangianTransform::C:
            D = system_transform(sys, DiscreteKind::C, phase_s, phase_c);
            break;
        case LagrangianTransform::T:
            D = system_transform(sys, DiscreteKind::T, phase_s, phase_c);
            break;
        case LagrangianTransform::CPT:
            D = system_transform(sys, DiscreteKind::C, phase_s, phase_c) *
                system_transform(sys, DiscreteKind::P, phase_s, phase_c) *
                system_transform(sys, DiscreteKind::T, phase_s, phase_c);
            break;
    }

    Lagrangian out;
    out.kinematic = transform_kinematic(lag.kinematic, kind, D);

    for (const auto& t : lag.terms) {
        DynTerm nt = t;
        switch (kind) {
            case LagrangianTransform::C:
                // Couplings are invariant and the point does not move.
                break;
            case LagrangianTransform::P:
            case LagrangianTransform::T: {
                for (int k : t.k_powers)
                    if (k % 2 != 0)
                        throw std::domain_error(
                            to_string(kind) +
                            " on a polynomial term needs even chain powers; a "
                            "chain of power " + std::to_string(k) +
                            " has an unresolved tensor structure");
                for (auto& f : nt.factors) {
                    f.point = kind == LagrangianTransform::P
                                  ? space_invert(f.point)
                                  : time_invert(f.point);
                    if (kind == LagrangianTransform::T)
                        f.conjugated = !f.conjugated;
                }
                if (kind == LagrangianTransform::T) nt.coeff = nt.coeff.conj();
                break;
            }
            case LagrangianTransform::CPT: {
                for (auto& f : nt.factors) {
                    f.point = negate_point(f.point);
                    f.conjugated = !f.conjugated;
                }
                nt.coeff = nt.coeff.conj();
                nt.chain_flip_pending = true;
                break;
            }
        }
        out.terms.push_back(std::move(nt));
    }
    return out;
}

Lagrangian conjugate_lagrangian(const Lagrangian& lag) {
    Lagrangian out = lag;
    if (out.kinematic.present) {
        for (auto& m : out.kinematic.matrices.mu) m = m.conj();
        out.kinematic.conjugated = !out.kinematic.conjugated;
    }
    for (auto& t : out.terms) {
        t.coeff = t.coeff.conj();
        for (auto& f : t.factors) f.conjugated = !f.conjugated;
        if (t.chain_flip_pending) {
            // Conjugation turns every chain factor's pending +-U into -U:
            // the symmetric parts are imaginary, the antisymmetric real.
            if (t.power_sum() % 2 != 0) t.coeff = -t.coeff;
            t.chain_flip_pending = false;
        }
    }
    return out;
}

namespace {

Lagrangian with_points_negated(const Lagrangian& lag) {
    Lagrangian out = lag;
    if (out.kinematic.present)
        out.kinematic.point = negate_point(out.kinematic.point);
    for (auto& t : out.terms)
        for (auto& f : t.factors) f.point = negate_point(f.point);
    return out;
}

} // namespace

Verdict cpt_verdict(const Lagrangian& lag, const FSystem& sys,
                    const UMatrixSet& u, const StatisticsAssignment& stats,
                    const Phase& phase_s, const Phase& phase_c) {
    Verdict v = Verdict::pass();
    for (std::size_t i = 0; i < lag.terms.size(); ++i) {
        const DynTerm& t = lag.terms[i];
        if (t.power_sum() % 2 != 0)
            v.absorb(Verdict::fail(
                "term " + std::to_string(i) + ": " + term_to_string(t, sys),
                "even sum of coupling powers",
                "sum = " + std::to_string(t.power_sum()) +
                    "; the conjugated image carries sign -1"));
    }
    if (v.failed()) return v;

    Lagrangian image = conjugate_lagrangian(transform_lagrangian(
        lag, LagrangianTransform::CPT, sys, u, stats, phase_s, phase_c));
    Lagrangian expected = with_points_negated(lag);

    if (lagrangian_equal(image, expected, sys, stats)) return v;

    if (!(image.kinematic == expected.kinematic))
        v.absorb(Verdict::fail(
            "kinematic part",
            "conjugated image equals the original at -x",
            "transformed pencil differs"));
    auto ci = canonical_terms(image, sys, stats);
    auto ce = canonical_terms(expected, sys, stats);
    for (const auto& [k, t] : ce) {
        auto it = ci.find(k);
        if (it == ci.end())
            v.absorb(Verdict::fail(term_to_string(t, sys),
                                   "term present in the conjugated image",
                                   "missing"));
        else if (!(it->second.coeff == t.coeff))
            v.absorb(Verdict::fail(
                term_to_string(t, sys),
                "coefficient " + to_string(t.coeff),
                "phase residue: image coefficient " + to_string(it->second.coeff)));
    }
    for (const auto& [k, t] : ci)
        if (ce.find(k) == ce.end())
            v.absorb(Verdict::fail(term_to_string(t, sys),
                                   "no extra terms in the conjugated image",
                                   "unexpected term"));
    if (!v.failed())
        v.absorb(Verdict::fail("lagrangian", "invariance under the combined map",
                               "image differs"));
    return v;
}

std::string term_to_string(const DynTerm& t, const FSystem& sys) {
    std::ostringstream os;
    os << to_string(t.coeff);
    for (std::size_t i = 0; i < t.factors.size(); ++i) {
        const auto& f = t.factors[i];
        os << " * ";
        if (f.conjugated) os << "conj ";
        os << sys.field(f.field).name << "(" << to_string(f.point) << ")";
        if (i < t.k_powers.size()) os << " (U^" << t.k_powers[i] << ")";
    }
    return os.str();
}

} // namespace cptk
