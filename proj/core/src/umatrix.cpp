#include "cptk/umatrix.hpp"

#include <stdexcept>

namespace cptk {

UDecomposition decompose_u(const CMatrix& u) {
    if (!u.is_square())
        throw std::invalid_argument("decompose_u: matrix must be square");
    Scalar half(Rat(1, 2));
    CMatrix t = u.transpose();
    return {half * (u + t), half * (u - t)};
}

Verdict validate_u(const FSystem& sys, const UMatrixSet& u) {
    Verdict v = Verdict::pass();
    for (int m = 0; m < 4; ++m) {
        const CMatrix& um = u.mu[m];
        std::string label = "U^" + std::to_string(m);
        if (um.rows() != sys.total_components() || !um.is_square()) {
            throw std::invalid_argument(label + ": dimension " +
                                        std::to_string(um.rows()) + "x" +
                                        std::to_string(um.cols()) +
                                        " does not match the " +
                                        std::to_string(sys.total_components()) +
                                        "-component general field");
        }
        CMatrix neg_dagger = -um.dagger();
        if (neg_dagger != um) {
            for (std::size_t r = 0; r < um.rows(); ++r)
                for (std::size_t c = 0; c < um.cols(); ++c)
                    if (um.at(r, c) != neg_dagger.at(r, c)) {
                        v.absorb(Verdict::fail(
                            label + "[" + std::to_string(r) + "," + std::to_string(c) + "]",
                            "antihermitian: entry == -conj(U[" + std::to_string(c) +
                                "," + std::to_string(r) + "])",
                            um.at(r, c).str() + " vs " + neg_dagger.at(r, c).str()));
                    }
            continue;
        }
        auto [us, ua] = decompose_u(um);
        for (std::size_t r = 0; r < um.rows(); ++r)
            for (std::size_t c = 0; c < um.cols(); ++c) {
                if (!us.at(r, c).is_imaginary())
                    v.absorb(Verdict::fail(
                        label + "_S[" + std::to_string(r) + "," + std::to_string(c) + "]",
                        "imaginary entry", us.at(r, c).str()));
                if (!ua.at(r, c).is_real())
                    v.absorb(Verdict::fail(
                        label + "_A[" + std::to_string(r) + "," + std::to_string(c) + "]",
                        "real entry", ua.at(r, c).str()));
            }
    }
    return v;
}

bool StatisticsAssignment::all_resolved() const {
    for (auto s : field_statistics)
        if (s == Statistics::Unknown) return false;
    return true;
}

StatisticsResult infer_statistics(const FSystem& sys, const UMatrixSet& u) {
    StatisticsResult out;
    auto& a = out.assignment;
    a.field_statistics.assign(sys.field_count(), Statistics::Unknown);
    a.evidence.assign(sys.field_count(), {});
    out.verdict = Verdict::pass();

    auto tag = [&](std::size_t component, Statistics s, const std::string& where,
                   const Scalar& entry) {
        std::size_t f = sys.owner_of(component);
        Statistics& cur = a.field_statistics[f];
        if (cur == Statistics::Unknown) {
            cur = s;
            a.evidence[f].push_back(
                Witness{where, to_string(s) + " coupling", entry.str()});
        } else if (cur != s) {
            out.verdict.absorb(Verdict::fail(
                where,
                "field '" + sys.field(f).name + "' coupled through one part only",
                "both symmetric and antisymmetric couplings touch component " +
                    sys.component_name(component)));
        }
    };

    for (int m = 0; m < 4; ++m) {
        auto [us, ua] = decompose_u(u.mu[m]);
        for (std::size_t r = 0; r < us.rows(); ++r)
            for (std::size_t c = 0; c < us.cols(); ++c) {
                std::string where = "U^" + std::to_string(m) + "[" +
                                    std::to_string(r) + "," + std::to_string(c) + "]";
                if (!us.at(r, c).is_zero()) {
                    tag(r, Statistics::Fermi, where + " (symmetric part)", us.at(r, c));
                    tag(c, Statistics::Fermi, where + " (symmetric part)", us.at(r, c));
                }
                if (!ua.at(r, c).is_zero()) {
                    tag(r, Statistics::Bose, where + " (antisymmetric part)", ua.at(r, c));
                    tag(c, Statistics::Bose, where + " (antisymmetric part)", ua.at(r, c));
                }
            }
    }

    bool any_resolved = false;
    a.effective.resize(sys.field_count());
    for (std::size_t f = 0; f < sys.field_count(); ++f) {
        Statistics inferred = a.field_statistics[f];
        Statistics declared = sys.field(f).statistics;
        if (inferred != Statistics::Unknown) any_resolved = true;
        if (declared != Statistics::Unknown && inferred != Statistics::Unknown &&
            declared != inferred) {
            out.verdict.absorb(Verdict::fail(
                "field '" + sys.field(f).name + "'",
                "declared statistics (" + to_string(declared) +
                    ") matching the coupling-derived one",
                "couplings give " + to_string(inferred)));
        }
        a.effective[f] = declared != Statistics::Unknown ? declared : inferred;
    }

    if (!any_resolved) {
        out.verdict.absorb(Verdict::fail(
            "coupling matrices",
            "at least one nonzero coupling (otherwise no momentum exists)",
            "all four U matrices are zero on every field"));
    }
    return out;
}

std::string to_string(TransformKind k) {
    switch (k) {
        case TransformKind::P: return "P";
        case TransformKind::C: return "C";
        case TransformKind::T: return "T";
        case TransformKind::PT: return "PT";
    }
    return "?";
}

namespace {

// Sign s in D U_part D^-1 = s * U_part for the given kind, mu and part.
int expected_sign(TransformKind kind, int m, bool symmetric_part) {
    const int time_sign = (m == 0) ? -1 : 1; // (-1)^{delta_mu0}
    switch (kind) {
        case TransformKind::P: return -time_sign;
        case TransformKind::C: return 1;
        case TransformKind::T: return symmetric_part ? -time_sign : time_sign;
        case TransformKind::PT: return symmetric_part ? 1 : -1;
    }
    return 1;
}

} // namespace

Verdict check_u_transform(TransformKind kind, const CMatrix& D,
                          const UMatrixSet& u, const FSystem& sys,
                          const StatisticsAssignment& stats) {
    Verdict v = Verdict::pass();
    CMatrix dinv = D.inverse(); // throws std::domain_error when singular

    if (kind == TransformKind::T) {
        // The time-reversal matrix must be imaginary on Fermi fields and real
        // on Bose fields; check the per-field diagonal blocks.
        for (std::size_t f = 0; f < sys.field_count(); ++f) {
            Statistics s = stats.effective.empty() ? stats.of(f) : stats.effective[f];
            if (s == Statistics::Unknown) continue;
            std::size_t off = sys.field_offset(f);
            std::size_t dim = sys.field(f).dimension();
            CMatrix blk = D.block(off, off, dim, dim);
            if (s == Statistics::Fermi && !blk.is_imaginary())
                v.absorb(Verdict::fail("D(T) block of field '" + sys.field(f).name + "'",
                                       "imaginary matrix on a Fermi field",
                                       blk.str()));
            if (s == Statistics::Bose && !blk.is_real())
                v.absorb(Verdict::fail("D(T) block of field '" + sys.field(f).name + "'",
                                       "real matrix on a Bose field", blk.str()));
        }
    }

    for (int m = 0; m < 4; ++m) {
        auto [us, ua] = decompose_u(u.mu[m]);
        struct Part {
            const CMatrix* mat;
            bool symmetric;
            const char* tag;
        };
        for (const Part& part : {Part{&us, true, "_S"}, Part{&ua, false, "_A"}}) {
            if (part.mat->is_zero()) continue;
            int sign = expected_sign(kind, m, part.symmetric);
            CMatrix lhs = D * *part.mat * dinv;
            CMatrix rhs = Scalar(sign) * *part.mat;
            if (lhs == rhs) continue;
            v.absorb(Verdict::fail(
                to_string(kind) + " law on U^" + std::to_string(m) + part.tag,
                "D U D^-1 == " + std::string(sign > 0 ? "+" : "-") + "U",
                "D U D^-1 = " + lhs.str() + ", expected " + rhs.str()));
        }
    }
    return v;
}

Verdict spin_statistics_verdict(const FSystem& sys,
                                const StatisticsAssignment& stats) {
    Verdict v = Verdict::pass();
    std::vector<Witness> undetermined;
    for (std::size_t f = 0; f < sys.field_count(); ++f) {
        const FieldSpec& spec = sys.field(f);
        Statistics s = stats.effective.empty() ? stats.of(f) : stats.effective[f];
        if (s == Statistics::Unknown) {
            undetermined.push_back(
                Witness{"field '" + spec.name + "'",
                        "a coupling through U to fix its statistics",
                        "no nonzero coupling touches it"});
            continue;
        }
        Statistics required =
            spec.spin.is_half_integer() ? Statistics::Fermi : Statistics::Bose;
        if (s != required) {
            RealityClass from_spin = reality_class(spec.spin);
            RealityClass from_stats = s == Statistics::Fermi
                                          ? RealityClass::Imaginary
                                          : RealityClass::Real;
            v.absorb(Verdict::fail(
                "field '" + spec.name + "' (spin " + to_string(spec.spin) +
                    ", statistics " + to_string(s) + ")",
                "time-reversal transform law and reality class agree: spin parity"
                " demands a " + to_string(from_spin) + " time-reversal matrix",
                "the " + to_string(s) + " coupling demands an " +
                    to_string(from_stats) + " one"));
        }
    }
    if (v.failed()) return v;
    if (!undetermined.empty()) return Verdict::indeterminate(std::move(undetermined));
    return v;
}

} // namespace cptk
