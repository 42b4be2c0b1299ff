#include "cptk/generators.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cptk {

SurfaceNormal SurfaceNormal::axis(int mu) {
    if (mu < 0 || mu > 3)
        throw std::invalid_argument("surface normal axis must be 0..3");
    SurfaceNormal out;
    out.n = {Rat(0), Rat(0), Rat(0), Rat(0)};
    out.n[mu] = 1;
    return out;
}

std::string SurfaceNormal::str() const {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += to_string(n[i]);
    }
    return s + ")";
}

namespace {

CMatrix projected_coupling(const FSystem& sys, const UMatrixSet& u,
                           const SurfaceNormal& n) {
    CMatrix un(sys.total_components(), sys.total_components());
    for (int m = 0; m < 4; ++m) {
        if (n.n[m] == 0) continue;
        if (u.mu[m].rows() != sys.total_components())
            throw std::invalid_argument(
                "derive_generator: coupling dimension mismatch");
        un += Scalar(Rat(n.n[m])) * u.mu[m];
    }
    return un;
}

} // namespace

GeneratorSet derive_generator(const FSystem& sys, const UMatrixSet& u,
                              const SurfaceNormal& n) {
    if (n.minkowski_norm() <= 0)
        throw std::domain_error("surface normal must be timelike, got n.n = " +
                                to_string(n.minkowski_norm()) + " for n = " +
                                n.str());
    CMatrix un = projected_coupling(sys, u, n);

    GeneratorSet out;
    out.projected_coupling = un;
    out.field_variation.variant = GeneratorVariant::FieldVariation;
    out.field_variation.normal = n;
    out.momentum_variation.variant = GeneratorVariant::MomentumVariation;
    out.momentum_variation.normal = n;
    out.symmetric.variant = GeneratorVariant::Symmetric;
    out.symmetric.normal = n;

    StatisticsAssignment stats = infer_statistics(sys, u).assignment;
    auto fermi_pair = [&](std::size_t a, std::size_t b) {
        return stats.of(sys.owner_of(a)) == Statistics::Fermi &&
               stats.of(sys.owner_of(b)) == Statistics::Fermi;
    };

    // F(dchi) = Int ds sum_l pi_l dchi^l, pi_l = sum_r chi^r U[r,l]:
    // one term per nonzero entry, keyed (varied = l, source = r).
    for (std::size_t l = 0; l < un.cols(); ++l) {
        for (std::size_t r = 0; r < un.rows(); ++r) {
            const Scalar& c = un.at(r, l);
            if (c.is_zero()) continue;
            out.field_variation.terms.push_back({r, l, c, false});
            // F(dpi) = -Int ds dpi_l chi^l = -Int ds dchi^r U[r,l] chi^l:
            // varied slot r comes first in the dual display order.
            out.momentum_variation.terms.push_back({l, r, -c, true});
            // The symmetric half-sum merges both routes in chi-first order;
            // bringing the dual half there costs the graded swap sign.
            Scalar dual = Scalar(Rat(-1, 2)) * c;
            if (fermi_pair(r, l)) dual = -dual;
            out.symmetric.terms.push_back({r, l, Scalar(Rat(1, 2)) * c, false});
            out.symmetric.terms.push_back({l, r, dual, false});
        }
    }

    auto sort_terms = [](GeneratorExpr& g) {
        std::sort(g.terms.begin(), g.terms.end(),
                  [](const GeneratorTerm& a, const GeneratorTerm& b) {
                      if (a.varied != b.varied) return a.varied < b.varied;
                      return a.source < b.source;
                  });
    };
    auto merge_terms = [](GeneratorExpr& g) {
        std::vector<GeneratorTerm> merged;
        for (const auto& t : g.terms) {
            if (!merged.empty() && merged.back().source == t.source &&
                merged.back().varied == t.varied &&
                merged.back().varied_first == t.varied_first) {
                merged.back().coeff += t.coeff;
            } else {
                merged.push_back(t);
            }
        }
        std::erase_if(merged,
                      [](const GeneratorTerm& t) { return t.coeff.is_zero(); });
        g.terms = std::move(merged);
    };
    sort_terms(out.field_variation);
    sort_terms(out.momentum_variation);
    sort_terms(out.symmetric);
    merge_terms(out.symmetric);
    return out;
}

std::vector<GeneratorTerm> normalized_terms(const GeneratorExpr& g,
                                            const FSystem& sys,
                                            const StatisticsAssignment& stats) {
    std::vector<GeneratorTerm> out;
    for (const auto& t : g.terms) {
        GeneratorTerm n = t;
        if (n.varied_first) {
            // chi-first order: moving the variation past the field costs the
            // graded sign when both components are Fermi.
            n.varied_first = false;
            bool fermi = stats.of(sys.owner_of(n.source)) == Statistics::Fermi &&
                         stats.of(sys.owner_of(n.varied)) == Statistics::Fermi;
            if (fermi) n.coeff = -n.coeff;
        }
        out.push_back(n);
    }
    std::sort(out.begin(), out.end(),
              [](const GeneratorTerm& a, const GeneratorTerm& b) {
                  if (a.varied != b.varied) return a.varied < b.varied;
                  return a.source < b.source;
              });
    std::vector<GeneratorTerm> merged;
    for (const auto& t : out) {
        if (!merged.empty() && merged.back().source == t.source &&
            merged.back().varied == t.varied) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged,
                  [](const GeneratorTerm& t) { return t.coeff.is_zero(); });
    return merged;
}

FundamentalPartition classify_fundamental(const FSystem& sys,
                                          const UMatrixSet& u,
                                          const SurfaceNormal& n) {
    if (n.minkowski_norm() <= 0)
        throw std::domain_error("surface normal must be timelike, got n.n = " +
                                to_string(n.minkowski_norm()) + " for n = " +
                                n.str());
    CMatrix un = projected_coupling(sys, u, n);
    FundamentalPartition out;
    for (std::size_t c = 0; c < un.rows(); ++c) {
        bool appears = false;
        for (std::size_t k = 0; k < un.rows() && !appears; ++k)
            appears = !un.at(c, k).is_zero() || !un.at(k, c).is_zero();
        (appears ? out.fundamental : out.non_fundamental).push_back(c);
    }
    return out;
}

std::string to_string(BracketKind k) {
    return k == BracketKind::Commutator ? "commutator" : "anticommutator";
}

std::vector<BracketRelation> derive_commutators(
    const FSystem& sys, const UMatrixSet& u, const StatisticsAssignment& stats) {
    bool bose = false, fermi = false;
    for (std::size_t f = 0; f < sys.field_count(); ++f) {
        Statistics s = stats.effective.empty() ? stats.of(f) : stats.effective[f];
        if (s == Statistics::Unknown)
            throw std::invalid_argument("derive_commutators: statistics of field '" +
                                        sys.field(f).name + "' unresolved");
        (s == Statistics::Bose ? bose : fermi) = true;
    }

    std::array<CMatrix, 4> sym_parts, asym_parts;
    for (int m = 0; m < 4; ++m) {
        auto [s, a] = decompose_u(u.mu[m]);
        sym_parts[m] = std::move(s);
        asym_parts[m] = std::move(a);
    }

    std::vector<BracketRelation> out;
    if (bose)
        out.push_back({BracketKind::Commutator, Statistics::Bose,
                       Statistics::Bose, false, asym_parts});
    if (fermi)
        out.push_back({BracketKind::Anticommutator, Statistics::Fermi,
                       Statistics::Fermi, false, sym_parts});
    if (bose && fermi)
        out.push_back({BracketKind::Anticommutator, Statistics::Fermi,
                       Statistics::Bose, true, {}});
    return out;
}

namespace {

const char* variant_header(GeneratorVariant v) {
    switch (v) {
        case GeneratorVariant::FieldVariation: return "F(dchi)";
        case GeneratorVariant::MomentumVariation: return "F(dpi)";
        case GeneratorVariant::Symmetric: return "F(sym)";
    }
    return "?";
}

} // namespace

std::string render_generator(const GeneratorExpr& g, const FSystem& sys) {
    std::ostringstream os;
    os << variant_header(g.variant) << " = integral ds, normal " << g.normal.str()
       << " [\n";
    for (const auto& t : g.terms) {
        if (t.varied_first)
            os << "  " << t.coeff.str() << " * d" << sys.component_name(t.varied)
               << "(x) * " << sys.component_name(t.source) << "(x)\n";
        else
            os << "  " << t.coeff.str() << " * " << sys.component_name(t.source)
               << "(x) * d" << sys.component_name(t.varied) << "(x)\n";
    }
    os << "]\n";
    return os.str();
}

std::string render_partition(const FundamentalPartition& p, const FSystem& sys) {
    std::ostringstream os;
    os << "fundamental:";
    for (auto c : p.fundamental) os << " " << sys.component_name(c);
    os << "\nnon-fundamental:";
    for (auto c : p.non_fundamental) os << " " << sys.component_name(c);
    os << "\n";
    return os.str();
}

std::string render_bracket(const BracketRelation& r, const FSystem& sys) {
    (void)sys;
    std::ostringstream os;
    const char* left = r.left_sector == Statistics::Fermi ? "psi" : "phi";
    const char* right = r.right_sector == Statistics::Fermi ? "psi" : "phi";
    const char* lpart = r.left_sector == Statistics::Fermi ? "U_S" : "U_A";
    const char* rpart = r.right_sector == Statistics::Fermi ? "U_S" : "U_A";
    char sign = r.kind == BracketKind::Anticommutator ? '+' : '-';
    os << "[" << lpart << " " << left << "(x), " << right << "(x') " << rpart
       << "]_" << sign << " = ";
    if (r.rhs_zero) {
        os << "0\n";
        return os.str();
    }
    os << "i " << lpart << " delta_s(x-x')\n";
    for (int m = 0; m < 4; ++m)
        os << "  " << lpart << "^" << m << " = " << r.coupling_parts[m].str()
           << "\n";
    return os.str();
}

} // namespace cptk
